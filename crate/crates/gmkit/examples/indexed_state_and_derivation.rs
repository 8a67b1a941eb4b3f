//! Run the IM1..IM7 suite for the indexed state monad and compare the
//! graded monad it induces (when the unit is initial) with the graded state
//! monad, cell by cell.
//!
//! ```bash
//! cargo run --release -p gmkit --example indexed_state_and_derivation
//! ```

use gmkit::backend::Backend;
use gmkit::fincat::Monoidal;
use gmkit::graded::GradedMonadOps;
use gmkit::indexed::{check_indexed_monad, graded_from_indexed, IndexedMonadOps};
use gmkit::statemonads::build_state_monads;

fn main() -> anyhow::Result<()> {
    let (gm, im) = build_state_monads(2, 2, 2, 6_000_000)?;
    let report = check_indexed_monad(&im);
    print!("{}", report.summary());
    println!("indexed suite passed: {}", report.passed());

    // The functor parts coincide with the graded ones.
    let b = im.backend().clone();
    let x = gmkit::setcat::FinSet::numbered("X", 2);
    for m in 0..=2usize {
        assert_eq!(gm.t_ob(m, &x), im.t_ob(m, &x));
    }
    println!("T_m tables shared with the graded state monad: yes");

    // The induced multiplication equals the graded one on every grid cell.
    let derived = graded_from_indexed(&im, gm.grading().clone())?;
    let m_cat = gm.grading().base().clone();
    let mut cells = 0;
    for m in m_cat.objects() {
        for n in m_cat.objects() {
            if gm.grading().tensor_ob(m, n).is_none() {
                continue;
            }
            for probe in b.probe_objects() {
                assert_eq!(
                    derived.mu(m, n, &probe).table(),
                    gm.mu(m, n, &probe).table(),
                    "cell ({m},{n})"
                );
                cells += 1;
            }
        }
    }
    println!("derived multiplication matches on {cells} grid cells");

    // The derivation refuses a grading whose unit is not initial.
    let free = gmkit::instances::z2_grading();
    let constant = gmkit::indexed::TableIndexedMonad::constant_family(
        free.base().clone(),
        &gmkit::indexed::TableMonad::identity_monad(free.base().clone()),
    );
    match graded_from_indexed(&constant, free) {
        Err(e) => println!("discrete grading rejected as expected: {e}"),
        Ok(_) => println!("unexpected acceptance"),
    }
    Ok(())
}
