//! Comonad duals: co-Eilenberg–Moore and co-Kleisli categories built
//! directly from their definitions and, independently, by
//! dualize → construct → opposite, with the explicit isomorphism validated.
//!
//! ```bash
//! cargo run -p gmkit --example dual_constructions
//! ```

use gmkit::constructions::duals::{
    co_em_graded_vs_dual, co_em_indexed_build, co_em_indexed_vs_dual, co_kl_vs_dual,
};
use gmkit::graded::{check_graded_comonad, dualize_graded};
use gmkit::indexed::dualize_indexed;
use gmkit::instances::{constant_flip_family, m2_collapse_monad};

fn main() -> anyhow::Result<()> {
    // Dualize the collapse monad into a graded comonad and check GC1..GC6.
    let gm = m2_collapse_monad();
    let gc = dualize_graded(&gm);
    let report = check_graded_comonad(&gc);
    println!("dualized `{}` passes GC1..GC6: {}", gm.name, report.passed());

    // co-EM two ways.
    let (coem, iso_report) = co_em_graded_vs_dual(&gc)?;
    println!(
        "co-EM: {} coalgebras, direct vs dual-route isomorphism validated: {}",
        coem.cat.object_count(),
        iso_report.passed()
    );

    // co-Kleisli two ways (class-by-class bijection).
    let report = co_kl_vs_dual(&gc)?;
    println!("co-Kleisli direct vs opposite-of-Kleisli: {}", report.passed());

    // Indexed comonads: the co-EM projection is an opfibration.
    let ic = dualize_indexed(&constant_flip_family());
    let coem = co_em_indexed_build(&ic)?;
    println!(
        "indexed co-EM: {} objects, cocartesian lifts found: {}",
        coem.cat.object_count(),
        coem.report.passed()
    );
    let report = co_em_indexed_vs_dual(&ic)?;
    println!("indexed co-EM vs dual route: {}", report.passed());
    Ok(())
}
