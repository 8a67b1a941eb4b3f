//! The universal property of the constructions as executable equation
//! suites: modules factor uniquely through the Eilenberg–Moore or Kleisli
//! category, and the component-pinning audit rejects perturbed mediators
//! with the name of the equation they break.
//!
//! ```bash
//! cargo run -p gmkit --example universality_audit
//! ```

use gmkit::constructions::em_graded::em_graded_build;
use gmkit::constructions::factorize::{
    audit_left_module_candidate, factorize_left_module, factorize_right_module, free_left_module,
    universal_left_module, universal_right_module,
};
use gmkit::constructions::kl_graded::{kl_build, kl_materialize};
use gmkit::instances::m2_collapse_monad;
use gmkit::report::Audit;

fn main() -> anyhow::Result<()> {
    let gm = m2_collapse_monad();
    let em = em_graded_build(&gm)?;

    // The universal module factors as the identity.
    let md = universal_left_module(&gm, &em)?;
    let (mediator, report) = factorize_left_module(&gm, &em, &md)?;
    println!(
        "universal module: equations pass = {}, mediator is the identity = {}",
        report.passed(),
        mediator.ob_map.iter().enumerate().all(|(i, &o)| i == o)
    );

    // The free module factors as the free functor.
    let free = free_left_module(&gm)?;
    let (_, report) = factorize_left_module(&gm, &em, &free)?;
    println!("free module: equations pass = {}", report.passed());

    // A perturbed candidate is rejected with a named equation.
    let mut candidate = mediator.clone();
    candidate.ob_map[0] = (candidate.ob_map[0] + 1) % em.cat.object_count();
    match audit_left_module_candidate(&gm, &em, &md, &candidate)? {
        Audit::Rejected { equation, location } => {
            println!("perturbed mediator rejected by `{equation}` at {location}")
        }
        Audit::Agrees => println!("unexpected agreement"),
    }

    // The Kleisli side.
    let universe: Vec<usize> = gm.base.objects().collect();
    let kl = kl_build(&gm, universe, 1 << 16)?;
    let mat = kl_materialize(&kl)?;
    let md = universal_right_module(&gm, &kl, &mat)?;
    let (mediator, report) = factorize_right_module(&gm, &kl, &mat, &md)?;
    println!(
        "universal right module: equations pass = {}, mediator is the identity = {}",
        report.passed(),
        mediator.ob_map.iter().enumerate().all(|(i, &o)| i == o)
    );
    Ok(())
}
