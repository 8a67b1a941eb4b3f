//! Resolutions of a lax action: the Eilenberg–Moore and Kleisli resolutions
//! both transport back to the original graded monad, and the comparison
//! functors witness that they are terminal and initial.
//!
//! ```bash
//! cargo run -p gmkit --example resolutions_demo
//! ```

use gmkit::constructions::em_graded::{em_graded_adjunction, em_graded_build};
use gmkit::constructions::kl_graded::{kl_build, kl_materialize};
use gmkit::graded::{graded_monads_table_equal, transport_lax_action};
use gmkit::instances::table_zoo;
use gmkit::resolutions::{
    comparison_into_em, em_resolution, kl_resolution, terminal_initial_witness,
    validate_resolution,
};

fn main() -> anyhow::Result<()> {
    for gm in table_zoo() {
        println!("== instance `{}`", gm.name);
        let em = em_graded_build(&gm)?;
        let adj = em_graded_adjunction(&gm, &em)?;
        let em_res = em_resolution(&gm, &em, &adj)?;
        println!(
            "  EM resolution: carrier {} objects, valid = {}",
            em.cat.object_count(),
            validate_resolution(&em_res, &gm).passed()
        );
        let transported = transport_lax_action(&em_res.action, &em_res.adj)?;
        println!(
            "  transport returns the original tables: {}",
            graded_monads_table_equal(&transported, &gm)
        );

        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16)?;
        let mat = kl_materialize(&kl)?;
        let kl_res = kl_resolution(&gm, &kl, &mat)?;
        println!(
            "  Kleisli resolution: carrier {} objects, valid = {}",
            mat.cat.object_count(),
            validate_resolution(&kl_res, &gm).passed()
        );

        let w = terminal_initial_witness(&gm, &em, &kl, &mat, &kl_res)?;
        println!(
            "  witnesses: Kl->EM valid = {}, Kl->Kl valid = {}",
            w.to_em_report.passed(),
            w.from_kl_report.passed()
        );
        let w_em = terminal_initial_witness(&gm, &em, &kl, &mat, &em_res)?;
        let direct = comparison_into_em(&gm, &em, &kl_res)?;
        let composite = w_em.to_em.after(&w_em.from_kl);
        println!(
            "  composite through the EM resolution equals the direct comparison: {}",
            composite.ob_map == direct.ob_map && composite.mor_map == direct.mor_map
        );
    }
    Ok(())
}
