//! Regenerate the spec files under `examples/data/` from the built-in
//! instances. Run from the crate root:
//!
//! ```bash
//! cargo run -p gmkit --example export_specs
//! ```

use std::path::Path;

use gmkit::fincat::Monoidal;
use gmkit::instances;
use gmkit::spec_io::{
    category_to_spec, table_graded_to_spec, table_indexed_to_spec, write_json, GradedSpec,
    IndexedSpec,
};

fn main() -> anyhow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    std::fs::create_dir_all(&dir)?;
    let emit = |name: &str, value: serde_json::Value| -> anyhow::Result<()> {
        write_json(&dir.join(name), &value)?;
        println!("wrote {name}");
        Ok(())
    };

    // Plain categories.
    emit(
        "walking_arrow.json",
        serde_json::to_value(category_to_spec(&instances::walking_arrow(), None, None))?,
    )?;
    emit(
        "finmini.json",
        serde_json::to_value(category_to_spec(&instances::finmini(), None, None))?,
    )?;
    // The poset grading with its tensor tables.
    let m2 = instances::m2_grading();
    emit(
        "m2_monoidal.json",
        serde_json::to_value(category_to_spec(m2.base(), Some(&m2), None))?,
    )?;
    // A deliberately broken category: comp on a non-composable pair.
    emit(
        "bad_comp.json",
        serde_json::json!({
            "objects": ["a", "b"],
            "morphisms": [
                {"id": "id_a", "src": "a", "dst": "a"},
                {"id": "id_b", "src": "b", "dst": "b"},
                {"id": "u", "src": "a", "dst": "b"}
            ],
            "identities": {"a": "id_a", "b": "id_b"},
            "comp": [
                {"g": "id_a", "f": "id_a", "result": "id_a"},
                {"g": "id_b", "f": "id_b", "result": "id_b"},
                {"g": "u", "f": "id_a", "result": "u"},
                {"g": "id_b", "f": "u", "result": "u"},
                {"g": "u", "f": "u", "result": "u"}
            ]
        }),
    )?;

    // Table-flavor graded monads.
    let collapse = instances::m2_collapse_monad();
    emit(
        "collapse_m2.json",
        serde_json::to_value(GradedSpec::Table(Box::new(table_graded_to_spec(&collapse))))?,
    )?;
    let identity_z2 = gmkit::graded::TableGradedMonad::identity_monad(
        instances::z2_grading(),
        instances::finmini(),
    );
    emit(
        "identity_z2.json",
        serde_json::to_value(GradedSpec::Table(Box::new(table_graded_to_spec(
            &identity_z2,
        ))))?,
    )?;
    // Builtin-flavor graded monads.
    emit(
        "exception_m2.json",
        serde_json::json!({
            "builtin": "exception",
            "exceptions": ["e0", "e1"],
            "probe_max": 2,
            "grading_style": "poset"
        }),
    )?;
    emit(
        "broken_gm6.json",
        serde_json::json!({
            "builtin": "exception",
            "exceptions": ["e0", "e1"],
            "probe_max": 2,
            "grading_style": "discrete",
            "variant": "mu-inner-swap"
        }),
    )?;

    // Indexed monads.
    emit(
        "constant_flip.json",
        serde_json::to_value(IndexedSpec::Table(Box::new(table_indexed_to_spec(
            &instances::constant_flip_family(),
        ))))?,
    )?;
    emit(
        "state_indexed.json",
        serde_json::json!({
            "builtin": "state-indexed",
            "values": 2,
            "registers": 2,
            "probe_max": 2
        }),
    )?;

    // Effect programs.
    std::fs::write(dir.join("prog_write_read.efl"), "write 0 1; read 0\n")?;
    std::fs::write(dir.join("prog_ret.efl"), "ret 1\n")?;
    std::fs::write(
        dir.join("prog_multi.efl"),
        "read 2; write 5 0; read 2; write 2 1; read 5\n",
    )?;
    println!("wrote 3 effect programs");
    Ok(())
}
