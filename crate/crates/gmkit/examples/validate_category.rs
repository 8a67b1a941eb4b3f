//! Load category spec files, validate every axiom by enumeration, and show
//! how defects are reported.
//!
//! ```bash
//! cargo run -p gmkit --example validate_category
//! ```

use std::path::Path;

use gmkit::spec_io::CategorySpec;

fn load(name: &str) -> anyhow::Result<CategorySpec> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name);
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn main() -> anyhow::Result<()> {
    for name in ["walking_arrow.json", "finmini.json", "m2_monoidal.json"] {
        let spec = load(name)?;
        match spec.build() {
            Ok((cat, grading)) => println!(
                "{name}: valid, {} objects, {} morphisms{}",
                cat.object_count(),
                cat.morphism_count(),
                if grading.is_some() { ", strict monoidal" } else { "" }
            ),
            Err(defects) => println!("{name}: invalid ({})", defects.join("; ")),
        }
    }

    // A file with a composition cell on a non-composable pair is refused
    // with the offending pair named.
    let bad = load("bad_comp.json")?;
    match bad.build() {
        Ok(_) => println!("bad_comp.json: unexpectedly valid"),
        Err(defects) => {
            println!("bad_comp.json: rejected");
            for d in defects {
                println!("  defect: {d}");
            }
        }
    }

    // Programmatic construction works through the same validator.
    let mut raw = gmkit::fincat::RawCategory::new("terminal");
    raw.objects.push("*".into());
    raw.morphisms.push(("id".into(), "*".into(), "*".into()));
    raw.identities.insert("*".into(), "id".into());
    raw.comp.push(("id".into(), "id".into(), "id".into()));
    let terminal = raw.validate().expect("terminal category validates");
    println!(
        "terminal category: {} object, {} morphism",
        terminal.object_count(),
        terminal.morphism_count()
    );
    Ok(())
}
