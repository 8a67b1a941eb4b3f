//! The register mini-language: parse, infer the effect grade, denote into
//! the graded state monad, and check the denotation against direct
//! execution on every store.
//!
//! ```bash
//! cargo run -p gmkit --example effect_language
//! ```

use gmkit::effectlang::{
    check_adequacy, demo_corpus, denote, infer_effect, parse_program, run, ResultKind,
};

fn main() -> anyhow::Result<()> {
    let src = "read 2; write 5 0; read 2";
    let program = parse_program(src, 2)?;
    let grade = infer_effect(&program);
    println!("program: {program}");
    println!("footprint: {} register(s)", grade.footprint);
    for (reg, pos) in &grade.injection {
        println!("  register {reg} -> position {pos}");
    }

    let el = denote(&program, 2, 3)?;
    println!("denotation at grade {}:", el.registers);
    for s in 0..el.tau.len() {
        let digits = |x: u64| {
            let mut d = Vec::new();
            let mut x = x;
            for _ in 0..el.registers {
                d.push((x % 2).to_string());
                x /= 2;
            }
            d.join("")
        };
        let result = match el.result {
            ResultKind::Unit => "()".into(),
            ResultKind::Value => el.xi[s].to_string(),
        };
        println!(
            "  store {} -> store' {}, value {}",
            digits(s as u64),
            digits(el.tau[s]),
            result
        );
    }

    let (store_out, value) = run(&program, 2, &[1, 0])?;
    println!("run on store (1,0): store' = {store_out:?}, value = {value:?}");

    let mut adequate = 0;
    for src in demo_corpus() {
        let p = parse_program(src, 2)?;
        assert!(check_adequacy(&p, 2, 3)?, "{src}");
        adequate += 1;
    }
    println!("adequacy (run = denote on every store) holds for {adequate}/25 corpus programs");
    Ok(())
}
