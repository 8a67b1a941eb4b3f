//! The graded exception monad over computed finite sets, with its grading by
//! max on `{0 <= 1}`, plus a broken multiplication caught by GM6 with a
//! concrete element witness.
//!
//! ```bash
//! cargo run -p gmkit --example exception_monad
//! ```

use gmkit::graded::check_graded_monad;
use gmkit::instances::{default_exceptions, ExcVariant, ExceptionGradedMonad};
use gmkit::LawStatus;

fn main() {
    let good = ExceptionGradedMonad::new(default_exceptions(), 2, true, ExcVariant::Standard);
    let report = check_graded_monad(&good);
    println!("exception monad over {{0<=1}} with two exception points:");
    print!("{}", report.summary());
    println!("passed: {}", report.passed());

    println!();
    println!("with mu_{{1,1}} permuting the inner exception copy:");
    let bad = ExceptionGradedMonad::new(default_exceptions(), 2, false, ExcVariant::MuInnerSwap);
    let report = check_graded_monad(&bad);
    for line in report.lines_for("GM6") {
        if line.status == LawStatus::Fail {
            println!("GM6 fails at {:?}", line.witness);
            break;
        }
    }
    for axiom in ["GM1", "GM2", "GM3", "GM4", "GM5"] {
        assert!(!report.axiom_failed(axiom));
    }
    println!("GM1..GM5 still pass: the mutation is caught exactly by GM6");
}
