//! Structured verdicts for law checks.
//!
//! Every axiom-suite checker in this crate returns a [`LawReport`]: one line
//! per axiom instance, each either passing, failing with a concrete witness,
//! or skipped (e.g. off the defined tensor grid, or over the size bound).
//! Reports are produced in a deterministic order so their serialized form is
//! stable enough for golden tests.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Verdict for a single axiom instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for LawStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawStatus::Pass => write!(f, "pass"),
            LawStatus::Fail => write!(f, "fail"),
            LawStatus::Skipped => write!(f, "skipped"),
        }
    }
}

/// Witness data attached to a report line: a deterministic key/value map
/// naming the instance (grades, objects, elements) and, on failure, the point
/// where the two sides differ.
pub type Witness = BTreeMap<String, String>;

/// Convenience constructor for witness maps.
pub fn witness<I, K, V>(pairs: I) -> Witness
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<String>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

/// One axiom instance: which law, what happened, where.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawLine {
    pub axiom: String,
    pub status: LawStatus,
    #[serde(default)]
    pub witness: Witness,
}

/// A full verdict: the ordered list of axiom instances checked.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LawReport {
    pub lines: Vec<LawLine>,
}

impl LawReport {
    pub fn new() -> Self {
        LawReport { lines: Vec::new() }
    }

    pub fn push(&mut self, axiom: impl Into<String>, status: LawStatus, witness: Witness) {
        self.lines.push(LawLine {
            axiom: axiom.into(),
            status,
            witness,
        });
    }

    pub fn pass(&mut self, axiom: impl Into<String>, witness: Witness) {
        self.push(axiom, LawStatus::Pass, witness);
    }

    pub fn fail(&mut self, axiom: impl Into<String>, witness: Witness) {
        self.push(axiom, LawStatus::Fail, witness);
    }

    pub fn skip(&mut self, axiom: impl Into<String>, witness: Witness) {
        self.push(axiom, LawStatus::Skipped, witness);
    }

    /// Record an equality check: pass when `mismatch` is `None`, otherwise
    /// fail with the mismatch details merged into the witness.
    pub fn check(&mut self, axiom: impl Into<String>, mut w: Witness, mismatch: Option<Witness>) {
        match mismatch {
            None => self.pass(axiom, w),
            Some(extra) => {
                w.extend(extra);
                self.fail(axiom, w);
            }
        }
    }

    pub fn merge(&mut self, other: LawReport) {
        self.lines.extend(other.lines);
    }

    /// True when no line failed (skips are allowed).
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != LawStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawLine> {
        self.lines.iter().filter(|l| l.status == LawStatus::Fail)
    }

    pub fn count(&self, status: LawStatus) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }

    /// All lines for a given axiom name.
    pub fn lines_for<'a>(&'a self, axiom: &'a str) -> impl Iterator<Item = &'a LawLine> + 'a {
        self.lines.iter().filter(move |l| l.axiom == axiom)
    }

    pub fn axiom_failed(&self, axiom: &str) -> bool {
        self.lines_for(axiom).any(|l| l.status == LawStatus::Fail)
    }

    pub fn axiom_passed_nonvacuously(&self, axiom: &str) -> bool {
        self.lines_for(axiom).any(|l| l.status == LawStatus::Pass)
            && !self.axiom_failed(axiom)
    }

    /// Compact per-axiom tally, e.g. `GM3: 40 pass, 0 fail, 2 skipped`.
    pub fn summary(&self) -> String {
        let mut tally: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
        for line in &self.lines {
            let slot = tally.entry(line.axiom.as_str()).or_default();
            match line.status {
                LawStatus::Pass => slot.0 += 1,
                LawStatus::Fail => slot.1 += 1,
                LawStatus::Skipped => slot.2 += 1,
            }
        }
        let mut out = String::new();
        for (axiom, (p, f, s)) in tally {
            out.push_str(&format!("{axiom}: {p} pass, {f} fail, {s} skipped\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.lines).expect("report serializes")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            write!(f, "[{}] {}", line.status, line.axiom)?;
            if !line.witness.is_empty() {
                let parts: Vec<String> = line
                    .witness
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                write!(f, "  {}", parts.join(" "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of a component-pinning uniqueness audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Audit {
    /// The candidate satisfies every pinning equation and equals the
    /// constructed mediator.
    Agrees,
    /// The candidate breaks the named equation at the given location.
    Rejected { equation: String, location: String },
}

impl Audit {
    pub fn rejected(equation: impl Into<String>, location: impl Into<String>) -> Self {
        Audit::Rejected {
            equation: equation.into(),
            location: location.into(),
        }
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self, Audit::Rejected { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_ignores_skips() {
        let mut r = LawReport::new();
        r.pass("GM1", witness([("m", "0")]));
        r.skip("GM6", witness([("reason", "off-grid")]));
        assert!(r.passed());
        r.fail("GM4", witness([("m", "1")]));
        assert!(!r.passed());
        assert!(r.axiom_failed("GM4"));
        assert!(!r.axiom_failed("GM1"));
    }

    #[test]
    fn json_shape() {
        let mut r = LawReport::new();
        r.pass("GM1", Witness::new());
        let v = r.to_json();
        assert_eq!(v[0]["axiom"], "GM1");
        assert_eq!(v[0]["status"], "pass");
    }
}
