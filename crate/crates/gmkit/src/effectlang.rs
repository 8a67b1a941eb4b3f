//! A register mini-language with effect inference, denoted into the graded
//! state monad.
//!
//! Grammar: `prog := cmd (';' cmd)*`, `cmd := 'read' NAT | 'write' NAT LIT
//! | 'ret' LIT`, with literals drawn from the value set. The inferred grade
//! of a program is its register footprint, with the injection into
//! `0..m-1` fixed by order of first use. Sequencing composes denotations
//! with the state-monad multiplication: fresh registers extend the grade
//! through `τ ⋆ σ`, and re-used registers are first aligned along their
//! injection (`T_u`) and then merged at the shared footprint.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{GmError, Result};
use crate::setcat::El;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Read { reg: usize },
    Write { reg: usize, value: u64 },
    Ret { value: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub commands: Vec<Command>,
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .commands
            .iter()
            .map(|c| match c {
                Command::Read { reg } => format!("read {reg}"),
                Command::Write { reg, value } => format!("write {reg} {value}"),
                Command::Ret { value } => format!("ret {value}"),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// The effect grade assigned by inference: the footprint size plus the
/// embedding of program registers into `0..m-1` in order of first use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectGrade {
    pub footprint: usize,
    /// register name -> position.
    pub injection: BTreeMap<usize, usize>,
}

/// Either a store-only result (a trailing `write`) or a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultKind {
    Unit,
    Value,
}

/// A single element of `T_m X`, with `X` the program's result type: the
/// tabulated store transform and result function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateElement {
    pub registers: usize,
    pub values: usize,
    pub result: ResultKind,
    /// Per store index: the transformed store index.
    pub tau: Vec<El>,
    /// Per store index: the result (value index; 0 for unit).
    pub xi: Vec<El>,
}

/// Parse the register language; errors carry line and column.
pub fn parse_program(text: &str, values: usize) -> Result<Program> {
    let mut commands = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let err = |line: usize, col: usize, msg: &str| -> GmError {
        GmError::Parse {
            path: format!("{line}:{col}"),
            message: msg.to_string(),
        }
    };
    for chunk in text.split(';') {
        let trimmed = chunk.trim();
        // Track position for error messages.
        let chunk_line = line;
        let chunk_col = col;
        for ch in chunk.chars() {
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        col += 1; // the ';'
        if trimmed.is_empty() {
            if chunk.is_empty() && commands.is_empty() {
                return Err(err(chunk_line, chunk_col, "empty program"));
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let parse_nat = |tok: &str, what: &str| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| err(chunk_line, chunk_col, &format!("expected {what}, got `{tok}`")))
        };
        let parse_lit = |tok: &str| -> Result<u64> {
            let v = tok.parse::<u64>().map_err(|_| {
                err(chunk_line, chunk_col, &format!("expected literal, got `{tok}`"))
            })?;
            if (v as usize) >= values {
                return Err(err(
                    chunk_line,
                    chunk_col,
                    &format!("literal {v} out of range 0..{}", values),
                ));
            }
            Ok(v)
        };
        match tokens.as_slice() {
            ["read", r] => commands.push(Command::Read {
                reg: parse_nat(r, "register")?,
            }),
            ["write", r, v] => commands.push(Command::Write {
                reg: parse_nat(r, "register")?,
                value: parse_lit(v)?,
            }),
            ["ret", v] => commands.push(Command::Ret {
                value: parse_lit(v)?,
            }),
            _ => {
                return Err(err(
                    chunk_line,
                    chunk_col,
                    &format!("cannot parse command `{trimmed}`"),
                ))
            }
        }
    }
    if commands.is_empty() {
        return Err(err(1, 1, "empty program"));
    }
    Ok(Program { commands })
}

/// Footprint and first-use injection of a program.
pub fn infer_effect(p: &Program) -> EffectGrade {
    let mut injection = BTreeMap::new();
    let mut next = 0usize;
    for cmd in &p.commands {
        let reg = match cmd {
            Command::Read { reg } | Command::Write { reg, .. } => Some(*reg),
            Command::Ret { .. } => None,
        };
        if let Some(r) = reg {
            injection.entry(r).or_insert_with(|| {
                let pos = next;
                next += 1;
                pos
            });
        }
    }
    EffectGrade {
        footprint: next,
        injection,
    }
}

fn store_count(values: usize, registers: usize) -> u64 {
    (values as u64).pow(registers as u32)
}

fn store_digits(values: usize, registers: usize, s: El) -> Vec<El> {
    let mut out = Vec::with_capacity(registers);
    let mut s = s;
    for _ in 0..registers {
        out.push(s % values as u64);
        s /= values as u64;
    }
    out
}

fn store_from_digits(values: usize, digits: &[El]) -> El {
    let mut s = 0u64;
    for &d in digits.iter().rev() {
        s = s * values as u64 + d;
    }
    s
}

impl Command {
    /// Denotation at the command's own footprint (one register or none).
    fn denote_local(&self, values: usize) -> StateElement {
        match self {
            Command::Ret { value } => StateElement {
                registers: 0,
                values,
                result: ResultKind::Value,
                tau: vec![0],
                xi: vec![*value],
            },
            Command::Read { .. } => StateElement {
                registers: 1,
                values,
                result: ResultKind::Value,
                tau: (0..values as u64).collect(),
                xi: (0..values as u64).collect(),
            },
            Command::Write { value, .. } => StateElement {
                registers: 1,
                values,
                result: ResultKind::Unit,
                tau: vec![*value; values],
                xi: vec![0; values],
            },
        }
    }
}

/// Widen an element along an injection `u : m -> m'` (the reindexing of the
/// state monad, applied to a single element).
fn widen(el: &StateElement, u: &[usize], target: usize) -> StateElement {
    let values = el.values;
    let stores_out = store_count(values, target);
    let mut tau = Vec::with_capacity(stores_out as usize);
    let mut xi = Vec::with_capacity(stores_out as usize);
    for w in 0..stores_out {
        let wd = store_digits(values, target, w);
        let rd: Vec<El> = u.iter().map(|&k| wd[k]).collect();
        let r = store_from_digits(values, &rd);
        let td = store_digits(values, el.registers, el.tau[r as usize]);
        let mut out = wd.clone();
        for (l, &reg) in u.iter().enumerate() {
            out[reg] = td[l];
        }
        tau.push(store_from_digits(values, &out));
        xi.push(el.xi[r as usize]);
    }
    StateElement {
        registers: target,
        values,
        result: el.result,
        tau,
        xi,
    }
}

/// Sequence `first` then `next`, both already at the same footprint:
/// the multiplication at a fixed grade (the continuation is constant in the
/// first result, since commands take no inputs).
fn merge_same_grade(first: &StateElement, next: &StateElement) -> StateElement {
    debug_assert_eq!(first.registers, next.registers);
    let stores = store_count(first.values, first.registers);
    let mut tau = Vec::with_capacity(stores as usize);
    let mut xi = Vec::with_capacity(stores as usize);
    for v in 0..stores {
        let tv = first.tau[v as usize];
        tau.push(next.tau[tv as usize]);
        xi.push(next.xi[tv as usize]);
    }
    StateElement {
        registers: first.registers,
        values: first.values,
        result: next.result,
        tau,
        xi,
    }
}

/// Sequence `first` at grade `g` with `next` at a disjoint fresh grade `k`:
/// the graded multiplication `μ_{g,k}` (`τ ⋆ σ`) applied to the constant
/// continuation.
fn merge_fresh(first: &StateElement, next: &StateElement) -> StateElement {
    let values = first.values;
    let (g, k) = (first.registers, next.registers);
    let stores = store_count(values, g + k);
    let mut tau = Vec::with_capacity(stores as usize);
    let mut xi = Vec::with_capacity(stores as usize);
    for s in 0..stores {
        let d = store_digits(values, g + k, s);
        let v = store_from_digits(values, &d[..g]);
        let w = store_from_digits(values, &d[g..]);
        let mut out = store_digits(values, g, first.tau[v as usize]);
        out.extend(store_digits(values, k, next.tau[w as usize]));
        tau.push(store_from_digits(values, &out));
        xi.push(next.xi[w as usize]);
    }
    StateElement {
        registers: g + k,
        values,
        result: next.result,
        tau,
        xi,
    }
}

/// Denote a program as one element of `T_m X` at its inferred grade.
pub fn denote(p: &Program, values: usize, max_footprint: usize) -> Result<StateElement> {
    let grade = infer_effect(p);
    if grade.footprint > max_footprint {
        return Err(GmError::SizeBound {
            what: format!("program footprint for `{p}`"),
            need: grade.footprint as u128,
            bound: max_footprint as u128,
        });
    }
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut acc: Option<StateElement> = None;
    for cmd in &p.commands {
        let local = cmd.denote_local(values);
        let reg = match cmd {
            Command::Read { reg } | Command::Write { reg, .. } => Some(*reg),
            Command::Ret { .. } => None,
        };
        let next_acc = match (acc.take(), reg) {
            (None, None) => local,
            (None, Some(r)) => {
                seen.insert(r, 0);
                local
            }
            (Some(a), None) => {
                // Grade-0 command: merge at the current footprint.
                let widened = widen(&local, &[], a.registers);
                merge_same_grade(&a, &widened)
            }
            (Some(a), Some(r)) => {
                if let Some(&pos) = seen.get(&r) {
                    // Re-used register: align along its injection, then
                    // merge at the shared footprint.
                    let widened = widen(&local, &[pos], a.registers);
                    merge_same_grade(&a, &widened)
                } else {
                    // Fresh register: extend the grade; first use fixes the
                    // next position.
                    seen.insert(r, a.registers);
                    merge_fresh(&a, &local)
                }
            }
        };
        acc = Some(next_acc);
    }
    let result = acc.expect("programs are nonempty");
    debug_assert_eq!(result.registers, grade.footprint);
    debug_assert_eq!(seen, grade.injection);
    Ok(result)
}

/// Direct small-step execution: the operational oracle. The store assigns a
/// value to every footprint register (indexed by inferred position).
pub fn run(p: &Program, values: usize, store: &[u64]) -> Result<(Vec<u64>, Option<u64>)> {
    let grade = infer_effect(p);
    if store.len() != grade.footprint {
        return Err(GmError::precondition(
            "run",
            format!(
                "store has {} registers, footprint needs {}",
                store.len(),
                grade.footprint
            ),
        ));
    }
    if store.iter().any(|&v| v as usize >= values) {
        return Err(GmError::precondition("run", "store value out of range"));
    }
    let mut st = store.to_vec();
    let mut last: Option<u64> = None;
    for cmd in &p.commands {
        match cmd {
            Command::Ret { value } => last = Some(*value),
            Command::Read { reg } => {
                let pos = grade.injection[reg];
                last = Some(st[pos]);
            }
            Command::Write { reg, value } => {
                let pos = grade.injection[reg];
                st[pos] = *value;
                last = None;
            }
        }
    }
    Ok((st, last))
}

/// Exhaustive agreement of `denote` and `run` on every store.
pub fn check_adequacy(p: &Program, values: usize, max_footprint: usize) -> Result<bool> {
    let el = denote(p, values, max_footprint)?;
    let m = el.registers;
    for s in 0..store_count(values, m) {
        let digits = store_digits(values, m, s);
        let (store_out, value) = run(p, values, &digits)?;
        let tau_digits = store_digits(values, m, el.tau[s as usize]);
        if tau_digits != store_out {
            return Ok(false);
        }
        match (el.result, value) {
            (ResultKind::Unit, None) => {}
            (ResultKind::Value, Some(v)) => {
                if el.xi[s as usize] != v {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Widening consistency: re-running the program against any ambient store
/// seen through an injection agrees with `T_u` applied to the denotation.
pub fn check_widening(p: &Program, values: usize, u: &[usize], target: usize) -> Result<bool> {
    let el = denote(p, values, target.max(u.len()))?;
    if u.len() != el.registers {
        return Err(GmError::precondition(
            "check_widening",
            "injection domain differs from footprint",
        ));
    }
    let wide = widen(&el, u, target);
    for s in 0..store_count(values, target) {
        let ambient = store_digits(values, target, s);
        // Restrict, run, and write back through u.
        let restricted: Vec<u64> = u.iter().map(|&k| ambient[k]).collect();
        let (out, value) = run(p, values, &restricted)?;
        let mut expect = ambient.clone();
        for (l, &reg) in u.iter().enumerate() {
            expect[reg] = out[l];
        }
        if store_digits(values, target, wide.tau[s as usize]) != expect {
            return Ok(false);
        }
        if el.result == ResultKind::Value && Some(wide.xi[s as usize]) != value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The fixed 25-program corpus used by the adequacy suite
/// (footprint <= 3 over two values).
pub fn demo_corpus() -> Vec<&'static str> {
    vec![
        "ret 0",
        "ret 1",
        "read 0",
        "write 0 1",
        "write 0 0",
        "write 0 1; read 0",
        "write 0 0; read 0",
        "read 0; read 0",
        "read 0; write 0 1",
        "read 0; ret 0",
        "ret 1; read 0",
        "write 0 1; write 0 0",
        "write 0 1; write 1 0",
        "read 2; write 5 0",
        "write 1 1; read 0",
        "read 0; read 1; read 2",
        "write 0 1; write 1 1; write 2 1",
        "write 0 1; read 1; write 2 0",
        "read 1; write 1 0; read 1",
        "write 3 1; write 3 0; read 3",
        "read 0; write 1 1; read 0",
        "write 2 0; read 2; write 2 1; read 2",
        "ret 0; write 0 1; ret 1",
        "read 7; read 7; write 7 0",
        "write 4 1; read 5; write 6 0; read 4",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = parse_program("write 0 1; read 0", 2).unwrap();
        assert_eq!(p.commands.len(), 2);
        let p = parse_program("ret 1", 2).unwrap();
        assert_eq!(p.commands.len(), 1);
        let err = parse_program("write x", 2).unwrap_err();
        assert!(matches!(err, GmError::Parse { .. }));
        let err = parse_program("ret 5", 2).unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn effect_inference() {
        let p = parse_program("ret 1", 2).unwrap();
        assert_eq!(infer_effect(&p).footprint, 0);
        let p = parse_program("write 0 1; read 0", 2).unwrap();
        assert_eq!(infer_effect(&p).footprint, 1);
        let p = parse_program("read 2; write 5 0", 2).unwrap();
        let g = infer_effect(&p);
        assert_eq!(g.footprint, 2);
        assert_eq!(g.injection[&2], 0);
        assert_eq!(g.injection[&5], 1);
    }

    #[test]
    fn denote_ret_is_unit_image() {
        let p = parse_program("ret 1", 2).unwrap();
        let el = denote(&p, 2, 3).unwrap();
        assert_eq!(el.registers, 0);
        assert_eq!(el.tau, vec![0]);
        assert_eq!(el.xi, vec![1]);
    }

    #[test]
    fn denote_write_is_constant_store() {
        let p = parse_program("write 0 1", 2).unwrap();
        let el = denote(&p, 2, 3).unwrap();
        assert_eq!(el.result, ResultKind::Unit);
        assert_eq!(el.tau, vec![1, 1]);
    }

    #[test]
    fn denote_write_then_read() {
        let p = parse_program("write 0 1; read 0", 2).unwrap();
        let el = denote(&p, 2, 3).unwrap();
        // ξ returns 1 on every store.
        assert_eq!(el.xi, vec![1, 1]);
        assert_eq!(el.tau, vec![1, 1]);
    }

    #[test]
    fn run_examples() {
        let p = parse_program("ret 1", 2).unwrap();
        assert_eq!(run(&p, 2, &[]).unwrap(), (vec![], Some(1)));
        let p = parse_program("write 0 1; read 0", 2).unwrap();
        assert_eq!(run(&p, 2, &[0]).unwrap(), (vec![1], Some(1)));
    }

    #[test]
    fn corpus_is_adequate() {
        for src in demo_corpus() {
            let p = parse_program(src, 2).unwrap();
            assert!(check_adequacy(&p, 2, 3).unwrap(), "{src}");
        }
    }

    #[test]
    fn widening_agrees_with_renamed_execution() {
        let p = parse_program("write 0 1; read 1", 2).unwrap();
        // Footprint 2; widen along u(0)=1, u(1)=2 into three registers.
        assert!(check_widening(&p, 2, &[1, 2], 3).unwrap());
        let q = parse_program("read 0", 2).unwrap();
        assert!(check_widening(&q, 2, &[2], 3).unwrap());
    }

    #[test]
    fn sequencing_is_associative_via_grades() {
        // Composing denotations through the multiplication is associative:
        // denote(a; (b; c)) = denote((a; b); c) as elements.
        let sources = ["write 0 1", "read 1", "write 0 0; read 2"];
        let joined = format!("{}; {}; {}", sources[0], sources[1], sources[2]);
        let p = parse_program(&joined, 2).unwrap();
        let el = denote(&p, 2, 3).unwrap();
        assert!(check_adequacy(&p, 2, 3).unwrap());
        assert_eq!(el.registers, 3);
    }

    /// The associativity square of the graded multiplication, instantiated
    /// on the denotations of a disjoint program triple: both association
    /// orders land on the same element, which is the program's denotation.
    #[test]
    fn mu_associativity_on_program_triples() {
        use crate::graded::GradedMonadOps;
        use crate::setcat::{FinSet, StateCoder};
        let (gm, _) = crate::statemonads::build_state_monads(2, 3, 2, 8_000_000_000).unwrap();
        let x = FinSet::numbered("V", 2);
        let cmds = ["read 0", "read 1", "read 2"];
        let els: Vec<StateElement> = cmds
            .iter()
            .map(|src| denote(&parse_program(src, 2).unwrap(), 2, 3).unwrap())
            .collect();
        // Encode the innermost element and nest the constant continuations.
        let coder1 = StateCoder::new(2, 1, x.size);
        let e3 = coder1.encode(&els[2].tau, &els[2].xi);
        let t1x = gm.t_ob(1, &x);
        let coder_t1 = StateCoder::new(2, 1, t1x.size);
        let e23 = coder_t1.encode(&els[1].tau, &[e3, e3]);
        let t1t1x = gm.t_ob(1, &t1x);
        let coder_t1t1 = StateCoder::new(2, 1, t1t1x.size);
        let e123 = coder_t1t1.encode(&els[0].tau, &[e23, e23]);

        // Inner-first association: μ_{1,2} ∘ T_1(μ_{1,1}).
        let lifted = gm.t_mor(1, &gm.mu(1, 1, &x));
        let path_a = gm.mu(1, 2, &x).apply(lifted.apply(e123));
        // Outer-first association: μ_{2,1} ∘ μ_{1,1,T_1 X}.
        let path_b = gm.mu(2, 1, &x).apply(gm.mu(1, 1, &t1x).apply(e123));
        assert_eq!(path_a, path_b, "the associativity square commutes here");

        // Both equal the denotation of the sequenced program.
        let p = parse_program(&cmds.join("; "), 2).unwrap();
        let el = denote(&p, 2, 3).unwrap();
        let coder3 = StateCoder::new(2, 3, x.size);
        assert_eq!(path_a, coder3.encode(&el.tau, &el.xi));
    }
}
