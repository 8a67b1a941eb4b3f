//! Probe-level access to the base category a (co)monad acts on.
//!
//! Law checkers are written once against this trait and run over two
//! backends: a fully tabulated `FiniteCategory` (checks are exhaustive over
//! its tables) and the computed finite-set category (checks enumerate the
//! configured probe sets and all functions among them, comparing morphisms
//! extensionally).

use std::sync::Arc;

use crate::error::{GmError, Result};
use crate::fincat::{FiniteCategory, MorIx, ObIx};
use crate::report::{witness, Witness};
use crate::setcat::{all_functions, FinSet, SetFn};

pub trait Backend {
    type Ob: Clone + Eq + Ord + std::fmt::Debug;
    type Mor: Clone + std::fmt::Debug;

    fn src(&self, f: &Self::Mor) -> Self::Ob;
    fn tgt(&self, f: &Self::Mor) -> Self::Ob;
    fn identity(&self, x: &Self::Ob) -> Self::Mor;
    /// Composite `g ∘ f`; callers guarantee composability.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    /// Failure detail when `f ≠ g` (e.g. the element where they differ).
    fn mismatch(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Witness>;

    /// Objects at which componentwise checks run. Exhaustive for tables,
    /// the probe family for computed sets.
    fn probe_objects(&self) -> Vec<Self::Ob>;
    /// Morphisms along which naturality is checked.
    fn probe_morphisms(&self) -> Vec<Self::Mor>;
    /// The hom-set `x -> y`, refused above `bound` candidates.
    fn hom(&self, x: &Self::Ob, y: &Self::Ob, bound: u128) -> Result<Vec<Self::Mor>>;

    fn ob_label(&self, x: &Self::Ob) -> String;
    fn mor_label(&self, f: &Self::Mor) -> String;
    /// Deterministic sort key for canonical-representative choices.
    fn mor_key(&self, f: &Self::Mor) -> Vec<u64>;
    /// Cardinality guard: `Some(size)` when componentwise work on `x` scales
    /// with its element count, `None` when it is table-indexed.
    fn ob_size(&self, x: &Self::Ob) -> Option<u128>;
}

/// Backend over a tabulated finite category.
#[derive(Debug, Clone)]
pub struct TableBackend {
    pub cat: Arc<FiniteCategory>,
}

impl TableBackend {
    pub fn new(cat: Arc<FiniteCategory>) -> Self {
        TableBackend { cat }
    }
}

impl Backend for TableBackend {
    type Ob = ObIx;
    type Mor = MorIx;

    fn src(&self, f: &MorIx) -> ObIx {
        self.cat.src(*f)
    }
    fn tgt(&self, f: &MorIx) -> ObIx {
        self.cat.tgt(*f)
    }
    fn identity(&self, x: &ObIx) -> MorIx {
        self.cat.identity(*x)
    }
    fn compose(&self, g: &MorIx, f: &MorIx) -> MorIx {
        self.cat.comp(*g, *f)
    }
    fn mor_eq(&self, f: &MorIx, g: &MorIx) -> bool {
        f == g
    }
    fn mismatch(&self, f: &MorIx, g: &MorIx) -> Option<Witness> {
        (f != g).then(|| {
            witness([
                ("lhs", self.cat.morphism_id(*f).to_string()),
                ("rhs", self.cat.morphism_id(*g).to_string()),
            ])
        })
    }
    fn probe_objects(&self) -> Vec<ObIx> {
        self.cat.objects().collect()
    }
    fn probe_morphisms(&self) -> Vec<MorIx> {
        self.cat.morphisms().collect()
    }
    fn hom(&self, x: &ObIx, y: &ObIx, _bound: u128) -> Result<Vec<MorIx>> {
        Ok(self.cat.hom(*x, *y))
    }
    fn ob_label(&self, x: &ObIx) -> String {
        self.cat.object_id(*x).to_string()
    }
    fn mor_label(&self, f: &MorIx) -> String {
        self.cat.morphism_id(*f).to_string()
    }
    fn mor_key(&self, f: &MorIx) -> Vec<u64> {
        vec![*f as u64]
    }
    fn ob_size(&self, _x: &ObIx) -> Option<u128> {
        None
    }
}

/// Backend over computed finite sets, with a fixed probe family.
#[derive(Clone)]
pub struct SetBackend {
    pub probes: Vec<FinSet>,
}

impl SetBackend {
    pub fn new(probes: Vec<FinSet>) -> Self {
        SetBackend { probes }
    }

    /// Probe sets of sizes `0..=max` named `X0, X1, ...`.
    pub fn numbered_probes(max: usize) -> Self {
        SetBackend::new(
            (0..=max)
                .map(|n| FinSet::numbered(format!("X{n}"), n))
                .collect(),
        )
    }
}

impl Backend for SetBackend {
    type Ob = FinSet;
    type Mor = SetFn;

    fn src(&self, f: &SetFn) -> FinSet {
        f.dom.clone()
    }
    fn tgt(&self, f: &SetFn) -> FinSet {
        f.cod.clone()
    }
    fn identity(&self, x: &FinSet) -> SetFn {
        SetFn::identity(x)
    }
    fn compose(&self, g: &SetFn, f: &SetFn) -> SetFn {
        SetFn::compose(g, f)
    }
    fn mor_eq(&self, f: &SetFn, g: &SetFn) -> bool {
        f.dom == g.dom && f.cod == g.cod && f.first_mismatch(g).is_none()
    }
    fn mismatch(&self, f: &SetFn, g: &SetFn) -> Option<Witness> {
        if f.dom != g.dom || f.cod != g.cod {
            return Some(witness([
                ("lhs-type", format!("{} -> {}", f.dom, f.cod)),
                ("rhs-type", format!("{} -> {}", g.dom, g.cod)),
            ]));
        }
        f.first_mismatch(g).map(|e| {
            witness([
                ("element", f.dom.elem_label(e)),
                ("lhs", f.cod.elem_label(f.apply(e))),
                ("rhs", g.cod.elem_label(g.apply(e))),
            ])
        })
    }
    fn probe_objects(&self) -> Vec<FinSet> {
        self.probes.clone()
    }
    fn probe_morphisms(&self) -> Vec<SetFn> {
        let mut out = Vec::new();
        for x in &self.probes {
            for y in &self.probes {
                out.extend(all_functions(x, y, 1 << 16).expect("probe homs are tiny"));
            }
        }
        out
    }
    fn hom(&self, x: &FinSet, y: &FinSet, bound: u128) -> Result<Vec<SetFn>> {
        all_functions(x, y, bound)
    }
    fn ob_label(&self, x: &FinSet) -> String {
        x.to_string()
    }
    fn mor_label(&self, f: &SetFn) -> String {
        if f.dom.size <= 8 {
            let entries: Vec<String> = f
                .table()
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    format!("{}↦{}", f.dom.elem_label(i as u64), f.cod.elem_label(v))
                })
                .collect();
            format!("[{}]", entries.join(","))
        } else {
            format!("<{} -> {}>", f.dom, f.cod)
        }
    }
    fn mor_key(&self, f: &SetFn) -> Vec<u64> {
        f.key()
    }
    fn ob_size(&self, x: &FinSet) -> Option<u128> {
        Some(x.size)
    }
}

/// Size guard shared by the axiom checkers: `Err` carries the skip note.
pub fn guard_size<B: Backend>(
    backend: &B,
    objects: &[&B::Ob],
    bound: u128,
) -> std::result::Result<(), Witness> {
    for x in objects {
        if let Some(size) = backend.ob_size(x) {
            if size > bound {
                return Err(witness([
                    ("skipped", "domain over size bound".to_string()),
                    ("object", backend.ob_label(x)),
                    ("size", size.to_string()),
                    ("bound", bound.to_string()),
                ]));
            }
        }
    }
    Ok(())
}

impl std::fmt::Debug for SetBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetBackend({} probes)", self.probes.len())
    }
}

pub fn size_bound_error(what: &str, need: u128, bound: u128) -> GmError {
    GmError::SizeBound {
        what: what.to_string(),
        need,
        bound,
    }
}
