//! A computed category of finite sets and functions.
//!
//! The concrete state-monad instances live over finite sets whose iterates
//! (`T_m X`, `T_m T_n X`, ...) are far too many to tabulate as a
//! `FiniteCategory`. This module represents such sets by their cardinality
//! plus a decode scheme for element labels, and functions either as dense
//! index vectors or as on-demand rules. Rules let us compose through very
//! large intermediate sets without materializing them; equality checks always
//! happen on domains that a caller has size-guarded first.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{GmError, Result};

/// Element index. Sets we ever index into stay below `2^64`; sizes of sets we
/// merely name (nested iterates that get skipped) are tracked in `u128`.
pub type El = u64;

/// How to decode an element index into a printable label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ElemShape {
    /// Plain labeled elements.
    Atoms(Vec<String>),
    /// Pairs `(store transform, continuation)` over `values^registers`
    /// stores, continuations landing in `inner`.
    State {
        values: usize,
        registers: usize,
        inner: Box<FinSet>,
    },
    /// Disjoint sum: `inner` first, then `extra` labeled exception points.
    Sum {
        inner: Box<FinSet>,
        extra: Vec<String>,
    },
    /// Product with a labeled finite set on the right.
    Pair {
        inner: Box<FinSet>,
        extra: Vec<String>,
    },
    /// Anonymous elements, printed as bare indices.
    Opaque,
}

/// A finite set: canonical label, size, and element decode scheme.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinSet {
    pub label: String,
    pub size: u128,
    pub shape: ElemShape,
}

impl FinSet {
    pub fn atoms(label: impl Into<String>, elems: Vec<String>) -> Self {
        FinSet {
            label: label.into(),
            size: elems.len() as u128,
            shape: ElemShape::Atoms(elems),
        }
    }

    /// The set `{x0, .., x(n-1)}`.
    pub fn numbered(label: impl Into<String>, n: usize) -> Self {
        FinSet::atoms(label, (0..n).map(|i| format!("x{i}")).collect())
    }

    pub fn unit() -> Self {
        FinSet::atoms("1", vec!["()".into()])
    }

    /// Usable cardinality, erroring when the set is too large to index.
    pub fn small_size(&self) -> Result<u64> {
        u64::try_from(self.size).map_err(|_| GmError::SizeBound {
            what: format!("cardinality of {}", self.label),
            need: self.size,
            bound: u64::MAX as u128,
        })
    }

    /// Printable label of element `i`.
    pub fn elem_label(&self, i: El) -> String {
        match &self.shape {
            ElemShape::Atoms(elems) => elems
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| format!("#{i}")),
            ElemShape::Opaque => format!("#{i}"),
            ElemShape::Sum { inner, extra } => {
                let n = inner.size;
                if (i as u128) < n {
                    format!("inl({})", inner.elem_label(i))
                } else {
                    format!("exn({})", extra[(i as u128 - n) as usize])
                }
            }
            ElemShape::Pair { inner, extra } => {
                let k = extra.len() as u64;
                format!(
                    "({},{})",
                    inner.elem_label(i / k),
                    extra[(i % k) as usize]
                )
            }
            ElemShape::State {
                values,
                registers,
                inner,
            } => {
                let st = StateCoder::new(*values, *registers, inner.size);
                let (tau, xi) = st.decode(i);
                let stores = st.store_count;
                let mut t = Vec::new();
                let mut x = Vec::new();
                for s in 0..stores {
                    t.push(st.store_label(tau[s as usize]));
                    x.push(inner.elem_label(xi[s as usize]));
                }
                format!("{{t=[{}];x=[{}]}}", t.join(","), x.join(","))
            }
        }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label, self.size)
    }
}

/// Index arithmetic for elements of `T_m X ≅ (V^m ⇒ V^m) × (V^m ⇒ X)`.
///
/// Stores are indices `0..values^registers`, little-endian digits base
/// `values` (register `i` is digit `i`). An element is
/// `tau_idx * |X|^stores + xi_idx`, where `tau_idx` and `xi_idx` are the
/// digit encodings of the two component functions over all stores.
pub struct StateCoder {
    pub values: u64,
    pub registers: usize,
    pub store_count: u64,
    pub inner_size: u64,
}

impl StateCoder {
    pub fn new(values: usize, registers: usize, inner_size: u128) -> Self {
        let store_count = (values as u64).pow(registers as u32);
        StateCoder {
            values: values as u64,
            registers,
            store_count,
            inner_size: u64::try_from(inner_size).expect("indexed state set fits u64"),
        }
    }

    /// Total size of `T_m X`, computed in `u128`.
    pub fn size(values: usize, registers: usize, inner_size: u128) -> u128 {
        let stores = (values as u64).pow(registers as u32);
        pow_u128(stores as u128, stores).saturating_mul(pow_u128(inner_size, stores))
    }

    pub fn decode(&self, e: El) -> (Vec<El>, Vec<El>) {
        let stores = self.store_count;
        let xw = self.inner_size.pow(stores as u32);
        let (mut ti, mut xi_idx) = (e / xw, e % xw);
        let mut tau = Vec::with_capacity(stores as usize);
        let mut xi = Vec::with_capacity(stores as usize);
        for _ in 0..stores {
            tau.push(ti % stores);
            ti /= stores;
            xi.push(xi_idx % self.inner_size.max(1));
            xi_idx /= self.inner_size.max(1);
        }
        (tau, xi)
    }

    pub fn encode(&self, tau: &[El], xi: &[El]) -> El {
        let stores = self.store_count;
        let mut ti = 0u64;
        for s in (0..stores as usize).rev() {
            ti = ti * stores + tau[s];
        }
        let mut xv = 0u64;
        for s in (0..stores as usize).rev() {
            xv = xv * self.inner_size.max(1) + xi[s];
        }
        ti * self.inner_size.pow(stores as u32) + xv
    }

    /// Digits of store `s`, one value per register.
    pub fn store_digits(&self, s: El) -> Vec<El> {
        let mut out = Vec::with_capacity(self.registers);
        let mut s = s;
        for _ in 0..self.registers {
            out.push(s % self.values);
            s /= self.values;
        }
        out
    }

    pub fn store_from_digits(&self, digits: &[El]) -> El {
        let mut s = 0u64;
        for &d in digits.iter().rev() {
            s = s * self.values + d;
        }
        s
    }

    pub fn store_label(&self, s: El) -> String {
        self.store_digits(s)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("")
    }
}

pub fn pow_u128(base: u128, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// A function between finite sets: dense table or on-demand rule.
#[derive(Clone)]
pub struct SetFn {
    pub dom: FinSet,
    pub cod: FinSet,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Dense(Arc<Vec<El>>),
    Rule(Arc<dyn Fn(El) -> El + Send + Sync>),
}

impl fmt::Debug for SetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Dense(v) => write!(f, "SetFn({} -> {}; {:?})", self.dom, self.cod, v),
            Repr::Rule(_) => write!(f, "SetFn({} -> {}; <rule>)", self.dom, self.cod),
        }
    }
}

impl SetFn {
    pub fn dense(dom: FinSet, cod: FinSet, map: Vec<El>) -> Self {
        debug_assert_eq!(map.len() as u128, dom.size);
        SetFn {
            dom,
            cod,
            repr: Repr::Dense(Arc::new(map)),
        }
    }

    pub fn rule(
        dom: FinSet,
        cod: FinSet,
        f: impl Fn(El) -> El + Send + Sync + 'static,
    ) -> Self {
        SetFn {
            dom,
            cod,
            repr: Repr::Rule(Arc::new(f)),
        }
    }

    pub fn identity(x: &FinSet) -> Self {
        SetFn::rule(x.clone(), x.clone(), |e| e)
    }

    pub fn constant(dom: FinSet, cod: FinSet, at: El) -> Self {
        SetFn::rule(dom, cod, move |_| at)
    }

    pub fn apply(&self, e: El) -> El {
        match &self.repr {
            Repr::Dense(v) => v[e as usize],
            Repr::Rule(f) => f(e),
        }
    }

    /// Composite `g ∘ f`. Stays lazy so that huge intermediate codomains are
    /// never materialized.
    pub fn compose(g: &SetFn, f: &SetFn) -> SetFn {
        debug_assert_eq!(f.cod, g.dom, "non-composable set functions");
        match (&f.repr, &g.repr) {
            (Repr::Dense(fv), _) if fv.len() <= 1 << 16 => {
                let map = fv.iter().map(|&e| g.apply(e)).collect();
                SetFn::dense(f.dom.clone(), g.cod.clone(), map)
            }
            _ => {
                let (g2, f2) = (g.clone(), f.clone());
                SetFn::rule(f.dom.clone(), g.cod.clone(), move |e| {
                    g2.apply(f2.apply(e))
                })
            }
        }
    }

    /// Dense table of this function; the caller must have size-guarded the
    /// domain.
    pub fn table(&self) -> Vec<El> {
        match &self.repr {
            Repr::Dense(v) => v.as_ref().clone(),
            Repr::Rule(f) => {
                let n = self
                    .dom
                    .small_size()
                    .expect("table() called on an unguarded huge domain");
                (0..n).map(|e| f(e)).collect()
            }
        }
    }

    /// First input where the two functions disagree, if any. Both must share
    /// this function's (size-guarded) domain.
    pub fn first_mismatch(&self, other: &SetFn) -> Option<El> {
        let n = self
            .dom
            .small_size()
            .expect("mismatch check on an unguarded huge domain");
        (0..n).find(|&e| self.apply(e) != other.apply(e))
    }

    /// Deterministic sort key (the dense table).
    pub fn key(&self) -> Vec<El> {
        self.table()
    }
}

impl PartialEq for SetFn {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.first_mismatch(other).is_none()
    }
}
impl Eq for SetFn {}

impl PartialOrd for SetFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SetFn {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.dom, &self.cod, self.key()).cmp(&(&other.dom, &other.cod, other.key()))
    }
}

/// All functions `x -> y`, in lexicographic table order. Errors when the
/// count exceeds `bound`.
pub fn all_functions(x: &FinSet, y: &FinSet, bound: u128) -> Result<Vec<SetFn>> {
    let n = x.small_size()?;
    let m = y.small_size()?;
    if n == 0 {
        return Ok(vec![SetFn::dense(x.clone(), y.clone(), Vec::new())]);
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let count = pow_u128(m as u128, n);
    if count > bound {
        return Err(GmError::SizeBound {
            what: format!("function enumeration {} -> {}", x.label, y.label),
            need: count,
            bound,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut table = vec![0 as El; n as usize];
    loop {
        out.push(SetFn::dense(x.clone(), y.clone(), table.clone()));
        let mut k = 0;
        loop {
            if k == table.len() {
                return Ok(out);
            }
            table[k] += 1;
            if table[k] < m {
                break;
            }
            table[k] = 0;
            k += 1;
        }
    }
}

/// All injective maps `[m] -> [m']` as index vectors, lexicographic.
pub fn all_injections(m: usize, m_prime: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn go(m: usize, mp: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for v in 0..mp {
            if !current.contains(&v) {
                current.push(v);
                go(m, mp, current, out);
                current.pop();
            }
        }
    }
    go(m, m_prime, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_coder_round_trip() {
        // V = {0,1}, one register, inner set of size 3.
        let st = StateCoder::new(2, 1, 3);
        assert_eq!(st.store_count, 2);
        let size = StateCoder::size(2, 1, 3);
        assert_eq!(size, 4 * 9); // stores^stores * inner^stores
        for e in 0..(size as El) {
            let (tau, xi) = st.decode(e);
            assert_eq!(st.encode(&tau, &xi), e);
        }
    }

    #[test]
    fn function_enumeration_counts() {
        let x = FinSet::numbered("X", 2);
        let y = FinSet::numbered("Y", 3);
        let fs = all_functions(&x, &y, 1 << 20).unwrap();
        assert_eq!(fs.len(), 9);
        let empty = FinSet::numbered("0", 0);
        assert_eq!(all_functions(&empty, &y, 10).unwrap().len(), 1);
        assert_eq!(all_functions(&y, &empty, 10).unwrap().len(), 0);
    }

    #[test]
    fn injections_counts() {
        assert_eq!(all_injections(0, 2).len(), 1);
        assert_eq!(all_injections(1, 2).len(), 2);
        assert_eq!(all_injections(2, 2).len(), 2);
        assert_eq!(all_injections(2, 1).len(), 0);
        assert_eq!(all_injections(2, 3).len(), 6);
    }

    #[test]
    fn rule_compose_matches_dense() {
        let x = FinSet::numbered("X", 3);
        let f = SetFn::dense(x.clone(), x.clone(), vec![1, 2, 0]);
        let g = SetFn::rule(x.clone(), x.clone(), |e| (e + 1) % 3);
        let gf = SetFn::compose(&g, &f);
        assert_eq!(gf.table(), vec![2, 0, 1]);
        assert_eq!(SetFn::identity(&x).table(), vec![0, 1, 2]);
    }
}
