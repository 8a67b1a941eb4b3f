//! Concrete computed instances: the truncated category of finite cardinals
//! and injections, the graded state monad, and the indexed state monad over
//! explicit finite value sets.
//!
//! Stores over `m` registers are tuples indexed `0..m-1`, encoded as indices
//! `0..|V|^m` (little-endian digits base `|V|`); `V^0` is the empty tuple.
//! An element of `T_m X ≅ (V^m ⇒ V^m) × (V^m ⇒ X)` is a pair of tabulated
//! functions on stores.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backend::SetBackend;
use crate::error::{GmError, Result};
use crate::fincat::{
    FiniteCategory, MorIx, ObIx, PartialMonoidalCategory, RawCategory,
};
use crate::graded::{Grading, GradedMonadOps};
use crate::indexed::IndexedMonadOps;
use crate::setcat::{all_injections, pow_u128, ElemShape, El, FinSet, SetFn, StateCoder};

/// The category of cardinals `0..=bound` and injective functions, with the
/// disjoint-sum tensor defined on the grid `{(m, n) : m + n <= bound}`.
#[derive(Debug)]
pub struct InjTruncation {
    pub bound: usize,
    pub cat: Arc<FiniteCategory>,
    pub monoidal: Arc<PartialMonoidalCategory>,
    /// Map vector of each morphism, aligned with morphism indices.
    pub maps: Vec<Vec<usize>>,
}

fn inj_id(m: usize, mp: usize, map: &[usize]) -> String {
    let digits: Vec<String> = map.iter().map(|d| d.to_string()).collect();
    format!("i{}_{}[{}]", m, mp, digits.join(""))
}

impl InjTruncation {
    pub fn new(bound: usize) -> Result<Self> {
        let mut raw = RawCategory::new(format!("Inj<={bound}"));
        raw.objects = (0..=bound).map(|m| m.to_string()).collect();
        let mut maps = Vec::new();
        let mut lookup: BTreeMap<(usize, usize, Vec<usize>), usize> = BTreeMap::new();
        for m in 0..=bound {
            for mp in 0..=bound {
                for map in all_injections(m, mp) {
                    let id = inj_id(m, mp, &map);
                    lookup.insert((m, mp, map.clone()), maps.len());
                    raw.morphisms.push((id, m.to_string(), mp.to_string()));
                    maps.push(map);
                }
            }
        }
        for m in 0..=bound {
            let id_map: Vec<usize> = (0..m).collect();
            raw.identities
                .insert(m.to_string(), inj_id(m, m, &id_map));
        }
        for (ui, umap) in maps.iter().enumerate() {
            for (vi, vmap) in maps.iter().enumerate() {
                let (us, ut) = (
                    raw.morphisms[ui].1.parse::<usize>().unwrap(),
                    raw.morphisms[ui].2.parse::<usize>().unwrap(),
                );
                let (vs, vt) = (
                    raw.morphisms[vi].1.parse::<usize>().unwrap(),
                    raw.morphisms[vi].2.parse::<usize>().unwrap(),
                );
                if ut != vs {
                    continue;
                }
                let comp_map: Vec<usize> = umap.iter().map(|&k| vmap[k]).collect();
                let _ = us;
                raw.comp.push((
                    raw.morphisms[vi].0.clone(),
                    raw.morphisms[ui].0.clone(),
                    inj_id(us, vt, &comp_map),
                ));
            }
        }
        let cat = Arc::new(
            raw.validate()
                .map_err(|d| GmError::invalid("Inj truncation", d.join("; ")))?,
        );

        // Tensor: disjoint sum on the grid m + n <= bound.
        let mut tensor_ob = BTreeMap::new();
        for m in 0..=bound {
            for n in 0..=bound {
                if m + n <= bound {
                    tensor_ob.insert(
                        (
                            cat.object_by_id(&m.to_string()).unwrap(),
                            cat.object_by_id(&n.to_string()).unwrap(),
                        ),
                        cat.object_by_id(&(m + n).to_string()).unwrap(),
                    );
                }
            }
        }
        let mut tensor_mor = BTreeMap::new();
        for ui in cat.morphisms() {
            for vi in cat.morphisms() {
                let (us, ut) = (cat.src(ui), cat.tgt(ui));
                let (vs, vt) = (cat.src(vi), cat.tgt(vi));
                // Object indices equal register counts by construction.
                if us + vs > bound || ut + vt > bound {
                    continue;
                }
                let mut sum: Vec<usize> = maps[ui].clone();
                sum.extend(maps[vi].iter().map(|&k| ut + k));
                let id = inj_id(us + vs, ut + vt, &sum);
                tensor_mor.insert((ui, vi), cat.morphism_by_id(&id).unwrap());
            }
        }
        let unit = cat.object_by_id("0").unwrap();
        let monoidal = Arc::new(PartialMonoidalCategory::new(
            cat.clone(),
            tensor_ob,
            tensor_mor,
            unit,
        ));
        Ok(InjTruncation {
            bound,
            cat,
            monoidal,
            maps,
        })
    }

    /// Morphism index of the injection with the given map vector.
    pub fn injection(&self, m: usize, mp: usize, map: &[usize]) -> Result<MorIx> {
        self.cat.morphism_by_id(&inj_id(m, mp, map))
    }
}

/// Shared pointwise formulas of the state monads.
#[derive(Debug, Clone)]
struct StateOps {
    values: usize,
}

impl StateOps {
    fn t_set(&self, m: usize, x: &FinSet) -> FinSet {
        FinSet {
            label: format!("T{}({})", m, x.label),
            size: StateCoder::size(self.values, m, x.size),
            shape: ElemShape::State {
                values: self.values,
                registers: m,
                inner: Box::new(x.clone()),
            },
        }
    }

    /// Functor action: `(τ, ξ) ↦ (τ, f ∘ ξ)`.
    fn t_mor(&self, m: usize, f: &SetFn) -> SetFn {
        let dom = self.t_set(m, &f.dom);
        let cod = self.t_set(m, &f.cod);
        let coder_in = StateCoder::new(self.values, m, f.dom.size);
        let coder_out = StateCoder::new(self.values, m, f.cod.size);
        let f = f.clone();
        SetFn::rule(dom, cod, move |e| {
            let (tau, xi) = coder_in.decode(e);
            let xi2: Vec<El> = xi.iter().map(|&i| f.apply(i)).collect();
            coder_out.encode(&tau, &xi2)
        })
    }

    /// Reindexing along an injection `u : m -> m'`:
    /// `(τ, ξ) ↦ (u•τ, ξ ∘ V^u)`, where `V^u` restricts a store along `u`
    /// and `u•τ` transports `τ` on the image of `u`, leaving the other
    /// registers untouched.
    fn t_u(&self, u: &[usize], m: usize, mp: usize, x: &FinSet) -> SetFn {
        let dom = self.t_set(m, x);
        let cod = self.t_set(mp, x);
        let coder_m = StateCoder::new(self.values, m, x.size);
        let coder_mp = StateCoder::new(self.values, mp, x.size);
        let u = u.to_vec();
        SetFn::rule(dom, cod, move |e| {
            let (tau, xi) = coder_m.decode(e);
            let stores_mp = coder_mp.store_count;
            let mut tau2 = Vec::with_capacity(stores_mp as usize);
            let mut xi2 = Vec::with_capacity(stores_mp as usize);
            for w in 0..stores_mp {
                let wd = coder_mp.store_digits(w);
                // V^u w: the store seen through u.
                let rd: Vec<El> = u.iter().map(|&k| wd[k]).collect();
                let r = coder_m.store_from_digits(&rd);
                let td = coder_m.store_digits(tau[r as usize]);
                let mut out = wd.clone();
                for (l, &reg) in u.iter().enumerate() {
                    out[reg] = td[l];
                }
                tau2.push(coder_mp.store_from_digits(&out));
                xi2.push(xi[r as usize]);
            }
            coder_mp.encode(&tau2, &xi2)
        })
    }

    /// `η` of the graded monad: the canonical bijection `X ≅ T_0 X`.
    fn graded_eta(&self, x: &FinSet) -> SetFn {
        let cod = self.t_set(0, x);
        SetFn::rule(x.clone(), cod, |e| e)
    }

    /// `μ_{m,n}` of the graded monad: `(τ, σ, ξ) ↦ (τ ⋆ σ, ξ)` with the
    /// index split between the `m`-block and the `n`-block.
    fn graded_mu(&self, m: usize, n: usize, x: &FinSet) -> SetFn {
        let tn = self.t_set(n, x);
        let dom = self.t_set(m, &tn);
        let cod = self.t_set(m + n, x);
        let outer = StateCoder::new(self.values, m, tn.size);
        let inner = StateCoder::new(self.values, n, x.size);
        let joined = StateCoder::new(self.values, m + n, x.size);
        SetFn::rule(dom, cod, move |e| {
            let (tau, kappa) = outer.decode(e);
            let stores = joined.store_count;
            let mut tau2 = Vec::with_capacity(stores as usize);
            let mut xi2 = Vec::with_capacity(stores as usize);
            for s in 0..stores {
                let d = joined.store_digits(s);
                let v = outer.store_from_digits(&d[..outer.registers]);
                let w = inner.store_from_digits(&d[outer.registers..]);
                let (sigma_v, xi_v) = inner.decode(kappa[v as usize]);
                let mut out = outer.store_digits(tau[v as usize]);
                out.extend(inner.store_digits(sigma_v[w as usize]));
                tau2.push(joined.store_from_digits(&out));
                xi2.push(xi_v[w as usize]);
            }
            joined.encode(&tau2, &xi2)
        })
    }

    /// `η_m` of the indexed monad: `x ↦ (id, const x)`.
    fn indexed_eta(&self, m: usize, x: &FinSet) -> SetFn {
        let cod = self.t_set(m, x);
        let coder = StateCoder::new(self.values, m, x.size);
        SetFn::rule(x.clone(), cod, move |e| {
            let stores = coder.store_count;
            let tau: Vec<El> = (0..stores).collect();
            let xi = vec![e; stores as usize];
            coder.encode(&tau, &xi)
        })
    }

    /// `μ_m` of the indexed monad:
    /// `(τ, σ, ξ) ↦ (τ▷σ, τ▶ξ)` with `(τ▷σ)(v) = σ(v)(τ v)` and
    /// `(τ▶ξ)(v) = ξ(v)(τ v)`.
    fn indexed_mu(&self, m: usize, x: &FinSet) -> SetFn {
        let tm = self.t_set(m, x);
        let dom = self.t_set(m, &tm);
        let cod = tm.clone();
        let outer = StateCoder::new(self.values, m, tm.size);
        let inner = StateCoder::new(self.values, m, x.size);
        SetFn::rule(dom, cod, move |e| {
            let (tau, kappa) = outer.decode(e);
            let stores = inner.store_count;
            let mut tau2 = Vec::with_capacity(stores as usize);
            let mut xi2 = Vec::with_capacity(stores as usize);
            for v in 0..stores {
                let (sigma_v, xi_v) = inner.decode(kappa[v as usize]);
                let tv = tau[v as usize];
                tau2.push(sigma_v[tv as usize]);
                xi2.push(xi_v[tv as usize]);
            }
            inner.encode(&tau2, &xi2)
        })
    }
}

/// Full enumeration of `T_m X` as a plain labeled set (small instances only).
pub fn graded_state_t(values: usize, m: usize, x: &FinSet, bound: u128) -> Result<FinSet> {
    let ops = StateOps { values };
    let set = ops.t_set(m, x);
    if set.size > bound {
        return Err(GmError::SizeBound {
            what: format!("enumeration of {}", set.label),
            need: set.size,
            bound,
        });
    }
    Ok(set)
}

/// The graded state monad with value set `V`, graded by the truncated
/// injection category.
#[derive(Debug)]
pub struct StateGradedMonad {
    pub values: Vec<String>,
    pub inj: Arc<InjTruncation>,
    grading: Grading,
    ops: StateOps,
    backend: SetBackend,
    bound: u128,
}

/// The indexed state monad with value set `V`, indexed by the same category
/// of cardinals and injections, now viewed as a plain category.
#[derive(Debug)]
pub struct StateIndexedMonad {
    pub values: Vec<String>,
    pub inj: Arc<InjTruncation>,
    ops: StateOps,
    backend: SetBackend,
    bound: u128,
}

/// Package both state monads over a shared truncation, ready for the axiom
/// suites and the derivation comparison.
pub fn build_state_monads(
    values: usize,
    reg_bound: usize,
    probe_max: usize,
    size_bound: u128,
) -> Result<(StateGradedMonad, StateIndexedMonad)> {
    if values == 0 {
        return Err(GmError::precondition(
            "build_state_monads",
            "value set must be nonempty",
        ));
    }
    // Refuse up front if even the single largest table is over bound.
    let worst = StateCoder::size(
        values,
        reg_bound,
        pow_u128(probe_max as u128, 1).max(1),
    );
    if worst > size_bound {
        return Err(GmError::SizeBound {
            what: "state monad tables".into(),
            need: worst,
            bound: size_bound,
        });
    }
    let inj = Arc::new(InjTruncation::new(reg_bound)?);
    let value_names: Vec<String> = (0..values).map(|v| v.to_string()).collect();
    let ops = StateOps { values };
    let backend = SetBackend::numbered_probes(probe_max);
    let graded = StateGradedMonad {
        values: value_names.clone(),
        inj: inj.clone(),
        grading: Grading::Truncated(inj.monoidal.clone()),
        ops: ops.clone(),
        backend: backend.clone(),
        bound: size_bound,
    };
    let indexed = StateIndexedMonad {
        values: value_names,
        inj,
        ops,
        backend,
        bound: size_bound,
    };
    Ok((graded, indexed))
}

impl StateGradedMonad {
    /// Number of registers named by a grading object (object indices equal
    /// register counts by construction of the truncation).
    fn regs(&self, m: ObIx) -> usize {
        m
    }

    pub fn value_count(&self) -> usize {
        self.ops.values
    }

    pub fn t_set(&self, m: usize, x: &FinSet) -> FinSet {
        self.ops.t_set(m, x)
    }
}

impl GradedMonadOps for StateGradedMonad {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        &self.backend
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn t_ob(&self, m: ObIx, x: &FinSet) -> FinSet {
        self.ops.t_set(self.regs(m), x)
    }
    fn t_mor(&self, m: ObIx, f: &SetFn) -> SetFn {
        self.ops.t_mor(self.regs(m), f)
    }
    fn t_u(&self, u: MorIx, x: &FinSet) -> SetFn {
        let m = self.inj.cat.src(u);
        let mp = self.inj.cat.tgt(u);
        self.ops.t_u(&self.inj.maps[u], m, mp, x)
    }
    fn eta(&self, x: &FinSet) -> SetFn {
        self.ops.graded_eta(x)
    }
    fn mu(&self, m: ObIx, n: ObIx, x: &FinSet) -> SetFn {
        self.ops.graded_mu(self.regs(m), self.regs(n), x)
    }
    fn size_bound(&self) -> u128 {
        self.bound
    }
}

impl StateIndexedMonad {
    pub fn t_set(&self, m: usize, x: &FinSet) -> FinSet {
        self.ops.t_set(m, x)
    }

    pub fn value_count(&self) -> usize {
        self.ops.values
    }
}

impl IndexedMonadOps for StateIndexedMonad {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        &self.backend
    }
    fn index(&self) -> &Arc<FiniteCategory> {
        &self.inj.cat
    }
    fn t_ob(&self, b: ObIx, x: &FinSet) -> FinSet {
        self.ops.t_set(b, x)
    }
    fn t_mor(&self, b: ObIx, f: &SetFn) -> SetFn {
        self.ops.t_mor(b, f)
    }
    fn t_u(&self, u: MorIx, x: &FinSet) -> SetFn {
        let m = self.inj.cat.src(u);
        let mp = self.inj.cat.tgt(u);
        self.ops.t_u(&self.inj.maps[u], m, mp, x)
    }
    fn eta(&self, b: ObIx, x: &FinSet) -> SetFn {
        self.ops.indexed_eta(b, x)
    }
    fn mu(&self, b: ObIx, x: &FinSet) -> SetFn {
        self.ops.indexed_mu(b, x)
    }
    fn size_bound(&self) -> u128 {
        self.bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::Backend;
    use crate::graded::check_graded_monad;

    fn two_values() -> (StateGradedMonad, StateIndexedMonad) {
        build_state_monads(2, 2, 2, 6_000_000).expect("bounds are sane")
    }

    #[test]
    fn truncated_inj_composition_is_function_composition() {
        // swap : 2 -> 2 after u : 1 -> 2 with u(0) = 1 is the injection
        // sending 0 to 0.
        let inj = InjTruncation::new(2).unwrap();
        let u = inj.injection(1, 2, &[1]).unwrap();
        let swap = inj.injection(2, 2, &[1, 0]).unwrap();
        let composite = inj.cat.compose(swap, u).unwrap();
        assert_eq!(composite, inj.injection(1, 2, &[0]).unwrap());
        // Swapped arguments are not composable (2 -> 2 then 1 -> 2).
        assert!(inj.cat.compose(u, swap).is_err());
    }

    #[test]
    fn truncation_counts() {
        let inj = InjTruncation::new(2).unwrap();
        // hom(0,0)=1, hom(0,1)=1, hom(0,2)=1, hom(1,1)=1, hom(1,2)=2,
        // hom(2,2)=2: eight injections in total.
        assert_eq!(inj.cat.morphism_count(), 8);
        assert!(crate::fincat::validate_monoidal(&*inj.monoidal).passed());
    }

    #[test]
    fn t_cardinalities_match_formula() {
        let (gm, _) = two_values();
        // V = {0,1}, m = 0, |X| = 2: T_0 X ≅ X.
        let x2 = FinSet::numbered("X2", 2);
        assert_eq!(gm.t_ob(0, &x2).size, 2);
        // V = {0,1}, m = 1, |X| = 1: |(V x X)|^|V| = 4.
        let x1 = FinSet::numbered("X1", 1);
        assert_eq!(gm.t_ob(1, &x1).size, 4);
        // Cardinality oracle: (|V|^m * |X|)^(|V|^m).
        for m in 0..=2usize {
            for xs in 1..=2u128 {
                let x = FinSet::numbered("X", xs as usize);
                let stores = 2u128.pow(m as u32);
                let expected = pow_u128(stores * xs, stores as u64);
                assert_eq!(gm.t_ob(m, &x).size, expected);
            }
        }
    }

    #[test]
    fn over_bound_enumeration_refused() {
        let x = FinSet::numbered("X", 2);
        assert!(graded_state_t(2, 2, &x, 100).is_err());
        assert!(graded_state_t(2, 1, &x, 100).is_ok());
    }

    #[test]
    fn reindexing_identity_is_identity() {
        let (gm, _) = two_values();
        let x = FinSet::numbered("X", 2);
        let id1 = gm.inj.injection(1, 1, &[0]).unwrap();
        let f = gm.t_u(id1, &x);
        let n = f.dom.small_size().unwrap();
        for e in 0..n {
            assert_eq!(f.apply(e), e);
        }
    }

    #[test]
    fn reindexing_negation_example() {
        // u : 1 -> 2 with u(0) = 1; τ = negation on the single register.
        let (gm, _) = two_values();
        let x = FinSet::numbered("X", 1);
        let u = gm.inj.injection(1, 2, &[1]).unwrap();
        let coder1 = StateCoder::new(2, 1, 1);
        let coder2 = StateCoder::new(2, 2, 1);
        let neg = coder1.encode(&[1, 0], &[0, 0]);
        let f = gm.t_u(u, &x);
        let (tau2, _) = coder2.decode(f.apply(neg));
        // (u•τ)(w0, w1) = (w0, ¬w1) on all four stores.
        for w in 0..4u64 {
            let d = coder2.store_digits(w);
            let expect = coder2.store_from_digits(&[d[0], 1 - d[1]]);
            assert_eq!(tau2[w as usize], expect);
        }
    }

    #[test]
    fn mu_on_identity_sigma_is_identity_transform() {
        // m = n = 1, τ = id, σ(v)(w) = w: τ⋆σ = id on V².
        let (gm, _) = two_values();
        let x = FinSet::numbered("X", 1);
        let tn = gm.t_ob(1, &x);
        let inner = StateCoder::new(2, 1, 1);
        let outer = StateCoder::new(2, 1, tn.size);
        // κ(v) = (id, ξ_v) with ξ arbitrary (only one choice for |X| = 1).
        let kappa_el = inner.encode(&[0, 1], &[0, 0]);
        let e = outer.encode(&[0, 1], &[kappa_el, kappa_el]);
        let mu = gm.mu(1, 1, &x);
        let joined = StateCoder::new(2, 2, 1);
        let (tau, _) = joined.decode(mu.apply(e));
        for s in 0..4u64 {
            assert_eq!(tau[s as usize], s);
        }
    }

    #[test]
    fn eta_is_bijective_on_grade_zero() {
        let (gm, _) = two_values();
        let x = FinSet::numbered("X", 2);
        let eta = gm.eta(&x);
        // η then the canonical projection recovers x for every x.
        for e in 0..2u64 {
            assert_eq!(eta.apply(e), e);
        }
        assert_eq!(gm.t_ob(0, &x).size, 2);
    }

    #[test]
    fn gm4_instance_exhaustive() {
        // μ_{0,m} ∘ (η ∗ T_m) = id on all of T_m X, m <= 2, |X| <= 2.
        let (gm, _) = two_values();
        let b = gm.backend().clone();
        for m in 0..=2usize {
            for xs in 1..=2usize {
                let x = FinSet::numbered("X", xs);
                let tm_x = gm.t_ob(m, &x);
                let lhs = SetFn::compose(&gm.mu(0, m, &x), &gm.eta(&tm_x));
                assert!(b.mor_eq(&lhs, &SetFn::identity(&tm_x)), "m={m} |X|={xs}");
            }
        }
    }

    #[test]
    fn indexed_mu_with_constant_identity_sigma() {
        // τ▷const(id) = τ for every τ.
        let (_, im) = two_values();
        let x = FinSet::numbered("X", 2);
        let tm = im.t_ob(1, &x);
        let inner = StateCoder::new(2, 1, 2);
        let outer = StateCoder::new(2, 1, tm.size);
        let mu = im.mu(1, &x);
        for tau0 in 0..2u64 {
            for tau1 in 0..2u64 {
                // σ(v) = id, ξ(v) = const x0 for both stores.
                let kap = inner.encode(&[0, 1], &[0, 0]);
                let e = outer.encode(&[tau0, tau1], &[kap, kap]);
                let (tau_out, _) = inner.decode(mu.apply(e));
                assert_eq!(tau_out, vec![tau0, tau1]);
            }
        }
    }

    #[test]
    fn indexed_im5_instance() {
        // μ_m ∘ (η_m ∗ T_m) = id for V={0,1}, m=1, |X|<=2.
        let (_, im) = two_values();
        let b = im.backend().clone();
        for xs in 1..=2usize {
            let x = FinSet::numbered("X", xs);
            let tm = im.t_ob(1, &x);
            let lhs = SetFn::compose(&im.mu(1, &x), &im.eta(1, &tm));
            assert!(b.mor_eq(&lhs, &SetFn::identity(&tm)));
        }
    }

    #[test]
    fn graded_and_indexed_share_t_tables() {
        let (gm, im) = two_values();
        let b = gm.backend().clone();
        let x = FinSet::numbered("X", 2);
        for m in 0..=2usize {
            assert_eq!(gm.t_ob(m, &x), im.t_ob(m, &x));
        }
        for u in gm.inj.cat.morphisms() {
            assert!(b.mor_eq(&gm.t_u(u, &x), &im.t_u(u, &x)));
        }
    }

    #[test]
    fn singleton_value_set_collapses() {
        // |V| = 1: |T_m X| = |X| for all m.
        let (gm, _) = build_state_monads(1, 2, 2, 1 << 20).unwrap();
        let x = FinSet::numbered("X", 2);
        for m in 0..=2usize {
            assert_eq!(gm.t_ob(m, &x).size, 2);
        }
    }

    #[test]
    fn degenerate_zero_truncation_passes_suite() {
        let (gm, _) = build_state_monads(2, 0, 2, 1 << 20).unwrap();
        let report = check_graded_monad(&gm);
        assert!(report.passed(), "{report}");
    }
}
