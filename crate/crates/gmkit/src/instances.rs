//! The instance zoo: small categories, gradings, and (co)monads used across
//! tests, examples, and the acceptance suite, plus seeded law-breaking
//! variants for mutation sensitivity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backend::SetBackend;
use crate::fincat::{
    FiniteCategory, FunctorTable, Monoidal, MorIx, NatTransTable, ObIx, RawCategory,
    StrictMonoidalCategory,
};
use crate::graded::{Grading, GradedComonadOps, GradedMonadOps, TableGradedMonad};
use crate::indexed::{IndexedComonadOps, IndexedMonadOps, MonadOps, TableIndexedMonad, TableMonad};
use crate::setcat::{ElemShape, El, FinSet, SetFn};
use crate::statemonads::StateIndexedMonad;

/// The terminal category: one object, one morphism.
pub fn terminal_category() -> Arc<FiniteCategory> {
    let mut raw = RawCategory::new("1");
    raw.objects.push("*".into());
    raw.morphisms.push(("id".into(), "*".into(), "*".into()));
    raw.identities.insert("*".into(), "id".into());
    raw.comp.push(("id".into(), "id".into(), "id".into()));
    Arc::new(raw.validate().expect("terminal category"))
}

/// The walking arrow: objects `a -> b`.
pub fn walking_arrow() -> Arc<FiniteCategory> {
    let mut raw = RawCategory::new("2");
    raw.objects = vec!["a".into(), "b".into()];
    raw.morphisms = vec![
        ("id_a".into(), "a".into(), "a".into()),
        ("id_b".into(), "b".into(), "b".into()),
        ("u".into(), "a".into(), "b".into()),
    ];
    raw.identities.insert("a".into(), "id_a".into());
    raw.identities.insert("b".into(), "id_b".into());
    raw.comp = vec![
        ("id_a".into(), "id_a".into(), "id_a".into()),
        ("id_b".into(), "id_b".into(), "id_b".into()),
        ("u".into(), "id_a".into(), "u".into()),
        ("id_b".into(), "u".into(), "u".into()),
    ];
    Arc::new(raw.validate().expect("walking arrow"))
}

/// The two-element group as a one-object category: morphisms `e`, `s` with
/// `s∘s = e`.
pub fn z2_monoid_category() -> Arc<FiniteCategory> {
    let mut raw = RawCategory::new("Z2");
    raw.objects.push("*".into());
    raw.morphisms = vec![
        ("e".into(), "*".into(), "*".into()),
        ("s".into(), "*".into(), "*".into()),
    ];
    raw.identities.insert("*".into(), "e".into());
    raw.comp = vec![
        ("e".into(), "e".into(), "e".into()),
        ("e".into(), "s".into(), "s".into()),
        ("s".into(), "e".into(), "s".into()),
        ("s".into(), "s".into(), "e".into()),
    ];
    Arc::new(raw.validate().expect("Z2 as a category"))
}

/// The full category of finite sets on the listed `(name, size)` objects:
/// every function appears as a morphism `"{src}{tgt}[digits]"`.
pub fn finset_category(name: &str, sets: &[(&str, usize)]) -> Arc<FiniteCategory> {
    let mut raw = RawCategory::new(name);
    for (n, _) in sets {
        raw.objects.push((*n).to_string());
    }
    let id_of = |src: usize, tgt: usize, table: &[usize]| {
        let digits: Vec<String> = table.iter().map(|d| d.to_string()).collect();
        format!("{}{}[{}]", sets[src].0, sets[tgt].0, digits.join(""))
    };
    let mut tables: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (si, &(_, ssz)) in sets.iter().enumerate() {
        for (ti, &(_, tsz)) in sets.iter().enumerate() {
            let mut table = vec![0usize; ssz];
            if ssz == 0 {
                raw.morphisms.push((
                    id_of(si, ti, &table),
                    sets[si].0.to_string(),
                    sets[ti].0.to_string(),
                ));
                tables.push((si, ti, table));
                continue;
            }
            if tsz == 0 {
                continue;
            }
            loop {
                raw.morphisms.push((
                    id_of(si, ti, &table),
                    sets[si].0.to_string(),
                    sets[ti].0.to_string(),
                ));
                tables.push((si, ti, table.clone()));
                let mut k = 0;
                loop {
                    if k == ssz {
                        break;
                    }
                    table[k] += 1;
                    if table[k] < tsz {
                        break;
                    }
                    table[k] = 0;
                    k += 1;
                }
                if table.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    for (si, &(_, ssz)) in sets.iter().enumerate() {
        let idt: Vec<usize> = (0..ssz).collect();
        raw.identities
            .insert(sets[si].0.to_string(), id_of(si, si, &idt));
    }
    for (fi, (fs, ft, ftab)) in tables.iter().enumerate() {
        for (gi, (gs, gt, gtab)) in tables.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let comp: Vec<usize> = ftab.iter().map(|&k| gtab[k]).collect();
            raw.comp.push((
                raw.morphisms[gi].0.clone(),
                raw.morphisms[fi].0.clone(),
                id_of(*fs, *gt, &comp),
            ));
        }
    }
    Arc::new(raw.validate().expect("finite-set category"))
}

/// Two-object finite-set category: a one-point set `U` and a two-point set
/// `W`, with all eight functions.
pub fn finmini() -> Arc<FiniteCategory> {
    finset_category("finmini", &[("U", 1), ("W", 2)])
}

/// The terminal monoidal category.
pub fn terminal_grading() -> Grading {
    let base = terminal_category();
    let mut ob = BTreeMap::new();
    ob.insert((0, 0), 0);
    let mut mo = BTreeMap::new();
    mo.insert((0, 0), 0);
    Grading::Total(Arc::new(
        StrictMonoidalCategory::new(base, ob, mo, 0).expect("terminal grading"),
    ))
}

/// Discrete two-object grading `({g0, g1}, + mod 2, g0)`.
pub fn z2_grading() -> Grading {
    let mut raw = RawCategory::new("Z2-discrete");
    raw.objects = vec!["g0".into(), "g1".into()];
    raw.morphisms = vec![
        ("id_g0".into(), "g0".into(), "g0".into()),
        ("id_g1".into(), "g1".into(), "g1".into()),
    ];
    raw.identities.insert("g0".into(), "id_g0".into());
    raw.identities.insert("g1".into(), "id_g1".into());
    raw.comp = vec![
        ("id_g0".into(), "id_g0".into(), "id_g0".into()),
        ("id_g1".into(), "id_g1".into(), "id_g1".into()),
    ];
    let base = Arc::new(raw.validate().expect("discrete Z/2"));
    let mut ob = BTreeMap::new();
    let mut mo = BTreeMap::new();
    for a in 0..2usize {
        for b in 0..2usize {
            ob.insert((a, b), (a + b) % 2);
            mo.insert((a, b), (a + b) % 2); // identity of the sum
        }
    }
    Grading::Total(Arc::new(
        StrictMonoidalCategory::new(base, ob, mo, 0).expect("Z/2 grading"),
    ))
}

fn poset_two(name: &str, up: bool) -> Arc<FiniteCategory> {
    let mut raw = RawCategory::new(name);
    raw.objects = vec!["o0".into(), "o1".into()];
    raw.morphisms = vec![
        ("id_o0".into(), "o0".into(), "o0".into()),
        ("id_o1".into(), "o1".into(), "o1".into()),
    ];
    if up {
        raw.morphisms
            .push(("le01".into(), "o0".into(), "o1".into()));
    } else {
        raw.morphisms
            .push(("ge10".into(), "o1".into(), "o0".into()));
    }
    raw.identities.insert("o0".into(), "id_o0".into());
    raw.identities.insert("o1".into(), "id_o1".into());
    raw.comp = vec![
        ("id_o0".into(), "id_o0".into(), "id_o0".into()),
        ("id_o1".into(), "id_o1".into(), "id_o1".into()),
    ];
    if up {
        raw.comp
            .push(("le01".into(), "id_o0".into(), "le01".into()));
        raw.comp
            .push(("id_o1".into(), "le01".into(), "le01".into()));
    } else {
        raw.comp
            .push(("ge10".into(), "id_o1".into(), "ge10".into()));
        raw.comp
            .push(("id_o0".into(), "ge10".into(), "ge10".into()));
    }
    Arc::new(raw.validate().expect("two-point poset"))
}

type TensorTables = (BTreeMap<(ObIx, ObIx), ObIx>, BTreeMap<(MorIx, MorIx), MorIx>);

fn max_tensor(base: &Arc<FiniteCategory>) -> TensorTables {
    // Objects are `o0`, `o1`; tensor is max on indices. On morphisms the
    // poset has at most one arrow per endpoint pair, so the tensor is the
    // unique arrow between the max-ed endpoints.
    let mut ob = BTreeMap::new();
    for a in base.objects() {
        for b in base.objects() {
            ob.insert((a, b), a.max(b));
        }
    }
    let mut mo = BTreeMap::new();
    for f in base.morphisms() {
        for g in base.morphisms() {
            let s = base.src(f).max(base.src(g));
            let t = base.tgt(f).max(base.tgt(g));
            let hom = base.hom(s, t);
            assert_eq!(hom.len(), 1, "poset tensor needs a unique arrow");
            mo.insert((f, g), hom[0]);
        }
    }
    (ob, mo)
}

/// The poset `{0 <= 1}` with tensor `max` and unit `0`.
pub fn m2_grading() -> Grading {
    let base = poset_two("M2", true);
    let (ob, mo) = max_tensor(&base);
    Grading::Total(Arc::new(
        StrictMonoidalCategory::new(base, ob, mo, 0).expect("M2 grading"),
    ))
}

/// The opposite poset `{1 -> 0}` with tensor `max` and unit `0`
/// (the grading of the product comonad).
pub fn m2_op_grading() -> Grading {
    let base = poset_two("M2op", false);
    let (ob, mo) = max_tensor(&base);
    Grading::Total(Arc::new(
        StrictMonoidalCategory::new(base, ob, mo, 0).expect("M2op grading"),
    ))
}

/// Discrete `{0, 1}` with tensor `max` and unit `0`: the morphism-free
/// restriction of [`m2_grading`].
pub fn m2_discrete_grading() -> Grading {
    let mut raw = RawCategory::new("M2-discrete");
    raw.objects = vec!["o0".into(), "o1".into()];
    raw.morphisms = vec![
        ("id_o0".into(), "o0".into(), "o0".into()),
        ("id_o1".into(), "o1".into(), "o1".into()),
    ];
    raw.identities.insert("o0".into(), "id_o0".into());
    raw.identities.insert("o1".into(), "id_o1".into());
    raw.comp = vec![
        ("id_o0".into(), "id_o0".into(), "id_o0".into()),
        ("id_o1".into(), "id_o1".into(), "id_o1".into()),
    ];
    let base = Arc::new(raw.validate().expect("discrete M2"));
    let mut ob = BTreeMap::new();
    let mut mo = BTreeMap::new();
    for a in 0..2usize {
        for b in 0..2usize {
            ob.insert((a, b), a.max(b));
            mo.insert((a, b), a.max(b));
        }
    }
    Grading::Total(Arc::new(
        StrictMonoidalCategory::new(base, ob, mo, 0).expect("discrete max grading"),
    ))
}

/// The poset `{0 <= 1}` with `⊗ = max` but unit `1`: fails unitality
/// (`max(1, 0) = 1 ≠ 0` at the object `o0`).
pub fn m2_grading_bad_unit() -> Grading {
    let base = poset_two("M2-bad-unit", true);
    let (ob, mo) = max_tensor(&base);
    Grading::Total(Arc::new(
        StrictMonoidalCategory::new(base, ob, mo, 1).expect("tables are total"),
    ))
}

/// Grading-action monad: base `C` is the discrete Z/2 grading category
/// itself and `T_m = m ⊗ (-)`, with all structure maps identities. The
/// functors are nontrivial (grade `g1` swaps the two objects).
pub fn z2_action_monad() -> TableGradedMonad {
    let grading = z2_grading();
    let base = grading.base().clone();
    let m = match &grading {
        Grading::Total(m) => m.clone(),
        _ => unreachable!(),
    };
    let t: Vec<FunctorTable> = base
        .objects()
        .map(|g| FunctorTable {
            src: base.clone(),
            dst: base.clone(),
            ob_map: base.objects().map(|c| m.ob(g, c)).collect(),
            mor_map: base
                .morphisms()
                .map(|f| m.mor(base.identity(g), f))
                .collect(),
        })
        .collect();
    let tu: Vec<NatTransTable> = base
        .morphisms()
        .map(|u| NatTransTable::identity(&t[base.src(u)]))
        .collect();
    let eta = NatTransTable::identity(&t[0]);
    let mut mu = BTreeMap::new();
    for g in base.objects() {
        for h in base.objects() {
            let gh = m.ob(g, h);
            mu.insert(
                (g, h),
                NatTransTable {
                    dom: t[g].after(&t[h]),
                    cod: t[gh].clone(),
                    components: base
                        .objects()
                        .map(|c| base.identity(t[g].ob(t[h].ob(c))))
                        .collect(),
                },
            );
        }
    }
    TableGradedMonad::new("z2-action", grading, base, t, tu, eta, mu)
}

/// A graded monad over the poset grading `M2` on the `finmini` base:
/// `T_0 = Id` and `T_1` collapses everything to the one-point set, with the
/// unique structure maps. Its Kleisli category has a nontrivial coend
/// quotient.
pub fn m2_collapse_monad() -> TableGradedMonad {
    let grading = m2_grading();
    let base = finmini();
    let u_ob = base.object_by_id("U").unwrap();
    let to_u = |x: ObIx| -> MorIx {
        let hom = base.hom(x, u_ob);
        hom[0]
    };
    let idf = FunctorTable::identity(&base);
    let collapse = FunctorTable {
        src: base.clone(),
        dst: base.clone(),
        ob_map: base.objects().map(|_| u_ob).collect(),
        mor_map: base.morphisms().map(|_| base.identity(u_ob)).collect(),
    };
    let t = vec![idf.clone(), collapse.clone()];
    let m_cat = grading.base().clone();
    let le01 = m_cat.morphism_by_id("le01").unwrap();
    let mut tu = Vec::new();
    for u in m_cat.morphisms() {
        if u == le01 {
            tu.push(NatTransTable {
                dom: idf.clone(),
                cod: collapse.clone(),
                components: base.objects().map(to_u).collect(),
            });
        } else {
            tu.push(NatTransTable::identity(&t[m_cat.src(u)]));
        }
    }
    let eta = NatTransTable::identity(&idf);
    let mut mu = BTreeMap::new();
    for g in 0..2usize {
        for h in 0..2usize {
            let gh = g.max(h);
            mu.insert(
                (g, h),
                NatTransTable {
                    dom: t[g].after(&t[h]),
                    cod: t[gh].clone(),
                    components: base
                        .objects()
                        .map(|c| base.identity(t[g].ob(t[h].ob(c))))
                        .collect(),
                },
            );
        }
    }
    TableGradedMonad::new("m2-collapse", grading, base, t, tu, eta, mu)
}

/// The monad `(Id, η = s, μ = s)` on the Z/2 one-object category. Its
/// Eilenberg–Moore category has a single algebra with two endomorphisms.
pub fn z2_flip_monad() -> TableMonad {
    let base = z2_monoid_category();
    let idf = FunctorTable::identity(&base);
    let s = base.morphism_by_id("s").unwrap();
    let eta = NatTransTable {
        dom: idf.clone(),
        cod: idf.clone(),
        components: vec![s],
    };
    let mu = eta.clone();
    TableMonad::new("z2-flip", base, idf, eta, mu)
}

/// The terminal monad on `finmini`: `T = const U`.
pub fn terminal_monad_on_finmini() -> TableMonad {
    let base = finmini();
    let u_ob = base.object_by_id("U").unwrap();
    let t = FunctorTable {
        src: base.clone(),
        dst: base.clone(),
        ob_map: base.objects().map(|_| u_ob).collect(),
        mor_map: base.morphisms().map(|_| base.identity(u_ob)).collect(),
    };
    let eta = NatTransTable {
        dom: FunctorTable::identity(&base),
        cod: t.clone(),
        components: base.objects().map(|x| base.hom(x, u_ob)[0]).collect(),
    };
    let mu = NatTransTable {
        dom: t.clone(),
        cod: t.clone(),
        components: base.objects().map(|_| base.identity(u_ob)).collect(),
    };
    TableMonad::new("terminal", base, t, eta, mu)
}

/// Constant indexed family over the walking arrow at the Z/2 flip monad.
pub fn constant_flip_family() -> TableIndexedMonad {
    TableIndexedMonad::constant_family(walking_arrow(), &z2_flip_monad())
}

/// Variants of the exception monad used for mutation sensitivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcVariant {
    Standard,
    /// `μ_{1,1}` permutes the two exception points coming from the inner
    /// copy instead of merging them pointwise; caught by GM6.
    MuInnerSwap,
    /// `μ_{0,m}` post-composed with an exception swap; caught by GM4.
    MuUnitLeftTwist,
    /// `μ_{m,0}` post-composed with an exception swap; caught by GM5.
    MuUnitRightTwist,
}

/// The graded exception monad on computed finite sets: `T_0 = Id`,
/// `T_1 = (-) + E`, graded by `max` on `{0, 1}`.
pub struct ExceptionGradedMonad {
    pub exceptions: Vec<String>,
    pub grading: Grading,
    pub variant: ExcVariant,
    backend: SetBackend,
}

impl ExceptionGradedMonad {
    /// `poset` chooses between the poset grading (with `T_{0<=1}` the left
    /// injection) and its discrete restriction.
    pub fn new(exceptions: Vec<String>, probe_max: usize, poset: bool, variant: ExcVariant) -> Self {
        ExceptionGradedMonad {
            exceptions,
            grading: if poset { m2_grading() } else { m2_discrete_grading() },
            variant,
            backend: SetBackend::numbered_probes(probe_max),
        }
    }

    fn sum(&self, x: &FinSet) -> FinSet {
        FinSet {
            label: format!("({}+E)", x.label),
            size: x.size + self.exceptions.len() as u128,
            shape: ElemShape::Sum {
                inner: Box::new(x.clone()),
                extra: self.exceptions.clone(),
            },
        }
    }

    /// Swap of the first two exception points of `T_1 X`.
    fn exc_swap(&self, x: &FinSet) -> SetFn {
        let t1 = self.sum(x);
        let n = x.size as El;
        SetFn::rule(t1.clone(), t1, move |e| {
            if e == n {
                n + 1
            } else if e == n + 1 {
                n
            } else {
                e
            }
        })
    }
}

impl GradedMonadOps for ExceptionGradedMonad {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        &self.backend
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn t_ob(&self, m: ObIx, x: &FinSet) -> FinSet {
        if m == 0 {
            x.clone()
        } else {
            self.sum(x)
        }
    }
    fn t_mor(&self, m: ObIx, f: &SetFn) -> SetFn {
        if m == 0 {
            return f.clone();
        }
        let dom = self.sum(&f.dom);
        let cod = self.sum(&f.cod);
        let split = f.dom.size as El;
        let shift = f.cod.size as El;
        let f = f.clone();
        SetFn::rule(dom, cod, move |e| {
            if e < split {
                f.apply(e)
            } else {
                shift + (e - split)
            }
        })
    }
    fn t_u(&self, u: MorIx, x: &FinSet) -> SetFn {
        let m_cat = self.grading.base();
        let (s, t) = (m_cat.src(u), m_cat.tgt(u));
        match (s, t) {
            (0, 1) => {
                // Left injection X -> X + E.
                SetFn::rule(x.clone(), self.sum(x), |e| e)
            }
            _ => SetFn::identity(&self.t_ob(s, x)),
        }
    }
    fn eta(&self, x: &FinSet) -> SetFn {
        SetFn::identity(x)
    }
    fn mu(&self, m: ObIx, n: ObIx, x: &FinSet) -> SetFn {
        let base = match (m, n) {
            (0, 0) => SetFn::identity(x),
            (0, 1) | (1, 0) => SetFn::identity(&self.sum(x)),
            (1, 1) => {
                // Codiagonal on the two exception copies:
                // inner x ↦ x, inner e_k ↦ e_k, outer e_k ↦ e_k.
                let t1 = self.sum(x);
                let dom = self.sum(&t1);
                let cut = t1.size as El;
                let xs = x.size as El;
                SetFn::rule(dom, t1, move |e| if e < cut { e } else { xs + (e - cut) })
            }
            _ => unreachable!("grading has two objects"),
        };
        match self.variant {
            ExcVariant::Standard => base,
            ExcVariant::MuInnerSwap if (m, n) == (1, 1) => {
                // Permute the inner exception copy before merging.
                let inner_swap = self.t_mor(1, &self.exc_swap(x));
                SetFn::compose(&base, &inner_swap)
            }
            ExcVariant::MuUnitLeftTwist if (m, n) == (0, 1) => {
                SetFn::compose(&self.exc_swap(x), &base)
            }
            ExcVariant::MuUnitRightTwist if (m, n) == (1, 0) => {
                SetFn::compose(&self.exc_swap(x), &base)
            }
            _ => base,
        }
    }
}

/// The ordinary exception monad `X ↦ X + E` on computed finite sets.
pub struct ExceptionMonad {
    pub exceptions: Vec<String>,
    backend: SetBackend,
}

impl ExceptionMonad {
    pub fn new(exceptions: Vec<String>, probe_max: usize) -> Self {
        ExceptionMonad {
            exceptions,
            backend: SetBackend::numbered_probes(probe_max),
        }
    }

    pub fn with_probes(exceptions: Vec<String>, probes: Vec<FinSet>) -> Self {
        ExceptionMonad {
            exceptions,
            backend: SetBackend::new(probes),
        }
    }

    fn sum(&self, x: &FinSet) -> FinSet {
        FinSet {
            label: format!("({}+E)", x.label),
            size: x.size + self.exceptions.len() as u128,
            shape: ElemShape::Sum {
                inner: Box::new(x.clone()),
                extra: self.exceptions.clone(),
            },
        }
    }
}

impl MonadOps for ExceptionMonad {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        &self.backend
    }
    fn t_ob(&self, x: &FinSet) -> FinSet {
        self.sum(x)
    }
    fn t_mor(&self, f: &SetFn) -> SetFn {
        let dom = self.sum(&f.dom);
        let cod = self.sum(&f.cod);
        let split = f.dom.size as El;
        let shift = f.cod.size as El;
        let f = f.clone();
        SetFn::rule(dom, cod, move |e| {
            if e < split {
                f.apply(e)
            } else {
                shift + (e - split)
            }
        })
    }
    fn eta(&self, x: &FinSet) -> SetFn {
        SetFn::rule(x.clone(), self.sum(x), |e| e)
    }
    fn mu(&self, x: &FinSet) -> SetFn {
        let t1 = self.sum(x);
        let dom = self.sum(&t1);
        let cut = t1.size as El;
        let xs = x.size as El;
        SetFn::rule(dom, t1, move |e| if e < cut { e } else { xs + (e - cut) })
    }
}

/// Mutation variants for the product comonad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProdVariant {
    Standard,
    /// `δ_{0,1}` twisted by an environment swap; caught by GC4.
    DeltaUnitTwist,
}

/// The graded product comonad on computed finite sets: `S_0 = Id`,
/// `S_1 = (-) x E`, graded by `max` on the opposite two-point poset.
pub struct ProductGradedComonad {
    pub env: Vec<String>,
    pub grading: Grading,
    pub variant: ProdVariant,
    backend: SetBackend,
}

impl ProductGradedComonad {
    pub fn new(env: Vec<String>, probe_max: usize, variant: ProdVariant) -> Self {
        ProductGradedComonad {
            env,
            grading: m2_op_grading(),
            variant,
            backend: SetBackend::numbered_probes(probe_max),
        }
    }

    fn pair(&self, x: &FinSet) -> FinSet {
        FinSet {
            label: format!("({}xE)", x.label),
            size: x.size * self.env.len() as u128,
            shape: ElemShape::Pair {
                inner: Box::new(x.clone()),
                extra: self.env.clone(),
            },
        }
    }

    fn k(&self) -> El {
        self.env.len() as El
    }
}

impl GradedComonadOps for ProductGradedComonad {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        &self.backend
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn s_ob(&self, m: ObIx, x: &FinSet) -> FinSet {
        if m == 0 {
            x.clone()
        } else {
            self.pair(x)
        }
    }
    fn s_mor(&self, m: ObIx, f: &SetFn) -> SetFn {
        if m == 0 {
            return f.clone();
        }
        let dom = self.pair(&f.dom);
        let cod = self.pair(&f.cod);
        let k = self.k();
        let f = f.clone();
        SetFn::rule(dom, cod, move |e| f.apply(e / k) * k + (e % k))
    }
    fn s_u(&self, u: MorIx, x: &FinSet) -> SetFn {
        let m_cat = self.grading.base();
        let (s, t) = (m_cat.src(u), m_cat.tgt(u));
        match (s, t) {
            (1, 0) => {
                // Projection X x E -> X.
                let k = self.k();
                SetFn::rule(self.pair(x), x.clone(), move |e| e / k)
            }
            _ => SetFn::identity(&self.s_ob(s, x)),
        }
    }
    fn counit(&self, x: &FinSet) -> SetFn {
        SetFn::identity(x)
    }
    fn delta(&self, m: ObIx, n: ObIx, x: &FinSet) -> SetFn {
        let k = self.k();
        let base = match (m, n) {
            (0, 0) => SetFn::identity(x),
            (0, 1) | (1, 0) => SetFn::identity(&self.pair(x)),
            (1, 1) => {
                // Duplicate the environment: (x, e) ↦ ((x, e), e).
                let s1 = self.pair(x);
                let cod = self.pair(&s1);
                SetFn::rule(s1.clone(), cod, move |e| e * k + (e % k))
            }
            _ => unreachable!("grading has two objects"),
        };
        match self.variant {
            ProdVariant::Standard => base,
            ProdVariant::DeltaUnitTwist if (m, n) == (0, 1) && self.env.len() >= 2 => {
                let s1 = self.pair(x);
                let twist = SetFn::rule(s1.clone(), s1, move |e| {
                    let (q, r) = (e / k, e % k);
                    let r2 = match r {
                        0 => 1,
                        1 => 0,
                        other => other,
                    };
                    q * k + r2
                });
                SetFn::compose(&twist, &base)
            }
            _ => base,
        }
    }
}

/// Mutation variants for the constant indexed product comonad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexedProdVariant {
    Standard,
    /// `δ_b` duplicates a twisted inner environment; caught by IC5.
    DeltaInnerTwist(ObIx),
}

/// A constant indexed comonad over the walking arrow: every `S_b` is the
/// product comonad `(-) x E`, every `S_u` the identity.
pub struct ProductIndexedComonad {
    pub env: Vec<String>,
    pub index: Arc<FiniteCategory>,
    pub variant: IndexedProdVariant,
    backend: SetBackend,
}

impl ProductIndexedComonad {
    pub fn new(env: Vec<String>, probe_max: usize, variant: IndexedProdVariant) -> Self {
        ProductIndexedComonad {
            env,
            index: walking_arrow(),
            variant,
            backend: SetBackend::numbered_probes(probe_max),
        }
    }

    fn pair(&self, x: &FinSet) -> FinSet {
        FinSet {
            label: format!("({}xE)", x.label),
            size: x.size * self.env.len() as u128,
            shape: ElemShape::Pair {
                inner: Box::new(x.clone()),
                extra: self.env.clone(),
            },
        }
    }

    fn k(&self) -> El {
        self.env.len() as El
    }
}

impl IndexedComonadOps for ProductIndexedComonad {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        &self.backend
    }
    fn index(&self) -> &Arc<FiniteCategory> {
        &self.index
    }
    fn s_ob(&self, _b: ObIx, x: &FinSet) -> FinSet {
        self.pair(x)
    }
    fn s_mor(&self, _b: ObIx, f: &SetFn) -> SetFn {
        let dom = self.pair(&f.dom);
        let cod = self.pair(&f.cod);
        let k = self.k();
        let f = f.clone();
        SetFn::rule(dom, cod, move |e| f.apply(e / k) * k + (e % k))
    }
    fn s_u(&self, u: MorIx, x: &FinSet) -> SetFn {
        let _ = u;
        SetFn::identity(&self.pair(x))
    }
    fn counit(&self, _b: ObIx, x: &FinSet) -> SetFn {
        let k = self.k();
        SetFn::rule(self.pair(x), x.clone(), move |e| e / k)
    }
    fn delta(&self, b: ObIx, x: &FinSet) -> SetFn {
        let k = self.k();
        let s1 = self.pair(x);
        let cod = self.pair(&s1);
        let base = SetFn::rule(s1.clone(), cod.clone(), move |e| e * k + (e % k));
        match self.variant {
            IndexedProdVariant::DeltaInnerTwist(at) if at == b && self.env.len() >= 2 => {
                SetFn::rule(s1, cod, move |e| {
                    let (q, r) = (e / k, e % k);
                    let r2 = match r {
                        0 => 1,
                        1 => 0,
                        other => other,
                    };
                    // Twist the inner copy only: ((x, swap e), e).
                    (q * k + r2) * k + r
                })
            }
            _ => base,
        }
    }
}

/// Mutation variants for the indexed state monad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateTwist {
    /// `η_b` negates the store transform at one index; caught by IM3.
    EtaNegateTau(ObIx),
    /// `μ_b` post-composed with a store-transform negation; caught by IM5.
    MuNegateTau(ObIx),
    /// `μ_b` reads the continuation at the untransformed store; caught by
    /// IM7 while IM5/IM6 still pass.
    MuUntransformedXi(ObIx),
}

/// The indexed state monad with one operation twisted.
pub struct TwistedIndexedState {
    pub inner: StateIndexedMonad,
    pub twist: StateTwist,
}

impl TwistedIndexedState {
    pub fn new(inner: StateIndexedMonad, twist: StateTwist) -> Self {
        TwistedIndexedState { inner, twist }
    }

    /// The involution of `T_b X` reversing every digit of the stored
    /// transform's output store.
    fn negate_tau(&self, b: ObIx, x: &FinSet) -> SetFn {
        let t = self.inner.t_set(b, x);
        let coder = crate::setcat::StateCoder::new(self.inner.value_count(), b, x.size);
        SetFn::rule(t.clone(), t, move |e| {
            let (tau, xi) = coder.decode(e);
            let stores = coder.store_count;
            let tau2: Vec<El> = tau.iter().map(|&s| (stores - 1) - s).collect();
            coder.encode(&tau2, &xi)
        })
    }
}

impl IndexedMonadOps for TwistedIndexedState {
    type B = SetBackend;

    fn backend(&self) -> &SetBackend {
        self.inner.backend()
    }
    fn index(&self) -> &Arc<FiniteCategory> {
        self.inner.index()
    }
    fn t_ob(&self, b: ObIx, x: &FinSet) -> FinSet {
        self.inner.t_ob(b, x)
    }
    fn t_mor(&self, b: ObIx, f: &SetFn) -> SetFn {
        self.inner.t_mor(b, f)
    }
    fn t_u(&self, u: MorIx, x: &FinSet) -> SetFn {
        self.inner.t_u(u, x)
    }
    fn eta(&self, b: ObIx, x: &FinSet) -> SetFn {
        match self.twist {
            StateTwist::EtaNegateTau(at) if at == b && b > 0 => {
                SetFn::compose(&self.negate_tau(b, x), &self.inner.eta(b, x))
            }
            _ => self.inner.eta(b, x),
        }
    }
    fn mu(&self, b: ObIx, x: &FinSet) -> SetFn {
        match self.twist {
            StateTwist::MuNegateTau(at) if at == b && b > 0 => {
                SetFn::compose(&self.negate_tau(b, x), &self.inner.mu(b, x))
            }
            StateTwist::MuUntransformedXi(at) if at == b => {
                let base = self.inner.mu(b, x);
                let tm = self.inner.t_set(b, x);
                let values = self.inner.value_count();
                let outer = crate::setcat::StateCoder::new(values, b, tm.size);
                let inner_coder = crate::setcat::StateCoder::new(values, b, x.size);
                SetFn::rule(base.dom.clone(), base.cod.clone(), move |e| {
                    let (tau, kappa) = outer.decode(e);
                    let stores = inner_coder.store_count;
                    let mut tau2 = Vec::with_capacity(stores as usize);
                    let mut xi2 = Vec::with_capacity(stores as usize);
                    for v in 0..stores {
                        let (sigma_v, xi_v) = inner_coder.decode(kappa[v as usize]);
                        let tv = tau[v as usize];
                        tau2.push(sigma_v[tv as usize]);
                        // Wrong: reads the continuation value at `v`, not
                        // at the transformed store.
                        xi2.push(xi_v[v as usize]);
                    }
                    inner_coder.encode(&tau2, &xi2)
                })
            }
            _ => self.inner.mu(b, x),
        }
    }
    fn size_bound(&self) -> u128 {
        self.inner.size_bound()
    }
}

/// A micro adjunction with a broken triangle identity: the identity
/// adjunction on the Z/2 category with unit `s` but counit `e`.
pub fn broken_triangle_adjunction() -> crate::graded::AdjunctionData {
    let base = z2_monoid_category();
    let idf = FunctorTable::identity(&base);
    let s = base.morphism_by_id("s").unwrap();
    crate::graded::AdjunctionData {
        left: idf.clone(),
        right: idf.clone(),
        unit: NatTransTable {
            dom: idf.clone(),
            cod: idf.clone(),
            components: vec![s],
        },
        counit: NatTransTable::identity(&idf),
    }
}

/// Every tabulated graded monad in the zoo (used for round-trip properties).
pub fn table_zoo() -> Vec<TableGradedMonad> {
    vec![
        TableGradedMonad::identity_monad(terminal_grading(), walking_arrow()),
        TableGradedMonad::identity_monad(z2_grading(), finmini()),
        z2_action_monad(),
        m2_collapse_monad(),
    ]
}

/// `Result`-returning constructor for the shared exception labels.
pub fn default_exceptions() -> Vec<String> {
    vec!["e0".into(), "e1".into()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{check_graded_comonad, check_graded_monad, dualize_graded, dualize_graded_comonad, graded_monads_table_equal};
    use crate::indexed::{check_indexed_comonad, check_indexed_monad, check_monad};

    #[test]
    fn zoo_monads_pass_their_suites() {
        for gm in table_zoo() {
            let report = check_graded_monad(&gm);
            assert!(report.passed(), "{}:\n{report}", gm.name);
        }
        assert!(check_monad(&z2_flip_monad()).passed());
        assert!(check_monad(&terminal_monad_on_finmini()).passed());
        assert!(check_indexed_monad(&constant_flip_family()).passed());
    }

    #[test]
    fn exception_graded_monad_passes_and_breaks() {
        let good = ExceptionGradedMonad::new(default_exceptions(), 2, true, ExcVariant::Standard);
        let report = check_graded_monad(&good);
        assert!(report.passed(), "{report}");

        let bad = ExceptionGradedMonad::new(default_exceptions(), 2, false, ExcVariant::MuInnerSwap);
        let report = check_graded_monad(&bad);
        assert!(report.axiom_failed("GM6"), "{report}");
        for axiom in ["GM1", "GM2", "GM3", "GM4", "GM5"] {
            assert!(
                !report.axiom_failed(axiom),
                "{axiom} unexpectedly failed:\n{report}"
            );
        }
        // The witness carries a concrete element.
        let line = report
            .lines_for("GM6")
            .find(|l| l.status == crate::report::LawStatus::Fail)
            .unwrap();
        assert!(line.witness.contains_key("element"));
    }

    #[test]
    fn product_comonad_passes_and_breaks() {
        let good = ProductGradedComonad::new(default_exceptions(), 2, ProdVariant::Standard);
        let report = check_graded_comonad(&good);
        assert!(report.passed(), "{report}");

        let bad = ProductGradedComonad::new(default_exceptions(), 2, ProdVariant::DeltaUnitTwist);
        let report = check_graded_comonad(&bad);
        assert!(report.axiom_failed("GC4"), "{report}");
    }

    #[test]
    fn indexed_product_comonad_passes_and_breaks() {
        let good = ProductIndexedComonad::new(default_exceptions(), 2, IndexedProdVariant::Standard);
        assert!(check_indexed_comonad(&good).passed());
        let bad = ProductIndexedComonad::new(
            default_exceptions(),
            2,
            IndexedProdVariant::DeltaInnerTwist(0),
        );
        let report = check_indexed_comonad(&bad);
        assert!(report.axiom_failed("IC5"), "{report}");
    }

    #[test]
    fn dualize_round_trips_and_maps_witnesses() {
        for gm in table_zoo() {
            let gc = dualize_graded(&gm);
            assert!(check_graded_comonad(&gc).passed(), "{}", gm.name);
            let back = dualize_graded_comonad(&gc);
            assert!(graded_monads_table_equal(&gm, &back), "{}", gm.name);
        }
    }

    #[test]
    fn bad_unit_grading_fails_unitality() {
        let g = m2_grading_bad_unit();
        let report = match &g {
            Grading::Total(m) => crate::fincat::validate_monoidal(&**m),
            _ => unreachable!(),
        };
        assert!(report.axiom_failed("unitality on objects"));
        let line = report
            .lines_for("unitality on objects")
            .find(|l| l.status == crate::report::LawStatus::Fail)
            .unwrap();
        assert_eq!(line.witness["object"], "o0");
    }

    #[test]
    fn broken_triangle_detected() {
        let adj = broken_triangle_adjunction();
        let report = adj.validate();
        assert!(report.axiom_failed("triangle-left") || report.axiom_failed("triangle-right"));
    }
}
