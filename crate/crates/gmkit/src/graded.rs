//! Graded monads and comonads over a strict (possibly truncated) monoidal
//! grading category, their axiom suites, and the lax-action correspondence.
//!
//! The checkers are generic over [`Backend`], so the same GM1..GM6 / GC1..GC6
//! code runs over tabulated micro categories and over the computed
//! finite-set instances. Axiom instances whose tensors fall off a truncated
//! grid, or whose working sets exceed the size bound, are reported `skipped`,
//! never silently passed.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backend::{guard_size, Backend, TableBackend};
use crate::error::{GmError, Result};
use crate::fincat::{
    product_mor, product_ob, FiniteCategory, FunctorTable, Monoidal, MorIx, NatTransTable, ObIx,
    PartialMonoidalCategory, StrictMonoidalCategory,
};
use crate::report::{witness, LawReport, Witness};

/// Default ceiling on the element count of any set an axiom instance has to
/// enumerate.
pub const DEFAULT_SIZE_BOUND: u128 = 6_000_000;

/// The grading parameter `(M, ⊗, I)`: total, or truncated to a sub-grid.
#[derive(Debug, Clone)]
pub enum Grading {
    Total(Arc<StrictMonoidalCategory>),
    Truncated(Arc<PartialMonoidalCategory>),
}

impl Monoidal for Grading {
    fn base(&self) -> &Arc<FiniteCategory> {
        match self {
            Grading::Total(m) => m.base(),
            Grading::Truncated(m) => m.base(),
        }
    }
    fn unit(&self) -> ObIx {
        match self {
            Grading::Total(m) => m.unit(),
            Grading::Truncated(m) => m.unit(),
        }
    }
    fn tensor_ob(&self, a: ObIx, b: ObIx) -> Option<ObIx> {
        match self {
            Grading::Total(m) => m.tensor_ob(a, b),
            Grading::Truncated(m) => m.tensor_ob(a, b),
        }
    }
    fn tensor_mor(&self, f: MorIx, g: MorIx) -> Option<MorIx> {
        match self {
            Grading::Total(m) => m.tensor_mor(f, g),
            Grading::Truncated(m) => m.tensor_mor(f, g),
        }
    }
}

impl Grading {
    /// Constructions that need every tensor cell call this; a truncated
    /// grading is refused with an explicit error.
    pub fn require_total(&self) -> Result<&Arc<StrictMonoidalCategory>> {
        match self {
            Grading::Total(m) => Ok(m),
            Grading::Truncated(_) => Err(GmError::precondition(
                "total monoidal grading",
                "grading tensor is truncated to a partial grid",
            )),
        }
    }
}

/// The complete symbol set of a graded monad, accessed pointwise.
pub trait GradedMonadOps {
    type B: Backend;

    fn backend(&self) -> &Self::B;
    fn grading(&self) -> &Grading;
    /// `T_m` on objects.
    fn t_ob(&self, m: ObIx, x: &<Self::B as Backend>::Ob) -> <Self::B as Backend>::Ob;
    /// `T_m` on morphisms.
    fn t_mor(&self, m: ObIx, f: &<Self::B as Backend>::Mor) -> <Self::B as Backend>::Mor;
    /// Component of `T_u : T_m ⇒ T_{m'}` at `x`, for `u: m -> m'` in the
    /// grading.
    fn t_u(&self, u: MorIx, x: &<Self::B as Backend>::Ob) -> <Self::B as Backend>::Mor;
    /// Component of `η : Id ⇒ T_I` at `x`.
    fn eta(&self, x: &<Self::B as Backend>::Ob) -> <Self::B as Backend>::Mor;
    /// Component of `μ_{m,n} : T_m ∘ T_n ⇒ T_{m⊗n}` at `x`. Only called when
    /// `m⊗n` is on the grid.
    fn mu(&self, m: ObIx, n: ObIx, x: &<Self::B as Backend>::Ob)
        -> <Self::B as Backend>::Mor;

    fn size_bound(&self) -> u128 {
        DEFAULT_SIZE_BOUND
    }

    /// Uncurried action on a pair `(u: m -> m', f: x -> y)`: the diagonal of
    /// the naturality square of `T_u`.
    fn act(
        &self,
        u: MorIx,
        f: &<Self::B as Backend>::Mor,
    ) -> <Self::B as Backend>::Mor {
        let m = self.grading().base().src(u);
        let y = self.backend().tgt(f);
        self.backend()
            .compose(&self.t_u(u, &y), &self.t_mor(m, f))
    }
}

/// The complete symbol set of a graded comonad.
pub trait GradedComonadOps {
    type B: Backend;

    fn backend(&self) -> &Self::B;
    fn grading(&self) -> &Grading;
    fn s_ob(&self, m: ObIx, x: &<Self::B as Backend>::Ob) -> <Self::B as Backend>::Ob;
    fn s_mor(&self, m: ObIx, f: &<Self::B as Backend>::Mor) -> <Self::B as Backend>::Mor;
    fn s_u(&self, u: MorIx, x: &<Self::B as Backend>::Ob) -> <Self::B as Backend>::Mor;
    /// Component of `ε : S_I ⇒ Id` at `x`.
    fn counit(&self, x: &<Self::B as Backend>::Ob) -> <Self::B as Backend>::Mor;
    /// Component of `δ_{m,n} : S_{m⊗n} ⇒ S_m ∘ S_n` at `x`.
    fn delta(&self, m: ObIx, n: ObIx, x: &<Self::B as Backend>::Ob)
        -> <Self::B as Backend>::Mor;

    fn size_bound(&self) -> u128 {
        DEFAULT_SIZE_BOUND
    }
}

struct Ctx<'a, B: Backend> {
    backend: &'a B,
    bound: u128,
    report: LawReport,
}

impl<'a, B: Backend> Ctx<'a, B> {
    fn new(backend: &'a B, bound: u128) -> Self {
        Ctx {
            backend,
            bound,
            report: LawReport::new(),
        }
    }

    /// Compare two composites after size-guarding the listed objects.
    fn eq_check(
        &mut self,
        axiom: &str,
        w: Witness,
        guard: &[&B::Ob],
        lhs: impl FnOnce(&B) -> B::Mor,
        rhs: impl FnOnce(&B) -> B::Mor,
    ) {
        match guard_size(self.backend, guard, self.bound) {
            Err(skip) => {
                let mut w = w;
                w.extend(skip);
                self.report.skip(axiom, w);
            }
            Ok(()) => {
                let l = lhs(self.backend);
                let r = rhs(self.backend);
                self.report.check(axiom, w, self.backend.mismatch(&l, &r));
            }
        }
    }

    fn skip(&mut self, axiom: &str, mut w: Witness, reason: &str) {
        w.insert("skipped".into(), reason.into());
        self.report.skip(axiom, w);
    }
}

/// Check GM1..GM6 plus table well-typedness (functoriality of each `T_m`,
/// naturality of `T_u`, `η`, `μ` in the base) by pointwise enumeration.
pub fn check_graded_monad<G: GradedMonadOps>(gm: &G) -> LawReport {
    let backend = gm.backend();
    let grading = gm.grading();
    let m_cat = grading.base().clone();
    let mut ctx = Ctx::new(backend, gm.size_bound());
    let probes = backend.probe_objects();
    let probe_mors = backend.probe_morphisms();

    // Well-typedness of the symbol tables.
    for m in m_cat.objects() {
        for x in &probes {
            let tm_x = gm.t_ob(m, x);
            let w = witness([
                ("grade", m_cat.object_id(m).to_string()),
                ("object", backend.ob_label(x)),
            ]);
            ctx.eq_check(
                "T-functor-identity",
                w,
                &[&tm_x],
                |b| gm.t_mor(m, &b.identity(x)),
                |b| b.identity(&tm_x),
            );
        }
        for f in &probe_mors {
            for g in &probe_mors {
                if backend.src(g) != backend.tgt(f) {
                    continue;
                }
                let w = witness([
                    ("grade", m_cat.object_id(m).to_string()),
                    ("f", backend.mor_label(f)),
                    ("g", backend.mor_label(g)),
                ]);
                let dom = gm.t_ob(m, &backend.src(f));
                ctx.eq_check(
                    "T-functor-composition",
                    w,
                    &[&dom],
                    |b| gm.t_mor(m, &b.compose(g, f)),
                    |b| b.compose(&gm.t_mor(m, g), &gm.t_mor(m, f)),
                );
            }
        }
    }
    for u in m_cat.morphisms() {
        let (m, m2) = (m_cat.src(u), m_cat.tgt(u));
        for f in &probe_mors {
            let (x, y) = (backend.src(f), backend.tgt(f));
            let w = witness([
                ("u", m_cat.morphism_id(u).to_string()),
                ("f", backend.mor_label(f)),
            ]);
            let dom = gm.t_ob(m, &x);
            ctx.eq_check(
                "Tu-naturality",
                w,
                &[&dom],
                |b| b.compose(&gm.t_u(u, &y), &gm.t_mor(m, f)),
                |b| b.compose(&gm.t_mor(m2, f), &gm.t_u(u, &x)),
            );
        }
    }
    let unit = grading.unit();
    for f in &probe_mors {
        let (x, y) = (backend.src(f), backend.tgt(f));
        let w = witness([("f", backend.mor_label(f))]);
        ctx.eq_check(
            "eta-naturality",
            w,
            &[&x],
            |b| b.compose(&gm.eta(&y), f),
            |b| b.compose(&gm.t_mor(unit, f), &gm.eta(&x)),
        );
    }
    for m in m_cat.objects() {
        for n in m_cat.objects() {
            let Some(mn) = grading.tensor_ob(m, n) else {
                ctx.skip(
                    "mu-naturality",
                    witness([
                        ("m", m_cat.object_id(m).to_string()),
                        ("n", m_cat.object_id(n).to_string()),
                    ]),
                    "off-grid tensor",
                );
                continue;
            };
            for f in &probe_mors {
                let (x, y) = (backend.src(f), backend.tgt(f));
                let w = witness([
                    ("m", m_cat.object_id(m).to_string()),
                    ("n", m_cat.object_id(n).to_string()),
                    ("f", backend.mor_label(f)),
                ]);
                let dom = gm.t_ob(m, &gm.t_ob(n, &x));
                ctx.eq_check(
                    "mu-naturality",
                    w,
                    &[&dom],
                    |b| b.compose(&gm.mu(m, n, &y), &gm.t_mor(m, &gm.t_mor(n, f))),
                    |b| b.compose(&gm.t_mor(mn, f), &gm.mu(m, n, &x)),
                );
            }
        }
    }

    // GM1: T at identity grading morphisms is the identity.
    for m in m_cat.objects() {
        let id_m = m_cat.identity(m);
        for x in &probes {
            let tm_x = gm.t_ob(m, x);
            let w = witness([
                ("m", m_cat.object_id(m).to_string()),
                ("object", backend.ob_label(x)),
            ]);
            ctx.eq_check(
                "GM1",
                w,
                &[&tm_x],
                |_| gm.t_u(id_m, x),
                |b| b.identity(&tm_x),
            );
        }
    }
    // GM2: functoriality in the grading.
    for u in m_cat.morphisms() {
        for u2 in m_cat.morphisms() {
            if m_cat.src(u2) != m_cat.tgt(u) {
                continue;
            }
            let uu = m_cat.comp(u2, u);
            for x in &probes {
                let dom = gm.t_ob(m_cat.src(u), x);
                let w = witness([
                    ("u", m_cat.morphism_id(u).to_string()),
                    ("u'", m_cat.morphism_id(u2).to_string()),
                    ("object", backend.ob_label(x)),
                ]);
                ctx.eq_check(
                    "GM2",
                    w,
                    &[&dom],
                    |b| b.compose(&gm.t_u(u2, x), &gm.t_u(u, x)),
                    |_| gm.t_u(uu, x),
                );
            }
        }
    }
    // GM3: μ natural in the pair of grades.
    for u in m_cat.morphisms() {
        for v in m_cat.morphisms() {
            let (m, m2) = (m_cat.src(u), m_cat.tgt(u));
            let (n, n2) = (m_cat.src(v), m_cat.tgt(v));
            let w = witness([
                ("u", m_cat.morphism_id(u).to_string()),
                ("v", m_cat.morphism_id(v).to_string()),
            ]);
            let (mn, m2n2, uv) = match (
                grading.tensor_ob(m, n),
                grading.tensor_ob(m2, n2),
                grading.tensor_mor(u, v),
            ) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => {
                    ctx.skip("GM3", w, "off-grid tensor");
                    continue;
                }
            };
            let _ = (mn, m2n2);
            for x in &probes {
                let mut w = w.clone();
                w.insert("object".into(), backend.ob_label(x));
                let dom = gm.t_ob(m, &gm.t_ob(n, x));
                ctx.eq_check(
                    "GM3",
                    w,
                    &[&dom],
                    |b| {
                        // (T_u ∗ T_v)_x = T_{u, T_{n'}x} ∘ T_m(T_{v,x})
                        let horiz = b.compose(
                            &gm.t_u(u, &gm.t_ob(n2, x)),
                            &gm.t_mor(m, &gm.t_u(v, x)),
                        );
                        b.compose(&gm.mu(m2, n2, x), &horiz)
                    },
                    |b| b.compose(&gm.t_u(uv, x), &gm.mu(m, n, x)),
                );
            }
        }
    }
    // GM4 / GM5: unit triangles.
    for m in m_cat.objects() {
        for x in &probes {
            let tm_x = gm.t_ob(m, x);
            let w = witness([
                ("m", m_cat.object_id(m).to_string()),
                ("object", backend.ob_label(x)),
            ]);
            if grading.tensor_ob(unit, m).is_some() {
                ctx.eq_check(
                    "GM4",
                    w.clone(),
                    &[&tm_x],
                    |b| b.compose(&gm.mu(unit, m, x), &gm.eta(&tm_x)),
                    |b| b.identity(&tm_x),
                );
            } else {
                ctx.skip("GM4", w.clone(), "off-grid tensor");
            }
            if grading.tensor_ob(m, unit).is_some() {
                ctx.eq_check(
                    "GM5",
                    w,
                    &[&tm_x],
                    |b| b.compose(&gm.mu(m, unit, x), &gm.t_mor(m, &gm.eta(x))),
                    |b| b.identity(&tm_x),
                );
            } else {
                ctx.skip("GM5", w, "off-grid tensor");
            }
        }
    }
    // GM6: associativity square.
    for l in m_cat.objects() {
        for m in m_cat.objects() {
            for n in m_cat.objects() {
                let w = witness([
                    ("l", m_cat.object_id(l).to_string()),
                    ("m", m_cat.object_id(m).to_string()),
                    ("n", m_cat.object_id(n).to_string()),
                ]);
                let cells = (
                    grading.tensor_ob(m, n),
                    grading.tensor_ob(l, m),
                    grading
                        .tensor_ob(m, n)
                        .and_then(|mn| grading.tensor_ob(l, mn)),
                );
                let (Some(mn), Some(lm), Some(_lmn)) = cells else {
                    ctx.skip("GM6", w, "off-grid tensor");
                    continue;
                };
                for x in &probes {
                    let mut w = w.clone();
                    w.insert("object".into(), backend.ob_label(x));
                    let tn_x = gm.t_ob(n, x);
                    let dom = gm.t_ob(l, &gm.t_ob(m, &tn_x));
                    ctx.eq_check(
                        "GM6",
                        w,
                        &[&dom],
                        |b| b.compose(&gm.mu(l, mn, x), &gm.t_mor(l, &gm.mu(m, n, x))),
                        |b| b.compose(&gm.mu(lm, n, x), &gm.mu(l, m, &tn_x)),
                    );
                }
            }
        }
    }
    ctx.report
}

/// Check GC1..GC6, the mirror of [`check_graded_monad`].
pub fn check_graded_comonad<G: GradedComonadOps>(gc: &G) -> LawReport {
    let backend = gc.backend();
    let grading = gc.grading();
    let m_cat = grading.base().clone();
    let mut ctx = Ctx::new(backend, gc.size_bound());
    let probes = backend.probe_objects();
    let probe_mors = backend.probe_morphisms();
    let unit = grading.unit();

    for m in m_cat.objects() {
        for x in &probes {
            let sm_x = gc.s_ob(m, x);
            let w = witness([
                ("grade", m_cat.object_id(m).to_string()),
                ("object", backend.ob_label(x)),
            ]);
            ctx.eq_check(
                "S-functor-identity",
                w,
                &[&sm_x],
                |b| gc.s_mor(m, &b.identity(x)),
                |b| b.identity(&sm_x),
            );
        }
        for f in &probe_mors {
            for g in &probe_mors {
                if backend.src(g) != backend.tgt(f) {
                    continue;
                }
                let dom = gc.s_ob(m, &backend.src(f));
                let w = witness([
                    ("grade", m_cat.object_id(m).to_string()),
                    ("f", backend.mor_label(f)),
                    ("g", backend.mor_label(g)),
                ]);
                ctx.eq_check(
                    "S-functor-composition",
                    w,
                    &[&dom],
                    |b| gc.s_mor(m, &b.compose(g, f)),
                    |b| b.compose(&gc.s_mor(m, g), &gc.s_mor(m, f)),
                );
            }
        }
    }
    for u in m_cat.morphisms() {
        let (m, m2) = (m_cat.src(u), m_cat.tgt(u));
        for f in &probe_mors {
            let (x, y) = (backend.src(f), backend.tgt(f));
            let dom = gc.s_ob(m, &x);
            let w = witness([
                ("u", m_cat.morphism_id(u).to_string()),
                ("f", backend.mor_label(f)),
            ]);
            ctx.eq_check(
                "Su-naturality",
                w,
                &[&dom],
                |b| b.compose(&gc.s_u(u, &y), &gc.s_mor(m, f)),
                |b| b.compose(&gc.s_mor(m2, f), &gc.s_u(u, &x)),
            );
        }
    }
    for f in &probe_mors {
        let (x, y) = (backend.src(f), backend.tgt(f));
        let dom = gc.s_ob(unit, &x);
        let w = witness([("f", backend.mor_label(f))]);
        ctx.eq_check(
            "eps-naturality",
            w,
            &[&dom],
            |b| b.compose(f, &gc.counit(&x)),
            |b| b.compose(&gc.counit(&y), &gc.s_mor(unit, f)),
        );
    }
    for m in m_cat.objects() {
        for n in m_cat.objects() {
            let Some(mn) = grading.tensor_ob(m, n) else {
                ctx.skip(
                    "delta-naturality",
                    witness([
                        ("m", m_cat.object_id(m).to_string()),
                        ("n", m_cat.object_id(n).to_string()),
                    ]),
                    "off-grid tensor",
                );
                continue;
            };
            for f in &probe_mors {
                let (x, y) = (backend.src(f), backend.tgt(f));
                let dom = gc.s_ob(mn, &x);
                let w = witness([
                    ("m", m_cat.object_id(m).to_string()),
                    ("n", m_cat.object_id(n).to_string()),
                    ("f", backend.mor_label(f)),
                ]);
                ctx.eq_check(
                    "delta-naturality",
                    w,
                    &[&dom],
                    |b| b.compose(&gc.s_mor(m, &gc.s_mor(n, f)), &gc.delta(m, n, &x)),
                    |b| b.compose(&gc.delta(m, n, &y), &gc.s_mor(mn, f)),
                );
            }
        }
    }

    // GC1 / GC2: functoriality in the grading.
    for m in m_cat.objects() {
        let id_m = m_cat.identity(m);
        for x in &probes {
            let sm_x = gc.s_ob(m, x);
            let w = witness([
                ("m", m_cat.object_id(m).to_string()),
                ("object", backend.ob_label(x)),
            ]);
            ctx.eq_check(
                "GC1",
                w,
                &[&sm_x],
                |_| gc.s_u(id_m, x),
                |b| b.identity(&sm_x),
            );
        }
    }
    for u in m_cat.morphisms() {
        for u2 in m_cat.morphisms() {
            if m_cat.src(u2) != m_cat.tgt(u) {
                continue;
            }
            let uu = m_cat.comp(u2, u);
            for x in &probes {
                let dom = gc.s_ob(m_cat.src(u), x);
                let w = witness([
                    ("u", m_cat.morphism_id(u).to_string()),
                    ("u'", m_cat.morphism_id(u2).to_string()),
                    ("object", backend.ob_label(x)),
                ]);
                ctx.eq_check(
                    "GC2",
                    w,
                    &[&dom],
                    |b| b.compose(&gc.s_u(u2, x), &gc.s_u(u, x)),
                    |_| gc.s_u(uu, x),
                );
            }
        }
    }
    // GC3: δ natural in the pair of grades.
    for u in m_cat.morphisms() {
        for v in m_cat.morphisms() {
            let (m, m2) = (m_cat.src(u), m_cat.tgt(u));
            let (n, n2) = (m_cat.src(v), m_cat.tgt(v));
            let w = witness([
                ("u", m_cat.morphism_id(u).to_string()),
                ("v", m_cat.morphism_id(v).to_string()),
            ]);
            let uv = match (
                grading.tensor_ob(m, n),
                grading.tensor_ob(m2, n2),
                grading.tensor_mor(u, v),
            ) {
                (Some(_), Some(_), Some(c)) => c,
                _ => {
                    ctx.skip("GC3", w, "off-grid tensor");
                    continue;
                }
            };
            for x in &probes {
                let mut w = w.clone();
                w.insert("object".into(), backend.ob_label(x));
                let dom = gc.s_ob(grading.tensor_ob(m, n).unwrap(), x);
                ctx.eq_check(
                    "GC3",
                    w,
                    &[&dom],
                    |b| {
                        // (S_u ∗ S_v)_x ∘ δ_{m,n,x}
                        let horiz = b.compose(
                            &gc.s_u(u, &gc.s_ob(n2, x)),
                            &gc.s_mor(m, &gc.s_u(v, x)),
                        );
                        b.compose(&horiz, &gc.delta(m, n, x))
                    },
                    |b| b.compose(&gc.delta(m2, n2, x), &gc.s_u(uv, x)),
                );
            }
        }
    }
    // GC4 / GC5: counit triangles.
    for m in m_cat.objects() {
        for x in &probes {
            let sm_x = gc.s_ob(m, x);
            let w = witness([
                ("m", m_cat.object_id(m).to_string()),
                ("object", backend.ob_label(x)),
            ]);
            if grading.tensor_ob(unit, m).is_some() {
                ctx.eq_check(
                    "GC4",
                    w.clone(),
                    &[&sm_x],
                    |b| b.compose(&gc.counit(&sm_x), &gc.delta(unit, m, x)),
                    |b| b.identity(&sm_x),
                );
            } else {
                ctx.skip("GC4", w.clone(), "off-grid tensor");
            }
            if grading.tensor_ob(m, unit).is_some() {
                ctx.eq_check(
                    "GC5",
                    w,
                    &[&sm_x],
                    |b| b.compose(&gc.s_mor(m, &gc.counit(x)), &gc.delta(m, unit, x)),
                    |b| b.identity(&sm_x),
                );
            } else {
                ctx.skip("GC5", w, "off-grid tensor");
            }
        }
    }
    // GC6: coassociativity square.
    for l in m_cat.objects() {
        for m in m_cat.objects() {
            for n in m_cat.objects() {
                let w = witness([
                    ("l", m_cat.object_id(l).to_string()),
                    ("m", m_cat.object_id(m).to_string()),
                    ("n", m_cat.object_id(n).to_string()),
                ]);
                let (Some(mn), Some(lm), Some(lmn)) = (
                    grading.tensor_ob(m, n),
                    grading.tensor_ob(l, m),
                    grading
                        .tensor_ob(m, n)
                        .and_then(|mn| grading.tensor_ob(l, mn)),
                ) else {
                    ctx.skip("GC6", w, "off-grid tensor");
                    continue;
                };
                for x in &probes {
                    let mut w = w.clone();
                    w.insert("object".into(), backend.ob_label(x));
                    let dom = gc.s_ob(lmn, x);
                    let sn_x = gc.s_ob(n, x);
                    ctx.eq_check(
                        "GC6",
                        w,
                        &[&dom],
                        |b| b.compose(&gc.s_mor(l, &gc.delta(m, n, x)), &gc.delta(l, mn, x)),
                        |b| b.compose(&gc.delta(l, m, &sn_x), &gc.delta(lm, n, x)),
                    );
                }
            }
        }
    }
    ctx.report
}

/// A graded monad given by explicit tables over tabulated categories.
#[derive(Debug, Clone)]
pub struct TableGradedMonad {
    pub name: String,
    pub grading: Grading,
    pub base: Arc<FiniteCategory>,
    /// `T_m` per grading object.
    pub t: Vec<FunctorTable>,
    /// `T_u` per grading morphism.
    pub tu: Vec<NatTransTable>,
    /// `η : Id ⇒ T_I`.
    pub eta: NatTransTable,
    /// `μ_{m,n}` per defined tensor cell.
    pub mu: BTreeMap<(ObIx, ObIx), NatTransTable>,
    backend: TableBackend,
}

impl TableGradedMonad {
    pub fn new(
        name: impl Into<String>,
        grading: Grading,
        base: Arc<FiniteCategory>,
        t: Vec<FunctorTable>,
        tu: Vec<NatTransTable>,
        eta: NatTransTable,
        mu: BTreeMap<(ObIx, ObIx), NatTransTable>,
    ) -> Self {
        let backend = TableBackend::new(base.clone());
        TableGradedMonad {
            name: name.into(),
            grading,
            base,
            t,
            tu,
            eta,
            mu,
            backend,
        }
    }

    /// The identity graded monad over `base`, graded by `grading`:
    /// every `T_m` is the identity functor and all structure maps are
    /// identities.
    pub fn identity_monad(grading: Grading, base: Arc<FiniteCategory>) -> Self {
        let m_cat = grading.base().clone();
        let idf = FunctorTable::identity(&base);
        let t = vec![idf.clone(); m_cat.object_count()];
        let tu = m_cat
            .morphisms()
            .map(|_| NatTransTable::identity(&idf))
            .collect();
        let eta = NatTransTable::identity(&idf);
        let mut mu = BTreeMap::new();
        for m in m_cat.objects() {
            for n in m_cat.objects() {
                if grading.tensor_ob(m, n).is_some() {
                    mu.insert((m, n), NatTransTable::identity(&idf));
                }
            }
        }
        TableGradedMonad::new("identity", grading, base, t, tu, eta, mu)
    }

    /// Action on a morphism pair `(u, f)`, as a table lookup.
    pub fn act_table(&self, u: MorIx, f: MorIx) -> MorIx {
        let m = self.grading.base().src(u);
        self.base
            .comp(self.tu[u].at(self.base.tgt(f)), self.t[m].mor(f))
    }

    /// The lax action viewed uncurried: the functor `⋆ : M x C -> C`
    /// assembled from the `T_m`/`T_u` tables, validated. Requires a total
    /// grading.
    pub fn uncurried_action(&self) -> Result<FunctorTable> {
        let total = self.grading.require_total()?;
        let m_cat = total.base().clone();
        let c = &self.base;
        let product = Arc::new(crate::fincat::product_category(&m_cat, c)?);
        let table = FunctorTable {
            src: product,
            dst: c.clone(),
            ob_map: m_cat
                .objects()
                .flat_map(|g| c.objects().map(move |x| (g, x)))
                .map(|(g, x)| self.t[g].ob(x))
                .collect(),
            mor_map: m_cat
                .morphisms()
                .flat_map(|u| c.morphisms().map(move |f| (u, f)))
                .map(|(u, f)| self.act_table(u, f))
                .collect(),
        };
        let report = table.validate();
        if !report.passed() {
            return Err(GmError::invalid(
                "uncurried action",
                "the assembled functor table fails validation",
            ));
        }
        Ok(table)
    }

    /// Validate the shape of all tables (functors, naturality) in one go.
    pub fn validate_tables(&self) -> LawReport {
        let mut report = LawReport::new();
        for f in &self.t {
            report.merge(f.validate());
        }
        for nt in &self.tu {
            report.merge(nt.validate());
        }
        report.merge(self.eta.validate());
        for nt in self.mu.values() {
            report.merge(nt.validate());
        }
        report
    }
}

impl GradedMonadOps for TableGradedMonad {
    type B = TableBackend;

    fn backend(&self) -> &TableBackend {
        &self.backend
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn t_ob(&self, m: ObIx, x: &ObIx) -> ObIx {
        self.t[m].ob(*x)
    }
    fn t_mor(&self, m: ObIx, f: &MorIx) -> MorIx {
        self.t[m].mor(*f)
    }
    fn t_u(&self, u: MorIx, x: &ObIx) -> MorIx {
        self.tu[u].at(*x)
    }
    fn eta(&self, x: &ObIx) -> MorIx {
        self.eta.at(*x)
    }
    fn mu(&self, m: ObIx, n: ObIx, x: &ObIx) -> MorIx {
        self.mu[&(m, n)].at(*x)
    }
}

/// A graded comonad given by explicit tables.
#[derive(Debug, Clone)]
pub struct TableGradedComonad {
    pub name: String,
    pub grading: Grading,
    pub base: Arc<FiniteCategory>,
    pub s: Vec<FunctorTable>,
    pub su: Vec<NatTransTable>,
    pub eps: NatTransTable,
    pub delta: BTreeMap<(ObIx, ObIx), NatTransTable>,
    backend: TableBackend,
}

impl TableGradedComonad {
    pub fn new(
        name: impl Into<String>,
        grading: Grading,
        base: Arc<FiniteCategory>,
        s: Vec<FunctorTable>,
        su: Vec<NatTransTable>,
        eps: NatTransTable,
        delta: BTreeMap<(ObIx, ObIx), NatTransTable>,
    ) -> Self {
        let backend = TableBackend::new(base.clone());
        TableGradedComonad {
            name: name.into(),
            grading,
            base,
            s,
            su,
            eps,
            delta,
            backend,
        }
    }
}

impl GradedComonadOps for TableGradedComonad {
    type B = TableBackend;

    fn backend(&self) -> &TableBackend {
        &self.backend
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn s_ob(&self, m: ObIx, x: &ObIx) -> ObIx {
        self.s[m].ob(*x)
    }
    fn s_mor(&self, m: ObIx, f: &MorIx) -> MorIx {
        self.s[m].mor(*f)
    }
    fn s_u(&self, u: MorIx, x: &ObIx) -> MorIx {
        self.su[u].at(*x)
    }
    fn counit(&self, x: &ObIx) -> MorIx {
        self.eps.at(*x)
    }
    fn delta(&self, m: ObIx, n: ObIx, x: &ObIx) -> MorIx {
        self.delta[&(m, n)].at(*x)
    }
}

fn opposite_grading(grading: &Grading) -> Grading {
    let flip = |base: &Arc<FiniteCategory>,
                unit: ObIx,
                ob: BTreeMap<(ObIx, ObIx), ObIx>,
                mo: BTreeMap<(MorIx, MorIx), MorIx>| {
        let op = Arc::new(crate::fincat::opposite(base));
        PartialMonoidalCategory::new(op, ob, mo, unit)
    };
    match grading {
        Grading::Total(m) => {
            let base = m.base();
            let mut ob = BTreeMap::new();
            for a in base.objects() {
                for b in base.objects() {
                    ob.insert((a, b), m.ob(a, b));
                }
            }
            let mut mo = BTreeMap::new();
            for f in base.morphisms() {
                for g in base.morphisms() {
                    mo.insert((f, g), m.mor(f, g));
                }
            }
            let pm = flip(base, m.unit(), ob, mo);
            Grading::Total(Arc::new(pm.require_total().expect("total stays total")))
        }
        Grading::Truncated(m) => {
            let base = m.base();
            let mut ob = BTreeMap::new();
            for a in base.objects() {
                for b in base.objects() {
                    if let Some(r) = m.tensor_ob(a, b) {
                        ob.insert((a, b), r);
                    }
                }
            }
            let mut mo = BTreeMap::new();
            for f in base.morphisms() {
                for g in base.morphisms() {
                    if let Some(r) = m.tensor_mor(f, g) {
                        mo.insert((f, g), r);
                    }
                }
            }
            Grading::Truncated(Arc::new(flip(base, m.unit(), ob, mo)))
        }
    }
}

fn functor_to_op(f: &FunctorTable, src_op: &Arc<FiniteCategory>, dst_op: &Arc<FiniteCategory>) -> FunctorTable {
    FunctorTable {
        src: src_op.clone(),
        dst: dst_op.clone(),
        ob_map: f.ob_map.clone(),
        mor_map: f.mor_map.clone(),
    }
}

/// Dualize a table graded monad into the corresponding graded comonad over
/// the opposite grading and opposite base. Tables carry over unchanged;
/// applying the operation twice is table-identical to the input.
pub fn dualize_graded(gm: &TableGradedMonad) -> TableGradedComonad {
    let grading_op = opposite_grading(&gm.grading);
    let base_op = Arc::new(crate::fincat::opposite(&gm.base));
    let m_op = grading_op.base().clone();
    let s: Vec<FunctorTable> = gm
        .t
        .iter()
        .map(|f| functor_to_op(f, &base_op, &base_op))
        .collect();
    // In the opposite grading, the morphism with the same index runs
    // backwards, so `S_u := T_u` has exactly the right type.
    let su: Vec<NatTransTable> = gm
        .tu
        .iter()
        .enumerate()
        .map(|(u, nt)| {
            let u_src_op = m_op.src(u);
            let u_tgt_op = m_op.tgt(u);
            NatTransTable {
                dom: s[u_src_op].clone(),
                cod: s[u_tgt_op].clone(),
                components: nt.components.clone(),
            }
        })
        .collect();
    let unit = grading_op.unit();
    let eps = NatTransTable {
        dom: s[unit].clone(),
        cod: FunctorTable::identity(&base_op),
        components: gm.eta.components.clone(),
    };
    let mut delta = BTreeMap::new();
    for (&(m, n), nt) in &gm.mu {
        let mn = grading_op.tensor_ob(m, n).expect("same grid");
        // δ_{m,n} : S_{m⊗n} ⇒ S_m ∘ S_n, same components as μ_{m,n}.
        delta.insert(
            (m, n),
            NatTransTable {
                dom: s[mn].clone(),
                cod: s[m].after(&s[n]),
                components: nt.components.clone(),
            },
        );
    }
    TableGradedComonad::new(
        format!("{}^op", gm.name),
        grading_op,
        base_op,
        s,
        su,
        eps,
        delta,
    )
}

/// Inverse of [`dualize_graded`].
pub fn dualize_graded_comonad(gc: &TableGradedComonad) -> TableGradedMonad {
    let grading_op = opposite_grading(&gc.grading);
    let base_op = Arc::new(crate::fincat::opposite(&gc.base));
    let t: Vec<FunctorTable> = gc
        .s
        .iter()
        .map(|f| functor_to_op(f, &base_op, &base_op))
        .collect();
    let m_op = grading_op.base().clone();
    let tu: Vec<NatTransTable> = gc
        .su
        .iter()
        .enumerate()
        .map(|(u, nt)| NatTransTable {
            dom: t[m_op.src(u)].clone(),
            cod: t[m_op.tgt(u)].clone(),
            components: nt.components.clone(),
        })
        .collect();
    let unit = grading_op.unit();
    let eta = NatTransTable {
        dom: FunctorTable::identity(&base_op),
        cod: t[unit].clone(),
        components: gc.eps.components.clone(),
    };
    let mut mu = BTreeMap::new();
    for (&(m, n), nt) in &gc.delta {
        let mn = grading_op.tensor_ob(m, n).expect("same grid");
        mu.insert(
            (m, n),
            NatTransTable {
                dom: t[m].after(&t[n]),
                cod: t[mn].clone(),
                components: nt.components.clone(),
            },
        );
    }
    TableGradedMonad::new(
        format!("{}^op", gc.name),
        grading_op,
        base_op,
        t,
        tu,
        eta,
        mu,
    )
}

/// A strict action `⊳ : M × A -> A`, tabulated.
#[derive(Debug, Clone)]
pub struct StrictActionTable {
    pub m: Arc<StrictMonoidalCategory>,
    pub carrier: Arc<FiniteCategory>,
    pub functor: FunctorTable,
}

impl StrictActionTable {
    pub fn new(
        m: Arc<StrictMonoidalCategory>,
        carrier: Arc<FiniteCategory>,
        functor: FunctorTable,
    ) -> Self {
        StrictActionTable {
            m,
            carrier,
            functor,
        }
    }

    pub fn act_ob(&self, g: ObIx, a: ObIx) -> ObIx {
        self.functor
            .ob(product_ob(self.m.base(), &self.carrier, g, a))
    }

    pub fn act_mor(&self, u: MorIx, f: MorIx) -> MorIx {
        self.functor
            .mor(product_mor(self.m.base(), &self.carrier, u, f))
    }

    /// Functoriality plus on-the-nose unit/associativity laws.
    pub fn validate(&self) -> LawReport {
        let mut report = self.functor.validate();
        let mb = self.m.base();
        let a = &self.carrier;
        let unit = self.m.unit();
        for x in a.objects() {
            report.check(
                "strict-action-unit",
                witness([("object", a.object_id(x))]),
                (self.act_ob(unit, x) != x)
                    .then(|| witness([("I⊳a", a.object_id(self.act_ob(unit, x)))])),
            );
        }
        for f in a.morphisms() {
            let img = self.act_mor(mb.identity(unit), f);
            report.check(
                "strict-action-unit",
                witness([("morphism", a.morphism_id(f))]),
                (img != f).then(|| witness([("id_I⊳f", a.morphism_id(img))])),
            );
        }
        for g in mb.objects() {
            for h in mb.objects() {
                for x in a.objects() {
                    let nested = self.act_ob(g, self.act_ob(h, x));
                    let joined = self.act_ob(self.m.ob(g, h), x);
                    report.check(
                        "strict-action-associativity",
                        witness([
                            ("m", mb.object_id(g).to_string()),
                            ("n", mb.object_id(h).to_string()),
                            ("object", a.object_id(x).to_string()),
                        ]),
                        (nested != joined).then(|| {
                            witness([
                                ("m⊳(n⊳a)", a.object_id(nested).to_string()),
                                ("(m⊗n)⊳a", a.object_id(joined).to_string()),
                            ])
                        }),
                    );
                }
            }
        }
        for u in mb.morphisms() {
            for v in mb.morphisms() {
                for f in a.morphisms() {
                    let nested = self.act_mor(u, self.act_mor(v, f));
                    let joined = self.act_mor(self.m.mor(u, v), f);
                    report.check(
                        "strict-action-associativity",
                        witness([
                            ("u", mb.morphism_id(u).to_string()),
                            ("v", mb.morphism_id(v).to_string()),
                            ("f", a.morphism_id(f).to_string()),
                        ]),
                        (nested != joined).then(|| {
                            witness([
                                ("u⊳(v⊳f)", a.morphism_id(nested).to_string()),
                                ("(u⊗v)⊳f", a.morphism_id(joined).to_string()),
                            ])
                        }),
                    );
                }
            }
        }
        report
    }
}

/// An adjunction `l ⊣ r` between tabulated categories, with unit and counit.
#[derive(Debug, Clone)]
pub struct AdjunctionData {
    pub left: FunctorTable,
    pub right: FunctorTable,
    /// `Id_C ⇒ r ∘ l`
    pub unit: NatTransTable,
    /// `l ∘ r ⇒ Id_A`
    pub counit: NatTransTable,
}

impl AdjunctionData {
    /// Identity adjunction on `c`.
    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        let idf = FunctorTable::identity(c);
        AdjunctionData {
            left: idf.clone(),
            right: idf.clone(),
            unit: NatTransTable::identity(&idf),
            counit: NatTransTable::identity(&idf),
        }
    }

    /// Functor/naturality validation plus both triangle identities.
    pub fn validate(&self) -> LawReport {
        let mut report = LawReport::new();
        report.merge(self.left.validate());
        report.merge(self.right.validate());
        report.merge(self.unit.validate());
        report.merge(self.counit.validate());
        let c = &self.left.src;
        let a = &self.left.dst;
        for x in c.objects() {
            let lx = self.left.ob(x);
            let lhs = a.comp(self.counit.at(lx), self.left.mor(self.unit.at(x)));
            report.check(
                "triangle-left",
                witness([("object", c.object_id(x))]),
                (lhs != a.identity(lx)).then(|| witness([("composite", a.morphism_id(lhs))])),
            );
        }
        for y in a.objects() {
            let ry = self.right.ob(y);
            let lhs = c.comp(self.right.mor(self.counit.at(y)), self.unit.at(ry));
            report.check(
                "triangle-right",
                witness([("object", a.object_id(y))]),
                (lhs != c.identity(ry)).then(|| witness([("composite", c.morphism_id(lhs))])),
            );
        }
        report
    }
}

/// Transport a strict action along an adjunction `l ⊣ r`:
/// `m ⋆ c := r(m ⊳ l c)`, with `η` the adjunction unit and
/// `μ_{m,n,c} := r(m ⊳ ε_{n ⊳ l c})`.
///
/// The triangle identities are verified first; the output is a graded monad
/// in table form over the total grading of the action.
pub fn transport_lax_action(
    strict: &StrictActionTable,
    adj: &AdjunctionData,
) -> Result<TableGradedMonad> {
    let adj_report = adj.validate();
    if !adj_report.passed() {
        let detail: Vec<String> = adj_report
            .failures()
            .map(|l| format!("{}: {:?}", l.axiom, l.witness))
            .collect();
        return Err(GmError::precondition("transport", detail.join("; ")));
    }
    let action_report = strict.validate();
    if !action_report.passed() {
        return Err(GmError::precondition(
            "transport",
            "strict action laws fail",
        ));
    }
    let c = adj.left.src.clone();
    let m = strict.m.clone();
    let mb = m.base().clone();

    let t: Vec<FunctorTable> = mb
        .objects()
        .map(|g| FunctorTable {
            src: c.clone(),
            dst: c.clone(),
            ob_map: c
                .objects()
                .map(|x| adj.right.ob(strict.act_ob(g, adj.left.ob(x))))
                .collect(),
            mor_map: c
                .morphisms()
                .map(|f| {
                    adj.right
                        .mor(strict.act_mor(mb.identity(g), adj.left.mor(f)))
                })
                .collect(),
        })
        .collect();
    let tu: Vec<NatTransTable> = mb
        .morphisms()
        .map(|u| NatTransTable {
            dom: t[mb.src(u)].clone(),
            cod: t[mb.tgt(u)].clone(),
            components: c
                .objects()
                .map(|x| {
                    let lx = adj.left.ob(x);
                    adj.right
                        .mor(strict.act_mor(u, strict.carrier.identity(lx)))
                })
                .collect(),
        })
        .collect();
    let eta = NatTransTable {
        dom: FunctorTable::identity(&c),
        cod: t[m.unit()].clone(),
        components: adj.unit.components.clone(),
    };
    let mut mu = BTreeMap::new();
    for g in mb.objects() {
        for h in mb.objects() {
            let gh = m.ob(g, h);
            let components: Vec<MorIx> = c
                .objects()
                .map(|x| {
                    let n_lc = strict.act_ob(h, adj.left.ob(x));
                    let eps = adj.counit.at(n_lc);
                    adj.right.mor(strict.act_mor(mb.identity(g), eps))
                })
                .collect();
            mu.insert(
                (g, h),
                NatTransTable {
                    dom: t[g].after(&t[h]),
                    cod: t[gh].clone(),
                    components,
                },
            );
        }
    }
    Ok(TableGradedMonad::new(
        "transported",
        Grading::Total(m),
        c,
        t,
        tu,
        eta,
        mu,
    ))
}

/// Table equality of two graded monads over the same grading and base:
/// every `T_m`, `T_u`, `η`, `μ` table must coincide.
pub fn graded_monads_table_equal(a: &TableGradedMonad, b: &TableGradedMonad) -> bool {
    let obs_eq = a.t.len() == b.t.len()
        && a.t
            .iter()
            .zip(&b.t)
            .all(|(x, y)| x.ob_map == y.ob_map && x.mor_map == y.mor_map);
    let tu_eq = a.tu.len() == b.tu.len()
        && a.tu
            .iter()
            .zip(&b.tu)
            .all(|(x, y)| x.components == y.components);
    let mu_eq = a.mu.len() == b.mu.len()
        && a.mu
            .iter()
            .zip(&b.mu)
            .all(|((k1, x), (k2, y))| k1 == k2 && x.components == y.components);
    obs_eq && tu_eq && a.eta.components == b.eta.components && mu_eq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_monoidal;
    use crate::instances::{finmini, m2_grading, table_zoo, z2_grading, z2_monoid_category};

    #[test]
    fn zoo_gradings_satisfy_monoidal_laws() {
        for grading in [
            crate::instances::terminal_grading(),
            z2_grading(),
            m2_grading(),
            crate::instances::m2_op_grading(),
            crate::instances::m2_discrete_grading(),
        ] {
            let report = match &grading {
                Grading::Total(m) => validate_monoidal(&**m),
                Grading::Truncated(m) => validate_monoidal(&**m),
            };
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn require_total_refuses_truncation() {
        let inj = crate::statemonads::InjTruncation::new(1).unwrap();
        let grading = Grading::Truncated(inj.monoidal.clone());
        assert!(grading.require_total().is_err());
    }

    /// Strict action viewed as lax through the identity adjunction: all μ
    /// components are identities and the result equals the grading-action
    /// monad.
    #[test]
    fn transport_of_identity_adjunction_is_strict_action() {
        let gm = crate::instances::z2_action_monad();
        let total = gm.grading.require_total().unwrap().clone();
        let base = gm.base.clone();
        // The tensor itself as a strict action of M on its own base.
        let product = crate::fincat::product_category(total.base(), &base).unwrap();
        let product = std::sync::Arc::new(product);
        let functor = FunctorTable {
            src: product.clone(),
            dst: base.clone(),
            ob_map: total
                .base()
                .objects()
                .flat_map(|g| base.objects().map(move |c| (g, c)))
                .map(|(g, c)| total.ob(g, c))
                .collect(),
            mor_map: total
                .base()
                .morphisms()
                .flat_map(|u| base.morphisms().map(move |f| (u, f)))
                .map(|(u, f)| total.mor(u, f))
                .collect(),
        };
        let action = StrictActionTable::new(total, base.clone(), functor);
        assert!(action.validate().passed());
        let transported =
            transport_lax_action(&action, &AdjunctionData::identity(&base)).unwrap();
        for nt in transported.mu.values() {
            for (x, &c) in nt.components.iter().enumerate() {
                assert_eq!(c, base.identity(nt.cod.ob(x)));
            }
        }
        assert!(graded_monads_table_equal(&transported, &gm));
        assert!(check_graded_monad(&transported).passed());
    }

    #[test]
    fn transport_refuses_broken_triangles() {
        let adj = crate::instances::broken_triangle_adjunction();
        let base = adj.left.src.clone();
        let grading = crate::instances::terminal_grading();
        let total = grading.require_total().unwrap().clone();
        let product =
            std::sync::Arc::new(crate::fincat::product_category(total.base(), &base).unwrap());
        let functor = FunctorTable {
            src: product.clone(),
            dst: base.clone(),
            ob_map: base.objects().collect(),
            mor_map: base.morphisms().collect(),
        };
        let action = StrictActionTable::new(total, base, functor);
        let err = transport_lax_action(&action, &adj).unwrap_err();
        assert!(err.to_string().contains("triangle"));
    }

    /// A broken instance fails GM3, and its dual fails exactly GC3: the
    /// witness correspondence of dualization.
    #[test]
    fn dualization_maps_witnesses_axiom_by_axiom() {
        // Identity-carrier monad on the one-object Z/2 category, graded by
        // the poset {0 <= 1}: the only freedom is in the μ components, and
        // setting μ_{1,1} = s breaks GM3 alone.
        let grading = m2_grading();
        let base = z2_monoid_category();
        let s = base.morphism_by_id("s").unwrap();
        let idf = FunctorTable::identity(&base);
        let m_cat = grading.base().clone();
        let t = vec![idf.clone(), idf.clone()];
        let tu: Vec<NatTransTable> = m_cat
            .morphisms()
            .map(|_| NatTransTable::identity(&idf))
            .collect();
        let eta = NatTransTable::identity(&idf);
        let mut mu = BTreeMap::new();
        for m in 0..2usize {
            for n in 0..2usize {
                let mut nt = NatTransTable::identity(&idf);
                if (m, n) == (1, 1) {
                    nt.components = vec![s];
                }
                mu.insert((m, n), nt);
            }
        }
        let gm = TableGradedMonad::new("gm3-breaker", grading, base, t, tu, eta, mu);
        let report = check_graded_monad(&gm);
        assert!(report.axiom_failed("GM3"), "{report}");
        for axiom in ["GM1", "GM2", "GM4", "GM5", "GM6"] {
            assert!(!report.axiom_failed(axiom), "{axiom} failed:\n{report}");
        }
        let gc = dualize_graded(&gm);
        let dual_report = check_graded_comonad(&gc);
        assert!(dual_report.axiom_failed("GC3"), "{dual_report}");
        for axiom in ["GC1", "GC2", "GC4", "GC5", "GC6"] {
            assert!(!dual_report.axiom_failed(axiom));
        }
        // And a passing instance dualizes to a passing comonad (checked by
        // rerunning the dual suite across the zoo).
        for gm in table_zoo() {
            assert!(check_graded_comonad(&dualize_graded(&gm)).passed());
        }
        let _ = finmini();
    }

    /// The uncurried action functor validates and agrees with the diagonal
    /// of the reindexing squares.
    #[test]
    fn uncurried_action_matches_tables() {
        for gm in table_zoo() {
            let act = gm.uncurried_action().unwrap();
            let m_cat = gm.grading.base().clone();
            for u in m_cat.morphisms() {
                for f in gm.base.morphisms() {
                    let ix = u * gm.base.morphism_count() + f;
                    assert_eq!(act.mor(ix), gm.act_table(u, f), "{}", gm.name);
                }
            }
        }
    }

    /// μ components of a validated graded monad are natural transformations.
    #[test]
    fn mu_components_validate_as_nat_trans() {
        for gm in table_zoo() {
            for nt in gm.mu.values() {
                assert!(nt.validate().passed(), "{}", gm.name);
            }
            assert!(gm.validate_tables().passed(), "{}", gm.name);
        }
    }
}
