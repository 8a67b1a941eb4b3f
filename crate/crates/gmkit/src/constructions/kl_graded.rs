//! The Kleisli category of a graded monad: objects are pairs `(m, c)`,
//! morphisms are equivalence classes `[n, v, f]` of triples under the
//! coend-generated relation, computed by union-find closure.
//!
//! The generating relation is directed; the quotient is by its
//! symmetric-transitive closure, which union-find produces after seeding
//! both orientations. The canonical representative of a class is the
//! lexicographic minimum under `(n, v, f-encoding)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backend::Backend;
use crate::error::{GmError, Result};
use crate::fincat::{
    product_ob, FiniteCategory, FunctorTable, Monoidal, MorIx, ObIx, RawCategory,
    StrictMonoidalCategory,
};
use crate::graded::GradedMonadOps;
use crate::report::{witness, LawReport};

/// Plain union-find with path halving; the quotient engine for the coend.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Deterministic: the smaller index wins.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A raw triple `[n, v : m⊗n -> m', f : c -> n ⋆ c']`.
#[derive(Debug, Clone)]
pub struct RawTriple<B: Backend> {
    pub n: ObIx,
    pub v: MorIx,
    pub f: B::Mor,
}

/// One hom-set of the Kleisli category: all raw triples, their classes, and
/// the canonical representative of each class.
pub struct KlHomSet<B: Backend> {
    pub raws: Vec<RawTriple<B>>,
    pub class_of: Vec<usize>,
    /// Member raw indices per class, ascending.
    pub classes: Vec<Vec<usize>>,
    /// Canonical representative (raw index) per class.
    pub reps: Vec<usize>,
}

pub type KlKey<B> = (ObIx, <B as Backend>::Ob);

type HomCache<B> = std::cell::RefCell<BTreeMap<(KlKey<B>, KlKey<B>), Arc<KlHomSet<B>>>>;

/// The three decomposition stages of a class plus whether they recompose
/// to it.
pub type Decomposition<B> = (KlMor<B>, KlMor<B>, KlMor<B>, bool);

/// The built Kleisli category over a fixed universe of base objects.
pub struct KlGraded<'g, G: GradedMonadOps> {
    pub gm: &'g G,
    pub monoidal: Arc<StrictMonoidalCategory>,
    pub universe: Vec<<G::B as Backend>::Ob>,
    /// All `(grade, base object)` pairs, in deterministic order.
    pub objects: Vec<KlKey<G::B>>,
    /// Hom-sets keyed by (source, target) object values; lazily extended
    /// beyond the universe (the decomposition's middle objects need not be
    /// universe members).
    homs: HomCache<G::B>,
    hom_bound: u128,
}

/// A morphism of the built category: source, target, class index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KlMor<B: Backend> {
    pub src: KlKey<B>,
    pub tgt: KlKey<B>,
    pub class: usize,
}

pub fn kl_build<'g, G: GradedMonadOps>(
    gm: &'g G,
    universe: Vec<<G::B as Backend>::Ob>,
    hom_bound: u128,
) -> Result<KlGraded<'g, G>> {
    let monoidal = gm.grading().require_total()?.clone();
    let m_cat = monoidal.base().clone();
    let mut objects = Vec::new();
    for m in m_cat.objects() {
        for c in &universe {
            objects.push((m, c.clone()));
        }
    }
    Ok(KlGraded {
        gm,
        monoidal,
        universe,
        objects,
        homs: std::cell::RefCell::new(BTreeMap::new()),
        hom_bound,
    })
}

impl<'g, G: GradedMonadOps> KlGraded<'g, G> {
    fn m_cat(&self) -> &Arc<FiniteCategory> {
        self.monoidal.base()
    }

    /// Compute (or fetch) the hom-set from `(m, c)` to `(m', c')`.
    pub fn hom_set(&self, src: &KlKey<G::B>, tgt: &KlKey<G::B>) -> Result<Arc<KlHomSet<G::B>>> {
        if let Some(h) = self.homs.borrow().get(&(src.clone(), tgt.clone())) {
            return Ok(h.clone());
        }
        let b = self.gm.backend();
        let m_cat = self.m_cat().clone();
        let (m, c) = src;
        let (mp, cp) = tgt;
        let mut raws: Vec<RawTriple<G::B>> = Vec::new();
        let mut index: BTreeMap<(ObIx, MorIx, Vec<u64>), usize> = BTreeMap::new();
        for n in m_cat.objects() {
            let mn = self.monoidal.ob(*m, n);
            let n_cp = self.gm.t_ob(n, cp);
            for v in m_cat.hom(mn, *mp) {
                for f in b.hom(c, &n_cp, self.hom_bound)? {
                    index.insert((n, v, b.mor_key(&f)), raws.len());
                    raws.push(RawTriple { n, v, f });
                }
            }
        }
        let mut uf = UnionFind::new(raws.len());
        // Seed both orientations of the generating relation: for each
        // w : n -> n2, v : m⊗n2 -> m', f : c -> n ⋆ c',
        //   (n, v ∘ (m ⊗ w), f)  ~  (n2, v, (w ⋆ c') ∘ f).
        for w in m_cat.morphisms() {
            let n = m_cat.src(w);
            let n2 = m_cat.tgt(w);
            let mn2 = self.monoidal.ob(*m, n2);
            let m_w = self.monoidal.mor(m_cat.identity(*m), w);
            let w_cp = self.gm.t_u(w, cp);
            let n_cp = self.gm.t_ob(n, cp);
            for v in m_cat.hom(mn2, *mp) {
                let v_mw = m_cat.comp(v, m_w);
                for f in b.hom(c, &n_cp, self.hom_bound)? {
                    let left = index[&(n, v_mw, b.mor_key(&f))];
                    let pushed = b.compose(&w_cp, &f);
                    let right = index[&(n2, v, b.mor_key(&pushed))];
                    uf.union(left, right);
                }
            }
        }
        // Gather classes in deterministic order of their minimum member.
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..raws.len() {
            by_root.entry(uf.find(i)).or_default().push(i);
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
        classes.sort_by_key(|members| members[0]);
        let mut class_of = vec![0usize; raws.len()];
        let mut reps = Vec::with_capacity(classes.len());
        for (cix, members) in classes.iter().enumerate() {
            for &i in members {
                class_of[i] = cix;
            }
            let rep = *members
                .iter()
                .min_by_key(|&&i| (raws[i].n, raws[i].v, b.mor_key(&raws[i].f)))
                .expect("classes are nonempty");
            reps.push(rep);
        }
        let hom = Arc::new(KlHomSet {
            raws,
            class_of,
            classes,
            reps,
        });
        self.homs
            .borrow_mut()
            .insert((src.clone(), tgt.clone()), hom.clone());
        Ok(hom)
    }

    /// Class of a given raw triple.
    pub fn class_of(
        &self,
        src: &KlKey<G::B>,
        tgt: &KlKey<G::B>,
        triple: &RawTriple<G::B>,
    ) -> Result<KlMor<G::B>> {
        let b = self.gm.backend();
        let hom = self.hom_set(src, tgt)?;
        let pos = hom
            .raws
            .iter()
            .position(|r| {
                r.n == triple.n && r.v == triple.v && b.mor_key(&r.f) == b.mor_key(&triple.f)
            })
            .ok_or_else(|| GmError::invalid("Kleisli class lookup", "triple not enumerated"))?;
        Ok(KlMor {
            src: src.clone(),
            tgt: tgt.clone(),
            class: hom.class_of[pos],
        })
    }

    /// The identity morphism on `(m, c)`: `[I, id_m, η_c]`.
    pub fn identity(&self, at: &KlKey<G::B>) -> Result<KlMor<G::B>> {
        let triple = RawTriple {
            n: self.monoidal.unit(),
            v: self.m_cat().identity(at.0),
            f: self.gm.eta(&at.1),
        };
        self.class_of(at, at, &triple)
    }

    /// Composite of representative triples:
    /// `[n⊗n', v' ∘ (v ⊗ n'), μ_{n,n',c''} ∘ (n ⋆ f') ∘ f]`.
    pub fn compose_triples(
        &self,
        tgt: &KlKey<G::B>,
        first: &RawTriple<G::B>,
        second: &RawTriple<G::B>,
    ) -> RawTriple<G::B> {
        let b = self.gm.backend();
        let m_cat = self.m_cat();
        let v_n2 = self.monoidal.mor(first.v, m_cat.identity(second.n));
        let v = m_cat.comp(second.v, v_n2);
        let lifted = self.gm.t_mor(first.n, &second.f);
        let mu = self.gm.mu(first.n, second.n, &tgt.1);
        let f = b.compose(&mu, &b.compose(&lifted, &first.f));
        RawTriple {
            n: self.monoidal.ob(first.n, second.n),
            v,
            f,
        }
    }

    /// Composite of two classes (by representatives).
    pub fn compose(&self, g: &KlMor<G::B>, f: &KlMor<G::B>) -> Result<KlMor<G::B>> {
        if f.tgt != g.src {
            return Err(GmError::NonComposable {
                g: format!("class {}", g.class),
                f: format!("class {}", f.class),
            });
        }
        let hf = self.hom_set(&f.src, &f.tgt)?;
        let hg = self.hom_set(&g.src, &g.tgt)?;
        let rf = &hf.raws[hf.reps[f.class]];
        let rg = &hg.raws[hg.reps[g.class]];
        let composite = self.compose_triples(&g.tgt, rf, rg);
        self.class_of(&f.src, &g.tgt, &composite)
    }

    /// Verify that composing any two members of two classes always lands in
    /// the composite class (well-definedness of the quotient composition).
    pub fn verify_composition_well_defined(
        &self,
        f: &KlMor<G::B>,
        g: &KlMor<G::B>,
    ) -> Result<bool> {
        let hf = self.hom_set(&f.src, &f.tgt)?;
        let hg = self.hom_set(&g.src, &g.tgt)?;
        let expected = self.compose(g, f)?;
        for &i in &hf.classes[f.class] {
            for &j in &hg.classes[g.class] {
                let composite = self.compose_triples(&g.tgt, &hf.raws[i], &hg.raws[j]);
                let got = self.class_of(&f.src, &g.tgt, &composite)?;
                if got.class != expected.class {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The action `u ⊙ [n, v, f] = [n, u ⊗ v, f]` on a class, checking
    /// representative independence.
    pub fn act(&self, u: MorIx, f: &KlMor<G::B>) -> Result<KlMor<G::B>> {
        let m_cat = self.m_cat();
        let (l, l2) = (m_cat.src(u), m_cat.tgt(u));
        let src = (self.monoidal.ob(l, f.src.0), f.src.1.clone());
        let tgt = (self.monoidal.ob(l2, f.tgt.0), f.tgt.1.clone());
        let hom = self.hom_set(&f.src, &f.tgt)?;
        let mut acted: Option<KlMor<G::B>> = None;
        for &i in &hom.classes[f.class] {
            let r = &hom.raws[i];
            let triple = RawTriple {
                n: r.n,
                v: self.monoidal.mor(u, r.v),
                f: r.f.clone(),
            };
            let cls = self.class_of(&src, &tgt, &triple)?;
            match &acted {
                None => acted = Some(cls),
                Some(prev) => {
                    if prev.class != cls.class {
                        return Err(GmError::invalid(
                            "Kleisli action",
                            "action is not representative-independent",
                        ));
                    }
                }
            }
        }
        acted.ok_or_else(|| GmError::invalid("Kleisli action", "empty class"))
    }

    /// The left adjoint `f_T : c ↦ (I, c)` on a base morphism:
    /// `[I, id_I, η ∘ f]`.
    pub fn free_mor(&self, f: &<G::B as Backend>::Mor) -> Result<KlMor<G::B>> {
        let b = self.gm.backend();
        let unit = self.monoidal.unit();
        let src = (unit, b.src(f));
        let tgt = (unit, b.tgt(f));
        let triple = RawTriple {
            n: unit,
            v: self.m_cat().identity(unit),
            f: b.compose(&self.gm.eta(&b.tgt(f)), f),
        };
        self.class_of(&src, &tgt, &triple)
    }

    /// The right adjoint applied to a class, evaluated at grade `l`:
    /// `((l⊗v) ⋆ c') ∘ μ_{l⊗m, n, c'} ∘ ((l⊗m) ⋆ f)`.
    pub fn cofree_mor_at(&self, l: ObIx, f: &KlMor<G::B>) -> Result<<G::B as Backend>::Mor> {
        let b = self.gm.backend();
        let hom = self.hom_set(&f.src, &f.tgt)?;
        let r = &hom.raws[hom.reps[f.class]];
        let m_cat = self.m_cat();
        let lm = self.monoidal.ob(l, f.src.0);
        let lv = self.monoidal.mor(m_cat.identity(l), r.v);
        let lifted = self.gm.t_mor(lm, &r.f);
        let mu = self.gm.mu(lm, r.n, &f.tgt.1);
        Ok(b.compose(&self.gm.t_u(lv, &f.tgt.1), &b.compose(&mu, &lifted)))
    }

    /// The counit component at `(m, c)` and grade `l`:
    /// `[l⊗m, id, id] : (I, (l⊗m) ⋆ c) -> (l⊗m, c)`.
    pub fn counit_at(&self, l: ObIx, at: &KlKey<G::B>) -> Result<KlMor<G::B>> {
        let b = self.gm.backend();
        let lm = self.monoidal.ob(l, at.0);
        let lm_c = self.gm.t_ob(lm, &at.1);
        let unit = self.monoidal.unit();
        let src = (unit, lm_c.clone());
        let tgt = (lm, at.1.clone());
        let triple = RawTriple {
            n: lm,
            v: self.m_cat().identity(lm),
            f: b.identity(&lm_c),
        };
        self.class_of(&src, &tgt, &triple)
    }

    /// Decompose a class `[n, v, f] : (m,c) -> (m',c')` into
    /// `(m ⊙ f_T(f) ; m ⊙ ε_{(I,c'),n} ; v ⊙ f_T(c'))` and verify that the
    /// three recompose to it.
    pub fn decompose(
        &self,
        f: &KlMor<G::B>,
    ) -> Result<Decomposition<G::B>> {
        let b = self.gm.backend();
        let m_cat = self.m_cat();
        let hom = self.hom_set(&f.src, &f.tgt)?;
        let r = &hom.raws[hom.reps[f.class]];
        let (m, c) = &f.src;
        let (_mp, cp) = &f.tgt;
        let n_cp = self.gm.t_ob(r.n, cp);
        let unit = self.monoidal.unit();

        // Stage objects.
        let stage1 = (*m, n_cp.clone());
        let stage2 = (self.monoidal.ob(*m, r.n), cp.clone());

        // m ⊙ f_T(f-part): [I, id_m, η ∘ f].
        let t1 = RawTriple {
            n: unit,
            v: m_cat.identity(*m),
            f: b.compose(&self.gm.eta(&n_cp), &r.f),
        };
        let d1 = self.class_of(&(*m, c.clone()), &stage1, &t1)?;
        // m ⊙ ε: [n, id_{m⊗n}, id].
        let t2 = RawTriple {
            n: r.n,
            v: m_cat.identity(stage2.0),
            f: b.identity(&n_cp),
        };
        let d2 = self.class_of(&stage1, &stage2, &t2)?;
        // v ⊙ f_T(c'): [I, v, η].
        let t3 = RawTriple {
            n: unit,
            v: r.v,
            f: self.gm.eta(cp),
        };
        let d3 = self.class_of(&stage2, &f.tgt, &t3)?;

        // Recompose at the triple level and compare classes.
        let c12 = self.compose_triples(&stage2, &t1, &t2);
        let c123 = self.compose_triples(&f.tgt, &c12, &t3);
        let total = self.class_of(&f.src, &f.tgt, &c123)?;
        Ok((d1, d2, d3, total.class == f.class))
    }
}

/// The Kleisli category materialized as a `FiniteCategory` over the universe
/// objects, with bookkeeping to map morphisms back to classes.
pub struct KlMaterialized<B: Backend> {
    pub cat: Arc<FiniteCategory>,
    pub objects: Vec<KlKey<B>>,
    /// Per materialized morphism: (src object ix, tgt object ix, class).
    pub mors: Vec<(usize, usize, usize)>,
    /// `⊙` as a functor table `M x Kl -> Kl`.
    pub action: FunctorTable,
    pub product: Arc<FiniteCategory>,
}

impl<B: Backend> KlMaterialized<B> {
    pub fn find_ob(&self, key: &KlKey<B>) -> Result<usize> {
        self.objects
            .iter()
            .position(|k| k == key)
            .ok_or_else(|| GmError::invalid("Kleisli lookup", "object outside universe"))
    }

    pub fn find_mor(&self, si: usize, ti: usize, class: usize) -> Result<MorIx> {
        self.mors
            .iter()
            .position(|&(s, t, c)| s == si && t == ti && c == class)
            .ok_or_else(|| GmError::invalid("Kleisli lookup", "class not materialized"))
    }

    pub fn find_kl_mor(&self, m: &KlMor<B>) -> Result<MorIx> {
        self.find_mor(self.find_ob(&m.src)?, self.find_ob(&m.tgt)?, m.class)
    }
}

/// Materialize the tables of a built Kleisli category and run category
/// validation over them.
pub fn kl_materialize<G: GradedMonadOps>(kl: &KlGraded<'_, G>) -> Result<KlMaterialized<G::B>> {
    let b = kl.gm.backend();
    let m_cat = kl.m_cat().clone();
    let mut raw = RawCategory::new("Kl");
    let obj_name = |key: &KlKey<G::B>| -> String {
        format!("({}|{})", m_cat.object_id(key.0), b.ob_label(&key.1))
    };
    for key in &kl.objects {
        raw.objects.push(obj_name(key));
    }
    let mut mors: Vec<(usize, usize, usize)> = Vec::new();
    for (si, skey) in kl.objects.iter().enumerate() {
        for (ti, tkey) in kl.objects.iter().enumerate() {
            let hom = kl.hom_set(skey, tkey)?;
            for class in 0..hom.classes.len() {
                let id = format!("k{}_{}_{}", si, ti, class);
                raw.morphisms.push((id, obj_name(skey), obj_name(tkey)));
                mors.push((si, ti, class));
            }
        }
    }
    let find_mor = |si: usize, ti: usize, class: usize| -> usize {
        mors.iter()
            .position(|&(s, t, c)| s == si && t == ti && c == class)
            .expect("materialized class")
    };
    for (oi, key) in kl.objects.iter().enumerate() {
        let id_cls = kl.identity(key)?;
        let pos = find_mor(oi, oi, id_cls.class);
        raw.identities
            .insert(obj_name(key), raw.morphisms[pos].0.clone());
    }
    for (fi, &(fs, ft, fc)) in mors.iter().enumerate() {
        for (gi, &(gs, gt, gc)) in mors.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let f = KlMor::<G::B> {
                src: kl.objects[fs].clone(),
                tgt: kl.objects[ft].clone(),
                class: fc,
            };
            let g = KlMor::<G::B> {
                src: kl.objects[gs].clone(),
                tgt: kl.objects[gt].clone(),
                class: gc,
            };
            let composite = kl.compose(&g, &f)?;
            let pos = find_mor(fs, gt, composite.class);
            raw.comp.push((
                raw.morphisms[gi].0.clone(),
                raw.morphisms[fi].0.clone(),
                raw.morphisms[pos].0.clone(),
            ));
        }
    }
    let cat = Arc::new(
        raw.validate()
            .map_err(|d| GmError::invalid("Kleisli category", d.join("; ")))?,
    );

    // The strict action ⊙ as a table.
    let find_ob = |key: &KlKey<G::B>| -> Result<usize> {
        kl.objects
            .iter()
            .position(|k| k == key)
            .ok_or_else(|| GmError::invalid("Kleisli action", "object outside universe"))
    };
    let product = Arc::new(crate::fincat::product_category(&m_cat, &cat)?);
    let mut ob_map = Vec::with_capacity(product.object_count());
    for l in m_cat.objects() {
        for key in &kl.objects {
            ob_map.push(find_ob(&(kl.monoidal.ob(l, key.0), key.1.clone()))?);
        }
    }
    let mut mor_map = Vec::with_capacity(product.morphism_count());
    for u in m_cat.morphisms() {
        for &(fs, ft, fc) in &mors {
            let f = KlMor::<G::B> {
                src: kl.objects[fs].clone(),
                tgt: kl.objects[ft].clone(),
                class: fc,
            };
            let acted = kl.act(u, &f)?;
            let si = find_ob(&acted.src)?;
            let ti = find_ob(&acted.tgt)?;
            mor_map.push(find_mor(si, ti, acted.class));
        }
    }
    let action = FunctorTable {
        src: product.clone(),
        dst: cat.clone(),
        ob_map,
        mor_map,
    };
    if !action.validate().passed() {
        return Err(GmError::invalid(
            "Kleisli action",
            "action table not functorial",
        ));
    }
    // Strict unit on the nose.
    for key in &kl.objects {
        let i = find_ob(key)?;
        let acted = action.ob(product_ob(&m_cat, &cat, kl.monoidal.unit(), i));
        if acted != i {
            return Err(GmError::invalid("Kleisli action", "unit law fails"));
        }
    }
    Ok(KlMaterialized {
        cat,
        objects: kl.objects.clone(),
        mors,
        action,
        product,
    })
}

/// Quotient soundness report: decomposition recomposes for every class, and
/// the action and composition are representative-independent.
pub fn kl_audit<G: GradedMonadOps>(kl: &KlGraded<'_, G>) -> Result<LawReport> {
    let mut report = LawReport::new();
    let m_cat = kl.m_cat().clone();
    for (si, skey) in kl.objects.iter().enumerate() {
        for (ti, tkey) in kl.objects.iter().enumerate() {
            let hom = kl.hom_set(skey, tkey)?;
            for class in 0..hom.classes.len() {
                let f = KlMor::<G::B> {
                    src: skey.clone(),
                    tgt: tkey.clone(),
                    class,
                };
                let (_, _, _, ok) = kl.decompose(&f)?;
                report.check(
                    "decomposition-recomposes",
                    witness([("class", format!("{si}->{ti} #{class}"))]),
                    (!ok).then(|| witness([("detail", "recomposition landed elsewhere")])),
                );
                for u in m_cat.morphisms() {
                    let acted = kl.act(u, &f);
                    report.check(
                        "action-representative-independence",
                        witness([
                            ("u", m_cat.morphism_id(u).to_string()),
                            ("class", format!("{si}->{ti} #{class}")),
                        ]),
                        acted.is_err().then(|| witness([("detail", "class split")])),
                    );
                }
            }
        }
    }
    for skey in &kl.objects {
        for mkey in &kl.objects {
            for tkey in &kl.objects {
                let h1 = kl.hom_set(skey, mkey)?;
                let h2 = kl.hom_set(mkey, tkey)?;
                for c1 in 0..h1.classes.len() {
                    for c2 in 0..h2.classes.len() {
                        let f = KlMor::<G::B> {
                            src: skey.clone(),
                            tgt: mkey.clone(),
                            class: c1,
                        };
                        let g = KlMor::<G::B> {
                            src: mkey.clone(),
                            tgt: tkey.clone(),
                            class: c2,
                        };
                        let ok = kl.verify_composition_well_defined(&f, &g)?;
                        report.check(
                            "composition-representative-independence",
                            witness([("pair", format!("#{c1};#{c2}"))]),
                            (!ok).then(|| witness([("detail", "composite class split")])),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::TableGradedMonad;
    use crate::instances::{m2_collapse_monad, z2_action_monad, ExceptionMonad};
    use crate::indexed::MonadOps;
    use crate::setcat::FinSet;

    #[test]
    fn discrete_grading_classes_are_raw_triples() {
        let gm = z2_action_monad();
        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16).unwrap();
        for s in &kl.objects {
            for t in &kl.objects {
                let hom = kl.hom_set(s, t).unwrap();
                // No nonidentity w: every class is a singleton.
                for members in &hom.classes {
                    assert_eq!(members.len(), 1);
                }
            }
        }
        let mat = kl_materialize(&kl).unwrap();
        assert_eq!(mat.cat.object_count(), 4);
    }

    #[test]
    fn collapse_monad_quotient_is_nontrivial() {
        let gm = m2_collapse_monad();
        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16).unwrap();
        let w = gm.base.object_by_id("W").unwrap();
        // hom((0,W),(1,W)): five raw triples collapse to one class.
        let hom = kl.hom_set(&(0, w), &(1, w)).unwrap();
        assert_eq!(hom.raws.len(), 5);
        assert_eq!(hom.classes.len(), 1);
        // hom((0,W),(0,W)): four distinct classes (no relation applies).
        let hom = kl.hom_set(&(0, w), &(0, w)).unwrap();
        assert_eq!(hom.classes.len(), 4);
        let mat = kl_materialize(&kl).unwrap();
        assert!(mat.cat.morphism_count() > 0);
        let audit = kl_audit(&kl).unwrap();
        assert!(audit.passed(), "{audit}");
    }

    #[test]
    fn identity_composes_as_unit() {
        let gm = m2_collapse_monad();
        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16).unwrap();
        for s in kl.objects.clone() {
            for t in kl.objects.clone() {
                let hom = kl.hom_set(&s, &t).unwrap();
                let id_s = kl.identity(&s).unwrap();
                let id_t = kl.identity(&t).unwrap();
                for class in 0..hom.classes.len() {
                    let f = KlMor::<crate::backend::TableBackend> {
                        src: s,
                        tgt: t,
                        class,
                    };
                    assert_eq!(kl.compose(&f, &id_s).unwrap().class, class);
                    assert_eq!(kl.compose(&id_t, &f).unwrap().class, class);
                }
            }
        }
    }

    /// View an ordinary monad over the terminal grading.
    pub(crate) struct OrdinaryAsGraded<'a>(pub &'a ExceptionMonad, pub crate::graded::Grading);

    impl<'a> OrdinaryAsGraded<'a> {
        pub fn new(m: &'a ExceptionMonad) -> Self {
            OrdinaryAsGraded(m, crate::instances::terminal_grading())
        }
    }

    impl<'a> crate::graded::GradedMonadOps for OrdinaryAsGraded<'a> {
        type B = crate::backend::SetBackend;
        fn backend(&self) -> &crate::backend::SetBackend {
            self.0.backend()
        }
        fn grading(&self) -> &crate::graded::Grading {
            &self.1
        }
        fn t_ob(&self, _m: usize, x: &FinSet) -> FinSet {
            self.0.t_ob(x)
        }
        fn t_mor(&self, _m: usize, f: &crate::setcat::SetFn) -> crate::setcat::SetFn {
            self.0.t_mor(f)
        }
        fn t_u(&self, _u: usize, x: &FinSet) -> crate::setcat::SetFn {
            crate::setcat::SetFn::identity(&self.0.t_ob(x))
        }
        fn eta(&self, x: &FinSet) -> crate::setcat::SetFn {
            self.0.eta(x)
        }
        fn mu(&self, _m: usize, _n: usize, x: &FinSet) -> crate::setcat::SetFn {
            self.0.mu(x)
        }
    }

    #[test]
    fn terminal_grading_matches_ordinary_kleisli() {
        // M = 1: hom((I,X),(I,Y)) must biject with functions X -> Y + E.
        let exc = ExceptionMonad::new(vec!["e".into()], 2);
        let gm = OrdinaryAsGraded::new(&exc);
        let universe = vec![
            FinSet::numbered("X0", 0),
            FinSet::numbered("X1", 1),
            FinSet::numbered("X2", 2),
        ];
        let kl = kl_build(&gm, universe.clone(), 1 << 16).unwrap();
        for x in &universe {
            for y in &universe {
                let hom = kl.hom_set(&(0, x.clone()), &(0, y.clone())).unwrap();
                let expected = crate::setcat::pow_u128(y.size + 1, x.size as u64);
                assert_eq!(hom.classes.len() as u128, expected, "{} {}", x, y);
            }
        }
        let audit = kl_audit(&kl).unwrap();
        assert!(audit.passed());
    }

    #[test]
    fn identity_monad_kleisli_is_base() {
        let gm = TableGradedMonad::identity_monad(
            crate::instances::terminal_grading(),
            crate::instances::walking_arrow(),
        );
        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16).unwrap();
        let mat = kl_materialize(&kl).unwrap();
        assert_eq!(mat.cat.object_count(), 2);
        assert_eq!(mat.cat.morphism_count(), 3);
    }
}
