//! Universality of the constructions as equation suites: modules over a
//! graded or indexed monad factor uniquely through the Eilenberg–Moore or
//! Kleisli construction. The mediating functor is built from its closed
//! formula, verified against the factorization equations, and a
//! component-pinning audit rejects any differing candidate with the name of
//! the equation it breaks.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backend::TableBackend;
use crate::constructions::em_graded::{EmGraded, GradedAlgebra};
use crate::constructions::em_indexed::EmIndexed;
use crate::constructions::kl_graded::{KlGraded, KlMaterialized, KlMor};
use crate::error::{GmError, Result};
use crate::fincat::{
    product_category, FiniteCategory, FunctorTable, Monoidal, MorIx, ObIx, StrictMonoidalCategory,
};
use crate::graded::{StrictActionTable, TableGradedMonad};
use crate::indexed::TableIndexedMonad;
use crate::report::{witness, Audit, LawReport};

// ---------------------------------------------------------------------------
// Left modules over a graded monad (Eilenberg–Moore side)
// ---------------------------------------------------------------------------

/// A left module: a strict M-category `(Y, Γ)`, a functor `g : Y -> C`, and
/// structure maps `γ_{m,y} : T_m(g y) -> g(Γ(m, y))`.
pub struct GradedLeftModule {
    pub action: StrictActionTable,
    pub g: FunctorTable,
    pub gamma: BTreeMap<(ObIx, ObIx), MorIx>,
}

impl GradedLeftModule {
    fn carrier(&self) -> &Arc<FiniteCategory> {
        &self.action.carrier
    }
}

/// The module-equation suite for a left module.
pub fn validate_left_module(gm: &TableGradedMonad, md: &GradedLeftModule) -> LawReport {
    let mut report = md.action.validate();
    report.merge(md.g.validate());
    let m_cat = gm.grading.base().clone();
    let c = &gm.base;
    let y_cat = md.carrier();
    // Typing of γ.
    for m in m_cat.objects() {
        for y in y_cat.objects() {
            let w = witness([
                ("m", m_cat.object_id(m).to_string()),
                ("y", y_cat.object_id(y).to_string()),
            ]);
            match md.gamma.get(&(m, y)) {
                None => report.fail("module-typing", w),
                Some(&gmy) => {
                    let ok = c.src(gmy) == gm.t[m].ob(md.g.ob(y))
                        && c.tgt(gmy) == md.g.ob(md.action.act_ob(m, y));
                    report.check(
                        "module-typing",
                        w,
                        (!ok).then(|| witness([("component", c.morphism_id(gmy))])),
                    );
                }
            }
        }
    }
    if !report.passed() {
        return report;
    }
    // Naturality in (m, y).
    for u in m_cat.morphisms() {
        for z in y_cat.morphisms() {
            let (m, y) = (m_cat.src(u), y_cat.src(z));
            let (m2, y2) = (m_cat.tgt(u), y_cat.tgt(z));
            let lhs = c.comp(md.gamma[&(m2, y2)], gm.act_table(u, md.g.mor(z)));
            let rhs = c.comp(md.g.mor(md.action.act_mor(u, z)), md.gamma[&(m, y)]);
            report.check(
                "module-naturality",
                witness([
                    ("u", m_cat.morphism_id(u).to_string()),
                    ("z", y_cat.morphism_id(z).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "square fails")])),
            );
        }
    }
    // Unit: γ_{I,y} ∘ η_{g y} = id.
    let unit = gm.grading.unit();
    for y in y_cat.objects() {
        let gy = md.g.ob(y);
        let lhs = c.comp(md.gamma[&(unit, y)], gm.eta.at(gy));
        report.check(
            "module-unit",
            witness([("y", y_cat.object_id(y))]),
            (lhs != c.identity(gy)).then(|| witness([("composite", c.morphism_id(lhs))])),
        );
    }
    // Associativity: γ_{m⊗n,y} ∘ μ_{m,n,g y} = γ_{m,Γ(n,y)} ∘ T_m(γ_{n,y}).
    let total = gm.grading.require_total().expect("module needs totality");
    for m in m_cat.objects() {
        for n in m_cat.objects() {
            for y in y_cat.objects() {
                let gy = md.g.ob(y);
                let lhs = c.comp(md.gamma[&(total.ob(m, n), y)], gm.mu[&(m, n)].at(gy));
                let rhs = c.comp(
                    md.gamma[&(m, md.action.act_ob(n, y))],
                    gm.t[m].mor(md.gamma[&(n, y)]),
                );
                report.check(
                    "module-associativity",
                    witness([
                        ("m", m_cat.object_id(m).to_string()),
                        ("n", m_cat.object_id(n).to_string()),
                        ("y", y_cat.object_id(y).to_string()),
                    ]),
                    (lhs != rhs).then(|| witness([("detail", "square fails")])),
                );
            }
        }
    }
    report
}

/// The closed-form mediator `g̃(y) = ((g Γ(n,y))_n, (γ_{m,Γ(n,y)})_{m,n})`.
pub fn left_module_mediator(
    gm: &TableGradedMonad,
    em: &EmGraded,
    md: &GradedLeftModule,
) -> Result<FunctorTable> {
    let m_cat = gm.grading.base().clone();
    let y_cat = md.carrier().clone();
    let mut ob_map = Vec::with_capacity(y_cat.object_count());
    for y in y_cat.objects() {
        let carrier = FunctorTable {
            src: m_cat.clone(),
            dst: gm.base.clone(),
            ob_map: m_cat
                .objects()
                .map(|n| md.g.ob(md.action.act_ob(n, y)))
                .collect(),
            mor_map: m_cat
                .morphisms()
                .map(|w| md.g.mor(md.action.act_mor(w, y_cat.identity(y))))
                .collect(),
        };
        let h: BTreeMap<(ObIx, ObIx), MorIx> = m_cat
            .objects()
            .flat_map(|m| m_cat.objects().map(move |n| (m, n)))
            .map(|(m, n)| ((m, n), md.gamma[&(m, md.action.act_ob(n, y))]))
            .collect();
        ob_map.push(em.find_algebra(&GradedAlgebra { carrier, h })?);
    }
    let mut mor_map = Vec::with_capacity(y_cat.morphism_count());
    for z in y_cat.morphisms() {
        let components: Vec<MorIx> = m_cat
            .objects()
            .map(|n| md.g.mor(md.action.act_mor(m_cat.identity(n), z)))
            .collect();
        mor_map.push(em.find_hom(ob_map[y_cat.src(z)], ob_map[y_cat.tgt(z)], &components)?);
    }
    Ok(FunctorTable {
        src: y_cat,
        dst: em.cat.clone(),
        ob_map,
        mor_map,
    })
}

/// Check a candidate mediator against the three pinning equations for the
/// Eilenberg–Moore kind; used both to verify the constructed mediator and to
/// audit perturbed candidates.
pub fn audit_left_module_candidate(
    gm: &TableGradedMonad,
    em: &EmGraded,
    md: &GradedLeftModule,
    candidate: &FunctorTable,
) -> Result<Audit> {
    let m_cat = gm.grading.base().clone();
    let y_cat = md.carrier().clone();
    let unit = gm.grading.unit();
    if !candidate.validate().passed() {
        return Ok(Audit::rejected("functoriality", "candidate is not a functor"));
    }
    // factors-through-forgetful: u^T ∘ g̃ = g.
    for y in y_cat.objects() {
        let alg = &em.algebras[candidate.ob(y)];
        if alg.carrier.ob(unit) != md.g.ob(y) {
            return Ok(Audit::rejected(
                "factors-through-forgetful",
                format!("object {}", y_cat.object_id(y)),
            ));
        }
    }
    for z in y_cat.morphisms() {
        let hom = &em.homs[candidate.mor(z)];
        if hom.components[unit] != md.g.mor(z) {
            return Ok(Audit::rejected(
                "factors-through-forgetful",
                format!("morphism {}", y_cat.morphism_id(z)),
            ));
        }
    }
    // restricts-counit: γ_{m,y} = h^{g̃y}_{m,I}.
    for m in m_cat.objects() {
        for y in y_cat.objects() {
            let alg = &em.algebras[candidate.ob(y)];
            if alg.h[&(m, unit)] != md.gamma[&(m, y)] {
                return Ok(Audit::rejected(
                    "restricts-counit",
                    format!(
                        "grade {} at {}",
                        m_cat.object_id(m),
                        y_cat.object_id(y)
                    ),
                ));
            }
        }
    }
    // commutes-with-action: g̃(Γ(p, y)) = p ⊛ g̃(y), likewise on morphisms.
    for p in m_cat.objects() {
        for y in y_cat.objects() {
            let lhs = candidate.ob(md.action.act_ob(p, y));
            let rhs = em.action_ob(&m_cat, p, candidate.ob(y));
            if lhs != rhs {
                return Ok(Audit::rejected(
                    "commutes-with-action",
                    format!(
                        "grade {} at {}",
                        m_cat.object_id(p),
                        y_cat.object_id(y)
                    ),
                ));
            }
        }
    }
    for u in m_cat.morphisms() {
        for z in y_cat.morphisms() {
            let lhs = candidate.mor(md.action.act_mor(u, z));
            let src_alg = &em.algebras[candidate.ob(y_cat.src(z))];
            let tgt_alg = &em.algebras[candidate.ob(y_cat.tgt(z))];
            let comps = crate::constructions::em_graded::em_graded_action_hom(
                gm,
                u,
                src_alg,
                tgt_alg,
                &em.homs[candidate.mor(z)].components,
            )?;
            if em.homs[lhs].components != comps {
                return Ok(Audit::rejected(
                    "commutes-with-action",
                    format!(
                        "({}, {})",
                        m_cat.morphism_id(u),
                        y_cat.morphism_id(z)
                    ),
                ));
            }
        }
    }
    let reference = left_module_mediator(gm, em, md)?;
    if candidate.ob_map == reference.ob_map && candidate.mor_map == reference.mor_map {
        Ok(Audit::Agrees)
    } else {
        Err(GmError::invalid(
            "left module uniqueness",
            "a differing candidate satisfied every pinning equation",
        ))
    }
}

/// Build and verify the mediator for a left module; refuses when the module
/// equations fail.
pub fn factorize_left_module(
    gm: &TableGradedMonad,
    em: &EmGraded,
    md: &GradedLeftModule,
) -> Result<(FunctorTable, LawReport)> {
    let pre = validate_left_module(gm, md);
    if !pre.passed() {
        let first = pre.failures().next().unwrap();
        return Err(GmError::precondition(
            "factorize_left_module",
            format!("{} at {:?}", first.axiom, first.witness),
        ));
    }
    let mediator = left_module_mediator(gm, em, md)?;
    let mut report = pre;
    match audit_left_module_candidate(gm, em, md, &mediator)? {
        Audit::Agrees => report.pass("mediator-pinned", witness([("kind", "em-graded")])),
        Audit::Rejected { equation, location } => report.fail(
            "mediator-pinned",
            witness([("equation", equation), ("location", location)]),
        ),
    }
    Ok((mediator, report))
}

/// The universal left module: the EM category acting on itself, with
/// `g = u^T` and `γ_{m,a} = h^a_{m,I}`.
pub fn universal_left_module(gm: &TableGradedMonad, em: &EmGraded) -> Result<GradedLeftModule> {
    let adj = crate::constructions::em_graded::em_graded_adjunction(gm, em)?;
    let m_cat = gm.grading.base().clone();
    let unit = gm.grading.unit();
    let action = StrictActionTable::new(
        gm.grading.require_total()?.clone(),
        em.cat.clone(),
        em.action.clone(),
    );
    let gamma = m_cat
        .objects()
        .flat_map(|m| (0..em.algebras.len()).map(move |a| (m, a)))
        .map(|(m, a)| ((m, a), em.algebras[a].h[&(m, unit)]))
        .collect();
    Ok(GradedLeftModule {
        action,
        g: adj.u,
        gamma,
    })
}

/// The free left module: `M x C` acting by tensoring the first coordinate,
/// with `g` the uncurried monad and `γ = μ`.
pub fn free_left_module(gm: &TableGradedMonad) -> Result<GradedLeftModule> {
    let total: &Arc<StrictMonoidalCategory> = gm.grading.require_total()?;
    let m_cat = gm.grading.base().clone();
    let c = &gm.base;
    let carrier = Arc::new(product_category(&m_cat, c)?);
    let prod2 = Arc::new(product_category(&m_cat, &carrier)?);
    // Γ(m, (p, x)) = (m⊗p, x).
    let mut ob_map = Vec::with_capacity(prod2.object_count());
    for m in m_cat.objects() {
        for p in m_cat.objects() {
            for x in c.objects() {
                ob_map.push(
                    total.ob(m, p) * c.object_count() + x,
                );
            }
        }
    }
    let mut mor_map = Vec::with_capacity(prod2.morphism_count());
    for u in m_cat.morphisms() {
        for v in m_cat.morphisms() {
            for f in c.morphisms() {
                mor_map.push(total.mor(u, v) * c.morphism_count() + f);
            }
        }
    }
    let action_table = FunctorTable {
        src: prod2,
        dst: carrier.clone(),
        ob_map,
        mor_map,
    };
    let action = StrictActionTable::new(total.clone(), carrier.clone(), action_table);
    // g(p, x) = T_p x.
    let g = FunctorTable {
        src: carrier.clone(),
        dst: c.clone(),
        ob_map: m_cat
            .objects()
            .flat_map(|p| c.objects().map(move |x| (p, x)))
            .map(|(p, x)| gm.t[p].ob(x))
            .collect(),
        mor_map: m_cat
            .morphisms()
            .flat_map(|u| c.morphisms().map(move |f| (u, f)))
            .map(|(u, f)| gm.act_table(u, f))
            .collect(),
    };
    let mut gamma = BTreeMap::new();
    for m in m_cat.objects() {
        for p in m_cat.objects() {
            for x in c.objects() {
                let y = p * c.object_count() + x;
                gamma.insert((m, y), gm.mu[&(m, p)].at(x));
            }
        }
    }
    Ok(GradedLeftModule { action, g, gamma })
}

// ---------------------------------------------------------------------------
// Right modules over a graded monad (Kleisli side)
// ---------------------------------------------------------------------------

/// A right module: a strict M-category `(Y, Γ)` (the transposed coaction),
/// a functor `g : C -> Y`, and maps `γ_{c,n} : g(n ⋆ c) -> Γ(n, g c)` in `Y`.
pub struct GradedRightModule {
    pub action: StrictActionTable,
    pub g: FunctorTable,
    pub gamma: BTreeMap<(ObIx, ObIx), MorIx>,
}

impl GradedRightModule {
    fn carrier(&self) -> &Arc<FiniteCategory> {
        &self.action.carrier
    }
}

pub fn validate_right_module(gm: &TableGradedMonad, md: &GradedRightModule) -> LawReport {
    let mut report = md.action.validate();
    report.merge(md.g.validate());
    let m_cat = gm.grading.base().clone();
    let c = &gm.base;
    let y_cat = md.carrier();
    for x in c.objects() {
        for n in m_cat.objects() {
            let w = witness([
                ("c", c.object_id(x).to_string()),
                ("n", m_cat.object_id(n).to_string()),
            ]);
            match md.gamma.get(&(x, n)) {
                None => report.fail("module-typing", w),
                Some(&gcn) => {
                    let ok = y_cat.src(gcn) == md.g.ob(gm.t[n].ob(x))
                        && y_cat.tgt(gcn) == md.action.act_ob(n, md.g.ob(x));
                    report.check(
                        "module-typing",
                        w,
                        (!ok).then(|| witness([("component", y_cat.morphism_id(gcn))])),
                    );
                }
            }
        }
    }
    if !report.passed() {
        return report;
    }
    // Naturality in c and in n.
    for z in c.morphisms() {
        for n in m_cat.objects() {
            let (x, x2) = (c.src(z), c.tgt(z));
            let lhs = y_cat.comp(
                md.action.act_mor(m_cat.identity(n), md.g.mor(z)),
                md.gamma[&(x, n)],
            );
            let rhs = y_cat.comp(md.gamma[&(x2, n)], md.g.mor(gm.t[n].mor(z)));
            report.check(
                "module-naturality",
                witness([
                    ("z", c.morphism_id(z).to_string()),
                    ("n", m_cat.object_id(n).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "square in c fails")])),
            );
        }
    }
    for x in c.objects() {
        for w_m in m_cat.morphisms() {
            let (n, n2) = (m_cat.src(w_m), m_cat.tgt(w_m));
            let lhs = y_cat.comp(
                md.action.act_mor(w_m, y_cat.identity(md.g.ob(x))),
                md.gamma[&(x, n)],
            );
            let rhs = y_cat.comp(md.gamma[&(x, n2)], md.g.mor(gm.tu[w_m].at(x)));
            report.check(
                "module-naturality",
                witness([
                    ("c", c.object_id(x).to_string()),
                    ("w", m_cat.morphism_id(w_m).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "square in n fails")])),
            );
        }
    }
    // Unit: γ_{c,I} ∘ g(η_c) = id.
    let unit = gm.grading.unit();
    for x in c.objects() {
        let gx = md.g.ob(x);
        let lhs = y_cat.comp(md.gamma[&(x, unit)], md.g.mor(gm.eta.at(x)));
        report.check(
            "module-unit",
            witness([("c", c.object_id(x))]),
            (lhs != y_cat.identity(gx)).then(|| witness([("composite", y_cat.morphism_id(lhs))])),
        );
    }
    // Associativity: γ_{c,m⊗n} ∘ g(μ_{m,n,c}) = Γ(m, γ_{c,n}) ∘ γ_{n⋆c, m}.
    let total = gm.grading.require_total().expect("module needs totality");
    for x in c.objects() {
        for m in m_cat.objects() {
            for n in m_cat.objects() {
                let lhs = y_cat.comp(
                    md.gamma[&(x, total.ob(m, n))],
                    md.g.mor(gm.mu[&(m, n)].at(x)),
                );
                let rhs = y_cat.comp(
                    md.action.act_mor(m_cat.identity(m), md.gamma[&(x, n)]),
                    md.gamma[&(gm.t[n].ob(x), m)],
                );
                report.check(
                    "module-associativity",
                    witness([
                        ("c", c.object_id(x).to_string()),
                        ("m", m_cat.object_id(m).to_string()),
                        ("n", m_cat.object_id(n).to_string()),
                    ]),
                    (lhs != rhs).then(|| witness([("detail", "square fails")])),
                );
            }
        }
    }
    report
}

/// The closed-form mediator `g̃(m,c) = Γ(m, g c)`, on classes
/// `g̃[n,v,f] = Γ(v, id) ∘ Γ(m, γ_{c',n}) ∘ Γ(m, g f)`.
pub fn right_module_mediator(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    md: &GradedRightModule,
) -> Result<FunctorTable> {
    let m_cat = gm.grading.base().clone();
    let y_cat = md.carrier().clone();
    let mut ob_map = Vec::with_capacity(mat.objects.len());
    for (grade, x) in &mat.objects {
        ob_map.push(md.action.act_ob(*grade, md.g.ob(*x)));
    }
    let mut mor_map = Vec::with_capacity(mat.mors.len());
    for &(si, ti, class) in &mat.mors {
        let hom = kl.hom_set(&mat.objects[si], &mat.objects[ti])?;
        // The value must be representative-independent; fold over all
        // members and insist they agree.
        let mut value: Option<MorIx> = None;
        for &raw_ix in &hom.classes[class] {
            let r = &hom.raws[raw_ix];
            let (grade, _x) = &mat.objects[si];
            let (_gp, xp) = &mat.objects[ti];
            let id_m = m_cat.identity(*grade);
            let step1 = md.action.act_mor(id_m, md.g.mor(r.f));
            let step2 = md.action.act_mor(id_m, md.gamma[&(*xp, r.n)]);
            let step3 = md
                .action
                .act_mor(r.v, y_cat.identity(md.g.ob(*xp)));
            let composite = y_cat.comp(step3, y_cat.comp(step2, step1));
            match value {
                None => value = Some(composite),
                Some(prev) if prev != composite => {
                    return Err(GmError::invalid(
                        "right module mediator",
                        "value not representative-independent",
                    ))
                }
                _ => {}
            }
        }
        mor_map.push(value.expect("classes are nonempty"));
    }
    Ok(FunctorTable {
        src: mat.cat.clone(),
        dst: y_cat,
        ob_map,
        mor_map,
    })
}

/// Audit a candidate mediator for the Kleisli kind.
pub fn audit_right_module_candidate(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    md: &GradedRightModule,
    candidate: &FunctorTable,
) -> Result<Audit> {
    let m_cat = gm.grading.base().clone();
    if !candidate.validate().passed() {
        return Ok(Audit::rejected("functoriality", "candidate is not a functor"));
    }
    // factors-through-free: g̃ ∘ f_T = g.
    for x in gm.base.objects() {
        let i = mat.find_ob(&(gm.grading.unit(), x))?;
        if candidate.ob(i) != md.g.ob(x) {
            return Ok(Audit::rejected(
                "factors-through-free",
                format!("object {}", gm.base.object_id(x)),
            ));
        }
    }
    for f in gm.base.morphisms() {
        let cls = kl.free_mor(&f)?;
        let ix = mat.find_kl_mor(&cls)?;
        if candidate.mor(ix) != md.g.mor(f) {
            return Ok(Audit::rejected(
                "factors-through-free",
                format!("morphism {}", gm.base.morphism_id(f)),
            ));
        }
    }
    // restricts-counit: g̃(ε_{(I,c),n}) = γ_{c,n}.
    for x in gm.base.objects() {
        for n in m_cat.objects() {
            let cls = kl.counit_at(n, &(gm.grading.unit(), x))?;
            let ix = mat.find_kl_mor(&cls)?;
            if candidate.mor(ix) != md.gamma[&(x, n)] {
                return Ok(Audit::rejected(
                    "restricts-counit",
                    format!("({}, {})", gm.base.object_id(x), m_cat.object_id(n)),
                ));
            }
        }
    }
    // commutes-with-action: g̃(u ⊙ h) = Γ(u, g̃ h).
    for u in m_cat.morphisms() {
        for (ix, &(si, ti, class)) in mat.mors.iter().enumerate() {
            let f = KlMor::<TableBackend> {
                src: mat.objects[si],
                tgt: mat.objects[ti],
                class,
            };
            let acted = kl.act(u, &f)?;
            let acted_ix = mat.find_kl_mor(&acted)?;
            let lhs = candidate.mor(acted_ix);
            let rhs = md.action.act_mor(u, candidate.mor(ix));
            if lhs != rhs {
                return Ok(Audit::rejected(
                    "commutes-with-action",
                    format!("({}, class #{class})", m_cat.morphism_id(u)),
                ));
            }
        }
    }
    let reference = right_module_mediator(gm, kl, mat, md)?;
    if candidate.ob_map == reference.ob_map && candidate.mor_map == reference.mor_map {
        Ok(Audit::Agrees)
    } else {
        Err(GmError::invalid(
            "right module uniqueness",
            "a differing candidate satisfied every pinning equation",
        ))
    }
}

pub fn factorize_right_module(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    md: &GradedRightModule,
) -> Result<(FunctorTable, LawReport)> {
    let pre = validate_right_module(gm, md);
    if !pre.passed() {
        let first = pre.failures().next().unwrap();
        return Err(GmError::precondition(
            "factorize_right_module",
            format!("{} at {:?}", first.axiom, first.witness),
        ));
    }
    let mediator = right_module_mediator(gm, kl, mat, md)?;
    let mut report = pre;
    match audit_right_module_candidate(gm, kl, mat, md, &mediator)? {
        Audit::Agrees => report.pass("mediator-pinned", witness([("kind", "kl-graded")])),
        Audit::Rejected { equation, location } => report.fail(
            "mediator-pinned",
            witness([("equation", equation), ("location", location)]),
        ),
    }
    Ok((mediator, report))
}

/// The universal right module: the Kleisli category coacting on itself,
/// `g = f_T`, `γ_{c,n}` the counit classes.
pub fn universal_right_module(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
) -> Result<GradedRightModule> {
    let m_cat = gm.grading.base().clone();
    let unit = gm.grading.unit();
    let action = StrictActionTable::new(
        gm.grading.require_total()?.clone(),
        mat.cat.clone(),
        mat.action.clone(),
    );
    let mut g_ob = Vec::with_capacity(gm.base.object_count());
    for x in gm.base.objects() {
        g_ob.push(mat.find_ob(&(unit, x))?);
    }
    let mut g_mor = Vec::with_capacity(gm.base.morphism_count());
    for f in gm.base.morphisms() {
        g_mor.push(mat.find_kl_mor(&kl.free_mor(&f)?)?);
    }
    let g = FunctorTable {
        src: gm.base.clone(),
        dst: mat.cat.clone(),
        ob_map: g_ob,
        mor_map: g_mor,
    };
    let mut gamma = BTreeMap::new();
    for x in gm.base.objects() {
        for n in m_cat.objects() {
            gamma.insert(
                (x, n),
                mat.find_kl_mor(&kl.counit_at(n, &(unit, x))?)?,
            );
        }
    }
    Ok(GradedRightModule { action, g, gamma })
}

// ---------------------------------------------------------------------------
// Left modules over an indexed monad (Eilenberg–Moore side)
// ---------------------------------------------------------------------------

/// A module over an indexed monad: a functor `Γ : Y -> B` (the coaction's
/// only datum), `g : Y -> C`, and per-object maps `γ_y : T_{Γy}(g y) -> g y`.
pub struct IndexedLeftModule {
    pub proj: FunctorTable,
    pub g: FunctorTable,
    pub gamma: Vec<MorIx>,
}

pub fn validate_indexed_module(im: &TableIndexedMonad, md: &IndexedLeftModule) -> LawReport {
    let mut report = md.proj.validate();
    report.merge(md.g.validate());
    let c = &im.base;
    let y_cat = &md.proj.src;
    for y in y_cat.objects() {
        let b = md.proj.ob(y);
        let gy = md.g.ob(y);
        let gamma = md.gamma[y];
        let w = witness([("y", y_cat.object_id(y))]);
        let ok = c.src(gamma) == im.t[b].ob(gy) && c.tgt(gamma) == gy;
        report.check(
            "module-typing",
            w.clone(),
            (!ok).then(|| witness([("component", c.morphism_id(gamma))])),
        );
        if !ok {
            continue;
        }
        let unit_ok = c.comp(gamma, im.eta[b].at(gy)) == c.identity(gy);
        report.check(
            "module-unit",
            w.clone(),
            (!unit_ok).then(|| witness([("detail", "unit triangle fails")])),
        );
        let lhs = c.comp(gamma, im.mu[b].at(gy));
        let rhs = c.comp(gamma, im.t[b].mor(gamma));
        report.check(
            "module-associativity",
            w,
            (lhs != rhs).then(|| witness([("detail", "associativity square fails")])),
        );
    }
    for z in y_cat.morphisms() {
        let (y, y2) = (y_cat.src(z), y_cat.tgt(z));
        let u = md.proj.mor(z);
        let action = c.comp(im.tu[u].at(md.g.ob(y2)), im.t[md.proj.ob(y)].mor(md.g.mor(z)));
        let lhs = c.comp(md.g.mor(z), md.gamma[y]);
        let rhs = c.comp(md.gamma[y2], action);
        report.check(
            "module-naturality",
            witness([("z", y_cat.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    report
}

/// The closed-form mediator `g̃(y) = (Γ y, γ_y)`, `g̃(z) = (Γ z, g z)`.
pub fn indexed_module_mediator(
    im: &TableIndexedMonad,
    em: &EmIndexed,
    md: &IndexedLeftModule,
) -> Result<FunctorTable> {
    let y_cat = &md.proj.src;
    let mut ob_map = Vec::with_capacity(y_cat.object_count());
    for y in y_cat.objects() {
        let ob = crate::constructions::em_indexed::IndexedEmObject {
            b: md.proj.ob(y),
            carrier: md.g.ob(y),
            chi: md.gamma[y],
        };
        ob_map.push(em.find_object(&ob)?);
    }
    let mut mor_map = Vec::with_capacity(y_cat.morphism_count());
    for z in y_cat.morphisms() {
        mor_map.push(em.find_morphism(
            ob_map[y_cat.src(z)],
            ob_map[y_cat.tgt(z)],
            md.proj.mor(z),
            md.g.mor(z),
        )?);
    }
    let _ = im;
    Ok(FunctorTable {
        src: y_cat.clone(),
        dst: em.cat.clone(),
        ob_map,
        mor_map,
    })
}

pub fn audit_indexed_module_candidate(
    im: &TableIndexedMonad,
    em: &EmIndexed,
    md: &IndexedLeftModule,
    candidate: &FunctorTable,
) -> Result<Audit> {
    let y_cat = &md.proj.src;
    if !candidate.validate().passed() {
        return Ok(Audit::rejected("functoriality", "candidate is not a functor"));
    }
    for y in y_cat.objects() {
        let ob = &em.objects[candidate.ob(y)];
        if ob.b != md.proj.ob(y) {
            return Ok(Audit::rejected(
                "projects-to-index",
                format!("object {}", y_cat.object_id(y)),
            ));
        }
        if ob.carrier != md.g.ob(y) {
            return Ok(Audit::rejected(
                "factors-through-forgetful",
                format!("object {}", y_cat.object_id(y)),
            ));
        }
        if ob.chi != md.gamma[y] {
            return Ok(Audit::rejected(
                "restricts-counit",
                format!("object {}", y_cat.object_id(y)),
            ));
        }
    }
    for z in y_cat.morphisms() {
        let m = &em.morphisms[candidate.mor(z)];
        if m.u != md.proj.mor(z) {
            return Ok(Audit::rejected(
                "projects-to-index",
                format!("morphism {}", y_cat.morphism_id(z)),
            ));
        }
        if m.h != md.g.mor(z) {
            return Ok(Audit::rejected(
                "factors-through-forgetful",
                format!("morphism {}", y_cat.morphism_id(z)),
            ));
        }
    }
    let reference = indexed_module_mediator(im, em, md)?;
    if candidate.ob_map == reference.ob_map && candidate.mor_map == reference.mor_map {
        Ok(Audit::Agrees)
    } else {
        Err(GmError::invalid(
            "indexed module uniqueness",
            "a differing candidate satisfied every pinning equation",
        ))
    }
}

pub fn factorize_indexed_module(
    im: &TableIndexedMonad,
    em: &EmIndexed,
    md: &IndexedLeftModule,
) -> Result<(FunctorTable, LawReport)> {
    let pre = validate_indexed_module(im, md);
    if !pre.passed() {
        let first = pre.failures().next().unwrap();
        return Err(GmError::precondition(
            "factorize_indexed_module",
            format!("{} at {:?}", first.axiom, first.witness),
        ));
    }
    let mediator = indexed_module_mediator(im, em, md)?;
    let mut report = pre;
    match audit_indexed_module_candidate(im, em, md, &mediator)? {
        Audit::Agrees => report.pass("mediator-pinned", witness([("kind", "em-indexed")])),
        Audit::Rejected { equation, location } => report.fail(
            "mediator-pinned",
            witness([("equation", equation), ("location", location)]),
        ),
    }
    Ok((mediator, report))
}

/// The universal indexed module: the total category over itself.
pub fn universal_indexed_module(em: &EmIndexed) -> IndexedLeftModule {
    IndexedLeftModule {
        proj: em.pi0.clone(),
        g: em.u.clone(),
        gamma: em.objects.iter().map(|o| o.chi).collect(),
    }
}

/// The free indexed module: `B x C` with `g` the uncurried family and
/// `γ = μ`.
pub fn free_indexed_module(im: &TableIndexedMonad) -> Result<IndexedLeftModule> {
    let b_cat = &im.index;
    let c = &im.base;
    let carrier = Arc::new(product_category(b_cat, c)?);
    let proj = FunctorTable {
        src: carrier.clone(),
        dst: b_cat.clone(),
        ob_map: carrier.objects().map(|o| o / c.object_count()).collect(),
        mor_map: carrier
            .morphisms()
            .map(|m| m / c.morphism_count())
            .collect(),
    };
    let g = FunctorTable {
        src: carrier.clone(),
        dst: c.clone(),
        ob_map: b_cat
            .objects()
            .flat_map(|b| c.objects().map(move |x| (b, x)))
            .map(|(b, x)| im.t[b].ob(x))
            .collect(),
        mor_map: b_cat
            .morphisms()
            .flat_map(|u| c.morphisms().map(move |f| (u, f)))
            .map(|(u, f)| c.comp(im.tu[u].at(c.tgt(f)), im.t[b_cat.src(u)].mor(f)))
            .collect(),
    };
    let gamma = b_cat
        .objects()
        .flat_map(|b| c.objects().map(move |x| (b, x)))
        .map(|(b, x)| im.mu[b].at(x))
        .collect();
    Ok(IndexedLeftModule { proj, g, gamma })
}

// ---------------------------------------------------------------------------
// Module morphisms (the 2-dimensional aspect)
// ---------------------------------------------------------------------------

/// A morphism of left modules: a strict-action-preserving functor between
/// the carriers plus components `ω_y : g y -> g'(Ω y)`.
pub struct LeftModuleMorphism {
    pub omega_functor: FunctorTable,
    pub omega: Vec<MorIx>,
}

/// Validate the compatibility equations of a left-module morphism.
pub fn validate_left_module_morphism(
    gm: &TableGradedMonad,
    src: &GradedLeftModule,
    tgt: &GradedLeftModule,
    mm: &LeftModuleMorphism,
) -> LawReport {
    let mut report = mm.omega_functor.validate();
    let m_cat = gm.grading.base().clone();
    let c = &gm.base;
    let y_cat = src.carrier();
    // Action compatibility: Ω(Γ(m, y)) = Γ'(m, Ω y).
    for m in m_cat.objects() {
        for y in y_cat.objects() {
            let lhs = mm.omega_functor.ob(src.action.act_ob(m, y));
            let rhs = tgt.action.act_ob(m, mm.omega_functor.ob(y));
            report.check(
                "morphism-action-compat",
                witness([
                    ("m", m_cat.object_id(m).to_string()),
                    ("y", y_cat.object_id(y).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "object actions differ")])),
            );
        }
    }
    for u in m_cat.morphisms() {
        for z in y_cat.morphisms() {
            let lhs = mm.omega_functor.mor(src.action.act_mor(u, z));
            let rhs = tgt.action.act_mor(u, mm.omega_functor.mor(z));
            report.check(
                "morphism-action-compat",
                witness([
                    ("u", m_cat.morphism_id(u).to_string()),
                    ("z", y_cat.morphism_id(z).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "morphism actions differ")])),
            );
        }
    }
    // Naturality of ω.
    for z in y_cat.morphisms() {
        let (y, y2) = (y_cat.src(z), y_cat.tgt(z));
        let lhs = c.comp(tgt.g.mor(mm.omega_functor.mor(z)), mm.omega[y]);
        let rhs = c.comp(mm.omega[y2], src.g.mor(z));
        report.check(
            "morphism-naturality",
            witness([("z", y_cat.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    // Module compatibility: γ'_{m,Ωy} ∘ T_m(ω_y) = ω_{Γ(m,y)} ∘ γ_{m,y}.
    for m in m_cat.objects() {
        for y in y_cat.objects() {
            let lhs = c.comp(
                tgt.gamma[&(m, mm.omega_functor.ob(y))],
                gm.t[m].mor(mm.omega[y]),
            );
            let rhs = c.comp(mm.omega[src.action.act_ob(m, y)], src.gamma[&(m, y)]);
            report.check(
                "morphism-module-compat",
                witness([
                    ("m", m_cat.object_id(m).to_string()),
                    ("y", y_cat.object_id(y).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "square fails")])),
            );
        }
    }
    report
}

/// The mediating 2-cell of a left-module morphism: per `y`, the EM morphism
/// from `g̃(y)` to `g̃'(Ω y)` with components `(ω_{Γ(n,y)})_n`; verified to
/// restrict to `ω` at the unit and to commute with the action.
pub fn factorize_left_module_morphism(
    gm: &TableGradedMonad,
    em: &EmGraded,
    src: &GradedLeftModule,
    tgt: &GradedLeftModule,
    mm: &LeftModuleMorphism,
) -> Result<(Vec<MorIx>, LawReport)> {
    let mut report = validate_left_module_morphism(gm, src, tgt, mm);
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(GmError::precondition(
            "factorize_left_module_morphism",
            format!("{} at {:?}", first.axiom, first.witness),
        ));
    }
    let m_cat = gm.grading.base().clone();
    let y_cat = src.carrier().clone();
    let g_src = left_module_mediator(gm, em, src)?;
    let g_tgt = left_module_mediator(gm, em, tgt)?;
    let mut out = Vec::with_capacity(y_cat.object_count());
    for y in y_cat.objects() {
        let components: Vec<MorIx> = m_cat
            .objects()
            .map(|n| mm.omega[src.action.act_ob(n, y)])
            .collect();
        let hom = em.find_hom(
            g_src.ob(y),
            g_tgt.ob(mm.omega_functor.ob(y)),
            &components,
        )?;
        out.push(hom);
    }
    // restricts-to-base: the unit component of ω̃_y is ω_y.
    let unit = gm.grading.unit();
    for y in y_cat.objects() {
        let got = em.homs[out[y]].components[unit];
        report.check(
            "restricts-to-base",
            witness([("y", y_cat.object_id(y))]),
            (got != mm.omega[y]).then(|| witness([("detail", "unit component differs")])),
        );
    }
    // Naturality of ω̃ (2-cell): ω̃_{y'} ∘ g̃(z) = g̃'(Ω z) ∘ ω̃_y.
    for z in y_cat.morphisms() {
        let (y, y2) = (y_cat.src(z), y_cat.tgt(z));
        let lhs = em.cat.comp(out[y2], g_src.mor(z));
        let rhs = em.cat.comp(g_tgt.mor(mm.omega_functor.mor(z)), out[y]);
        report.check(
            "mediator-naturality",
            witness([("z", y_cat.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    Ok((out, report))
}

/// Audit a candidate mediating 2-cell: the pinning equations are the unit
/// restriction and compatibility with the strict action.
pub fn audit_left_module_morphism_candidate(
    gm: &TableGradedMonad,
    em: &EmGraded,
    src: &GradedLeftModule,
    mm: &LeftModuleMorphism,
    candidate: &[MorIx],
) -> Result<Audit> {
    let m_cat = gm.grading.base().clone();
    let y_cat = src.carrier().clone();
    let unit = gm.grading.unit();
    let total = gm.grading.require_total()?;
    for y in y_cat.objects() {
        if em.homs[candidate[y]].components[unit] != mm.omega[y] {
            return Ok(Audit::rejected(
                "restricts-to-base",
                format!("object {}", y_cat.object_id(y)),
            ));
        }
    }
    // 2-cell condition: ω̃_{Γ(n,y)} components agree with (n ⊛ ω̃_y):
    // component at k of the acted morphism is the component at k⊗n.
    for n in m_cat.objects() {
        for y in y_cat.objects() {
            let acted = src.action.act_ob(n, y);
            for k in m_cat.objects() {
                let lhs = em.homs[candidate[acted]].components[k];
                let rhs = em.homs[candidate[y]].components[total.ob(k, n)];
                if lhs != rhs {
                    return Ok(Audit::rejected(
                        "commutes-with-action",
                        format!(
                            "grade {} at {}",
                            m_cat.object_id(n),
                            y_cat.object_id(y)
                        ),
                    ));
                }
            }
        }
    }
    Ok(Audit::Agrees)
}

/// A morphism of right modules: `Ω : Y' -> Y` preserving the coaction, with
/// components `ω_c : g c -> Ω(g' c)`.
pub struct RightModuleMorphism {
    pub omega_functor: FunctorTable,
    pub omega: Vec<MorIx>,
}

pub fn validate_right_module_morphism(
    gm: &TableGradedMonad,
    src: &GradedRightModule,
    tgt: &GradedRightModule,
    mm: &RightModuleMorphism,
) -> LawReport {
    let mut report = mm.omega_functor.validate();
    let m_cat = gm.grading.base().clone();
    let c = &gm.base;
    let y_cat = src.carrier();
    let yp_cat = tgt.carrier();
    // Ω : Y' -> Y commutes with the coactions.
    for m in m_cat.objects() {
        for y in yp_cat.objects() {
            let lhs = mm.omega_functor.ob(tgt.action.act_ob(m, y));
            let rhs = src.action.act_ob(m, mm.omega_functor.ob(y));
            report.check(
                "morphism-action-compat",
                witness([
                    ("m", m_cat.object_id(m).to_string()),
                    ("y", yp_cat.object_id(y).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "object actions differ")])),
            );
        }
    }
    for u in m_cat.morphisms() {
        for z in yp_cat.morphisms() {
            let lhs = mm.omega_functor.mor(tgt.action.act_mor(u, z));
            let rhs = src.action.act_mor(u, mm.omega_functor.mor(z));
            report.check(
                "morphism-action-compat",
                witness([
                    ("u", m_cat.morphism_id(u).to_string()),
                    ("z", yp_cat.morphism_id(z).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "morphism actions differ")])),
            );
        }
    }
    // ω natural in c.
    for z in c.morphisms() {
        let (x, x2) = (c.src(z), c.tgt(z));
        let lhs = y_cat.comp(mm.omega_functor.mor(tgt.g.mor(z)), mm.omega[x]);
        let rhs = y_cat.comp(mm.omega[x2], src.g.mor(z));
        report.check(
            "morphism-naturality",
            witness([("z", c.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    // Module compatibility: Ω(γ'_{c,n}) ∘ ω_{n⋆c} = Γ(n, ω_c) ∘ γ_{c,n}.
    for x in c.objects() {
        for n in m_cat.objects() {
            let lhs = y_cat.comp(
                mm.omega_functor.mor(tgt.gamma[&(x, n)]),
                mm.omega[gm.t[n].ob(x)],
            );
            let rhs = y_cat.comp(
                src.action.act_mor(m_cat.identity(n), mm.omega[x]),
                src.gamma[&(x, n)],
            );
            report.check(
                "morphism-module-compat",
                witness([
                    ("c", c.object_id(x).to_string()),
                    ("n", m_cat.object_id(n).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "square fails")])),
            );
        }
    }
    report
}

/// Mediating 2-cell on the Kleisli side: at `(m, c)` the morphism
/// `Γ(m, ω_c) : g̃(m,c) -> Ω(g̃'(m,c))`, restricting to `ω` at `(I, c)`.
pub fn factorize_right_module_morphism(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    src: &GradedRightModule,
    tgt: &GradedRightModule,
    mm: &RightModuleMorphism,
) -> Result<(Vec<MorIx>, LawReport)> {
    let mut report = validate_right_module_morphism(gm, src, tgt, mm);
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(GmError::precondition(
            "factorize_right_module_morphism",
            format!("{} at {:?}", first.axiom, first.witness),
        ));
    }
    let m_cat = gm.grading.base().clone();
    let y_cat = src.carrier().clone();
    let g_src = right_module_mediator(gm, kl, mat, src)?;
    let g_tgt = right_module_mediator(gm, kl, mat, tgt)?;
    let mut out = Vec::with_capacity(mat.objects.len());
    for (i, (grade, x)) in mat.objects.iter().enumerate() {
        let comp = src.action.act_mor(m_cat.identity(*grade), mm.omega[*x]);
        let _ = i;
        out.push(comp);
    }
    // restricts-to-base at (I, c).
    let unit = gm.grading.unit();
    for x in gm.base.objects() {
        let i = mat.find_ob(&(unit, x))?;
        report.check(
            "restricts-to-base",
            witness([("c", gm.base.object_id(x))]),
            (out[i] != mm.omega[x]).then(|| witness([("detail", "unit component differs")])),
        );
    }
    // Naturality over every Kleisli morphism:
    // ω̃_{tgt} ∘ g̃(h) = Ω(g̃'(h)) ∘ ω̃_{src}.
    for (ix, &(si, ti, _)) in mat.mors.iter().enumerate() {
        let lhs = y_cat.comp(out[ti], g_src.mor(ix));
        let rhs = y_cat.comp(mm.omega_functor.mor(g_tgt.mor(ix)), out[si]);
        report.check(
            "mediator-naturality",
            witness([("morphism", mat.cat.morphism_id(ix))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    Ok((out, report))
}

pub fn audit_right_module_morphism_candidate(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    src: &GradedRightModule,
    mm: &RightModuleMorphism,
    candidate: &[MorIx],
) -> Result<Audit> {
    let _ = kl;
    let m_cat = gm.grading.base().clone();
    let unit = gm.grading.unit();
    for x in gm.base.objects() {
        let i = mat.find_ob(&(unit, x))?;
        if candidate[i] != mm.omega[x] {
            return Ok(Audit::rejected(
                "restricts-to-base",
                format!("object {}", gm.base.object_id(x)),
            ));
        }
    }
    // 2-cell condition: ω̃_{l⊙(m,c)} = Γ(l, ω̃_{(m,c)}).
    for l in m_cat.objects() {
        for (i, key) in mat.objects.iter().enumerate() {
            let total = gm.grading.require_total()?;
            let acted = mat.find_ob(&(total.ob(l, key.0), key.1))?;
            let lhs = candidate[acted];
            let rhs = src.action.act_mor(m_cat.identity(l), candidate[i]);
            if lhs != rhs {
                return Ok(Audit::rejected(
                    "commutes-with-action",
                    format!("grade {} at object #{i}", m_cat.object_id(l)),
                ));
            }
        }
    }
    Ok(Audit::Agrees)
}

/// A morphism of indexed modules: `Ω : Y' -> Y` over the index, with
/// components `ω_y : g(Ω y) -> g'(y)`.
pub struct IndexedModuleMorphism {
    pub omega_functor: FunctorTable,
    pub omega: Vec<MorIx>,
}

pub fn validate_indexed_module_morphism(
    im: &TableIndexedMonad,
    src: &IndexedLeftModule,
    tgt: &IndexedLeftModule,
    mm: &IndexedModuleMorphism,
) -> LawReport {
    let mut report = mm.omega_functor.validate();
    let c = &im.base;
    let yp_cat = &tgt.proj.src;
    // Γ ∘ Ω = Γ'.
    for y in yp_cat.objects() {
        let lhs = src.proj.ob(mm.omega_functor.ob(y));
        let rhs = tgt.proj.ob(y);
        report.check(
            "morphism-action-compat",
            witness([("y", yp_cat.object_id(y))]),
            (lhs != rhs).then(|| witness([("detail", "projection differs")])),
        );
    }
    for z in yp_cat.morphisms() {
        let lhs = src.proj.mor(mm.omega_functor.mor(z));
        let rhs = tgt.proj.mor(z);
        report.check(
            "morphism-action-compat",
            witness([("z", yp_cat.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "projection differs")])),
        );
    }
    // ω natural.
    for z in yp_cat.morphisms() {
        let (y, y2) = (yp_cat.src(z), yp_cat.tgt(z));
        let lhs = c.comp(tgt.g.mor(z), mm.omega[y]);
        let rhs = c.comp(mm.omega[y2], src.g.mor(mm.omega_functor.mor(z)));
        report.check(
            "morphism-naturality",
            witness([("z", yp_cat.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    // ω_y ∘ γ_{Ω y} = γ'_y ∘ T_{Γ'y}(ω_y).
    for y in yp_cat.objects() {
        let b = tgt.proj.ob(y);
        let lhs = c.comp(mm.omega[y], src.gamma[mm.omega_functor.ob(y)]);
        let rhs = c.comp(tgt.gamma[y], im.t[b].mor(mm.omega[y]));
        report.check(
            "morphism-module-compat",
            witness([("y", yp_cat.object_id(y))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    report
}

/// Mediating 2-cell on the indexed side: per `y`, the EM morphism
/// `(id_{Γ'y}, ω_y) : g̃(Ω y) -> g̃'(y)`.
pub fn factorize_indexed_module_morphism(
    im: &TableIndexedMonad,
    em: &EmIndexed,
    src: &IndexedLeftModule,
    tgt: &IndexedLeftModule,
    mm: &IndexedModuleMorphism,
) -> Result<(Vec<MorIx>, LawReport)> {
    let mut report = validate_indexed_module_morphism(im, src, tgt, mm);
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(GmError::precondition(
            "factorize_indexed_module_morphism",
            format!("{} at {:?}", first.axiom, first.witness),
        ));
    }
    let yp_cat = &tgt.proj.src;
    let g_src = indexed_module_mediator(im, em, src)?;
    let g_tgt = indexed_module_mediator(im, em, tgt)?;
    let mut out = Vec::with_capacity(yp_cat.object_count());
    for y in yp_cat.objects() {
        let b = tgt.proj.ob(y);
        out.push(em.find_morphism(
            g_src.ob(mm.omega_functor.ob(y)),
            g_tgt.ob(y),
            im.index.identity(b),
            mm.omega[y],
        )?);
    }
    // restricts-to-base: u^T of the mediator is ω.
    for y in yp_cat.objects() {
        let got = em.morphisms[out[y]].h;
        report.check(
            "restricts-to-base",
            witness([("y", yp_cat.object_id(y))]),
            (got != mm.omega[y]).then(|| witness([("detail", "forgetful image differs")])),
        );
    }
    // 2-cell naturality.
    for z in yp_cat.morphisms() {
        let (y, y2) = (yp_cat.src(z), yp_cat.tgt(z));
        let lhs = em.cat.comp(out[y2], g_src.mor(mm.omega_functor.mor(z)));
        let rhs = em.cat.comp(g_tgt.mor(z), out[y]);
        report.check(
            "mediator-naturality",
            witness([("z", yp_cat.morphism_id(z))]),
            (lhs != rhs).then(|| witness([("detail", "square fails")])),
        );
    }
    Ok((out, report))
}

pub fn audit_indexed_module_morphism_candidate(
    em: &EmIndexed,
    tgt: &IndexedLeftModule,
    mm: &IndexedModuleMorphism,
    candidate: &[MorIx],
) -> Result<Audit> {
    let yp_cat = &tgt.proj.src;
    for y in yp_cat.objects() {
        let m = &em.morphisms[candidate[y]];
        if m.h != mm.omega[y] {
            return Ok(Audit::rejected(
                "restricts-to-base",
                format!("object {}", yp_cat.object_id(y)),
            ));
        }
        let b = tgt.proj.ob(y);
        if m.u != em.pi0.dst.identity(b) {
            return Ok(Audit::rejected(
                "projects-to-identity",
                format!("object {}", yp_cat.object_id(y)),
            ));
        }
    }
    Ok(Audit::Agrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::em_graded::em_graded_build;
    use crate::constructions::em_indexed::em_indexed_build;
    use crate::constructions::kl_graded::{kl_build, kl_materialize};
    use crate::instances::{constant_flip_family, m2_collapse_monad, z2_action_monad};

    #[test]
    fn universal_left_module_factors_as_identity() {
        for gm in [z2_action_monad(), m2_collapse_monad()] {
            let em = em_graded_build(&gm).unwrap();
            let md = universal_left_module(&gm, &em).unwrap();
            let (mediator, report) = factorize_left_module(&gm, &em, &md).unwrap();
            assert!(report.passed(), "{}:\n{report}", gm.name);
            assert_eq!(mediator.ob_map, FunctorTable::identity(&em.cat).ob_map);
            assert_eq!(mediator.mor_map, FunctorTable::identity(&em.cat).mor_map);
        }
    }

    #[test]
    fn free_left_module_factors_as_free_functor() {
        for gm in [z2_action_monad(), m2_collapse_monad()] {
            let em = em_graded_build(&gm).unwrap();
            let adj = crate::constructions::em_graded::em_graded_adjunction(&gm, &em).unwrap();
            let md = free_left_module(&gm).unwrap();
            let (mediator, report) = factorize_left_module(&gm, &em, &md).unwrap();
            assert!(report.passed(), "{}:\n{report}", gm.name);
            assert_eq!(mediator.ob_map, adj.f.ob_map, "{}", gm.name);
            assert_eq!(mediator.mor_map, adj.f.mor_map, "{}", gm.name);
        }
    }

    #[test]
    fn broken_left_module_refused() {
        let gm = m2_collapse_monad();
        let em = em_graded_build(&gm).unwrap();
        let mut md = universal_left_module(&gm, &em).unwrap();
        // Break an associativity instance by replacing one γ with a wrong
        // (but well-typed) morphism if an alternative exists.
        let y_cat = md.carrier().clone();
        let m_cat = gm.grading.base().clone();
        let mut broke = false;
        'outer: for m in m_cat.objects() {
            for y in y_cat.objects() {
                let current = md.gamma[&(m, y)];
                let alts = gm
                    .base
                    .hom(gm.base.src(current), gm.base.tgt(current));
                if let Some(&alt) = alts.iter().find(|&&a| a != current) {
                    md.gamma.insert((m, y), alt);
                    broke = true;
                    break 'outer;
                }
            }
        }
        assert!(broke, "instance has no alternative morphism to break with");
        let err = factorize_left_module(&gm, &em, &md).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("module-"),
            "refusal names a module equation: {msg}"
        );
    }

    #[test]
    fn universal_right_module_factors_as_identity() {
        for gm in [z2_action_monad(), m2_collapse_monad()] {
            let universe: Vec<usize> = gm.base.objects().collect();
            let kl = kl_build(&gm, universe, 1 << 16).unwrap();
            let mat = kl_materialize(&kl).unwrap();
            let md = universal_right_module(&gm, &kl, &mat).unwrap();
            let (mediator, report) = factorize_right_module(&gm, &kl, &mat, &md).unwrap();
            assert!(report.passed(), "{}:\n{report}", gm.name);
            assert_eq!(mediator.ob_map, FunctorTable::identity(&mat.cat).ob_map);
            assert_eq!(mediator.mor_map, FunctorTable::identity(&mat.cat).mor_map);
        }
    }

    #[test]
    fn universal_indexed_module_factors_as_identity() {
        let im = constant_flip_family();
        let em = em_indexed_build(&im).unwrap();
        let md = universal_indexed_module(&em);
        let (mediator, report) = factorize_indexed_module(&im, &em, &md).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(mediator.ob_map, FunctorTable::identity(&em.cat).ob_map);
    }

    #[test]
    fn free_indexed_module_factors_as_free_functor() {
        let im = constant_flip_family();
        let em = em_indexed_build(&im).unwrap();
        let md = free_indexed_module(&im).unwrap();
        let (mediator, report) = factorize_indexed_module(&im, &em, &md).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(mediator.ob_map, em.f.ob_map);
        assert_eq!(mediator.mor_map, em.f.mor_map);
    }

    #[test]
    fn identity_module_morphism_mediates_as_identity() {
        let gm = m2_collapse_monad();
        let em = em_graded_build(&gm).unwrap();
        let md = universal_left_module(&gm, &em).unwrap();
        let mm = LeftModuleMorphism {
            omega_functor: FunctorTable::identity(&em.cat),
            omega: em
                .algebras
                .iter()
                .enumerate()
                .map(|(a, _)| gm.base.identity(md.g.ob(a)))
                .collect(),
        };
        let (mediator, report) =
            factorize_left_module_morphism(&gm, &em, &md, &md, &mm).unwrap();
        assert!(report.passed(), "{report}");
        for (y, &m) in mediator.iter().enumerate() {
            assert_eq!(m, em.cat.identity(y));
        }
        let audit = audit_left_module_morphism_candidate(&gm, &em, &md, &mm, &mediator).unwrap();
        assert_eq!(audit, Audit::Agrees);
    }

    #[test]
    fn broken_module_morphism_refused() {
        let gm = m2_collapse_monad();
        let em = em_graded_build(&gm).unwrap();
        let md = universal_left_module(&gm, &em).unwrap();
        // ω with one non-identity component where an alternative exists:
        // naturality or module compatibility must catch it.
        let mut omega: Vec<usize> = md
            .action
            .carrier
            .objects()
            .map(|y| gm.base.identity(md.g.ob(y)))
            .collect();
        let mut broke = false;
        for (y, slot) in omega.iter_mut().enumerate() {
            let gy = md.g.ob(y);
            if let Some(&alt) = gm.base.hom(gy, gy).iter().find(|&&h| h != *slot) {
                *slot = alt;
                broke = true;
                break;
            }
        }
        assert!(broke, "carrier has no alternative endomorphism");
        let mm = LeftModuleMorphism {
            omega_functor: FunctorTable::identity(&md.action.carrier),
            omega,
        };
        let err = factorize_left_module_morphism(&gm, &em, &md, &md, &mm).unwrap_err();
        assert!(err.to_string().contains("morphism-"), "{err}");
    }

    #[test]
    fn perturbed_candidates_rejected_with_named_equation() {
        let gm = m2_collapse_monad();
        let em = em_graded_build(&gm).unwrap();
        let md = universal_left_module(&gm, &em).unwrap();
        let (mediator, _) = factorize_left_module(&gm, &em, &md).unwrap();
        // Perturb one object image.
        let mut cand = mediator.clone();
        cand.ob_map[0] = (cand.ob_map[0] + 1) % em.cat.object_count();
        // Fix morphisms arbitrarily: likely not even a functor; either way
        // the audit names an equation.
        let audit = audit_left_module_candidate(&gm, &em, &md, &cand).unwrap();
        assert!(audit.is_rejected(), "{audit:?}");
    }
}

/// Enumerate all module morphisms `(Ω = Id, ω)` from a left module to
/// itself (micro helper for tests and audits).
pub fn enumerate_left_module_endomorphisms(
    gm: &TableGradedMonad,
    md: &GradedLeftModule,
) -> Vec<LeftModuleMorphism> {
    let y_cat = md.carrier().clone();
    let choices: Vec<Vec<MorIx>> = y_cat
        .objects()
        .map(|y| gm.base.hom(md.g.ob(y), md.g.ob(y)))
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let omega: Vec<MorIx> = pick
            .iter()
            .enumerate()
            .map(|(y, &k)| choices[y][k])
            .collect();
        let mm = LeftModuleMorphism {
            omega_functor: FunctorTable::identity(&y_cat),
            omega,
        };
        if validate_left_module_morphism(gm, md, md, &mm).passed() {
            out.push(mm);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if pick.iter().all(|&p| p == 0) {
            return out;
        }
    }
}
