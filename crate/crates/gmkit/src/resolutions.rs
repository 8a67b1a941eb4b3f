//! Resolutions of lax monoidal actions: a strict action together with an
//! adjunction that transports back to the given lax action. The
//! Eilenberg–Moore resolution is terminal and the Kleisli resolution initial
//! among these; the comparison functors witness both, and a pinning audit
//! rejects any differing candidate with a named equation.
//!
//! Also here: the category of sections of a projection (the dependent
//! product over the index) and the two-way enumeration of sections of the
//! Eilenberg–Moore projection of an indexed monad.

use std::sync::Arc;

use crate::backend::TableBackend;
use crate::constructions::em_graded::{EmGraded, EmGradedAdjunction, GradedAlgebra};
use crate::constructions::em_indexed::EmIndexed;
use crate::constructions::kl_graded::{KlGraded, KlMaterialized};
use crate::error::{GmError, Result};
use crate::fincat::{
    enumerate_functors, product_mor, product_ob, FiniteCategory, FunctorTable, Monoidal, MorIx,
    NatTransTable, ObIx, RawCategory,
};
use crate::graded::{
    graded_monads_table_equal, transport_lax_action, AdjunctionData, StrictActionTable,
    TableGradedMonad,
};
use crate::indexed::TableIndexedMonad;
use crate::report::{witness, Audit, LawReport};

/// A resolution of a lax action: a strict M-category plus an adjunction
/// whose transport reproduces the action.
pub struct ResolutionData {
    pub name: String,
    pub action: StrictActionTable,
    pub adj: AdjunctionData,
}

impl ResolutionData {
    pub fn carrier(&self) -> &Arc<FiniteCategory> {
        &self.action.carrier
    }
}

/// Membership condition: the strict-action laws hold, the adjunction holds,
/// and transporting through the adjunction yields exactly the target graded
/// monad's tables.
pub fn validate_resolution(rho: &ResolutionData, target: &TableGradedMonad) -> LawReport {
    let mut report = rho.action.validate();
    report.merge(rho.adj.validate());
    if !report.passed() {
        return report;
    }
    match transport_lax_action(&rho.action, &rho.adj) {
        Err(e) => report.fail("transport", witness([("error", e.to_string())])),
        Ok(transported) => {
            let same = graded_monads_table_equal(&transported, target);
            report.check(
                "transport-reproduces-action",
                witness([("resolution", rho.name.clone())]),
                (!same).then(|| witness([("detail", "transported tables differ")])),
            );
        }
    }
    report
}

/// The Eilenberg–Moore resolution: carrier the EM category with its `⊛`
/// action, left adjoint `c ↦ f^T(I, c)`, right adjoint evaluation at `I`.
pub fn em_resolution(
    gm: &TableGradedMonad,
    em: &EmGraded,
    adj: &EmGradedAdjunction,
) -> Result<ResolutionData> {
    let m = gm.grading.require_total()?.clone();
    let m_cat = m.base().clone();
    let unit = m.unit();
    let c = &gm.base;
    let action = StrictActionTable::new(m, em.cat.clone(), em.action.clone());
    let left = FunctorTable {
        src: c.clone(),
        dst: em.cat.clone(),
        ob_map: c
            .objects()
            .map(|x| adj.f.ob(product_ob(&m_cat, c, unit, x)))
            .collect(),
        mor_map: c
            .morphisms()
            .map(|f| adj.f.mor(product_mor(&m_cat, c, m_cat.identity(unit), f)))
            .collect(),
    };
    let right = adj.u.clone();
    let unit_nt = NatTransTable {
        dom: FunctorTable::identity(c),
        cod: right.after(&left),
        components: adj.eta.clone(),
    };
    let counit_nt = NatTransTable {
        dom: left.after(&right),
        cod: FunctorTable::identity(&em.cat),
        components: (0..em.cat.object_count())
            .map(|a| adj.counit[&(unit, a)])
            .collect(),
    };
    Ok(ResolutionData {
        name: "em-resolution".into(),
        action,
        adj: AdjunctionData {
            left,
            right,
            unit: unit_nt,
            counit: counit_nt,
        },
    })
}

/// The Kleisli resolution: carrier the Kleisli category with its `⊙` action,
/// left adjoint `c ↦ (I, c)`, right adjoint `(m, c) ↦ m ⋆ c`.
pub fn kl_resolution(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
) -> Result<ResolutionData> {
    let m = gm.grading.require_total()?.clone();
    let unit = m.unit();
    let c = &gm.base;
    let action = StrictActionTable::new(m, mat.cat.clone(), mat.action.clone());
    let mut l_ob = Vec::with_capacity(c.object_count());
    for x in c.objects() {
        l_ob.push(mat.find_ob(&(unit, x))?);
    }
    let mut l_mor = Vec::with_capacity(c.morphism_count());
    for f in c.morphisms() {
        l_mor.push(mat.find_kl_mor(&kl.free_mor(&f)?)?);
    }
    let left = FunctorTable {
        src: c.clone(),
        dst: mat.cat.clone(),
        ob_map: l_ob,
        mor_map: l_mor,
    };
    let mut r_ob = Vec::with_capacity(mat.objects.len());
    for (grade, x) in &mat.objects {
        r_ob.push(gm.t[*grade].ob(*x));
    }
    let mut r_mor = Vec::with_capacity(mat.mors.len());
    for &(si, ti, class) in &mat.mors {
        let f = crate::constructions::kl_graded::KlMor::<TableBackend> {
            src: mat.objects[si],
            tgt: mat.objects[ti],
            class,
        };
        r_mor.push(kl.cofree_mor_at(unit, &f)?);
    }
    let right = FunctorTable {
        src: mat.cat.clone(),
        dst: c.clone(),
        ob_map: r_ob,
        mor_map: r_mor,
    };
    let unit_nt = NatTransTable {
        dom: FunctorTable::identity(c),
        cod: right.after(&left),
        components: c.objects().map(|x| gm.eta.at(x)).collect(),
    };
    let mut counit_components = Vec::with_capacity(mat.objects.len());
    for key in &mat.objects {
        counit_components.push(mat.find_kl_mor(&kl.counit_at(unit, key)?)?);
    }
    let counit_nt = NatTransTable {
        dom: left.after(&right),
        cod: FunctorTable::identity(&mat.cat),
        components: counit_components,
    };
    Ok(ResolutionData {
        name: "kl-resolution".into(),
        action,
        adj: AdjunctionData {
            left,
            right,
            unit: unit_nt,
            counit: counit_nt,
        },
    })
}

/// Check that `k` is a morphism of resolutions `rho -> rho2`: it commutes
/// strictly with the actions, `k ∘ l = l'`, and `r = r' ∘ k`.
pub fn validate_resolution_morphism(
    rho: &ResolutionData,
    rho2: &ResolutionData,
    k: &FunctorTable,
) -> LawReport {
    let mut report = k.validate();
    let m_cat = rho.action.m.base().clone();
    let a = rho.carrier();
    for g in m_cat.objects() {
        for x in a.objects() {
            let lhs = k.ob(rho.action.act_ob(g, x));
            let rhs = rho2.action.act_ob(g, k.ob(x));
            report.check(
                "action-commutation",
                witness([
                    ("grade", m_cat.object_id(g).to_string()),
                    ("object", a.object_id(x).to_string()),
                ]),
                (lhs != rhs).then(|| {
                    witness([
                        ("k(m⊳a)", rho2.carrier().object_id(lhs).to_string()),
                        ("m⊳k(a)", rho2.carrier().object_id(rhs).to_string()),
                    ])
                }),
            );
        }
    }
    for u in m_cat.morphisms() {
        for f in a.morphisms() {
            let lhs = k.mor(rho.action.act_mor(u, f));
            let rhs = rho2.action.act_mor(u, k.mor(f));
            report.check(
                "action-commutation",
                witness([
                    ("u", m_cat.morphism_id(u).to_string()),
                    ("f", a.morphism_id(f).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("detail", "morphism actions differ")])),
            );
        }
    }
    let c = &rho.adj.left.src;
    for x in c.objects() {
        let lhs = k.ob(rho.adj.left.ob(x));
        let rhs = rho2.adj.left.ob(x);
        report.check(
            "left-adjoint-preserved",
            witness([("object", c.object_id(x))]),
            (lhs != rhs).then(|| witness([("detail", "k∘l differs from l'")])),
        );
    }
    for f in c.morphisms() {
        let lhs = k.mor(rho.adj.left.mor(f));
        let rhs = rho2.adj.left.mor(f);
        report.check(
            "left-adjoint-preserved",
            witness([("morphism", c.morphism_id(f))]),
            (lhs != rhs).then(|| witness([("detail", "k∘l differs from l'")])),
        );
    }
    for x in a.objects() {
        let lhs = rho.adj.right.ob(x);
        let rhs = rho2.adj.right.ob(k.ob(x));
        report.check(
            "right-adjoint-preserved",
            witness([("object", a.object_id(x))]),
            (lhs != rhs).then(|| witness([("detail", "r differs from r'∘k")])),
        );
    }
    for f in a.morphisms() {
        let lhs = rho.adj.right.mor(f);
        let rhs = rho2.adj.right.mor(k.mor(f));
        report.check(
            "right-adjoint-preserved",
            witness([("morphism", a.morphism_id(f))]),
            (lhs != rhs).then(|| witness([("detail", "r differs from r'∘k")])),
        );
    }
    report
}

/// The terminal witness: the comparison functor from any resolution into the
/// Eilenberg–Moore resolution, built from
/// `k(a) = ((r(n ⊳ a))_n, (r(m ⊳ ε_{n⊳a}))_{m,n})`.
pub fn comparison_into_em(
    gm: &TableGradedMonad,
    em: &EmGraded,
    rho: &ResolutionData,
) -> Result<FunctorTable> {
    let m = gm.grading.require_total()?;
    let m_cat = m.base().clone();
    let a_cat = rho.carrier().clone();
    let r = &rho.adj.right;
    let mut ob_map = Vec::with_capacity(a_cat.object_count());
    for a in a_cat.objects() {
        let carrier = FunctorTable {
            src: m_cat.clone(),
            dst: gm.base.clone(),
            ob_map: m_cat
                .objects()
                .map(|n| r.ob(rho.action.act_ob(n, a)))
                .collect(),
            mor_map: m_cat
                .morphisms()
                .map(|w| r.mor(rho.action.act_mor(w, a_cat.identity(a))))
                .collect(),
        };
        let mut h = std::collections::BTreeMap::new();
        for mm in m_cat.objects() {
            for n in m_cat.objects() {
                let n_a = rho.action.act_ob(n, a);
                let eps = rho.adj.counit.at(n_a);
                h.insert(
                    (mm, n),
                    r.mor(rho.action.act_mor(m_cat.identity(mm), eps)),
                );
            }
        }
        let alg = GradedAlgebra { carrier, h };
        ob_map.push(em.find_algebra(&alg)?);
    }
    let mut mor_map = Vec::with_capacity(a_cat.morphism_count());
    for w in a_cat.morphisms() {
        let components: Vec<MorIx> = m_cat
            .objects()
            .map(|n| r.mor(rho.action.act_mor(m_cat.identity(n), w)))
            .collect();
        mor_map.push(em.find_hom(ob_map[a_cat.src(w)], ob_map[a_cat.tgt(w)], &components)?);
    }
    Ok(FunctorTable {
        src: a_cat,
        dst: em.cat.clone(),
        ob_map,
        mor_map,
    })
}

/// The initial witness: the comparison functor from the Kleisli resolution
/// into any resolution, built from `k(m, c) = m ⊳ l(c)` and
/// `k[n, v, f] = (v ⊳ l_{c'}) ∘ (m ⊳ ε_{n ⊳ l c'}) ∘ (m ⊳ l f)`.
pub fn comparison_from_kl(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    rho: &ResolutionData,
) -> Result<FunctorTable> {
    let m = gm.grading.require_total()?;
    let m_cat = m.base().clone();
    let a_cat = rho.carrier().clone();
    let l = &rho.adj.left;
    let mut ob_map = Vec::with_capacity(mat.objects.len());
    for (grade, c) in &mat.objects {
        ob_map.push(rho.action.act_ob(*grade, l.ob(*c)));
    }
    let mut mor_map = Vec::with_capacity(mat.mors.len());
    for &(si, ti, class) in &mat.mors {
        let (grade, c) = &mat.objects[si];
        let (_, cp) = &mat.objects[ti];
        let hom = kl.hom_set(&mat.objects[si], &mat.objects[ti])?;
        let rep = &hom.raws[hom.reps[class]];
        let l_cp = l.ob(*cp);
        let n_lcp = rho.action.act_ob(rep.n, l_cp);
        let eps = rho.adj.counit.at(n_lcp);
        let step1 = rho
            .action
            .act_mor(m_cat.identity(*grade), l.mor(rep.f));
        let step2 = rho.action.act_mor(m_cat.identity(*grade), eps);
        let step3 = rho.action.act_mor(rep.v, a_cat.identity(l_cp));
        let composite = a_cat.comp(step3, a_cat.comp(step2, step1));
        let _ = c;
        mor_map.push(composite);
    }
    Ok(FunctorTable {
        src: mat.cat.clone(),
        dst: a_cat,
        ob_map,
        mor_map,
    })
}

/// Audit a candidate terminal witness against the pinning equations.
pub fn audit_terminal_candidate(
    gm: &TableGradedMonad,
    em: &EmGraded,
    rho: &ResolutionData,
    candidate: &FunctorTable,
) -> Result<Audit> {
    let reference = comparison_into_em(gm, em, rho)?;
    let report = validate_resolution_morphism(
        rho,
        &em_like_resolution_view(gm, em)?,
        candidate,
    );
    if let Some(fail) = report.failures().next() {
        return Ok(Audit::Rejected {
            equation: fail.axiom.clone(),
            location: format!("{:?}", fail.witness),
        });
    }
    if candidate.ob_map == reference.ob_map && candidate.mor_map == reference.mor_map {
        Ok(Audit::Agrees)
    } else {
        // All pinning equations hold yet the tables differ: that would
        // contradict uniqueness, so surface it loudly.
        Err(GmError::invalid(
            "comparison uniqueness",
            "a differing candidate satisfied every pinning equation",
        ))
    }
}

/// Audit a candidate initial witness.
pub fn audit_initial_candidate(
    gm: &TableGradedMonad,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    rho: &ResolutionData,
    candidate: &FunctorTable,
) -> Result<Audit> {
    let reference = comparison_from_kl(gm, kl, mat, rho)?;
    let kl_res = kl_resolution(gm, kl, mat)?;
    let report = validate_resolution_morphism(&kl_res, rho, candidate);
    if let Some(fail) = report.failures().next() {
        return Ok(Audit::Rejected {
            equation: fail.axiom.clone(),
            location: format!("{:?}", fail.witness),
        });
    }
    if candidate.ob_map == reference.ob_map && candidate.mor_map == reference.mor_map {
        Ok(Audit::Agrees)
    } else {
        Err(GmError::invalid(
            "comparison uniqueness",
            "a differing candidate satisfied every pinning equation",
        ))
    }
}

/// The EM resolution viewed as `ResolutionData` (helper for audits).
fn em_like_resolution_view(gm: &TableGradedMonad, em: &EmGraded) -> Result<ResolutionData> {
    let adj = crate::constructions::em_graded::em_graded_adjunction(gm, em)?;
    em_resolution(gm, em, &adj)
}

/// Both witnesses of the resolution theorem for a given `rho`: the unique
/// morphism into the EM resolution and the unique morphism from the Kleisli
/// resolution, with their validation reports.
pub struct TerminalInitialWitness {
    pub to_em: FunctorTable,
    pub to_em_report: LawReport,
    pub from_kl: FunctorTable,
    pub from_kl_report: LawReport,
}

pub fn terminal_initial_witness(
    gm: &TableGradedMonad,
    em: &EmGraded,
    kl: &KlGraded<'_, TableGradedMonad>,
    mat: &KlMaterialized<TableBackend>,
    rho: &ResolutionData,
) -> Result<TerminalInitialWitness> {
    let rho_report = validate_resolution(rho, gm);
    if !rho_report.passed() {
        return Err(GmError::precondition(
            "terminal_initial_witness",
            "the given resolution fails validation",
        ));
    }
    let to_em = comparison_into_em(gm, em, rho)?;
    let to_em_report = validate_resolution_morphism(rho, &em_like_resolution_view(gm, em)?, &to_em);
    let from_kl = comparison_from_kl(gm, kl, mat, rho)?;
    let kl_res = kl_resolution(gm, kl, mat)?;
    let from_kl_report = validate_resolution_morphism(&kl_res, rho, &from_kl);
    Ok(TerminalInitialWitness {
        to_em,
        to_em_report,
        from_kl,
        from_kl_report,
    })
}

/// The category of sections of a projection `p : E -> B`: objects are
/// functors `s` with `p ∘ s = id_B`, morphisms are transformations `ψ` with
/// `p ∗ ψ = id` (each component lies over an identity).
pub struct SectionCategory {
    pub cat: Arc<FiniteCategory>,
    pub sections: Vec<FunctorTable>,
    pub morphisms: Vec<NatTransTable>,
}

pub fn sections_category(p: &FunctorTable, bound: u128) -> Result<SectionCategory> {
    let e = &p.src;
    let b = &p.dst;
    let mut sections: Vec<FunctorTable> = enumerate_functors(b, e, bound)?
        .into_iter()
        .filter(|s| {
            b.objects().all(|x| p.ob(s.ob(x)) == x)
                && b.morphisms().all(|u| p.mor(s.mor(u)) == u)
        })
        .collect();
    sections.sort_by(|x, y| (&x.ob_map, &x.mor_map).cmp(&(&y.ob_map, &y.mor_map)));
    let mut raw = RawCategory::new("sections");
    raw.objects = (0..sections.len()).map(|i| format!("s{i}")).collect();
    let mut morphisms = Vec::new();
    for (i, s) in sections.iter().enumerate() {
        for (j, s2) in sections.iter().enumerate() {
            for nt in crate::fincat::enumerate_nat_trans(s, s2) {
                // p ∗ ψ = id: every component over an identity.
                if b.objects().all(|x| p.mor(nt.at(x)) == b.identity(x)) {
                    let id = format!("p{}_{}_{}", i, j, morphisms.len());
                    raw.morphisms.push((id, format!("s{i}"), format!("s{j}")));
                    morphisms.push(nt);
                }
            }
        }
    }
    let locate = |dom: usize, cod: usize, comps: &Vec<MorIx>| -> usize {
        morphisms
            .iter()
            .enumerate()
            .position(|(k, nt)| {
                let (ki, kj) = section_endpoints(&sections, nt);
                let _ = k;
                ki == dom && kj == cod && &nt.components == comps
            })
            .expect("section morphism is closed under composition")
    };
    for (i, s) in sections.iter().enumerate() {
        let idt = NatTransTable::identity(s);
        raw.identities
            .insert(format!("s{i}"), raw.morphisms[locate(i, i, &idt.components)].0.clone());
    }
    for (x, nx) in morphisms.iter().enumerate() {
        for (y, ny) in morphisms.iter().enumerate() {
            let (xi, xj) = section_endpoints(&sections, nx);
            let (yi, yj) = section_endpoints(&sections, ny);
            if xj != yi {
                continue;
            }
            let composite = nx.then(ny);
            raw.comp.push((
                raw.morphisms[y].0.clone(),
                raw.morphisms[x].0.clone(),
                raw.morphisms[locate(xi, yj, &composite.components)].0.clone(),
            ));
        }
    }
    let cat = Arc::new(
        raw.validate()
            .map_err(|d| GmError::invalid("section category", d.join("; ")))?,
    );
    Ok(SectionCategory {
        cat,
        sections,
        morphisms,
    })
}

fn section_endpoints(sections: &[FunctorTable], nt: &NatTransTable) -> (usize, usize) {
    let dom = sections
        .iter()
        .position(|s| s.ob_map == nt.dom.ob_map && s.mor_map == nt.dom.mor_map)
        .expect("dom section");
    let cod = sections
        .iter()
        .position(|s| s.ob_map == nt.cod.ob_map && s.mor_map == nt.cod.mor_map)
        .expect("cod section");
    (dom, cod)
}

/// One family `((χ_b)_b, (h_u)_u)`: an algebra per index object and a
/// compatible algebra morphism per index morphism, functorial in the index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionFamily {
    /// Per index object: the EM object index chosen over it.
    pub algebras: Vec<ObIx>,
    /// Per index morphism `u`: the base morphism `h_u`.
    pub transitions: Vec<MorIx>,
}

/// The family category of an indexed monad's EM projection, enumerated
/// directly from the algebra data.
pub struct FamilyCategory {
    pub cat: Arc<FiniteCategory>,
    pub families: Vec<SectionFamily>,
    /// Per materialized morphism: the per-index-object components.
    pub components: Vec<Vec<MorIx>>,
}

pub fn family_category(im: &TableIndexedMonad, em: &EmIndexed) -> Result<FamilyCategory> {
    let b_cat = &im.index;
    let c = &im.base;
    // Algebras over each index object.
    let over: Vec<Vec<ObIx>> = b_cat
        .objects()
        .map(|b| {
            (0..em.objects.len())
                .filter(|&i| em.objects[i].b == b)
                .collect()
        })
        .collect();
    // Enumerate choices of algebra per object.
    let mut families = Vec::new();
    let mut pick = vec![0usize; b_cat.object_count()];
    if over.iter().any(|v| v.is_empty()) {
        return Err(GmError::invalid("family category", "empty fiber"));
    }
    loop {
        let algebras: Vec<ObIx> = pick.iter().enumerate().map(|(b, &k)| over[b][k]).collect();
        // For each index morphism, enumerate candidate transitions.
        let mut candidates: Vec<Vec<MorIx>> = Vec::new();
        for u in b_cat.morphisms() {
            let src = &em.objects[algebras[b_cat.src(u)]];
            let tgt = &em.objects[algebras[b_cat.tgt(u)]];
            let hs: Vec<MorIx> = c
                .hom(src.carrier, tgt.carrier)
                .into_iter()
                .filter(|&h| {
                    // Algebra-morphism square over u.
                    let lhs = c.comp(h, src.chi);
                    let rhs = c.comp(
                        tgt.chi,
                        c.comp(im.tu[u].at(tgt.carrier), im.t[src.b].mor(h)),
                    );
                    lhs == rhs
                })
                .collect();
            candidates.push(hs);
        }
        if candidates.iter().all(|v| !v.is_empty()) {
            let mut tpick = vec![0usize; candidates.len()];
            loop {
                let transitions: Vec<MorIx> = tpick
                    .iter()
                    .enumerate()
                    .map(|(u, &k)| candidates[u][k])
                    .collect();
                // Functoriality: h_{id} = id, h_{u'∘u} = h_{u'} ∘ h_u.
                let functorial = b_cat.objects().all(|b| {
                    transitions[b_cat.identity(b)] == c.identity(em.objects[algebras[b]].carrier)
                }) && b_cat.morphisms().all(|u| {
                    b_cat.morphisms().all(|u2| {
                        if b_cat.src(u2) != b_cat.tgt(u) {
                            return true;
                        }
                        let uu = b_cat.comp(u2, u);
                        transitions[uu] == c.comp(transitions[u2], transitions[u])
                    })
                });
                if functorial {
                    families.push(SectionFamily {
                        algebras: algebras.clone(),
                        transitions,
                    });
                }
                let mut k = 0;
                loop {
                    if k == tpick.len() {
                        break;
                    }
                    tpick[k] += 1;
                    if tpick[k] < candidates[k].len() {
                        break;
                    }
                    tpick[k] = 0;
                    k += 1;
                }
                if tpick.iter().all(|&t| t == 0) {
                    break;
                }
            }
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                break;
            }
            pick[k] += 1;
            if pick[k] < over[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if pick.iter().all(|&p| p == 0) {
            break;
        }
    }
    families.sort_by(|a, b| (&a.algebras, &a.transitions).cmp(&(&b.algebras, &b.transitions)));

    // Morphisms: families of algebra morphisms over identities satisfying
    // the naturality square.
    let mut raw = RawCategory::new("families");
    raw.objects = (0..families.len()).map(|i| format!("fam{i}")).collect();
    let mut components: Vec<Vec<MorIx>> = Vec::new();
    let mut endpoints: Vec<(usize, usize)> = Vec::new();
    for (i, fam) in families.iter().enumerate() {
        for (j, fam2) in families.iter().enumerate() {
            // Candidate ψ_b per object: algebra morphisms over id_b.
            let choices: Vec<Vec<MorIx>> = b_cat
                .objects()
                .map(|b| {
                    let src = &em.objects[fam.algebras[b]];
                    let tgt = &em.objects[fam2.algebras[b]];
                    c.hom(src.carrier, tgt.carrier)
                        .into_iter()
                        .filter(|&h| {
                            let lhs = c.comp(h, src.chi);
                            let rhs = c.comp(
                                tgt.chi,
                                c.comp(
                                    im.tu[b_cat.identity(b)].at(tgt.carrier),
                                    im.t[b].mor(h),
                                ),
                            );
                            lhs == rhs
                        })
                        .collect()
                })
                .collect();
            if choices.iter().any(|v| v.is_empty()) {
                continue;
            }
            let mut pick = vec![0usize; choices.len()];
            loop {
                let comps: Vec<MorIx> = pick
                    .iter()
                    .enumerate()
                    .map(|(b, &k)| choices[b][k])
                    .collect();
                // Naturality: ψ_{b'} ∘ h_u = h'_u ∘ ψ_b.
                let natural = b_cat.morphisms().all(|u| {
                    let (s, t) = (b_cat.src(u), b_cat.tgt(u));
                    c.comp(comps[t], fam.transitions[u])
                        == c.comp(fam2.transitions[u], comps[s])
                });
                if natural {
                    let id = format!("psi{}_{}_{}", i, j, components.len());
                    raw.morphisms.push((id, format!("fam{i}"), format!("fam{j}")));
                    components.push(comps);
                    endpoints.push((i, j));
                }
                let mut k = 0;
                loop {
                    if k == pick.len() {
                        break;
                    }
                    pick[k] += 1;
                    if pick[k] < choices[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if pick.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
    }
    let locate = |i: usize, j: usize, comps: &Vec<MorIx>| -> usize {
        components
            .iter()
            .enumerate()
            .position(|(k, cps)| endpoints[k] == (i, j) && cps == comps)
            .expect("family morphisms compose")
    };
    for (i, fam) in families.iter().enumerate() {
        let idc: Vec<MorIx> = fam
            .algebras
            .iter()
            .map(|&a| c.identity(em.objects[a].carrier))
            .collect();
        raw.identities
            .insert(format!("fam{i}"), raw.morphisms[locate(i, i, &idc)].0.clone());
    }
    for (x, cx) in components.iter().enumerate() {
        for (y, cy) in components.iter().enumerate() {
            if endpoints[x].1 != endpoints[y].0 {
                continue;
            }
            let comps: Vec<MorIx> = b_cat
                .objects()
                .map(|b| c.comp(cy[b], cx[b]))
                .collect();
            raw.comp.push((
                raw.morphisms[y].0.clone(),
                raw.morphisms[x].0.clone(),
                raw.morphisms[locate(endpoints[x].0, endpoints[y].1, &comps)].0.clone(),
            ));
        }
    }
    let cat = Arc::new(
        raw.validate()
            .map_err(|d| GmError::invalid("family category", d.join("; ")))?,
    );
    Ok(FamilyCategory {
        cat,
        families,
        components,
    })
}

/// Result of the section/family comparison: both categories and the explicit
/// isomorphism between them, validated in both directions.
pub struct SectionsOfEmIndexed {
    pub sections: SectionCategory,
    pub families: FamilyCategory,
    pub to_families: FunctorTable,
    pub to_sections: FunctorTable,
    pub report: LawReport,
}

/// Enumerate sections of `π0` two ways and construct mutually inverse
/// functors between the results.
pub fn sections_of_em_indexed(
    im: &TableIndexedMonad,
    em: &EmIndexed,
    bound: u128,
) -> Result<SectionsOfEmIndexed> {
    let sections = sections_category(&em.pi0, bound)?;
    let families = family_category(im, em)?;
    let b_cat = &im.index;
    let mut report = LawReport::new();

    // Section -> family.
    let mut to_fam_ob = Vec::with_capacity(sections.sections.len());
    for s in &sections.sections {
        let fam = SectionFamily {
            algebras: b_cat.objects().map(|b| s.ob(b)).collect(),
            transitions: b_cat
                .morphisms()
                .map(|u| em.morphisms[s.mor(u)].h)
                .collect(),
        };
        let ix = families
            .families
            .iter()
            .position(|f| *f == fam)
            .ok_or_else(|| GmError::invalid("sections", "section has no family image"))?;
        to_fam_ob.push(ix);
    }
    let mut to_fam_mor = Vec::with_capacity(sections.morphisms.len());
    for nt in &sections.morphisms {
        let comps: Vec<MorIx> = b_cat
            .objects()
            .map(|b| em.morphisms[nt.at(b)].h)
            .collect();
        let (si, sj) = section_endpoints(&sections.sections, nt);
        let pos = families
            .components
            .iter()
            .enumerate()
            .position(|(k, c)| {
                *c == comps
                    && family_src(&families, k) == to_fam_ob[si]
                    && family_tgt(&families, k) == to_fam_ob[sj]
            })
            .ok_or_else(|| GmError::invalid("sections", "morphism has no family image"))?;
        to_fam_mor.push(pos);
    }
    let to_families = FunctorTable {
        src: sections.cat.clone(),
        dst: families.cat.clone(),
        ob_map: to_fam_ob,
        mor_map: to_fam_mor,
    };
    report.merge(to_families.validate());

    // Family -> section.
    let mut to_sec_ob = Vec::with_capacity(families.families.len());
    for fam in &families.families {
        let ix = sections
            .sections
            .iter()
            .position(|s| {
                b_cat.objects().all(|b| s.ob(b) == fam.algebras[b])
                    && b_cat
                        .morphisms()
                        .all(|u| em.morphisms[s.mor(u)].h == fam.transitions[u])
            })
            .ok_or_else(|| GmError::invalid("sections", "family has no section image"))?;
        to_sec_ob.push(ix);
    }
    let mut to_sec_mor = Vec::with_capacity(families.components.len());
    for (k, comps) in families.components.iter().enumerate() {
        let (fi, fj) = (family_src(&families, k), family_tgt(&families, k));
        let pos = sections
            .morphisms
            .iter()
            .enumerate()
            .position(|(x, nt)| {
                let (si, sj) = section_endpoints(&sections.sections, nt);
                let _ = x;
                si == to_sec_ob[fi]
                    && sj == to_sec_ob[fj]
                    && b_cat
                        .objects()
                        .all(|b| em.morphisms[nt.at(b)].h == comps[b])
            })
            .ok_or_else(|| GmError::invalid("sections", "family morphism has no section image"))?;
        to_sec_mor.push(pos);
    }
    let to_sections = FunctorTable {
        src: families.cat.clone(),
        dst: sections.cat.clone(),
        ob_map: to_sec_ob,
        mor_map: to_sec_mor,
    };
    report.merge(to_sections.validate());

    // Mutually inverse on the nose.
    let round1 = to_sections.after(&to_families);
    let round2 = to_families.after(&to_sections);
    report.check(
        "iso-round-trip",
        witness([("direction", "sections")]),
        (round1.ob_map != FunctorTable::identity(&sections.cat).ob_map
            || round1.mor_map != FunctorTable::identity(&sections.cat).mor_map)
            .then(|| witness([("detail", "sections round trip differs")])),
    );
    report.check(
        "iso-round-trip",
        witness([("direction", "families")]),
        (round2.ob_map != FunctorTable::identity(&families.cat).ob_map
            || round2.mor_map != FunctorTable::identity(&families.cat).mor_map)
            .then(|| witness([("detail", "families round trip differs")])),
    );
    report.check(
        "counts-match",
        witness([
            ("sections", sections.cat.object_count().to_string()),
            ("families", families.cat.object_count().to_string()),
        ]),
        (sections.cat.object_count() != families.cat.object_count()
            || sections.cat.morphism_count() != families.cat.morphism_count())
            .then(|| witness([("detail", "cardinalities differ")])),
    );
    Ok(SectionsOfEmIndexed {
        sections,
        families,
        to_families,
        to_sections,
        report,
    })
}

fn family_src(f: &FamilyCategory, k: MorIx) -> usize {
    f.cat.src(k)
}

fn family_tgt(f: &FamilyCategory, k: MorIx) -> usize {
    f.cat.tgt(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::em_graded::{em_graded_adjunction, em_graded_build};
    use crate::constructions::em_indexed::em_indexed_build;
    use crate::constructions::kl_graded::{kl_build, kl_materialize};
    use crate::instances::{constant_flip_family, table_zoo};
    use crate::report::Audit;

    #[test]
    fn both_resolutions_validate_for_zoo() {
        for gm in table_zoo() {
            let em = em_graded_build(&gm).unwrap();
            let adj = em_graded_adjunction(&gm, &em).unwrap();
            assert!(adj.report.passed(), "{}: {}", gm.name, adj.report);
            let em_res = em_resolution(&gm, &em, &adj).unwrap();
            let report = validate_resolution(&em_res, &gm);
            assert!(report.passed(), "{}:\n{report}", gm.name);

            let universe: Vec<usize> = gm.base.objects().collect();
            let kl = kl_build(&gm, universe, 1 << 16).unwrap();
            let mat = kl_materialize(&kl).unwrap();
            let kl_res = kl_resolution(&gm, &kl, &mat).unwrap();
            let report = validate_resolution(&kl_res, &gm);
            assert!(report.passed(), "{}:\n{report}", gm.name);
        }
    }

    #[test]
    fn terminal_witness_on_em_is_identity() {
        let gm = crate::instances::z2_action_monad();
        let em = em_graded_build(&gm).unwrap();
        let adj = em_graded_adjunction(&gm, &em).unwrap();
        let em_res = em_resolution(&gm, &em, &adj).unwrap();
        let k = comparison_into_em(&gm, &em, &em_res).unwrap();
        assert_eq!(k.ob_map, FunctorTable::identity(&em.cat).ob_map);
        assert_eq!(k.mor_map, FunctorTable::identity(&em.cat).mor_map);
    }

    #[test]
    fn witnesses_for_kl_resolution() {
        for gm in table_zoo() {
            let em = em_graded_build(&gm).unwrap();
            let adj = em_graded_adjunction(&gm, &em).unwrap();
            let universe: Vec<usize> = gm.base.objects().collect();
            let kl = kl_build(&gm, universe, 1 << 16).unwrap();
            let mat = kl_materialize(&kl).unwrap();
            let kl_res = kl_resolution(&gm, &kl, &mat).unwrap();
            let w = terminal_initial_witness(&gm, &em, &kl, &mat, &kl_res).unwrap();
            assert!(w.to_em_report.passed(), "{}:\n{}", gm.name, w.to_em_report);
            assert!(
                w.from_kl_report.passed(),
                "{}:\n{}",
                gm.name,
                w.from_kl_report
            );
            // The comparison lands every (m, c) on a free algebra.
            let _ = &em;
            // Composite-equals-direct for rho = EM resolution.
            let em_res = em_resolution(&gm, &em, &adj).unwrap();
            let w_em = terminal_initial_witness(&gm, &em, &kl, &mat, &em_res).unwrap();
            let direct = comparison_into_em(&gm, &em, &kl_res).unwrap();
            let composite = w_em.to_em.after(&w_em.from_kl);
            let via_kl = w.from_kl.clone();
            let _ = via_kl;
            assert_eq!(direct.ob_map, composite.ob_map);
            assert_eq!(direct.mor_map, composite.mor_map);
        }
    }

    #[test]
    fn broken_adjunction_fails_before_transport() {
        let gm = crate::instances::m2_collapse_monad();
        let em = em_graded_build(&gm).unwrap();
        let adj = em_graded_adjunction(&gm, &em).unwrap();
        let mut rho = em_resolution(&gm, &em, &adj).unwrap();
        // Swap one counit component for a different parallel morphism of
        // the EM category.
        let mut broke = false;
        for a in 0..rho.adj.counit.components.len() {
            let parallel = rho.adj.counit.dom.dst.hom(
                rho.adj.counit.dom.ob(a),
                rho.adj.counit.cod.ob(a),
            );
            if let Some(&alt) = parallel.iter().find(|&&h| h != rho.adj.counit.at(a)) {
                rho.adj.counit.components[a] = alt;
                broke = true;
                break;
            }
        }
        assert!(broke, "instance has no parallel morphism to break with");
        let report = validate_resolution(&rho, &gm);
        assert!(!report.passed());
        // The failure is reported at the adjunction stage; no transport
        // verdict is emitted.
        assert!(report
            .lines
            .iter()
            .all(|l| l.axiom != "transport-reproduces-action"));
    }

    #[test]
    fn kl_comparison_lands_on_free_algebras() {
        let gm = crate::instances::m2_collapse_monad();
        let em = em_graded_build(&gm).unwrap();
        let adj = crate::constructions::em_graded::em_graded_adjunction(&gm, &em).unwrap();
        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16).unwrap();
        let mat = kl_materialize(&kl).unwrap();
        let kl_res = kl_resolution(&gm, &kl, &mat).unwrap();
        let k = comparison_into_em(&gm, &em, &kl_res).unwrap();
        // Every (m, c) lands on the free algebra f^T(m, c).
        let m_cat = gm.grading.base().clone();
        for (i, (grade, c)) in mat.objects.iter().enumerate() {
            let free = em
                .find_algebra(&crate::constructions::em_graded::free_algebra(&gm, *grade, *c))
                .unwrap();
            assert_eq!(k.ob(i), free, "object ({}, {})", m_cat.object_id(*grade), c);
        }
        let _ = adj;
    }

    #[test]
    fn perturbed_comparison_candidates_are_rejected() {
        let gm = crate::instances::z2_action_monad();
        let em = em_graded_build(&gm).unwrap();
        let adj = crate::constructions::em_graded::em_graded_adjunction(&gm, &em).unwrap();
        let em_res = em_resolution(&gm, &em, &adj).unwrap();
        let universe: Vec<usize> = gm.base.objects().collect();
        let kl = kl_build(&gm, universe, 1 << 16).unwrap();
        let mat = kl_materialize(&kl).unwrap();
        let kl_res = kl_resolution(&gm, &kl, &mat).unwrap();

        // Terminal side: perturb one object image of the comparison.
        let reference = comparison_into_em(&gm, &em, &kl_res).unwrap();
        let mut cand = reference.clone();
        cand.ob_map[0] = (cand.ob_map[0] + 1) % em.cat.object_count();
        let audit =
            crate::resolutions::audit_terminal_candidate(&gm, &em, &kl_res, &cand).unwrap();
        match audit {
            Audit::Rejected { equation, .. } => assert!(!equation.is_empty()),
            Audit::Agrees => panic!("perturbed candidate must be rejected"),
        }
        // The genuine comparison agrees.
        let audit =
            crate::resolutions::audit_terminal_candidate(&gm, &em, &kl_res, &reference).unwrap();
        assert_eq!(audit, Audit::Agrees);

        // Initial side.
        let reference = comparison_from_kl(&gm, &kl, &mat, &em_res).unwrap();
        let mut cand = reference.clone();
        cand.mor_map[1] = (cand.mor_map[1] + 1) % em.cat.morphism_count();
        let audit = crate::resolutions::audit_initial_candidate(&gm, &kl, &mat, &em_res, &cand)
            .unwrap();
        assert!(matches!(audit, Audit::Rejected { .. }));
        let audit =
            crate::resolutions::audit_initial_candidate(&gm, &kl, &mat, &em_res, &reference)
                .unwrap();
        assert_eq!(audit, Audit::Agrees);
    }

    #[test]
    fn identity_projection_has_one_section() {
        let b = crate::instances::walking_arrow();
        let p = FunctorTable::identity(&b);
        let s = sections_category(&p, 1 << 20).unwrap();
        assert_eq!(s.cat.object_count(), 1);
        assert_eq!(s.cat.morphism_count(), 1);
    }

    #[test]
    fn projection_sections_match_functor_count() {
        // p = projection B x X -> B: sections correspond to functors B -> X.
        let b = crate::instances::walking_arrow();
        let x = crate::instances::z2_monoid_category();
        let prod = Arc::new(crate::fincat::product_category(&b, &x).unwrap());
        let p = FunctorTable {
            src: prod.clone(),
            dst: b.clone(),
            ob_map: prod
                .objects()
                .map(|o| o / x.object_count())
                .collect(),
            mor_map: prod
                .morphisms()
                .map(|m| m / x.morphism_count())
                .collect(),
        };
        let s = sections_category(&p, 1 << 20).unwrap();
        let functors = enumerate_functors(&b, &x, 1 << 20).unwrap();
        assert_eq!(s.cat.object_count(), functors.len());
    }

    #[test]
    fn unhit_object_means_no_sections() {
        // E = terminal, B = walking arrow, p = constant at b: object a is
        // not hit, so there are no sections.
        let b = crate::instances::walking_arrow();
        let e = crate::instances::terminal_category();
        let p = FunctorTable {
            src: e.clone(),
            dst: b.clone(),
            ob_map: vec![1],
            mor_map: vec![b.identity(1)],
        };
        let s = sections_category(&p, 1 << 20).unwrap();
        assert_eq!(s.cat.object_count(), 0);
    }

    #[test]
    fn sections_equivalence_for_constant_family() {
        let im = constant_flip_family();
        let em = em_indexed_build(&im).unwrap();
        let out = sections_of_em_indexed(&im, &em, 1 << 20).unwrap();
        assert!(out.report.passed(), "{}", out.report);
        // Two sections (h_u free over the flip algebra), each hom-set has
        // two elements.
        assert_eq!(out.sections.cat.object_count(), 2);
        assert_eq!(out.sections.cat.morphism_count(), 8);
    }
}
