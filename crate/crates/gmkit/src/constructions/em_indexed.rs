//! The Eilenberg–Moore category of an indexed monad: the total category of
//! the induced indexed category, its projection to the index (a Grothendieck
//! fibration on micro instances), and the adjunction generating the family.

use std::sync::Arc;

use crate::error::{GmError, Result};
use crate::fincat::{
    product_category, product_mor, product_ob, FiniteCategory, FunctorTable, MorIx, ObIx,
    RawCategory,
};
use crate::indexed::TableIndexedMonad;
use crate::report::{witness, LawReport};

/// One object of the total category: `(b, (c, χ))` with `χ : T_b c -> c` a
/// `T_b`-algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedEmObject {
    pub b: ObIx,
    pub carrier: ObIx,
    pub chi: MorIx,
}

/// A morphism `(u, h) : (b, χ) -> (b', χ')`: `u : b -> b'` in the index,
/// `h : c -> c'` in the base with `χ' ∘ T_{u,c'} ∘ T_b(h) = h ∘ χ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedEmMorphism {
    pub u: MorIx,
    pub h: MorIx,
    pub src: usize,
    pub tgt: usize,
}

/// The materialized total category with its projection and adjunction data.
pub struct EmIndexed {
    pub cat: Arc<FiniteCategory>,
    pub objects: Vec<IndexedEmObject>,
    pub morphisms: Vec<IndexedEmMorphism>,
    /// `π0 : EM -> B`, the fibration-to-be.
    pub pi0: FunctorTable,
    /// `π : EM -> B x EM`, `(b, χ) ↦ (b, (b, χ))`.
    pub pi: FunctorTable,
    /// `f : B x C -> EM`, the free-algebra functor `(b, c) ↦ (b, μ_{b,c})`.
    pub f: FunctorTable,
    /// `u : EM -> C`, the forgetful functor.
    pub u: FunctorTable,
    /// Components of `η`: at `(b, c)`, the base morphism `η_{b,c}`.
    pub eta: Vec<MorIx>,
    /// Counit `(id_b, χ)` per EM object, as a morphism of `cat`.
    pub counit: Vec<MorIx>,
    pub report: LawReport,
}

impl EmIndexed {
    pub fn find_object(&self, ob: &IndexedEmObject) -> Result<ObIx> {
        self.objects
            .iter()
            .position(|o| o == ob)
            .ok_or_else(|| GmError::invalid("EM(indexed) lookup", "object not enumerated"))
    }

    pub fn find_morphism(&self, src: usize, tgt: usize, u: MorIx, h: MorIx) -> Result<MorIx> {
        self.morphisms
            .iter()
            .position(|m| m.src == src && m.tgt == tgt && m.u == u && m.h == h)
            .ok_or_else(|| GmError::invalid("EM(indexed) lookup", "morphism not enumerated"))
    }
}

/// Whether `(u, h)` satisfies the algebra-morphism pentagon.
fn is_indexed_hom(
    im: &TableIndexedMonad,
    src: &IndexedEmObject,
    tgt: &IndexedEmObject,
    u: MorIx,
    h: MorIx,
) -> bool {
    let c = &im.base;
    if im.index.src(u) != src.b || im.index.tgt(u) != tgt.b {
        return false;
    }
    if c.src(h) != src.carrier || c.tgt(h) != tgt.carrier {
        return false;
    }
    // h ∘ χ = χ' ∘ T_{u,c'} ∘ T_b(h)
    let lhs = c.comp(h, src.chi);
    let rhs = c.comp(tgt.chi, c.comp(im.tu[u].at(tgt.carrier), im.t[src.b].mor(h)));
    lhs == rhs
}

/// Enumerate the total category, build `π`, the adjunction, and check the
/// resolution identity, triangles, and the cartesian-lift property of `π0`.
pub fn em_indexed_build(im: &TableIndexedMonad) -> Result<EmIndexed> {
    let b_cat = &im.index;
    let c = &im.base;
    let mut report = LawReport::new();

    // Objects: all (b, algebra of T_b).
    let mut objects = Vec::new();
    for b in b_cat.objects() {
        for carrier in c.objects() {
            let tb_c = im.t[b].ob(carrier);
            for chi in c.hom(tb_c, carrier) {
                // Unit and associativity of the algebra.
                if c.comp(chi, im.eta[b].at(carrier)) != c.identity(carrier) {
                    continue;
                }
                let assoc_l = c.comp(chi, im.t[b].mor(chi));
                let assoc_r = c.comp(chi, im.mu[b].at(carrier));
                if assoc_l != assoc_r {
                    continue;
                }
                objects.push(IndexedEmObject { b, carrier, chi });
            }
        }
    }

    let mut raw = RawCategory::new(format!("EM({})", im.name));
    raw.objects = (0..objects.len()).map(|i| format!("alg{i}")).collect();
    let mut morphisms = Vec::new();
    for (i, src) in objects.iter().enumerate() {
        for (j, tgt) in objects.iter().enumerate() {
            for u in b_cat.hom(src.b, tgt.b) {
                for h in c.hom(src.carrier, tgt.carrier) {
                    if is_indexed_hom(im, src, tgt, u, h) {
                        let id = format!("m{}_{}_{}", i, j, morphisms.len());
                        raw.morphisms.push((id, format!("alg{i}"), format!("alg{j}")));
                        morphisms.push(IndexedEmMorphism {
                            u,
                            h,
                            src: i,
                            tgt: j,
                        });
                    }
                }
            }
        }
    }
    for (i, ob) in objects.iter().enumerate() {
        let pos = morphisms
            .iter()
            .position(|m| {
                m.src == i
                    && m.tgt == i
                    && m.u == b_cat.identity(ob.b)
                    && m.h == c.identity(ob.carrier)
            })
            .expect("identity is an algebra morphism");
        raw.identities
            .insert(format!("alg{i}"), raw.morphisms[pos].0.clone());
    }
    for (x, mx) in morphisms.iter().enumerate() {
        for (y, my) in morphisms.iter().enumerate() {
            if mx.tgt != my.src {
                continue;
            }
            let u = b_cat.comp(my.u, mx.u);
            let h = c.comp(my.h, mx.h);
            let pos = morphisms
                .iter()
                .position(|m| m.src == mx.src && m.tgt == my.tgt && m.u == u && m.h == h)
                .expect("algebra morphisms compose");
            raw.comp.push((
                raw.morphisms[y].0.clone(),
                raw.morphisms[x].0.clone(),
                raw.morphisms[pos].0.clone(),
            ));
        }
    }
    let cat = Arc::new(
        raw.validate()
            .map_err(|d| GmError::invalid("EM(indexed) category", d.join("; ")))?,
    );

    // π0 and π.
    let pi0 = FunctorTable {
        src: cat.clone(),
        dst: b_cat.clone(),
        ob_map: objects.iter().map(|o| o.b).collect(),
        mor_map: morphisms.iter().map(|m| m.u).collect(),
    };
    report.merge(pi0.validate());
    let b_x_em = Arc::new(product_category(b_cat, &cat)?);
    let pi = FunctorTable {
        src: cat.clone(),
        dst: b_x_em.clone(),
        ob_map: (0..objects.len())
            .map(|i| product_ob(b_cat, &cat, objects[i].b, i))
            .collect(),
        mor_map: (0..morphisms.len())
            .map(|k| product_mor(b_cat, &cat, morphisms[k].u, k))
            .collect(),
    };
    report.merge(pi.validate());

    // Free and forgetful functors.
    let b_x_c = Arc::new(product_category(b_cat, c)?);
    let mut f_ob = Vec::with_capacity(b_x_c.object_count());
    for b in b_cat.objects() {
        for x in c.objects() {
            let free = IndexedEmObject {
                b,
                carrier: im.t[b].ob(x),
                chi: im.mu[b].at(x),
            };
            f_ob.push(
                objects
                    .iter()
                    .position(|o| *o == free)
                    .ok_or_else(|| GmError::invalid("EM(indexed)", "free algebra missing"))?,
            );
        }
    }
    let mut f_mor = Vec::with_capacity(b_x_c.morphism_count());
    for u in b_cat.morphisms() {
        for fc in c.morphisms() {
            let b = b_cat.src(u);
            let src = f_ob[product_ob(b_cat, c, b, c.src(fc))];
            let tgt = f_ob[product_ob(b_cat, c, b_cat.tgt(u), c.tgt(fc))];
            // h = T_{u,c'} ∘ T_b(f).
            let h = c.comp(im.tu[u].at(c.tgt(fc)), im.t[b].mor(fc));
            let pos = morphisms
                .iter()
                .position(|m| m.src == src && m.tgt == tgt && m.u == u && m.h == h)
                .ok_or_else(|| GmError::invalid("EM(indexed)", "free morphism missing"))?;
            f_mor.push(pos);
        }
    }
    let f = FunctorTable {
        src: b_x_c.clone(),
        dst: cat.clone(),
        ob_map: f_ob,
        mor_map: f_mor,
    };
    report.merge(f.validate());
    let u_table = FunctorTable {
        src: cat.clone(),
        dst: c.clone(),
        ob_map: objects.iter().map(|o| o.carrier).collect(),
        mor_map: morphisms.iter().map(|m| m.h).collect(),
    };
    report.merge(u_table.validate());

    // Resolution identity: u ∘ f = T as tables over B x C.
    for b in b_cat.objects() {
        for x in c.objects() {
            let lhs = u_table.ob(f.ob(product_ob(b_cat, c, b, x)));
            let rhs = im.t[b].ob(x);
            report.check(
                "resolution-identity",
                witness([
                    ("b", b_cat.object_id(b).to_string()),
                    ("object", c.object_id(x).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("got", c.object_id(lhs))])),
            );
        }
    }
    for u in b_cat.morphisms() {
        for fc in c.morphisms() {
            let lhs = u_table.mor(f.mor(product_mor(b_cat, c, u, fc)));
            let rhs = c.comp(im.tu[u].at(c.tgt(fc)), im.t[b_cat.src(u)].mor(fc));
            report.check(
                "resolution-identity",
                witness([
                    ("u", b_cat.morphism_id(u).to_string()),
                    ("f", c.morphism_id(fc).to_string()),
                ]),
                (lhs != rhs).then(|| witness([("got", c.morphism_id(lhs))])),
            );
        }
    }

    // η and ε.
    let eta: Vec<MorIx> = {
        let mut v = Vec::with_capacity(b_x_c.object_count());
        for b in b_cat.objects() {
            for x in c.objects() {
                v.push(im.eta[b].at(x));
            }
        }
        v
    };
    let mut counit = Vec::with_capacity(objects.len());
    for (i, ob) in objects.iter().enumerate() {
        let free = f.ob(product_ob(b_cat, c, ob.b, ob.carrier));
        let pos = morphisms
            .iter()
            .position(|m| {
                m.src == free && m.tgt == i && m.u == b_cat.identity(ob.b) && m.h == ob.chi
            })
            .ok_or_else(|| GmError::invalid("EM(indexed)", "counit (id_b, χ) missing"))?;
        counit.push(pos);
        report.pass(
            "counit-components",
            witness([("algebra", cat.object_id(i).to_string())]),
        );
    }

    // Triangle identities of the fiber adjunction.
    for (i, ob) in objects.iter().enumerate() {
        // u(ε) ∘ η_{u(a)} = id.
        let composite = c.comp(
            morphisms[counit[i]].h,
            eta[product_ob(b_cat, c, ob.b, ob.carrier)],
        );
        report.check(
            "triangle-right",
            witness([("algebra", cat.object_id(i))]),
            (composite != c.identity(ob.carrier))
                .then(|| witness([("composite", c.morphism_id(composite))])),
        );
    }
    for b in b_cat.objects() {
        for x in c.objects() {
            // ε_{f(b,x)} ∘ f(id_b, η_{b,x}) = id in the total category.
            let fx = f.ob(product_ob(b_cat, c, b, x));
            let l_eta = f.mor(product_mor(
                b_cat,
                c,
                b_cat.identity(b),
                eta[product_ob(b_cat, c, b, x)],
            ));
            let composite = cat.comp(counit[fx], l_eta);
            report.check(
                "triangle-left",
                witness([
                    ("b", b_cat.object_id(b).to_string()),
                    ("object", c.object_id(x).to_string()),
                ]),
                (composite != cat.identity(fx))
                    .then(|| witness([("composite", cat.morphism_id(composite))])),
            );
        }
    }

    // Cartesian lifts: for u : b -> b' and (b', χ'), the candidate lift is
    // ((b, χ' ∘ T_{u,c'}), (u, id)); checked to exist and be cartesian by
    // search over all factorizations.
    for u in b_cat.morphisms() {
        for (j, tgt) in objects.iter().enumerate() {
            if tgt.b != b_cat.tgt(u) {
                continue;
            }
            let w = witness([
                ("u", b_cat.morphism_id(u).to_string()),
                ("over", cat.object_id(j).to_string()),
            ]);
            let lifted = IndexedEmObject {
                b: b_cat.src(u),
                carrier: tgt.carrier,
                chi: c.comp(tgt.chi, im.tu[u].at(tgt.carrier)),
            };
            let Some(i) = objects.iter().position(|o| *o == lifted) else {
                report.fail("cartesian-lift", w);
                continue;
            };
            let Some(lift) = morphisms
                .iter()
                .position(|m| m.src == i && m.tgt == j && m.u == u && m.h == c.identity(tgt.carrier))
            else {
                report.fail("cartesian-lift", w);
                continue;
            };
            // Universal property: every (w', h) : z -> tgt with
            // π0(w',h) = u ∘ v factors uniquely through the lift over v.
            let mut cartesian = true;
            for (z, _) in objects.iter().enumerate() {
                for psi in morphisms.iter().filter(|m| m.src == z && m.tgt == j) {
                    for v in b_cat.hom(objects[z].b, b_cat.src(u)) {
                        if b_cat.comp(u, v) != psi.u {
                            continue;
                        }
                        let factored: Vec<usize> = morphisms
                            .iter()
                            .enumerate()
                            .filter(|(_, m)| {
                                m.src == z && m.tgt == i && m.u == v && {
                                    let lift_m = &morphisms[lift];
                                    // (lift) ∘ m = psi in the total category.
                                    lift_m.h == c.identity(tgt.carrier)
                                        && c.comp(lift_m.h, m.h) == psi.h
                                }
                            })
                            .map(|(ix, _)| ix)
                            .collect();
                        if factored.len() != 1 {
                            cartesian = false;
                        }
                    }
                }
            }
            report.check(
                "cartesian-lift",
                w,
                (!cartesian).then(|| witness([("detail", "no unique factorization")])),
            );
        }
    }

    Ok(EmIndexed {
        cat,
        objects,
        morphisms,
        pi0,
        pi,
        f,
        u: u_table,
        eta,
        counit,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexed::{em_category, TableIndexedMonad};
    use crate::instances::{constant_flip_family, terminal_monad_on_finmini, walking_arrow, z2_flip_monad};

    #[test]
    fn trivial_index_recovers_ordinary_em() {
        // B = 1: the total category is the ordinary EM category.
        let m = z2_flip_monad();
        let im = TableIndexedMonad::constant_family(crate::instances::terminal_category(), &m);
        let em = em_indexed_build(&im).unwrap();
        assert!(em.report.passed(), "{}", em.report);
        let ordinary = em_category(&m, 1 << 16).unwrap();
        assert_eq!(em.cat.object_count(), ordinary.cat.object_count());
        assert_eq!(em.cat.morphism_count(), ordinary.cat.morphism_count());
        // The flip monad has exactly one algebra with two endomorphisms.
        assert_eq!(em.cat.object_count(), 1);
        assert_eq!(em.cat.morphism_count(), 2);
    }

    #[test]
    fn constant_family_total_category() {
        let im = constant_flip_family();
        let em = em_indexed_build(&im).unwrap();
        assert!(em.report.passed(), "{}", em.report);
        // One algebra per index object; over the arrow all algebra homs.
        assert_eq!(em.cat.object_count(), 2);
        assert_eq!(em.cat.morphism_count(), 6);
        // Morphisms over `u` are exactly the T_b-algebra homs into the
        // restricted structure: count matches a direct enumeration.
        let b_cat = walking_arrow();
        let u = b_cat.morphism_by_id("u").unwrap();
        let over_u = em.morphisms.iter().filter(|m| m.u == u).count();
        assert_eq!(over_u, 2);
    }

    #[test]
    fn terminal_monad_family() {
        let im = TableIndexedMonad::constant_family(walking_arrow(), &terminal_monad_on_finmini());
        let em = em_indexed_build(&im).unwrap();
        assert!(em.report.passed(), "{}", em.report);
        // Only (U, id) is an algebra of the terminal monad.
        assert_eq!(em.cat.object_count(), 2);
    }
}
