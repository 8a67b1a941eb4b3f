//! Property tests: spec invariants quantified over generated inputs.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use gmkit::effectlang::{check_adequacy, check_widening, infer_effect, parse_program, Program};
use gmkit::fincat::{opposite, product_category, RawCategory};
use gmkit::setcat::all_injections;

/// Generate a random preorder on up to four points and close it into a
/// category: objects are the points, a single morphism wherever related.
fn preorder_category(edges: Vec<(usize, usize)>, n: usize) -> RawCategory {
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        rel[i][i] = true;
    }
    for (a, b) in edges {
        rel[a % n][b % n] = true;
    }
    // Transitive closure.
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !rel[i][j] {
                    continue;
                }
                for k in 0..n {
                    if rel[j][k] && !rel[i][k] {
                        rel[i][k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut raw = RawCategory::new("preorder");
    raw.objects = (0..n).map(|i| format!("p{i}")).collect();
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] {
                raw.morphisms
                    .push((format!("r{i}_{j}"), format!("p{i}"), format!("p{j}")));
            }
        }
    }
    for i in 0..n {
        raw.identities
            .insert(format!("p{i}"), format!("r{i}_{i}"));
    }
    for i in 0..n {
        for j in 0..n {
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] {
                    raw.comp.push((
                        format!("r{j}_{k}"),
                        format!("r{i}_{j}"),
                        format!("r{i}_{k}"),
                    ));
                }
            }
        }
    }
    raw
}

proptest! {
    /// Preorder closure always validates; the double opposite is
    /// table-identical; product object/morphism counts multiply.
    #[test]
    fn category_combinators_respect_tables(
        edges in proptest::collection::vec((0usize..4, 0usize..4), 0..8),
        n in 1usize..4,
    ) {
        let raw = preorder_category(edges, n);
        let cat = raw.validate().expect("preorder closure is a category");
        let op = opposite(&cat);
        prop_assert!(op.to_raw().validate().is_ok());
        prop_assert_eq!(opposite(&op), cat.clone());
        let prod = product_category(&cat, &op).unwrap();
        prop_assert_eq!(prod.object_count(), cat.object_count() * cat.object_count());
        prop_assert_eq!(
            prod.morphism_count(),
            cat.morphism_count() * cat.morphism_count()
        );
        prop_assert!(prod.to_raw().validate().is_ok());
    }
}

/// Random programs over two values and registers 0..5 with footprint <= 3.
fn arb_program() -> impl Strategy<Value = Program> {
    let cmd = prop_oneof![
        (0usize..3).prop_map(|r| format!("read {r}")),
        ((0usize..3), (0u64..2)).prop_map(|(r, v)| format!("write {r} {v}")),
        (0u64..2).prop_map(|v| format!("ret {v}")),
    ];
    proptest::collection::vec(cmd, 1..6).prop_map(|cmds| {
        parse_program(&cmds.join("; "), 2).expect("generated programs parse")
    })
}

proptest! {
    /// Adequacy: run = denote pointwise on every random program.
    #[test]
    fn random_programs_are_adequate(p in arb_program()) {
        prop_assert!(infer_effect(&p).footprint <= 3);
        prop_assert!(check_adequacy(&p, 2, 3).unwrap());
    }

    /// Grade monotonicity: widening the denotation along any injection
    /// agrees with executing through renamed registers.
    #[test]
    fn random_widening_agrees(p in arb_program(), pick in 0usize..64) {
        let m = infer_effect(&p).footprint;
        let target = 3usize;
        let injections = all_injections(m, target);
        prop_assume!(!injections.is_empty());
        let u = &injections[pick % injections.len()];
        prop_assert!(check_widening(&p, 2, u, target).unwrap());
    }
}
