mod common;

use common::{proper, word};
use morseflow_core::braid::BraidDiagram;
use morseflow_core::dynamics::{compute_lambda, morse_preorder, relations, sc_structure, verify_block};
use morseflow_core::order::scc_condense;
use morseflow_core::pipeline::sample_down_sets;
use morseflow_core::{fixtures, CubicalComplex};
use proptest::prelude::*;

/// Crossings of the free strand through the midpoints of top cell `coords`,
/// in doubled integer heights.
fn lambda_oracle(b: &BraidDiagram, coords: &[usize]) -> u32 {
    let d = b.d();
    let x: Vec<i64> = coords.iter().map(|&h| 2 * h as i64 + 1).collect();
    let mut count = 0;
    for row in b.anchors() {
        for k in 0..d {
            let here = x[k] - 2 * row[k];
            let next = x[(k + 1) % d] - 2 * row[k + 1];
            if here * next < 0 {
                count += 1;
            }
        }
    }
    count
}

fn setup(b: &BraidDiagram) -> CubicalComplex {
    CubicalComplex::new(b.m(), b.d(), u64::MAX).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lambda_matches_oracle((n, letters) in word(5)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let x = setup(&b);
        let lam = compute_lambda(&x, &b).unwrap();
        for t in 0..x.n_top() {
            let want = lambda_oracle(&b, &x.top_coords(t));
            prop_assert_eq!(lam.lambda_top[t], want);
            prop_assert_eq!(want % 2, 0);
        }
        for c in 0..x.n_cells() {
            let vals: Vec<u32> =
                x.star_top_of(c).iter().map(|&s| lam.lambda_top[x.top_index(s).unwrap()]).collect();
            prop_assert_eq!(lam.lambda_minus[c], *vals.iter().min().unwrap());
            prop_assert_eq!(lam.lambda_plus[c], *vals.iter().max().unwrap());
        }
    }

    #[test]
    fn flow_relations_are_monotone((n, letters) in word(5)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let x = setup(&b);
        let lam = compute_lambda(&x, &b).unwrap();
        let rel = relations(&x, &lam).unwrap();
        for &(s, t) in rel.f.pairs() {
            prop_assert!(rel.etop.contains(s, t));
            prop_assert!(lam.lambda_top[s] <= lam.lambda_top[t]);
        }
        for xi in 0..x.n_cells() {
            for &eta in rel.r_predecessors(xi) {
                prop_assert!(rel.e_contains(&x, eta as usize, xi));
                prop_assert!(lam.big_lambda_le(eta as usize, xi));
            }
        }
        let scd = sc_structure(&x, &lam, &rel).unwrap();
        for (c, members) in scd.sc.classes.iter().enumerate() {
            for &t in members {
                prop_assert_eq!(lam.lambda_top[t], scd.lambda_class[c]);
            }
            prop_assert_eq!(2 * scd.lap[c], scd.lambda_class[c]);
        }
        for a in 0..scd.n_classes() {
            for b2 in 0..scd.n_classes() {
                if scd.class_le(a, b2) {
                    prop_assert!(scd.lap[a] <= scd.lap[b2]);
                }
            }
        }
    }

    #[test]
    fn dyn_is_minimal_and_order_preserving((n, letters) in word(5)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let x = setup(&b);
        let lam = compute_lambda(&x, &b).unwrap();
        let rel = relations(&x, &lam).unwrap();
        let scd = sc_structure(&x, &lam, &rel).unwrap();
        let mut faces = Vec::new();
        for c in 0..x.n_cells() {
            let classes: Vec<usize> =
                x.star_top_of(c).iter().map(|&s| scd.sc.class_of[x.top_index(s).unwrap()]).collect();
            let d = scd.dyn_map[c] as usize;
            prop_assert!(classes.contains(&d));
            prop_assert!(classes.iter().all(|&k| scd.class_le(d, k)));
            x.faces_of(c, &mut faces);
            for &f in &faces {
                prop_assert!(scd.class_le(scd.dyn_map[f] as usize, d));
            }
        }
        let mp = morse_preorder(&scd);
        if x.n_cells() <= 800 {
            let pre = mp.to_preorder();
            for a in 0..x.n_cells() {
                for c in 0..x.n_cells() {
                    prop_assert_eq!(pre.le(a, c), scd.class_le(scd.dyn_map[a] as usize, scd.dyn_map[c] as usize));
                }
            }
        }
    }

    #[test]
    fn down_sets_are_blocks((n, letters) in word(4)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let x = setup(&b);
        let lam = compute_lambda(&x, &b).unwrap();
        let rel = relations(&x, &lam).unwrap();
        let scd = sc_structure(&x, &lam, &rel).unwrap();
        for alpha in sample_down_sets(&scd.sc.order, 12, 40, 3) {
            prop_assert!(verify_block(&x, &rel, &scd, &alpha).unwrap());
        }
    }

    #[test]
    fn r_components_on_top_cells_are_dyn_fibers((n, letters) in word(4)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let x = setup(&b);
        prop_assume!(x.n_cells() <= 7000);
        let lam = compute_lambda(&x, &b).unwrap();
        let rel = relations(&x, &lam).unwrap();
        let scd = sc_structure(&x, &lam, &rel).unwrap();
        let comps = scc_condense(&rel.materialize_r(&x));
        let tops: Vec<usize> = (0..x.n_top()).map(|t| x.top_cell(t)).collect();
        for &s in &tops {
            for &t in &tops {
                prop_assert_eq!(
                    comps.class_of[s] == comps.class_of[t],
                    scd.dyn_map[s] == scd.dyn_map[t]
                );
            }
        }
    }
}

#[test]
fn every_down_set_of_example_a_is_a_block() {
    let b = fixtures::load("exampleA").unwrap();
    let x = setup(&b);
    let lam = compute_lambda(&x, &b).unwrap();
    let rel = relations(&x, &lam).unwrap();
    let scd = sc_structure(&x, &lam, &rel).unwrap();
    assert_eq!(scd.n_classes(), 29);
    let n = scd.n_classes();
    let principal: Vec<Vec<usize>> = (0..n).map(|c| scd.principal_down_set(c)).collect();
    for p in &principal {
        assert!(verify_block(&x, &rel, &scd, p).unwrap());
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut u: Vec<usize> = principal[i].iter().chain(&principal[j]).copied().collect();
            u.sort_unstable();
            u.dedup();
            assert!(verify_block(&x, &rel, &scd, &u).unwrap());
        }
    }
    assert!(verify_block(&x, &rel, &scd, &[]).unwrap());
    let top = (0..n).collect::<Vec<_>>();
    assert!(verify_block(&x, &rel, &scd, &top).unwrap());
    let not_down = vec![n - 1];
    assert!(scd.principal_down_set(n - 1).len() > 1 && verify_block(&x, &rel, &scd, &not_down).is_err());
}

#[test]
fn materialized_relations_agree_with_queries() {
    let b = fixtures::load("exampleA").unwrap();
    let x = setup(&b);
    let lam = compute_lambda(&x, &b).unwrap();
    let rel = relations(&x, &lam).unwrap();
    let e = rel.materialize_e(&x);
    let r = rel.materialize_r(&x);
    assert_eq!(r.pairs().len(), rel.r_pair_count());
    for a in 0..x.n_cells() {
        for c in 0..x.n_cells() {
            assert_eq!(e.contains(a, c), rel.e_contains(&x, a, c));
            assert_eq!(r.contains(a, c), rel.r_contains(&x, &lam, a, c));
        }
    }
}
