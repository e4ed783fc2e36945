mod common;

use common::{poset, reachability, relation};
use morseflow_core::order::{
    birkhoff_reconstruct, closure_trans_refl, count_down_sets, down_sets, is_convex, join_irreducibles,
    labeled_isomorphisms, principal_sets, scc_condense, BitSet, Poset, Relation,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_reachability(r in relation(10)) {
        let c = closure_trans_refl(&r);
        let reach = reachability(&r);
        for a in 0..r.size() {
            for b in 0..r.size() {
                prop_assert_eq!(c.le(a, b), reach[a][b]);
            }
        }
    }

    #[test]
    fn closure_is_idempotent(r in relation(10)) {
        let once = closure_trans_refl(&r);
        let twice = closure_trans_refl(&once.to_relation());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn condensation_classes_are_mutual_reachability(r in relation(10)) {
        let s = scc_condense(&r);
        let reach = reachability(&r);
        prop_assert!(s.order.order().is_antisymmetric());
        for a in 0..r.size() {
            for b in 0..r.size() {
                let same = reach[a][b] && reach[b][a];
                prop_assert_eq!(s.class_of[a] == s.class_of[b], same);
                prop_assert_eq!(s.order.le(s.class_of[a], s.class_of[b]), reach[a][b]);
            }
        }
        for (c, members) in s.classes.iter().enumerate() {
            prop_assert!(members.iter().all(|&m| s.class_of[m] == c));
        }
    }

    #[test]
    fn condensation_ideals_match_preorder_ideals(r in relation(10)) {
        let n = r.size();
        let pre = closure_trans_refl(&r);
        let brute = (0u32..1 << n)
            .filter(|&mask| (0..n).all(|b| mask >> b & 1 == 0 || pre.down(b).iter().all(|a| mask >> a & 1 == 1)))
            .count();
        let s = scc_condense(&r);
        prop_assert_eq!(count_down_sets(&s.order).unwrap(), brute as u128);
        prop_assert_eq!(down_sets(&s.order).unwrap().len(), brute);
    }

    #[test]
    fn birkhoff_round_trip(p in poset(8)) {
        let lattice = down_sets(&p).unwrap();
        let ji = join_irreducibles(&lattice).unwrap();
        let unit = vec![(); p.size()];
        prop_assert_eq!(ji.poset.size(), p.size());
        prop_assert!(!labeled_isomorphisms(&p, &unit, &ji.poset, &unit, 1).is_empty());
        let mut sorted = lattice.clone();
        sorted.sort();
        prop_assert_eq!(birkhoff_reconstruct(&lattice, &ji).unwrap(), sorted);
    }

    #[test]
    fn principal_sets_are_closed(p in poset(10)) {
        let n = p.size();
        for a in 0..n {
            let (down, up) = principal_sets(p.order(), a).unwrap();
            let d = BitSet::from_indices(n, down.iter().copied());
            let u = BitSet::from_indices(n, up.iter().copied());
            prop_assert!(p.is_down_set(&d));
            prop_assert_eq!(p.order().up_closure(&u), u.clone());
            prop_assert!(d.contains(a) && u.contains(a));
            prop_assert!(is_convex(&p, &down) && is_convex(&p, &up));
        }
    }

    #[test]
    fn hasse_generates_the_order(p in poset(10)) {
        let n = p.size();
        let cover = Relation::new(n, p.hasse().iter().copied()).unwrap();
        prop_assert_eq!(&closure_trans_refl(&cover), p.order());
        for &(a, b) in p.hasse() {
            prop_assert!((0..n).all(|c| c == a || c == b || !(p.le(a, c) && p.le(c, b))));
        }
    }

    #[test]
    fn isomorphism_found_after_relabelling(p in poset(9), seed in any::<u64>()) {
        let n = p.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = p.permute(&perm);
        let labels: Vec<usize> = (0..n).map(|a| p.order().up(a).count()).collect();
        let mut moved = vec![0; n];
        for a in 0..n {
            moved[perm[a]] = labels[a];
        }
        let isos = labeled_isomorphisms(&p, &labels, &q, &moved, 10_000);
        prop_assert!(isos.contains(&perm));
        for iso in isos {
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(p.le(a, b), q.le(iso[a], iso[b]));
                }
            }
        }
    }

    #[test]
    fn induced_order_embeds(p in poset(10), keep_bits in prop::collection::vec(any::<bool>(), 10)) {
        let keep: Vec<usize> = (0..p.size()).filter(|&a| keep_bits[a]).collect();
        let sub = p.induced(&keep);
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                prop_assert_eq!(sub.le(i, j), p.le(a, b));
            }
        }
    }
}

#[test]
fn relation_union_and_errors() {
    let a = Relation::new(3, [(0, 1)]).unwrap();
    let b = Relation::new(3, [(1, 2), (0, 1)]).unwrap();
    assert_eq!(a.union(&b).unwrap().pairs(), &[(0, 1), (1, 2)]);
    assert!(Poset::from_relation(&Relation::new(2, [(0, 1), (1, 0)]).unwrap()).is_err());
    assert!(Poset::from_dag(2, &[(0, 1), (1, 0)]).is_err());
    assert!(join_irreducibles(&[vec![0], vec![1]]).is_err());
    assert!(join_irreducibles(&[vec![], vec![0], vec![1]]).is_err());
}
