mod common;

use common::{proper, word};
use morseflow_core::grading::{
    bigraded_blocks, class_poly, diagram_isomorphic, morse_relations, spectral_sequence, Poly,
};
use morseflow_core::braid::{word_to_diagram, PositiveWord};
use morseflow_core::pipeline::{analyze, sample_down_sets, Analysis, AnalysisOptions};
use morseflow_core::fixtures;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn run(b: &morseflow_core::BraidDiagram) -> Analysis {
    analyze(b, AnalysisOptions::default()).unwrap()
}

fn check_invariants(a: &Analysis) -> Result<(), TestCaseError> {
    let k = a.scd.n_classes();
    for alpha in sample_down_sets(&a.scd.sc.order, 12, 30, 5) {
        let rel = morse_relations(&a.conley, &a.scd, &alpha).unwrap();
        prop_assert_eq!(rel.right_hand_side(), rel.sum_of_classes);
    }
    for c in 0..k {
        let ss = spectral_sequence(&a.conley, &a.scd, &[c]).unwrap();
        let poly = class_poly(&a.scd, &a.betti, c as u32);
        prop_assert_eq!(ss.limit_poly(), poly.clone());
        prop_assert_eq!(&ss.pages[0].e, &ss.e_inf);
        for (&(p, q), &r) in &ss.e_inf {
            prop_assert_eq!(p, a.scd.lap[c]);
            prop_assert_eq!(r, a.betti.get(c as u32, q));
        }
    }
    let minimal: Vec<usize> = (0..k).filter(|&c| (0..k).all(|d| d == c || !a.scd.class_le(d, c))).collect();
    let ss = spectral_sequence(&a.conley, &a.scd, &minimal).unwrap();
    prop_assert!(ss.pages.iter().all(|pg| pg.d.is_empty()));
    prop_assert_eq!(&ss.pages[0].e, &ss.e_inf);

    prop_assert_eq!(a.morse.parabolic.clone(), Poly::monomial(0, 0, 1));
    for (i, ni) in a.reduced.nodes.iter().enumerate() {
        prop_assert!(!ni.poly.is_zero());
        for (j, nj) in a.reduced.nodes.iter().enumerate() {
            prop_assert_eq!(a.reduced.poset.le(i, j), a.full.poset.le(ni.class as usize, nj.class as usize));
        }
    }
    prop_assert_eq!(a.full.total_poly(), a.reduced.total_poly());
    prop_assert!(diagram_isomorphic(&a.reduced, &a.reduced));

    let mut rebuilt: BTreeMap<(u32, u32), u8> = BTreeMap::new();
    for blk in &a.module.blocks {
        prop_assert!(blk.r >= 1);
        for (i, &r) in blk.rows.iter().enumerate() {
            let gr = a.conley.complex.generators[r as usize];
            prop_assert_eq!(gr.dim + 1, blk.q);
            prop_assert_eq!(a.scd.lap[gr.grade as usize] + blk.r, blk.p);
            for (j, &c) in blk.cols.iter().enumerate() {
                if blk.matrix[i][j] == 1 {
                    rebuilt.insert((r, c), 1);
                }
            }
        }
    }
    let entries: BTreeMap<(u32, u32), u8> = a.conley.complex.entries().into_iter().map(|e| (e, 1)).collect();
    prop_assert_eq!(rebuilt, entries);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn grading_invariants_on_random_words((n, letters) in word(5)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        check_invariants(&run(&b))?;
    }

    #[test]
    fn extension_invariance((n, letters) in word(5)) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let (a, e) = (run(&b), run(&b.extend()));
        prop_assert!(diagram_isomorphic(&a.reduced, &e.reduced));
        prop_assert_eq!(a.full.total_poly(), e.full.total_poly());
    }

    #[test]
    fn cyclic_rotation_invariance((n, letters) in word(5), shift in 0usize..5) {
        let Some(b) = proper(n, &letters) else { return Ok(()); };
        let mut rotated = letters.clone();
        rotated.rotate_left(shift % letters.len());
        let c = proper(n, &rotated).unwrap();
        let (a, r) = (run(&b), run(&c));
        prop_assert!(diagram_isomorphic(&a.reduced, &r.reduced));
        prop_assert_eq!(a.full.total_poly(), r.full.total_poly());
    }
}

#[test]
fn fixture_invariants() {
    for name in ["exampleA", "sigma_d3", "sigma_d4"] {
        check_invariants(&run(&fixtures::load(name).unwrap())).unwrap();
    }
}

#[test]
fn word_presentation_matches_sigma_fixture() {
    let w = word_to_diagram(&PositiveWord::parse("s1 s1 s1 s1 s1 s2").unwrap(), 3).unwrap();
    let (a, f) = (run(&w), run(&fixtures::load("sigma_d5").unwrap()));
    assert!(diagram_isomorphic(&a.reduced, &f.reduced));
    assert_eq!(a.full.total_poly(), f.full.total_poly());
    assert_eq!(a.morse.q, f.morse.q);
}

#[test]
fn distinct_examples_are_not_isomorphic() {
    let a = run(&fixtures::load("exampleA").unwrap());
    let s = run(&fixtures::load("sigma_d3").unwrap());
    assert!(!diagram_isomorphic(&a.reduced, &s.reduced));
}

#[test]
fn example_a_blocks_and_pages() {
    let a = run(&fixtures::load("exampleA").unwrap());
    let module = bigraded_blocks(&a.conley, &a.scd).unwrap();
    assert_eq!(module.blocks.len(), 2);
    assert!(module.blocks.iter().all(|b| b.q == 1 && b.p == 2));
    let all: Vec<usize> = (0..a.scd.n_classes()).collect();
    let ss = spectral_sequence(&a.conley, &a.scd, &all).unwrap();
    assert_eq!(ss.page(3).unwrap().e, ss.e_inf);
    assert_eq!(ss.page(2).unwrap().e, BTreeMap::from([((0, 0), 2), ((2, 1), 1)]));
    assert_eq!(ss.e_inf, BTreeMap::from([((0, 0), 1)]));
    let text: Vec<String> = a.reduced.nodes.iter().map(|n| n.poly.to_string()).collect();
    assert_eq!(text.iter().filter(|t| *t == "λ²μ").count(), 3);
    let dot = a.full.to_dot("full");
    assert_eq!(dot.matches(" -> ").count(), a.full.poset.hasse().len());
    let json = serde_json::to_value(a.reduced.to_json(Some(&module))).unwrap();
    assert_eq!(json["differential_blocks"].as_array().unwrap().len(), 2);
    assert_eq!(json["nodes"][0]["poincare"]["0,0"], 1);
}
