use morseflow_core::algebra::rank::restricted_betti;
use morseflow_core::complex::{Cell, CubicalComplex};
use morseflow_core::Error;
use proptest::prelude::*;

fn small_complex() -> impl Strategy<Value = CubicalComplex> {
    (3usize..=6, 1usize..=4)
        .prop_filter("size", |&(m, d)| (2 * m - 1).pow(d as u32) <= 20_000)
        .prop_map(|(m, d)| CubicalComplex::new(m, d, u64::MAX).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn indexing_round_trip(x in small_complex()) {
        prop_assert_eq!(x.n_cells(), (2 * x.m() - 1).pow(x.d() as u32));
        prop_assert_eq!(x.n_top(), (x.m() - 1).pow(x.d() as u32));
        for c in 0..x.n_cells() {
            let cell = x.cell(c);
            prop_assert_eq!(x.index(&cell).unwrap(), c);
            prop_assert_eq!(cell.dim(), x.dim(c));
            prop_assert_eq!(x.is_top(c), x.dim(c) == x.d());
        }
        for t in 0..x.n_top() {
            prop_assert_eq!(x.top_index(x.top_cell(t)), Some(t));
        }
    }

    #[test]
    fn faces_closure_and_star(x in small_complex()) {
        let mut faces = Vec::new();
        let mut cofaces = Vec::new();
        for c in 0..x.n_cells() {
            x.faces_of(c, &mut faces);
            prop_assert_eq!(faces.len(), 2 * x.dim(c));
            for &f in &faces {
                prop_assert_eq!(x.dim(f) + 1, x.dim(c));
                x.cofaces_of(f, &mut cofaces);
                prop_assert!(cofaces.contains(&c));
            }
            let closure = x.closure_of(c);
            prop_assert_eq!(closure.len(), 3usize.pow(x.dim(c) as u32));
            for &a in &closure {
                prop_assert!(x.star_of(a).contains(&c));
            }
            let star = x.star_of(c);
            let tops: Vec<usize> = star.iter().copied().filter(|&s| x.is_top(s)).collect();
            prop_assert_eq!(x.star_top_of(c), tops);
        }
    }

    #[test]
    fn boundary_squares_to_zero_and_complex_is_acyclic(x in small_complex()) {
        let bd = x.boundary_matrix().unwrap();
        bd.check_square_zero().unwrap();
        let dims: Vec<u32> = (0..x.n_cells()).map(|c| x.dim(c) as u32).collect();
        let b = restricted_betti(&dims, &bd, &vec![true; x.n_cells()]);
        prop_assert_eq!(b[0], 1);
        prop_assert!(b[1..].iter().all(|&v| v == 0));
    }
}

#[test]
fn cell_queries_and_errors() {
    let x = CubicalComplex::new(3, 2, u64::MAX).unwrap();
    let square = Cell::new(vec![1, 3]);
    assert_eq!(x.faces(&square).unwrap().len(), 4);
    assert_eq!(x.closure(&square).unwrap().len(), 9);
    assert_eq!(x.star(&Cell::new(vec![2, 2])).unwrap().len(), 9);
    assert_eq!(x.star(&Cell::new(vec![0, 0])).unwrap().len(), 4);
    assert!(x.index(&Cell::new(vec![5, 0])).is_err());
    assert!(x.index(&Cell::new(vec![0])).is_err());
    assert!(matches!(CubicalComplex::new(8, 8, 10_000_000), Err(Error::CellBudget { .. })));
}

#[test]
fn triplets_are_sorted() {
    let x = CubicalComplex::new(3, 1, u64::MAX).unwrap();
    let mut out = Vec::new();
    x.boundary_matrix().unwrap().write_triplets(&mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "0 1 1\n2 1 1\n2 3 1\n4 3 1\n");
}
