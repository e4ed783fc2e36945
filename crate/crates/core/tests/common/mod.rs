#![allow(dead_code)]

use morseflow_core::braid::{word_to_diagram, BraidDiagram, BraidError, PositiveWord};
use morseflow_core::order::{Poset, Relation};
use morseflow_core::Error;
use proptest::prelude::*;

/// `(n_inner, letters)` of a positive word with at most `max_len` letters.
pub fn word(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=3).prop_flat_map(move |n| (Just(n), prop::collection::vec(1..n, 1..=max_len)))
}

/// Diagram of a word, or `None` when the closure fixes an inner strand.
pub fn proper(n_inner: usize, letters: &[usize]) -> Option<BraidDiagram> {
    match word_to_diagram(&PositiveWord { letters: letters.to_vec() }, n_inner) {
        Ok(b) => Some(b),
        Err(Error::Braid(errs)) if errs.iter().any(|e| matches!(e, BraidError::Improper { .. })) => None,
        Err(e) => panic!("word {letters:?} on {n_inner} strands: {e}"),
    }
}

pub fn relation(max_n: usize) -> impl Strategy<Value = Relation> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| Relation::new(n, pairs).unwrap())
    })
}

/// Random poset: edges go from lower to higher position in a shuffled order.
pub fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n).prop_flat_map(|n| {
        (Just(n).prop_shuffle_vec(), prop::collection::vec(any::<bool>(), n * n)).prop_map(move |(perm, bits)| {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if bits[i * n + j] {
                        edges.push((perm[i], perm[j]));
                    }
                }
            }
            Poset::from_relation(&Relation::new(n, edges).unwrap()).unwrap()
        })
    })
}

trait ShuffleRange {
    fn prop_shuffle_vec(self) -> BoxedStrategy<Vec<usize>>;
}

impl ShuffleRange for Just<usize> {
    fn prop_shuffle_vec(self) -> BoxedStrategy<Vec<usize>> {
        Just((0..self.0).collect::<Vec<_>>()).prop_shuffle().boxed()
    }
}

/// Reachability matrix by Floyd–Warshall, reflexive.
pub fn reachability(r: &Relation) -> Vec<Vec<bool>> {
    let n = r.size();
    let mut m = vec![vec![false; n]; n];
    for (a, row) in m.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(a, b) in r.pairs() {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    m
}
