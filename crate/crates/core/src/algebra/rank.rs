//! Plain GF(2) column reduction for ranks and Betti numbers of restricted
//! chain complexes. Shares no code with the Morse reduction.

use crate::complex::BoundaryMatrix;

/// XOR of two ascending index lists.
pub fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Column reduction keyed on the largest row index. Returns the rank and,
/// for each pivot, the row it was found in (`pivot_rows`).
struct Reduction {
    pivot_rows: Vec<u32>,
}

fn reduce_columns(columns: impl Iterator<Item = Vec<u32>>, n_rows: usize) -> Reduction {
    let mut owner: Vec<u32> = vec![u32::MAX; n_rows];
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut scratch = Vec::new();
    for mut col in columns {
        col.sort_unstable();
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == u32::MAX {
                break;
            }
            symmetric_difference(&col, &reduced[o as usize], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
        }
        if let Some(&low) = col.last() {
            owner[low as usize] = reduced.len() as u32;
            pivot_rows.push(low);
            reduced.push(col);
        }
    }
    Reduction { pivot_rows }
}

/// Rank over GF(2) of the matrix with the given sparse columns.
pub fn gf2_rank(columns: &[Vec<u32>]) -> usize {
    let n_rows = columns.iter().flatten().map(|&r| r as usize + 1).max().unwrap_or(0);
    reduce_columns(columns.iter().cloned(), n_rows).pivot_rows.len()
}

/// Betti numbers `b_q` of the subcomplex spanned by the generators with
/// `keep[g]`, for `q = 0..=max_dim`. The kept set must be closed under the
/// differential modulo dropped generators, which holds for convex sets of a
/// filtered complex.
pub fn restricted_betti(dims: &[u32], boundary: &BoundaryMatrix, keep: &[bool]) -> Vec<usize> {
    let n = dims.len();
    let max_dim = (0..n).filter(|&g| keep[g]).map(|g| dims[g] as usize).max();
    let Some(max_dim) = max_dim else {
        return Vec::new();
    };
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); max_dim + 1];
    for g in (0..n).filter(|&g| keep[g]) {
        by_dim[dims[g] as usize].push(g);
    }
    let mut rank = vec![0usize; max_dim + 2];
    let mut cleared = vec![false; n];
    for q in (1..=max_dim).rev() {
        let cols = by_dim[q].iter().filter(|&&g| !cleared[g]).map(|&g| {
            boundary.column(g).iter().copied().filter(|&r| keep[r as usize]).collect::<Vec<u32>>()
        });
        let red = reduce_columns(cols, n);
        rank[q] = red.pivot_rows.len();
        for &r in &red.pivot_rows {
            cleared[r as usize] = true;
        }
    }
    (0..=max_dim).map(|q| by_dim[q].len() - rank[q] - rank[q + 1]).collect()
}
