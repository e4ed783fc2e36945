//! Graded algebraic Morse reduction.
//!
//! A pair `(a, b)` with `a` in the boundary of `b` and equal grades is removed
//! by adding `∂b` to every other column containing `a`, then deleting rows and
//! columns `a` and `b`. Pairs whose removal creates no fill-in (`a` has the
//! single coface `b`, or `∂b = a`) are taken first from a worklist; otherwise
//! the lowest `(dim, index)` generator with a same-grade coface is paired with
//! its lowest-index same-grade coface.

use super::rank::symmetric_difference;
use super::{ChainMaps, ConleyComplex, GradedComplex};
use crate::complex::BoundaryMatrix;
use crate::error::{Error, Result};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

#[derive(Clone, Copy, Debug, Default)]
pub struct ReductionOptions {
    /// Keep the chain maps to and from the source complex.
    pub chain_maps: bool,
    /// Re-check `∂∘∂ = 0` and filtration on touched columns after every step.
    pub check_steps: bool,
}

struct Reducer<'c> {
    src: &'c GradedComplex,
    cols: Vec<Vec<u32>>,
    rows: Vec<Vec<u32>>,
    alive: Vec<bool>,
    phi_rows: Option<Vec<Vec<u32>>>,
    psi_cols: Option<Vec<Vec<u32>>>,
    scratch: Vec<u32>,
    pairs: usize,
}

fn remove_sorted(v: &mut Vec<u32>, x: u32) {
    if let Ok(p) = v.binary_search(&x) {
        v.remove(p);
    }
}

impl<'c> Reducer<'c> {
    fn new(src: &'c GradedComplex, opts: ReductionOptions) -> Self {
        let n = src.generators.len();
        let cols: Vec<Vec<u32>> = (0..n).map(|c| src.boundary.column(c).to_vec()).collect();
        let mut rows = vec![Vec::new(); n];
        for (c, col) in cols.iter().enumerate() {
            for &r in col {
                rows[r as usize].push(c as u32);
            }
        }
        let ident = || (0..n as u32).map(|g| vec![g]).collect::<Vec<_>>();
        Reducer {
            src,
            cols,
            rows,
            alive: vec![true; n],
            phi_rows: opts.chain_maps.then(ident),
            psi_cols: opts.chain_maps.then(ident),
            scratch: Vec::new(),
            pairs: 0,
        }
    }

    #[inline]
    fn grade(&self, g: u32) -> u32 {
        self.src.generators[g as usize].grade
    }

    fn xor_into(target: &mut Vec<u32>, other: &[u32], scratch: &mut Vec<u32>) {
        symmetric_difference(target, other, scratch);
        std::mem::swap(target, scratch);
    }

    /// Cancels `a ∈ ∂b`; returns the generators whose lists changed and those
    /// that may have gained cofaces.
    fn cancel(&mut self, a: u32, b: u32, touched: &mut Vec<u32>, gained: &mut Vec<u32>) {
        let (ai, bi) = (a as usize, b as usize);
        debug_assert!(self.cols[bi].binary_search(&a).is_ok());
        let s: Vec<u32> = self.rows[ai].iter().copied().filter(|&x| x != b).collect();
        let bcol = std::mem::take(&mut self.cols[bi]);

        if let Some(psi) = self.psi_cols.as_mut() {
            let pb = std::mem::take(&mut psi[bi]);
            for &x in &s {
                Self::xor_into(&mut psi[x as usize], &pb, &mut self.scratch);
            }
            psi[ai].clear();
            psi[bi].clear();
        }
        if let Some(phi) = self.phi_rows.as_mut() {
            let pa = std::mem::take(&mut phi[ai]);
            for &y in bcol.iter().filter(|&&y| y != a) {
                Self::xor_into(&mut phi[y as usize], &pa, &mut self.scratch);
            }
            phi[ai].clear();
            phi[bi].clear();
        }

        for &x in &s {
            Self::xor_into(&mut self.cols[x as usize], &bcol, &mut self.scratch);
        }
        for &r in &bcol {
            Self::xor_into(&mut self.rows[r as usize], &s, &mut self.scratch);
        }
        for &r in &bcol {
            remove_sorted(&mut self.rows[r as usize], b);
        }
        for x in std::mem::take(&mut self.rows[bi]) {
            remove_sorted(&mut self.cols[x as usize], b);
            touched.push(x);
        }
        for r in std::mem::take(&mut self.cols[ai]) {
            remove_sorted(&mut self.rows[r as usize], a);
            touched.push(r);
        }
        self.rows[ai].clear();
        self.alive[ai] = false;
        self.alive[bi] = false;
        self.pairs += 1;
        touched.extend(s.iter().copied());
        touched.extend(bcol.iter().copied().filter(|&r| r != a));
        gained.clear();
        gained.extend(bcol.iter().copied().filter(|&r| r != a));
    }

    /// Zero-fill pair with `g` in either role, if one exists.
    fn free_pair(&self, g: u32) -> Option<(u32, u32)> {
        let gi = g as usize;
        if let [b] = self.rows[gi][..] {
            if self.grade(b) == self.grade(g) {
                return Some((g, b));
            }
        }
        if let [a] = self.cols[gi][..] {
            if self.grade(a) == self.grade(g) {
                return Some((a, g));
            }
        }
        None
    }

    fn same_grade_coface(&self, a: u32) -> Option<u32> {
        let ga = self.grade(a);
        self.rows[a as usize].iter().copied().find(|&b| self.grade(b) == ga)
    }

    fn check_columns(&self, cols: &[u32]) -> Result<()> {
        let mut acc = Vec::new();
        for &c in cols {
            let ci = c as usize;
            if !self.alive[ci] {
                continue;
            }
            acc.clear();
            for &f in &self.cols[ci] {
                if !self.src.order_le(self.grade(f), self.grade(c)) {
                    return Err(Error::invariant(format!("reduction broke the filtration at column {c}")));
                }
                let mut next = Vec::new();
                symmetric_difference(&acc, &self.cols[f as usize], &mut next);
                acc = next;
            }
            if !acc.is_empty() {
                return Err(Error::invariant(format!("reduction broke ∂∘∂ = 0 at column {c}")));
            }
        }
        Ok(())
    }

    fn run(&mut self, opts: ReductionOptions) -> Result<()> {
        let n = self.cols.len() as u32;
        let mut work: VecDeque<u32> = (0..n).collect();
        let mut queued = vec![true; n as usize];
        let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
            (0..n).map(|g| Reverse((self.src.generators[g as usize].dim, g))).collect();
        let (mut touched, mut gained) = (Vec::new(), Vec::new());
        loop {
            let pair = if let Some(g) = work.pop_front() {
                queued[g as usize] = false;
                if !self.alive[g as usize] {
                    continue;
                }
                match self.free_pair(g) {
                    Some(p) => p,
                    None => continue,
                }
            } else {
                let mut found = None;
                while let Some(Reverse((_, a))) = heap.pop() {
                    if !self.alive[a as usize] {
                        continue;
                    }
                    if let Some(b) = self.same_grade_coface(a) {
                        found = Some((a, b));
                        break;
                    }
                }
                match found {
                    Some(p) => p,
                    None => break,
                }
            };
            touched.clear();
            self.cancel(pair.0, pair.1, &mut touched, &mut gained);
            touched.sort_unstable();
            touched.dedup();
            for &t in &touched {
                if !self.alive[t as usize] {
                    continue;
                }
                if !queued[t as usize] {
                    queued[t as usize] = true;
                    work.push_back(t);
                }
            }
            for &t in &gained {
                heap.push(Reverse((self.src.generators[t as usize].dim, t)));
            }
            if opts.check_steps {
                self.check_columns(&touched)?;
            }
        }
        Ok(())
    }
}

/// Reduces `c` to a strict complex: no differential entry between
/// generators of equal grade remains.
pub fn connection_matrix(c: &GradedComplex, opts: ReductionOptions) -> Result<ConleyComplex> {
    let mut red = Reducer::new(c, opts);
    red.run(opts)?;
    let survivors: Vec<u32> = (0..c.generators.len() as u32).filter(|&g| red.alive[g as usize]).collect();
    let mut new_index = vec![u32::MAX; c.generators.len()];
    for (k, &g) in survivors.iter().enumerate() {
        new_index[g as usize] = k as u32;
    }
    let columns: Vec<Vec<u32>> = survivors
        .iter()
        .map(|&g| red.cols[g as usize].iter().map(|&r| new_index[r as usize]).collect())
        .collect();
    let generators = survivors.iter().map(|&g| c.generators[g as usize]).collect();
    let complex = GradedComplex::new(generators, BoundaryMatrix::from_columns(&columns)?, c.grading.clone())?;
    for (k, col) in columns.iter().enumerate() {
        let g = complex.generators[k].grade;
        if col.iter().any(|&r| complex.generators[r as usize].grade == g) {
            return Err(Error::invariant("reduced complex is not strict"));
        }
    }
    let chain_maps = match (red.phi_rows.take(), red.psi_cols.take()) {
        (Some(phi_rows), Some(psi_cols)) => {
            let mut phi = vec![Vec::new(); c.generators.len()];
            for &g in &survivors {
                for &s in &phi_rows[g as usize] {
                    phi[s as usize].push(new_index[g as usize]);
                }
            }
            let psi = survivors.iter().map(|&g| psi_cols[g as usize].clone()).collect();
            Some(ChainMaps { phi, psi })
        }
        _ => None,
    };
    Ok(ConleyComplex { complex, source: survivors, chain_maps, pairs_cancelled: red.pairs })
}
