//! Class-graded GF(2) chain complexes, their reduction to a Conley complex and
//! homology of convex pieces.

pub mod rank;
mod reduce;

pub use reduce::{connection_matrix, ReductionOptions};

use crate::complex::BoundaryMatrix;
use crate::dynamics::ScData;
use crate::error::{Error, Result};
use crate::order::{is_convex, Poset};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Generator with its grade (class index), dimension and a free label
/// (the cell index for cellular complexes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub grade: u32,
    pub dim: u32,
    pub label: u32,
}

/// Chain complex whose generators carry grades in a poset and whose
/// differential never increases the grade.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub generators: Vec<Generator>,
    pub boundary: BoundaryMatrix,
    pub grading: Arc<Poset>,
}

impl GradedComplex {
    /// Checks dimensions and the filtration condition on every entry.
    pub fn new(generators: Vec<Generator>, boundary: BoundaryMatrix, grading: Arc<Poset>) -> Result<Self> {
        if boundary.size() != generators.len() {
            return Err(Error::invalid("boundary size does not match generator count"));
        }
        if let Some(g) = generators.iter().find(|g| g.grade as usize >= grading.size()) {
            return Err(Error::invalid(format!("grade {} outside the grading poset", g.grade)));
        }
        for (c, gc) in generators.iter().enumerate() {
            for &r in boundary.column(c) {
                let gr = &generators[r as usize];
                if gr.dim + 1 != gc.dim {
                    return Err(Error::invariant(format!("entry ({r},{c}) does not lower dimension by one")));
                }
                if !grading.le(gr.grade as usize, gc.grade as usize) {
                    return Err(Error::invariant(format!("entry ({r},{c}) is not filtered")));
                }
            }
        }
        Ok(GradedComplex { generators, boundary, grading })
    }

    #[inline]
    pub fn order_le(&self, a: u32, b: u32) -> bool {
        self.grading.le(a as usize, b as usize)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dims(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.dim).collect()
    }

    /// Differential entries as sorted `(row, col)` pairs.
    pub fn entries(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = (0..self.len())
            .flat_map(|c| self.boundary.column(c).iter().map(move |&r| (r, c as u32)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_strict(&self) -> bool {
        self.entries()
            .iter()
            .all(|&(r, c)| self.generators[r as usize].grade != self.generators[c as usize].grade)
    }

    /// Per-dimension Betti numbers of the part graded by `classes`, which must be convex.
    pub fn homology_convex(&self, classes: &[usize]) -> Result<Vec<usize>> {
        if classes.iter().any(|&c| c >= self.grading.size()) {
            return Err(Error::invalid("class out of range"));
        }
        if !is_convex(&self.grading, classes) {
            return Err(Error::invalid("class set is not convex"));
        }
        Ok(self.homology_unchecked(classes))
    }

    fn homology_unchecked(&self, classes: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.grading.size()];
        for &c in classes {
            member[c] = true;
        }
        let keep: Vec<bool> = self.generators.iter().map(|g| member[g.grade as usize]).collect();
        let mut b = rank::restricted_betti(&self.dims(), &self.boundary, &keep);
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }
}

/// Chain maps between a source complex and its reduction:
/// `phi[s]` lists the survivors in the image of source generator `s`,
/// `psi[k]` lists the source generators in the image of survivor `k`.
#[derive(Clone, Debug)]
pub struct ChainMaps {
    pub phi: Vec<Vec<u32>>,
    pub psi: Vec<Vec<u32>>,
}

/// Strict graded complex obtained by reduction.
#[derive(Clone, Debug)]
pub struct ConleyComplex {
    pub complex: GradedComplex,
    /// Source generator index of each survivor.
    pub source: Vec<u32>,
    pub chain_maps: Option<ChainMaps>,
    pub pairs_cancelled: usize,
}

/// Cellular complex graded by `dyn`.
pub fn graded_complex(boundary: &BoundaryMatrix, scd: &ScData, dims: &[u32]) -> Result<GradedComplex> {
    if dims.len() != boundary.size() || scd.dyn_map.len() != boundary.size() {
        return Err(Error::invalid("boundary, grading and dimensions disagree in size"));
    }
    let generators = (0..boundary.size())
        .map(|c| Generator { grade: scd.dyn_map[c], dim: dims[c], label: c as u32 })
        .collect();
    GradedComplex::new(generators, boundary.clone(), Arc::new(scd.sc.order.clone()))
}

/// Rank of `(class, dim)` pieces of a strict complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub ranks: BTreeMap<(u32, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, class: u32, q: u32) -> usize {
        self.ranks.get(&(class, q)).copied().unwrap_or(0)
    }

    pub fn classes(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.ranks.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }
}

pub fn betti_bm(cc: &ConleyComplex) -> Result<BettiTable> {
    if !cc.complex.is_strict() {
        return Err(Error::invariant("Borel-Moore ranks need a strict complex"));
    }
    let mut ranks = BTreeMap::new();
    for g in &cc.complex.generators {
        *ranks.entry((g.grade, g.dim)).or_insert(0) += 1;
    }
    Ok(BettiTable { ranks })
}

/// Compares restricted homology ranks of source and reduction on each
/// sampled down-set; the first disagreement is an error.
pub fn verify_equivalence(src: &GradedComplex, cc: &ConleyComplex, samples: &[Vec<usize>]) -> Result<()> {
    for alpha in samples {
        let set = crate::order::BitSet::from_indices(src.grading.size(), alpha.iter().copied());
        if !src.grading.is_down_set(&set) {
            return Err(Error::invalid(format!("{alpha:?} is not a down-set")));
        }
        let a = src.homology_unchecked(alpha);
        let b = cc.complex.homology_unchecked(alpha);
        if a != b {
            return Err(Error::invariant(format!(
                "homology of down-set {alpha:?} differs: source {a:?}, reduced {b:?}"
            )));
        }
    }
    Ok(())
}

/// Checks that retained chain maps are filtered chain maps with `Φ∘Ψ = id`.
pub fn verify_chain_maps(src: &GradedComplex, cc: &ConleyComplex) -> Result<()> {
    let maps = cc.chain_maps.as_ref().ok_or_else(|| Error::invalid("chain maps were not retained"))?;
    let red = &cc.complex;
    let fail = |what: &str| Err(Error::invariant(format!("chain map check failed: {what}")));
    let xor = |acc: &mut Vec<u32>, add: &[u32]| {
        let mut out = Vec::new();
        rank::symmetric_difference(acc, add, &mut out);
        *acc = out;
    };
    for (s, img) in maps.phi.iter().enumerate() {
        if img.iter().any(|&k| !src.order_le(red.generators[k as usize].grade, src.generators[s].grade)) {
            return fail("Φ is not filtered");
        }
        let mut lhs = Vec::new();
        for &f in src.boundary.column(s) {
            xor(&mut lhs, &maps.phi[f as usize]);
        }
        let mut rhs = Vec::new();
        for &k in img {
            xor(&mut rhs, red.boundary.column(k as usize));
        }
        if lhs != rhs {
            return fail("Φ does not commute with the differential");
        }
    }
    for (k, img) in maps.psi.iter().enumerate() {
        if img.iter().any(|&s| !src.order_le(src.generators[s as usize].grade, red.generators[k].grade)) {
            return fail("Ψ is not filtered");
        }
        let mut lhs = Vec::new();
        for &s in img {
            xor(&mut lhs, src.boundary.column(s as usize));
        }
        let mut rhs = Vec::new();
        for &f in red.boundary.column(k) {
            xor(&mut rhs, &maps.psi[f as usize]);
        }
        if lhs != rhs {
            return fail("Ψ does not commute with the differential");
        }
        let mut round = Vec::new();
        for &s in img {
            xor(&mut round, &maps.phi[s as usize]);
        }
        if round != [k as u32] {
            return fail("Φ∘Ψ is not the identity");
        }
    }
    Ok(())
}
