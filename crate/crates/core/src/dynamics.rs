//! Crossing-number data on the cubical complex, the flow relations built from
//! it, the condensation poset of the discrete resolution and the grading map
//! `dyn` from cells to classes.

use crate::braid::BraidDiagram;
use crate::complex::CubicalComplex;
use crate::error::{Error, Result};
use crate::order::{scc_condense, BitSet, PreOrder, Relation, SccPoset};
use rayon::prelude::*;

/// Crossing numbers: `lambda_top` per top cell (top-cell numbering),
/// `lambda_minus`/`lambda_plus` per cell.
#[derive(Clone, Debug)]
pub struct LambdaData {
    pub lambda_top: Vec<u32>,
    pub lambda_minus: Vec<u32>,
    pub lambda_plus: Vec<u32>,
}

impl LambdaData {
    /// `Λ(a) ≤ Λ(b)` in the product order.
    #[inline]
    pub fn big_lambda_le(&self, a: usize, b: usize) -> bool {
        self.lambda_minus[a] <= self.lambda_minus[b] && self.lambda_plus[a] <= self.lambda_plus[b]
    }

    /// Top-cell values as a text grid for two-dimensional complexes: one line
    /// per value of the second coordinate (largest first), first coordinate
    /// increasing left to right.
    pub fn table_2d(&self, x: &CubicalComplex) -> Result<String> {
        if x.d() != 2 {
            return Err(Error::invalid(format!("λ table needs d = 2, got d = {}", x.d())));
        }
        let k = x.m() - 1;
        let width = self.lambda_top.iter().map(|v| v.to_string().len()).max().unwrap_or(1).max(2);
        let mut out = String::new();
        for h1 in (0..k).rev() {
            let row: Vec<String> =
                (0..k).map(|h0| format!("{:>width$}", self.lambda_top[h0 * k + h1])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        Ok(out)
    }
}

fn check_shapes(x: &CubicalComplex, b: &BraidDiagram) -> Result<()> {
    if x.m() != b.m() || x.d() != b.d() {
        return Err(Error::invalid(format!(
            "complex is for m={}, d={} but braid has m={}, d={}",
            x.m(),
            x.d(),
            b.m(),
            b.d()
        )));
    }
    Ok(())
}

/// Crossing numbers at top-cell midpoints and their extremes over stars.
pub fn compute_lambda(x: &CubicalComplex, b: &BraidDiagram) -> Result<LambdaData> {
    check_shapes(x, b)?;
    let lambda_top = (0..x.n_top())
        .into_par_iter()
        .map(|t| {
            let mid: Vec<f64> = x.top_coords(t).iter().map(|&h| h as f64 + 0.5).collect();
            let lam = b.intersection_number(&mid)?;
            if lam % 2 == 1 {
                return Err(Error::invariant(format!("odd crossing number {lam} on top cell {t}")));
            }
            Ok(lam)
        })
        .collect::<Result<Vec<u32>>>()?;
    let (lambda_minus, lambda_plus): (Vec<u32>, Vec<u32>) = (0..x.n_cells())
        .into_par_iter()
        .map(|c| {
            let (mut lo, mut hi) = (u32::MAX, 0);
            x.for_each_star_top(c, |_, t| {
                lo = lo.min(lambda_top[t]);
                hi = hi.max(lambda_top[t]);
            });
            (lo, hi)
        })
        .unzip();
    Ok(LambdaData { lambda_top, lambda_minus, lambda_plus })
}

/// Flow relations. `E` and `R` on all cells are kept implicit (membership
/// queries plus the predecessor lists of `R`); the top-cell relations are explicit.
#[derive(Clone, Debug)]
pub struct FlowRelations {
    /// Adjacency of top cells across codimension-one faces (top-cell numbering).
    pub etop: Relation,
    /// Discrete resolution: `(a, b) ∈ etop` with `λ(a) ≤ λ(b)`.
    pub f: Relation,
    r_pred_offsets: Vec<usize>,
    r_pred: Vec<u32>,
}

/// Whether `a` lies in the closure of `b`.
pub fn in_closure(x: &CubicalComplex, a: usize, b: usize) -> bool {
    (0..x.d()).all(|i| {
        let (ca, cb) = (x.digit(a, i), x.digit(b, i));
        ca == cb || (cb % 2 == 1 && ca.abs_diff(cb) == 1)
    })
}

impl FlowRelations {
    /// `(a, b) ∈ E`: one of the two is a top cell containing the other in its closure.
    pub fn e_contains(&self, x: &CubicalComplex, a: usize, b: usize) -> bool {
        (x.is_top(b) && in_closure(x, a, b)) || (x.is_top(a) && in_closure(x, b, a))
    }

    /// `(a, b) ∈ R`: `(a, b) ∈ E` and `Λ(a) ≤ Λ(b)`.
    pub fn r_contains(&self, x: &CubicalComplex, lam: &LambdaData, a: usize, b: usize) -> bool {
        self.e_contains(x, a, b) && lam.big_lambda_le(a, b)
    }

    /// All `η` with `(η, ξ) ∈ R`, ascending.
    pub fn r_predecessors(&self, xi: usize) -> &[u32] {
        &self.r_pred[self.r_pred_offsets[xi]..self.r_pred_offsets[xi + 1]]
    }

    pub fn r_pair_count(&self) -> usize {
        self.r_pred.len()
    }

    /// Explicit `E` (only sensible for small complexes).
    pub fn materialize_e(&self, x: &CubicalComplex) -> Relation {
        let mut pairs = Vec::new();
        for t in 0..x.n_top() {
            let top = x.top_cell(t);
            for c in x.closure_of(top) {
                pairs.push((c, top));
                pairs.push((top, c));
            }
        }
        Relation::new(x.n_cells(), pairs).expect("indices in range")
    }

    /// Explicit `R` (only sensible for small complexes).
    pub fn materialize_r(&self, x: &CubicalComplex) -> Relation {
        let pairs = (0..x.n_cells())
            .flat_map(|b| self.r_predecessors(b).iter().map(move |&a| (a as usize, b)))
            .collect::<Vec<_>>();
        Relation::new(x.n_cells(), pairs).expect("indices in range")
    }
}

/// Builds `Etop`, `F` and the predecessor lists of `R`.
pub fn relations(x: &CubicalComplex, lam: &LambdaData) -> Result<FlowRelations> {
    if lam.lambda_minus.len() != x.n_cells() || lam.lambda_top.len() != x.n_top() {
        return Err(Error::invalid("crossing data does not match the complex"));
    }
    let k = x.m() - 1;
    let mut etop = Vec::new();
    let mut f = Vec::new();
    for t in 0..x.n_top() {
        let coords = x.top_coords(t);
        let mut stride = 1;
        for i in (0..x.d()).rev() {
            if coords[i] + 1 < k {
                let u = t + stride;
                etop.push((t, u));
                etop.push((u, t));
                if lam.lambda_top[t] <= lam.lambda_top[u] {
                    f.push((t, u));
                }
                if lam.lambda_top[u] <= lam.lambda_top[t] {
                    f.push((u, t));
                }
            }
            stride *= k;
        }
    }

    // (η, ξ) ∈ R pairs a non-top cell with a top cell of its star, plus (τ, τ).
    let n = x.n_cells();
    let mut counts = vec![0usize; n + 1];
    let visit = |emit: &mut dyn FnMut(usize, usize)| {
        for c in 0..n {
            if x.is_top(c) {
                emit(c, c);
                continue;
            }
            x.for_each_star_top(c, |tau, _| {
                if lam.big_lambda_le(c, tau) {
                    emit(c, tau);
                }
                if lam.big_lambda_le(tau, c) {
                    emit(tau, c);
                }
            });
        }
    };
    visit(&mut |_, b| counts[b + 1] += 1);
    for i in 0..n {
        counts[i + 1] += counts[i];
    }
    let offsets = counts.clone();
    let mut fill = counts;
    let mut r_pred = vec![0u32; offsets[n]];
    visit(&mut |a, b| {
        r_pred[fill[b]] = a as u32;
        fill[b] += 1;
    });
    for b in 0..n {
        r_pred[offsets[b]..offsets[b + 1]].sort_unstable();
    }
    Ok(FlowRelations {
        etop: Relation::new(x.n_top(), etop)?,
        f: Relation::new(x.n_top(), f)?,
        r_pred_offsets: offsets,
        r_pred,
    })
}

/// Condensation poset of `F` over top cells with crossing and lap data, and
/// the grading map on all cells.
#[derive(Clone, Debug)]
pub struct ScData {
    /// Classes numbered by (lap, smallest top cell).
    pub sc: SccPoset,
    pub lambda_class: Vec<u32>,
    pub lap: Vec<u32>,
    /// Class of every cell.
    pub dyn_map: Vec<u32>,
}

impl ScData {
    pub fn n_classes(&self) -> usize {
        self.sc.classes.len()
    }

    #[inline]
    pub fn class_le(&self, a: usize, b: usize) -> bool {
        self.sc.order.le(a, b)
    }

    /// Principal down-set of class `c`, ascending.
    pub fn principal_down_set(&self, c: usize) -> Vec<usize> {
        self.sc.order.order().down(c).to_vec()
    }

    /// Cells of each class fiber of `dyn`.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_classes()];
        for (c, &k) in self.dyn_map.iter().enumerate() {
            out[k as usize].push(c);
        }
        out
    }
}

/// Unique minimal class among the classes of the top cells in a star.
fn unique_minimum(sc: &SccPoset, candidates: &mut Vec<usize>) -> Option<usize> {
    candidates.sort_unstable();
    candidates.dedup();
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&o| sc.order.le(c, o)))
}

pub fn sc_structure(x: &CubicalComplex, lam: &LambdaData, rel: &FlowRelations) -> Result<ScData> {
    let raw = scc_condense(&rel.f);
    let mut raw_lambda = Vec::with_capacity(raw.classes.len());
    for members in &raw.classes {
        let l = lam.lambda_top[members[0]];
        if members.iter().any(|&t| lam.lambda_top[t] != l) {
            return Err(Error::invariant(format!("crossing number not constant on class of top cell {}", members[0])));
        }
        if l % 2 == 1 {
            return Err(Error::invariant(format!("odd class crossing number {l}")));
        }
        raw_lambda.push(l);
    }
    let mut by_key: Vec<usize> = (0..raw.classes.len()).collect();
    by_key.sort_by_key(|&c| (raw_lambda[c] / 2, raw.classes[c][0]));
    let mut perm = vec![0usize; by_key.len()];
    for (new, &old) in by_key.iter().enumerate() {
        perm[old] = new;
    }
    let sc = raw.permute(&perm);
    let lambda_class: Vec<u32> = by_key.iter().map(|&old| raw_lambda[old]).collect();
    let lap = lambda_class.iter().map(|l| l / 2).collect();

    let dyn_map = (0..x.n_cells())
        .into_par_iter()
        .map_init(Vec::new, |cands, c| {
            cands.clear();
            x.for_each_star_top(c, |_, t| cands.push(sc.class_of[t]));
            unique_minimum(&sc, cands).map(|k| k as u32).ok_or_else(|| {
                Error::invariant(format!("no unique minimal class in the star of cell {:?}", x.cell(c).code))
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(ScData { sc, lambda_class, lap, dyn_map })
}

/// Pre-order on cells pulled back from the class order through `dyn`.
#[derive(Clone, Copy, Debug)]
pub struct MorsePreOrder<'a> {
    scd: &'a ScData,
}

pub fn morse_preorder(scd: &ScData) -> MorsePreOrder<'_> {
    MorsePreOrder { scd }
}

impl MorsePreOrder<'_> {
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        let s = self.scd;
        s.class_le(s.dyn_map[a] as usize, s.dyn_map[b] as usize)
    }

    /// Explicit pre-order (quadratic in the number of cells).
    pub fn to_preorder(&self) -> PreOrder {
        let n = self.scd.dyn_map.len();
        let pairs = (0..n).flat_map(|a| (0..n).filter(move |&b| self.le(a, b)).map(move |b| (a, b)));
        PreOrder::try_from_relation(&Relation::new(n, pairs).expect("indices in range"))
            .expect("pull-back of a partial order is a pre-order")
    }
}

/// Checks that `U = dyn⁻¹(α)` is closed, closed under `R`-predecessors and
/// that its forward image lies in its interior.
pub fn verify_block(
    x: &CubicalComplex,
    rel: &FlowRelations,
    scd: &ScData,
    alpha: &[usize],
) -> Result<bool> {
    let k = scd.n_classes();
    if let Some(&c) = alpha.iter().find(|&&c| c >= k) {
        return Err(Error::invalid(format!("class {c} out of range")));
    }
    let in_alpha = BitSet::from_indices(k, alpha.iter().copied());
    if !scd.sc.order.is_down_set(&in_alpha) {
        return Err(Error::invalid("class set is not a down-set"));
    }
    let in_u = |c: usize| in_alpha.contains(scd.dyn_map[c] as usize);
    let n = x.n_cells();
    let mut faces = Vec::new();
    let mut image = vec![false; n];
    for c in (0..n).filter(|&c| in_u(c)) {
        x.faces_of(c, &mut faces);
        if !faces.iter().all(|&f| in_u(f)) {
            return Ok(false);
        }
        for &p in rel.r_predecessors(c) {
            if !in_u(p as usize) {
                return Ok(false);
            }
            image[p as usize] = true;
        }
    }
    // With U closed, the star of a cell lies in U exactly when its top cells do.
    for eta in (0..n).filter(|&c| image[c]) {
        let mut inside = true;
        x.for_each_star_top(eta, |tau, _| inside &= in_u(tau));
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}
