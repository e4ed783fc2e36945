//! Lap filtration of a Conley complex: differential blocks by lap drop, the
//! spectral sequence of the filtration, Morse relations, Poincaré polynomials
//! and phase diagrams.

use crate::algebra::{BettiTable, ConleyComplex};
use crate::dynamics::ScData;
use crate::error::{Error, Result};
use crate::order::{is_convex, labeled_isomorphisms, Poset};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial `Σ c_{p,q} λ^p μ^q` with nonnegative coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(p: u32, q: u32, c: u64) -> Self {
        let mut out = Poly::zero();
        out.add_term(p, q, c);
        out
    }

    pub fn from_terms(terms: &[((u32, u32), u64)]) -> Self {
        let mut out = Poly::zero();
        for &((p, q), c) in terms {
            out.add_term(p, q, c);
        }
        out
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: u64) {
        if c > 0 {
            *self.terms.entry((p, q)).or_insert(0) += c;
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(p, q), &c) in &other.terms {
            out.add_term(p, q, c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(p, q), &c) in &self.terms {
            for (&(p2, q2), &c2) in &other.terms {
                out.add_term(p + p2, q + q2, c * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> u64 {
        self.terms.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.terms
    }

    /// Coefficients keyed `"p,q"` for JSON output.
    pub fn to_keyed(&self) -> BTreeMap<String, u64> {
        self.terms.iter().map(|(&(p, q), &c)| (format!("{p},{q}"), c)).collect()
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(p, q), &c)| {
                let mut s = String::new();
                if c != 1 || (p == 0 && q == 0) {
                    s.push_str(&c.to_string());
                }
                if p > 0 {
                    s.push('λ');
                    if p > 1 {
                        s.push_str(&superscript(p));
                    }
                }
                if q > 0 {
                    s.push('μ');
                    if q > 1 {
                        s.push_str(&superscript(q));
                    }
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Block `Δ^r_{p,q}` of the differential from lap `p`, dimension `q` to lap
/// `p - r`, dimension `q - 1`. `rows` and `cols` are Conley generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialBlock {
    pub r: u32,
    pub p: u32,
    pub q: u32,
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub matrix: Vec<Vec<u8>>,
}

impl DifferentialBlock {
    pub fn rank(&self) -> usize {
        let cols: Vec<Vec<u32>> = (0..self.cols.len())
            .map(|j| (0..self.rows.len()).filter(|&i| self.matrix[i][j] == 1).map(|i| i as u32).collect())
            .collect();
        crate::algebra::rank::gf2_rank(&cols)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicGenerator {
    pub index: u32,
    pub class: u32,
    pub p: u32,
    pub q: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicModule {
    pub generators: Vec<ParabolicGenerator>,
    /// Nonzero blocks, sorted by `(r, p, q)`.
    pub blocks: Vec<DifferentialBlock>,
}

fn dense_block(cc: &ConleyComplex, rows: Vec<u32>, cols: Vec<u32>) -> (Vec<u32>, Vec<u32>, Vec<Vec<u8>>) {
    let matrix = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| u8::from(cc.complex.boundary.column(c as usize).binary_search(&r).is_ok()))
                .collect()
        })
        .collect();
    (rows, cols, matrix)
}

fn gens_sorted(cc: &ConleyComplex, pred: impl Fn(u32, u32) -> bool) -> Vec<u32> {
    let mut v: Vec<u32> = (0..cc.complex.len() as u32)
        .filter(|&g| {
            let gen = cc.complex.generators[g as usize];
            pred(gen.grade, gen.dim)
        })
        .collect();
    v.sort_by_key(|&g| (cc.complex.generators[g as usize].grade, g));
    v
}

/// Splits the differential of a strict complex by lap drop.
pub fn bigraded_blocks(cc: &ConleyComplex, scd: &ScData) -> Result<ParabolicModule> {
    let lap = |g: u32| scd.lap[cc.complex.generators[g as usize].grade as usize];
    let generators = (0..cc.complex.len() as u32)
        .map(|g| {
            let gen = cc.complex.generators[g as usize];
            ParabolicGenerator { index: g, class: gen.grade, p: lap(g), q: gen.dim }
        })
        .collect();
    let mut keys = Vec::new();
    for (row, col) in cc.complex.entries() {
        let (p, pt) = (lap(col), lap(row));
        if pt >= p {
            return Err(Error::invariant(format!(
                "differential entry ({row},{col}) does not lower the lap number ({p} -> {pt})"
            )));
        }
        keys.push((p - pt, p, cc.complex.generators[col as usize].dim));
    }
    keys.sort_unstable();
    keys.dedup();
    let blocks = keys
        .into_iter()
        .map(|(r, p, q)| {
            let rows = gens_sorted(cc, |k, d| scd.lap[k as usize] + r == p && d + 1 == q);
            let cols = gens_sorted(cc, |k, d| scd.lap[k as usize] == p && d == q);
            let (rows, cols, matrix) = dense_block(cc, rows, cols);
            DifferentialBlock { r, p, q, rows, cols, matrix }
        })
        .collect();
    Ok(ParabolicModule { generators, blocks })
}

/// Differential from dimension `q` to `q - 1` for every `q ≥ 1` with
/// generators on both sides, rows and columns sorted by (class, index).
pub fn dimension_blocks(cc: &ConleyComplex) -> BTreeMap<u32, DifferentialBlock> {
    let max_dim = cc.complex.generators.iter().map(|g| g.dim).max().unwrap_or(0);
    (1..=max_dim)
        .filter_map(|q| {
            let rows = gens_sorted(cc, |_, d| d + 1 == q);
            let cols = gens_sorted(cc, |_, d| d == q);
            if rows.is_empty() || cols.is_empty() {
                return None;
            }
            let (rows, cols, matrix) = dense_block(cc, rows, cols);
            Some((q, DifferentialBlock { r: 0, p: 0, q, rows, cols, matrix }))
        })
        .collect()
}

/// Dense GF(2) vectors and spans for the (small) Conley complex.
type Vector = Vec<u64>;

fn vec_is_zero(v: &Vector) -> bool {
    v.iter().all(|&w| w == 0)
}

fn xor_vec(a: &mut Vector, b: &Vector) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn highest_bit(v: &Vector) -> Option<usize> {
    v.iter().enumerate().rev().find(|(_, &w)| w != 0).map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
}

/// Echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
struct Span {
    basis: Vec<Vector>,
}

impl Span {
    fn reduce(&self, mut v: Vector) -> Vector {
        for b in &self.basis {
            let hb = highest_bit(b).unwrap();
            if v[hb / 64] >> (hb % 64) & 1 == 1 {
                xor_vec(&mut v, b);
            }
        }
        v
    }

    fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        if vec_is_zero(&v) {
            return false;
        }
        let hv = highest_bit(&v).unwrap();
        for b in self.basis.iter_mut() {
            if b[hv / 64] >> (hv % 64) & 1 == 1 {
                xor_vec(b, &v);
            }
        }
        let pos = self.basis.iter().position(|b| highest_bit(b).unwrap() < hv).unwrap_or(self.basis.len());
        self.basis.insert(pos, v);
        true
    }

    fn of(vs: impl IntoIterator<Item = Vector>) -> Span {
        let mut s = Span::default();
        for v in vs {
            s.insert(v);
        }
        s
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn sum(&self, other: &Span) -> Span {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    fn contains_span(&self, other: &Span) -> bool {
        other.basis.iter().all(|v| vec_is_zero(&self.reduce(v.clone())))
    }
}

/// The convex piece of a Conley complex, split by dimension.
struct Filtered<'a> {
    cc: &'a ConleyComplex,
    /// Generators of each dimension (global indices) and lap of each.
    by_dim: Vec<Vec<u32>>,
    lap_of: Vec<u32>,
    pos_in_dim: Vec<usize>,
    keep: Vec<bool>,
}

impl<'a> Filtered<'a> {
    fn new(cc: &'a ConleyComplex, scd: &ScData, conv: &[usize]) -> Self {
        let mut member = vec![false; scd.n_classes()];
        for &c in conv {
            member[c] = true;
        }
        let n = cc.complex.len();
        let keep: Vec<bool> = cc.complex.generators.iter().map(|g| member[g.grade as usize]).collect();
        let max_dim = cc.complex.generators.iter().map(|g| g.dim as usize).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max_dim + 2];
        let mut pos_in_dim = vec![0; n];
        for g in (0..n).filter(|&g| keep[g]) {
            let d = cc.complex.generators[g].dim as usize;
            pos_in_dim[g] = by_dim[d].len();
            by_dim[d].push(g as u32);
        }
        let lap_of = cc.complex.generators.iter().map(|g| scd.lap[g.grade as usize]).collect();
        Filtered { cc, by_dim, lap_of, pos_in_dim, keep }
    }

    fn width(&self, q: usize) -> usize {
        self.by_dim.get(q).map_or(0, |v| v.len()).div_ceil(64).max(1)
    }

    fn unit(&self, q: usize, k: usize) -> Vector {
        let mut v = vec![0u64; self.width(q)];
        v[k / 64] |= 1 << (k % 64);
        v
    }

    /// `d` applied to a vector of dimension `q`.
    fn apply_d(&self, q: usize, v: &Vector) -> Vector {
        let mut out = vec![0u64; if q == 0 { 1 } else { self.width(q - 1) }];
        if q == 0 {
            return out;
        }
        for (k, &g) in self.by_dim[q].iter().enumerate() {
            if v[k / 64] >> (k % 64) & 1 == 0 {
                continue;
            }
            for &r in self.cc.complex.boundary.column(g as usize) {
                if self.keep[r as usize] {
                    let j = self.pos_in_dim[r as usize];
                    out[j / 64] ^= 1 << (j % 64);
                }
            }
        }
        out
    }

    /// `Z^r_p` in dimension `q`: chains of filtration `≤ p` whose boundary has filtration `≤ p - r`.
    fn z(&self, r: i64, p: i64, q: usize) -> Span {
        let Some(gens) = self.by_dim.get(q) else {
            return Span::default();
        };
        let domain: Vec<usize> = (0..gens.len()).filter(|&k| self.lap_of[gens[k] as usize] as i64 <= p).collect();
        // Kernel of x ↦ (components of dx with lap > p - r).
        let bad = |w: &Vector| -> Vector {
            let mut out = w.clone();
            if q == 0 {
                return out;
            }
            for (j, &g) in self.by_dim[q - 1].iter().enumerate() {
                if self.lap_of[g as usize] as i64 <= p - r {
                    out[j / 64] &= !(1 << (j % 64));
                }
            }
            out
        };
        let mut rows: Vec<(Vector, Vector)> = domain
            .iter()
            .map(|&k| {
                let e = self.unit(q, k);
                (bad(&self.apply_d(q, &e)), e)
            })
            .collect();
        let mut kernel = Vec::new();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        for i in 0..rows.len() {
            for &(bit, src) in &pivots {
                if rows[i].0[bit / 64] >> (bit % 64) & 1 == 1 {
                    let (img, comb) = rows[src].clone();
                    xor_vec(&mut rows[i].0, &img);
                    xor_vec(&mut rows[i].1, &comb);
                }
            }
            match highest_bit(&rows[i].0) {
                Some(bit) => pivots.push((bit, i)),
                None => kernel.push(rows[i].1.clone()),
            }
        }
        Span::of(kernel)
    }

    fn d_span(&self, q: usize, s: &Span) -> Span {
        Span::of(s.basis.iter().map(|v| self.apply_d(q, v)))
    }

    /// `Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}` in dimension `q`.
    fn denominator(&self, r: i64, p: i64, q: usize) -> Span {
        let lower = self.z(r - 1, p - 1, q);
        let image = self.d_span(q + 1, &self.z(r - 1, p + r - 1, q + 1));
        lower.sum(&image)
    }
}

/// One page: ranks of `E^r_{p,q}` and of `d^r` leaving `(p, q)`.
#[derive(Clone, Debug, Serialize)]
pub struct Page {
    pub r: u32,
    pub e: BTreeMap<(u32, u32), usize>,
    pub d: BTreeMap<(u32, u32), usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequence {
    pub pages: Vec<Page>,
    /// Limit page, the bi-graded homology.
    pub e_inf: BTreeMap<(u32, u32), usize>,
}

impl SpectralSequence {
    pub fn page(&self, r: u32) -> Option<&Page> {
        self.pages.iter().find(|pg| pg.r == r)
    }

    pub fn limit_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for (&(a, b), &c) in &self.e_inf {
            p.add_term(a, b, c as u64);
        }
        p
    }
}

fn check_convex(scd: &ScData, conv: &[usize]) -> Result<()> {
    if conv.iter().any(|&c| c >= scd.n_classes()) {
        return Err(Error::invalid("class out of range"));
    }
    if !is_convex(&scd.sc.order, conv) {
        return Err(Error::invalid("class set is not convex"));
    }
    Ok(())
}

/// Spectral sequence of the lap filtration on the convex piece `conv`,
/// by the subquotient formulas `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})`.
pub fn spectral_sequence(cc: &ConleyComplex, scd: &ScData, conv: &[usize]) -> Result<SpectralSequence> {
    check_convex(scd, conv)?;
    let fc = Filtered::new(cc, scd, conv);
    let laps: Vec<u32> = conv.iter().map(|&c| scd.lap[c]).collect();
    let (Some(&lo), Some(&hi)) = (laps.iter().min(), laps.iter().max()) else {
        return Ok(SpectralSequence { pages: Vec::new(), e_inf: BTreeMap::new() });
    };
    let (lo, hi) = (lo as i64, hi as i64);
    let top_r = hi - lo + 1;
    let qmax = fc.by_dim.len() - 1;
    let mut pages = Vec::new();
    for r in 1..=top_r + 1 {
        let mut e = BTreeMap::new();
        let mut d = BTreeMap::new();
        for q in 0..=qmax {
            for p in lo..=hi {
                let z = fc.z(r, p, q);
                let den = fc.denominator(r, p, q);
                if !z.contains_span(&den) {
                    return Err(Error::invariant(format!("E^{r}_({p},{q}) denominator not contained in cycles")));
                }
                let rank_e = z.dim() - den.dim();
                if rank_e > 0 {
                    e.insert((p as u32, q as u32), rank_e);
                }
                if q == 0 || p - r < lo {
                    continue;
                }
                let image = fc.d_span(q, &z);
                let target = fc.z(r, p - r, q - 1);
                if !target.contains_span(&image) {
                    return Err(Error::invariant(format!("d^{r} leaves the cycles at ({p},{q})")));
                }
                let base = fc.denominator(r, p - r, q - 1);
                let rank_d = image.sum(&base).dim() - base.dim();
                if rank_d > 0 {
                    d.insert((p as u32, q as u32), rank_d);
                }
            }
        }
        pages.push(Page { r: r as u32, e, d });
    }
    for w in pages.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        let r = cur.r;
        let keys: Vec<(u32, u32)> = cur.e.keys().chain(next.e.keys()).copied().collect();
        for (p, q) in keys {
            let out = cur.d.get(&(p, q)).copied().unwrap_or(0);
            let inc = cur.d.get(&(p + r, q + 1)).copied().unwrap_or(0);
            let here = cur.e.get(&(p, q)).copied().unwrap_or(0);
            let after = next.e.get(&(p, q)).copied().unwrap_or(0);
            if here != after + out + inc {
                return Err(Error::invariant(format!(
                    "page {r} rank bookkeeping fails at ({p},{q}): {here} != {after} + {out} + {inc}"
                )));
            }
        }
    }
    let e_inf = pages.last().map(|pg| pg.e.clone()).unwrap_or_default();
    Ok(SpectralSequence { pages, e_inf })
}

/// `Σ_S P(S) = P⃗ + Σ_r (1 + λ^r μ) Q^r` with its ingredients.
#[derive(Clone, Debug, Serialize)]
pub struct MorseRelations {
    #[serde(serialize_with = "ser_poly")]
    pub sum_of_classes: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub parabolic: Poly,
    #[serde(serialize_with = "ser_poly_map")]
    pub q: BTreeMap<u32, Poly>,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_poly_map<S: serde::Serializer>(m: &BTreeMap<u32, Poly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (r, p) in m {
        map.serialize_entry(&r.to_string(), &p.to_string())?;
    }
    map.end()
}

impl MorseRelations {
    pub fn right_hand_side(&self) -> Poly {
        self.q.iter().fold(self.parabolic.clone(), |acc, (&r, qr)| {
            let factor = Poly::monomial(0, 0, 1).add(&Poly::monomial(r, 1, 1));
            acc.add(&factor.mul(qr))
        })
    }
}

/// Poincaré polynomial `Σ_q rank(S, q) λ^{lap S} μ^q` of a class.
pub fn class_poly(scd: &ScData, betti: &BettiTable, class: u32) -> Poly {
    let mut p = Poly::zero();
    for (&(c, q), &n) in betti.ranks.range((class, 0)..=(class, u32::MAX)) {
        debug_assert_eq!(c, class);
        p.add_term(scd.lap[class as usize], q, n as u64);
    }
    p
}

/// Verifies the Morse relations on a convex set exactly.
pub fn morse_relations(cc: &ConleyComplex, scd: &ScData, conv: &[usize]) -> Result<MorseRelations> {
    let ss = spectral_sequence(cc, scd, conv)?;
    let betti = crate::algebra::betti_bm(cc)?;
    let sum_of_classes = conv.iter().fold(Poly::zero(), |acc, &c| acc.add(&class_poly(scd, &betti, c as u32)));
    let mut q = BTreeMap::new();
    for page in &ss.pages {
        let mut qr = Poly::zero();
        for (&(p, dq), &rank) in &page.d {
            qr.add_term(p - page.r, dq - 1, rank as u64);
        }
        if !qr.is_zero() {
            q.insert(page.r, qr);
        }
    }
    let rel = MorseRelations { sum_of_classes, parabolic: ss.limit_poly(), q };
    let rhs = rel.right_hand_side();
    if rhs != rel.sum_of_classes {
        return Err(Error::invariant(format!(
            "Morse relations fail: {} != {}",
            rel.sum_of_classes, rhs
        )));
    }
    Ok(rel)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseNode {
    pub class: u32,
    pub lap: u32,
    pub poly: Poly,
}

/// Class poset annotated with Poincaré polynomials. Node `i` of `poset`
/// is `nodes[i]`.
#[derive(Clone, Debug)]
pub struct PhaseDiagram {
    pub nodes: Vec<PhaseNode>,
    pub poset: Poset,
}

impl PhaseDiagram {
    /// Covering pairs `(lower, upper)` as class ids.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut e: Vec<(u32, u32)> =
            self.poset.hasse().iter().map(|&(a, b)| (self.nodes[a].class, self.nodes[b].class)).collect();
        e.sort_unstable();
        e
    }

    pub fn total_poly(&self) -> Poly {
        self.nodes.iter().fold(Poly::zero(), |acc, n| acc.add(&n.poly))
    }

    fn labels(&self) -> Vec<(u32, Poly)> {
        self.nodes.iter().map(|n| (n.lap, n.poly.clone())).collect()
    }

    /// Node-position maps onto `other` that preserve order and annotations.
    pub fn isomorphisms(&self, other: &PhaseDiagram, limit: usize) -> Vec<Vec<usize>> {
        labeled_isomorphisms(&self.poset, &self.labels(), &other.poset, &other.labels(), limit)
    }

    /// Graphviz rendering; arrows point from a class to the classes it covers,
    /// nodes of equal lap share a rank.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=TB;\n  node [shape=box];\n");
        let mut by_lap: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for n in &self.nodes {
            by_lap.entry(n.lap).or_default().push(n.class);
        }
        for (lap, ids) in by_lap.iter().rev() {
            let names: Vec<String> = ids.iter().map(|i| format!("S{i};")).collect();
            out.push_str(&format!("  {{ rank=same; /* lap {lap} */ {} }}\n", names.join(" ")));
        }
        for n in &self.nodes {
            out.push_str(&format!("  S{} [label=\"S{} : {}\"];\n", n.class, n.class, n.poly));
        }
        for (lo, hi) in self.edges() {
            out.push_str(&format!("  S{hi} -> S{lo};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, module: Option<&ParabolicModule>) -> PhaseDiagramJson {
        PhaseDiagramJson {
            nodes: self
                .nodes
                .iter()
                .map(|n| PhaseNodeJson { id: n.class, lap: n.lap, poincare: n.poly.to_keyed() })
                .collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            differential_blocks: module
                .map(|m| {
                    m.blocks
                        .iter()
                        .map(|b| BlockJson { r: b.r, p: b.p, q: b.q, matrix: b.matrix.clone() })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseNodeJson {
    pub id: u32,
    pub lap: u32,
    pub poincare: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockJson {
    pub r: u32,
    pub p: u32,
    pub q: u32,
    pub matrix: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseDiagramJson {
    pub nodes: Vec<PhaseNodeJson>,
    pub edges: Vec<[u32; 2]>,
    pub differential_blocks: Vec<BlockJson>,
}

/// Full and reduced phase diagrams.
pub fn phase_diagram(scd: &ScData, betti: &BettiTable) -> (PhaseDiagram, PhaseDiagram) {
    let nodes: Vec<PhaseNode> = (0..scd.n_classes() as u32)
        .map(|c| PhaseNode { class: c, lap: scd.lap[c as usize], poly: class_poly(scd, betti, c) })
        .collect();
    let full = PhaseDiagram { nodes: nodes.clone(), poset: scd.sc.order.clone() };
    let keep: Vec<usize> = (0..nodes.len()).filter(|&i| !nodes[i].poly.is_zero()).collect();
    let reduced = PhaseDiagram {
        nodes: keep.iter().map(|&i| nodes[i].clone()).collect(),
        poset: scd.sc.order.induced(&keep),
    };
    (full, reduced)
}

pub fn diagram_isomorphic(a: &PhaseDiagram, b: &PhaseDiagram) -> bool {
    !a.isomorphisms(b, 1).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_display() {
        let p = Poly::from_terms(&[((0, 0), 2), ((1, 0), 2), ((2, 1), 3)]);
        assert_eq!(p.to_string(), "2 + 2λ + 3λ²μ");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::monomial(3, 1, 1).add(&Poly::monomial(3, 2, 1)).to_string(), "λ³μ + λ³μ²");
    }

    #[test]
    fn poly_arithmetic() {
        let one_plus = Poly::monomial(0, 0, 1).add(&Poly::monomial(1, 1, 1));
        let q1 = Poly::monomial(1, 0, 2);
        assert_eq!(one_plus.mul(&q1), Poly::from_terms(&[((1, 0), 2), ((2, 1), 2)]));
    }

    #[test]
    fn span_dimension() {
        let s = Span::of(vec![vec![0b011], vec![0b110], vec![0b101]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains_span(&Span::of(vec![vec![0b101]])));
        assert!(!s.contains_span(&Span::of(vec![vec![0b001]])));
    }
}
