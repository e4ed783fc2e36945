//! End-to-end analysis of a braid skeleton and its JSON report.

use crate::algebra::{betti_bm, connection_matrix, graded_complex, BettiTable, ConleyComplex, GradedComplex};
use crate::algebra::ReductionOptions;
use crate::braid::BraidDiagram;
use crate::complex::{BoundaryMatrix, CubicalComplex, DEFAULT_CELL_BUDGET};
use crate::dynamics::{compute_lambda, relations, sc_structure, FlowRelations, LambdaData, ScData};
use crate::error::{Error, Result};
use crate::grading::{
    bigraded_blocks, dimension_blocks, morse_relations, phase_diagram, MorseRelations, ParabolicModule,
    PhaseDiagram, Poly,
};
use crate::order::{BitSet, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub cell_budget: u64,
    pub reduction: ReductionOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { cell_budget: DEFAULT_CELL_BUDGET, reduction: ReductionOptions::default() }
    }
}

/// Every intermediate result of [`analyze`].
pub struct Analysis {
    pub braid: BraidDiagram,
    pub complex: CubicalComplex,
    pub boundary: BoundaryMatrix,
    pub lambda: LambdaData,
    pub relations: FlowRelations,
    pub scd: ScData,
    pub graded: GradedComplex,
    pub conley: ConleyComplex,
    pub betti: BettiTable,
    pub module: ParabolicModule,
    pub morse: MorseRelations,
    pub full: PhaseDiagram,
    pub reduced: PhaseDiagram,
    /// Wall time of each stage, in pipeline order.
    pub timings: Vec<(&'static str, Duration)>,
}

pub fn analyze(braid: &BraidDiagram, opts: AnalysisOptions) -> Result<Analysis> {
    braid.validate().map_err(Error::Braid)?;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        timings.push((name, clock.elapsed()));
        clock = Instant::now();
    };
    let complex = CubicalComplex::new(braid.m(), braid.d(), opts.cell_budget)?;
    let boundary = complex.boundary_matrix()?;
    lap("complex", &mut timings);
    let lambda = compute_lambda(&complex, braid)?;
    lap("lambda", &mut timings);
    let rel = relations(&complex, &lambda)?;
    lap("relations", &mut timings);
    let scd = sc_structure(&complex, &lambda, &rel)?;
    lap("sc", &mut timings);
    let dims: Vec<u32> = (0..complex.n_cells()).map(|c| complex.dim(c) as u32).collect();
    let graded = graded_complex(&boundary, &scd, &dims)?;
    let conley = connection_matrix(&graded, opts.reduction)?;
    lap("reduction", &mut timings);
    let betti = betti_bm(&conley)?;
    let module = bigraded_blocks(&conley, &scd)?;
    let all: Vec<usize> = (0..scd.n_classes()).collect();
    let morse = morse_relations(&conley, &scd, &all)?;
    let (full, reduced) = phase_diagram(&scd, &betti);
    lap("grading", &mut timings);
    Ok(Analysis {
        braid: braid.clone(),
        complex,
        boundary,
        lambda,
        relations: rel,
        scd,
        graded,
        conley,
        betti,
        module,
        morse,
        full,
        reduced,
        timings,
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Sets the global thread count from `MORSEFLOW_THREADS` when it holds a
/// positive integer.
pub fn configure_threads() {
    if let Some(n) = std::env::var("MORSEFLOW_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Down-sets of `p` as sorted class lists: all of them when there are at most
/// `exhaustive_limit` elements, otherwise `count` random unions of principal
/// down-sets drawn with a fixed seed.
pub fn sample_down_sets(p: &Poset, exhaustive_limit: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let n = p.size();
    if n <= exhaustive_limit.min(crate::order::DOWN_SET_LIMIT) {
        return crate::order::down_sets(p).expect("size checked");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut set = BitSet::new(n);
        let k = rng.gen_range(0..=n.min(4));
        for _ in 0..k {
            let top = rng.gen_range(0..n);
            for a in 0..n {
                if p.le(a, top) {
                    set.insert(a);
                }
            }
        }
        out.push(set.to_vec());
    }
    out
}

fn poly_json(p: &Poly) -> Value {
    json!({ "text": p.to_string(), "terms": p.to_keyed() })
}

impl Analysis {
    /// Deterministic report; object keys are sorted.
    pub fn report(&self, input_hash: &str) -> Value {
        let scd = &self.scd;
        let classes: Vec<Value> = (0..scd.n_classes())
            .map(|c| {
                json!({
                    "id": c,
                    "lap": scd.lap[c],
                    "lambda": scd.lambda_class[c],
                    "top_cells": scd.sc.classes[c].len(),
                })
            })
            .collect();
        let betti: Vec<Value> = self
            .betti
            .ranks
            .iter()
            .map(|(&(c, q), &r)| json!({ "class": c, "q": q, "rank": r }))
            .collect();
        let generators: Vec<Value> = self
            .conley
            .complex
            .generators
            .iter()
            .map(|g| json!({ "class": g.grade, "dim": g.dim, "cell": g.label }))
            .collect();
        let blocks: Vec<Value> = self
            .module
            .blocks
            .iter()
            .map(|b| json!({ "r": b.r, "p": b.p, "q": b.q, "rows": b.rows, "cols": b.cols, "matrix": b.matrix }))
            .collect();
        let by_dim: Vec<Value> = dimension_blocks(&self.conley)
            .into_values()
            .map(|b| json!({ "q": b.q, "rows": b.rows, "cols": b.cols, "matrix": b.matrix }))
            .collect();
        let poincare: serde_json::Map<String, Value> = self
            .full
            .nodes
            .iter()
            .filter(|n| !n.poly.is_zero())
            .map(|n| (format!("S{}", n.class), poly_json(&n.poly)))
            .collect();
        let q: serde_json::Map<String, Value> =
            self.morse.q.iter().map(|(r, p)| (r.to_string(), poly_json(p))).collect();
        json!({
            "input_sha256": input_hash,
            "braid": { "m": self.braid.m(), "d": self.braid.d() },
            "complex": { "cells": self.complex.n_cells(), "top_cells": self.complex.n_top() },
            "sc": {
                "count": scd.n_classes(),
                "classes": classes,
                "hasse": self.full.edges(),
            },
            "betti": betti,
            "poincare": poincare,
            "total_poincare": poly_json(&self.full.total_poly()),
            "morse_relations": {
                "sum_of_classes": poly_json(&self.morse.sum_of_classes),
                "parabolic": poly_json(&self.morse.parabolic),
                "q": q,
            },
            "connection_matrix": {
                "generators": generators,
                "pairs_cancelled": self.conley.pairs_cancelled,
                "lap_blocks": blocks,
                "dimension_blocks": by_dim,
            },
            "phase_diagram": {
                "full": self.full.to_json(None),
                "reduced": self.reduced.to_json(Some(&self.module)),
            },
        })
    }
}
