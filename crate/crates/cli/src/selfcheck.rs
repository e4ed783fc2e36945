//! Property checks over a set of braid fixtures.

use crate::Failure;
use morseflow_core::algebra::{verify_chain_maps, verify_equivalence};
use morseflow_core::braid::BraidDiagram;
use morseflow_core::grading::morse_relations;
use morseflow_core::order::{birkhoff_reconstruct, down_sets, join_irreducibles, labeled_isomorphisms, Poset, Relation};
use morseflow_core::pipeline::{analyze, sample_down_sets, AnalysisOptions};
use morseflow_core::{fixtures, verify_block, Error, ReductionOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};

/// Chain maps are only kept for fixtures up to this many cells.
const CHAIN_MAP_CELLS: usize = 100_000;

struct Reporter {
    verbose: bool,
}

impl Reporter {
    fn check(&self, name: &str, what: &str, result: Result<String, Error>) -> Result<(), Error> {
        match result {
            Ok(detail) => {
                if self.verbose {
                    println!("ok    {name}: {what} ({detail})");
                }
                Ok(())
            }
            Err(e) => {
                println!("FAIL  {name}: {what}: {e}");
                Err(e)
            }
        }
    }
}

fn load_dir(dir: &Path) -> Result<Vec<(String, BraidDiagram)>, Failure> {
    let io = |e: std::io::Error| Failure { file: Some(dir.to_path_buf()), error: e.into() };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let (b, _) = crate::read_braid(p)?;
            Ok((p.file_stem().unwrap_or_default().to_string_lossy().into_owned(), b))
        })
        .collect()
}

fn check_fixture(rep: &Reporter, name: &str, b: &BraidDiagram) -> Result<(), Error> {
    let small = (2 * b.m() - 1).checked_pow(b.d() as u32).is_some_and(|n| n <= CHAIN_MAP_CELLS);
    let opts = AnalysisOptions {
        reduction: ReductionOptions { chain_maps: small, check_steps: small },
        ..AnalysisOptions::default()
    };
    let a = analyze(b, opts)?;
    rep.check(name, "analysis", Ok(format!("{} cells, {} classes", a.complex.n_cells(), a.scd.n_classes())))?;
    rep.check(name, "∂∘∂ = 0", a.boundary.check_square_zero().map(|_| "cellular".into()))?;
    rep.check(name, "Conley ∂∘∂ = 0", a.conley.complex.boundary.check_square_zero().map(|_| "reduced".into()))?;
    if small {
        rep.check(name, "chain maps", verify_chain_maps(&a.graded, &a.conley).map(|_| "Φ∘Ψ = id".into()))?;
    }
    let blocks = (0..a.scd.n_classes()).try_fold(0, |n, c| {
        match verify_block(&a.complex, &a.relations, &a.scd, &a.scd.principal_down_set(c))? {
            true => Ok(n + 1),
            false => Err(Error::Invariant(format!("principal down-set of S{c} is not a block"))),
        }
    });
    rep.check(name, "principal blocks", blocks.map(|n| format!("{n} checked")))?;
    let samples = sample_down_sets(&a.scd.sc.order, 12, 50, 17);
    rep.check(
        name,
        "homology equivalence",
        verify_equivalence(&a.graded, &a.conley, &samples).map(|_| format!("{} down-sets", samples.len())),
    )?;
    let morse = samples.iter().try_fold(0, |n, s| morse_relations(&a.conley, &a.scd, s).map(|_| n + 1));
    rep.check(name, "Morse relations", morse.map(|n| format!("{n} down-sets")))?;
    let total = match a.morse.parabolic.to_string().as_str() {
        "1" => Ok("P⃗ = 1".to_string()),
        other => Err(Error::Invariant(format!("total parabolic homology {other}"))),
    };
    rep.check(name, "total homology", total)
}

fn birkhoff_round_trips(count: usize) -> Result<String, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..count {
        let n = rng.gen_range(1..=8usize);
        let density = rng.gen_range(0.0..0.6);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
        let p = Poset::from_relation(&Relation::new(n, pairs)?)?;
        let lattice = down_sets(&p)?;
        let ji = join_irreducibles(&lattice)?;
        let unit = vec![(); n];
        let mut sorted = lattice.clone();
        sorted.sort();
        if labeled_isomorphisms(&p, &unit, &ji.poset, &unit, 1).is_empty()
            || birkhoff_reconstruct(&lattice, &ji)? != sorted
        {
            return Err(Error::Invariant(format!("Birkhoff round trip fails on {:?}", p.hasse())));
        }
    }
    Ok(format!("{count} posets"))
}

pub fn run(verbose: bool, dir: Option<&Path>) -> Result<(), Failure> {
    let rep = Reporter { verbose };
    let set: Vec<(String, BraidDiagram)> = match dir {
        Some(d) => load_dir(d)?,
        None => fixtures::ALL
            .iter()
            .map(|(n, _)| fixtures::load(n).map(|b| (n.to_string(), b)))
            .collect::<Result<_, _>>()?,
    };
    rep.check("order", "Birkhoff duality", birkhoff_round_trips(200))?;
    for (name, b) in &set {
        check_fixture(&rep, name, b)?;
    }
    println!("selfcheck passed: {} fixtures", set.len());
    Ok(())
}
