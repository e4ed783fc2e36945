//! Morse theory for discretized braid diagrams over GF(2): cubical complexes
//! of braid skeletons, crossing numbers, Morse tiles, connection matrices,
//! lap-filtered Morse relations and phase diagrams.

pub mod algebra;
pub mod braid;
pub mod complex;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod grading;
pub mod order;
pub mod pipeline;

pub use algebra::{
    betti_bm, connection_matrix, graded_complex, verify_chain_maps, verify_equivalence, BettiTable, ConleyComplex,
    GradedComplex, ReductionOptions,
};
pub use braid::{diagram_to_word, word_to_diagram, BraidDiagram, BraidError, PositiveWord};
pub use complex::{BoundaryMatrix, Cell, CubicalComplex, DEFAULT_CELL_BUDGET};
pub use dynamics::{compute_lambda, relations, sc_structure, verify_block, FlowRelations, LambdaData, ScData};
pub use error::{Error, Result};
pub use grading::{
    bigraded_blocks, diagram_isomorphic, dimension_blocks, morse_relations, phase_diagram, spectral_sequence,
    MorseRelations, ParabolicModule, PhaseDiagram, Poly,
};
pub use order::{PreOrder, Poset, Relation};
pub use pipeline::{analyze, Analysis, AnalysisOptions};
