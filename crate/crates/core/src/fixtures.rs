//! Braid skeletons shipped with the library.

use crate::braid::BraidDiagram;
use crate::error::{Error, Result};

pub const EXAMPLE_A: &str = include_str!("../fixtures/exampleA.json");
pub const SIGMA_D3: &str = include_str!("../fixtures/sigma_d3.json");
pub const SIGMA_D4: &str = include_str!("../fixtures/sigma_d4.json");
pub const SIGMA_D5: &str = include_str!("../fixtures/sigma_d5.json");
pub const PSEUDO_ANOSOV: &str = include_str!("../fixtures/pseudo_anosov.json");

/// Name and JSON text of every fixture.
pub const ALL: [(&str, &str); 5] = [
    ("exampleA", EXAMPLE_A),
    ("sigma_d3", SIGMA_D3),
    ("sigma_d4", SIGMA_D4),
    ("sigma_d5", SIGMA_D5),
    ("pseudo_anosov", PSEUDO_ANOSOV),
];

pub fn load(name: &str) -> Result<BraidDiagram> {
    let (_, text) = ALL
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::invalid(format!("unknown fixture {name}")))?;
    BraidDiagram::from_json_str(text)
}
