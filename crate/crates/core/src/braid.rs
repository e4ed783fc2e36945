//! Normal-form discretized braid diagrams: validation, closure permutation,
//! crossing counts against a free strand, positive words and the extension
//! operator.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error as ThisError;

/// A single violated diagram invariant.
#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum BraidError {
    #[error("need at least 3 strands and period at least 1, got m={m}, d={d}")]
    Shape { m: usize, d: usize },
    #[error("strand {strand} column {column}: value {value} outside 0..{m}")]
    OutOfRange { strand: usize, column: usize, value: i64, m: usize },
    #[error("strand {strand} starts at height {value}, strands must be indexed by initial height")]
    Label { strand: usize, value: i64 },
    #[error("column {column} is not a permutation of the heights")]
    NotPermutation { column: usize },
    #[error("closing column does not permute the initial heights")]
    Periodicity,
    #[error("strands {a} and {b} are tangent at anchor {column}")]
    Tangency { a: usize, b: usize, column: usize },
    #[error("boundary violation on strand {strand} at column {column}")]
    Boundary { strand: usize, column: usize },
    #[error("inner strands {strands:?} close up after one period (improper skeleton)")]
    Improper { strands: Vec<usize> },
}

/// On-disk braid file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidFile {
    pub m: i64,
    pub d: i64,
    pub anchors: Vec<Vec<i64>>,
}

/// Integer anchor matrix: `anchors[α][i]` is the height of strand `α` at step `i`,
/// for `i = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidDiagram {
    m: usize,
    d: usize,
    anchors: Vec<Vec<i64>>,
}

/// Closure permutation with its cycle decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    pub perm: Vec<usize>,
    /// Cycles starting at their smallest element, sorted by that element;
    /// fixed points appear as cycles of length one.
    pub cycles: Vec<Vec<usize>>,
}

impl Theta {
    /// Cycles made of inner strands only.
    pub fn inner_cycles(&self) -> Vec<Vec<usize>> {
        let m = self.perm.len();
        self.cycles.iter().filter(|c| c[0] != 0 && c[0] != m - 1).cloned().collect()
    }
}

impl BraidDiagram {
    /// Wraps an anchor matrix after checking only that it is rectangular.
    pub fn from_anchors(anchors: Vec<Vec<i64>>) -> Result<Self> {
        let m = anchors.len();
        let width = anchors.first().map_or(0, Vec::len);
        if m == 0 || width < 2 || anchors.iter().any(|r| r.len() != width) {
            return Err(Error::invalid("anchor matrix must be a nonempty rectangle with at least two columns"));
        }
        Ok(BraidDiagram { m, d: width - 1, anchors })
    }

    /// Builds and fully validates a diagram.
    pub fn new(anchors: Vec<Vec<i64>>) -> Result<Self> {
        let b = BraidDiagram::from_anchors(anchors)?;
        b.validate().map_err(Error::Braid)?;
        Ok(b)
    }

    pub fn from_file(file: &BraidFile) -> Result<Self> {
        let b = BraidDiagram::from_anchors(file.anchors.clone())?;
        if file.m != b.m as i64 || file.d != b.d as i64 {
            return Err(Error::invalid(format!(
                "header says m={}, d={} but anchors are {}x{}",
                file.m,
                file.d,
                b.m,
                b.d + 1
            )));
        }
        b.validate().map_err(Error::Braid)?;
        Ok(b)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: BraidFile = serde_json::from_str(text)?;
        BraidDiagram::from_file(&file)
    }

    pub fn to_file(&self) -> BraidFile {
        BraidFile { m: self.m as i64, d: self.d as i64, anchors: self.anchors.clone() }
    }

    /// Braid file text with one strand per line.
    pub fn to_json_string(&self) -> String {
        let rows: Vec<String> = self
            .anchors
            .iter()
            .map(|r| {
                let vals: Vec<String> = r.iter().map(i64::to_string).collect();
                format!("    [{}]", vals.join(", "))
            })
            .collect();
        format!(
            "{{\n  \"m\": {},\n  \"d\": {},\n  \"anchors\": [\n{}\n  ]\n}}\n",
            self.m,
            self.d,
            rows.join(",\n")
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn anchors(&self) -> &[Vec<i64>] {
        &self.anchors
    }

    #[inline]
    pub fn y(&self, strand: usize, i: usize) -> i64 {
        self.anchors[strand][i]
    }

    fn column_is_permutation(&self, i: usize) -> bool {
        let mut seen = vec![false; self.m];
        for row in &self.anchors {
            let v = row[i];
            if v < 0 || v as usize >= self.m || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// Closure permutation `θ(α) = anchors[α][d]` (strands are indexed by
    /// initial height).
    pub fn theta(&self) -> Result<Theta> {
        if !self.column_is_permutation(self.d) {
            return Err(Error::Braid(vec![BraidError::Periodicity]));
        }
        let perm: Vec<usize> = self.anchors.iter().map(|r| r[self.d] as usize).collect();
        let mut seen = vec![false; self.m];
        let mut cycles = Vec::new();
        for start in 0..self.m {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = perm[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = perm[next];
            }
            cycles.push(cycle);
        }
        Ok(Theta { perm, cycles })
    }

    /// Every violated invariant, or `Ok` for a valid proper skeleton.
    pub fn validate(&self) -> std::result::Result<(), Vec<BraidError>> {
        let (m, d) = (self.m, self.d);
        let mut errs = Vec::new();
        if m < 3 || d < 1 {
            errs.push(BraidError::Shape { m, d });
            return Err(errs);
        }
        for (strand, row) in self.anchors.iter().enumerate() {
            for (column, &value) in row.iter().enumerate() {
                if value < 0 || value as usize >= m {
                    errs.push(BraidError::OutOfRange { strand, column, value, m });
                }
            }
            if row[0] != strand as i64 {
                errs.push(BraidError::Label { strand, value: row[0] });
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        for column in 0..d {
            if !self.column_is_permutation(column) {
                errs.push(BraidError::NotPermutation { column });
            }
        }
        let theta = self.theta().ok();
        if theta.is_none() {
            errs.push(BraidError::Periodicity);
        }
        let inverse = theta.as_ref().map(|t| {
            let mut inv = vec![0; m];
            for (a, &b) in t.perm.iter().enumerate() {
                inv[b] = a;
            }
            inv
        });
        for a in 0..m {
            for b in a + 1..m {
                for i in 0..d {
                    if self.y(a, i) != self.y(b, i) {
                        continue;
                    }
                    let before = if i > 0 {
                        Some(self.y(a, i - 1) - self.y(b, i - 1))
                    } else {
                        inverse.as_ref().map(|inv| self.y(inv[a], d - 1) - self.y(inv[b], d - 1))
                    };
                    let after = self.y(a, i + 1) - self.y(b, i + 1);
                    if before.is_some_and(|p| p * after >= 0) {
                        errs.push(BraidError::Tangency { a, b, column: i });
                    }
                }
            }
        }
        let top = m as i64 - 1;
        for (strand, row) in self.anchors.iter().enumerate() {
            for (column, &v) in row.iter().enumerate() {
                let ok = match strand {
                    0 => v == 0,
                    s if s == m - 1 => v == top,
                    _ => v != 0 && v != top,
                };
                if !ok {
                    errs.push(BraidError::Boundary { strand, column });
                    break;
                }
            }
        }
        if let Some(t) = &theta {
            let fixed: Vec<usize> = (1..m - 1).filter(|&a| t.perm[a] == a).collect();
            if !fixed.is_empty() {
                errs.push(BraidError::Improper { strands: fixed });
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Appends a copy of the closing column, so every strand gains one constant step.
    pub fn extend(&self) -> BraidDiagram {
        let anchors = self
            .anchors
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(r[self.d]);
                r
            })
            .collect();
        BraidDiagram { m: self.m, d: self.d + 1, anchors }
    }

    pub fn extend_by(&self, k: usize) -> BraidDiagram {
        (0..k).fold(self.clone(), |b, _| b.extend())
    }

    /// Number of transversal intersections of the free strand `x` (length `d`,
    /// read periodically) with all strands of the diagram.
    pub fn intersection_number(&self, x: &[f64]) -> Result<u32> {
        if x.len() != self.d {
            return Err(Error::invalid(format!("free strand has length {}, expected {}", x.len(), self.d)));
        }
        if let Some(v) = x.iter().find(|v| !v.is_finite() || v.fract() == 0.0) {
            return Err(Error::invalid(format!("free strand value {v} is not generic")));
        }
        let mut count = 0;
        for row in &self.anchors {
            for k in 0..self.d {
                let here = x[k] - row[k] as f64;
                let next = x[(k + 1) % self.d] - row[k + 1] as f64;
                if (here < 0.0) != (next < 0.0) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// Positive braid word `σ_{a_1} σ_{a_2} ...` on the inner strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveWord {
    pub letters: Vec<usize>,
}

impl PositiveWord {
    /// Parses whitespace separated tokens `s1`, `s2`, ... (also `σ1`).
    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| {
                let digits = tok
                    .strip_prefix('s')
                    .or_else(|| tok.strip_prefix('σ'))
                    .ok_or_else(|| Error::invalid(format!("bad token '{tok}', expected s<k>")))?;
                match digits.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k),
                    _ => Err(Error::invalid(format!("bad token '{tok}', expected s<k> with k >= 1"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::invalid("empty braid word"));
        }
        Ok(PositiveWord { letters })
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|k| format!("s{k}")).collect();
        f.write_str(&toks.join(" "))
    }
}

/// Presentation of `w` with one generator per step on `n_inner` inner strands.
pub fn word_to_diagram(w: &PositiveWord, n_inner: usize) -> Result<BraidDiagram> {
    if w.letters.is_empty() {
        return Err(Error::invalid("empty braid word"));
    }
    if let Some(&k) = w.letters.iter().find(|&&k| k == 0 || k + 1 > n_inner) {
        return Err(Error::invalid(format!("letter s{k} needs 1 <= k <= {}", n_inner.saturating_sub(1))));
    }
    let m = n_inner + 2;
    let d = w.letters.len();
    let mut anchors = vec![vec![0i64; d + 1]; m];
    let mut at_height: Vec<usize> = (0..m).collect();
    for (a, row) in anchors.iter_mut().enumerate() {
        row[0] = a as i64;
    }
    for (i, &k) in w.letters.iter().enumerate() {
        at_height.swap(k, k + 1);
        for (h, &strand) in at_height.iter().enumerate() {
            anchors[strand][i + 1] = h as i64;
        }
    }
    BraidDiagram::new(anchors)
}

#[derive(Clone, Copy, Debug)]
struct Crossing {
    t_num: i64,
    t_den: i64,
    h_num: i64,
    below: usize,
}

impl Crossing {
    fn cmp_key(&self, other: &Crossing) -> Ordering {
        (self.t_num * other.t_den)
            .cmp(&(other.t_num * self.t_den))
            .then((self.h_num * other.t_den).cmp(&(other.h_num * self.t_den)))
    }
}

/// Positive word read off the crossings of a valid diagram, step by step in
/// order of the crossing parameter.
pub fn diagram_to_word(b: &BraidDiagram) -> Result<PositiveWord> {
    let m = b.m();
    let mut letters = Vec::new();
    for i in 0..b.d() {
        let mut step = Vec::new();
        for a in 0..m {
            for c in a + 1..m {
                let start = b.y(c, i) - b.y(a, i);
                let end = b.y(c, i + 1) - b.y(a, i + 1);
                if start * end >= 0 {
                    continue;
                }
                let (da, dc) = (b.y(a, i + 1) - b.y(a, i), b.y(c, i + 1) - b.y(c, i));
                let (mut t_num, mut t_den) = (start, da - dc);
                if t_den < 0 {
                    t_num = -t_num;
                    t_den = -t_den;
                }
                let h_num = b.y(a, i) * t_den + t_num * da;
                let mut below = 0;
                for g in 0..m {
                    let pos = b.y(g, i) * t_den + t_num * (b.y(g, i + 1) - b.y(g, i));
                    if g != a && g != c && pos == h_num {
                        return Err(Error::invariant(format!(
                            "strand {g} passes through the crossing of {a} and {c} at step {i}"
                        )));
                    }
                    if pos < h_num {
                        below += 1;
                    }
                }
                step.push(Crossing { t_num, t_den, h_num, below });
            }
        }
        step.sort_by(Crossing::cmp_key);
        if step.windows(2).any(|p| p[0].cmp_key(&p[1]) == Ordering::Equal) {
            return Err(Error::invariant(format!("coincident crossings at step {i}")));
        }
        letters.extend(step.iter().map(|c| c.below));
    }
    if letters.is_empty() {
        return Err(Error::invalid("diagram has no crossings"));
    }
    Ok(PositiveWord { letters })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_boundary(m: i64, inner: &[&[i64]]) -> Vec<Vec<i64>> {
        let w = inner[0].len();
        let mut a = vec![vec![0; w]];
        a.extend(inner.iter().map(|r| r.to_vec()));
        a.push(vec![m - 1; w]);
        a
    }

    fn example_a() -> BraidDiagram {
        BraidDiagram::new(with_boundary(
            8,
            &[&[1, 1, 3], &[2, 4, 1], &[3, 2, 2], &[4, 6, 6], &[5, 5, 4], &[6, 3, 5]],
        ))
        .unwrap()
    }

    #[test]
    fn example_a_theta() {
        let t = example_a().theta().unwrap();
        assert_eq!(t.inner_cycles(), vec![vec![1, 3, 2], vec![4, 6, 5]]);
    }

    #[test]
    fn improper_inner_fixed_point() {
        let b = BraidDiagram::from_anchors(with_boundary(5, &[&[1, 3, 1], &[2, 1, 2], &[3, 2, 3]]))
            .unwrap();
        let errs = b.validate().unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, BraidError::Improper { .. })));
    }

    #[test]
    fn tangency_detected() {
        let b = BraidDiagram::from_anchors(with_boundary(5, &[&[1, 2, 1], &[2, 2, 2], &[3, 3, 3]]))
            .unwrap();
        let errs = b.validate().unwrap_err();
        assert!(errs.contains(&BraidError::NotPermutation { column: 1 }));
        assert!(errs.iter().any(|e| matches!(e, BraidError::Tangency { a: 1, b: 2, column: 1 })));
    }

    #[test]
    fn identity_theta() {
        let b = BraidDiagram::from_anchors(vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(b.theta().unwrap().perm, vec![0, 1, 2]);
        assert!(b.validate().is_err());
    }

    #[test]
    fn word_sigma1_two_strands() {
        let b = word_to_diagram(&PositiveWord::parse("s1").unwrap(), 2).unwrap();
        assert_eq!((b.m(), b.d()), (4, 1));
        assert_eq!(b.anchors()[1], vec![1, 2]);
        assert_eq!(b.anchors()[2], vec![2, 1]);
    }

    #[test]
    fn word_round_trip() {
        let w = PositiveWord::parse("s2 s1").unwrap();
        assert_eq!(diagram_to_word(&word_to_diagram(&w, 3).unwrap()).unwrap(), w);
    }

    #[test]
    fn word_errors() {
        assert!(PositiveWord::parse("").is_err());
        assert!(PositiveWord::parse("s1 x2").is_err());
        assert!(word_to_diagram(&PositiveWord { letters: vec![3] }, 3).is_err());
    }

    #[test]
    fn example_a_free_strand() {
        let b = example_a();
        assert_eq!(b.intersection_number(&[0.5, 0.5]).unwrap(), 0);
        assert_eq!(b.intersection_number(&[1.5, 1.5]).unwrap(), 2);
        assert_eq!(b.intersection_number(&[3.5, 3.5]).unwrap(), 4);
        assert!(b.intersection_number(&[1.0, 0.5]).is_err());
    }

    #[test]
    fn extend_adds_one_column() {
        let b = example_a();
        let e = b.extend();
        assert_eq!(e.d(), 3);
        assert!(e.anchors().iter().all(|r| r[2] == r[3]));
        assert!(e.validate().is_ok());
        let c = BraidDiagram::from_anchors(vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(c.extend().anchors()[1], vec![1, 1, 1]);
    }
}
