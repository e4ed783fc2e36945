//! Cubical decomposition of the box `[0, m-1]^d` with interval-coded cells and
//! the GF(2) cellular boundary.
//!
//! A cell is a vector of codes, one per coordinate: the even code `2h` stands
//! for the point `{h}` and the odd code `2h+1` for the open interval `(h, h+1)`.
//! Cells are indexed densely in lexicographic order of their codes.

use crate::error::{Error, Result};
use std::io::Write;

pub const DEFAULT_CELL_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub code: Vec<u32>,
}

impl Cell {
    pub fn new(code: Vec<u32>) -> Self {
        Cell { code }
    }

    pub fn dim(&self) -> usize {
        self.code.iter().filter(|&&c| c % 2 == 1).count()
    }
}

#[derive(Clone, Debug)]
pub struct CubicalComplex {
    m: usize,
    d: usize,
    radix: usize,
    strides: Vec<usize>,
    top_strides: Vec<usize>,
    n_cells: usize,
    n_top: usize,
}

impl CubicalComplex {
    /// Box complex for `m` heights and period `d`, refusing more than `budget` cells.
    pub fn new(m: usize, d: usize, budget: u64) -> Result<Self> {
        if m < 3 || d < 1 {
            return Err(Error::invalid(format!("complex needs m >= 3 and d >= 1, got m={m}, d={d}")));
        }
        let radix = 2 * m - 1;
        let cells = (radix as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if cells > budget as u128 {
            return Err(Error::CellBudget { cells, budget });
        }
        let n_cells = cells as usize;
        let n_top = (m - 1).pow(d as u32);
        let strides = (0..d).map(|i| radix.pow((d - 1 - i) as u32)).collect();
        let top_strides = (0..d).map(|i| (m - 1).pow((d - 1 - i) as u32)).collect();
        Ok(CubicalComplex { m, d, radix, strides, top_strides, n_cells, n_top })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn n_top(&self) -> usize {
        self.n_top
    }

    /// Largest code value, `2(m-1)`.
    pub fn max_code(&self) -> u32 {
        (self.radix - 1) as u32
    }

    #[inline]
    pub fn digit(&self, idx: usize, i: usize) -> u32 {
        ((idx / self.strides[i]) % self.radix) as u32
    }

    pub fn index(&self, cell: &Cell) -> Result<usize> {
        if cell.code.len() != self.d || cell.code.iter().any(|&c| c > self.max_code()) {
            return Err(Error::invalid(format!("cell code {:?} out of range", cell.code)));
        }
        Ok(cell.code.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum())
    }

    pub fn cell(&self, idx: usize) -> Cell {
        Cell { code: (0..self.d).map(|i| self.digit(idx, i)).collect() }
    }

    #[inline]
    pub fn dim(&self, idx: usize) -> usize {
        (0..self.d).filter(|&i| self.digit(idx, i) % 2 == 1).count()
    }

    pub fn is_top(&self, idx: usize) -> bool {
        self.dim(idx) == self.d
    }

    /// Cell index of the `t`-th top cell (top cells in lexicographic order).
    pub fn top_cell(&self, t: usize) -> usize {
        (0..self.d)
            .map(|i| (2 * ((t / self.top_strides[i]) % (self.m - 1)) + 1) * self.strides[i])
            .sum()
    }

    /// Position of a top cell among top cells.
    pub fn top_index(&self, idx: usize) -> Option<usize> {
        let mut t = 0;
        for i in 0..self.d {
            let c = self.digit(idx, i) as usize;
            if c % 2 == 0 {
                return None;
            }
            t += (c / 2) * self.top_strides[i];
        }
        Some(t)
    }

    /// Interval coordinates `h` of a top cell `(h_0, h_0+1) × ...`.
    pub fn top_coords(&self, t: usize) -> Vec<usize> {
        (0..self.d).map(|i| (t / self.top_strides[i]) % (self.m - 1)).collect()
    }

    /// Codimension-one faces, ascending.
    pub fn faces_of(&self, idx: usize, out: &mut Vec<usize>) {
        out.clear();
        for i in 0..self.d {
            if self.digit(idx, i) % 2 == 1 {
                out.push(idx - self.strides[i]);
                out.push(idx + self.strides[i]);
            }
        }
        out.sort_unstable();
    }

    /// Codimension-one cofaces, ascending.
    pub fn cofaces_of(&self, idx: usize, out: &mut Vec<usize>) {
        out.clear();
        let top = self.max_code();
        for i in 0..self.d {
            let c = self.digit(idx, i);
            if c % 2 == 0 {
                if c > 0 {
                    out.push(idx - self.strides[i]);
                }
                if c < top {
                    out.push(idx + self.strides[i]);
                }
            }
        }
        out.sort_unstable();
    }

    fn product(&self, idx: usize, options: impl Fn(u32) -> Vec<u32>) -> Vec<usize> {
        let mut acc = vec![0usize];
        for i in 0..self.d {
            let opts = options(self.digit(idx, i));
            acc = acc
                .iter()
                .flat_map(|&base| opts.iter().map(move |&c| base + c as usize * self.strides[i]))
                .collect();
        }
        acc.sort_unstable();
        acc
    }

    /// All cells in the closure, including the cell itself.
    pub fn closure_of(&self, idx: usize) -> Vec<usize> {
        self.product(idx, |c| if c % 2 == 1 { vec![c - 1, c, c + 1] } else { vec![c] })
    }

    /// All cells whose closure contains the cell.
    pub fn star_of(&self, idx: usize) -> Vec<usize> {
        let top = self.max_code();
        self.product(idx, |c| {
            if c % 2 == 1 {
                vec![c]
            } else {
                let mut v = Vec::with_capacity(3);
                if c > 0 {
                    v.push(c - 1);
                }
                v.push(c);
                if c < top {
                    v.push(c + 1);
                }
                v
            }
        })
    }

    /// Top cells in the star, as cell indices.
    pub fn star_top_of(&self, idx: usize) -> Vec<usize> {
        let top = self.max_code();
        self.product(idx, |c| {
            if c % 2 == 1 {
                vec![c]
            } else {
                let mut v = Vec::with_capacity(2);
                if c > 0 {
                    v.push(c - 1);
                }
                if c < top {
                    v.push(c + 1);
                }
                v
            }
        })
    }

    /// Calls `f(cell, top)` for each top cell in the star, with its cell index
    /// and its position among top cells, in ascending order.
    #[inline]
    pub fn for_each_star_top(&self, idx: usize, mut f: impl FnMut(usize, usize)) {
        self.star_top_rec(idx, 0, 0, 0, &mut f);
    }

    fn star_top_rec(&self, idx: usize, i: usize, cell: usize, t: usize, f: &mut impl FnMut(usize, usize)) {
        if i == self.d {
            f(cell, t);
            return;
        }
        let c = self.digit(idx, i) as usize;
        let (s, ts) = (self.strides[i], self.top_strides[i]);
        if c % 2 == 1 {
            self.star_top_rec(idx, i + 1, cell + c * s, t + (c / 2) * ts, f);
        } else {
            if c > 0 {
                self.star_top_rec(idx, i + 1, cell + (c - 1) * s, t + (c / 2 - 1) * ts, f);
            }
            if c < self.radix - 1 {
                self.star_top_rec(idx, i + 1, cell + (c + 1) * s, t + (c / 2) * ts, f);
            }
        }
    }

    pub fn faces(&self, cell: &Cell) -> Result<Vec<Cell>> {
        let mut out = Vec::new();
        self.faces_of(self.index(cell)?, &mut out);
        Ok(out.into_iter().map(|i| self.cell(i)).collect())
    }

    pub fn closure(&self, cell: &Cell) -> Result<Vec<Cell>> {
        Ok(self.closure_of(self.index(cell)?).into_iter().map(|i| self.cell(i)).collect())
    }

    pub fn star(&self, cell: &Cell) -> Result<Vec<Cell>> {
        Ok(self.star_of(self.index(cell)?).into_iter().map(|i| self.cell(i)).collect())
    }

    /// Cellular boundary over GF(2), checked for `∂∘∂ = 0`.
    pub fn boundary_matrix(&self) -> Result<BoundaryMatrix> {
        let mut offsets = Vec::with_capacity(self.n_cells + 1);
        let mut rows = Vec::new();
        let mut buf = Vec::new();
        offsets.push(0);
        for c in 0..self.n_cells {
            self.faces_of(c, &mut buf);
            rows.extend(buf.iter().map(|&r| r as u32));
            offsets.push(rows.len());
        }
        let bd = BoundaryMatrix { n: self.n_cells, offsets, rows };
        bd.check_square_zero()?;
        Ok(bd)
    }
}

/// Square sparse GF(2) matrix stored by columns, rows ascending within each column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    n: usize,
    offsets: Vec<usize>,
    rows: Vec<u32>,
}

impl BoundaryMatrix {
    pub fn from_columns(columns: &[Vec<u32>]) -> Result<Self> {
        let n = columns.len();
        let mut offsets = vec![0];
        let mut rows = Vec::new();
        for col in columns {
            let mut col = col.clone();
            col.sort_unstable();
            if col.windows(2).any(|w| w[0] == w[1]) || col.iter().any(|&r| r as usize >= n) {
                return Err(Error::invalid("boundary column has duplicate or out-of-range rows"));
            }
            rows.extend(col);
            offsets.push(rows.len());
        }
        Ok(BoundaryMatrix { n, offsets, rows })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn column(&self, c: usize) -> &[u32] {
        &self.rows[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn check_square_zero(&self) -> Result<()> {
        let mut acc: Vec<u32> = Vec::new();
        for c in 0..self.n {
            acc.clear();
            for &f in self.column(c) {
                acc.extend_from_slice(self.column(f as usize));
            }
            acc.sort_unstable();
            let mut k = 0;
            while k < acc.len() {
                let mut j = k;
                while j < acc.len() && acc[j] == acc[k] {
                    j += 1;
                }
                if (j - k) % 2 == 1 {
                    return Err(Error::invariant(format!("boundary of boundary of cell {c} is nonzero")));
                }
                k = j;
            }
        }
        Ok(())
    }

    /// Sorted `row col 1` triplets, one per line.
    pub fn write_triplets(&self, mut w: impl Write) -> Result<()> {
        let mut triplets: Vec<(u32, usize)> = Vec::with_capacity(self.nnz());
        for c in 0..self.n {
            triplets.extend(self.column(c).iter().map(|&r| (r, c)));
        }
        triplets.sort_unstable();
        for (r, c) in triplets {
            writeln!(w, "{r} {c} 1")?;
        }
        Ok(())
    }
}
