//! Variable placements and the pattern families H, D, C, G, F and B.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{is_ulh, SymMatrix};
use crate::poly::Polynomial;

/// 1-based matrix position `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub fn new(i: usize, j: usize) -> Self {
        Cell { i, j }
    }

    /// Index of the subdiagonal holding this cell (`i - j`); negative above
    /// the diagonal.
    pub fn diagonal(&self) -> isize {
        self.i as isize - self.j as isize
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The placement order: by diagonal index `i - j`, then by row.
pub fn order_prec(a: Cell, b: Cell) -> Ordering {
    a.diagonal().cmp(&b.diagonal()).then_with(|| a.i.cmp(&b.i))
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        order_prec(*self, *other)
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positions of `x_1, ..., x_n`, in variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    n: usize,
    cells: Vec<Cell>,
}

impl Pattern {
    pub fn new(n: usize, cells: Vec<Cell>) -> Result<Pattern> {
        if cells.len() != n {
            return Err(Error::InvalidPattern(format!(
                "order {n} needs {n} cells, got {}",
                cells.len()
            )));
        }
        for c in &cells {
            if c.j == 0 || c.j > c.i || c.i > n {
                return Err(Error::InvalidPattern(format!(
                    "cell {c} is not on or below the diagonal of an order-{n} matrix"
                )));
            }
        }
        for w in cells.windows(2) {
            if order_prec(w[0], w[1]) != Ordering::Less {
                return Err(Error::InvalidPattern(format!(
                    "cells {} and {} are not strictly increasing in the placement order",
                    w[0], w[1]
                )));
            }
        }
        Ok(Pattern { n, cells })
    }

    /// Shorthand for the D-family notation `D_{i_1,...,i_n}`: `x_k` at
    /// `(i_k, i_k - k + 1)`.
    pub fn from_rows(rows: &[usize]) -> Result<Pattern> {
        let cells = rows
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                if i < k + 1 {
                    Err(Error::InvalidPattern(format!(
                        "x{} cannot sit in row {i}",
                        k + 1
                    )))
                } else {
                    Ok(Cell::new(i, i - k))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(rows.len(), cells)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Cell of `x_k` (1-based `k`).
    pub fn cell(&self, k: usize) -> Cell {
        self.cells[k - 1]
    }

    /// Variable index held at `cell`, if any.
    pub fn variable_at(&self, cell: Cell) -> Option<usize> {
        self.cells.iter().position(|&c| c == cell).map(|k| k + 1)
    }

    /// Emission format: `n; (i1,j1) (i2,j2) ...`.
    pub fn to_line(&self) -> String {
        let cells: Vec<String> = self.cells.iter().map(ToString::to_string).collect();
        format!("{}; {}", self.n, cells.join(" "))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Reads the variable positions off a matrix. Each `x_k` must appear exactly
/// once, as a bare entry.
pub fn extract_pattern(a: &SymMatrix) -> Result<Pattern> {
    let n = a.order();
    let mut found: Vec<Option<Cell>> = vec![None; n];
    for ((r, c), entry) in a.entries() {
        let cell = Cell::new(r + 1, c + 1);
        let indices = entry.x_indices();
        if indices.is_empty() {
            continue;
        }
        let Some(k) = entry.as_bare_x() else {
            return Err(Error::CompoundVariable {
                index: *indices.iter().next().expect("nonempty"),
                cell,
            });
        };
        let slot = found
            .get_mut(k as usize - 1)
            .ok_or_else(|| Error::InvalidPattern(format!("x{k} exceeds order {n}")))?;
        if let Some(first) = slot {
            return Err(Error::DuplicateVariable {
                index: k,
                first: *first,
                second: cell,
            });
        }
        *slot = Some(cell);
    }
    let cells = found
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or(Error::MissingVariable(k as u32 + 1)))
        .collect::<Result<Vec<_>>>()?;
    Pattern::new(n, cells)
}

/// The sparse ULH matrix of a pattern: superdiagonal ones and the variables.
pub fn base_matrix(p: &Pattern) -> SymMatrix {
    let mut m = SymMatrix::upper_shift(p.order());
    for (k, c) in p.cells().iter().enumerate() {
        m.set(c.i - 1, c.j - 1, Polynomial::x(k as u32 + 1));
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyFlags {
    #[serde(rename = "H")]
    pub h: bool,
    #[serde(rename = "D")]
    pub d: bool,
    #[serde(rename = "C")]
    pub c: bool,
    #[serde(rename = "G")]
    pub g: bool,
    #[serde(rename = "F")]
    pub f: bool,
    #[serde(rename = "B")]
    pub b: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    pub sets: FamilyFlags,
    /// Every `t` whose t-block holds all variables.
    pub block_ts: Vec<usize>,
    /// Row of `x_1`, recorded when the pattern is in D.
    pub i1: Option<usize>,
}

fn in_d(p: &Pattern) -> bool {
    p.cells().iter().enumerate().all(|(k, c)| c.i - c.j == k)
}

pub fn classify_pattern(p: &Pattern) -> ClassLabel {
    let n = p.order();
    let cells = p.cells();
    let d = in_d(p);
    let i1 = cells[0].i;
    let c = d && cells.iter().all(|cell| cell.j <= i1 && i1 <= cell.i);
    let g = c && {
        let rows: BTreeSet<usize> = cells.iter().map(|cell| cell.i).collect();
        let cols: BTreeSet<usize> = cells.iter().map(|cell| cell.j).collect();
        rows == (i1..=n).collect() && cols == (1..=i1).collect()
    };
    let f = g
        && cells
            .windows(2)
            .all(|w| w[1].i == w[0].i || w[1].i == w[0].i + 1);
    let max_j = cells.iter().map(|cell| cell.j).max().unwrap_or(1);
    let min_i = cells.iter().map(|cell| cell.i).min().unwrap_or(n);
    let block_ts: Vec<usize> = (max_j..=min_i).collect();
    ClassLabel {
        sets: FamilyFlags {
            h: true,
            d,
            c,
            g,
            f,
            b: !block_ts.is_empty(),
        },
        block_ts,
        i1: d.then_some(i1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixClass {
    #[serde(flatten)]
    pub label: ClassLabel,
    /// ULH superpattern of the pattern's sparse base matrix.
    pub tilde: bool,
    /// Additionally, every nonzero off the superdiagonal lies in the
    /// `i_1`-block. Only meaningful inside C~.
    pub hat: bool,
    #[serde(skip)]
    pub pattern: Pattern,
}

/// True when `(i, j)` (1-based) lies in the t-block `A[t..n; 1..t]`.
pub fn in_block(t: usize, i: usize, j: usize) -> bool {
    i >= t && j <= t
}

pub fn classify_matrix(a: &SymMatrix) -> Result<MatrixClass> {
    let pattern = extract_pattern(a)?;
    let label = classify_pattern(&pattern);
    let tilde = is_ulh(a);
    let hat = tilde && label.sets.c && {
        let i1 = pattern.cell(1).i;
        a.entries()
            .all(|((r, c), e)| e.is_zero() || c == r + 1 || in_block(i1, r + 1, c + 1))
    };
    Ok(MatrixClass {
        label,
        tilde,
        hat,
        pattern,
    })
}
