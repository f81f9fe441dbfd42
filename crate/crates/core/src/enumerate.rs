//! Exhaustive pattern enumeration per family, in placement-lexicographic
//! order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::pattern::{classify_pattern, Cell, ClassLabel, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    H,
    D,
    C,
    G,
    F,
    B,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::H,
        Family::D,
        Family::C,
        Family::G,
        Family::F,
        Family::B,
    ];

    pub fn contains(&self, label: &ClassLabel) -> bool {
        let s = &label.sets;
        match self {
            Family::H => s.h,
            Family::D => s.d,
            Family::C => s.c,
            Family::G => s.g,
            Family::F => s.f,
            Family::B => s.b,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "H" | "h" => Ok(Family::H),
            "D" | "d" => Ok(Family::D),
            "C" | "c" => Ok(Family::C),
            "G" | "g" => Ok(Family::G),
            "F" | "f" => Ok(Family::F),
            "B" | "b" => Ok(Family::B),
            _ => Err(Error::InvalidPattern(format!("unknown family {s:?}"))),
        }
    }
}

/// Cells on or below the diagonal, sorted by placement order.
pub fn lower_cells(n: usize) -> Vec<Cell> {
    let mut cells: Vec<Cell> = (1..=n)
        .flat_map(|i| (1..=i).map(move |j| Cell::new(i, j)))
        .collect();
    cells.sort();
    cells
}

/// All `n`-subsets of the lower cells in lexicographic order.
fn h_patterns(n: usize) -> impl Iterator<Item = Pattern> {
    let cells = lower_cells(n);
    let m = cells.len();
    let mut idx: Option<Vec<usize>> = (n <= m).then(|| (0..n).collect());
    std::iter::from_fn(move || {
        let current = idx.as_mut()?;
        let out = Pattern::new(n, current.iter().map(|&i| cells[i]).collect())
            .expect("sorted distinct cells");
        // Advance to the next combination.
        let mut pos = n;
        loop {
            if pos == 0 {
                idx = None;
                break;
            }
            pos -= 1;
            if current[pos] < m - n + pos {
                current[pos] += 1;
                for q in pos + 1..n {
                    current[q] = current[q - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// D patterns, `x_k` at `(i_k, i_k - k + 1)` with `i_k` in `k..=n`, odometer
/// over `(i_1, ..., i_n)`.
fn d_patterns(n: usize) -> impl Iterator<Item = Pattern> {
    let mut rows: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let current = rows.as_mut()?;
        let out = Pattern::from_rows(current).expect("rows in range");
        let mut pos = n;
        loop {
            if pos == 0 {
                rows = None;
                break;
            }
            pos -= 1;
            if current[pos] < n {
                current[pos] += 1;
                for (q, r) in current.iter_mut().enumerate().skip(pos + 1) {
                    *r = q + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Every pattern of order `n` in `family`, each once, in ascending order.
pub fn enumerate_patterns(n: usize, family: Family) -> Box<dyn Iterator<Item = Pattern>> {
    if n == 0 {
        return Box::new(std::iter::empty());
    }
    match family {
        Family::H => Box::new(h_patterns(n)),
        Family::B => Box::new(h_patterns(n).filter(|p| classify_pattern(p).sets.b)),
        Family::D => Box::new(d_patterns(n)),
        f => Box::new(d_patterns(n).filter(move |p| f.contains(&classify_pattern(p)))),
    }
}
