//! Square matrices of polynomials and the structural queries used throughout
//! the crate: the unit lower Hessenberg predicate, index windows, subdiagonal
//! sums, characteristic polynomials, nilpotency and J-conjugation.

use std::collections::BTreeMap;
use std::fmt;

use crate::det::det_cofactor;
use crate::error::{Error, Position, Result};
use crate::parse::parse_expr_at;
use crate::poly::{Indeterminate, Polynomial};
use crate::verdict::Verdict;

/// Largest order accepted by [`charpoly_oracle`].
pub const ORACLE_MAX_ORDER: usize = 8;

/// Inclusive 1-based index range `lo..=hi`; empty when `hi < lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn new(lo: usize, hi: usize) -> Self {
        Window { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("[]")
        } else {
            write!(f, "[{}..{}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<Polynomial>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            entries: vec![Polynomial::zero(); order * order],
        }
    }

    pub fn empty() -> Self {
        SymMatrix::zeros(0)
    }

    pub fn identity(order: usize) -> Self {
        let mut m = SymMatrix::zeros(order);
        for i in 0..order {
            m.set(i, i, Polynomial::one());
        }
        m
    }

    /// Upper shift `U_n`: ones on the superdiagonal, zeros elsewhere.
    pub fn upper_shift(order: usize) -> Self {
        let mut m = SymMatrix::zeros(order);
        for i in 0..order.saturating_sub(1) {
            m.set(i, i + 1, Polynomial::one());
        }
        m
    }

    /// Frobenius companion matrix: `U_n` with last row `x_n, ..., x_1`.
    pub fn frobenius(order: usize) -> Self {
        let mut m = SymMatrix::upper_shift(order);
        for j in 0..order {
            m.set(order - 1, j, Polynomial::x((order - j) as u32));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let order = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == order),
            "matrix rows must be square"
        );
        SymMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        SymMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Polynomial::int(v)).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Polynomial) {
        self.entries[row * self.order + col] = value;
    }

    /// Entry at 1-based `(i, j)`, the indexing used for patterns.
    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        self.get(i - 1, j - 1)
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries
            .chunks(self.order.max(1))
            .take(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Polynomial)> + '_ {
        let n = self.order;
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, p)| ((idx / n, idx % n), p))
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> SymMatrix {
        SymMatrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, bindings: &BTreeMap<Indeterminate, Polynomial>) -> SymMatrix {
        self.map(|p| p.substitute(bindings))
    }

    pub fn has_x(&self) -> bool {
        self.entries.iter().any(Polynomial::has_x)
    }

    pub fn transpose(&self) -> SymMatrix {
        let n = self.order;
        let mut t = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Parses the text format: a first line `order <n>` followed by `n` rows of
    /// `n` whitespace-separated expressions; `#` starts a comment.
    pub fn parse(text: &str) -> Result<SymMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());

        let syntax = |line: usize, column: usize, message: String| Error::Syntax {
            position: Position { line, column },
            message,
        };

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| syntax(1, 1, "missing 'order <n>' header".into()))?;
        let mut words = header.split_whitespace();
        let order = match (words.next(), words.next(), words.next()) {
            (Some("order"), Some(n), None) => n.parse::<usize>().map_err(|_| {
                syntax(
                    line_no,
                    column_of(header, n),
                    format!("invalid order '{n}'"),
                )
            })?,
            _ => return Err(syntax(line_no, 1, "expected 'order <n>' header".into())),
        };

        let mut rows = Vec::with_capacity(order);
        for (line_no, line) in lines.by_ref() {
            if rows.len() == order {
                return Err(syntax(
                    line_no,
                    1,
                    "more rows than the declared order".into(),
                ));
            }
            let mut row = Vec::with_capacity(order);
            for token in line.split_whitespace() {
                let column = column_of(line, token);
                if row.len() == order {
                    return Err(syntax(
                        line_no,
                        column,
                        format!("row has more than {order} entries"),
                    ));
                }
                row.push(parse_expr_at(token, order, line_no, column)?);
            }
            if row.len() < order {
                return Err(syntax(
                    line_no,
                    line.trim_end().len() + 1,
                    format!("row has {} entries, expected {order}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() < order {
            let last = text.lines().count().max(1);
            return Err(syntax(
                last,
                1,
                format!("expected {order} rows, found {}", rows.len()),
            ));
        }
        Ok(SymMatrix::from_rows(rows))
    }

    /// Renders in the text format accepted by [`SymMatrix::parse`].
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(Polynomial::to_compact_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = format!("order {}\n", self.order);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// 1-based column of `token` inside `line` (token must be a subslice of line).
fn column_of(line: &str, token: &str) -> usize {
    token.as_ptr() as usize - line.as_ptr() as usize + 1
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Superdiagonal entries are the constant 1 and everything above is zero.
pub fn is_ulh(a: &SymMatrix) -> bool {
    let n = a.order();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let e = a.get(i, j);
            if j == i + 1 {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    })
}

fn check_window(a: &SymMatrix, w: Window) -> Result<()> {
    if w.is_empty() {
        if w.lo > a.order() + 1 || w.hi > a.order() + 1 {
            return Err(Error::WindowOutOfRange {
                lo: w.lo,
                hi: w.hi,
                order: a.order(),
            });
        }
        return Ok(());
    }
    if w.lo == 0 || w.hi > a.order() {
        return Err(Error::WindowOutOfRange {
            lo: w.lo,
            hi: w.hi,
            order: a.order(),
        });
    }
    Ok(())
}

/// `A[rows; cols]`. An empty window on either side yields the empty matrix.
pub fn submatrix(a: &SymMatrix, rows: Window, cols: Window) -> Result<SymMatrix> {
    check_window(a, rows)?;
    check_window(a, cols)?;
    if rows.is_empty() || cols.is_empty() {
        return Ok(SymMatrix::empty());
    }
    if rows.len() != cols.len() {
        return Err(Error::WindowOutOfRange {
            lo: cols.lo,
            hi: cols.hi,
            order: a.order(),
        });
    }
    Ok(SymMatrix::from_rows(
        (rows.lo..=rows.hi)
            .map(|i| (cols.lo..=cols.hi).map(|j| a.at(i, j).clone()).collect())
            .collect(),
    ))
}

/// Principal submatrix `A[lo..hi]`, empty when the range is not valid.
pub fn principal(a: &SymMatrix, lo: usize, hi: usize) -> SymMatrix {
    if hi < lo || lo == 0 || hi > a.order() {
        return SymMatrix::empty();
    }
    let w = Window::new(lo, hi);
    submatrix(a, w, w).expect("principal window is in range")
}

/// The k-block `A[k..n; 1..k]`, with top-right corner `(k, k)`. Rectangular, so
/// returned as rows.
pub fn k_block(a: &SymMatrix, k: usize) -> Result<Vec<Vec<Polynomial>>> {
    let n = a.order();
    if k == 0 || k > n {
        return Err(Error::WindowOutOfRange {
            lo: k,
            hi: n,
            order: n,
        });
    }
    Ok((k..=n)
        .map(|i| (1..=k).map(|j| a.at(i, j).clone()).collect())
        .collect())
}

/// Sum of the entries on the k-subdiagonal `(k+1, 1), ..., (n, n-k)`.
pub fn subdiag_sum(a: &SymMatrix, k: usize) -> Result<Polynomial> {
    let n = a.order();
    if k >= n {
        return Err(Error::SubdiagonalOutOfRange { k, order: n });
    }
    Ok((0..n - k).map(|r| a.get(k + r, r).clone()).sum())
}

/// Sets every `x_k` to zero; parameters stay.
pub fn constant_part(a: &SymMatrix) -> SymMatrix {
    let bindings: BTreeMap<Indeterminate, Polynomial> = a
        .entries()
        .flat_map(|(_, p)| p.x_indices())
        .map(|k| (Indeterminate::X(k), Polynomial::zero()))
        .collect();
    a.substitute(&bindings)
}

/// `det(lambda I - A)`.
///
/// Unit lower Hessenberg inputs use the row recurrence
/// `p_k = (lambda - a_kk) p_{k-1} - sum_{j<k} a_kj p_{j-1}`; anything else goes
/// through cofactor expansion.
pub fn charpoly(a: &SymMatrix) -> Polynomial {
    if is_ulh(a) {
        leading_charpolys(a).pop().expect("p_0 always present")
    } else {
        det_cofactor(&lambda_minus(a))
    }
}

/// Characteristic polynomials `p_0 = 1, p_1, ..., p_n` of the leading principal
/// submatrices of a ULH matrix.
pub fn leading_charpolys(a: &SymMatrix) -> Vec<Polynomial> {
    debug_assert!(is_ulh(a));
    let n = a.order();
    let lambda = Polynomial::lambda();
    let mut p = Vec::with_capacity(n + 1);
    p.push(Polynomial::one());
    for k in 0..n {
        let mut next = &(&lambda - a.get(k, k)) * &p[k];
        for (j, pj) in p.iter().enumerate().take(k) {
            let e = a.get(k, j);
            if !e.is_zero() {
                next = &next - &(e * pj);
            }
        }
        p.push(next);
    }
    p
}

fn lambda_minus(a: &SymMatrix) -> Vec<Vec<Polynomial>> {
    let lambda = Polynomial::lambda();
    (0..a.order())
        .map(|i| {
            (0..a.order())
                .map(|j| {
                    if i == j {
                        &lambda - a.get(i, j)
                    } else {
                        -a.get(i, j)
                    }
                })
                .collect()
        })
        .collect()
}

/// Cofactor expansion of `det(lambda I - A)`, independent of the Hessenberg
/// recurrence. Orders above [`ORACLE_MAX_ORDER`] are refused.
pub fn charpoly_oracle(a: &SymMatrix) -> Result<Polynomial> {
    if a.order() > ORACLE_MAX_ORDER {
        return Err(Error::OracleTooLarge {
            order: a.order(),
            limit: ORACLE_MAX_ORDER,
        });
    }
    Ok(det_cofactor(&lambda_minus(a)))
}

/// Nilpotency via `charpoly(N) = lambda^m`. Parametric entries yield the
/// coefficients that must vanish.
pub fn is_nilpotent(n: &SymMatrix) -> Result<Verdict> {
    if let Some(k) = n.entries().flat_map(|(_, p)| p.x_indices()).next() {
        return Err(Error::ContainsVariable(k));
    }
    let m = n.order() as u32;
    let residual = &charpoly(n) - &Polynomial::lambda_pow(m);
    Ok(Verdict::require_zero(
        (0..m).map(|d| residual.lambda_coeff(d)),
    ))
}

/// `(J A J)^T` with `J` the backward identity.
pub fn j_conjugate_transpose(a: &SymMatrix) -> SymMatrix {
    let n = a.order();
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(n - 1 - j, n - 1 - i).clone());
        }
    }
    out
}
