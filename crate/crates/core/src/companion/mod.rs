//! Companion verdicts for ULH matrices.
//!
//! A matrix with variables `x_1, ..., x_n` is companion when its characteristic
//! polynomial is `lambda^n - x_1 lambda^{n-1} - ... - x_n`.

mod nested;
mod parameterize;

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use nested::{nested_membership, nilpotent_complete, NestedSpec, Side};
pub use parameterize::{param_name, parameterize_g};

use crate::error::{Error, Result};
use crate::matrix::{
    charpoly, constant_part, is_nilpotent, is_ulh, principal, subdiag_sum, SymMatrix, Window,
};
use crate::pattern::{classify_matrix, classify_pattern, extract_pattern, in_block, Cell, Pattern};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Structural,
    GHat,
}

/// Which block condition failed: the leading block `A[1..i_k-k]` or the
/// trailing block `A[i_k+1..n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSide {
    Leading,
    Trailing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Coefficient of a `(lambda, x)`-monomial in `P_A - target`.
    ResidualTerm {
        monomial: Monomial,
        coefficient: Polynomial,
    },
    OutsideFamily(&'static str),
    ConstantPartNotNilpotent,
    BlockNotNilpotent {
        side: BlockSide,
        k: usize,
        window: Window,
    },
    /// `s_{k-1}(A)` differs from `x_k`.
    Subdiagonal {
        k: usize,
        sum: Polynomial,
    },
    /// Nonzero entry off the superdiagonal and outside the `i_1`-block.
    OutsideBlock(Cell),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::ResidualTerm { .. } => "residual_term",
            Witness::OutsideFamily(_) => "outside_family",
            Witness::ConstantPartNotNilpotent => "constant_part",
            Witness::BlockNotNilpotent { .. } => "block",
            Witness::Subdiagonal { .. } => "subdiagonal",
            Witness::OutsideBlock(_) => "outside_block",
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ResidualTerm {
                monomial,
                coefficient,
            } => {
                write!(f, "residual coefficient of {monomial} is {coefficient}")
            }
            Witness::OutsideFamily(family) => write!(f, "outside {family}"),
            Witness::ConstantPartNotNilpotent => f.write_str("constant part is not nilpotent"),
            Witness::BlockNotNilpotent { side, k, window } => {
                let which = match side {
                    BlockSide::Leading => "A[1..i_k-k]",
                    BlockSide::Trailing => "A[i_k+1..n]",
                };
                write!(f, "{which} = A{window} is not nilpotent for k={k}")
            }
            Witness::Subdiagonal { k, sum } => {
                write!(f, "s_{}(A) = {sum}, expected x{k}, k={k}", k - 1)
            }
            Witness::OutsideBlock(cell) => {
                write!(f, "nonzero entry at {cell} outside the i1-block")
            }
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Witness", 2)?;
        s.serialize_field("kind", self.kind())?;
        s.serialize_field("detail", &self.to_string())?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompanionReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub method: Method,
    pub witnesses: Vec<Witness>,
}

impl CompanionReport {
    fn new(verdict: Verdict, method: Method, witnesses: Vec<Witness>) -> Self {
        debug_assert!(!verdict.is_no() || !witnesses.is_empty());
        CompanionReport {
            verdict,
            method,
            witnesses,
        }
    }
}

/// `lambda^n - x_1 lambda^{n-1} - ... - x_n`.
pub fn companion_target(n: usize) -> Polynomial {
    let mut t = Polynomial::lambda_pow(n as u32);
    for k in 1..=n {
        t = &t - &(&Polynomial::x(k as u32) * &Polynomial::lambda_pow((n - k) as u32));
    }
    t
}

/// `P_A - target`, which must vanish for a companion matrix.
pub fn companion_residual(a: &SymMatrix) -> Polynomial {
    &charpoly(a) - &companion_target(a.order())
}

/// Compares `P_A` with the companion polynomial coefficient by coefficient in
/// `lambda` and the `x_k`; what remains are conditions on the parameters.
pub fn is_companion_direct(a: &SymMatrix) -> Result<CompanionReport> {
    extract_pattern(a)?;
    let residual = companion_residual(a);
    let groups = residual.coefficients_by(|v| !v.is_param());
    let verdict = Verdict::require_zero(groups.values().cloned());
    let witnesses = match verdict {
        Verdict::Yes => Vec::new(),
        Verdict::No => groups
            .into_iter()
            .filter(|(_, c)| c.is_constant())
            .map(|(monomial, coefficient)| Witness::ResidualTerm {
                monomial,
                coefficient,
            })
            .collect(),
        Verdict::Conditional(_) => groups
            .into_iter()
            .map(|(monomial, coefficient)| Witness::ResidualTerm {
                monomial,
                coefficient,
            })
            .collect(),
    };
    Ok(CompanionReport::new(verdict, Method::Direct, witnesses))
}

fn block_verdict(a: &SymMatrix, w: Window, memo: &mut HashMap<Window, Verdict>) -> Result<Verdict> {
    if let Some(v) = memo.get(&w) {
        return Ok(v.clone());
    }
    let block = principal(a, w.lo, w.hi);
    if block.has_x() {
        return Err(Error::Invariant(format!(
            "block A{w} contains a variable although the matrix classified into C~"
        )));
    }
    let v = is_nilpotent(&block)?;
    memo.insert(w, v.clone());
    Ok(v)
}

/// Block conditions on a C~ matrix: the constant part is nilpotent and, for
/// each k, `A[1..i_k-k]` and `A[i_k+1..n]` are nilpotent or empty.
pub fn is_companion_structural(a: &SymMatrix) -> Result<CompanionReport> {
    let class = classify_matrix(a)?;
    if !(class.tilde && class.label.sets.c) {
        return Ok(CompanionReport::new(
            Verdict::No,
            Method::Structural,
            vec![Witness::OutsideFamily("C~")],
        ));
    }
    let n = a.order();
    let pattern = &class.pattern;
    let mut memo = HashMap::new();
    let mut verdict = Verdict::Yes;
    for k in 1..=n {
        let ik = pattern.cell(k).i;
        for (side, w) in [
            (BlockSide::Leading, Window::new(1, ik - k)),
            (BlockSide::Trailing, Window::new(ik + 1, n)),
        ] {
            if w.is_empty() {
                continue;
            }
            verdict = verdict.and(block_verdict(a, w, &mut memo)?);
            if verdict.is_no() {
                return Ok(CompanionReport::new(
                    Verdict::No,
                    Method::Structural,
                    vec![Witness::BlockNotNilpotent { side, k, window: w }],
                ));
            }
        }
    }
    let i1 = pattern.cell(1).i;
    let block_only_variables = a
        .entries()
        .filter(|((r, c), _)| in_block(i1, r + 1, c + 1))
        .all(|(_, e)| e.is_zero() || e.as_bare_x().is_some());
    if !block_only_variables {
        verdict = verdict.and(is_nilpotent(&constant_part(a))?);
        if verdict.is_no() {
            return Ok(CompanionReport::new(
                Verdict::No,
                Method::Structural,
                vec![Witness::ConstantPartNotNilpotent],
            ));
        }
    }
    Ok(CompanionReport::new(
        verdict,
        Method::Structural,
        Vec::new(),
    ))
}

fn subdiagonal_verdict(a: &SymMatrix) -> (Verdict, Vec<Witness>) {
    let n = a.order();
    let mut witnesses = Vec::new();
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let sum = subdiag_sum(a, k - 1).expect("k-1 < n");
        let diff = &sum - &Polynomial::x(k as u32);
        if !diff.is_zero() {
            witnesses.push(Witness::Subdiagonal { k, sum });
        }
        diffs.push(diff);
    }
    // A difference carrying an x can never vanish identically.
    let decisive = diffs
        .into_iter()
        .map(|d| if d.has_x() { Polynomial::one() } else { d });
    (Verdict::require_zero(decisive), witnesses)
}

/// Subdiagonal-sum test. Inside G~ a matrix is companion iff it is in G^ and
/// `s_{k-1}(A) = x_k` for every k; inside C^ the sum condition alone decides.
/// Matrices of C~ that are in neither are refused.
pub fn g_hat_companion_test(a: &SymMatrix) -> Result<CompanionReport> {
    let class = classify_matrix(a)?;
    if !(class.tilde && class.label.sets.c) {
        return Ok(CompanionReport::new(
            Verdict::No,
            Method::GHat,
            vec![Witness::OutsideFamily("C~")],
        ));
    }
    if !class.hat {
        if !class.label.sets.g {
            return Err(Error::NotApplicable(
                "matrix is in C~ but neither in G~ nor in C^".into(),
            ));
        }
        let i1 = class.pattern.cell(1).i;
        let outside = a
            .entries()
            .filter(|((r, c), e)| !e.is_zero() && *c != r + 1 && !in_block(i1, r + 1, c + 1))
            .map(|((r, c), _)| Witness::OutsideBlock(Cell::new(r + 1, c + 1)))
            .collect();
        return Ok(CompanionReport::new(Verdict::No, Method::GHat, outside));
    }
    let (verdict, witnesses) = subdiagonal_verdict(a);
    let witnesses = if verdict.is_yes() {
        Vec::new()
    } else {
        witnesses
    };
    Ok(CompanionReport::new(verdict, Method::GHat, witnesses))
}

/// Test for matrices obtained from a Fiedler base matrix by changing zero
/// entries below the superdiagonal.
pub fn fiedler_below_diag_test(a: &SymMatrix, base: &Pattern) -> Result<CompanionReport> {
    if !classify_pattern(base).sets.f {
        return Err(Error::NotInFamily("F"));
    }
    if a.order() != base.order() {
        return Err(Error::NotSuperpattern(format!(
            "order {} differs from base order {}",
            a.order(),
            base.order()
        )));
    }
    if !is_ulh(a) {
        return Err(Error::NotSuperpattern(
            "entries on or above the superdiagonal were changed".into(),
        ));
    }
    let found = extract_pattern(a).map_err(|e| Error::NotSuperpattern(e.to_string()))?;
    if &found != base {
        return Err(Error::NotSuperpattern(format!(
            "variables sit at {found}, base has {base}"
        )));
    }
    g_hat_companion_test(a)
}

/// ULH matrix with diagonal `gamma_1, ..., gamma_{n-1}, 0`, ones on the
/// superdiagonal and last row `x_n, ..., x_1`. Its characteristic polynomial is
/// the expansion in the Newton basis `prod_{i<=k} (lambda - gamma_i)`.
pub fn build_newton_companion(gammas: &[Rational]) -> SymMatrix {
    let n = gammas.len() + 1;
    let mut m = SymMatrix::upper_shift(n);
    for (i, g) in gammas.iter().enumerate() {
        m.set(i, i, Polynomial::constant(g.clone()));
    }
    for j in 0..n {
        m.set(n - 1, j, Polynomial::x((n - j) as u32));
    }
    m
}
