//! Companion matrices with respect to a polynomial basis (PB-companion).
//!
//! Inside B~ the characteristic polynomial splits as
//! `P_A = p_n - x_1 p_{n-1} - ... - x_n p_0` with
//! `p_n = P_{A_0}` and `p_{n-k} = P_{A[1..j_k-1]} P_{A[i_k+1..n]}`.
//! `A` is PB-companion iff the coefficient matrix of `p_0, ..., p_n` is
//! nonsingular.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::det::{det_bareiss, det_cofactor};
use crate::error::{Error, Result};
use crate::matrix::{charpoly, constant_part, is_ulh, principal, SymMatrix};
use crate::pattern::{classify_pattern, extract_pattern, Pattern};
use crate::poly::Polynomial;
use crate::verdict::Verdict;

/// Blocks up to this size use cofactor expansion, larger ones Bareiss.
pub const COFACTOR_MAX_BLOCK: usize = 4;

/// Consecutive run `b..=e` of basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub b: usize,
    pub e: usize,
}

impl Component {
    pub fn size(&self) -> usize {
        self.e - self.b + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbReport {
    pub basis: Vec<Polynomial>,
    pub ma: Vec<Vec<Polynomial>>,
    pub degrees: Vec<u32>,
    pub concat: Vec<Component>,
    pub block_dets: Vec<Polynomial>,
    pub det: Polynomial,
    pub verdict: Verdict,
}

fn strings(list: &[Polynomial]) -> Vec<String> {
    list.iter().map(ToString::to_string).collect()
}

impl Serialize for PbReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PbReport", 9)?;
        s.serialize_field("verdict", self.verdict.label())?;
        let (zero, nonzero) = match self.verdict.conditions() {
            Some(c) => (strings(&c.must_be_zero), strings(&c.must_be_nonzero)),
            None => (Vec::new(), Vec::new()),
        };
        s.serialize_field("must_be_zero", &zero)?;
        s.serialize_field("must_be_nonzero", &nonzero)?;
        s.serialize_field("basis", &strings(&self.basis))?;
        let ma: Vec<Vec<String>> = self.ma.iter().map(|r| strings(r)).collect();
        s.serialize_field("ma", &ma)?;
        s.serialize_field("degrees", &self.degrees)?;
        let concat: Vec<Vec<usize>> = self.concat.iter().map(|c| (c.b..=c.e).collect()).collect();
        s.serialize_field("concat", &concat)?;
        s.serialize_field("block_dets", &strings(&self.block_dets))?;
        s.serialize_field("det", &self.det.to_string())?;
        s.end()
    }
}

/// Pattern of a B~ matrix, or an error explaining why it is outside.
pub fn b_tilde_pattern(a: &SymMatrix) -> Result<Pattern> {
    if !is_ulh(a) {
        return Err(Error::OutsideBTilde(
            "matrix is not unit lower Hessenberg".into(),
        ));
    }
    let p = extract_pattern(a)?;
    if classify_pattern(&p).sets.b {
        return Ok(p);
    }
    let cells = p.cells();
    let (r, cr) = cells
        .iter()
        .enumerate()
        .max_by_key(|(_, c)| c.j)
        .expect("n >= 1");
    let (s, cs) = cells
        .iter()
        .enumerate()
        .min_by_key(|(_, c)| c.i)
        .expect("n >= 1");
    Err(Error::OutsideBTilde(format!(
        "x{} lies in A[{}..{}] and x{} in A[{}..{}]; the windows are disjoint, so x{}*x{} appears in P_A",
        s + 1,
        cs.j,
        cs.i,
        r + 1,
        cr.j,
        cr.i,
        s + 1,
        r + 1
    )))
}

/// `p_0, ..., p_n` of a B~ matrix. The splitting of `P_A` is checked.
pub fn basis_polynomials(a: &SymMatrix) -> Result<Vec<Polynomial>> {
    let p = b_tilde_pattern(a)?;
    let n = a.order();
    let mut basis = vec![Polynomial::zero(); n + 1];
    basis[n] = charpoly(&constant_part(a));
    for k in 1..=n {
        let c = p.cell(k);
        let lead = principal(a, 1, c.j - 1);
        let trail = principal(a, c.i + 1, n);
        if lead.has_x() || trail.has_x() {
            return Err(Error::Invariant(format!(
                "basis block for x{k} contains a variable"
            )));
        }
        basis[n - k] = &charpoly(&lead) * &charpoly(&trail);
    }
    let mut rebuilt = basis[n].clone();
    for k in 1..=n {
        rebuilt = &rebuilt - &(&Polynomial::x(k as u32) * &basis[n - k]);
    }
    if rebuilt != charpoly(a) {
        return Err(Error::Invariant(
            "P_A does not split over the basis polynomials".into(),
        ));
    }
    Ok(basis)
}

/// Row `t` holds the `lambda`-coefficients of `p_t`, columns `lambda^0..lambda^n`.
pub fn ma_matrix(basis: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    let n = basis.len().saturating_sub(1);
    basis
        .iter()
        .map(|p| (0..=n as u32).map(|d| p.lambda_coeff(d)).collect())
        .collect()
}

/// Components of `(0, ..., n)` ending exactly at the `t` with `deg p_t = t`.
pub fn concatenation(basis: &[Polynomial]) -> Result<Vec<Component>> {
    let n = basis
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::Invariant("empty basis".into()))?;
    if basis[n].lambda_degree() != Some(n as u32) {
        return Err(Error::Invariant(format!("p_{n} does not have degree {n}")));
    }
    Ok(components_from_degrees(
        &basis
            .iter()
            .map(|p| p.lambda_degree().map(|d| d as usize))
            .collect::<Vec<_>>(),
    ))
}

fn components_from_degrees(degrees: &[Option<usize>]) -> Vec<Component> {
    let mut out = Vec::new();
    let mut b = 0;
    for (t, d) in degrees.iter().enumerate() {
        if *d == Some(t) {
            out.push(Component { b, e: t });
            b = t + 1;
        }
    }
    out
}

fn principal_grid(grid: &[Vec<Polynomial>], c: Component) -> Vec<Vec<Polynomial>> {
    grid[c.b..=c.e]
        .iter()
        .map(|row| row[c.b..=c.e].to_vec())
        .collect()
}

fn block_det(block: &[Vec<Polynomial>]) -> Polynomial {
    if block.len() <= COFACTOR_MAX_BLOCK {
        det_cofactor(block)
    } else {
        det_bareiss(block)
    }
}

/// Full report; the verdict comes from `det(M_A)`.
pub fn is_pb_companion(a: &SymMatrix) -> Result<PbReport> {
    let basis = basis_polynomials(a)?;
    let ma = ma_matrix(&basis);
    let degrees = basis
        .iter()
        .map(|p| p.lambda_degree().expect("basis polynomials are monic"))
        .collect();
    let concat = concatenation(&basis)?;
    let block_dets = concat
        .iter()
        .map(|c| block_det(&principal_grid(&ma, *c)))
        .collect();
    let det = det_bareiss(&ma);
    let verdict = Verdict::require_nonzero([det.clone()]);
    Ok(PbReport {
        basis,
        ma,
        degrees,
        concat,
        block_dets,
        det,
        verdict,
    })
}

/// Verdict from the diagonal blocks of `M_A` along the concatenation.
pub fn pb_via_blocks(report: &PbReport) -> Verdict {
    Verdict::require_nonzero(report.block_dets.iter().cloned())
}

/// Whether two PB verdicts describe the same parameter set: equal when
/// unconditional, and equal nonzero products when conditional.
pub fn verdicts_equivalent(full: &Verdict, other: &Verdict) -> bool {
    match (full.conditions(), other.conditions()) {
        (Some(a), Some(b)) => {
            if !a.must_be_zero.is_empty() || !b.must_be_zero.is_empty() {
                return a == b;
            }
            let pa: Polynomial = a.must_be_nonzero.iter().cloned().product();
            let pb: Polynomial = b.must_be_nonzero.iter().cloned().product();
            pa.normalized() == pb.normalized()
        }
        _ => full == other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdiagonalCase {
    pub k: usize,
    /// `I`, `II`, `III`, or the proof branch that rules the matrix out.
    pub case: &'static str,
    pub variables: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Le2Outcome {
    Decided {
        verdict: Verdict,
        cases: Vec<SubdiagonalCase>,
    },
    /// Some concatenation component is longer than two.
    NotApplicable { longest: usize },
}

impl Le2Outcome {
    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            Le2Outcome::Decided { verdict, .. } => Some(verdict),
            Le2Outcome::NotApplicable { .. } => None,
        }
    }
}

impl Serialize for Le2Outcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Le2Outcome", 4)?;
        match self {
            Le2Outcome::Decided { verdict, cases } => {
                s.serialize_field("verdict", verdict.label())?;
                let (zero, nonzero) = match verdict.conditions() {
                    Some(c) => (strings(&c.must_be_zero), strings(&c.must_be_nonzero)),
                    None => (Vec::new(), Vec::new()),
                };
                s.serialize_field("must_be_zero", &zero)?;
                s.serialize_field("must_be_nonzero", &nonzero)?;
                s.serialize_field("cases", cases)?;
            }
            Le2Outcome::NotApplicable { longest } => {
                s.serialize_field("verdict", "not_applicable")?;
                s.serialize_field("longest_component", longest)?;
            }
        }
        s.end()
    }
}

/// Structural degrees: `deg p_n = n`, `deg p_{n-k} = n - i_k + j_k - 1`.
pub fn pattern_degrees(p: &Pattern) -> Vec<usize> {
    let n = p.order();
    let mut d = vec![0; n + 1];
    d[n] = n;
    for k in 1..=n {
        let c = p.cell(k);
        d[n - k] = n + c.j - c.i - 1;
    }
    d
}

fn diagonal_window_sum(a: &SymMatrix, lo: usize, hi: usize) -> Polynomial {
    (lo..=hi).map(|r| a.at(r, r).clone()).sum()
}

/// Subdiagonal criterion for B~ matrices whose concatenation has components
/// of length at most two.
pub fn length_le2_criterion(a: &SymMatrix) -> Result<Le2Outcome> {
    let p = b_tilde_pattern(a)?;
    let n = p.order();
    let degrees: Vec<Option<usize>> = pattern_degrees(&p).into_iter().map(Some).collect();
    let longest = components_from_degrees(&degrees)
        .iter()
        .map(Component::size)
        .max()
        .unwrap_or(1);
    if longest > 2 {
        return Ok(Le2Outcome::NotApplicable { longest });
    }
    let mut verdict = Verdict::Yes;
    let mut cases = Vec::with_capacity(n);
    for k in 0..n {
        let vars: Vec<usize> = (1..=n)
            .filter(|&v| p.cell(v).i - p.cell(v).j == k)
            .collect();
        let (case, local) = match vars.as_slice() {
            [] => ("III", Verdict::Yes),
            [h, ..] if *h <= k => (
                "2: smallest variable on or below its own subdiagonal",
                Verdict::No,
            ),
            [h, ..] if *h >= k + 2 => ("3: smallest variable index exceeds k+1", Verdict::No),
            [_] => ("I", Verdict::Yes),
            [_, second] if *second == k + 2 => {
                let ci = p.cell(k + 1).i;
                let cj = p.cell(k + 2).i;
                let diff =
                    &diagonal_window_sum(a, ci - k, ci) - &diagonal_window_sum(a, cj - k, cj);
                if diff.has_x() {
                    return Err(Error::Invariant(format!(
                        "window-sum difference on subdiagonal {k} contains a variable: {diff}"
                    )));
                }
                ("II", Verdict::require_nonzero([diff]))
            }
            _ => (
                "4: variables beyond x_{k+1}, x_{k+2} on the subdiagonal",
                Verdict::No,
            ),
        };
        verdict = verdict.and(local);
        cases.push(SubdiagonalCase {
            k,
            case,
            variables: vars,
        });
    }
    Ok(Le2Outcome::Decided { verdict, cases })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// `deg p_t` read off the basis polynomials.
    pub degrees: Vec<u32>,
    /// `deg p_t` predicted from the pattern geometry.
    pub predicted: Vec<usize>,
    pub exact_degrees: bool,
    pub monotone: bool,
    /// Necessary condition `deg p_t >= t` for every t.
    pub degrees_large_enough: bool,
    /// Necessary condition: each `x_k` sits above the k-subdiagonal.
    pub variables_above_subdiagonal: bool,
}

impl DegreeProfile {
    pub fn may_be_pb_companion(&self) -> bool {
        self.degrees_large_enough && self.variables_above_subdiagonal
    }
}

pub fn degree_profile_check(a: &SymMatrix) -> Result<DegreeProfile> {
    let p = b_tilde_pattern(a)?;
    let basis = basis_polynomials(a)?;
    let degrees: Vec<u32> = basis
        .iter()
        .map(|q| q.lambda_degree().expect("basis polynomials are monic"))
        .collect();
    let predicted = pattern_degrees(&p);
    Ok(DegreeProfile {
        exact_degrees: degrees
            .iter()
            .zip(&predicted)
            .all(|(d, e)| *d as usize == *e),
        monotone: degrees.windows(2).all(|w| w[0] <= w[1]),
        degrees_large_enough: degrees.iter().enumerate().all(|(t, d)| *d as usize >= t),
        variables_above_subdiagonal: (1..=p.order()).all(|k| p.cell(k).i - p.cell(k).j < k),
        degrees,
        predicted,
    })
}
