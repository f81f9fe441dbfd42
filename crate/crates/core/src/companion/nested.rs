//! Nested nilpotent ULH matrices: membership in the sets whose listed leading
//! (or trailing) principal submatrices are nilpotent, and completion of
//! checkpoint rows so that they become nilpotent.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{is_nilpotent, is_ulh, leading_charpolys, principal, SymMatrix};
use crate::poly::Polynomial;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Leading,
    Trailing,
}

/// Order, checkpoint sizes (duplicates and zeros allowed) and the side the
/// principal submatrices are taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedSpec {
    pub n: usize,
    pub checkpoints: Vec<usize>,
    pub side: Side,
}

impl NestedSpec {
    pub fn leading(n: usize, checkpoints: &[usize]) -> Self {
        NestedSpec {
            n,
            checkpoints: checkpoints.to_vec(),
            side: Side::Leading,
        }
    }

    pub fn trailing(n: usize, checkpoints: &[usize]) -> Self {
        NestedSpec {
            n,
            checkpoints: checkpoints.to_vec(),
            side: Side::Trailing,
        }
    }

    /// Distinct nonzero checkpoints, ascending.
    pub fn effective_checkpoints(&self) -> Vec<usize> {
        self.checkpoints
            .iter()
            .copied()
            .filter(|&c| c != 0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

pub fn nested_membership(m: &SymMatrix, spec: &NestedSpec) -> Result<Verdict> {
    if !is_ulh(m) {
        return Err(Error::NotUlh);
    }
    let n = m.order();
    if spec.n != n {
        return Err(Error::NotApplicable(format!(
            "nested set is for order {}, matrix has order {n}",
            spec.n
        )));
    }
    let mut verdict = Verdict::Yes;
    for c in spec.effective_checkpoints() {
        if c > n {
            return Err(Error::CheckpointOutOfRange {
                checkpoint: c,
                order: n,
            });
        }
        let block = match spec.side {
            Side::Leading => principal(m, 1, c),
            Side::Trailing => principal(m, n - c + 1, n),
        };
        verdict = verdict.and(is_nilpotent(&block)?);
        if verdict.is_no() {
            break;
        }
    }
    Ok(verdict)
}

/// Solves every checkpoint row of `partial` so that the corresponding leading
/// principal submatrix becomes nilpotent, keeping all other rows.
///
/// With `p_0, ..., p_{m-1}` the characteristic polynomials of the leading
/// principal submatrices, row `m` must satisfy
/// `sum_j a_{m,j} p_{j-1} = lambda p_{m-1} - lambda^m`. Since each `p_j` is
/// monic of degree `j`, the coordinates come out by back-substitution and are
/// unique.
pub fn nilpotent_complete(partial: &SymMatrix, checkpoints: &[usize]) -> Result<SymMatrix> {
    if !is_ulh(partial) {
        return Err(Error::NotUlh);
    }
    if let Some(k) = partial.entries().flat_map(|(_, p)| p.x_indices()).next() {
        return Err(Error::ContainsVariable(k));
    }
    let n = partial.order();
    let mut out = partial.clone();
    let targets: BTreeSet<usize> = checkpoints.iter().copied().filter(|&c| c != 0).collect();
    for &m in &targets {
        if m > n {
            return Err(Error::CheckpointOutOfRange {
                checkpoint: m,
                order: n,
            });
        }
        let basis = leading_charpolys(&principal(&out, 1, m - 1));
        let mut rest = &(&Polynomial::lambda() * &basis[m - 1]) - &Polynomial::lambda_pow(m as u32);
        let mut row = vec![Polynomial::zero(); m];
        for d in (0..m).rev() {
            let c = rest.lambda_coeff(d as u32);
            if !c.is_zero() {
                rest = &rest - &(&c * &basis[d]);
            }
            row[d] = c;
        }
        if !rest.is_zero() {
            return Err(Error::Invariant(format!(
                "back-substitution for row {m} left remainder {rest}"
            )));
        }
        let given: Vec<&Polynomial> = (0..m).map(|j| out.get(m - 1, j)).collect();
        let unset = given.iter().all(|p| p.is_zero());
        if !unset && given.iter().zip(&row).any(|(g, r)| *g != r) {
            return Err(Error::InconsistentCheckpointRow { row: m });
        }
        for (j, v) in row.into_iter().enumerate() {
            out.set(m - 1, j, v);
        }
    }
    Ok(out)
}
