//! Evidence search: can a Fiedler matrix become a (different) companion matrix
//! by changing zeros both inside its `i_1`-block and above its superdiagonal?
//!
//! Every chosen cell gets a fresh parameter. The residual
//! `P_A - (lambda^n - sum x_k lambda^{n-k})` gives one polynomial equation per
//! `(lambda, x)`-monomial. A coefficient that is a single power of one
//! parameter forces it to zero; substituting and repeating reaches a fixpoint.
//! A case is closed once some chosen parameter is forced to zero, since every
//! changed entry has to be nonzero. Remaining cases are probed at random
//! rational points.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::companion::{companion_residual, is_companion_direct};
use crate::enumerate::{enumerate_patterns, Family};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::pattern::{base_matrix, in_block, Cell, Pattern};
use crate::poly::{ratio, Indeterminate, Polynomial};

pub const SEARCH_MIN_ORDER: usize = 2;
pub const SEARCH_MAX_ORDER: usize = 6;
pub const SAMPLE_POINTS: usize = 50;
const SEED: u64 = 0x5eed_f1ed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Exhausted,
    BudgetReached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub order: usize,
    pub patterns: usize,
    pub total_cases: usize,
    pub examined: usize,
    /// Cases where some chosen parameter was forced to zero.
    pub closed: usize,
    /// Cases where every above-superdiagonal parameter was forced to zero.
    pub above_forced: usize,
    /// Cases neither closed nor resolved into a counterexample.
    pub unresolved: usize,
    #[serde(serialize_with = "as_text")]
    pub counterexamples: Vec<SymMatrix>,
    /// Every parameter forced to zero in some case.
    pub forced_zero: Vec<String>,
    pub all_above_forced_zero: bool,
    pub status: SearchStatus,
}

fn as_text<S: serde::Serializer>(ms: &[SymMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ms.iter().map(SymMatrix::to_text))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCase {
    pub pattern: Pattern,
    pub block: Vec<Cell>,
    pub above: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    Closed {
        forced: BTreeSet<String>,
        above_forced: bool,
    },
    /// A residual coefficient reduced to a nonzero constant.
    Inconsistent,
    Counterexample(SymMatrix),
    Unresolved,
}

pub fn block_param(c: Cell) -> String {
    format!("b{}_{}", c.i, c.j)
}

pub fn above_param(c: Cell) -> String {
    format!("u{}_{}", c.i, c.j)
}

/// Zero cells of the base matrix inside the `i_1`-block.
pub fn block_zero_cells(p: &Pattern) -> Vec<Cell> {
    let n = p.order();
    let i1 = p.cell(1).i;
    let mut cells: Vec<Cell> = (1..=n)
        .flat_map(|i| (1..=i).map(move |j| Cell::new(i, j)))
        .filter(|c| in_block(i1, c.i, c.j) && p.variable_at(*c).is_none())
        .collect();
    cells.sort();
    cells
}

/// Cells strictly above the superdiagonal, row by row.
pub fn above_cells(n: usize) -> Vec<Cell> {
    (1..=n)
        .flat_map(|i| (i + 2..=n).map(move |j| Cell::new(i, j)))
        .collect()
}

fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (1u32..(1 << items.len())).map(move |mask| {
        (0..items.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| items[b].clone())
            .collect()
    })
}

/// All cases of order `n`, in a fixed order.
pub fn search_cases(n: usize) -> Vec<SearchCase> {
    let above = above_cells(n);
    let mut out = Vec::new();
    for pattern in enumerate_patterns(n, Family::F) {
        let block = block_zero_cells(&pattern);
        for b in subsets(&block) {
            for u in subsets(&above) {
                out.push(SearchCase {
                    pattern: pattern.clone(),
                    block: b.clone(),
                    above: u,
                });
            }
        }
    }
    out
}

pub fn case_matrix(case: &SearchCase) -> SymMatrix {
    let mut m = base_matrix(&case.pattern);
    for c in &case.block {
        m.set(c.i - 1, c.j - 1, Polynomial::param(&block_param(*c)));
    }
    for c in &case.above {
        m.set(c.i - 1, c.j - 1, Polynomial::param(&above_param(*c)));
    }
    m
}

/// Forces parameters to zero until no coefficient is a lone parameter power.
/// Returns the forced names and the reduced coefficients, or `None` when a
/// coefficient became a nonzero constant.
pub fn propagate_forced_zero(
    mut coeffs: Vec<Polynomial>,
) -> Option<(BTreeSet<String>, Vec<Polynomial>)> {
    let mut forced = BTreeSet::new();
    loop {
        let mut new: BTreeMap<Indeterminate, Polynomial> = BTreeMap::new();
        for c in &coeffs {
            if c.is_zero() {
                continue;
            }
            if c.is_constant() {
                return None;
            }
            if c.len() == 1 {
                let (m, _) = c.terms().next().expect("one term");
                if let [(v, _)] = m.factors() {
                    new.insert(v.clone(), Polynomial::zero());
                }
            }
        }
        if new.is_empty() {
            coeffs.retain(|c| !c.is_zero());
            return Some((forced, coeffs));
        }
        forced.extend(new.keys().map(ToString::to_string));
        coeffs = coeffs.iter().map(|c| c.substitute(&new)).collect();
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Polynomial {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            return Polynomial::constant(ratio(num, rng.gen_range(1..=5)));
        }
    }
}

pub fn examine_case(case: &SearchCase, seed: u64) -> Result<CaseOutcome> {
    let m = case_matrix(case);
    let residual = companion_residual(&m);
    let coeffs: Vec<Polynomial> = residual
        .coefficients_by(|v| !v.is_param())
        .into_values()
        .collect();
    let Some((forced, rest)) = propagate_forced_zero(coeffs) else {
        return Ok(CaseOutcome::Inconsistent);
    };
    let chosen: Vec<String> = case
        .block
        .iter()
        .map(|c| block_param(*c))
        .chain(case.above.iter().map(|c| above_param(*c)))
        .collect();
    if chosen.iter().any(|p| forced.contains(p)) {
        let above_forced = case.above.iter().all(|c| forced.contains(&above_param(*c)));
        return Ok(CaseOutcome::Closed {
            forced,
            above_forced,
        });
    }
    // No chosen parameter is forced; look for a point where the rest vanishes.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<Indeterminate> = chosen.iter().map(|p| Indeterminate::param(p)).collect();
    for _ in 0..SAMPLE_POINTS {
        let point: BTreeMap<Indeterminate, Polynomial> = params
            .iter()
            .map(|p| (p.clone(), random_nonzero(&mut rng)))
            .collect();
        if rest.iter().all(|c| c.substitute(&point).is_zero()) {
            let candidate = m.substitute(&point);
            if is_companion_direct(&candidate)?.verdict.is_yes() {
                return Ok(CaseOutcome::Counterexample(candidate));
            }
            return Err(Error::Invariant(
                "sampled point satisfies the residual but fails direct verification".into(),
            ));
        }
    }
    Ok(CaseOutcome::Unresolved)
}

/// Runs the sweep for order `n`, examining at most `budget` cases on `jobs`
/// worker threads. Output does not depend on `jobs`.
pub fn fiedler_mixed_superpattern_search(
    n: usize,
    budget: Option<usize>,
    jobs: usize,
) -> Result<SearchResult> {
    if !(SEARCH_MIN_ORDER..=SEARCH_MAX_ORDER).contains(&n) {
        return Err(Error::SearchOrderOutOfRange(n));
    }
    let cases = search_cases(n);
    let total = cases.len();
    let take = budget.map_or(total, |b| b.min(total));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<CaseOutcome>> = pool.install(|| {
        cases[..take]
            .par_iter()
            .enumerate()
            .map(|(idx, case)| examine_case(case, SEED ^ idx as u64))
            .collect()
    });
    let mut result = SearchResult {
        order: n,
        patterns: enumerate_patterns(n, Family::F).count(),
        total_cases: total,
        examined: take,
        closed: 0,
        above_forced: 0,
        unresolved: 0,
        counterexamples: Vec::new(),
        forced_zero: Vec::new(),
        all_above_forced_zero: true,
        status: if take < total {
            SearchStatus::BudgetReached
        } else {
            SearchStatus::Exhausted
        },
    };
    let mut forced_all = BTreeSet::new();
    for outcome in outcomes {
        match outcome? {
            CaseOutcome::Closed {
                forced,
                above_forced,
            } => {
                result.closed += 1;
                if above_forced {
                    result.above_forced += 1;
                } else {
                    result.all_above_forced_zero = false;
                }
                forced_all.extend(forced);
            }
            CaseOutcome::Inconsistent => {
                result.closed += 1;
                result.all_above_forced_zero = false;
            }
            CaseOutcome::Counterexample(m) => {
                result.all_above_forced_zero = false;
                result.counterexamples.push(m);
            }
            CaseOutcome::Unresolved => {
                result.all_above_forced_zero = false;
                result.unresolved += 1;
            }
        }
    }
    result.forced_zero = forced_all.into_iter().collect();
    Ok(result)
}

/// Changing a single zero of a Fiedler matrix outside its `i_1`-block (below
/// or above the superdiagonal) always forces that entry back to zero.
/// Returns the cells where this fails.
pub fn outside_block_single_changes(n: usize) -> Vec<(Pattern, Cell)> {
    let mut failures = Vec::new();
    for p in enumerate_patterns(n, Family::F) {
        let i1 = p.cell(1).i;
        let base = base_matrix(&p);
        for i in 1..=n {
            for j in 1..=n {
                let c = Cell::new(i, j);
                if !base.at(i, j).is_zero() || in_block(i1, i, j) {
                    continue;
                }
                let mut m = base.clone();
                m.set(i - 1, j - 1, Polynomial::param("t"));
                let coeffs = companion_residual(&m)
                    .coefficients_by(|v| !v.is_param())
                    .into_values()
                    .collect();
                let forced = propagate_forced_zero(coeffs).map(|(f, _)| f.contains("t"));
                if forced != Some(true) {
                    failures.push((p.clone(), c));
                }
            }
        }
    }
    failures
}
