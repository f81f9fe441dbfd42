//! Determinants of square grids of polynomials.

use std::collections::HashMap;

use crate::poly::Polynomial;

/// Fraction-free Gaussian elimination (Bareiss). Every intermediate division
/// is exact in the polynomial ring, so entries stay polynomial.
pub fn det_bareiss(grid: &[Vec<Polynomial>]) -> Polynomial {
    let n = grid.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut m: Vec<Vec<Polynomial>> = grid.to_vec();
    let mut sign_flip = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Polynomial::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Laplace expansion along rows, memoized on the set of remaining columns.
/// Division free; cost grows like `n * 2^n` products.
pub fn det_cofactor(grid: &[Vec<Polynomial>]) -> Polynomial {
    let n = grid.len();
    assert!(n < 32, "cofactor expansion limited to small grids");
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    minor(grid, 0, (1u32 << n) - 1, &mut memo)
}

fn minor(
    grid: &[Vec<Polynomial>],
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, Polynomial>,
) -> Polynomial {
    if cols == 0 {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero();
    let mut sign_negative = false;
    for c in 0..grid.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &grid[row][c];
        if !entry.is_zero() {
            let sub = minor(grid, row + 1, cols & !(1 << c), memo);
            let term = entry * &sub;
            acc = if sign_negative {
                &acc - &term
            } else {
                &acc + &term
            };
        }
        sign_negative = !sign_negative;
    }
    memo.insert(cols, acc.clone());
    acc
}
