//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use companion_core::enumerate::{enumerate_patterns, Family};
use companion_core::pattern::{base_matrix, Pattern};
use companion_core::poly::ratio;
use companion_core::{Polynomial, SymMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Polynomial {
    Polynomial::constant(ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
}

pub fn nonzero_small(rng: &mut ChaCha8Rng) -> Polynomial {
    loop {
        let p = small_rational(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A constant, a variable `x_k` (k <= n), a parameter, or a short mix.
pub fn mixed_entry(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    match rng.gen_range(0..6) {
        0 => Polynomial::zero(),
        1 => small_rational(rng),
        2 => Polynomial::x(rng.gen_range(1..=n as u32)),
        3 => Polynomial::param(["a", "b", "c"][rng.gen_range(0..3)]),
        4 => {
            &small_rational(rng) * &Polynomial::param("a")
                + Polynomial::x(rng.gen_range(1..=n as u32))
        }
        _ => &Polynomial::param("b") * &Polynomial::param("c") - small_rational(rng),
    }
}

pub fn random_ulh(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    let mut m = SymMatrix::upper_shift(n);
    for i in 0..n {
        for j in 0..=i {
            m.set(i, j, mixed_entry(rng, n));
        }
    }
    m
}

pub fn patterns(n: usize, family: Family) -> Vec<Pattern> {
    enumerate_patterns(n, family).collect()
}

/// ULH superpattern of the base matrix: each zero cell on or below the
/// diagonal becomes a random nonzero constant with probability `density`.
pub fn random_superpattern(rng: &mut ChaCha8Rng, p: &Pattern, density: f64) -> SymMatrix {
    let mut m = base_matrix(p);
    let n = p.order();
    for i in 0..n {
        for j in 0..=i {
            if m.get(i, j).is_zero() && rng.gen_bool(density) {
                m.set(i, j, nonzero_small(rng));
            }
        }
    }
    m
}

pub fn random_pattern(rng: &mut ChaCha8Rng, n: usize, family: Family) -> Pattern {
    patterns(n, family)
        .choose(rng)
        .expect("family nonempty")
        .clone()
}
