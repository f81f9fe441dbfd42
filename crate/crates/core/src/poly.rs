//! Sparse multivariate polynomials over the rationals.
//!
//! Every scalar in the crate is a [`Polynomial`] in three kinds of
//! indeterminates: the spectral variable `lambda`, the companion variables
//! `x1, x2, ...` and free named parameters. Terms live in a `BTreeMap` keyed by
//! [`Monomial`], so two equal polynomials always have identical term maps and
//! equality is structural.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num/den`; `den` must be nonzero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indeterminate {
    Lambda,
    /// Companion variable `x_k`, `k >= 1`.
    X(u32),
    Param(Arc<str>),
}

impl Indeterminate {
    /// A named parameter. The name must be a valid identifier that is not
    /// `lambda` and not of the form `x<digits>`.
    pub fn param(name: &str) -> Self {
        assert!(
            is_param_name(name),
            "invalid or reserved parameter name {name:?}"
        );
        Indeterminate::Param(Arc::from(name))
    }

    pub fn is_x(&self) -> bool {
        matches!(self, Indeterminate::X(_))
    }

    pub fn is_lambda(&self) -> bool {
        matches!(self, Indeterminate::Lambda)
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Indeterminate::Param(_))
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indeterminate::Lambda => f.write_str("lambda"),
            Indeterminate::X(k) => write!(f, "x{k}"),
            Indeterminate::Param(name) => f.write_str(name),
        }
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`, excluding `lambda` and `x<digits>`.
pub fn is_param_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !first.is_ascii_alphabetic() || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    if name == "lambda" {
        return false;
    }
    !(name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit()))
}

/// Power product of indeterminates. Stored sorted by indeterminate with
/// strictly positive exponents; the empty product is the constant monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Indeterminate, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Indeterminate) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Indeterminate, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and dropping
    /// zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Indeterminate, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Indeterminate, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Indeterminate, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Indeterminate) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn lambda_degree(&self) -> u32 {
        match self.0.first() {
            Some((Indeterminate::Lambda, e)) => *e,
            _ => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// The monomial with every factor satisfying `keep` retained.
    pub fn filter<F: Fn(&Indeterminate) -> bool>(&self, keep: F) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| keep(v)).cloned().collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - d)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Pure lexicographic term order (lambda > x1 > x2 > ... > parameters).
    /// Unlike the storage order this one is multiplicative, so it drives
    /// polynomial division.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((v, e)), Some((w, d))) => match v.cmp(w) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match e.cmp(d) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

/// Storage and rendering order: lambda degree first, then the remaining
/// factors lexicographically (x indices ascending, then parameter names).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lambda_degree()
            .cmp(&other.lambda_degree())
            .then_with(|| self.rest().cmp(other.rest()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    fn rest(&self) -> &[(Indeterminate, u32)] {
        match self.0.first() {
            Some((Indeterminate::Lambda, _)) => &self.0[1..],
            _ => &self.0,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical sparse polynomial: no zero coefficients are ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Polynomial::constant(rat(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Indeterminate) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn lambda() -> Self {
        Polynomial::var(Indeterminate::Lambda)
    }

    pub fn lambda_pow(d: u32) -> Self {
        Polynomial::term(Rational::one(), Monomial::power(Indeterminate::Lambda, d))
    }

    pub fn x(k: u32) -> Self {
        Polynomial::var(Indeterminate::X(k))
    }

    pub fn param(name: &str) -> Self {
        Polynomial::var(Indeterminate::param(name))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The bare variable `x_k` (coefficient one, nothing else), if that is
    /// what this polynomial is.
    pub fn as_bare_x(&self) -> Option<u32> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        match m.factors() {
            [(Indeterminate::X(k), 1)] if c.is_one() => Some(*k),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<Indeterminate> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains<F: Fn(&Indeterminate) -> bool>(&self, pred: F) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|(v, _)| pred(v)))
    }

    pub fn has_x(&self) -> bool {
        self.contains(Indeterminate::is_x)
    }

    /// Indices of the `x` variables occurring in this polynomial.
    pub fn x_indices(&self) -> BTreeSet<u32> {
        self.variables()
            .into_iter()
            .filter_map(|v| match v {
                Indeterminate::X(k) => Some(k),
                _ => None,
            })
            .collect()
    }

    /// Highest power of `lambda`; `None` stands for minus infinity (zero polynomial).
    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::lambda_degree).max()
    }

    /// Coefficient of `lambda^d`, a polynomial free of `lambda`.
    pub fn lambda_coeff(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.lambda_degree() == d {
                out.terms.insert(m.filter(|v| !v.is_lambda()), c.clone());
            }
        }
        out
    }

    /// Splits the polynomial along the indeterminates selected by `main`:
    /// returns `main`-monomial -> coefficient (a polynomial in the others).
    pub fn coefficients_by<F: Fn(&Indeterminate) -> bool>(
        &self,
        main: F,
    ) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.filter(&main);
            let rest = m.filter(|v| !main(v));
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Simultaneous substitution; unbound indeterminates are left alone.
    pub fn substitute(&self, bindings: &BTreeMap<Indeterminate, Polynomial>) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                match bindings.get(v) {
                    Some(value) => factor = &factor * &value.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            let kept = Monomial(kept);
            for (n, d) in factor.terms {
                out.add_term(n.mul(&kept), d);
            }
        }
        out
    }

    /// Leading term under [`Monomial::lex_cmp`].
    pub fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if let Some(c) = divisor.as_constant() {
            if c.is_zero() {
                return None;
            }
            return Some(self.scale(&c.recip()));
        }
        let (lead_m, lead_c) = divisor.lex_leading()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.lex_leading() {
            let qm = m.div(&lead_m)?;
            let qc = c / &lead_c;
            let step = Polynomial::term(qc.clone(), qm.clone());
            rem = &rem - &(divisor * &step);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divides by the coefficient of the largest stored monomial, so that
    /// conditions differing only by a nonzero scalar render identically.
    pub fn normalized(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Rendering without spaces, suitable for whitespace-separated matrix files.
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }

    fn render(&self, spaced: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i == 0, negative, spaced) {
                (true, true, _) => out.push('-'),
                (true, false, _) => {}
                (false, true, true) => out.push_str(" - "),
                (false, false, true) => out.push_str(" + "),
                (false, true, false) => out.push('-'),
                (false, false, false) => out.push('+'),
            }
            let abs = c.abs();
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{abs}*{m}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::int(n)
    }
}

impl From<Indeterminate> for Polynomial {
    fn from(v: Indeterminate) -> Self {
        Polynomial::var(v)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}
