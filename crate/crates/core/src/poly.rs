//! Exact polynomials: univariate integer polynomials in β, multivariate
//! polynomials in the edge variables `x_ij` and β, and univariate rational
//! polynomials for Ehrhart interpolation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::Vertex;

/// Integer polynomial in one variable, coefficients by ascending degree with
/// trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `c + β`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p(β + delta)`.
    pub fn shift(&self, delta: i64) -> Self {
        let step = Self::linear(delta);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::new(vec![c.clone()]))
    }

    /// Keeps the terms of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Sum of coefficients, i.e. the value at 1.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, exp: u32) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => f.write_str(var),
        _ => write!(f, "{}^{}", var, exp),
    }
}

impl fmt::Display for UniPoly {
    /// Highest degree first, e.g. `β^2 + 5β + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if deg == 0 || !magnitude.is_one() {
                write!(f, "{}", magnitude)?;
            }
            write_power(f, "β", deg as u32)?;
        }
        Ok(())
    }
}

/// A monomial `β^k · Π x_ij^{a_ij}`; pairs are kept in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    x: BTreeMap<(Vertex, Vertex), u32>,
    beta: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>, beta: u32) -> Self {
        let mut m = Self { x: BTreeMap::new(), beta };
        for p in pairs {
            *m.x.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn x_exponents(&self) -> &BTreeMap<(Vertex, Vertex), u32> {
        &self.x
    }

    pub fn beta_exponent(&self) -> u32 {
        self.beta
    }

    pub fn x_degree(&self) -> u32 {
        self.x.values().sum()
    }

    pub fn exponent(&self, pair: (Vertex, Vertex)) -> u32 {
        self.x.get(&pair).copied().unwrap_or(0)
    }

    pub fn with_beta(mut self, beta: u32) -> Self {
        self.beta = beta;
        self
    }

    pub fn mul_x(&mut self, pair: (Vertex, Vertex)) {
        *self.x.entry(pair).or_insert(0) += 1;
    }

    /// Divides out one factor `x_pair`; `false` if it does not divide.
    pub fn div_x(&mut self, pair: (Vertex, Vertex)) -> bool {
        match self.x.get_mut(&pair) {
            Some(e) if *e > 1 => {
                *e -= 1;
                true
            }
            Some(_) => {
                self.x.remove(&pair);
                true
            }
            None => false,
        }
    }
}

impl Monomial {
    /// Variables by decreasing `(head, tail)`.
    fn display_order(&self) -> Vec<((Vertex, Vertex), u32)> {
        let mut vars: Vec<_> = self.x.iter().map(|(&p, &e)| (p, e)).collect();
        vars.sort_by_key(|&((i, j), _)| core::cmp::Reverse((j, i)));
        vars
    }

    fn display_key(&self) -> (u32, Vec<(Vertex, Vertex)>) {
        let vars = self
            .display_order()
            .into_iter()
            .flat_map(|(p, e)| core::iter::repeat_n(p, e as usize))
            .collect();
        (self.beta, vars)
    }
}

fn var_name(pair: (Vertex, Vertex)) -> String {
    if pair.0 < 10 && pair.1 < 10 {
        alloc::format!("x{}{}", pair.0, pair.1)
    } else {
        alloc::format!("x({},{})", pair.0, pair.1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta == 0 && self.x.is_empty() {
            return f.write_str("1");
        }
        write_power(f, "β", self.beta)?;
        for (pair, e) in self.display_order() {
            write_power(f, &var_name(pair), e)?;
        }
        Ok(())
    }
}

/// Integer combination of monomials; zero coefficients are never stored.
///
/// Displayed by ascending β-degree, then by the variable sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultivarPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    pub(crate) fn from_terms(terms: BTreeMap<Monomial, BigInt>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }
}

impl fmt::Display for MultivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_cached_key(|(m, _)| m.display_key());
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let magnitude = c.abs();
            match (k == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let is_unit = *m == Monomial::one();
            if !magnitude.is_one() || is_unit {
                write!(f, "{}", magnitude)?;
            }
            if !is_unit {
                write!(f, "{}", m)?;
            }
        }
        Ok(())
    }
}

/// Rational polynomial in one variable, ascending coefficients, trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    /// Coefficients rendered as `p/q` (or `p` when integral).
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shift_examples() {
        assert_eq!(UniPoly::linear(2).shift(-1), UniPoly::linear(1));
        assert_eq!(UniPoly::one().shift(-1), UniPoly::one());
        assert_eq!(UniPoly::from_i64(&[5, 5, 1]).shift(-1), UniPoly::from_i64(&[1, 3, 1]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(UniPoly::from_i64(&[5, 5, 1]).to_string(), "β^2 + 5β + 5");
        assert_eq!(UniPoly::from_i64(&[1, -3]).to_string(), "-3β + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let mut p = MultivarPoly::zero();
        p.add_term(Monomial::from_pairs([(1, 3), (1, 2)], 0), BigInt::one());
        p.add_term(Monomial::from_pairs([(1, 3)], 1), BigInt::from(2));
        assert_eq!(p.to_string(), "x13x12 + 2βx13");
        assert_eq!(MultivarPoly::from_monomial(Monomial::one()).to_string(), "1");
        assert_eq!(Monomial::from_pairs([(1, 4), (1, 4)], 0).to_string(), "x14^2");
        assert_eq!(Monomial::from_pairs([(2, 11)], 0).to_string(), "x(2,11)");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let m = Monomial::from_pairs([(1, 2)], 0);
        let mut p = MultivarPoly::from_monomial(m.clone());
        p.add_term(m, BigInt::from(-1));
        assert!(p.is_empty());
        assert!(UniPoly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn monomial_division() {
        let mut m = Monomial::from_pairs([(1, 2), (1, 2), (2, 3)], 0);
        assert!(m.div_x((1, 2)));
        assert_eq!(m.exponent((1, 2)), 1);
        assert!(m.div_x((2, 3)));
        assert!(!m.div_x((2, 3)));
        assert_eq!(m.x_degree(), 1);
    }

    proptest! {
        #[test]
        fn shifting_there_and_back(coeffs in prop::collection::vec(-50i64..50, 0..8), delta in -5i64..5) {
            let p = UniPoly::from_i64(&coeffs);
            prop_assert_eq!(p.shift(delta).shift(-delta), p.clone());
            let x = BigInt::from(3);
            prop_assert_eq!(p.shift(delta).eval(&x), p.eval(&(x + delta)));
        }

        #[test]
        fn product_evaluates_pointwise(a in prop::collection::vec(-9i64..9, 0..6), b in prop::collection::vec(-9i64..9, 0..6), x in -4i64..4) {
            let (p, q) = (UniPoly::from_i64(&a), UniPoly::from_i64(&b));
            let x = BigInt::from(x);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
            prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        }
    }
}
