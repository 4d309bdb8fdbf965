//! Truncated formal power series with exact rational coefficients.
//!
//! Series are dense, carry an explicit truncation order `N` (inclusive), and
//! all arithmetic is exact. The coefficient type is generic so the same code
//! serves univariate series (`BigRational` coefficients) and bivariate series
//! in `x` whose coefficients are polynomials in `y` ([`YPoly`]).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient ring for truncated series.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by an exact rational scalar.
    fn scale(&self, r: &BigRational) -> Self;
    /// Exact division by a positive integer.
    fn div_int(&self, n: u64) -> Self;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn div_int(&self, n: u64) -> Self {
        self / BigRational::from_integer(BigInt::from(n))
    }
}

/// Dense polynomial in `y` with exact rational coefficients, kept trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct YPoly {
    coeffs: Vec<BigRational>,
}

impl YPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| Zero::is_zero(c)) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        YPoly::new(vec![c])
    }

    /// The monomial y.
    pub fn y() -> Self {
        YPoly::new(vec![rzero(), rone()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigRational {
        self.coeffs.get(e).cloned().unwrap_or_else(rzero)
    }

    /// Degree in y, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// d/dy.
    pub fn derivative_y(&self) -> YPoly {
        if self.coeffs.len() <= 1 {
            return YPoly::new(vec![]);
        }
        YPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    /// Antiderivative in y with zero constant term.
    pub fn integrate_y(&self) -> YPoly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(rzero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(i + 1)));
        }
        YPoly::new(out)
    }

    /// Exact division by y; fails when the constant term is nonzero.
    pub fn div_y(&self) -> Option<YPoly> {
        if self.coeffs.is_empty() {
            return Some(YPoly::new(vec![]));
        }
        if !Zero::is_zero(&self.coeffs[0]) {
            return None;
        }
        Some(YPoly::new(self.coeffs[1..].to_vec()))
    }
}

impl Coeff for YPoly {
    fn zero() -> Self {
        YPoly { coeffs: vec![] }
    }
    fn one() -> Self {
        YPoly::constant(One::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        YPoly::new(out)
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        YPoly::new(out)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Coeff::zero();
        }
        let mut out = vec![rzero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    out[i + j] += a * b;
                }
            }
        }
        YPoly::new(out)
    }
    fn neg(&self) -> Self {
        YPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn scale(&self, r: &BigRational) -> Self {
        if Zero::is_zero(r) {
            return Coeff::zero();
        }
        YPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
    fn div_int(&self, n: u64) -> Self {
        let d = BigRational::from_integer(BigInt::from(n));
        YPoly {
            coeffs: self.coeffs.iter().map(|c| c / &d).collect(),
        }
    }
}

/// Truncated formal power series: coefficients of x^0 .. x^N, exact.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<C>,
}

pub type RatSeries = TruncatedSeries<BigRational>;
pub type BivariateSeries = TruncatedSeries<YPoly>;

impl<C: Coeff> TruncatedSeries<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// The monomial x (requires order >= 1).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[1] = C::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    /// Index of the first nonzero coefficient, or None for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().take(order + 1).cloned().collect();
        while coeffs.len() < order + 1 {
            coeffs.push(C::zero());
        }
        TruncatedSeries { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            Err(Error::OrderMismatch(self.order(), other.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn pow(&self, mut e: usize) -> Result<Self> {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiply by x^k, shifting coefficients and dropping the tail.
    pub fn shift_x(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        TruncatedSeries { coeffs: out }
    }

    /// outer(inner), requiring inner(0) = 0. Horner evaluation.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = outer.order();
        let mut acc = Self::zero(n);
        for k in (0..=n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(&outer.coeffs[k]);
        }
        Ok(acc)
    }

    /// exp of a series with zero constant term, via the f' = a'·f recurrence.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroExpConstant);
        }
        let n = self.order();
        let mut f = vec![C::zero(); n + 1];
        f[0] = C::one();
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = self.coeffs[k].mul(&f[m - k]);
                acc = acc.add(&term.scale(&BigRational::from_integer(BigInt::from(k))));
            }
            f[m] = acc.div_int(m as u64);
        }
        Ok(TruncatedSeries { coeffs: f })
    }

    /// Division by a series with invertible (here: nonzero, and for the
    /// rational case unit) constant term. Requires C to be a field-like
    /// coefficient only through `other.coeffs[0]` being 1; general unit
    /// division is done by the caller after rescaling.
    pub fn div_unit(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if other.coeffs[0] != C::one() {
            return Err(Error::NonUnitDivisor);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                if !other.coeffs[k].is_zero() {
                    acc = acc.sub(&other.coeffs[k].mul(&out[m - k]));
                }
            }
            out[m] = acc;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Termwise d/dx; the result is valid (and represented) to order N-1.
    pub fn derivative_x(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i + 1))))
                .collect(),
        }
    }

    /// Termwise antiderivative with zero constant term, truncated back to
    /// order N (the x^{N+1} term is dropped).
    pub fn integrate_x(&self) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for m in 1..=n {
            out[m] = self.coeffs[m - 1].div_int(m as u64);
        }
        TruncatedSeries { coeffs: out }
    }
}

impl RatSeries {
    /// Evaluate the truncated series at an exact rational point.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = rzero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// n! * [x^n], erroring if not an integer.
    pub fn egf_count(&self, n: usize) -> Result<BigInt> {
        let c = self.coeff(n) * BigRational::from_integer(factorial(n));
        if !c.is_integer() {
            return Err(Error::Domain(format!(
                "n!·[x^{n}] is not an integer: {c}"
            )));
        }
        Ok(c.to_integer())
    }

    /// [x^n] as an integer, erroring if not one.
    pub fn ogf_count(&self, n: usize) -> Result<BigInt> {
        let c = self.coeff(n);
        if !c.is_integer() {
            return Err(Error::Domain(format!("[x^{n}] is not an integer: {c}")));
        }
        Ok(c.to_integer())
    }
}

impl BivariateSeries {
    /// Partial derivative in y, termwise on the x-coefficients.
    pub fn partial_y(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p.derivative_y()).collect(),
        }
    }

    /// Antiderivative in y with zero constant of integration.
    pub fn integrate_y(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p.integrate_y()).collect(),
        }
    }

    /// Exact division by y; every x-coefficient must be divisible by y.
    pub fn div_y(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (n, p) in self.coeffs.iter().enumerate() {
            out.push(p.div_y().ok_or(Error::NotDivisibleByY(n))?);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Set y = 1.
    pub fn at_y_one(&self) -> RatSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p.eval_at_one()).collect(),
        }
    }

    /// Lift a univariate series to a bivariate one (y-free coefficients).
    pub fn from_univariate(s: &RatSeries) -> Self {
        TruncatedSeries {
            coeffs: s
                .coeffs
                .iter()
                .map(|c| YPoly::constant(c.clone()))
                .collect(),
        }
    }
}

/// Unique truncated solution of X = phi(X), where phi gains at least one
/// order of valuation. Runs N+1 full passes from the forced constant term,
/// then one more pass to detect non-contraction.
pub fn solve_fixed_point<C: Coeff>(
    order: usize,
    constant_term: C,
    phi: impl Fn(&TruncatedSeries<C>) -> Result<TruncatedSeries<C>>,
) -> Result<TruncatedSeries<C>> {
    let mut x = TruncatedSeries::zero(order);
    x.coeffs[0] = constant_term;
    for _ in 0..=order {
        x = phi(&x)?.truncate(order);
    }
    let check = phi(&x)?.truncate(order);
    if check != x {
        let bad = (0..=order)
            .find(|&n| check.coeffs[n] != x.coeffs[n])
            .unwrap_or(order);
        return Err(Error::NonContraction(bad));
    }
    Ok(x)
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// JSON dump entry for a univariate series: {n, numerator, denominator}.
#[derive(Serialize)]
pub struct SeriesDumpEntry {
    pub n: usize,
    pub numerator: String,
    pub denominator: String,
}

/// JSON dump entry for a bivariate series: one row of y-coefficient pairs.
#[derive(Serialize)]
pub struct BivariateDumpEntry {
    pub n: usize,
    pub y_coeffs: Vec<(usize, String, String)>,
}

pub fn dump_univariate(s: &RatSeries) -> Vec<SeriesDumpEntry> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| SeriesDumpEntry {
            n,
            numerator: c.numer().to_string(),
            denominator: c.denom().to_string(),
        })
        .collect()
}

pub fn dump_bivariate(s: &BivariateSeries) -> Vec<BivariateDumpEntry> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, p)| BivariateDumpEntry {
            n,
            y_coeffs: p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !Zero::is_zero(*c))
                .map(|(e, c)| (e, c.numer().to_string(), c.denom().to_string()))
                .collect(),
        })
        .collect()
}

fn rzero() -> BigRational {
    Zero::zero()
}

fn rone() -> BigRational {
    One::one()
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}

/// Signed magnitude check used by property tests: all coefficients >= 0.
pub fn all_nonnegative(s: &RatSeries) -> bool {
    s.coeffs().iter().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[(i64, i64)]) -> RatSeries {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn mul_polynomial_square() {
        // (1+z)^2 = 1 + 2z + z^2 at N=2
        let a = s(&[(1, 1), (1, 1), (0, 1)]);
        let got = a.mul(&a).unwrap();
        assert_eq!(got, s(&[(1, 1), (2, 1), (1, 1)]));
    }

    #[test]
    fn mul_ternary_prefix_square() {
        // S = z + 3z^2 + 12z^3 + ... ; S^2 = z^2 + 6z^3 + ... (N=3)
        let a = s(&[(0, 1), (1, 1), (3, 1), (12, 1)]);
        let got = a.mul(&a).unwrap();
        assert_eq!(got, s(&[(0, 1), (0, 1), (1, 1), (6, 1)]));
    }

    #[test]
    fn mul_absorbing_zero() {
        let a = s(&[(5, 2), (1, 3), (7, 1)]);
        let z = RatSeries::zero(2);
        assert_eq!(a.mul(&z).unwrap(), z);
    }

    #[test]
    fn mul_order_mismatch_errors() {
        let a = RatSeries::one(2);
        let b = RatSeries::one(3);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(2, 3))));
    }

    #[test]
    fn compose_identity_substitution() {
        // outer = 1/(1-u) to N=3, inner = z
        let outer = s(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let inner = RatSeries::x(3);
        let got = TruncatedSeries::compose(&outer, &inner).unwrap();
        assert_eq!(got, outer);
    }

    #[test]
    fn compose_square_of_z_plus_z2() {
        // outer = u^2, inner = z + z^2 -> z^2 + 2z^3 + z^4 (N=4)
        let outer = s(&[(0, 1), (0, 1), (1, 1), (0, 1), (0, 1)]);
        let inner = s(&[(0, 1), (1, 1), (1, 1), (0, 1), (0, 1)]);
        let got = TruncatedSeries::compose(&outer, &inner).unwrap();
        assert_eq!(got, s(&[(0, 1), (0, 1), (1, 1), (2, 1), (1, 1)]));
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let outer = RatSeries::one(2);
        let inner = RatSeries::one(2);
        assert!(matches!(
            TruncatedSeries::compose(&outer, &inner),
            Err(Error::NonzeroInnerConstant)
        ));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let got = RatSeries::zero(3).exp().unwrap();
        assert_eq!(got, RatSeries::one(3));
    }

    #[test]
    fn exp_of_z() {
        let got = RatSeries::x(4).exp().unwrap();
        assert_eq!(got, s(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        assert!(matches!(
            RatSeries::one(2).exp(),
            Err(Error::NonzeroExpConstant)
        ));
    }

    #[test]
    fn derivative_of_x_squared() {
        let a = s(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(a.derivative_x(), s(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn integrate_derivative_recovers_series() {
        let a = s(&[(7, 2), (1, 1), (3, 5), (2, 7)]);
        let got = a.derivative_x().integrate_x();
        // constant term dropped, order reduced by one
        let mut expect = a.truncate(2);
        expect.set_coeff(0, rat_int(0));
        assert_eq!(got, expect);
    }

    #[test]
    fn fixed_point_ternary_trees() {
        // X = z(1+X)^3 -> 1, 3, 12, 55, 273
        let n = 5;
        let sol = solve_fixed_point(n, rat_int(0), |x| {
            let one_plus = RatSeries::one(n).add(x)?;
            Ok(one_plus.pow(3)?.shift_x(1))
        })
        .unwrap();
        let expect: Vec<i64> = vec![0, 1, 3, 12, 55, 273];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(sol.coeff(k), rat_int(*e));
        }
    }

    #[test]
    fn fixed_point_identity() {
        let n = 4;
        let sol = solve_fixed_point(n, rat_int(0), |_| Ok(RatSeries::x(n))).unwrap();
        assert_eq!(sol, RatSeries::x(n));
    }

    #[test]
    fn fixed_point_detects_non_contraction() {
        // X = X + 1 never stabilizes
        let n = 3;
        let r = solve_fixed_point(n, rat_int(0), |x| {
            x.add(&RatSeries::one(n))
        });
        assert!(matches!(r, Err(Error::NonContraction(_))));
    }

    #[test]
    fn compose_exp_series_matches_exp() {
        // compose(exp-series, a) = exp(a) for a(0) = 0
        let n = 6;
        let mut expser = RatSeries::zero(n);
        for k in 0..=n {
            expser.set_coeff(k, BigRational::new(BigInt::one(), factorial(k)));
        }
        let a = s(&[(0, 1), (1, 1), (-1, 2), (1, 3), (0, 1), (2, 5), (1, 7)]);
        let via_compose = TruncatedSeries::compose(&expser, &a).unwrap();
        assert_eq!(via_compose, a.exp().unwrap());
    }

    #[test]
    fn bivariate_partial_y() {
        // partial_y(y·x^2/2) = x^2/2
        let mut b = BivariateSeries::zero(2);
        b.set_coeff(2, YPoly::new(vec![rat_int(0), rat(1, 2)]));
        let d = b.partial_y();
        assert_eq!(d.coeff(2), YPoly::constant(rat(1, 2)));
        assert_eq!(d.coeff(0), YPoly::zero());
    }

    #[test]
    fn div_y_requires_divisibility() {
        let mut b = BivariateSeries::zero(1);
        b.set_coeff(1, YPoly::constant(rat(1, 1)));
        assert!(matches!(b.div_y(), Err(Error::NotDivisibleByY(1))));
    }

    #[test]
    fn div_unit_inverts_mul() {
        let n = 5;
        let a = s(&[(1, 1), (2, 1), (-1, 3), (0, 1), (5, 7), (1, 1)]);
        let b = s(&[(3, 1), (1, 2), (0, 1), (4, 1), (-2, 9), (0, 1)]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.div_unit(&a).unwrap(), b);
        let _ = n;
    }
}
