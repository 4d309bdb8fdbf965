//! High-precision real arithmetic (default 256 bits) with the few
//! extensions the analytic layer needs: complex numbers for polynomial
//! root finding and short truncated Taylor expansions ("jets") for
//! implicit differentiation and branch expansions.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_rational::BigRational;

pub const DEFAULT_PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arbitrary-precision real; precision travels with the value and binary
/// operations work at the larger of the two precisions.
#[derive(Clone, Debug)]
pub struct HPReal {
    x: BigFloat,
    prec: usize,
}

impl HPReal {
    pub fn zero(prec: usize) -> Self {
        HPReal {
            x: BigFloat::from_i64(0, prec),
            prec,
        }
    }

    pub fn from_int(v: i64, prec: usize) -> Self {
        HPReal {
            x: BigFloat::from_i64(v, prec),
            prec,
        }
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        HPReal {
            x: BigFloat::from_f64(v, prec),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: usize) -> Self {
        let parse = |s: &str| {
            with_consts(|cc| BigFloat::parse(s, astro_float::Radix::Dec, prec + 64, RM, cc))
        };
        let n = parse(&r.numer().to_string());
        let d = parse(&r.denom().to_string());
        HPReal {
            x: n.div(&d, prec, RM),
            prec,
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative() && !self.x.is_zero()
    }

    pub fn abs(&self) -> Self {
        HPReal {
            x: self.x.abs(),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Self {
        HPReal {
            x: self.x.sqrt(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Self {
        HPReal {
            x: with_consts(|cc| self.x.exp(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn ln(&self) -> Self {
        HPReal {
            x: with_consts(|cc| self.x.ln(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn powi(&self, n: usize) -> Self {
        HPReal {
            x: self.x.powi(n, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn pi(prec: usize) -> Self {
        HPReal {
            x: with_consts(|cc| cc.pi(prec, RM)),
            prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.x.as_raw_parts() else {
            return f64::NAN;
        };
        let wbits = (std::mem::size_of_val(&words[0]) * 8) as i32;
        let mut frac = 0.0f64;
        for &w in words {
            frac = (frac + w as f64) * 2f64.powi(-wbits);
        }
        let v = frac * 2f64.powi(exp);
        if sign == Sign::Neg { -v } else { v }
    }

    /// Decimal string (scientific notation) for reports.
    pub fn to_decimal(&self) -> String {
        format!("{}", self.x)
    }
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.x.cmp(&other.x) == Some(0)
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.x.cmp(&other.x).map(|s| s.cmp(&0))
    }
}

macro_rules! hp_binop {
    ($trait:ident, $method:ident, $bf:ident) => {
        impl std::ops::$trait for &HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &HPReal) -> HPReal {
                let prec = self.prec.max(rhs.prec);
                HPReal {
                    x: self.x.$bf(&rhs.x, prec, RM),
                    prec,
                }
            }
        }
        impl std::ops::$trait for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                (&self).$method(&rhs)
            }
        }
    };
}

hp_binop!(Add, add, add);
hp_binop!(Sub, sub, sub);
hp_binop!(Mul, mul, mul);
hp_binop!(Div, div, div);

impl std::ops::Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal {
            x: self.x.clone().neg(),
            prec: self.prec,
        }
    }
}

impl std::ops::Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        -&self
    }
}

/// Complex number over HPReal; just enough for Aberth iteration.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: HPReal,
    pub im: HPReal,
}

impl Complex {
    pub fn new(re: HPReal, im: HPReal) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: HPReal) -> Self {
        let prec = re.precision();
        Complex {
            re,
            im: HPReal::zero(prec),
        }
    }

    pub fn zero(prec: usize) -> Self {
        Complex::from_real(HPReal::zero(prec))
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let d = &(&o.re * &o.re) + &(&o.im * &o.im);
        Complex::new(
            &(&(&self.re * &o.re) + &(&self.im * &o.im)) / &d,
            &(&(&self.im * &o.re) - &(&self.re * &o.im)) / &d,
        )
    }

    pub fn norm_sq(&self) -> HPReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn modulus(&self) -> HPReal {
        self.norm_sq().sqrt()
    }
}

/// Truncated Taylor expansion over HPReal with a fixed number of
/// coefficients; coefficient k multiplies delta^k. Used both for order-3
/// jets (implicit derivatives) and short singular branch expansions.
#[derive(Clone, Debug)]
pub struct FloatSeries {
    c: Vec<HPReal>,
}

impl FloatSeries {
    pub fn zero(len: usize, prec: usize) -> Self {
        FloatSeries {
            c: vec![HPReal::zero(prec); len],
        }
    }

    /// Constant expansion.
    pub fn constant(v: HPReal, len: usize) -> Self {
        let prec = v.precision();
        let mut s = FloatSeries::zero(len, prec);
        s.c[0] = v;
        s
    }

    /// v + delta: the expansion of the variable itself.
    pub fn variable(v: HPReal, len: usize) -> Self {
        let prec = v.precision();
        let mut s = FloatSeries::constant(v, len);
        if len > 1 {
            s.c[1] = HPReal::from_int(1, prec);
        }
        s
    }

    pub fn from_coeffs(c: Vec<HPReal>) -> Self {
        assert!(!c.is_empty());
        FloatSeries { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> &HPReal {
        &self.c[k]
    }

    pub fn set_coeff(&mut self, k: usize, v: HPReal) {
        self.c[k] = v;
    }

    fn prec(&self) -> usize {
        self.c[0].precision()
    }

    pub fn add(&self, o: &FloatSeries) -> FloatSeries {
        let n = self.len().min(o.len());
        FloatSeries {
            c: (0..n).map(|k| &self.c[k] + &o.c[k]).collect(),
        }
    }

    pub fn sub(&self, o: &FloatSeries) -> FloatSeries {
        let n = self.len().min(o.len());
        FloatSeries {
            c: (0..n).map(|k| &self.c[k] - &o.c[k]).collect(),
        }
    }

    pub fn neg(&self) -> FloatSeries {
        FloatSeries {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, o: &FloatSeries) -> FloatSeries {
        let n = self.len().min(o.len());
        let mut out = FloatSeries::zero(n, self.prec().max(o.prec()));
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out.c[i + j] = &out.c[i + j] + &(&self.c[i] * &o.c[j]);
            }
        }
        out
    }

    pub fn scale(&self, v: &HPReal) -> FloatSeries {
        FloatSeries {
            c: self.c.iter().map(|a| a * v).collect(),
        }
    }

    pub fn powi(&self, e: usize) -> FloatSeries {
        let mut acc = FloatSeries::constant(HPReal::from_int(1, self.prec()), self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// exp of the expansion: e^(c0) times the usual recurrence on the tail.
    pub fn exp(&self) -> FloatSeries {
        let n = self.len();
        let prec = self.prec();
        let mut out = FloatSeries::zero(n, prec);
        out.c[0] = self.c[0].exp();
        for k in 1..n {
            // f' = a' f  =>  k f_k = sum_{j=1..k} j a_j f_{k-j}
            let mut acc = HPReal::zero(prec);
            for j in 1..=k {
                acc = &acc + &(&(&HPReal::from_int(j as i64, prec) * &self.c[j]) * &out.c[k - j]);
            }
            out.c[k] = &acc / &HPReal::from_int(k as i64, prec);
        }
        out
    }

    /// Division; the divisor must have a nonzero constant term.
    pub fn div(&self, o: &FloatSeries) -> FloatSeries {
        let n = self.len().min(o.len());
        let prec = self.prec().max(o.prec());
        assert!(!o.c[0].is_zero(), "division by a series with zero constant term");
        let mut out = FloatSeries::zero(n, prec);
        for k in 0..n {
            let mut acc = self.c[k].clone();
            for j in 1..=k {
                acc = &acc - &(&o.c[j] * &out.c[k - j]);
            }
            out.c[k] = &acc / &o.c[0];
        }
        out
    }

    /// Derivative with respect to the expansion variable (one order shorter
    /// in usable coefficients; length is preserved with a zero tail).
    pub fn derivative(&self) -> FloatSeries {
        let n = self.len();
        let prec = self.prec();
        let mut out = FloatSeries::zero(n, prec);
        for k in 1..n {
            out.c[k - 1] = &HPReal::from_int(k as i64, prec) * &self.c[k];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn basic_arithmetic_round_trips() {
        let a = HPReal::from_f64(1.5, 256);
        let b = HPReal::from_f64(0.25, 256);
        assert_eq!((&a + &b).to_f64(), 1.75);
        assert_eq!((&a * &b).to_f64(), 0.375);
        assert_eq!((&a / &b).to_f64(), 6.0);
        assert!(close(a.sqrt().to_f64(), 1.5f64.sqrt(), 1e-15));
        assert!(close(a.exp().to_f64(), 1.5f64.exp(), 1e-15));
        assert!(close(a.ln().to_f64(), 1.5f64.ln(), 1e-15));
        assert!(close(HPReal::pi(256).to_f64(), std::f64::consts::PI, 1e-15));
    }

    #[test]
    fn rational_conversion_is_accurate() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        let x = HPReal::from_rational(&r, 256);
        // 1/3 at 256 bits: 3x - 1 should be ~2^-250
        let err = (&(&x * &HPReal::from_int(3, 256)) - &HPReal::from_int(1, 256)).abs();
        assert!(err < HPReal::from_f64(1e-70, 256));
    }

    #[test]
    fn complex_division() {
        let i = Complex::new(HPReal::zero(128), HPReal::from_int(1, 128));
        let one = Complex::from_real(HPReal::from_int(1, 128));
        let q = one.div(&i); // 1/i = -i
        assert!(close(q.im.to_f64(), -1.0, 1e-15));
        assert!(q.re.to_f64().abs() < 1e-30);
        assert!(close(i.modulus().to_f64(), 1.0, 1e-15));
    }

    #[test]
    fn jet_exp_matches_taylor() {
        // exp(x) around 0.5 to order 3
        let x = FloatSeries::variable(HPReal::from_f64(0.5, 256), 4);
        let e = x.exp();
        let e0 = 0.5f64.exp();
        assert!(close(e.coeff(0).to_f64(), e0, 1e-14));
        assert!(close(e.coeff(1).to_f64(), e0, 1e-14));
        assert!(close(e.coeff(2).to_f64(), e0 / 2.0, 1e-14));
        assert!(close(e.coeff(3).to_f64(), e0 / 6.0, 1e-14));
    }

    #[test]
    fn jet_division_inverts_multiplication() {
        let x = FloatSeries::variable(HPReal::from_f64(0.3, 256), 5);
        let p = x.powi(2).add(&FloatSeries::constant(HPReal::from_int(2, 256), 5));
        let q = x.exp();
        let r = p.mul(&q).div(&q);
        for k in 0..5 {
            assert!((r.coeff(k) - p.coeff(k)).abs() < HPReal::from_f64(1e-60, 256));
        }
    }

    #[test]
    fn derivative_shifts_coefficients() {
        let x = FloatSeries::variable(HPReal::from_f64(2.0, 128), 4);
        let p = x.powi(3); // 8 + 12 d + 6 d^2 + d^3
        let d = p.derivative(); // 12 + 12 d + 3 d^2
        assert!(close(d.coeff(0).to_f64(), 12.0, 1e-14));
        assert!(close(d.coeff(1).to_f64(), 12.0, 1e-14));
        assert!(close(d.coeff(2).to_f64(), 3.0, 1e-14));
    }
}
