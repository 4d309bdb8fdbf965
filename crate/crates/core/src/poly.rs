//! Exact polynomial algebra over big integers: dense polynomials with a
//! generic coefficient ring so one resultant routine serves Z[x], Z[z][w]
//! and the three-variable elimination that re-derives the map annihilators.
//!
//! Resultants use the subresultant polynomial remainder sequence to keep
//! coefficient growth under control; no factorization is implemented, so
//! "up to a trivially non-zero factor" claims are certified by exact
//! divisibility against transcribed polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::series::RatSeries;

/// Commutative-ring operations plus exact division (guaranteed exact at
/// every call site by the subresultant theory; a failed division means a
/// logic error, hence panic rather than Result).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        1.into()
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
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, other);
        assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(1.into())
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
    fn div_exact(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero");
        self / other
    }
}

/// Dense polynomial, ascending degree, trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

pub type IntPolynomial = Poly<BigInt>;
/// Polynomial in an outer variable w with coefficients in Z[z].
pub type BiPolynomial = Poly<Poly<BigInt>>;
/// One more level, used only during elimination.
pub type TriPolynomial = Poly<Poly<Poly<BigInt>>>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: R, e: usize) -> Self {
        let mut coeffs = vec![R::zero(); e + 1];
        coeffs[e] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> R {
        self.coeffs.get(e).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Divide every coefficient exactly by c.
    pub fn div_coeff_exact(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.div_exact(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![]);
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut acc = R::zero();
                    for _ in 0..=i {
                        acc = acc.add(c);
                    }
                    acc
                })
                .collect(),
        )
    }

    /// self * c * x^e.
    fn mul_monomial(&self, c: &R, e: usize) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + e];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + e] = a.mul(c);
        }
        Poly::new(out)
    }

    /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) · a mod b.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let mut r = self.clone();
        let lb = b.lc();
        let da = self.degree().map_or(0, |d| d);
        let mut e = (da as i64 - db as i64 + 1).max(0);
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let top = r.lc();
            r = r.scale(&lb).sub(&b.mul_monomial(&top, dr - db));
            e -= 1;
        }
        let mut factor = R::one();
        for _ in 0..e {
            factor = factor.mul(&lb);
        }
        r.scale(&factor)
    }

    /// Exact polynomial long division; error if not exactly divisible.
    pub fn div_poly_exact(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lb = b.lc();
        let mut r = self.clone();
        let mut q: Vec<(usize, R)> = Vec::new();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lc().div_exact(&lb);
            q.push((dr - db, c.clone()));
            r = r.sub(&b.mul_monomial(&c, dr - db));
        }
        if !r.coeffs.is_empty() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        let dq = q.first().map(|(e, _)| *e).unwrap_or(0);
        let mut out = vec![R::zero(); dq + 1];
        for (e, c) in q {
            out[e] = c;
        }
        Ok(Poly::new(out))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Ring::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(out)
    }
    fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
    fn div_exact(&self, other: &Self) -> Self {
        if other.degree() == Some(0) {
            return self.div_coeff_exact(&other.lc());
        }
        self.div_poly_exact(other)
            .expect("inexact polynomial division")
    }
}

fn ring_pow<R: Ring>(base: &R, e: usize) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc.mul(base);
    }
    acc
}

/// Resultant of p and q with respect to their common (outer) variable, via
/// the subresultant polynomial remainder sequence.
pub fn resultant<R: Ring>(p: &Poly<R>, q: &Poly<R>) -> Result<R> {
    let dp = p.degree().ok_or(Error::ZeroPolynomial)?;
    let dq = q.degree().ok_or(Error::ZeroPolynomial)?;
    let (mut a, mut b, mut sign) = if dp >= dq {
        (p.clone(), q.clone(), false)
    } else {
        (q.clone(), p.clone(), dp % 2 == 1 && dq % 2 == 1)
    };
    if b.degree() == Some(0) {
        let r = ring_pow(&b.lc(), a.degree().unwrap());
        return Ok(if sign { r.neg() } else { r });
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = a.prem(&b);
        a = b;
        let divisor = g.mul(&ring_pow(&h, delta));
        b = r.div_coeff_exact(&divisor);
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            ring_pow(&g, delta).div_exact(&ring_pow(&h, delta - 1))
        };
        match b.degree() {
            None => return Ok(R::zero()),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap();
    let res = ring_pow(&b.lc(), da).div_exact(&ring_pow(&h, da.saturating_sub(1)));
    Ok(if sign { res.neg() } else { res })
}

/// disc(p) = (-1)^(d(d-1)/2) res(p, p') / lc(p), in the outer variable.
pub fn discriminant<R: Ring>(p: &Poly<R>) -> Result<R> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::DegreeTooSmall { need: 2, got: d });
    }
    let r = resultant(p, &p.derivative())?;
    let r = r.div_exact(&p.lc());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { r.neg() } else { r })
}

/// Evaluates p(z, s(z)) as a truncated series; Ok(()) iff identically zero,
/// otherwise reports the first order with a nonzero coefficient.
pub fn annihilator_check(p: &BiPolynomial, s: &RatSeries) -> std::result::Result<(), usize> {
    let order = s.order();
    let mut acc = RatSeries::zero(order);
    // Horner in the outer variable.
    for k in (0..p.coeffs.len()).rev() {
        acc = acc.mul(s).expect("orders match");
        let c = unipoly_to_series(&p.coeff(k), order);
        acc = acc.add(&c).expect("orders match");
    }
    match acc.valuation() {
        None => Ok(()),
        Some(n) => Err(n),
    }
}

fn unipoly_to_series(p: &IntPolynomial, order: usize) -> RatSeries {
    let mut s = RatSeries::zero(order);
    for (e, c) in p.coeffs().iter().enumerate() {
        if e > order {
            break;
        }
        s.set_coeff(e, BigRational::from_integer(c.clone()));
    }
    s
}

/// Integer content (gcd of all integer coefficients, at any nesting depth).
pub fn int_content(p: &IntPolynomial) -> BigInt {
    let mut g = BigInt::from(0);
    for c in p.coeffs() {
        g = num_integer::Integer::gcd(&g, c);
    }
    g
}

pub fn bipoly_int_content(p: &BiPolynomial) -> BigInt {
    let mut g = BigInt::from(0);
    for c in p.coeffs() {
        g = num_integer::Integer::gcd(&g, &int_content(c));
    }
    g
}

/// Strips the integer content and any common power of z; normalizes the
/// sign so the leading coefficient of the leading z-polynomial is positive.
pub fn bipoly_primitive(p: &BiPolynomial) -> BiPolynomial {
    if p.is_zero() {
        return Ring::zero();
    }
    let content = bipoly_int_content(p);
    let zmin = p
        .coeffs()
        .iter()
        .filter_map(|c| c.coeffs().iter().position(|a| !Zero::is_zero(a)))
        .min()
        .unwrap_or(0);
    let mut out: Vec<IntPolynomial> = p
        .coeffs()
        .iter()
        .map(|c| {
            Poly::new(
                c.coeffs()
                    .iter()
                    .skip(zmin)
                    .map(|a| a / &content)
                    .collect(),
            )
        })
        .collect();
    if out
        .last()
        .map_or(false, |c| c.lc().is_negative())
    {
        out = out.iter().map(|c| c.neg()).collect();
    }
    Poly::new(out)
}

// --- transcribed annihilators and discriminants ---------------------------

fn zp(coeffs: &[i64]) -> IntPolynomial {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// P_B(z,B) = B^9 - z^2 B^5 + z^3 B^4 + z^3 B^3 - 3z^4 B^2 + 3z^5 B - z^6,
/// the annihilator of the 2-connected map series (outer variable B).
pub fn pb_polynomial() -> BiPolynomial {
    Poly::new(vec![
        zp(&[0, 0, 0, 0, 0, 0, -1]),    // B^0: -z^6
        zp(&[0, 0, 0, 0, 0, 3]),        // B^1: 3z^5
        zp(&[0, 0, 0, 0, -3]),          // B^2: -3z^4
        zp(&[0, 0, 0, 1]),              // B^3: z^3
        zp(&[0, 0, 0, 1]),              // B^4: z^3
        zp(&[0, 0, -1]),                // B^5: -z^2
        zp(&[]),                        // B^6
        zp(&[]),                        // B^7
        zp(&[]),                        // B^8
        zp(&[1]),                       // B^9
    ])
}

/// The degree-12 annihilator P_M(z,M) of the all-maps series.
pub fn pm_polynomial() -> BiPolynomial {
    Poly::new(vec![
        zp(&[0, 0, 0, 0, 0, 0, 1]),                      // M^0:  z^6
        zp(&[0, 0, 0, 0, 0, -3, 12]),                    // M^1:  3z^5(4z-1)
        zp(&[0, 0, 0, 0, 3, -30, 66]),                   // M^2:  3z^4(22z^2-10z+1)
        zp(&[0, 0, 0, -1, 24, -135, 220]),               // M^3:  z^3(220z^3-135z^2+24z-1)
        zp(&[0, 0, 0, -7, 84, -360, 495]),               // M^4:  495z^6-360z^5+84z^4-7z^3
        zp(&[0, 0, 1, -21, 168, -630, 792]),             // M^5
        zp(&[0, 0, 4, -35, 210, -756, 924]),             // M^6
        zp(&[0, 0, 6, -35, 168, -630, 792]),             // M^7
        zp(&[0, 0, 4, -21, 84, -360, 495]),              // M^8
        zp(&[-1, 0, 1, -7, 24, -135, 220]),              // M^9
        zp(&[0, 0, 0, -1, 3, -30, 66]),                  // M^10: z^3(66z^3-30z^2+3z-1)
        zp(&[0, 0, 0, 0, 0, -3, 12]),                    // M^11
        zp(&[0, 0, 0, 0, 0, 0, 1]),                      // M^12: z^6
    ])
}

/// The printed degree-6 factor of disc_B(P_B).
pub fn disc_b_printed() -> IntPolynomial {
    zp(&[
        -135424, 3326272, -15907392, -81168524, 184705272, 573956280, 387420489,
    ])
}

/// The printed degree-12 factor of disc_M(P_M).
pub fn disc_m_printed() -> IntPolynomial {
    Poly::new(
        [
            "3656448",
            "-148471488",
            "1812419712",
            "-5212588972",
            "-13112588384",
            "60575733276",
            "-301902286683",
            "1275725763644",
            "-3620212090976",
            "1262789263168",
            "6474387490048",
            "-2215690119168",
            "2035256037376",
        ]
        .iter()
        .map(|s| s.parse::<BigInt>().unwrap())
        .collect(),
    )
}

// --- elimination ----------------------------------------------------------

/// Re-derives the degree-9 annihilator of B(z) = zD(z) by eliminating S
/// between S = z^3 D^6 (1+S)^3 and D = 1 + z^2 D^5 (1+S), then substituting
/// D = B/z and clearing powers of z. The result is certified against the
/// transcribed P_B by exact division.
pub fn derive_b_annihilator() -> Result<BiPolynomial> {
    // Nesting: outer S, middle D, inner z.
    type ZD = Poly<Poly<BigInt>>; // middle D, inner z
    let zd = |dexp: usize, zexp: usize, c: i64| -> ZD {
        Poly::monomial(Poly::monomial(BigInt::from(c), zexp), dexp)
    };
    // p1 = -z^3 D^6 + (1 - 3 z^3 D^6) S - 3 z^3 D^6 S^2 - z^3 D^6 S^3
    let z3d6 = zd(6, 3, 1);
    let p1: TriPolynomial = Poly::new(vec![
        z3d6.neg(),
        Ring::one(),
        Ring::zero(),
        Ring::zero(),
    ]);
    let p1 = p1.sub(&Poly::new(vec![
        Ring::zero(),
        zd(6, 3, 3),
        zd(6, 3, 3),
        z3d6,
    ]));
    // p2 = (D - 1 - z^2 D^5) - z^2 D^5 S
    let p2: TriPolynomial = Poly::new(vec![
        zd(1, 0, 1).sub(&zd(0, 0, 1)).sub(&zd(5, 2, 1)),
        zd(5, 2, 1).neg(),
    ]);
    let r = resultant(&p1, &p2)?; // in Z[z][D], outer D
    // D -> B/z, cleared by z^{deg_D}: coefficient of B^i picks up z^{dd-i}.
    let dd = r.degree().ok_or(Error::ZeroPolynomial)?;
    let in_b: BiPolynomial = Poly::new(
        (0..=dd)
            .map(|i| r.coeff(i).mul(&Poly::monomial(BigInt::from(1), dd - i)))
            .collect(),
    );
    Ok(bipoly_primitive(&in_b))
}

/// P_B(z(1+M)^2, M): the elimination step from the 2-connected annihilator
/// to the all-maps one, normalized to primitive form.
pub fn derive_m_annihilator(pb: &BiPolynomial) -> BiPolynomial {
    // Accumulate in Z[z][M] (outer M, inner z).
    let one_plus_m_sq: BiPolynomial = Poly::new(vec![
        Poly::constant(BigInt::from(1)),
        Poly::constant(BigInt::from(2)),
        Poly::constant(BigInt::from(1)),
    ]);
    let mut acc: BiPolynomial = Ring::zero();
    for (j, cz) in pb.coeffs().iter().enumerate() {
        // term: cz(z') M^j with z' = z(1+M)^2
        for (i, c) in cz.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            // c z^i (1+M)^{2i} M^j
            let mut term = ring_pow(&one_plus_m_sq, i);
            term = term.mul_monomial(&Poly::constant(c.clone()), j);
            let term = term.scale(&Poly::monomial(BigInt::from(1), i));
            acc = acc.add(&term);
        }
    }
    bipoly_primitive(&acc)
}

/// JSON-friendly term list: (z exponent, w exponent, coefficient).
pub fn bipoly_terms(p: &BiPolynomial) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for (w, cz) in p.coeffs().iter().enumerate() {
        for (z, c) in cz.coeffs().iter().enumerate() {
            if !Zero::is_zero(c) {
                out.push((z, w, c.to_string()));
            }
        }
    }
    out
}

// --- integer-polynomial utilities for root isolation ----------------------

impl IntPolynomial {
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return Ring::zero();
        }
        let mut c = int_content(self);
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_coeff_exact(&c)
    }
}

/// Polynomial gcd over Z via a primitive remainder sequence.
pub fn int_poly_gcd(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let mut a = p.primitive();
    let mut b = q.primitive();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return a.primitive();
        }
        let r = a.prem(&b).primitive();
        a = b;
        b = r;
    }
}

/// p divided by gcd(p, p'): same roots, all simple.
pub fn squarefree_part(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = int_poly_gcd(p, &p.derivative());
    if g.degree() == Some(0) {
        return Ok(p.primitive());
    }
    Ok(p.div_poly_exact(&g)?.primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps;

    #[test]
    fn resultant_substitution_instance() {
        // res_u(u - z, u^2 - w) = z^2 - w   (inner z, middle w, outer u)
        type ZW = Poly<Poly<BigInt>>;
        let z: ZW = Poly::constant(Poly::monomial(BigInt::from(1), 1));
        let w: ZW = Poly::monomial(Poly::constant(BigInt::from(1)), 1);
        let p: Poly<ZW> = Poly::new(vec![z.clone().neg(), Ring::one()]);
        let q: Poly<ZW> = Poly::new(vec![w.clone().neg(), Ring::zero(), Ring::one()]);
        let r = resultant(&p, &q).unwrap();
        assert_eq!(r, z.mul(&z).sub(&w));
    }

    #[test]
    fn resultant_of_common_factor_is_zero() {
        let p: IntPolynomial = zp(&[-2, 0, 1]); // x^2 - 2
        let r = resultant(&p, &p).unwrap();
        assert!(Zero::is_zero(&r));
    }

    #[test]
    fn resultant_of_split_cubic() {
        // res(x^2-3x+2, x-3) = (x^2-3x+2)|_{x=3} = 2
        let p = zp(&[2, -3, 1]);
        let q = zp(&[-3, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), BigInt::from(2));
    }

    #[test]
    fn quadratic_discriminant() {
        // disc_w(w^2 - z) = 4z
        let p: BiPolynomial = Poly::new(vec![
            Poly::monomial(BigInt::from(-1), 1),
            Ring::zero(),
            Ring::one(),
        ]);
        let d = discriminant(&p).unwrap();
        assert_eq!(d, Poly::monomial(BigInt::from(4), 1));
    }

    #[test]
    fn annihilators_kill_the_map_series() {
        let b = maps::two_connected_maps_series(48);
        assert_eq!(annihilator_check(&pb_polynomial(), &b), Ok(()));
        let m = maps::all_maps_series(48);
        assert_eq!(annihilator_check(&pm_polynomial(), &m), Ok(()));
    }

    #[test]
    fn annihilator_check_reports_first_failure() {
        // w - z^2 against the series z fails at order 1.
        let p: BiPolynomial = Poly::new(vec![
            Poly::monomial(BigInt::from(-1), 2),
            Ring::one(),
        ]);
        let s = RatSeries::x(4);
        assert_eq!(annihilator_check(&p, &s), Err(1));
    }

    #[test]
    fn elimination_reproduces_pb() {
        let derived = derive_b_annihilator().unwrap();
        // The derived annihilator is divisible by the transcribed P_B
        // (monic in B, so the division is exact over Z[z]).
        let q = derived.div_poly_exact(&pb_polynomial()).unwrap();
        assert!(!q.is_zero());
        // And it annihilates the series itself.
        let b = maps::two_connected_maps_series(40);
        assert_eq!(annihilator_check(&derived, &b), Ok(()));
    }

    #[test]
    fn substitution_reproduces_pm() {
        let derived = derive_m_annihilator(&pb_polynomial());
        assert_eq!(derived.degree(), Some(12));
        let pm = pm_polynomial();
        // Equal up to normalization; primitive forms must coincide exactly.
        assert_eq!(derived, bipoly_primitive(&pm));
        let m = maps::all_maps_series(40);
        assert_eq!(annihilator_check(&derived, &m), Ok(()));
    }

    #[test]
    fn printed_discriminants_divide_computed_ones() {
        let db = discriminant(&pb_polynomial()).unwrap();
        let q = db.div_poly_exact(&disc_b_printed()).unwrap();
        // Quotient is an integer times a power of z.
        let nonzero: Vec<_> = q
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .collect();
        assert_eq!(nonzero.len(), 1);

        let dm = discriminant(&pm_polynomial()).unwrap();
        let qm = dm.div_poly_exact(&disc_m_printed()).unwrap();
        let nonzero_m: Vec<_> = qm
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .collect();
        assert_eq!(nonzero_m.len(), 1);
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2) -> squarefree part (x-1)(x+2)
        let p = zp(&[-1, 1]);
        let q = zp(&[2, 1]);
        let pp = p.mul(&p).mul(&q);
        let sf = squarefree_part(&pp).unwrap();
        assert_eq!(sf, p.mul(&q));
    }
}
