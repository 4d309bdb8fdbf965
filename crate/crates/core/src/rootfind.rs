//! Root location for integer polynomials: certified real-root isolation
//! via Sturm sequences and exact bisection, plus high-precision complex
//! approximation of all roots by simultaneous (Aberth–Ehrlich) iteration.
//!
//! The main customers are the two discriminants from the map analysis,
//! whose positive real roots are the singularities sigma_b and sigma, and
//! whose other roots must be kept off the corresponding circle of
//! convergence ("no other root of the same modulus") with an explicit
//! numeric margin.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::{Complex, HPReal};
use crate::poly::{squarefree_part, IntPolynomial, Poly, Ring};

pub const DEFAULT_ITERATION_BUDGET: usize = 500;

type RatPoly = Poly<BigRational>;

fn to_rat_poly(p: &IntPolynomial) -> RatPoly {
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

fn rat_sign(x: &BigRational) -> i8 {
    if Zero::is_zero(x) {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Plain polynomial remainder over the rationals.
fn rem_field(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.degree().expect("remainder by zero polynomial");
    let lb = b.lc();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let q = r.lc().div_exact(&lb);
        let shift = Poly::monomial(q, dr - db);
        r = r.sub(&shift.mul(b));
    }
    r
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            return chain;
        }
        if chain[k - 1].degree() == Some(0) {
            return chain;
        }
        let r = rem_field(&chain[k - 2], &chain[k - 1]).neg();
        chain.push(r);
    }
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for q in chain {
        let s = rat_sign(&eval_rat_poly(q, x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn eval_rat_poly(p: &RatPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::from_integer(0.into());
    for c in p.coeffs().iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// An interval (lo, hi] certified to contain exactly one real root of the
/// squarefree part of the target, with the endpoint signs as certificate.
#[derive(Clone, Debug, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }
}

/// Cauchy bound: every root has modulus < 1 + max |a_i| / |a_d|.
fn cauchy_bound(p: &RatPoly) -> BigRational {
    let lc = p.lc().abs();
    let mut m = BigRational::from_integer(0.into());
    for c in p.coeffs() {
        let v = c.abs() / &lc;
        if v > m {
            m = v;
        }
    }
    m + BigRational::from_integer(1.into())
}

/// Disjoint intervals, one per real root of the squarefree part of p.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<IsolatingInterval>> {
    let sf = squarefree_part(p)?;
    if sf.degree() == Some(0) {
        return Ok(vec![]);
    }
    let q = to_rat_poly(&sf);
    let chain = sturm_chain(&q);
    let bound = cauchy_bound(&q);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((a, b)) = stack.pop() {
        let roots = sign_variations(&chain, &a) - sign_variations(&chain, &b);
        match roots {
            0 => {}
            1 => out.push(IsolatingInterval {
                sign_lo: rat_sign(&eval_rat_poly(&q, &a)),
                sign_hi: rat_sign(&eval_rat_poly(&q, &b)),
                lo: a,
                hi: b,
            }),
            _ => {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Bisects until the width is at most `target_width`; exact sign
/// evaluations keep the certificate intact. A midpoint that happens to be
/// the root itself yields a symmetric interval around it.
pub fn refine(
    p: &IntPolynomial,
    interval: &IsolatingInterval,
    target_width: &BigRational,
) -> Result<IsolatingInterval> {
    let sf = squarefree_part(p)?;
    let q = to_rat_poly(&sf);
    let mut lo = interval.lo.clone();
    let mut hi = interval.hi.clone();
    let mut s_lo = rat_sign(&eval_rat_poly(&q, &lo));
    let mut s_hi = rat_sign(&eval_rat_poly(&q, &hi));
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *target_width {
        let mid = (&lo + &hi) / &two;
        let s_mid = rat_sign(&eval_rat_poly(&q, &mid));
        if s_mid == 0 {
            let half = target_width / &two;
            let lo = &mid - &half;
            let hi = &mid + &half;
            return Ok(IsolatingInterval {
                sign_lo: rat_sign(&eval_rat_poly(&q, &lo)),
                sign_hi: rat_sign(&eval_rat_poly(&q, &hi)),
                lo,
                hi,
            });
        }
        // The sign-change certificate: keep the half whose endpoint signs
        // differ. If the original interval came from a Sturm count its
        // endpoint signs must already differ for a single simple root.
        if s_mid != s_lo {
            hi = mid;
            s_hi = s_mid;
        } else {
            lo = mid;
            s_lo = s_mid;
        }
    }
    Ok(IsolatingInterval {
        lo,
        hi,
        sign_lo: s_lo,
        sign_hi: s_hi,
    })
}

/// One approximated root with its residual-based error bound
/// deg(p) * |p(z) / p'(z)|, which bounds the distance to a true root.
#[derive(Clone, Debug)]
pub struct RootApprox {
    pub value: Complex,
    pub residual_bound: HPReal,
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub precision_bits: usize,
    pub roots: Vec<RootApprox>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub residual_bound: f64,
}

impl RootSet {
    pub fn report(&self) -> Vec<RootReport> {
        self.roots
            .iter()
            .map(|r| RootReport {
                re: r.value.re.to_f64(),
                im: r.value.im.to_f64(),
                modulus: r.value.modulus().to_f64(),
                residual_bound: r.residual_bound.to_f64(),
            })
            .collect()
    }
}

fn eval_complex(coeffs: &[HPReal], z: &Complex) -> Complex {
    let prec = z.re.precision();
    let mut acc = Complex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re = &acc.re + c;
    }
    acc
}

/// All complex roots of the squarefree part by simultaneous iteration.
pub fn all_roots(p: &IntPolynomial, precision_bits: usize) -> Result<RootSet> {
    all_roots_with_budget(p, precision_bits, DEFAULT_ITERATION_BUDGET)
}

pub fn all_roots_with_budget(
    p: &IntPolynomial,
    precision_bits: usize,
    budget: usize,
) -> Result<RootSet> {
    let sf = squarefree_part(p)?;
    let d = match sf.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeTooSmall { need: 1, got: 0 }),
        Some(d) => d,
    };
    let prec = precision_bits;
    let coeffs: Vec<HPReal> = sf
        .coeffs()
        .iter()
        .map(|c| HPReal::from_rational(&BigRational::from_integer(c.clone()), prec))
        .collect();
    let deriv: Vec<HPReal> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| &HPReal::from_int(k as i64, prec) * c)
        .collect();

    // Initial guesses on a circle of the Cauchy-bound radius, phase-shifted
    // off the axes so real-rooted polynomials do not start on a symmetry.
    let radius = {
        let q = to_rat_poly(&sf);
        let b = cauchy_bound(&q);
        (b.numer().to_string().parse::<f64>().unwrap_or(f64::MAX)
            / b.denom().to_string().parse::<f64>().unwrap_or(1.0))
        .min(1e6)
    };
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.7;
            Complex::new(
                HPReal::from_f64(radius * theta.cos(), prec),
                HPReal::from_f64(radius * theta.sin(), prec),
            )
        })
        .collect();

    // Convergence threshold 2^-(prec - 16) on the Newton correction size.
    let threshold = {
        let mut t = HPReal::from_int(1, prec);
        let half = HPReal::from_f64(0.5, prec);
        for _ in 0..prec.saturating_sub(16) {
            t = &t * &half;
        }
        t
    };

    for _ in 0..budget {
        let mut max_step = HPReal::zero(prec);
        for i in 0..d {
            let pv = eval_complex(&coeffs, &z[i]);
            let dv = eval_complex(&deriv, &z[i]);
            if dv.norm_sq().is_zero() {
                continue;
            }
            let w = pv.div(&dv);
            let mut s = Complex::zero(prec);
            for j in 0..d {
                if j != i {
                    let diff = z[i].sub(&z[j]);
                    s = s.add(&Complex::from_real(HPReal::from_int(1, prec)).div(&diff));
                }
            }
            let denom = Complex::from_real(HPReal::from_int(1, prec)).sub(&w.mul(&s));
            let step = w.div(&denom);
            z[i] = z[i].sub(&step);
            let m = step.modulus();
            if m > max_step {
                max_step = m;
            }
        }
        if max_step < threshold {
            let dn = HPReal::from_int(d as i64, prec);
            let mut roots: Vec<RootApprox> = z
                .iter()
                .map(|zi| {
                    let pv = eval_complex(&coeffs, zi);
                    let dv = eval_complex(&deriv, zi);
                    RootApprox {
                        value: zi.clone(),
                        residual_bound: &dn * &pv.div(&dv).modulus(),
                    }
                })
                .collect();
            roots.sort_by(|a, b| {
                let ka = (a.value.modulus().to_f64(), a.value.re.to_f64(), a.value.im.to_f64());
                let kb = (b.value.modulus().to_f64(), b.value.re.to_f64(), b.value.im.to_f64());
                ka.partial_cmp(&kb).unwrap()
            });
            return Ok(RootSet {
                precision_bits: prec,
                roots,
            });
        }
    }
    Err(Error::NoConvergence(budget))
}

/// Certifies the dominance claim for a positive real root r:
/// no other root has modulus equal to |r|, with the modulus gap exceeding
/// `margin` times the combined residual bounds. Returns the smallest
/// gap-to-bound ratio observed.
pub fn certify_unique_modulus(set: &RootSet, target: &HPReal, margin: u32) -> Result<f64> {
    let target_idx = set
        .roots
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let da = (&a.value.re - target).abs().to_f64() + a.value.im.to_f64().abs();
            let db = (&b.value.re - target).abs().to_f64() + b.value.im.to_f64().abs();
            da.partial_cmp(&db).unwrap()
        })
        .map(|(i, _)| i)
        .ok_or(Error::ZeroPolynomial)?;
    let r0 = &set.roots[target_idx];
    let m0 = r0.value.modulus();
    let mut worst = f64::INFINITY;
    for (i, r) in set.roots.iter().enumerate() {
        if i == target_idx {
            continue;
        }
        let gap = (&r.value.modulus() - &m0).abs();
        let bound = &r.residual_bound + &r0.residual_bound;
        let ratio = if bound.is_zero() {
            f64::INFINITY
        } else {
            (&gap / &bound).to_f64()
        };
        if ratio < worst {
            worst = ratio;
        }
        if gap <= &HPReal::from_int(margin as i64, set.precision_bits) * &bound {
            return Err(Error::VerificationFailed {
                module: "rootfind".into(),
                invariant: "modulus dominance".into(),
                order: Some(i),
            });
        }
    }
    Ok(worst)
}
