//! Singularity analysis: the characteristic system for the network series,
//! square-root branch expansions, implicit derivatives, and every named
//! analytic constant for both the graph and the map families.
//!
//! Everything runs at a caller-chosen bit precision (default 256). Scalars
//! are length-1 jets so the same Phi/Psi code serves plain Newton solves,
//! implicit differentiation and branch expansions.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::{FloatSeries, HPReal};
use crate::poly::{BiPolynomial, IntPolynomial, Poly};
use crate::series::RatSeries;

/// Default seeds, from coarse scans of series evaluations; all inside the
/// disk of convergence.
const SEED_RHO_B: f64 = 0.0928;
const SEED_S0: f64 = 0.419;
const SEED_F0: f64 = 0.1645;

fn one(prec: usize) -> HPReal {
    HPReal::from_int(1, prec)
}

fn fs_const(v: &HPReal, len: usize) -> FloatSeries {
    FloatSeries::constant(v.clone(), len)
}

/// Phi(x,S,F) = exp( x(1+F)^2 (1 + S/2) ) - 1, on jets.
fn phi_j(x: &FloatSeries, s: &FloatSeries, f: &FloatSeries) -> FloatSeries {
    let len = x.len().min(s.len()).min(f.len());
    let prec = x.coeff(0).precision();
    let one_f = fs_const(&one(prec), len).add(f);
    let half_s = fs_const(&one(prec), len).add(&s.scale(&HPReal::from_f64(0.5, prec)));
    let a = x.mul(&one_f.powi(2)).mul(&half_s);
    a.exp().sub(&fs_const(&one(prec), len))
}

/// Psi(x,S,F) = x (1+F)^3 (1+S)^3, on jets.
fn psi_j(x: &FloatSeries, s: &FloatSeries, f: &FloatSeries) -> FloatSeries {
    let len = x.len().min(s.len()).min(f.len());
    let prec = x.coeff(0).precision();
    let one_f = fs_const(&one(prec), len).add(f);
    let one_s = fs_const(&one(prec), len).add(s);
    x.mul(&one_f.powi(3)).mul(&one_s.powi(3))
}

fn scalar(v: &HPReal) -> FloatSeries {
    FloatSeries::constant(v.clone(), 1)
}

fn phi(x: &HPReal, s: &HPReal, f: &HPReal) -> HPReal {
    phi_j(&scalar(x), &scalar(s), &scalar(f)).coeff(0).clone()
}

fn psi(x: &HPReal, s: &HPReal, f: &HPReal) -> HPReal {
    psi_j(&scalar(x), &scalar(s), &scalar(f)).coeff(0).clone()
}

/// Analytic first partials, used for Jacobians and lifting multipliers.
/// With A = x(1+F)^2(1+S/2): Phi_S = e^A x(1+F)^2/2, Phi_F = e^A 2x(1+F)(1+S/2).
fn phi_partials(x: &HPReal, s: &HPReal, f: &HPReal) -> (HPReal, HPReal, HPReal) {
    let prec = x.precision();
    let one_f = &one(prec) + f;
    let one_hs = &one(prec) + &(&HPReal::from_f64(0.5, prec) * s);
    let ea = (&(x * &one_f.powi(2)) * &one_hs).exp();
    let p_x = &ea * &(&one_f.powi(2) * &one_hs);
    let p_s = &(&ea * &(x * &one_f.powi(2))) * &HPReal::from_f64(0.5, prec);
    let p_f = &(&ea * &(&HPReal::from_int(2, prec) * &(x * &one_f))) * &one_hs;
    (p_x, p_s, p_f)
}

/// Psi_x = (1+F)^3(1+S)^3, Psi_S = 3x(1+F)^3(1+S)^2, Psi_F = 3x(1+F)^2(1+S)^3.
fn psi_partials(x: &HPReal, s: &HPReal, f: &HPReal) -> (HPReal, HPReal, HPReal) {
    let prec = x.precision();
    let one_f = &one(prec) + f;
    let one_s = &one(prec) + s;
    let p_x = &one_f.powi(3) * &one_s.powi(3);
    let three = HPReal::from_int(3, prec);
    let p_s = &(&three * x) * &(&one_f.powi(3) * &one_s.powi(2));
    let p_f = &(&three * x) * &(&one_f.powi(2) * &one_s.powi(3));
    (p_x, p_s, p_f)
}

/// Gaussian elimination with partial pivoting for tiny systems.
fn linear_solve(mut a: Vec<Vec<HPReal>>, mut b: Vec<HPReal>) -> Result<Vec<HPReal>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot][col].is_zero() {
            return Err(Error::Domain("singular linear system".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                a[row][k] = &a[row][k] - &(&factor * &a[col][k]);
            }
            b[row] = &b[row] - &(&factor * &b[col]);
        }
    }
    let mut x = b;
    for col in (0..n).rev() {
        for k in (col + 1)..n {
            let t = &x[col] - &(&a[col][k] * &x[k]);
            x[col] = t;
        }
        x[col] = &x[col] / &a[col][col];
    }
    Ok(x)
}

#[derive(Clone, Debug)]
pub struct CharacteristicPoint {
    pub rho_b: HPReal,
    pub s0: HPReal,
    pub f0: HPReal,
}

impl CharacteristicPoint {
    pub fn e0(&self) -> HPReal {
        &one(self.rho_b.precision()) + &self.f0
    }
}

/// The three characteristic equations: both fixed points plus the branch
/// condition det(I - J_{(S,F)}) = 0.
fn char_residual(x: &HPReal, s: &HPReal, f: &HPReal) -> Vec<HPReal> {
    let g1 = &phi(x, s, f) - f;
    let g2 = &psi(x, s, f) - s;
    let (_, phi_s, phi_f) = phi_partials(x, s, f);
    let (_, psi_s, psi_f) = psi_partials(x, s, f);
    let prec = x.precision();
    let g3 = &(&(&one(prec) - &phi_f) * &(&one(prec) - &psi_s)) - &(&phi_s * &psi_f);
    vec![g1, g2, g3]
}

/// Newton solve of the characteristic system; the Jacobian is formed by
/// central finite differences at a step far above the rounding floor, so
/// the exact residual still converges quadratically until the very end.
pub fn solve_characteristic_system(prec: usize) -> Result<CharacteristicPoint> {
    let mut v = [
        HPReal::from_f64(SEED_RHO_B, prec),
        HPReal::from_f64(SEED_S0, prec),
        HPReal::from_f64(SEED_F0, prec),
    ];
    let h = {
        let mut t = one(prec);
        let half = HPReal::from_f64(0.5, prec);
        for _ in 0..prec / 3 {
            t = &t * &half;
        }
        t
    };
    let tol = newton_tolerance(prec);
    for _ in 0..200 {
        let g = char_residual(&v[0], &v[1], &v[2]);
        if g.iter().all(|gi| gi.abs() < tol) {
            return Ok(CharacteristicPoint {
                rho_b: v[0].clone(),
                s0: v[1].clone(),
                f0: v[2].clone(),
            });
        }
        let mut jac = vec![vec![HPReal::zero(prec); 3]; 3];
        for col in 0..3 {
            let mut hi = v.clone();
            let mut lo = v.clone();
            hi[col] = &hi[col] + &h;
            lo[col] = &lo[col] - &h;
            let ghi = char_residual(&hi[0], &hi[1], &hi[2]);
            let glo = char_residual(&lo[0], &lo[1], &lo[2]);
            for row in 0..3 {
                jac[row][col] = &(&ghi[row] - &glo[row]) / &(&HPReal::from_int(2, prec) * &h);
            }
        }
        let delta = linear_solve(jac, g)?;
        for (vi, d) in v.iter_mut().zip(&delta) {
            *vi = &*vi - d;
        }
    }
    Err(Error::NewtonDiverged)
}

// Residual target 2^-(prec-48): comfortably above the rounding floor of
// values computed at prec bits, far below anything the reports need.
fn newton_tolerance(prec: usize) -> HPReal {
    let mut t = one(prec);
    let half = HPReal::from_f64(0.5, prec);
    for _ in 0..prec.saturating_sub(48) {
        t = &t * &half;
    }
    t
}

/// Solves S = Psi(x, S, F) for S as a jet, given scalar seed for the base;
/// the one-order-per-iteration lifting uses the contraction multiplier
/// 1/(1 - Psi_S) frozen at the base point.
fn solve_s_star(x: &FloatSeries, f: &FloatSeries, seed: &HPReal) -> Result<FloatSeries> {
    let len = x.len().min(f.len());
    let prec = x.coeff(0).precision();
    let x0 = x.coeff(0).clone();
    let f0 = f.coeff(0).clone();
    // scalar Newton for the base value
    let mut s = seed.clone();
    let tol = newton_tolerance(prec);
    let mut converged = false;
    for _ in 0..200 {
        let g = &psi(&x0, &s, &f0) - &s;
        let (_, psi_s, _) = psi_partials(&x0, &s, &f0);
        let dg = &psi_s - &one(prec);
        s = &s - &(&g / &dg);
        if g.abs() < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NewtonDiverged);
    }
    let (_, psi_s, _) = psi_partials(&x0, &s, &f0);
    let lam = &one(prec) / &(&one(prec) - &psi_s);
    let mut jet = fs_const(&s, len);
    for _ in 0..len + 3 {
        let resid = psi_j(x, &jet, f).sub(&jet);
        jet = jet.add(&resid.scale(&lam));
    }
    Ok(jet)
}

/// Theta(x, F) = Phi(x, S*(x,F), F) as a jet in whatever variable the
/// x- and F-jets carry.
fn theta_j(x: &FloatSeries, f: &FloatSeries, s_seed: &HPReal) -> Result<FloatSeries> {
    let s = solve_s_star(x, f, s_seed)?;
    Ok(phi_j(x, &s, f))
}

#[derive(Clone, Debug)]
pub struct ThetaDerivatives {
    pub theta_x: HPReal,
    pub theta_f: HPReal,
    pub theta_ff: HPReal,
}

/// Theta partials by order-3 jets.
pub fn theta_derivatives_jets(cp: &CharacteristicPoint, prec: usize) -> Result<ThetaDerivatives> {
    let in_x = theta_j(
        &FloatSeries::variable(cp.rho_b.clone(), 3),
        &fs_const(&cp.f0, 3),
        &cp.s0,
    )?;
    let in_f = theta_j(
        &fs_const(&cp.rho_b, 3),
        &FloatSeries::variable(cp.f0.clone(), 3),
        &cp.s0,
    )?;
    Ok(ThetaDerivatives {
        theta_x: in_x.coeff(1).clone(),
        theta_f: in_f.coeff(1).clone(),
        theta_ff: &HPReal::from_int(2, prec) * in_f.coeff(2),
    })
}

/// Theta partials by central finite differences; the second, independent
/// route guarding against branch-selection mistakes in S*.
pub fn theta_derivatives_fd(cp: &CharacteristicPoint, prec: usize) -> Result<ThetaDerivatives> {
    let theta = |x: &HPReal, f: &HPReal| -> Result<HPReal> {
        Ok(theta_j(&scalar(x), &scalar(f), &cp.s0)?.coeff(0).clone())
    };
    let h = {
        let mut t = one(prec);
        let half = HPReal::from_f64(0.5, prec);
        for _ in 0..prec / 4 {
            t = &t * &half;
        }
        t
    };
    let two_h = &HPReal::from_int(2, prec) * &h;
    let t_xp = theta(&(&cp.rho_b + &h), &cp.f0)?;
    let t_xm = theta(&(&cp.rho_b - &h), &cp.f0)?;
    let t_fp = theta(&cp.rho_b, &(&cp.f0 + &h))?;
    let t_fm = theta(&cp.rho_b, &(&cp.f0 - &h))?;
    let t_00 = theta(&cp.rho_b, &cp.f0)?;
    Ok(ThetaDerivatives {
        theta_x: &(&t_xp - &t_xm) / &two_h,
        theta_f: &(&t_fp - &t_fm) / &two_h,
        theta_ff: &(&(&t_fp + &t_fm) - &(&HPReal::from_int(2, prec) * &t_00)) / &(&h * &h),
    })
}

fn agree_to_digits(a: &HPReal, b: &HPReal, digits: i32) -> bool {
    let scale = a.abs().to_f64().max(b.abs().to_f64()).max(1e-300);
    (a - b).abs().to_f64() <= scale * 10f64.powi(-digits)
}

/// E1 = sqrt(2 rho_b Theta_x / Theta_FF), gated on the two derivative
/// routes agreeing to 6 digits and on Theta_F vanishing at the point.
pub fn network_amplitude(cp: &CharacteristicPoint, prec: usize) -> Result<HPReal> {
    let jets = theta_derivatives_jets(cp, prec)?;
    let fd = theta_derivatives_fd(cp, prec)?;
    if !agree_to_digits(&jets.theta_x, &fd.theta_x, 6)
        || !agree_to_digits(&jets.theta_ff, &fd.theta_ff, 6)
    {
        return Err(Error::VerificationFailed {
            module: "singular".into(),
            invariant: "theta derivative routes agree".into(),
            order: None,
        });
    }
    // The fixed point is F = Theta(x, F), so the branch condition is
    // Theta_F = 1 (equivalently, d(Theta - F)/dF = 0 in the source's
    // normalization).
    if (&jets.theta_f - &one(prec)).abs().to_f64() > 1e-30 {
        return Err(Error::VerificationFailed {
            module: "singular".into(),
            invariant: "theta_F = 1 at the branch point".into(),
            order: None,
        });
    }
    let two = HPReal::from_int(2, prec);
    Ok((&(&(&two * &cp.rho_b) * &jets.theta_x) / &jets.theta_ff).sqrt())
}

/// Branch expansions in X = sqrt(1 - x/rho_b), truncated at X^4.
#[derive(Clone, Debug)]
pub struct TwoConnectedExpansion {
    pub b0: HPReal,
    pub b2: HPReal,
    pub b3: HPReal,
    /// E = e0 - e1 X + ... read from the same expansion.
    pub e1: HPReal,
    /// X^1 coefficient of B; must vanish and is reported for auditing.
    pub x1_residual: HPReal,
    pub e_series: FloatSeries,
    pub s_series: FloatSeries,
    pub b_series: FloatSeries,
}

/// Expands E, s = S(xE^3) and then B around the branch point by first
/// solving x as a smooth function of F (the branch is vertical in F, so
/// x(F) is analytic with a double zero), then inverting X^2 = 1 - x/rho_b.
pub fn two_connected_expansion(
    cp: &CharacteristicPoint,
    prec: usize,
) -> Result<TwoConnectedExpansion> {
    const LEN: usize = 5;
    let jets = theta_derivatives_jets(cp, prec)?;
    // Solve Theta(x(delta), F0 + delta) = F0 + delta for the jet x(delta).
    let f_jet = FloatSeries::variable(cp.f0.clone(), LEN);
    let mut x_jet = fs_const(&cp.rho_b, LEN);
    for _ in 0..LEN + 3 {
        let h = theta_j(&x_jet, &f_jet, &cp.s0)?.sub(&f_jet);
        x_jet = x_jet.sub(&h.scale(&(&one(prec) / &jets.theta_x)));
    }
    // x(delta) = rho_b + a2 d^2 + a3 d^3 + a4 d^4; a1 vanishes because
    // Theta_F = 0. Then X^2 = 1 - x/rho_b = A2 d^2 + A3 d^3 + A4 d^4.
    if x_jet.coeff(1).abs().to_f64() > 1e-30 {
        return Err(Error::VerificationFailed {
            module: "singular".into(),
            invariant: "x(F) has a double zero at the branch point".into(),
            order: Some(1),
        });
    }
    let a = |k: usize| -> HPReal { -&(x_jet.coeff(k) / &cp.rho_b) };
    let (a2, a3, a4) = (a(2), a(3), a(4));
    if !(a2 > HPReal::zero(prec)) {
        return Err(Error::Domain("branch curvature is not positive".into()));
    }
    // Invert: delta = u1 X + u2 X^2 + u3 X^3 with u1 < 0 on the physical
    // branch (E decreases towards the singularity from the left).
    let u1 = -&(&one(prec) / &a2.sqrt());
    let u2 = -&(&(&a3 * &(&u1 * &u1)) / &(&HPReal::from_int(2, prec) * &a2));
    let u3 = {
        let t = &(&a2 * &(&u2 * &u2))
            + &(&(&(&HPReal::from_int(3, prec) * &a3) * &(&u1 * &u1)) * &u2);
        let t = &t + &(&a4 * &u1.powi(4));
        -&(&t / &(&(&HPReal::from_int(2, prec) * &a2) * &u1))
    };
    let e_series = FloatSeries::from_coeffs(vec![
        cp.e0(),
        u1.clone(),
        u2,
        u3,
        HPReal::zero(prec),
    ]);
    // x as a jet in X: exactly rho_b (1 - X^2).
    let x_in_x = FloatSeries::from_coeffs(vec![
        cp.rho_b.clone(),
        HPReal::zero(prec),
        -&cp.rho_b,
        HPReal::zero(prec),
        HPReal::zero(prec),
    ]);
    let f_in_x = e_series.sub(&fs_const(&one(prec), LEN));
    let s_series = solve_s_star(&x_in_x, &f_in_x, &cp.s0)?;
    // B = (x^2/2) ( E - (x E^3 / 12)(s^2 + 5s + 8) )
    let b_series = b_from_parts(&x_in_x, &e_series, &s_series, prec);
    let x1 = b_series.coeff(1).clone();
    if x1.abs().to_f64() > 1e-30 {
        return Err(Error::VerificationFailed {
            module: "singular".into(),
            invariant: "two-connected expansion has no X^1 term".into(),
            order: Some(1),
        });
    }
    Ok(TwoConnectedExpansion {
        b0: b_series.coeff(0).clone(),
        b2: -b_series.coeff(2),
        b3: b_series.coeff(3).clone(),
        e1: -&u1,
        x1_residual: x1,
        e_series,
        s_series,
        b_series,
    })
}

fn b_from_parts(
    x: &FloatSeries,
    e: &FloatSeries,
    s: &FloatSeries,
    prec: usize,
) -> FloatSeries {
    let len = x.len();
    let five = HPReal::from_int(5, prec);
    let eight = HPReal::from_int(8, prec);
    let quad = s
        .mul(s)
        .add(&s.scale(&five))
        .add(&fs_const(&eight, len));
    let inner = e.sub(
        &x.mul(&e.powi(3))
            .scale(&(&one(prec) / &HPReal::from_int(12, prec)))
            .mul(&quad),
    );
    x.mul(x)
        .scale(&HPReal::from_f64(0.5, prec))
        .mul(&inner)
}

/// Order-3 jets of E and s = S(xE^3) at a point x0 strictly inside the
/// disk, by solving the two-equation system and lifting with the frozen
/// inverse of I - J.
pub fn implicit_derivatives_e(x0: &HPReal, prec: usize) -> Result<(FloatSeries, FloatSeries)> {
    const LEN: usize = 4;
    // base solve by 2-variable Newton with analytic Jacobian
    let mut s = HPReal::from_f64(0.1, prec);
    let mut f = HPReal::from_f64(0.05, prec);
    let tol = newton_tolerance(prec);
    let mut converged = false;
    for _ in 0..300 {
        let g1 = &phi(x0, &s, &f) - &f;
        let g2 = &psi(x0, &s, &f) - &s;
        let (_, phi_s, phi_f) = phi_partials(x0, &s, &f);
        let (_, psi_s, psi_f) = psi_partials(x0, &s, &f);
        let jac = vec![
            vec![&phi_s - &HPReal::zero(prec), &phi_f - &one(prec)],
            vec![&psi_s - &one(prec), psi_f.clone()],
        ];
        // variables ordered (s, f): dg1/ds = phi_s, dg1/df = phi_f - 1, etc.
        let delta = linear_solve(jac, vec![g1.clone(), g2.clone()])?;
        s = &s - &delta[0];
        f = &f - &delta[1];
        if g1.abs() < tol && g2.abs() < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NewtonDiverged);
    }
    // lifting multiplier: inverse of I - J with J the (S,F) Jacobian
    let (_, phi_s, phi_f) = phi_partials(x0, &s, &f);
    let (_, psi_s, psi_f) = psi_partials(x0, &s, &f);
    let det = &(&(&one(prec) - &psi_s) * &(&one(prec) - &phi_f)) - &(&phi_s * &psi_f);
    if det.abs().to_f64() < 1e-20 {
        return Err(Error::Domain(
            "Jacobian is singular: x0 is at or beyond the branch point".into(),
        ));
    }
    // (I - J)^-1 for J = [[psi_s, psi_f], [phi_s, phi_f]] acting on (S, F)
    let l11 = &(&one(prec) - &phi_f) / &det;
    let l12 = &psi_f / &det;
    let l21 = &phi_s / &det;
    let l22 = &(&one(prec) - &psi_s) / &det;
    let x_jet = FloatSeries::variable(x0.clone(), LEN);
    let mut s_jet = fs_const(&s, LEN);
    let mut f_jet = fs_const(&f, LEN);
    for _ in 0..LEN + 3 {
        let r_s = psi_j(&x_jet, &s_jet, &f_jet).sub(&s_jet);
        let r_f = phi_j(&x_jet, &s_jet, &f_jet).sub(&f_jet);
        let new_s = s_jet.add(&r_s.scale(&l11)).add(&r_f.scale(&l12));
        let new_f = f_jet.add(&r_s.scale(&l21)).add(&r_f.scale(&l22));
        s_jet = new_s;
        f_jet = new_f;
    }
    let e_jet = f_jet.add(&fs_const(&one(prec), LEN));
    Ok((e_jet, s_jet))
}

/// Order-3 jet of B at x0 < rho_b.
pub fn b_jet(x0: &HPReal, prec: usize) -> Result<FloatSeries> {
    let (e_jet, s_jet) = implicit_derivatives_e(x0, prec)?;
    let x_jet = FloatSeries::variable(x0.clone(), 4);
    Ok(b_from_parts(&x_jet, &e_jet, &s_jet, prec))
}

#[derive(Clone, Debug)]
pub struct ConnectedConstants {
    pub tau: HPReal,
    pub e_tau: HPReal,
    pub rho: HPReal,
    pub gamma: HPReal,
    pub c0: HPReal,
    pub c2: HPReal,
    pub c3: HPReal,
    pub g0: HPReal,
    pub g2: HPReal,
    pub g3: HPReal,
}

/// Solves tau B''(tau) = 1, then evaluates the section-3.2 closed forms
/// for the connected and all-graphs constants.
pub fn connected_constants(prec: usize) -> Result<ConnectedConstants> {
    let cp = solve_characteristic_system(prec)?;
    // tau B''(tau) = 1 pins tau extremely close to rho_b: B'' stays small
    // until the (1 - x/rho_b)^{-1/2} blow-up takes over, and the 3/2-term
    // amplitude is tiny. Newton directly in tau therefore overshoots past
    // rho_b; parametrise tau = rho_b (1 - w^2) instead, where
    // h(w) = tau B''(tau) - 1 is a smooth, monotone function of w > 0.
    let mut w = HPReal::from_f64(1e-3, prec);
    let tol = newton_tolerance(prec);
    let mut converged = false;
    let mut tau = HPReal::zero(prec);
    for _ in 0..200 {
        tau = &cp.rho_b * &(&one(prec) - &(&w * &w));
        let b = b_jet(&tau, prec)?;
        let b2 = &HPReal::from_int(2, prec) * b.coeff(2);
        let b3 = &HPReal::from_int(6, prec) * b.coeff(3);
        let h = &(&tau * &b2) - &one(prec);
        // dh/dw = dtau/dw * d(tau B'')/dtau with dtau/dw = -2 rho_b w.
        let dh_dtau = &b2 + &(&tau * &b3);
        let dh = &(&(&HPReal::from_int(-2, prec) * &cp.rho_b) * &w) * &dh_dtau;
        let step = &h / &dh;
        w = &w - &step;
        if !(HPReal::zero(prec) < w) {
            // Fold back into the physical half-line; h is even in w.
            w = -&w;
        }
        if h.abs() < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NewtonDiverged);
    }
    if !(tau < cp.rho_b) {
        return Err(Error::VerificationFailed {
            module: "singular".into(),
            invariant: "tau < rho_b (subcritical block substitution)".into(),
            order: None,
        });
    }
    let b = b_jet(&tau, prec)?;
    let (b0, b1) = (b.coeff(0).clone(), b.coeff(1).clone());
    let b2 = &HPReal::from_int(2, prec) * b.coeff(2);
    let b3 = &HPReal::from_int(6, prec) * b.coeff(3);
    let rho = &tau * &(-&b1).exp();
    let gamma = &one(prec) / &rho;
    let c0 = &(&tau * &(&(&one(prec) + &rho.ln()) - &tau.ln())) + &b0;
    let c2 = tau.clone();
    // The pointed series xC'(x) = F(x) expands as tau - a X + O(X^2) with
    // a = sqrt(2 rho e^{B'} / (tau B''' - tau B''^2 + 2 B'')); integrating
    // -a X / rho term-by-term gives the singular term (2/3) a X^3 of C, so
    // C3 = (2/3) sqrt(2 rho e^{B'} / (tau B''' - tau B''^2 + 2 B'')).
    // The source material prints the same expression with prefactor 3/2
    // (0.00027194); the coefficient fit of the exact c_n rejects that value
    // and confirms the 2/3 integration constant (see the asymptotics tests).
    let denom = &(&(&tau * &b3) - &(&tau * &(&b2 * &b2))) + &(&HPReal::from_int(2, prec) * &b2);
    let c3 = &(&HPReal::from_int(2, prec) / &HPReal::from_int(3, prec))
        * &(&(&(&HPReal::from_int(2, prec) * &rho) * &b1.exp()) / &denom).sqrt();
    let g0 = c0.exp();
    let g2 = &c2 * &g0;
    let g3 = &c3 * &g0;
    let (e_jet, _) = implicit_derivatives_e(&tau, prec)?;
    Ok(ConnectedConstants {
        tau,
        e_tau: e_jet.coeff(0).clone(),
        rho,
        gamma,
        c0,
        c2,
        c3,
        g0,
        g2,
        g3,
    })
}

/// A square-root branch point of an algebraic curve p(z,y) = 0:
/// y = y0 + a1 sqrt(1 - z/location) + O(1 - z/location) on the branch that
/// carries the counting series.
#[derive(Clone, Debug)]
pub struct AlgebraicBranchPoint {
    pub location: HPReal,
    pub y0: HPReal,
    pub a1_abs: HPReal,
    /// a1 with the sign matching the counting branch approached from the
    /// left (negative for an increasing counting series).
    pub a1_signed: HPReal,
}

fn unipoly_eval_hp(p: &IntPolynomial, z: &HPReal, prec: usize) -> HPReal {
    let mut acc = HPReal::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * z) + &HPReal::from_rational(&BigRational::from_integer(c.clone()), prec);
    }
    acc
}

fn bipoly_eval_hp(p: &BiPolynomial, z: &HPReal, y: &HPReal, prec: usize) -> HPReal {
    let mut acc = HPReal::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * y) + &unipoly_eval_hp(c, z, prec);
    }
    acc
}

fn bipoly_partial_z(p: &BiPolynomial) -> BiPolynomial {
    Poly::new(p.coeffs().iter().map(|c| c.derivative()).collect())
}

/// Follows the counting branch of p(z, y) = 0 from z = location/2 (seeded
/// by a truncated-series evaluation) up to the branch point, then expands.
pub fn algebraic_branch_expansion(
    p: &BiPolynomial,
    location: &HPReal,
    series: &RatSeries,
    prec: usize,
) -> Result<AlgebraicBranchPoint> {
    let p_y = p.derivative();
    let p_yy = p_y.derivative();
    let p_z = bipoly_partial_z(p);
    let tol = newton_tolerance(prec);

    let newton_y = |z: &HPReal, seed: &HPReal, poly: &BiPolynomial, dpoly: &BiPolynomial| -> Result<HPReal> {
        let mut y = seed.clone();
        for _ in 0..200 {
            let v = bipoly_eval_hp(poly, z, &y, prec);
            let d = bipoly_eval_hp(dpoly, z, &y, prec);
            if d.is_zero() {
                return Err(Error::NewtonDiverged);
            }
            let step = &v / &d;
            y = &y - &step;
            if step.abs() < tol {
                return Ok(y);
            }
        }
        Err(Error::NewtonDiverged)
    };

    // Seed at z = location/2 from the truncated counting series.
    let half = &HPReal::from_f64(0.5, prec) * location;
    let mut z = half.clone();
    let mut y = {
        let mut acc = HPReal::zero(prec);
        for n in (0..=series.order()).rev() {
            acc = &(&acc * &z) + &HPReal::from_rational(&series.coeff(n), prec);
        }
        acc
    };
    y = newton_y(&z, &y, p, &p_y)?;

    // Geometric continuation of the gap location - z down to 1e-5.
    let steps = 400;
    let ratio = HPReal::from_f64((2e-5f64).powf(1.0 / steps as f64), prec);
    let mut gap = half;
    for _ in 0..steps {
        gap = &gap * &ratio;
        z = location - &gap;
        y = newton_y(&z, &y, p, &p_y)?;
    }
    let y_near = y.clone();
    let x_near = (&gap / location).sqrt(); // = sqrt(1 - z/location)

    // Branch value: p_y(location, y0) = 0 near the continued branch.
    let y0 = newton_y(location, &y_near, &p_y, &p_yy)?;
    let pz_v = bipoly_eval_hp(&p_z, location, &y0, prec);
    let pyy_v = bipoly_eval_hp(&p_yy, location, &y0, prec);
    if pyy_v.abs().to_f64() < 1e-20 {
        return Err(Error::Domain(
            "p_yy vanishes at the branch point: not a square-root singularity".into(),
        ));
    }
    // p_z (z - loc) + p_yy (y-y0)^2/2 = 0  =>  (y-y0)^2 = 2 loc p_z/p_yy X^2
    let a1_sq = &(&(&HPReal::from_int(2, prec) * location) * &pz_v) / &pyy_v;
    if a1_sq.is_negative() {
        return Err(Error::Domain(
            "branch coefficient is not real: wrong branch".into(),
        ));
    }
    let a1_abs = a1_sq.sqrt();
    let slope = &(&y_near - &y0) / &x_near;
    let a1_signed = if slope.is_negative() {
        -&a1_abs
    } else {
        a1_abs.clone()
    };
    // The continuation slope must match the expansion coefficient.
    if !agree_to_digits(&slope.abs(), &a1_abs, 2) {
        return Err(Error::VerificationFailed {
            module: "singular".into(),
            invariant: "continuation slope matches branch coefficient".into(),
            order: None,
        });
    }
    Ok(AlgebraicBranchPoint {
        location: location.clone(),
        y0,
        a1_abs,
        a1_signed,
    })
}

/// One named analytic constant with its defining formula.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantEntry {
    pub name: String,
    pub value: f64,
    pub formula: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub theorem: u8,
    pub precision_bits: usize,
    pub constants: Vec<ConstantEntry>,
}

impl ConstantsReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.constants
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.value)
    }
}

/// All Theorem-1 constants (labelled chordal planar graphs).
pub fn theorem1_report(prec: usize) -> Result<ConstantsReport> {
    let cp = solve_characteristic_system(prec)?;
    let e1 = network_amplitude(&cp, prec)?;
    let exp = two_connected_expansion(&cp, prec)?;
    let cc = connected_constants(prec)?;
    let pi = HPReal::pi(prec);
    let b_small = &(&HPReal::from_int(3, prec) * &exp.b3)
        / &(&HPReal::from_int(4, prec) * &pi.sqrt());
    let gamma_b = &one(prec) / &cp.rho_b;
    let mut constants = vec![];
    let mut push = |name: &str, v: &HPReal, formula: &str| {
        constants.push(ConstantEntry {
            name: name.into(),
            value: v.to_f64(),
            formula: formula.into(),
        });
    };
    push("rho_b", &cp.rho_b, "characteristic system root");
    push("E0", &cp.e0(), "E(rho_b)");
    push("S0", &cp.s0, "S(rho_b E0^3)");
    push("E1", &e1, "sqrt(2 rho_b Theta_x / Theta_FF)");
    push("B0", &exp.b0, "X^0 of B at rho_b");
    push("B2", &exp.b2, "-X^2 of B at rho_b");
    push("B3", &exp.b3, "X^3 of B at rho_b");
    push("b", &b_small, "3 B3 / (4 sqrt(pi))");
    push("gamma_b", &gamma_b, "1/rho_b");
    push("tau", &cc.tau, "root of tau B''(tau) = 1");
    push("E_tau", &cc.e_tau, "E(tau)");
    push("rho", &cc.rho, "tau e^{-B'(tau)}");
    push("gamma", &cc.gamma, "1/rho");
    push("C0", &cc.c0, "tau(1 + ln rho - ln tau) + B(tau)");
    push("C2", &cc.c2, "tau");
    push("C3", &cc.c3, "(2/3) sqrt(2 rho e^{B'} / (tau B''' - tau B''^2 + 2 B''))");
    push("G0", &cc.g0, "e^{C0}");
    push("G2", &cc.g2, "C2 e^{C0}");
    push("G3", &cc.g3, "C3 e^{C0}");
    Ok(ConstantsReport {
        theorem: 1,
        precision_bits: prec,
        constants,
    })
}

/// All Theorem-2 constants (rooted simple chordal maps), plus the
/// subcriticality value for the block substitution.
pub fn theorem2_report(prec: usize) -> Result<ConstantsReport> {
    use crate::maps;
    use crate::poly::{disc_b_printed, disc_m_printed, pb_polynomial, pm_polynomial};

    let sigma_b = refined_positive_root(&disc_b_printed(), 0, prec)?;
    let sigma = refined_positive_root(&disc_m_printed(), 0, prec)?;
    let b_series = maps::two_connected_maps_series(64);
    let m_series = maps::all_maps_series(64);
    let b_branch = algebraic_branch_expansion(&pb_polynomial(), &sigma_b, &b_series, prec)?;
    let m_branch = algebraic_branch_expansion(&pm_polynomial(), &sigma, &m_series, prec)?;

    let subcrit = &sigma * &(&one(prec) + &m_branch.y0).powi(2);
    let mut constants = vec![];
    let mut push = |name: &str, v: &HPReal, formula: &str| {
        constants.push(ConstantEntry {
            name: name.into(),
            value: v.to_f64(),
            formula: formula.into(),
        });
    };
    push("sigma_b", &sigma_b, "positive real root of the degree-6 discriminant factor");
    push("sigma_b_inv", &(&one(prec) / &sigma_b), "growth rate 1/sigma_b");
    push("B_sigma_b", &b_branch.y0, "B(sigma_b)");
    push("b1", &b_branch.a1_abs, "branch coefficient of B at sigma_b");
    push("sigma", &sigma, "smaller positive real root of the degree-12 discriminant factor");
    push("sigma_inv", &(&one(prec) / &sigma), "growth rate 1/sigma");
    push("M_sigma", &m_branch.y0, "M(sigma)");
    push("m1", &m_branch.a1_abs, "branch coefficient of M at sigma");
    push(
        "sigma_subcritical",
        &subcrit,
        "sigma (1 + M(sigma))^2, must stay below sigma_b",
    );
    Ok(ConstantsReport {
        theorem: 2,
        precision_bits: prec,
        constants,
    })
}

/// The k-th positive real root (ascending) refined to the working
/// precision and converted to a float.
pub fn refined_positive_root(p: &IntPolynomial, k: usize, prec: usize) -> Result<HPReal> {
    use crate::rootfind::{isolate_real_roots, refine};
    use num_bigint::BigInt;
    let zero = BigRational::from_integer(BigInt::from(0));
    let intervals = isolate_real_roots(p)?;
    let positive: Vec<_> = intervals.into_iter().filter(|i| i.hi > zero).collect();
    let interval = positive.get(k).ok_or_else(|| {
        Error::Domain(format!("polynomial has fewer than {} positive real roots", k + 1))
    })?;
    let width = BigRational::new(BigInt::from(1), BigInt::from(2).pow(prec as u32 + 8));
    let refined = refine(p, interval, &width)?;
    Ok(HPReal::from_rational(&refined.midpoint(), prec))
}

/// The subcriticality certificates backing the composition schemes.
#[derive(Clone, Debug, Serialize)]
pub struct SubcriticalityReport {
    /// rho_b E0^3, must be < 4/27.
    pub graphs_inner: f64,
    pub graphs_bound: f64,
    /// rho_b - tau, must be > 0.
    pub tau_margin: f64,
    /// sigma (1 + M(sigma))^2, must be < sigma_b.
    pub maps_inner: f64,
    pub maps_bound: f64,
    /// The same with the literal printed formula sigma (1 + M(sigma)^2),
    /// reported because the printed formula and value disagree.
    pub maps_inner_printed_formula: f64,
    pub all_pass: bool,
}

pub fn subcriticality_report(prec: usize) -> Result<SubcriticalityReport> {
    let cp = solve_characteristic_system(prec)?;
    let cc = connected_constants(prec)?;
    let t2 = theorem2_report(prec)?;
    let graphs_inner = (&(&cp.rho_b * &cp.e0().powi(3))).to_f64();
    let graphs_bound = 4.0 / 27.0;
    let tau_margin = (&cp.rho_b - &cc.tau).to_f64();
    let sigma = t2.get("sigma").unwrap();
    let m_sigma = t2.get("M_sigma").unwrap();
    let maps_inner = t2.get("sigma_subcritical").unwrap();
    let maps_bound = t2.get("sigma_b").unwrap();
    let maps_inner_printed_formula = sigma * (1.0 + m_sigma * m_sigma);
    let all_pass = graphs_inner < graphs_bound
        && tau_margin > 0.0
        && maps_inner < maps_bound
        && cc.rho.to_f64() < cp.rho_b.to_f64();
    Ok(SubcriticalityReport {
        graphs_inner,
        graphs_bound,
        tau_margin,
        maps_inner,
        maps_bound,
        maps_inner_printed_formula,
        all_pass,
    })
}
