//! Perturbation determinant, spectral shift function, and the Levinson-type
//! trace identity.
//!
//! The perturbation determinant of a boundary condition relative to the
//! clamped reference operator is `D(z) = Omega(zeta(z))`, normalized so that
//! its continuous argument vanishes on the ray `arg zeta = pi/4` for large
//! `|zeta|` (equivalently, far down the negative real `z` axis).  The
//! spectral shift function is `xi(lambda) = pi^{-1} arg D(lambda + i0)`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::halfline::{
    embedded_eigenvalue_any, negative_spectrum_any, scattering_amplitude, EigenvalueRecord,
};
use crate::quartic::{omega_from_bc, BoundaryCondition, OmegaPolynomial, SpectralPoint};

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The perturbation determinant `D(z) = Omega(zeta(z))`.
pub fn perturbation_determinant(bc: &BoundaryCondition, sp: &SpectralPoint) -> Complex64 {
    omega_from_bc(bc).eval(sp.zeta)
}

/// Relative half-width (in `k`) of the exclusion window around an embedded
/// eigenvalue during phase tracking.
const EMBEDDED_WINDOW: f64 = 1e-7;

/// Continuous-argument increment of `Omega` along the real segment from
/// `k_from` to `k_to`, by adaptive bisection of principal-value increments.
fn delta_arg(om: &OmegaPolynomial, k_from: f64, k_to: f64, depth: u32) -> Result<f64> {
    let a = om.eval(cx(k_from));
    let b = om.eval(cx(k_to));
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::NearEigenvalue { omega_abs: 0.0, scale: om.scale_at(k_from) });
    }
    let d = (b / a).arg();
    if d.abs() <= 0.5 * PI {
        if depth > 0 && d.abs() > 0.4 * PI {
            // Large increment: confirm by bisection to rule out aliasing.
            let mid = 0.5 * (k_from + k_to);
            return Ok(delta_arg(om, k_from, mid, depth - 1)? + delta_arg(om, mid, k_to, depth - 1)?);
        }
        return Ok(d);
    }
    if depth == 0 {
        return Err(Error::Domain(format!(
            "phase tracking failed to converge between k = {k_from} and k = {k_to}"
        )));
    }
    let mid = 0.5 * (k_from + k_to);
    Ok(delta_arg(om, k_from, mid, depth - 1)? + delta_arg(om, mid, k_to, depth - 1)?)
}

/// Tracks the continuous argument `theta(k)` of `Omega(k)` for `k > 0`.
///
/// The branch is anchored at a large `k` where
/// `theta = -gamma1 pi/4 + Arg(Omega(k) e^{i gamma1 pi/4})`; the correction
/// term is the exact finite-`k` deviation of the leading monomial, so
/// `theta(k) -> -gamma1 pi/4` as `k -> inf`.  Crossing a simple real zero of
/// `Omega` (an embedded eigenvalue) adds the known downward jump of `pi` to
/// the argument, applied analytically across a small exclusion window.
pub struct PhaseTracker {
    om: OmegaPolynomial,
    pub gamma0: usize,
    pub gamma1: usize,
    embedded_k: Option<f64>,
    k_cursor: f64,
    theta: f64,
}

impl PhaseTracker {
    /// Starts a tracker anchored above `k_top` (at least `k = 10^3`).
    pub fn new(bc: &BoundaryCondition, k_top: f64) -> Result<Self> {
        let om = omega_from_bc(bc);
        let (gamma0, gamma1) = om.gamma_indices()?;
        let embedded_k = embedded_eigenvalue_any(bc).map(|e| e.k);
        let k_anchor = (2.0 * k_top).max(1e3);
        let rot = Complex64::from_polar(1.0, gamma1 as f64 * FRAC_PI_4);
        let theta = -(gamma1 as f64) * FRAC_PI_4 + (om.eval(cx(k_anchor)) * rot).arg();
        Ok(Self { om, gamma0, gamma1, embedded_k, k_cursor: k_anchor, theta })
    }

    /// Advances the tracker down to `k` (which must not exceed the cursor)
    /// and returns `theta(k)`.
    pub fn theta_at(&mut self, k: f64) -> Result<f64> {
        if k <= 0.0 {
            return Err(Error::NonpositiveLambda(k));
        }
        if k > self.k_cursor {
            return Err(Error::Domain(format!(
                "phase tracker moves downward only (requested k = {k}, cursor at {})",
                self.k_cursor
            )));
        }
        if let Some(k0) = self.embedded_k {
            let delta = EMBEDDED_WINDOW * (1.0 + k0);
            if (k - k0).abs() <= 10.0 * delta {
                return Err(Error::GridNearEigenvalue { lambda: k.powi(4), eigenvalue: k0.powi(4) });
            }
            if self.k_cursor > k0 && k < k0 {
                // Walk to the upper window edge, apply the jump, continue below.
                self.theta += delta_arg(&self.om, self.k_cursor, k0 + delta, 60)?;
                let ratio = -self.om.eval(cx(k0 - delta)) / self.om.eval(cx(k0 + delta));
                self.theta += PI + ratio.arg();
                self.k_cursor = k0 - delta;
            }
        }
        self.theta += delta_arg(&self.om, self.k_cursor, k, 60)?;
        self.k_cursor = k;
        Ok(self.theta)
    }

    /// Limit of `theta` as `k -> 0+`, using the exact deviation of the
    /// trailing monomial at the current cursor position.
    pub fn theta_at_zero(&mut self, k_min: f64) -> Result<f64> {
        let theta = self.theta_at(k_min)?;
        let w = self.om.eval(cx(k_min)) / (self.om.coeffs[self.gamma0] * k_min.powi(self.gamma0 as i32));
        Ok(theta - w.arg())
    }
}

/// A jump of the spectral shift function.
#[derive(Clone, Copy, Debug)]
pub struct SsfJump {
    /// Location of the jump.
    pub lambda: f64,
    /// Signed magnitude `xi(lambda + 0) - xi(lambda - 0)`.
    pub magnitude: f64,
}

/// Spectral shift function sampled on a grid, together with its jump set.
#[derive(Debug)]
pub struct SsfCurve {
    pub lambda: Vec<f64>,
    pub xi: Vec<f64>,
    pub jumps: Vec<SsfJump>,
}

/// Spectral shift function `xi(lambda)` of a boundary condition relative to
/// the clamped reference operator.
///
/// * `lambda < 0`: piecewise constant, `xi = -(number of eigenvalues below
///   lambda, counted with multiplicity)`.
/// * `lambda > 0`: `pi^{-1}` times the tracked continuous argument of
///   `Omega(lambda^{1/4})`.
///
/// Grid points colliding with an eigenvalue are rejected.
pub fn ssf(bc: &BoundaryCondition, lambdas: &[f64]) -> Result<SsfCurve> {
    let negatives = negative_spectrum_any(bc)?;
    let embedded = embedded_eigenvalue_any(bc);

    let mut xi = vec![0.0_f64; lambdas.len()];

    // Negative side: eigenvalue counting.
    for (i, &l) in lambdas.iter().enumerate() {
        if l < 0.0 {
            for ev in &negatives {
                if (l - ev.lambda).abs() <= 1e-8 * (1.0 + ev.lambda.abs()) {
                    return Err(Error::GridNearEigenvalue { lambda: l, eigenvalue: ev.lambda });
                }
            }
            xi[i] = -negatives
                .iter()
                .filter(|ev| ev.lambda < l)
                .map(|ev| ev.multiplicity as f64)
                .sum::<f64>();
        } else if l == 0.0 {
            return Err(Error::BranchPoint);
        }
    }

    // Positive side: one downward phase walk through the sorted points.
    let mut pos: Vec<(usize, f64)> = lambdas
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.0)
        .map(|(i, &l)| (i, l.powf(0.25)))
        .collect();
    pos.sort_by(|a, b| b.1.total_cmp(&a.1));
    if let Some(&(_, k_top)) = pos.first() {
        let mut tracker = PhaseTracker::new(bc, k_top)?;
        for &(i, k) in &pos {
            xi[i] = tracker.theta_at(k)? / PI;
        }
    }

    let mut jumps: Vec<SsfJump> = negatives
        .iter()
        .map(|ev| SsfJump { lambda: ev.lambda, magnitude: -(ev.multiplicity as f64) })
        .collect();
    let (g0, _) = omega_from_bc(bc).gamma_indices()?;
    if g0 > 0 {
        jumps.push(SsfJump { lambda: 0.0, magnitude: -(g0 as f64) / 4.0 });
    }
    if let Some(ev) = embedded {
        jumps.push(SsfJump { lambda: ev.lambda, magnitude: -1.0 });
    }
    jumps.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    Ok(SsfCurve { lambda: lambdas.to_vec(), xi, jumps })
}

/// Single-point convenience wrapper around [`ssf`].
pub fn xi_at(bc: &BoundaryCondition, lambda: f64) -> Result<f64> {
    Ok(ssf(bc, &[lambda])?.xi[0])
}

/// Jump of `xi` across `lambda = 0`, in exact quarters: `-gamma0 / 4`.
pub fn threshold_jump(bc: &BoundaryCondition) -> Result<(i32, i32)> {
    let (g0, _) = omega_from_bc(bc).gamma_indices()?;
    Ok((-(g0 as i32), 4))
}

/// Residual of the Birman--Krein relation `s(lambda) = e^{-2 pi i xi(lambda)}`.
pub fn birman_krein_check(bc: &BoundaryCondition, lambda: f64) -> Result<f64> {
    let s = scattering_amplitude(bc, lambda)?.s;
    let xi = xi_at(bc, lambda)?;
    Ok((s - Complex64::from_polar(1.0, -2.0 * PI * xi)).norm())
}

/// Increment `xi(k2^4) - xi(k1^4)` from the logarithmic-derivative integral
/// `pi^{-1} int_{k1}^{k2} Im(Omega'(k)/Omega(k)) dk`.  Used as an independent
/// cross-check of the phase tracker.
pub fn xi_increment_integral(bc: &BoundaryCondition, k1: f64, k2: f64, tol: f64) -> f64 {
    let om = omega_from_bc(bc);
    crate::quad::adaptive_simpson_real(
        &|k| {
            let z = cx(k);
            (om.deriv_eval(z) / om.eval(z)).im
        },
        k1,
        k2,
        tol,
    ) / PI
}

/// Outcome of the Levinson-type trace identity
/// `arg s(inf) - arg s(+0) = -2 pi N + pi (gamma1 - gamma0) / 2`.
#[derive(Clone, Copy, Debug)]
pub struct LevinsonCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Total number of eigenvalues (with multiplicity), embedded included.
    pub n_total: usize,
    pub gamma0: usize,
    pub gamma1: usize,
}

/// Verifies the Levinson identity by tracking `arg s = -2 theta` over
/// `k in [10^{-3}, 10^{3}]` and closing both tails with the exact monomial
/// corrections.
pub fn levinson_check(bc: &BoundaryCondition) -> Result<LevinsonCheck> {
    let negatives = negative_spectrum_any(bc)?;
    let embedded = embedded_eigenvalue_any(bc);
    let n_total = negatives.iter().map(|e| e.multiplicity as usize).sum::<usize>()
        + usize::from(embedded.is_some());

    let mut tracker = PhaseTracker::new(bc, 1e3 / 2.0)?;
    let (gamma0, gamma1) = (tracker.gamma0, tracker.gamma1);
    let theta_inf = -(gamma1 as f64) * FRAC_PI_4;
    // `s` is continuous through an embedded eigenvalue (the unit jump of xi
    // is invisible in e^{-2 pi i xi}), so the continuous branch of `arg s`
    // excludes the pi-jump the tracker inserts there; the eigenvalue is
    // instead counted in `N` on the right-hand side.
    let theta_zero =
        tracker.theta_at_zero(1e-3)? - PI * f64::from(u8::from(embedded.is_some()));
    let lhs = -2.0 * (theta_inf - theta_zero);
    let rhs = -2.0 * PI * n_total as f64 + PI * (gamma1 as f64 - gamma0 as f64) / 2.0;
    Ok(LevinsonCheck { lhs, rhs, residual: (lhs - rhs).abs(), n_total, gamma0, gamma1 })
}

/// All discrete eigenvalues of a boundary condition (any family), negative
/// and embedded, sorted by `lambda`.
pub fn discrete_spectrum(bc: &BoundaryCondition) -> Result<Vec<EigenvalueRecord>> {
    let mut evs = negative_spectrum_any(bc)?;
    if let Some(e) = embedded_eigenvalue_any(bc) {
        evs.push(e);
    }
    evs.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    Ok(evs)
}
