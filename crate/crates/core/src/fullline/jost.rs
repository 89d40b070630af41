//! Jost solution bases by bidirectional shooting.
//!
//! At `lambda = k^4 > 0` the free equation has the modes `e^{i k x}`,
//! `e^{-i k x}`, `e^{-k x}`, `e^{k x}`.  On each half-line three of them are
//! admissible in the scattering asymptotics; the basis solutions are
//! initialized as pure exponentials at `x = -a` (minus side) or `x = +a`
//! (plus side), where the potential tail is below threshold, and integrated
//! toward the matching point `x = 0`.  The excluded fourth mode grows toward
//! the far end, i.e. decays in the integration direction, so its
//! contamination is damped rather than amplified.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fullline::potential::Potential;
use crate::fullline::rk::{integrate, integrate_path, IntegrationControl, State};
use crate::quartic::J;

/// Half-line of the matching construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Mode vector `(1, g, g^2, g^3)` of a pure exponential `e^{g x}`.
pub fn mode_vector(g: Complex64) -> State {
    [Complex64::new(1.0, 0.0), g, g * g, g * g * g]
}

/// Exponents of the three admissible basis solutions, in the order
/// (oscillatory matching the transmitted/incident wave, counter-oscillatory,
/// real-decaying-at-the-far-end):
///
/// * minus side: `-ik, ik, k` (modes `e^{-ikx}`, `e^{ikx}`, `e^{kx}`),
/// * plus side:  `ik, -ik, -k`.
pub fn mode_exponents(side: Side, k: f64) -> [Complex64; 3] {
    let ck = Complex64::new(k, 0.0);
    match side {
        Side::Minus => [-J * ck, J * ck, ck],
        Side::Plus => [J * ck, -J * ck, -ck],
    }
}

/// Right-hand side of the first-order system for
/// `u'''' - (v1 u')' + v0 u = lambda u` in the quasi-derivative state
/// `(u, u', u'', u''' - v1 u')`.
pub fn system_rhs<'a>(lambda: f64, pot: &'a Potential) -> impl Fn(f64, &State) -> State + 'a {
    move |x: f64, y: &State| -> State {
        let v0 = pot.v0_at(x);
        let v1 = pot.v1_at(x);
        [y[1], y[2], y[3] + v1 * y[1], (lambda - v0) * y[0]]
    }
}

/// The three basis solutions of one side, integrated to the matching point.
///
/// Each stored solution is *unit-scaled*: it solves the equation with initial
/// state `(1, g, g^2, g^3)` at `x = -a` (or `+a`).  The true Jost solution
/// with asymptotic normalization `e^{g x}` is `scale * (unit solution)` with
/// `scale = e^{g x0}`; keeping the factor symbolic preserves relative
/// accuracy for the strongly decaying mode.
#[derive(Clone, Debug)]
pub struct JostBasis {
    pub side: Side,
    pub lambda: f64,
    pub k: f64,
    pub a: f64,
    pub gammas: [Complex64; 3],
    pub scales: [Complex64; 3],
    pub at_zero: [State; 3],
}

impl JostBasis {
    /// Starting abscissa of the shooting (`-a` or `+a`).
    pub fn x_start(&self) -> f64 {
        match self.side {
            Side::Minus => -self.a,
            Side::Plus => self.a,
        }
    }

    /// True (scale-restored) state of basis solution `j` at the matching point.
    pub fn true_at_zero(&self, j: usize) -> State {
        let mut st = self.at_zero[j];
        for c in st.iter_mut() {
            *c *= self.scales[j];
        }
        st
    }
}

/// Builds the Jost basis of one side by shooting from `±a` to `0`.
pub fn jost_basis(
    side: Side,
    lambda: f64,
    pot: &Potential,
    ctrl: &IntegrationControl,
) -> Result<JostBasis> {
    let (basis, _) = jost_basis_with_path(side, lambda, pot, ctrl, &[])?;
    Ok(basis)
}

/// As [`jost_basis`], additionally recording the unit-scaled states at the
/// requested abscissae (which must lie between the starting point and `0`,
/// ordered along the integration direction).
pub fn jost_basis_with_path(
    side: Side,
    lambda: f64,
    pot: &Potential,
    ctrl: &IntegrationControl,
    xs: &[f64],
) -> Result<(JostBasis, Vec<[State; 3]>)> {
    if lambda <= 0.0 {
        return Err(Error::NonpositiveLambda(lambda));
    }
    let k = lambda.powf(0.25);
    let a = pot.radius;
    let x0 = match side {
        Side::Minus => -a,
        Side::Plus => a,
    };
    let gammas = mode_exponents(side, k);
    let f = system_rhs(lambda, pot);

    let mut checkpoints: Vec<f64> = xs.to_vec();
    checkpoints.push(0.0);

    let mut at_zero = [[Complex64::new(0.0, 0.0); 4]; 3];
    let mut path = vec![[[Complex64::new(0.0, 0.0); 4]; 3]; xs.len()];
    let mut scales = [Complex64::new(0.0, 0.0); 3];
    for (j, &g) in gammas.iter().enumerate() {
        scales[j] = (g * x0).exp();
        let states = integrate_path(&f, x0, 0.0, mode_vector(g), ctrl, &checkpoints)?;
        for (i, st) in states[..xs.len()].iter().enumerate() {
            path[i][j] = *st;
        }
        at_zero[j] = states[xs.len()];
    }
    Ok((JostBasis { side, lambda, k, a, gammas, scales, at_zero }, path))
}

/// Round-trip contamination diagnostic: each basis solution is integrated to
/// the matching point and back, and the relative deviation from its initial
/// mode vector is reported (maximum over the three modes).
pub fn contamination_diagnostic(
    side: Side,
    lambda: f64,
    pot: &Potential,
    ctrl: &IntegrationControl,
) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::NonpositiveLambda(lambda));
    }
    let k = lambda.powf(0.25);
    let a = pot.radius;
    let x0 = match side {
        Side::Minus => -a,
        Side::Plus => a,
    };
    let f = system_rhs(lambda, pot);
    let mut worst = 0.0f64;
    for g in mode_exponents(side, k) {
        let y0 = mode_vector(g);
        let fwd = integrate(&f, x0, 0.0, y0, ctrl)?;
        let back = integrate(&f, 0.0, x0, fwd, ctrl)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..4 {
            num += (back[i] - y0[i]).norm_sqr();
            den += y0[i].norm_sqr();
        }
        worst = worst.max((num / den).sqrt());
    }
    Ok(worst)
}
