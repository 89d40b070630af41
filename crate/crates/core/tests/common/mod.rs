//! Shared oracles for the integration suites: finite-difference
//! differentiation of kernels, quadrature cross-checks, random
//! boundary-condition corpora, and a small power-law fitter.  Everything
//! here is deliberately independent of the closed forms in the library,
//! so agreement is evidence rather than tautology.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use quartic_scattering::quartic::{BoundaryCondition, SpectralPoint};

pub fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Fourth derivative by the centered 7-point stencil, `O(h^4)`.
pub fn fd4<F: Fn(f64) -> Complex64>(f: &F, x: f64, h: f64) -> Complex64 {
    const C: [f64; 7] = [-1.0 / 6.0, 2.0, -13.0 / 2.0, 28.0 / 3.0, -13.0 / 2.0, 2.0, -1.0 / 6.0];
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &w) in C.iter().enumerate() {
        acc += w * f(x + (j as f64 - 3.0) * h);
    }
    acc / h.powi(4)
}

/// One-sided derivatives of orders 0..=3 at `x0` from a 7-point forward
/// stencil (orders of accuracy 6, 5, 4 respectively for n = 1, 2, 3).
pub fn fd_onesided<F: Fn(f64) -> Complex64>(f: &F, x0: f64, h: f64, order: usize) -> Complex64 {
    // Coefficients of forward-difference formulas on nodes x0 + j h,
    // j = 0..=6.
    const C1: [f64; 7] = [-49.0 / 20.0, 6.0, -15.0 / 2.0, 20.0 / 3.0, -15.0 / 4.0, 6.0 / 5.0, -1.0 / 6.0];
    const C2: [f64; 7] = [203.0 / 45.0, -87.0 / 5.0, 117.0 / 4.0, -254.0 / 9.0, 33.0 / 2.0, -27.0 / 5.0, 137.0 / 180.0];
    const C3: [f64; 7] = [-49.0 / 8.0, 29.0, -461.0 / 8.0, 62.0, -307.0 / 8.0, 13.0, -15.0 / 8.0];
    let c: &[f64; 7] = match order {
        0 => return f(x0),
        1 => &C1,
        2 => &C2,
        3 => &C3,
        _ => panic!("stencil order {order} not tabulated"),
    };
    // The order-2 and order-3 tables above are the standard 7-point ones
    // divided by h^2 and h^3.
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &w) in c.iter().enumerate() {
        acc += w * f(x0 + j as f64 * h);
    }
    acc / h.powi(order as i32)
}

/// Composite Simpson quadrature of a complex integrand (fixed panel count).
pub fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, n_panels: usize) -> Complex64 {
    let n = 2 * n_panels;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Least-squares fit of `g(t) =  sum_j c_j t^{p_j}` on sample abscissae,
/// returning the coefficients in the order of `powers`.
pub fn fit_powers(ts: &[f64], gs: &[Complex64], powers: &[i32]) -> Vec<Complex64> {
    let m = DMatrix::<Complex64>::from_fn(ts.len(), powers.len(), |r, c| {
        cx(ts[r].powi(powers[c]))
    });
    let rhs = DVector::<Complex64>::from_iterator(gs.len(), gs.iter().cloned());
    let svd = m.svd(true, true);
    let sol = svd.solve(&rhs, 1e-300).expect("power fit solve");
    sol.iter().cloned().collect()
}

/// Random `Generic` boundary condition with parameters of moderate size.
pub fn random_generic<R: Rng>(rng: &mut R) -> BoundaryCondition {
    let alpha = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    BoundaryCondition::generic(alpha, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

/// Random boundary condition across all six families.
pub fn random_any<R: Rng>(rng: &mut R) -> BoundaryCondition {
    match rng.gen_range(0..6) {
        0 => random_generic(rng),
        1 => BoundaryCondition::three_param(
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            rng.gen_range(-2.0..2.0),
        ),
        2 => BoundaryCondition::one_param(rng.gen_range(-2.0..2.0)),
        3 => BoundaryCondition::clamped(),
        4 => BoundaryCondition::free(),
        _ => BoundaryCondition::navier_h00(),
    }
}

/// Decay rate (in `x + y`) of the slowest exponential of the corrected
/// kernel at the spectral point: both `e^{i zeta x}` and `e^{-zeta x}`
/// appear, decaying like `e^{-x Im zeta}` and `e^{-x Re zeta}`.
pub fn kernel_decay_rate(sp: &SpectralPoint) -> f64 {
    sp.zeta.im.min(sp.zeta.re)
}
