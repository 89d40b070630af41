//! Matching of the Jost bases at `x = 0`: scattering matrix `S`, the
//! exponentially coupled matrix `B`, flux and unitarity diagnostics, and the
//! Lippmann--Schwinger residual oracle.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fullline::jost::{jost_basis_with_path, mode_vector, JostBasis, Side};
use crate::fullline::potential::Potential;
use crate::fullline::rk::{IntegrationControl, State};
use crate::quad::adaptive_simpson;
use crate::quartic::J;

/// Condition-number threshold above which the matching system counts as
/// singular (an eigenvalue embedded at this `lambda`).
pub const COND_LIMIT: f64 = 1e12;

/// Scattering data at one positive energy: the `2x2` matrices `S` (unitary)
/// and `B` (couplings to the real exponentials), indexed so that column `l`
/// belongs to the wave `psi_l` (`l = 1`: incident from the left).
#[derive(Clone, Copy, Debug)]
pub struct ScatteringMatrices {
    pub lambda: f64,
    pub k: f64,
    pub s: [[Complex64; 2]; 2],
    pub b: [[Complex64; 2]; 2],
    /// Condition number of the (unit-scaled) matching matrix.
    pub cond: f64,
}

/// Connection data kept for further evaluation of the wave functions.
pub struct Connection {
    pub sm: ScatteringMatrices,
    pub minus: JostBasis,
    pub plus: JostBasis,
}

/// Solves the `4x4` matching system at `x = 0`.
///
/// `psi_1 = s11 u1+ + b11 u3+` on the plus side and
/// `psi_1 = u2- + s21 u1- + b21 u3-` on the minus side, so
/// `s11 U1+(0) + b11 U3+(0) - s21 U1-(0) - b21 U3-(0) = U2-(0)`;
/// `psi_2` solves the analogous system with right side `-U2+(0)` and
/// unknowns `(s12, b12, s22, b22)`.  The solve is performed on the
/// unit-scaled columns; the asymptotic normalization factors are restored
/// afterwards, which keeps the matrix well conditioned even when the real
/// exponential columns are tiny.
pub fn connection_solve(
    lambda: f64,
    pot: &Potential,
    ctrl: &IntegrationControl,
) -> Result<Connection> {
    let (minus, _) = jost_basis_with_path(Side::Minus, lambda, pot, ctrl, &[])?;
    let (plus, _) = jost_basis_with_path(Side::Plus, lambda, pot, ctrl, &[])?;

    let mut m = Matrix4::<Complex64>::zeros();
    let cols = [plus.at_zero[0], plus.at_zero[2], minus.at_zero[0], minus.at_zero[2]];
    let signs = [1.0, 1.0, -1.0, -1.0];
    for (c, (col, sg)) in cols.iter().zip(signs).enumerate() {
        for r in 0..4 {
            m[(r, c)] = col[r] * sg;
        }
    }

    let sv = m.clone().svd(false, false).singular_values;
    let cond = sv.max() / sv.min().max(f64::MIN_POSITIVE);
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(Error::NearSingularMatching { cond });
    }

    let lu = m.lu();
    let mut rhs1 = Vector4::<Complex64>::zeros();
    let mut rhs2 = Vector4::<Complex64>::zeros();
    for r in 0..4 {
        rhs1[r] = minus.scales[1] * minus.at_zero[1][r];
        rhs2[r] = -plus.scales[1] * plus.at_zero[1][r];
    }
    let x1 = lu
        .solve(&rhs1)
        .ok_or(Error::NearSingularMatching { cond })?;
    let x2 = lu
        .solve(&rhs2)
        .ok_or(Error::NearSingularMatching { cond })?;

    // Restore the asymptotic normalization: unknown_true = x / scale(column).
    let scales = [plus.scales[0], plus.scales[2], minus.scales[0], minus.scales[2]];
    let s = [
        [x1[0] / scales[0], x2[0] / scales[0]],
        [x1[2] / scales[2], x2[2] / scales[2]],
    ];
    let b = [
        [x1[1] / scales[1], x2[1] / scales[1]],
        [x1[3] / scales[3], x2[3] / scales[3]],
    ];
    let k = minus.k;
    Ok(Connection { sm: ScatteringMatrices { lambda, k, s, b, cond }, minus, plus })
}

/// Residual `|| S S^* - I ||_F` of unitarity of the scattering matrix.
pub fn unitarity_residual(sm: &ScatteringMatrices) -> f64 {
    let s = &sm.s;
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut e = Complex64::new(0.0, 0.0);
            for l in 0..2 {
                e += s[i][l] * s[j][l].conj();
            }
            if i == j {
                e -= 1.0;
            }
            acc += e.norm_sqr();
        }
    }
    acc.sqrt()
}

/// Residual of the exponential-coupling relation
/// `S * conj(B)^T = [[b12, b22], [b11, b21]]` (Frobenius norm).
pub fn b_relation_residual(sm: &ScatteringMatrices) -> f64 {
    let (s, b) = (&sm.s, &sm.b);
    // conj(B)^T as it enters the relation: rows (conj b11, conj b21) and
    // (conj b12, conj b22).
    let bt = [[b[0][0].conj(), b[1][0].conj()], [b[0][1].conj(), b[1][1].conj()]];
    let rhs = [[b[0][1], b[1][1]], [b[0][0], b[1][0]]];
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut e = -rhs[i][j];
            for l in 0..2 {
                e += s[i][l] * bt[l][j];
            }
            acc += e.norm_sqr();
        }
    }
    acc.sqrt()
}

/// Flux form `F_u(x) = (u''' - v1 u') conj(u) - u'' conj(u')` of a state.
pub fn flux_form(st: &State) -> Complex64 {
    st[3] * st[0].conj() - st[2] * st[1].conj()
}

/// One of the two scattering waves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wave {
    /// Incident from the left (`e^{ikx}` at `-inf`).
    One,
    /// Incident from the right (`e^{-ikx}` at `+inf`).
    Two,
}

impl Connection {
    /// Coefficients of a wave in the side's basis order `(u1, u2, u3)`.
    fn coefficients(&self, wave: Wave, side: Side) -> [Complex64; 3] {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (s, b) = (&self.sm.s, &self.sm.b);
        match (wave, side) {
            (Wave::One, Side::Plus) => [s[0][0], zero, b[0][0]],
            (Wave::One, Side::Minus) => [s[1][0], one, b[1][0]],
            (Wave::Two, Side::Plus) => [s[0][1], one, b[0][1]],
            (Wave::Two, Side::Minus) => [s[1][1], zero, b[1][1]],
        }
    }

    /// Exact asymptotic state of a wave at `|x| >= a` (pure exponentials).
    pub fn asymptotic_state(&self, wave: Wave, x: f64) -> State {
        let side = if x >= 0.0 { Side::Plus } else { Side::Minus };
        let basis = match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        };
        let coeff = self.coefficients(wave, side);
        let mut st = [Complex64::new(0.0, 0.0); 4];
        for (j, &c) in coeff.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let g = basis.gammas[j];
            let p = mode_vector(g);
            let e = (g * x).exp();
            for i in 0..4 {
                st[i] += c * e * p[i];
            }
        }
        st
    }

    /// Imbalance `Im F(r) - Im F(-r)` of the flux form of a wave, evaluated
    /// from the exact exponential asymptotics at `r >= a`.
    pub fn flux_imbalance(&self, wave: Wave, r: f64) -> f64 {
        let plus = flux_form(&self.asymptotic_state(wave, r));
        let minus = flux_form(&self.asymptotic_state(wave, -r));
        plus.im - minus.im
    }
}

/// Free full-line resolvent kernel
/// `R0(x, y; z) = (4 zeta^3)^{-1} (i e^{i zeta |x-y|} - e^{-zeta |x-y|})`.
pub fn free_resolvent_kernel_line(x: f64, y: f64, zeta: Complex64) -> Complex64 {
    let d = (x - y).abs();
    (J * (J * zeta * d).exp() - (-zeta * d).exp()) / (4.0 * zeta.powu(3))
}

/// `d/dy` of the free kernel (zero at the diagonal kink).
fn free_kernel_dy(x: f64, y: f64, k: f64) -> Complex64 {
    if x == y {
        return Complex64::new(0.0, 0.0);
    }
    let s = (y - x).signum();
    let d = (x - y).abs();
    let ck = Complex64::new(k, 0.0);
    s * (-(J * ck * d).exp() + (-ck * d).exp()) / (4.0 * k * k)
}

/// Uniform-grid sampled wave, cubic-interpolated for quadrature.
struct SampledWave {
    xs: Vec<f64>,
    psi: Vec<Complex64>,
    dpsi: Vec<Complex64>,
}

impl SampledWave {
    fn interp(&self, data: &[Complex64], x: f64) -> Complex64 {
        let n = self.xs.len();
        let h = self.xs[1] - self.xs[0];
        let pos = ((x - self.xs[0]) / h).floor() as isize;
        let i0 = pos.clamp(1, n as isize - 3) as usize - 1;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..4 {
            let mut l = 1.0;
            for q in 0..4 {
                if q != p {
                    l *= (x - self.xs[i0 + q]) / (self.xs[i0 + p] - self.xs[i0 + q]);
                }
            }
            acc += l * data[i0 + p];
        }
        acc
    }

    fn value(&self, x: f64) -> Complex64 {
        self.interp(&self.psi, x)
    }

    fn deriv(&self, x: f64) -> Complex64 {
        self.interp(&self.dpsi, x)
    }
}

/// Samples `psi_1` (value and derivative) on a uniform grid over `[-a, a]`.
fn sample_wave_one(
    conn: &Connection,
    pot: &Potential,
    ctrl: &IntegrationControl,
    n_per_side: usize,
) -> Result<SampledWave> {
    let a = pot.radius;
    let lambda = conn.sm.lambda;
    let h = a / n_per_side as f64;
    // x = 0 is excluded here: it is always recorded separately by the basis
    // integration, and duplicating it would confuse the checkpoint walk.
    let xs_minus: Vec<f64> = (0..n_per_side).map(|i| -a + i as f64 * h).collect();
    let xs_plus_desc: Vec<f64> = (1..=n_per_side).rev().map(|i| i as f64 * h).collect();

    let (minus, path_m) = jost_basis_with_path(Side::Minus, lambda, pot, ctrl, &xs_minus)?;
    let (plus, path_p) = jost_basis_with_path(Side::Plus, lambda, pot, ctrl, &xs_plus_desc)?;

    let cm = conn.coefficients(Wave::One, Side::Minus);
    let cp = conn.coefficients(Wave::One, Side::Plus);

    let mut xs = Vec::with_capacity(2 * n_per_side + 1);
    let mut psi = Vec::with_capacity(2 * n_per_side + 1);
    let mut dpsi = Vec::with_capacity(2 * n_per_side + 1);

    let combine =
        |basis: &JostBasis, states: &[State; 3], coeff: &[Complex64; 3]| -> (Complex64, Complex64) {
            let mut v = Complex64::new(0.0, 0.0);
            let mut d = Complex64::new(0.0, 0.0);
            for j in 0..3 {
                let c = coeff[j] * basis.scales[j];
                v += c * states[j][0];
                d += c * states[j][1];
            }
            (v, d)
        };

    for (i, &x) in xs_minus.iter().enumerate() {
        let (v, d) = combine(&minus, &path_m[i], &cm);
        xs.push(x);
        psi.push(v);
        dpsi.push(d);
    }
    let (v0, d0) = combine(&plus, &plus.at_zero, &cp);
    xs.push(0.0);
    psi.push(v0);
    dpsi.push(d0);
    for (i, &x) in xs_plus_desc.iter().enumerate().rev() {
        let (v, d) = combine(&plus, &path_p[i], &cp);
        xs.push(x);
        psi.push(v);
        dpsi.push(d);
    }
    Ok(SampledWave { xs, psi, dpsi })
}

/// Maximum residual of the Lippmann--Schwinger equation
/// `psi_1(x) = e^{ikx} - int R0(x, y) (V psi_1)(y) dy` over the sample
/// abscissae, with `V = v0 + D v1 D` integrated by parts once:
/// `int R0 v0 psi + (d_y R0) v1 psi' dy`.
pub fn lippmann_schwinger_residual(
    lambda: f64,
    pot: &Potential,
    ctrl: &IntegrationControl,
    samples: &[f64],
) -> Result<f64> {
    let conn = connection_solve(lambda, pot, ctrl)?;
    let k = conn.sm.k;
    let a = pot.radius;
    let wave = sample_wave_one(&conn, pot, ctrl, 400.max((40.0 * a) as usize))?;
    let ck = Complex64::new(k, 0.0);

    let mut worst = 0.0f64;
    for &x in samples {
        let integrand = |y: f64| {
            free_resolvent_kernel_line(x, y, ck) * pot.v0_at(y) * wave.value(y)
                + free_kernel_dy(x, y, k) * pot.v1_at(y) * wave.deriv(y)
        };
        let mut integral = Complex64::new(0.0, 0.0);
        // Split at the diagonal kink of the kernel.
        if x > -a && x < a {
            integral += adaptive_simpson(&integrand, -a, x, 1e-10);
            integral += adaptive_simpson(&integrand, x, a, 1e-10);
        } else {
            integral += adaptive_simpson(&integrand, -a, a, 1e-10);
        }
        let psi_x = if x.abs() <= a {
            wave.value(x)
        } else {
            conn.asymptotic_state(Wave::One, x)[0]
        };
        let residual = (psi_x - (J * ck * x).exp() + integral).norm();
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Companion matrix of the first-order system for `(u, u', u'', u''' - v1 u')`
/// at position `x`, so that `Y' = A(x) Y`.
pub fn system_matrix(lambda: f64, x: f64, pot: &Potential) -> Matrix4<Complex64> {
    let mut a = Matrix4::<Complex64>::zeros();
    a[(0, 1)] = Complex64::new(1.0, 0.0);
    a[(1, 2)] = Complex64::new(1.0, 0.0);
    a[(2, 3)] = Complex64::new(1.0, 0.0);
    a[(2, 1)] = Complex64::new(pot.v1_at(x), 0.0);
    a[(3, 0)] = Complex64::new(lambda - pot.v0_at(x), 0.0);
    a
}

/// Scattering amplitudes at positive energy for a compactly supported
/// perturbation of the half-line operator with `u(0) = u'(0) = 0`.
///
/// Two solutions vanishing to first order at the origin are shot out to the
/// edge of the support and expanded in the exponential modes there; the
/// combination free of the growing real exponential is the generalized
/// eigenfunction, normalized as
/// `(1/2)(s e^{ikx + i pi/4} + e^{-ikx - i pi/4}) - 2^{-1/2} b e^{-kx}`.
pub fn halfline_shortrange(
    lambda: f64,
    pot: &Potential,
    ctrl: &IntegrationControl,
) -> Result<(Complex64, Complex64)> {
    if lambda <= 0.0 {
        return Err(Error::NonpositiveLambda(lambda));
    }
    let k = lambda.powf(0.25);
    let a = pot.radius;
    let f = super::jost::system_rhs(lambda, pot);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let init_a: State = [zero, zero, one, zero];
    let init_b: State = [zero, zero, zero, one];
    let end_a = crate::fullline::rk::integrate(&f, 0.0, a, init_a, ctrl)?;
    let end_b = crate::fullline::rk::integrate(&f, 0.0, a, init_b, ctrl)?;

    // Expand both end states in the modes e^{gamma x}, gamma in
    // (ik, -ik, -k, k).
    let gammas = [J * k, -J * k, Complex64::new(-k, 0.0), Complex64::new(k, 0.0)];
    let mut m = Matrix4::<Complex64>::zeros();
    for (c, &g) in gammas.iter().enumerate() {
        let p = mode_vector(g);
        let e = (g * a).exp();
        for r in 0..4 {
            m[(r, c)] = e * p[r];
        }
    }
    let lu = m.lu();
    let ca = lu
        .solve(&Vector4::from_row_slice(&end_a))
        .ok_or(Error::NearSingularMatching { cond: f64::INFINITY })?;
    let cb = lu
        .solve(&Vector4::from_row_slice(&end_b))
        .ok_or(Error::NearSingularMatching { cond: f64::INFINITY })?;

    // Kill the growing mode: w = cb[3] * u_a - ca[3] * u_b.
    let c = [
        cb[3] * ca[0] - ca[3] * cb[0],
        cb[3] * ca[1] - ca[3] * cb[1],
        cb[3] * ca[2] - ca[3] * cb[2],
    ];
    if c[1].norm() < 1e-14 * (c[0].norm() + c[2].norm() + f64::MIN_POSITIVE) {
        return Err(Error::Domain(
            "degenerate incoming-mode coefficient in half-line matching".into(),
        ));
    }
    let s = -J * c[0] / c[1];
    let b = -(0.5f64.sqrt()) * Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)
        * c[2]
        / c[1];
    Ok((s, b))
}
