//! Adaptive Dormand--Prince 5(4) integration of the first-order system
//! attached to the fourth-order equation, with complex state.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// State vector `(u, u', u'', u''' - v1 u')`.
pub type State = [Complex64; 4];

/// Tolerances of the adaptive integrator.
#[derive(Clone, Copy, Debug)]
pub struct IntegrationControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for IntegrationControl {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_steps: 4_000_000 }
    }
}

fn axpy(out: &mut State, c: f64, k: &State) {
    for i in 0..4 {
        out[i] += c * k[i];
    }
}

/// One embedded Dormand--Prince step; returns `(y5, err_estimate)`.
fn dp_step<F>(f: &F, x: f64, y: &State, h: f64) -> (State, [Complex64; 4])
where
    F: Fn(f64, &State) -> State,
{
    let k1 = f(x, y);
    let mut t = *y;
    axpy(&mut t, h / 5.0, &k1);
    let k2 = f(x + h / 5.0, &t);

    t = *y;
    axpy(&mut t, 3.0 * h / 40.0, &k1);
    axpy(&mut t, 9.0 * h / 40.0, &k2);
    let k3 = f(x + 3.0 * h / 10.0, &t);

    t = *y;
    axpy(&mut t, 44.0 * h / 45.0, &k1);
    axpy(&mut t, -56.0 * h / 15.0, &k2);
    axpy(&mut t, 32.0 * h / 9.0, &k3);
    let k4 = f(x + 4.0 * h / 5.0, &t);

    t = *y;
    axpy(&mut t, 19372.0 * h / 6561.0, &k1);
    axpy(&mut t, -25360.0 * h / 2187.0, &k2);
    axpy(&mut t, 64448.0 * h / 6561.0, &k3);
    axpy(&mut t, -212.0 * h / 729.0, &k4);
    let k5 = f(x + 8.0 * h / 9.0, &t);

    t = *y;
    axpy(&mut t, 9017.0 * h / 3168.0, &k1);
    axpy(&mut t, -355.0 * h / 33.0, &k2);
    axpy(&mut t, 46732.0 * h / 5247.0, &k3);
    axpy(&mut t, 49.0 * h / 176.0, &k4);
    axpy(&mut t, -5103.0 * h / 18656.0, &k5);
    let k6 = f(x + h, &t);

    let mut y5 = *y;
    axpy(&mut y5, 35.0 * h / 384.0, &k1);
    axpy(&mut y5, 500.0 * h / 1113.0, &k3);
    axpy(&mut y5, 125.0 * h / 192.0, &k4);
    axpy(&mut y5, -2187.0 * h / 6784.0, &k5);
    axpy(&mut y5, 11.0 * h / 84.0, &k6);

    let k7 = f(x + h, &y5);

    // Difference between the 5th- and 4th-order solutions.
    let e = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let mut err = [Complex64::new(0.0, 0.0); 4];
    for (c, k) in e.iter().zip([&k1, &k2, &k3, &k4, &k5, &k6, &k7]) {
        for i in 0..4 {
            err[i] += *c * h * k[i];
        }
    }
    (y5, err)
}

/// Integrates from `x0` to `x1` (either direction), stopping exactly at each
/// checkpoint and recording the state there.  Checkpoints must be ordered
/// along the direction of integration and lie in `[x0, x1]`.
pub fn integrate_path<F>(
    f: &F,
    x0: f64,
    x1: f64,
    y0: State,
    ctrl: &IntegrationControl,
    checkpoints: &[f64],
) -> Result<Vec<State>>
where
    F: Fn(f64, &State) -> State,
{
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let span = (x1 - x0).abs();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut x = x0;
    let mut y = y0;
    let mut h = dir * (span / 100.0).min(0.1).max(1e-8);
    let mut steps = 0usize;

    for &cp in checkpoints {
        if (cp - x) * dir < -1e-14 * (1.0 + span) {
            return Err(Error::Domain(format!(
                "checkpoint {cp} is behind the integration cursor {x}"
            )));
        }
        while (cp - x) * dir > 1e-14 * (1.0 + span) {
            steps += 1;
            if steps > ctrl.max_steps {
                return Err(Error::StepUnderflow { x });
            }
            if (h.abs()) > (cp - x).abs() {
                h = cp - x;
            }
            let (y5, err) = dp_step(f, x, &y, h);
            let mut err_norm = 0.0f64;
            for i in 0..4 {
                let sc = ctrl.abs_tol + ctrl.rel_tol * y[i].norm().max(y5[i].norm());
                err_norm += (err[i].norm() / sc).powi(2);
            }
            err_norm = (err_norm / 4.0).sqrt();
            if err_norm <= 1.0 {
                x += h;
                y = y5;
            }
            let factor = if err_norm > 0.0 {
                (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                5.0
            };
            h *= factor;
            if h.abs() < 1e-14 * (1.0 + span) {
                return Err(Error::StepUnderflow { x });
            }
        }
        x = cp;
        out.push(y);
    }
    Ok(out)
}

/// Integrates from `x0` to `x1` and returns the final state.
pub fn integrate<F>(f: &F, x0: f64, x1: f64, y0: State, ctrl: &IntegrationControl) -> Result<State>
where
    F: Fn(f64, &State) -> State,
{
    if (x1 - x0).abs() == 0.0 {
        return Ok(y0);
    }
    Ok(integrate_path(f, x0, x1, y0, ctrl, &[x1])?[0])
}
