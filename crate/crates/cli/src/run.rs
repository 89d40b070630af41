//! Scenario execution: dispatch on mode, sweep the grid (in parallel),
//! and assemble output tables.

use num_complex::Complex64;

use quartic_scattering::fullline::{
    b_relation_residual, connection_solve, halfline_shortrange, unitarity_residual,
    IntegrationControl, Potential, Wave,
};
use quartic_scattering::halfline::{
    resolvent_kernel, resonance_classify, scattering_amplitude, spectral_density,
};
use quartic_scattering::quartic::{branch_zeta, BoundaryCondition, Edge};
use quartic_scattering::ssf::{birman_krein_check, levinson_check, ssf};

use crate::config::{Mode, OutputKind, ScenarioConfig};
use crate::output::{Cell, Table};

/// Failure classification mapped to process exit codes by `main`.
#[derive(Debug)]
pub enum RunError {
    /// Exit 1: the configuration itself is malformed.
    Config(String),
    /// Exit 2: a requested check failed its tolerance.
    Validation(String),
    /// Exit 3: the computation hit a numerical degeneracy (eigenvalue
    /// collision, singular matching system, step underflow).
    Numerical(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Validation(m) => write!(f, "validation failure: {m}"),
            RunError::Numerical(m) => write!(f, "numerical degeneracy: {m}"),
        }
    }
}

fn numerical(e: quartic_scattering::Error) -> RunError {
    RunError::Numerical(e.to_string())
}

/// Maps `f` over the items on `jobs` worker threads, preserving order.
pub fn parallel_map<T, U, F>(items: &[T], jobs: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    let mut out: Vec<Option<U>> = (0..items.len()).map(|_| None).collect();
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        for (slice_in, slice_out) in items.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(|| {
                for (t, o) in slice_in.iter().zip(slice_out.iter_mut()) {
                    *o = Some(f(t));
                }
            });
        }
    });
    out.into_iter().map(|o| o.expect("worker filled every slot")).collect()
}

fn num(v: f64) -> Cell {
    Cell::Num(v)
}

pub fn run(config: &ScenarioConfig) -> Result<(Vec<Table>, Option<String>), RunError> {
    config.validate().map_err(RunError::Config)?;
    let jobs = config
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    match config.mode {
        Mode::HalflineExact => run_halfline_exact(config, jobs),
        Mode::HalflineShortrange => run_halfline_shortrange(config, jobs),
        Mode::Fullline => run_fullline(config, jobs),
    }
}

fn tol(config: &ScenarioConfig, name: &str, default: f64) -> f64 {
    config.tolerances.get(name).copied().unwrap_or(default)
}

fn run_halfline_exact(config: &ScenarioConfig, _jobs: usize) -> Result<(Vec<Table>, Option<String>), RunError> {
    let mut validation: Option<String> = None;
    let bc: BoundaryCondition =
        config.bc.as_ref().expect("validated").build().map_err(RunError::Config)?;
    let grid = config.lambda_grid.points();
    let mut tables = Vec::new();

    for kind in &config.outputs {
        match kind {
            OutputKind::Scatter => {
                let curve = ssf(&bc, &grid).map_err(numerical)?;
                let mut t = Table::new(
                    "scatter",
                    &["lambda", "re_s", "im_s", "re_b", "im_b", "xi"],
                );
                for (i, &l) in grid.iter().enumerate() {
                    let sp = scattering_amplitude(&bc, l).map_err(numerical)?;
                    t.push(vec![
                        num(l),
                        num(sp.s.re),
                        num(sp.s.im),
                        num(sp.b.re),
                        num(sp.b.im),
                        num(curve.xi[i]),
                    ]);
                }
                tables.push(t);
            }
            OutputKind::Eigen => {
                let evs = quartic_scattering::ssf::discrete_spectrum(&bc).map_err(numerical)?;
                let mut t = Table::new("eigen", &["lambda", "k", "multiplicity", "kind"]);
                for ev in evs {
                    t.push(vec![
                        num(ev.lambda),
                        num(ev.k),
                        Cell::Int(ev.multiplicity as i64),
                        Cell::Text(format!("{:?}", ev.kind).to_lowercase()),
                    ]);
                }
                tables.push(t);
            }
            OutputKind::Resonance => {
                let class = resonance_classify(&bc).map_err(numerical)?;
                let mut t = Table::new("resonance", &["class", "ssf_jump_quarters"]);
                t.push(vec![
                    Cell::Text(format!("{class:?}")),
                    Cell::Int(class.jump_quarters() as i64),
                ]);
                tables.push(t);
            }
            OutputKind::Ssf => {
                let curve = ssf(&bc, &grid).map_err(numerical)?;
                let mut t = Table::new("ssf", &["lambda", "xi"]);
                for (l, xi) in curve.lambda.iter().zip(&curve.xi) {
                    t.push(vec![num(*l), num(*xi)]);
                }
                tables.push(t);
                let mut j = Table::new("ssf_jumps", &["lambda", "magnitude"]);
                for jump in &curve.jumps {
                    j.push(vec![num(jump.lambda), num(jump.magnitude)]);
                }
                tables.push(j);
            }
            OutputKind::Levinson => {
                let chk = levinson_check(&bc).map_err(numerical)?;
                let mut t = Table::new(
                    "levinson",
                    &["lhs", "rhs", "residual", "n_total", "gamma0", "gamma1"],
                );
                t.push(vec![
                    num(chk.lhs),
                    num(chk.rhs),
                    num(chk.residual),
                    Cell::Int(chk.n_total as i64),
                    Cell::Int(chk.gamma0 as i64),
                    Cell::Int(chk.gamma1 as i64),
                ]);
                tables.push(t);
            }
            OutputKind::Resolvent => {
                // Kernel at z = -1 on a small coordinate grid (y fixed).
                let sp = branch_zeta(Complex64::new(-1.0, 0.0), Edge::OffAxis).unwrap();
                let y = 1.0;
                let mut t = Table::new("resolvent", &["x", "y", "re", "im"]);
                for i in 0..=12 {
                    let x = 0.25 * i as f64;
                    let v = resolvent_kernel(&bc, x, y, &sp).map_err(numerical)?;
                    t.push(vec![num(x), num(y), num(v.re), num(v.im)]);
                }
                tables.push(t);
            }
            OutputKind::Density => {
                let (x, y) = (1.0, 0.5);
                let mut t =
                    Table::new("density", &["lambda", "x", "y", "re_density", "im_density"]);
                for &l in &grid {
                    let d = spectral_density(&bc, x, y, l).map_err(numerical)?;
                    t.push(vec![num(l), num(x), num(y), num(d.re), num(d.im)]);
                }
                tables.push(t);
            }
            OutputKind::Checks => {
                let tol_s = tol(config, "unimodularity", 1e-12);
                let tol_bk = tol(config, "birman_krein", 1e-8);
                let mut worst_s = 0.0f64;
                let mut worst_bk = 0.0f64;
                for &l in &grid {
                    let sp = scattering_amplitude(&bc, l).map_err(numerical)?;
                    worst_s = worst_s.max((sp.s.norm() - 1.0).abs());
                    worst_bk = worst_bk.max(birman_krein_check(&bc, l).map_err(numerical)?);
                }
                let mut t = Table::new("checks", &["name", "value", "tolerance", "pass"]);
                let rows = [
                    ("unimodularity", worst_s, tol_s),
                    ("birman_krein", worst_bk, tol_bk),
                ];
                let mut failed = Vec::new();
                for (name, value, tolerance) in rows {
                    let pass = value <= tolerance;
                    if !pass {
                        failed.push(format!("{name} = {value:.3e} > {tolerance:.1e}"));
                    }
                    t.push(vec![
                        Cell::Text(name.into()),
                        num(value),
                        num(tolerance),
                        Cell::Text(pass.to_string()),
                    ]);
                }
                tables.push(t);
                if !failed.is_empty() {
                    validation = Some(failed.join("; "));
                }
            }
        }
    }
    Ok((tables, validation))
}

fn run_halfline_shortrange(config: &ScenarioConfig, jobs: usize) -> Result<(Vec<Table>, Option<String>), RunError> {
    let mut validation: Option<String> = None;
    let pot = Potential::parse(config.potential.as_deref().expect("validated"))
        .map_err(|e| RunError::Config(e.to_string()))?;
    let ctrl = IntegrationControl::default();
    let grid = config.lambda_grid.points();
    let results = parallel_map(&grid, jobs, |&l| halfline_shortrange(l, &pot, &ctrl));
    let mut tables = Vec::new();
    for kind in &config.outputs {
        match kind {
            OutputKind::Scatter => {
                let mut t = Table::new("scatter", &["lambda", "re_s", "im_s", "re_b", "im_b"]);
                for (&l, r) in grid.iter().zip(&results) {
                    let (s, b) = r.as_ref().map_err(|e| numerical(clone_err(e)))?;
                    t.push(vec![num(l), num(s.re), num(s.im), num(b.re), num(b.im)]);
                }
                tables.push(t);
            }
            OutputKind::Checks => {
                let tol_s = tol(config, "unimodularity", 1e-8);
                let tol_c = tol(config, "coupling", 1e-6);
                let mut worst_s = 0.0f64;
                let mut worst_c = 0.0f64;
                for r in &results {
                    let (s, b) = r.as_ref().map_err(|e| numerical(clone_err(e)))?;
                    worst_s = worst_s.max((s.norm() - 1.0).abs());
                    worst_c = worst_c.max((s * b.conj() - b).norm());
                }
                let mut t = Table::new("checks", &["name", "value", "tolerance", "pass"]);
                let mut failed = Vec::new();
                for (name, value, tolerance) in
                    [("unimodularity", worst_s, tol_s), ("s_b_coupling", worst_c, tol_c)]
                {
                    let pass = value <= tolerance;
                    if !pass {
                        failed.push(format!("{name} = {value:.3e} > {tolerance:.1e}"));
                    }
                    t.push(vec![
                        Cell::Text(name.into()),
                        num(value),
                        num(tolerance),
                        Cell::Text(pass.to_string()),
                    ]);
                }
                tables.push(t);
                if !failed.is_empty() {
                    validation = Some(failed.join("; "));
                }
            }
            other => {
                return Err(RunError::Config(format!(
                    "output `{other:?}` is not available in halfline_shortrange mode"
                )))
            }
        }
    }
    Ok((tables, validation))
}

fn run_fullline(config: &ScenarioConfig, jobs: usize) -> Result<(Vec<Table>, Option<String>), RunError> {
    let mut validation: Option<String> = None;
    let pot = Potential::parse(config.potential.as_deref().expect("validated"))
        .map_err(|e| RunError::Config(e.to_string()))?;
    let ctrl = IntegrationControl::default();
    let grid = config.lambda_grid.points();
    let results = parallel_map(&grid, jobs, |&l| connection_solve(l, &pot, &ctrl));
    let mut tables = Vec::new();
    for kind in &config.outputs {
        match kind {
            OutputKind::Scatter => {
                let mut t = Table::new(
                    "scatter",
                    &[
                        "lambda", "re_s11", "im_s11", "re_s12", "im_s12", "re_s21", "im_s21",
                        "re_s22", "im_s22", "re_b11", "im_b11", "re_b12", "im_b12", "re_b21",
                        "im_b21", "re_b22", "im_b22", "cond",
                    ],
                );
                for (&l, r) in grid.iter().zip(&results) {
                    let conn = r.as_ref().map_err(|e| numerical(clone_err(e)))?;
                    let sm = &conn.sm;
                    let mut row = vec![num(l)];
                    for m in [&sm.s, &sm.b] {
                        for i in 0..2 {
                            for j in 0..2 {
                                row.push(num(m[i][j].re));
                                row.push(num(m[i][j].im));
                            }
                        }
                    }
                    row.push(num(sm.cond));
                    t.push(row);
                }
                tables.push(t);
            }
            OutputKind::Checks => {
                let tol_u = tol(config, "unitarity", 1e-6);
                let tol_b = tol(config, "b_relation", 1e-5);
                let tol_f = tol(config, "flux", 1e-8);
                let mut worst_u = 0.0f64;
                let mut worst_b = 0.0f64;
                let mut worst_f = 0.0f64;
                for r in &results {
                    let conn = r.as_ref().map_err(|e| numerical(clone_err(e)))?;
                    worst_u = worst_u.max(unitarity_residual(&conn.sm));
                    if pot.is_super_exponential() {
                        worst_b = worst_b.max(b_relation_residual(&conn.sm));
                    }
                    for wave in [Wave::One, Wave::Two] {
                        worst_f = worst_f.max(conn.flux_imbalance(wave, pot.radius + 0.5).abs());
                    }
                }
                let mut t = Table::new("checks", &["name", "value", "tolerance", "pass"]);
                let mut rows = vec![("unitarity", worst_u, tol_u), ("flux", worst_f, tol_f)];
                if pot.is_super_exponential() {
                    rows.push(("b_relation", worst_b, tol_b));
                }
                let mut failed = Vec::new();
                for (name, value, tolerance) in rows {
                    let pass = value <= tolerance;
                    if !pass {
                        failed.push(format!("{name} = {value:.3e} > {tolerance:.1e}"));
                    }
                    t.push(vec![
                        Cell::Text(name.into()),
                        num(value),
                        num(tolerance),
                        Cell::Text(pass.to_string()),
                    ]);
                }
                tables.push(t);
                if !failed.is_empty() {
                    validation = Some(failed.join("; "));
                }
            }
            other => {
                return Err(RunError::Config(format!(
                    "output `{other:?}` is not available in fullline mode"
                )))
            }
        }
    }
    Ok((tables, validation))
}

/// The library error is not `Clone`; rebuild a domain error with the same
/// message for reporting.
fn clone_err(e: &quartic_scattering::Error) -> quartic_scattering::Error {
    quartic_scattering::Error::Domain(e.to_string())
}
