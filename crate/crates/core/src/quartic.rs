//! Branch-correct quartic root, boundary-condition parameter sets, and the
//! characteristic polynomial `Omega` whose zeros encode the discrete spectrum.
//!
//! The spectral parameter `z` lives on the plane cut along `[0, +inf)`.  The
//! quartic root `zeta = z^{1/4}` is taken with `arg zeta` in `(0, pi/2)`, so
//! `zeta` maps the cut plane onto the open first quadrant; the two edges of
//! the cut correspond to `zeta = k` (upper) and `zeta = i k` (lower) with
//! `k = lambda^{1/4} > 0`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Imaginary unit, kept as a crate-wide shorthand.
pub const J: Complex64 = Complex64::new(0.0, 1.0);

/// Relative threshold deciding whether a polynomial coefficient is "present".
pub const COEFF_REL_TOL: f64 = 1e-12;

/// Which side of the cut `[0, +inf)` a spectral point sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// `z` strictly off the cut.
    OffAxis,
    /// `z = lambda + i0`, `lambda > 0`; here `zeta = lambda^{1/4}`.
    UpperEdge,
    /// `z = lambda - i0`, `lambda > 0`; here `zeta = i lambda^{1/4}`.
    LowerEdge,
}

/// A spectral parameter together with its branch-correct quartic root.
#[derive(Clone, Copy, Debug)]
pub struct SpectralPoint {
    pub z: Complex64,
    pub zeta: Complex64,
    pub edge: Edge,
}

/// Computes `zeta = z^{1/4}` with `arg zeta` in `[0, pi/2]`, using
/// `arg z` in `[0, 2 pi]` (edge flags select an endpoint of that range).
pub fn branch_zeta(z: Complex64, edge: Edge) -> Result<SpectralPoint> {
    if z.norm() == 0.0 {
        return Err(Error::BranchPoint);
    }
    let zeta = match edge {
        Edge::OffAxis => {
            let r = z.norm().powf(0.25);
            let mut arg = z.arg();
            if arg < 0.0 {
                arg += 2.0 * PI;
            }
            Complex64::from_polar(r, arg / 4.0)
        }
        Edge::UpperEdge | Edge::LowerEdge => {
            if z.re <= 0.0 || z.im.abs() > 1e-13 * z.re.abs() {
                return Err(Error::EdgeOffAxis(z));
            }
            let k = z.re.powf(0.25);
            if edge == Edge::UpperEdge {
                Complex64::new(k, 0.0)
            } else {
                Complex64::new(0.0, k)
            }
        }
    };
    Ok(SpectralPoint { z, zeta, edge })
}

/// Spectral point on the upper edge of the cut, `z = lambda + i0`.
pub fn upper_edge(lambda: f64) -> Result<SpectralPoint> {
    if lambda <= 0.0 {
        return Err(Error::NonpositiveLambda(lambda));
    }
    branch_zeta(Complex64::new(lambda, 0.0), Edge::UpperEdge)
}

/// Boundary-condition family at the endpoint `x = 0` of the half-line.
///
/// Every self-adjoint realization of the fourth derivative on the half-line
/// with separated local conditions falls into one of these families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `u''(0) = alpha u(0) + alpha1 u'(0)`,
    /// `u'''(0) = -alpha2 u(0) - conj(alpha) u'(0)`.
    Generic,
    /// `u'(0) = alpha u(0)`, `-u'''(0) + conj(alpha) u''(0) = alpha2 u(0)`.
    ThreeParam,
    /// `u(0) = 0`, `u''(0) = alpha1 u'(0)`.
    OneParam,
    /// `u(0) = u'(0) = 0`; the reference operator.
    Clamped,
    /// `u''(0) = u'''(0) = 0` (Generic with all parameters zero marks the
    /// same operator; this variant uses the parameter-free closed forms).
    Free,
    /// `u(0) = u''(0) = 0`.
    NavierH00,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::ThreeParam => "three-param",
            Family::OneParam => "one-param",
            Family::Clamped => "clamped",
            Family::Free => "free",
            Family::NavierH00 => "navier",
        }
    }
}

/// Parameter set of a self-adjoint boundary condition.
///
/// Unused parameters of a family must stay zero; the constructors enforce
/// this.  `alpha` is complex, `alpha1` and `alpha2` are real, and the
/// derived quantity `alpha0 = alpha1 alpha2 - |alpha|^2` is the determinant
/// of the interaction matrix.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryCondition {
    pub family: Family,
    pub alpha: Complex64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl BoundaryCondition {
    pub fn generic(alpha: Complex64, alpha1: f64, alpha2: f64) -> Self {
        Self { family: Family::Generic, alpha, alpha1, alpha2 }
    }

    pub fn three_param(alpha: Complex64, alpha2: f64) -> Self {
        Self { family: Family::ThreeParam, alpha, alpha1: 0.0, alpha2 }
    }

    pub fn one_param(alpha1: f64) -> Self {
        Self { family: Family::OneParam, alpha: Complex64::new(0.0, 0.0), alpha1, alpha2: 0.0 }
    }

    pub fn clamped() -> Self {
        Self { family: Family::Clamped, alpha: Complex64::new(0.0, 0.0), alpha1: 0.0, alpha2: 0.0 }
    }

    pub fn free() -> Self {
        Self { family: Family::Free, alpha: Complex64::new(0.0, 0.0), alpha1: 0.0, alpha2: 0.0 }
    }

    pub fn navier_h00() -> Self {
        Self { family: Family::NavierH00, alpha: Complex64::new(0.0, 0.0), alpha1: 0.0, alpha2: 0.0 }
    }

    /// Determinant of the interaction matrix, `alpha1 alpha2 - |alpha|^2`.
    /// Only meaningful for the `Generic` family.
    pub fn alpha0(&self) -> f64 {
        self.alpha1 * self.alpha2 - self.alpha.norm_sqr()
    }

    /// Magnitude scale of the parameters, used for relative tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.alpha.norm() + self.alpha1.abs() + self.alpha2.abs()
    }
}

/// The interaction matrix `A = [[alpha2, conj(alpha)], [alpha, alpha1]]`
/// attached to a `Generic` boundary condition.  It is Hermitian, and its
/// inertia counts the negative eigenvalues of the operator.
#[derive(Clone, Copy, Debug)]
pub struct InteractionMatrix {
    pub a: [[Complex64; 2]; 2],
}

impl InteractionMatrix {
    pub fn from_bc(bc: &BoundaryCondition) -> Result<Self> {
        if bc.family != Family::Generic {
            return Err(Error::UnsupportedFamily(bc.family.name()));
        }
        Ok(Self {
            a: [
                [Complex64::new(bc.alpha2, 0.0), bc.alpha.conj()],
                [bc.alpha, Complex64::new(bc.alpha1, 0.0)],
            ],
        })
    }
}

/// Inertia `(n_minus, n_zero, n_plus)` of the interaction matrix of a
/// `Generic` boundary condition.
///
/// The eigenvalues of the 2x2 Hermitian matrix are computed in closed form;
/// an eigenvalue counts as zero when its magnitude is below
/// `1e-12 * (1 + ||A||)`.
pub fn matrix_a_signature(bc: &BoundaryCondition) -> Result<(usize, usize, usize)> {
    let m = InteractionMatrix::from_bc(bc)?;
    let tr = bc.alpha1 + bc.alpha2;
    let det = bc.alpha0();
    // Discriminant of the characteristic polynomial of a Hermitian matrix is
    // non-negative; clamp tiny negative round-off.
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let mu = [(tr - disc) / 2.0, (tr + disc) / 2.0];
    let norm = m.a.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    let tol = COEFF_REL_TOL * (1.0 + norm);
    let mut sig = (0usize, 0usize, 0usize);
    for e in mu {
        if e < -tol {
            sig.0 += 1;
        } else if e > tol {
            sig.2 += 1;
        } else {
            sig.1 += 1;
        }
    }
    Ok(sig)
}

/// The polynomial `Omega(zeta) = sum_j omega_j zeta^j` of degree at most 4.
///
/// Its zeros in the closed first quadrant carry the discrete spectrum: zeros
/// on the ray `arg zeta = pi/4` are negative eigenvalues, zeros on the
/// positive real axis are eigenvalues embedded in the continuous spectrum.
/// It satisfies the conjugation symmetry
/// `conj(Omega(zeta)) = Omega(i conj(zeta))`.
#[derive(Clone, Copy, Debug)]
pub struct OmegaPolynomial {
    pub coeffs: [Complex64; 5],
}

impl OmegaPolynomial {
    pub fn new(coeffs: [Complex64; 5]) -> Self {
        Self { coeffs }
    }

    /// Horner evaluation of `Omega(zeta)`.
    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * zeta + c;
        }
        acc
    }

    /// Horner evaluation of `Omega'(zeta)`.
    pub fn deriv_eval(&self, zeta: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (1..=4).rev() {
            acc = acc * zeta + self.coeffs[j] * (j as f64);
        }
        acc
    }

    /// Magnitude scale of `Omega` near `|zeta| = r`, used as a relative
    /// measure when testing `|Omega(zeta)|` against zero.
    pub fn scale_at(&self, r: f64) -> f64 {
        let mut s = 1.0;
        let mut p = 1.0;
        for c in self.coeffs.iter() {
            s += c.norm() * p;
            p *= r;
        }
        s
    }

    /// Indices `(gamma0, gamma1)` of the lowest and highest nonzero
    /// coefficient; a coefficient is nonzero when its magnitude exceeds
    /// `1e-12` times the largest coefficient magnitude.
    pub fn gamma_indices(&self) -> Result<(usize, usize)> {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Err(Error::ZeroPolynomial);
        }
        let tol = COEFF_REL_TOL * max;
        let g0 = self.coeffs.iter().position(|c| c.norm() > tol).ok_or(Error::ZeroPolynomial)?;
        let g1 = 4 - self
            .coeffs
            .iter()
            .rev()
            .position(|c| c.norm() > tol)
            .ok_or(Error::ZeroPolynomial)?;
        Ok((g0, g1))
    }

    /// Coefficients of the real polynomial `r(k) = Omega(e^{i pi/4} k)`.
    ///
    /// The conjugation symmetry of `Omega` forces each `omega_j e^{i j pi/4}`
    /// to be real, so `r` has real coefficients; its positive roots are the
    /// quartic roots `k` of negative eigenvalues `lambda = -k^4`.
    pub fn real_ray_coeffs(&self) -> [f64; 5] {
        let mut r = [0.0; 5];
        for (j, c) in self.coeffs.iter().enumerate() {
            let rotated = c * Complex64::from_polar(1.0, FRAC_PI_4 * j as f64);
            debug_assert!(
                rotated.im.abs() <= 1e-10 * (1.0 + rotated.re.abs()),
                "coefficient {j} is not real on the diagonal ray: {rotated}"
            );
            r[j] = rotated.re;
        }
        r
    }
}

/// Builds `Omega` from a boundary condition.
///
/// * `Generic`:   `alpha0 + (1-i) alpha2 zeta + 2i Re(alpha) zeta^2
///                 - (1+i) alpha1 zeta^3 - zeta^4`
/// * `ThreeParam`: `alpha2 + (1-i)|alpha|^2 zeta - 2i Re(alpha) zeta^2
///                 - (1+i) zeta^3`
/// * `OneParam`:  `alpha1 + (1-i) zeta`
/// * `Clamped`:   `1` (the reference operator carries no perturbation)
/// * `Free`:      `-(1+i) zeta^3`
/// * `NavierH00`: `(1-i) zeta`
pub fn omega_from_bc(bc: &BoundaryCondition) -> OmegaPolynomial {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let coeffs = match bc.family {
        Family::Generic => [
            Complex64::new(bc.alpha0(), 0.0),
            Complex64::new(1.0, -1.0) * bc.alpha2,
            2.0 * J * bc.alpha.re,
            -Complex64::new(1.0, 1.0) * bc.alpha1,
            -one,
        ],
        Family::ThreeParam => [
            Complex64::new(bc.alpha2, 0.0),
            Complex64::new(1.0, -1.0) * bc.alpha.norm_sqr(),
            -2.0 * J * bc.alpha.re,
            -Complex64::new(1.0, 1.0),
            zero,
        ],
        Family::OneParam => [
            Complex64::new(bc.alpha1, 0.0),
            Complex64::new(1.0, -1.0),
            zero,
            zero,
            zero,
        ],
        Family::Clamped => [one, zero, zero, zero, zero],
        Family::Free => [zero, zero, zero, -Complex64::new(1.0, 1.0), zero],
        Family::NavierH00 => [zero, Complex64::new(1.0, -1.0), zero, zero, zero],
    };
    OmegaPolynomial::new(coeffs)
}

/// Roots of a real polynomial of degree `<= 4` (ascending coefficients) via
/// the companion-matrix eigenvalue problem.
pub fn real_poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    // Strip trailing zero coefficients down to the true degree.
    let mut deg = coeffs.len().saturating_sub(1);
    let lead_tol = 1e-14 * coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    while deg > 0 && coeffs[deg].abs() <= lead_tol {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    // Deflate exact zero roots (vanishing low-order coefficients): besides
    // being cheaper, this keeps a nilpotent companion block — on which the
    // Schur iteration can stall — out of the eigenvalue solve.
    let mut low = 0usize;
    while low < deg && coeffs[low].abs() <= lead_tol {
        low += 1;
    }
    if low > 0 {
        let mut roots = vec![Complex64::new(0.0, 0.0); low];
        roots.extend(real_poly_roots(&coeffs[low..]));
        return roots;
    }
    let lead = coeffs[deg];
    match deg {
        1 => vec![Complex64::new(-coeffs[0] / lead, 0.0)],
        2 => {
            let (a, b, c) = (coeffs[2], coeffs[1], coeffs[0]);
            let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
            let two_a = 2.0 * a;
            vec![
                (Complex64::new(-b, 0.0) + disc) / two_a,
                (Complex64::new(-b, 0.0) - disc) / two_a,
            ]
        }
        n => {
            let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
            for i in 1..n {
                m[(i, i - 1)] = 1.0;
            }
            for i in 0..n {
                m[(i, n - 1)] = -coeffs[i] / lead;
            }
            m.complex_eigenvalues().iter().copied().collect()
        }
    }
}
