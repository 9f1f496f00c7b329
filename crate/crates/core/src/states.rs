//! Two-qubit density matrices: construction, validation and the X-shaped
//! parametrisation.

use std::fmt;

use crate::error::{Error, Result};
use crate::matcore::{jacobi_eigenvalues, Complex, Mat4};

pub const TRACE_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite is `-PSD_TOL`.
pub const PSD_TOL: f64 = 1e-10;
/// Slack on the X-state positivity bounds `|u| ≤ √(yz)`, `|v| ≤ √(xw)`.
pub const X_POSITIVITY_TOL: f64 = 1e-10;

/// A validated two-qubit state in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    /// Accepts `mat` if it passes [`validate`] with default tolerances.
    pub fn new(mat: Mat4) -> Result<Self> {
        let report = validate(&mat, &ValidationTolerances::default());
        if report.passed {
            Ok(Self(mat))
        } else {
            Err(Error::InvalidState(report.to_string()))
        }
    }

    pub(crate) fn from_mat_unchecked(mat: Mat4) -> Self {
        Self(mat)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }
}

/// Mixing weight `r` and Bell-like angle `θ` of `r|Φ⟩⟨Φ| + (1-r)I/4`.
///
/// `r` is the weight of the pure component, not `Tr ρ²`; see [`purity_tr`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerLikeParams {
    r: f64,
    theta: f64,
}

impl WernerLikeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::domain("r", r, "[0, 1]"));
        }
        if !theta.is_finite() {
            return Err(Error::domain("theta", theta, "the finite reals"));
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Nonzero entries of an X-shaped state:
///
/// ```text
/// | x  0  0  v |
/// | 0  y  u  0 |
/// | 0  u* z  0 |
/// | v* 0  0  w |
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XElements {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub u: Complex,
    pub v: Complex,
}

impl XElements {
    pub fn to_matrix(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        m[(0, 0)] = Complex::new(self.x, 0.0);
        m[(1, 1)] = Complex::new(self.y, 0.0);
        m[(2, 2)] = Complex::new(self.z, 0.0);
        m[(3, 3)] = Complex::new(self.w, 0.0);
        m[(1, 2)] = self.u;
        m[(2, 1)] = self.u.conj();
        m[(0, 3)] = self.v;
        m[(3, 0)] = self.v.conj();
        m
    }

    /// Checks unit trace, nonnegative populations and the positivity bounds
    /// on the coherences.
    pub fn check(&self) -> Result<()> {
        let populations = [("x", self.x), ("y", self.y), ("z", self.z), ("w", self.w)];
        for (name, value) in populations {
            if !value.is_finite() || value < -TRACE_TOL {
                return Err(Error::domain(name, value, "[0, 1]"));
            }
        }
        let trace = self.x + self.y + self.z + self.w;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::domain("x + y + z + w", trace, "1 within 1e-12"));
        }
        let u_bound = (self.y.max(0.0) * self.z.max(0.0)).sqrt() + X_POSITIVITY_TOL;
        if self.u.norm().is_nan() || self.u.norm() > u_bound {
            return Err(Error::domain("|u|", self.u.norm(), "[0, sqrt(y z)]"));
        }
        let v_bound = (self.x.max(0.0) * self.w.max(0.0)).sqrt() + X_POSITIVITY_TOL;
        if self.v.norm().is_nan() || self.v.norm() > v_bound {
            return Err(Error::domain("|v|", self.v.norm(), "[0, sqrt(x w)]"));
        }
        Ok(())
    }
}

/// Projector onto `sinθ|00⟩ + cosθ|11⟩`.
pub fn bell_like(theta: f64) -> Result<DensityMatrix> {
    Ok(werner_like(&WernerLikeParams::new(1.0, theta)?))
}

/// `r|Φ⟩⟨Φ| + (1-r)/4 · I`.
pub fn werner_like(params: &WernerLikeParams) -> DensityMatrix {
    let (s, c) = params.theta.sin_cos();
    let phi = [
        Complex::new(s, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(c, 0.0),
    ];
    let mixed = Mat4::identity().scale_real((1.0 - params.r) / 4.0);
    DensityMatrix::from_mat_unchecked(Mat4::outer(&phi, &phi).scale_real(params.r) + mixed)
}

/// Reads the X elements of `rho`, failing if any entry outside the X
/// pattern exceeds `tol` in magnitude.
pub fn extract_x(rho: &DensityMatrix, tol: f64) -> Result<XElements> {
    let m = rho.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let on_pattern = i == j || i + j == 3;
            let magnitude = m[(i, j)].norm();
            if !on_pattern && magnitude > tol {
                return Err(Error::NotXForm {
                    row: i,
                    col: j,
                    magnitude,
                });
            }
        }
    }
    Ok(XElements {
        x: m[(0, 0)].re,
        y: m[(1, 1)].re,
        z: m[(2, 2)].re,
        w: m[(3, 3)].re,
        u: m[(1, 2)],
        v: m[(0, 3)],
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationTolerances {
    pub trace: f64,
    pub hermitian: f64,
    pub psd: f64,
}

impl Default for ValidationTolerances {
    fn default() -> Self {
        Self {
            trace: TRACE_TOL,
            hermitian: HERMITIAN_TOL,
            psd: PSD_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationReport {
    /// `|Tr ρ - 1|`.
    pub trace_deviation: f64,
    /// `max |ρ - ρ†|`.
    pub hermiticity_deviation: f64,
    /// Smallest eigenvalue of the Hermitian part; `None` if it could not be
    /// computed (non-finite input or solver failure).
    pub min_eigenvalue: Option<f64>,
    pub passed: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trace deviation {:e}, hermiticity deviation {:e}, min eigenvalue ",
            self.trace_deviation, self.hermiticity_deviation
        )?;
        match self.min_eigenvalue {
            Some(e) => write!(f, "{e:e}")?,
            None => write!(f, "unavailable")?,
        }
        write!(f, " ({})", if self.passed { "pass" } else { "fail" })
    }
}

/// Checks trace, Hermiticity and positivity of an arbitrary 4×4 matrix.
pub fn validate(m: &Mat4, tol: &ValidationTolerances) -> ValidationReport {
    let trace = m.trace();
    let trace_deviation = (trace - Complex::new(1.0, 0.0)).norm();
    let hermiticity_deviation = m.hermiticity_deviation();
    let min_eigenvalue = if m.is_finite() {
        jacobi_eigenvalues(&m.hermitian_part()).ok().map(|e| e[0])
    } else {
        None
    };
    let passed = trace_deviation <= tol.trace
        && hermiticity_deviation <= tol.hermitian
        && min_eigenvalue.is_some_and(|e| e >= -tol.psd);
    ValidationReport {
        trace_deviation,
        hermiticity_deviation,
        min_eigenvalue,
        passed,
    }
}

/// `Tr ρ²`, the conventional purity.
pub fn purity_tr(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    (*m * *m).trace().re
}
