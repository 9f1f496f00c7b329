//! Wootters concurrence, by eigenvalues and by the X-state closed form.

use crate::error::{Error, Result};
use crate::matcore::{eig_general, kron, Mat2, Mat4, DEFLATION_TOL};
use crate::states::{DensityMatrix, XElements};

/// Imaginary parts of `ρρ̃` eigenvalues below this are discarded as rounding.
pub const IMAG_TOL: f64 = 1e-9;
/// Negative eigenvalues of `ρρ̃` down to `-CLAMP_TOL` are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-9;

/// Concurrence in `[0, 1]`: zero for separable states, one for maximally
/// entangled ones.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub(crate) fn from_value(value: f64) -> Self {
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Concurrence> for f64 {
    fn from(c: Concurrence) -> f64 {
        c.0
    }
}

fn sigma_yy() -> Mat4 {
    kron(&Mat2::pauli_y(), &Mat2::pauli_y())
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> Mat4 {
    let yy = sigma_yy();
    yy * rho.matrix().conj() * yy
}

/// `max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄}` over the eigenvalues of `ρρ̃`, sorted
/// in decreasing order.
pub fn concurrence_eig(rho: &DensityMatrix) -> Result<Concurrence> {
    let product = *rho.matrix() * spin_flip(rho);
    let eig = eig_general(&product, DEFLATION_TOL)?;

    let mut lambdas = [0.0; 4];
    for (slot, z) in lambdas.iter_mut().zip(eig) {
        if z.im.abs() > IMAG_TOL {
            return Err(Error::ComplexEigenvalue { re: z.re, im: z.im });
        }
        if z.re < -CLAMP_TOL {
            return Err(Error::NegativeEigenvalue { value: z.re });
        }
        *slot = z.re.max(0.0);
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));

    let roots = lambdas.map(f64::sqrt);
    let value = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(Concurrence(value.max(0.0)))
}

/// `2·max{0, |u| - √(xw), |v| - √(yz)}`.
pub fn concurrence_x(xe: &XElements) -> Concurrence {
    Concurrence(2.0 * x_discriminant(xe).max(0.0))
}

/// `max{|u| - √(xw), |v| - √(yz)}`; positive exactly when the state is
/// entangled.
pub(crate) fn x_discriminant(xe: &XElements) -> f64 {
    let inner = xe.u.norm() - (xe.x * xe.w).sqrt();
    let outer = xe.v.norm() - (xe.y * xe.z).sqrt();
    inner.max(outer)
}
