//! Small dense complex matrices.
//!
//! Only the two sizes a two-qubit problem needs are provided: [`Mat2`] for
//! single-qubit operators and [`Mat4`] for the joint state. The 4×4 type
//! carries two eigenvalue routines: a Hessenberg + shifted QR solver for
//! general (non-normal) matrices and a cyclic Jacobi solver for Hermitian
//! ones. They share no code, so either can serve as a check on the other.

#![allow(clippy::needless_range_loop)]

use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

/// Tolerance for exact algebraic identities (traces, completeness, ...).
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Tolerance used when comparing computed eigenvalues.
pub const EIG_TOL: f64 = 1e-9;

/// Relative size below which a subdiagonal entry is treated as zero.
pub const DEFLATION_TOL: f64 = f64::EPSILON;

/// Iteration cap for the QR eigenvalue solver.
pub const MAX_QR_SWEEPS: usize = 500;

const MAX_JACOBI_SWEEPS: usize = 64;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense N×N complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareMatrix<const N: usize> {
    entries: [[Complex; N]; N],
}

pub type Mat2 = SquareMatrix<2>;
pub type Mat4 = SquareMatrix<4>;

impl<const N: usize> SquareMatrix<N> {
    pub fn zeros() -> Self {
        Self {
            entries: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    /// Builds a matrix without checking entries. Prefer [`Self::try_from_rows`]
    /// for data that did not originate in this crate.
    pub fn from_rows(entries: [[Complex; N]; N]) -> Self {
        Self { entries }
    }

    pub fn try_from_rows(entries: [[Complex; N]; N]) -> Result<Self> {
        let m = Self { entries };
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (i, row) in rows.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                m.entries[i][j] = Complex::new(value, 0.0);
            }
        }
        m
    }

    pub fn from_diag(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i][i] = Complex::new(d, 0.0);
        }
        m
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex; N], b: &[Complex; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = a[i] * b[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> &[[Complex; N]; N] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_finite())
    }

    pub fn trace(&self) -> Complex {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i];
            }
        }
        m
    }

    pub fn scale(&self, factor: Complex) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z *= factor);
        m
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex::new(factor, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `max |m - m†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.dagger()).scale_real(0.5)
    }
}

impl<const N: usize> Default for SquareMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for SquareMatrix<N> {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for SquareMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Add for SquareMatrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for SquareMatrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] -= rhs.entries[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Mul for SquareMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

impl Mat2 {
    pub fn pauli_x() -> Self {
        Self::from_real([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows([
            [ZERO, Complex::new(0.0, -1.0)],
            [Complex::new(0.0, 1.0), ZERO],
        ])
    }

    pub fn pauli_z() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, -1.0]])
    }
}

/// Kronecker product: block `(i, j)` of the result is `a[i][j] · b`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[2 * i + k][2 * j + l] = a.entries[i][j] * b.entries[k][l];
                }
            }
        }
    }
    out
}

/// Eigenvalues of an arbitrary 4×4 complex matrix, in no particular order.
///
/// The matrix is reduced to upper Hessenberg form by Householder
/// reflections and then iterated with single-shift complex QR steps
/// (Wilkinson shift). A subdiagonal entry is deflated once its magnitude
/// falls below `deflation_tol` times the adjacent diagonal scale; the
/// tolerance is floored at machine epsilon. Trailing 2×2 blocks are solved
/// directly, with the smaller root recovered from the determinant so that
/// exactly singular blocks give an exact zero.
pub fn eig_general(m: &Mat4, deflation_tol: f64) -> Result<[Complex; 4]> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let tol = deflation_tol.max(f64::EPSILON);
    let norm = m.frobenius_norm();
    let mut eig = [ZERO; 4];
    if norm == 0.0 {
        return Ok(eig);
    }

    let mut h = hessenberg(m.entries);
    let mut hi: usize = 3;
    let mut sweeps = 0;
    let mut since_deflation = 0;

    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            return Ok(eig);
        }

        // Lowest row of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let scale = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            let scale = if scale == 0.0 { norm } else { scale };
            if h[lo][lo - 1].norm() <= tol * scale {
                h[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if lo + 1 == hi {
            let (big, small) = eig2(h[lo][lo], h[lo][hi], h[hi][lo], h[hi][hi]);
            eig[lo] = big;
            eig[hi] = small;
            if lo == 0 {
                return Ok(eig);
            }
            hi = lo - 1;
            since_deflation = 0;
            continue;
        }

        if sweeps >= MAX_QR_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        since_deflation += 1;

        let shift = if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            h[hi][hi] + Complex::new(0.75 * h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        qr_step(&mut h, lo, hi, shift);
    }
}

/// Spectrum of a Hermitian 4×4 matrix, ascending.
///
/// Fails with [`Error::NotHermitian`] when `max |m - m†|` exceeds `tol`.
pub fn eig_hermitian(m: &Mat4, tol: f64) -> Result<[f64; 4]> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = m.hermiticity_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    jacobi_eigenvalues(&m.hermitian_part())
}

/// Cyclic complex Jacobi on a matrix assumed exactly Hermitian.
pub(crate) fn jacobi_eigenvalues(m: &Mat4) -> Result<[f64; 4]> {
    let mut a = *m;
    let scale = a.frobenius_norm();
    let mut converged = scale == 0.0;

    for _ in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.entries[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                let apq = a.entries[p][q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let app = a.entries[p][p].re;
                let aqq = a.entries[q][q].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let mut j = Mat4::identity();
                j.entries[p][p] = Complex::new(c, 0.0);
                j.entries[p][q] = Complex::new(s, 0.0);
                j.entries[q][p] = -phase.conj() * s;
                j.entries[q][q] = phase.conj() * c;

                a = j.dagger() * a * j;
                a.entries[p][q] = ZERO;
                a.entries[q][p] = ZERO;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    let mut eig = [0.0; 4];
    for (i, e) in eig.iter_mut().enumerate() {
        *e = a.entries[i][i].re;
    }
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn hessenberg(mut h: [[Complex; 4]; 4]) -> [[Complex; 4]; 4] {
    for k in 0..2 {
        let tail: f64 = (k + 2..4).map(|i| h[i][k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let alpha = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };

        let mut v = [ZERO; 4];
        for i in k + 1..4 {
            v[i] = h[i][k];
        }
        v[k + 1] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // P = I - beta v v†, applied as P H P
        for j in 0..4 {
            let s: Complex = (k + 1..4).map(|i| v[i].conj() * h[i][j]).sum();
            for i in k + 1..4 {
                h[i][j] -= v[i] * s * beta;
            }
        }
        for row in h.iter_mut() {
            let s: Complex = (k + 1..4).map(|j| row[j] * v[j]).sum();
            for j in k + 1..4 {
                row[j] -= s * v[j].conj() * beta;
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = ZERO;
        }
    }
    h
}

/// Roots of a 2×2 block `[[a, b], [c, d]]`, larger magnitude first.
fn eig2(a: Complex, b: Complex, c: Complex, d: Complex) -> (Complex, Complex) {
    let mean = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let plus = mean + disc;
    let minus = mean - disc;
    let big = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    let det = a * d - b * c;
    let small = if big == ZERO { ZERO } else { det / big };
    (big, small)
}

fn wilkinson_shift(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let (big, small) = eig2(a, b, c, d);
    if (big - d).norm() <= (small - d).norm() {
        big
    } else {
        small
    }
}

/// Rotation `G = [[c, s], [-s̄, c]]` with `G·[a, b]ᵀ = [*, 0]ᵀ`.
fn givens(a: Complex, b: Complex) -> (f64, Complex) {
    if b == ZERO {
        (1.0, ZERO)
    } else if a == ZERO {
        (0.0, ONE)
    } else {
        let abs_a = a.norm();
        let rho = abs_a.hypot(b.norm());
        (abs_a / rho, (a / abs_a) * b.conj() / rho)
    }
}

/// One shifted QR step `H - σI = QR, H ← RQ + σI` on rows/cols `lo..=hi`.
fn qr_step(h: &mut [[Complex; 4]; 4], lo: usize, hi: usize, shift: Complex) {
    for k in lo..=hi {
        h[k][k] -= shift;
    }
    let mut rotations = [(1.0, ZERO); 3];
    for k in lo..hi {
        let (c, s) = givens(h[k][k], h[k + 1][k]);
        for j in k..=hi {
            let top = h[k][j];
            let bottom = h[k + 1][j];
            h[k][j] = top * c + s * bottom;
            h[k + 1][j] = -s.conj() * top + bottom * c;
        }
        rotations[k] = (c, s);
    }
    for k in lo..hi {
        let (c, s) = rotations[k];
        for row in h.iter_mut().take(k + 2).skip(lo) {
            let left = row[k];
            let right = row[k + 1];
            row[k] = left * c + s.conj() * right;
            row[k + 1] = -s * left + right * c;
        }
    }
    for k in lo..=hi {
        h[k][k] += shift;
    }
}
