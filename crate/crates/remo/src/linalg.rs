//! Dense complex matrices and the spectral routines everything else is built on.
//!
//! All matrices downstream are small (at most a few dozen rows), so eigenvalues
//! are computed with a cyclic Jacobi iteration on the Hermitian input and
//! singular values via the eigenvalues of the smaller Gram matrix. That keeps
//! the crate dependency-free on the linear-algebra side while staying near
//! machine precision at these sizes.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard sweep budget for the Jacobi iteration; exceeding it is an error,
/// never a silent return.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense complex matrix, row-major storage. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dim(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dim(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if let Some(z) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation(format!("non-finite entry {z}")));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.entries[i * self.cols + j] = z;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − A†‖_F`, zero iff exactly Hermitian.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j) - self.get(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Scale-relative Hermiticity tolerance: `1e-10 · max(1, ‖A‖_F)`.
    pub fn hermitian_tolerance(&self) -> f64 {
        1e-10 * self.frobenius_norm().max(1.0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermitian_deviation() <= self.hermitian_tolerance()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dim(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dim(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest absolute entry-wise difference; handy for approximate comparisons.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Matrix product `a · b`.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dim(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..b.cols {
                let v = out.get(i, j) + aik * b.get(k, j);
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// Kronecker product `a ⊗ b`, dims `(a.rows·b.rows) × (a.cols·b.cols)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols)
    })
}

/// Conjugate transpose as a free function, mirroring the other operations.
pub fn conjugate_transpose(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

/// Whether a spectrum holds eigenvalues or singular values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Eigen,
    Singular,
}

/// Real spectrum, sorted non-increasing. Singular spectra are non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    kind: SpectrumKind,
    values: Vec<f64>,
}

impl Spectrum {
    fn new(kind: SpectrumKind, mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite spectrum"));
        Self { kind, values }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Power sum `Σ_i v_i^k` over the spectrum (signed for eigenvalues).
    pub fn power_sum(&self, k: u32) -> f64 {
        self.values.iter().map(|v| v.powi(k as i32)).sum()
    }
}

/// Eigenvalues of a Hermitian matrix, descending, via cyclic Jacobi rotations.
///
/// The input must be Hermitian within [`ComplexMatrix::hermitian_tolerance`];
/// the iteration then runs on the Hermitized average `(A + A†)/2`. Convergence
/// is declared once the off-diagonal Frobenius norm drops below
/// `1e-14 · ‖A‖_F`; more than [`JACOBI_MAX_SWEEPS`] sweeps is an error.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::Dim(format!("eigenvalues need a square matrix, got {}x{}", a.rows, a.cols)));
    }
    let deviation = a.hermitian_deviation();
    let tolerance = a.hermitian_tolerance();
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation, tolerance });
    }
    let n = a.rows;
    // Hermitize to strip the below-tolerance asymmetric part.
    let mut work = ComplexMatrix::from_fn(n, n, |i, j| (a.get(i, j) + a.get(j, i).conj()) * 0.5);

    let scale = work.frobenius_norm();
    if scale == 0.0 {
        return Ok(Spectrum::new(SpectrumKind::Eigen, vec![0.0; n]));
    }
    let off_target = 1e-14 * scale;
    // Rotations on elements below this cannot matter for the off-norm target.
    let elem_skip = off_target / (2.0 * n as f64);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&work) <= off_target {
            let eigs = (0..n).map(|i| work.get(i, i).re).collect();
            return Ok(Spectrum::new(SpectrumKind::Eigen, eigs));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut work, p, q, elem_skip);
            }
        }
    }
    Err(Error::NoConvergence {
        max_sweeps: JACOBI_MAX_SWEEPS,
        off_norm: off_diagonal_norm(&work),
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a.get(p, q).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry of a Hermitian
/// working matrix. The unitary acts on the (p, q) plane as
/// `[[c, -s·e^{iφ}], [s·e^{-iφ}, c]]` with `φ = arg a_pq`, which keeps the
/// diagonal real by construction.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize, elem_skip: f64) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r <= elem_skip {
        return;
    }
    let phase = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    // Smaller-magnitude root of t² − 2τt − 1 = 0.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    a.set(p, p, Complex64::new(app + t * r, 0.0));
    a.set(q, q, Complex64::new(aqq - t * r, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    let n = a.rows;
    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let ajp = a.get(j, p);
        let ajq = a.get(j, q);
        let new_jp = ajp * c + ajq * s * phase.conj();
        let new_jq = -ajp * s * phase + ajq * c;
        a.set(j, p, new_jp);
        a.set(j, q, new_jq);
        a.set(p, j, new_jp.conj());
        a.set(q, j, new_jq.conj());
    }
}

/// Singular values of any rectangular matrix, descending.
///
/// Computed as square roots of the eigenvalues of the smaller Gram matrix
/// (`a·a†` or `a†·a`), which is exactly Hermitian in floating point. Gram
/// eigenvalues below `1e-13` of the largest are treated as exact zeros: they
/// sit at the eigensolver's round-off floor, and taking their square roots
/// would otherwise inflate trace norms of exactly-low-rank matrices by
/// `~sqrt(eps)`. The count equals `min(rows, cols)`.
pub fn singular_values(a: &ComplexMatrix) -> Result<Spectrum> {
    let gram = if a.rows <= a.cols {
        matmul(a, &a.dagger())?
    } else {
        matmul(&a.dagger(), a)?
    };
    let eigs = hermitian_eigenvalues(&gram)?;
    let floor = 1e-13 * eigs.max().max(0.0);
    let values = eigs
        .values()
        .iter()
        .map(|&l| if l <= floor { 0.0 } else { l.sqrt() })
        .collect();
    Ok(Spectrum::new(SpectrumKind::Singular, values))
}

/// Positive-semidefiniteness by minimum eigenvalue: `is_psd ⇔ λ_min ≥ −tol`.
pub fn min_eigenvalue_psd_check(a: &ComplexMatrix, tol: f64) -> Result<(bool, f64)> {
    let eigs = hermitian_eigenvalues(a)?;
    let min_eig = eigs.min();
    Ok((min_eig >= -tol, min_eig))
}
