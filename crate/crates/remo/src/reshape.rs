//! Structural operators on bipartite matrices: vec, realignment, partial
//! transpose, and partial trace.
//!
//! A `d×d` matrix over `H_A ⊗ H_B` with `d = dA·dB` is viewed as a `dA×dA`
//! array of `dB×dB` blocks `Z_{i,j}`. The realignment flattens each block
//! with the column-major `vec` and stacks the rows in block-column-major
//! order: `vec(Z_{1,1}), …, vec(Z_{dA,1}), vec(Z_{1,2}), …, vec(Z_{dA,dA})`.
//! Some references use block-row-major order instead; the two differ by a row
//! permutation, so every singular value consumed downstream is identical, but
//! fixing one order keeps realigned matrices bit-reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Subsystem dimensions of a bipartite space `H_A ⊗ H_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteDims {
    d_a: usize,
    d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a < 1 || d_b < 1 {
            return Err(Error::Dim(format!(
                "subsystem dimensions must be at least 1, got ({d_a}, {d_b})"
            )));
        }
        Ok(Self { d_a, d_b })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    /// Global dimension `d = dA·dB`.
    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }
}

impl std::fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.d_a, self.d_b)
    }
}

/// Which subsystem an operation acts on or keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Column-major flattening of an `m×n` matrix into a `1×(m·n)` row vector:
/// `(c_11, …, c_m1, c_12, …, c_m2, …, c_mn)`.
pub fn vec_row(c: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (c.rows(), c.cols());
    ComplexMatrix::from_fn(1, m * n, |_, t| c.get(t % m, t / m))
}

fn check_state_dims(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<usize> {
    let d = dims.total();
    if rho.rows() != d || rho.cols() != d {
        return Err(Error::Dim(format!(
            "matrix is {}x{} but dims {} require {d}x{d}",
            rho.rows(),
            rho.cols(),
            dims
        )));
    }
    Ok(d)
}

/// Realigned matrix: each `dB×dB` block becomes one row (its `vec`), rows
/// ordered block-column-major. The result is `dA² × dB²`.
pub fn realign(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    check_state_dims(rho, dims)?;
    let (da, db) = (dims.d_a(), dims.d_b());
    Ok(ComplexMatrix::from_fn(da * da, db * db, |row, t| {
        let i = row % da; // block row
        let j = row / da; // block column
        let r = t % db;
        let c = t / db;
        rho.get(i * db + r, j * db + c)
    }))
}

/// Partial transpose on subsystem A: block `(i, j)` of the result is block
/// `(j, i)` of the input. Hermitian inputs stay Hermitian.
pub fn partial_transpose(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    check_state_dims(rho, dims)?;
    let db = dims.d_b();
    Ok(ComplexMatrix::from_fn(rho.rows(), rho.cols(), |gi, gj| {
        let (i, a) = (gi / db, gi % db);
        let (j, b) = (gj / db, gj % db);
        rho.get(j * db + a, i * db + b)
    }))
}

/// Trace out one subsystem; keeps the other. Preserves the trace.
pub fn partial_trace(rho: &ComplexMatrix, dims: BipartiteDims, keep: Subsystem) -> Result<ComplexMatrix> {
    check_state_dims(rho, dims)?;
    let (da, db) = (dims.d_a(), dims.d_b());
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|b| rho.get(i * db + b, j * db + b)).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |a, b| {
            (0..da).map(|i| rho.get(i * db + a, i * db + b)).sum()
        }),
    };
    Ok(out)
}
