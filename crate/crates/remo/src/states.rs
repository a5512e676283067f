//! Density-matrix construction, validation, and file I/O.
//!
//! State files are UTF-8 JSON documents with keys in the fixed order
//! `dA`, `dB`, `re`, `im`; the `re`/`im` fields are row-major `d×d` arrays.
//! Serialization uses shortest round-trip decimals, so
//! `parse_state(serialize_state(s)) == s` holds bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, kron, matmul, ComplexMatrix};
use crate::reshape::{partial_trace, BipartiteDims, Subsystem};
use crate::rng::Rng;

/// Absolute floor on the minimum eigenvalue accepted as positive
/// semidefinite; matches the eigensolver accuracy at these dimensions.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// Absolute tolerance on `|Tr ρ − 1|`.
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// A validated bipartite quantum state: Hermitian, unit trace, positive
/// semidefinite within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a density matrix.
    pub fn new(dims: BipartiteDims, mat: ComplexMatrix) -> Result<Self> {
        let d = dims.total();
        if mat.rows() != d || mat.cols() != d {
            return Err(Error::Dim(format!(
                "state matrix is {}x{} but dims {} require {d}x{d}",
                mat.rows(),
                mat.cols(),
                dims
            )));
        }
        let deviation = mat.hermitian_deviation();
        let tol = mat.hermitian_tolerance();
        if deviation > tol {
            return Err(Error::Validation(format!(
                "not Hermitian: deviation {deviation:.3e} exceeds tolerance {tol:.3e}"
            )));
        }
        let trace = mat.trace();
        let trace_err = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_err > TRACE_TOLERANCE {
            return Err(Error::Validation(format!(
                "trace is {trace} but must be 1 within {TRACE_TOLERANCE:.0e}"
            )));
        }
        let eigs = hermitian_eigenvalues(&mat)?;
        if eigs.min() < -PSD_TOLERANCE {
            return Err(Error::Validation(format!(
                "not positive semidefinite: minimum eigenvalue {:.6e}",
                eigs.min()
            )));
        }
        Ok(Self { dims, mat })
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let sq = matmul(&self.mat, &self.mat).expect("square");
        sq.trace().re
    }

    /// Reduced state on one subsystem.
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace(&self.mat, self.dims, keep).expect("validated dims")
    }

    /// Purity `Tr ρ_X²` of a reduced state.
    pub fn reduced_purity(&self, keep: Subsystem) -> f64 {
        let red = self.reduced(keep);
        matmul(&red, &red).expect("square").trace().re
    }
}

/// The two-qubit family `ρ_p = p·|ψ⟩⟨ψ| + (1−p)/4·I₄` with
/// `|ψ⟩ = (|00⟩ + |11⟩)/√2`; often called the isotropic state elsewhere.
///
/// Explicitly: diagonal `((1+p)/4, (1−p)/4, (1−p)/4, (1+p)/4)` with the
/// (0,3) and (3,0) corners equal to `p/2`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "werner parameter must lie in [0, 1], got {p}"
        )));
    }
    let hi = (1.0 + p) / 4.0;
    let lo = (1.0 - p) / 4.0;
    let corner = p / 2.0;
    let mat = ComplexMatrix::from_fn(4, 4, |i, j| match (i, j) {
        (0, 0) | (3, 3) => Complex64::new(hi, 0.0),
        (1, 1) | (2, 2) => Complex64::new(lo, 0.0),
        (0, 3) | (3, 0) => Complex64::new(corner, 0.0),
        _ => Complex64::new(0.0, 0.0),
    });
    DensityMatrix::new(BipartiteDims::new(2, 2)?, mat)
}

/// Projector onto one of the four maximally entangled two-qubit states.
/// Index 0 is `(|00⟩+|11⟩)/√2`, 1 its sign flip, 2 is `(|01⟩+|10⟩)/√2`,
/// 3 its sign flip.
pub fn bell_state(index: usize) -> Result<DensityMatrix> {
    // Basis amplitudes of the chosen state over |00⟩,|01⟩,|10⟩,|11⟩.
    let amp = 1.0 / 2f64.sqrt();
    let psi: [f64; 4] = match index {
        0 => [amp, 0.0, 0.0, amp],
        1 => [amp, 0.0, 0.0, -amp],
        2 => [0.0, amp, amp, 0.0],
        3 => [0.0, amp, -amp, 0.0],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "Bell state index must be 0..=3, got {index}"
            )))
        }
    };
    let mat = ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new(psi[i] * psi[j], 0.0));
    DensityMatrix::new(BipartiteDims::new(2, 2)?, mat)
}

fn ginibre(rng: &mut Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| rng.standard_complex())
}

fn density_from_ginibre(rng: &mut Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let gram = matmul(&g, &g.dagger()).expect("square");
    let trace = gram.trace().re;
    gram.scale_re(1.0 / trace)
}

/// Random state `G·G†/Tr(G·G†)` with `G` a `d×d` matrix of independent
/// standard complex Gaussians from the seeded generator.
pub fn random_density(dims: BipartiteDims, seed: u64) -> DensityMatrix {
    let mut rng = Rng::seed_from(seed);
    let mat = density_from_ginibre(&mut rng, dims.total());
    DensityMatrix::new(dims, mat).expect("Ginibre construction is a valid state")
}

/// Random separable state `Σ_i w_i · ρ_A^i ⊗ ρ_B^i` with random local states
/// and random convex weights. Separable by construction.
pub fn random_separable(dims: BipartiteDims, num_terms: usize, seed: u64) -> Result<DensityMatrix> {
    if num_terms < 1 {
        return Err(Error::InvalidParameter(format!(
            "num_terms must be at least 1, got {num_terms}"
        )));
    }
    let mut rng = Rng::seed_from(seed);
    // Exponential weights normalized to a convex combination.
    let raw: Vec<f64> = (0..num_terms).map(|_| -rng.uniform_open().ln()).collect();
    let total: f64 = raw.iter().sum();
    let d = dims.total();
    let mut acc = ComplexMatrix::zeros(d, d);
    for w in raw {
        let local_a = density_from_ginibre(&mut rng, dims.d_a());
        let local_b = density_from_ginibre(&mut rng, dims.d_b());
        let term = kron(&local_a, &local_b).scale_re(w / total);
        acc = acc.add(&term).expect("same dims");
    }
    DensityMatrix::new(dims, acc)
}

/// On-disk document shape for a state file.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    #[serde(rename = "dA")]
    d_a: usize,
    #[serde(rename = "dB")]
    d_b: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Serialize a state to the document format: keys `dA`, `dB`, `re`, `im`,
/// two-space indentation, newline-terminated, shortest round-trip decimals.
pub fn serialize_state(s: &DensityMatrix) -> String {
    let d = s.dims().total();
    let row = |i: usize, part: fn(&Complex64) -> f64| -> Vec<f64> {
        (0..d).map(|j| part(&s.matrix().get(i, j))).collect()
    };
    let doc = StateFile {
        d_a: s.dims().d_a(),
        d_b: s.dims().d_b(),
        re: (0..d).map(|i| row(i, |z| z.re)).collect(),
        im: (0..d).map(|i| row(i, |z| z.im)).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

/// Byte offset of a 1-based (line, column) position in `text`.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let mut remaining = line.saturating_sub(1);
    let mut offset = 0;
    for (idx, b) in text.bytes().enumerate() {
        if remaining == 0 {
            return (idx + column.saturating_sub(1)).min(text.len());
        }
        if b == b'\n' {
            remaining -= 1;
            offset = idx + 1;
        }
    }
    (offset + column.saturating_sub(1)).min(text.len())
}

/// Parse and validate a state document.
///
/// Errors are distinguished by kind: malformed JSON is [`Error::Parse`] with
/// the byte offset, inconsistent shapes are [`Error::Dim`], and invariant
/// violations are [`Error::Validation`].
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let doc: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let dims = BipartiteDims::new(doc.d_a, doc.d_b)?;
    let d = dims.total();
    for (name, part) in [("re", &doc.re), ("im", &doc.im)] {
        if part.len() != d || part.iter().any(|row| row.len() != d) {
            return Err(Error::Dim(format!(
                "field \"{name}\" must be a {d}x{d} array for dims {dims}"
            )));
        }
    }
    let mat = ComplexMatrix::new(
        d,
        d,
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| Complex64::new(doc.re[i][j], doc.im[i][j]))
            .collect(),
    )?;
    DensityMatrix::new(dims, mat)
}
