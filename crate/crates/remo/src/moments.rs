//! The three moment sequences of a bipartite state.
//!
//! * Realignment moments `r_k = Tr[(R(ρ)R(ρ)†)^{k/2}]`, evaluated exactly as
//!   power sums of the singular values of `R(ρ)` — the half-power trace of a
//!   PSD matrix *is* the power sum of the square roots of its eigenvalues, so
//!   no fractional matrix powers are ever formed.
//! * Centered moments `q_k`: the same construction applied to
//!   `ρ − ρ_A ⊗ ρ_B`, the deviation from the product of the marginals.
//! * Partial-transpose moments `p_k = Tr[(ρ^{T_A})^k]`, signed power sums of
//!   the (possibly negative) eigenvalues of the partial transpose.
//!
//! Index 0 carries the convention `r_0 = q_0 = p_0 = d`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, kron, singular_values, Spectrum};
use crate::reshape::{partial_transpose, realign, Subsystem};
use crate::states::DensityMatrix;

/// Which moment sequence a vector holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentKind {
    /// Realignment moments `r_k`.
    R,
    /// Centered realignment moments `q_k`.
    Q,
    /// Partial-transpose moments `p_k`.
    P,
}

/// Moment sequence `(m_0, m_1, …, m_K)` with `m_0 = d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentVector {
    kind: MomentKind,
    values: Vec<f64>,
}

impl MomentVector {
    fn from_spectrum(kind: MomentKind, d: usize, spectrum: &Spectrum, max_order: usize) -> Self {
        let mut values = Vec::with_capacity(max_order + 1);
        values.push(d as f64);
        for k in 1..=max_order {
            values.push(spectrum.power_sum(k as u32));
        }
        Self { kind, values }
    }

    pub fn kind(&self) -> MomentKind {
        self.kind
    }

    /// Highest order `K`; the vector has `K + 1` entries.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// `m_k`; panics if `k` exceeds the stored order.
    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Realignment moments up to `max_order`.
pub fn realignment_moments(s: &DensityMatrix, max_order: usize) -> Result<MomentVector> {
    let r = realign(s.matrix(), s.dims())?;
    let sv = singular_values(&r)?;
    Ok(MomentVector::from_spectrum(
        MomentKind::R,
        s.dims().total(),
        &sv,
        max_order,
    ))
}

/// Centered realignment moments up to `max_order`.
pub fn centered_moments(s: &DensityMatrix, max_order: usize) -> Result<MomentVector> {
    let product = kron(&s.reduced(Subsystem::A), &s.reduced(Subsystem::B));
    let centered = s.matrix().sub(&product)?;
    let r = realign(&centered, s.dims())?;
    let sv = singular_values(&r)?;
    Ok(MomentVector::from_spectrum(
        MomentKind::Q,
        s.dims().total(),
        &sv,
        max_order,
    ))
}

/// Partial-transpose moments up to `max_order`; eigenvalues enter signed.
pub fn pt_moments(s: &DensityMatrix, max_order: usize) -> Result<MomentVector> {
    let pt = partial_transpose(s.matrix(), s.dims())?;
    let eigs = hermitian_eigenvalues(&pt)?;
    Ok(MomentVector::from_spectrum(
        MomentKind::P,
        s.dims().total(),
        &eigs,
        max_order,
    ))
}
