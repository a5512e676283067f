//! Separability criteria and their margins.
//!
//! Every test returns a signed margin: the slack of its inequality, negative
//! when violated. A state is flagged `Entangled` only when the margin drops
//! below `-TOL_CRIT`, so eigensolver round-off can never produce a false
//! flag. All criteria here are one-sided: `Inconclusive` never certifies
//! separability.
//!
//! The detection suite:
//!
//! * `r-moment` — separable states satisfy `r₃ ≥ r₂²`.
//! * `r-hankel-b{l}` — separable states have `B̂_l(r) ⪰ 0`, the moment Hankel
//!   with `r_{i+j+1}` entries and the (0,0) corner `r₁` replaced by 1. The
//!   replacement lands on the diagonal, so `r₁ ≤ 1` (the CCNR bound) keeps
//!   the matrix PSD for separable states.
//! * `ccnr` — separable states have trace norm `r₁ = ‖R(ρ)‖ ≤ 1`.
//! * `q-moment` — separable states satisfy
//!   `q₂² ≤ √((1−Trρ_A²)(1−Trρ_B²))·q₃`: combine `q₂² ≤ q₁q₃` (Gram
//!   positivity of `B₁(q)`) with the separability bound
//!   `q₁ = ‖R(ρ−ρ_A⊗ρ_B)‖ ≤ √((1−Trρ_A²)(1−Trρ_B²))`.
//! * `ppt` — a negative eigenvalue of `ρ^{T_A}` certifies entanglement.
//! * `p3` — PPT states satisfy `p₃ ≥ p₂²`.
//! * `p-hankel-b{l}` — PPT states have `B_l(p) ⪰ 0` (eigenvalues of the
//!   partial transpose then form a measure on `[0, ∞)`).
//!
//! Reference-only diagnostics, reported with margins but never flagged:
//!
//! * `r-hankel-h{k}` — the hatted `Ĥ_k(r)`. Here the `r₁ → 1` replacement
//!   sits *off* the diagonal, and raising an off-diagonal entry does not
//!   preserve positive semidefiniteness: already the maximally mixed
//!   two-qubit state (a separable state) makes `Ĥ₂(r)` indefinite
//!   (`det = −1/64`). The margins are informative for cross-checking but
//!   must not be used as entanglement evidence.
//! * `q-gram-h{k}`, `q-gram-b{l}` — unhatted centered-moment Hankels are
//!   Gram matrices for *every* state; a negative eigenvalue beyond tolerance
//!   signals numerical trouble, not entanglement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::moments::{centered_moments, pt_moments, realignment_moments, MomentKind, MomentVector};
use crate::reshape::{partial_transpose, Subsystem};
use crate::states::DensityMatrix;

/// Absolute margin tolerance below which a violation is called.
pub const TOL_CRIT: f64 = 1e-9;

/// Outcome of one criterion on one state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

/// One criterion's result: a signed margin plus the flagged verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion: String,
    pub verdict: Verdict,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CriterionVerdict {
    fn flagged(criterion: impl Into<String>, margin: f64, witness: impl Into<String>) -> Self {
        Self::flagged_with_tol(criterion, margin, witness, TOL_CRIT)
    }

    fn flagged_with_tol(
        criterion: impl Into<String>,
        margin: f64,
        witness: impl Into<String>,
        tol: f64,
    ) -> Self {
        Self {
            criterion: criterion.into(),
            verdict: if margin < -tol {
                Verdict::Entangled
            } else {
                Verdict::Inconclusive
            },
            margin,
            witness: Some(witness.into()),
        }
    }

    fn diagnostic(criterion: impl Into<String>, margin: f64, witness: impl Into<String>) -> Self {
        Self {
            criterion: criterion.into(),
            verdict: Verdict::Inconclusive,
            margin,
            witness: Some(witness.into()),
        }
    }

    pub fn is_entangled(&self) -> bool {
        self.verdict == Verdict::Entangled
    }
}

/// Hankel families over a moment sequence: `H` has entries `m_{i+j}`, `B`
/// has `m_{i+j+1}`; the hatted variants replace every entry whose moment
/// index is exactly 1 with the literal value 1 (positionally, never by
/// value matching).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelFamily {
    H,
    B,
    HHat,
    BHat,
}

impl HankelFamily {
    fn offset(self) -> usize {
        match self {
            HankelFamily::H | HankelFamily::HHat => 0,
            HankelFamily::B | HankelFamily::BHat => 1,
        }
    }

    fn hatted(self) -> bool {
        matches!(self, HankelFamily::HHat | HankelFamily::BHat)
    }
}

/// Real symmetric `(k+1)×(k+1)` moment Hankel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix {
    order: usize,
    family: HankelFamily,
    source: MomentKind,
    size: usize,
    entries: Vec<f64>,
}

impl HankelMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn family(&self) -> HankelFamily {
        self.family
    }

    pub fn source(&self) -> MomentKind {
        self.source
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.size, self.size, |i, j| {
            num_complex::Complex64::new(self.get(i, j), 0.0)
        })
    }

    /// Smallest eigenvalue; the signed distance from the PSD cone boundary.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eigenvalues(&self.to_complex())?.min())
    }
}

/// Build `H_k`, `B_k`, or a hatted variant from a moment vector.
pub fn build_hankel(m: &MomentVector, family: HankelFamily, k: usize) -> Result<HankelMatrix> {
    let needed = 2 * k + family.offset();
    if m.max_order() < needed {
        return Err(Error::InvalidParameter(format!(
            "Hankel order {k} needs moments up to {needed}, only {} available",
            m.max_order()
        )));
    }
    let size = k + 1;
    let mut entries = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let idx = i + j + family.offset();
            let value = if family.hatted() && idx == 1 { 1.0 } else { m.get(idx) };
            entries.push(value);
        }
    }
    Ok(HankelMatrix {
        order: k,
        family,
        source: m.kind(),
        size,
        entries,
    })
}

fn h_order_max(d: usize) -> usize {
    d / 2
}

fn b_order_max(d: usize) -> usize {
    (d - 1) / 2
}

/// The `r₃ ≥ r₂²` test; margin `r₃ − r₂²`.
pub fn realignment_moment_test(s: &DensityMatrix) -> Result<CriterionVerdict> {
    let r = realignment_moments(s, 3)?;
    Ok(r_moment_verdict(&r))
}

fn r_moment_verdict(r: &MomentVector) -> CriterionVerdict {
    let margin = r.get(3) - r.get(2) * r.get(2);
    CriterionVerdict::flagged(
        "r-moment",
        margin,
        format!("r3 - r2^2 with r2 = {:.6e}, r3 = {:.6e}", r.get(2), r.get(3)),
    )
}

/// Hatted Hankel tests on the realignment moments: flag-capable `B̂_l` plus
/// reference-only `Ĥ_k` (see module docs for why the `Ĥ` family never flags).
pub fn realignment_hankel_tests(s: &DensityMatrix) -> Result<Vec<CriterionVerdict>> {
    let d = s.dims().total();
    let r = realignment_moments(s, d)?;
    r_hankel_verdicts(&r, d)
}

fn r_hankel_verdicts(r: &MomentVector, d: usize) -> Result<Vec<CriterionVerdict>> {
    let mut out = Vec::new();
    for l in 1..=b_order_max(d) {
        let min_eig = build_hankel(r, HankelFamily::BHat, l)?.min_eigenvalue()?;
        out.push(CriterionVerdict::flagged(
            format!("r-hankel-b{l}"),
            min_eig,
            format!("min eigenvalue of B_hat_{l}(r)"),
        ));
    }
    for k in 1..=h_order_max(d) {
        let min_eig = build_hankel(r, HankelFamily::HHat, k)?.min_eigenvalue()?;
        out.push(CriterionVerdict::diagnostic(
            format!("r-hankel-h{k}"),
            min_eig,
            format!("min eigenvalue of H_hat_{k}(r); reference only, not an entanglement flag"),
        ));
    }
    Ok(out)
}

/// Unhatted Gram diagnostics on the centered moments: `H_k(q)` and `B_l(q)`
/// are Gram matrices for every state, so negative eigenvalues beyond
/// tolerance indicate numerical error rather than entanglement.
pub fn centered_gram_diagnostic(s: &DensityMatrix) -> Result<Vec<CriterionVerdict>> {
    let d = s.dims().total();
    let q = centered_moments(s, d)?;
    q_gram_verdicts(&q, d)
}

fn q_gram_verdicts(q: &MomentVector, d: usize) -> Result<Vec<CriterionVerdict>> {
    let mut out = Vec::new();
    for k in 1..=h_order_max(d) {
        let min_eig = build_hankel(q, HankelFamily::H, k)?.min_eigenvalue()?;
        out.push(CriterionVerdict::diagnostic(
            format!("q-gram-h{k}"),
            min_eig,
            format!("min eigenvalue of H_{k}(q); PSD for every state"),
        ));
    }
    for l in 1..=b_order_max(d) {
        let min_eig = build_hankel(q, HankelFamily::B, l)?.min_eigenvalue()?;
        out.push(CriterionVerdict::diagnostic(
            format!("q-gram-b{l}"),
            min_eig,
            format!("min eigenvalue of B_{l}(q); PSD for every state"),
        ));
    }
    Ok(out)
}

/// Centered-moment bound: separable states satisfy
/// `q₂² ≤ √((1−Trρ_A²)(1−Trρ_B²))·q₃`.
pub fn centered_moment_test(s: &DensityMatrix) -> Result<CriterionVerdict> {
    let q = centered_moments(s, 3)?;
    Ok(q_moment_verdict(
        &q,
        s.reduced_purity(Subsystem::A),
        s.reduced_purity(Subsystem::B),
    ))
}

fn q_moment_verdict(q: &MomentVector, purity_a: f64, purity_b: f64) -> CriterionVerdict {
    let bound = ((1.0 - purity_a).max(0.0) * (1.0 - purity_b).max(0.0)).sqrt();
    let margin = bound * q.get(3) - q.get(2) * q.get(2);
    CriterionVerdict::flagged(
        "q-moment",
        margin,
        format!(
            "bound sqrt((1-TrA^2)(1-TrB^2)) = {bound:.6e}, q2 = {:.6e}, q3 = {:.6e}",
            q.get(2),
            q.get(3)
        ),
    )
}

/// CCNR: separable states have `r₁ ≤ 1`; margin `1 − r₁`.
pub fn ccnr_test(s: &DensityMatrix) -> Result<CriterionVerdict> {
    let r = realignment_moments(s, 1)?;
    Ok(ccnr_verdict(r.get(1)))
}

fn ccnr_verdict(r1: f64) -> CriterionVerdict {
    CriterionVerdict::flagged("ccnr", 1.0 - r1, format!("trace norm of R(rho) = {r1:.6e}"))
}

/// PPT: margin is the minimum eigenvalue of the partial transpose.
pub fn ppt_test(s: &DensityMatrix) -> Result<CriterionVerdict> {
    let pt = partial_transpose(s.matrix(), s.dims())?;
    let min_eig = hermitian_eigenvalues(&pt)?.min();
    Ok(ppt_verdict(min_eig))
}

fn ppt_verdict(min_eig: f64) -> CriterionVerdict {
    CriterionVerdict::flagged(
        "ppt",
        min_eig,
        "min eigenvalue of the partial transpose".to_string(),
    )
}

/// The `p₃ ≥ p₂²` PPT-moment test; margin `p₃ − p₂²`.
pub fn pt_moment_test(s: &DensityMatrix) -> Result<CriterionVerdict> {
    let p = pt_moments(s, 3)?;
    Ok(p3_verdict(&p))
}

fn p3_verdict(p: &MomentVector) -> CriterionVerdict {
    let margin = p.get(3) - p.get(2) * p.get(2);
    CriterionVerdict::flagged(
        "p3",
        margin,
        format!("p3 - p2^2 with p2 = {:.6e}, p3 = {:.6e}", p.get(2), p.get(3)),
    )
}

/// PT-moment Hankel tests: separable (indeed any PPT) states have
/// `B_l(p) ⪰ 0` for `l ≤ ⌊(d−1)/2⌋`; `p₁ = 1` already, so no hat is needed.
pub fn pt_hankel_tests(s: &DensityMatrix) -> Result<Vec<CriterionVerdict>> {
    let d = s.dims().total();
    let p = pt_moments(s, d)?;
    p_hankel_verdicts(&p, d)
}

fn p_hankel_verdicts(p: &MomentVector, d: usize) -> Result<Vec<CriterionVerdict>> {
    let mut out = Vec::new();
    for l in 1..=b_order_max(d) {
        let min_eig = build_hankel(p, HankelFamily::B, l)?.min_eigenvalue()?;
        out.push(CriterionVerdict::flagged(
            format!("p-hankel-b{l}"),
            min_eig,
            format!("min eigenvalue of B_{l}(p)"),
        ));
    }
    Ok(out)
}

/// Selectable criterion groups for sweeps, thresholds, and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    RMoment,
    Ccnr,
    RHankel,
    QMoment,
    QGram,
    Ppt,
    P3,
    PHankel,
}

impl Criterion {
    pub const ALL: [Criterion; 8] = [
        Criterion::RMoment,
        Criterion::Ccnr,
        Criterion::RHankel,
        Criterion::QMoment,
        Criterion::QGram,
        Criterion::Ppt,
        Criterion::P3,
        Criterion::PHankel,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Criterion::RMoment => "r-moment",
            Criterion::Ccnr => "ccnr",
            Criterion::RHankel => "r-hankel",
            Criterion::QMoment => "q-moment",
            Criterion::QGram => "q-gram",
            Criterion::Ppt => "ppt",
            Criterion::P3 => "p3",
            Criterion::PHankel => "p-hankel",
        }
    }

    /// Diagnostics report margins but never flag entanglement.
    pub fn is_diagnostic(&self) -> bool {
        matches!(self, Criterion::QGram)
    }

    /// Whether a verdict id belongs to this criterion group for reporting
    /// purposes. Unlike margin aggregation, this includes the reference-only
    /// `r-hankel-h*` entries under `r-hankel`.
    pub fn includes_verdict(&self, id: &str) -> bool {
        match self {
            Criterion::RHankel => id.starts_with("r-hankel"),
            Criterion::QGram => id.starts_with("q-gram"),
            Criterion::PHankel => id.starts_with("p-hankel"),
            other => id == other.id(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Criterion::ALL
            .iter()
            .copied()
            .find(|c| c.id() == text)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown criterion \"{text}\"; expected one of {}",
                    Criterion::ALL.map(|c| c.id()).join(", ")
                ))
            })
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Everything computed once for one state: the three moment vectors and every
/// verdict, in a deterministic order.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub r: MomentVector,
    pub q: MomentVector,
    pub p: MomentVector,
    pub verdicts: Vec<CriterionVerdict>,
}

impl Evaluation {
    /// Any flag-capable criterion fired.
    pub fn is_entangled(&self) -> bool {
        self.verdicts.iter().any(CriterionVerdict::is_entangled)
    }

    fn group_ids(c: Criterion) -> &'static [&'static str] {
        match c {
            Criterion::RMoment => &["r-moment"],
            Criterion::Ccnr => &["ccnr"],
            // flag-capable members only; the Ĥ diagnostics are excluded
            Criterion::RHankel => &["r-hankel-b"],
            Criterion::QMoment => &["q-moment"],
            Criterion::QGram => &["q-gram-"],
            Criterion::Ppt => &["ppt"],
            Criterion::P3 => &["p3"],
            Criterion::PHankel => &["p-hankel-b"],
        }
    }

    fn group_members(&self, c: Criterion) -> impl Iterator<Item = &CriterionVerdict> {
        let prefixes = Self::group_ids(c);
        self.verdicts.iter().filter(move |v| {
            prefixes
                .iter()
                .any(|p| v.criterion == *p || v.criterion.starts_with(*p))
        })
    }

    /// Aggregated margin of one criterion group: the minimum over members.
    pub fn group_margin(&self, c: Criterion) -> f64 {
        self.group_members(c)
            .map(|v| v.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn group_entangled(&self, c: Criterion) -> bool {
        self.group_members(c).any(CriterionVerdict::is_entangled)
    }
}

/// Run every criterion on one state.
pub fn evaluate(s: &DensityMatrix) -> Result<Evaluation> {
    let d = s.dims().total();
    let r = realignment_moments(s, d)?;
    let q = centered_moments(s, d)?;
    let p = pt_moments(s, d)?;
    let pt = partial_transpose(s.matrix(), s.dims())?;
    let pt_min_eig = hermitian_eigenvalues(&pt)?.min();

    let mut verdicts = vec![r_moment_verdict(&r), ccnr_verdict(r.get(1))];
    verdicts.extend(r_hankel_verdicts(&r, d)?);
    verdicts.push(q_moment_verdict(
        &q,
        s.reduced_purity(Subsystem::A),
        s.reduced_purity(Subsystem::B),
    ));
    verdicts.extend(q_gram_verdicts(&q, d)?);
    verdicts.push(ppt_verdict(pt_min_eig));
    verdicts.push(p3_verdict(&p));
    verdicts.extend(p_hankel_verdicts(&p, d)?);

    Ok(Evaluation { r, q, p, verdicts })
}
