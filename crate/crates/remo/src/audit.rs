//! Randomized self-audit: sample Ginibre and separable ensembles, count
//! detections per criterion, and verify the cross-criterion invariants that
//! must hold regardless of entanglement.
//!
//! Checked per state:
//!
//! * `r₂² ≤ r₁·r₃` (a Schatten-norm inequality true for every state);
//! * unhatted `H_k` and `B_l` of both the r- and q-moments are PSD
//!   within tolerance (Gram positivity);
//! * `r₂ = p₂ = Tr ρ²` (realignment permutes entries; the partial transpose
//!   has the same Frobenius norm as the state);
//! * `p₁ = 1`;
//! * an `r-moment` flag implies a `ccnr` flag (`r₂² > r₃` forces `r₁ > 1`);
//! * the `r-hankel-b1` verdict coincides with the `r-moment` verdict;
//! * a `p3` or `p-hankel` flag implies a `ppt` flag (the moment tests relax
//!   PPT);
//! * separable samples are never flagged by any criterion.

use crate::criteria::{build_hankel, Criterion, Evaluation, HankelFamily};
use crate::error::Result;
use crate::moments::MomentVector;
use crate::reshape::BipartiteDims;
use crate::rng::Rng;
use crate::states::{random_density, random_separable, serialize_state, DensityMatrix};

/// Audit request.
#[derive(Debug, Clone, Copy)]
pub struct AuditConfig {
    pub dims: BipartiteDims,
    pub samples: usize,
    pub seed: u64,
}

/// Which ensemble a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Ginibre,
    Separable,
}

impl Ensemble {
    pub fn id(&self) -> &'static str {
        match self {
            Ensemble::Ginibre => "ginibre",
            Ensemble::Separable => "separable",
        }
    }
}

/// A failed invariant, with everything needed to reproduce it.
#[derive(Debug, Clone)]
pub struct AuditViolation {
    pub ensemble: Ensemble,
    pub sample_index: usize,
    pub state_seed: u64,
    pub description: String,
    pub state_document: String,
}

/// Aggregated audit outcome.
#[derive(Debug, Clone)]
pub struct AuditSummary {
    pub dims: BipartiteDims,
    pub samples: usize,
    pub seed: u64,
    /// Detection counts per criterion group, one row per ensemble.
    pub detections: Vec<(Ensemble, Vec<(Criterion, usize)>)>,
    pub invariant_checks: usize,
    pub violation: Option<AuditViolation>,
}

struct InvariantChecker {
    checks: usize,
    failure: Option<String>,
}

impl InvariantChecker {
    fn new() -> Self {
        Self { checks: 0, failure: None }
    }

    fn require(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }
}

fn gram_psd_checks(checker: &mut InvariantChecker, m: &MomentVector, d: usize, label: &str) -> Result<()> {
    for k in 1..=d / 2 {
        let min_eig = build_hankel(m, HankelFamily::H, k)?.min_eigenvalue()?;
        checker.require(min_eig >= -1e-9, || {
            format!("H_{k}({label}) has min eigenvalue {min_eig:.3e}")
        });
    }
    for l in 1..=(d - 1) / 2 {
        let min_eig = build_hankel(m, HankelFamily::B, l)?.min_eigenvalue()?;
        checker.require(min_eig >= -1e-9, || {
            format!("B_{l}({label}) has min eigenvalue {min_eig:.3e}")
        });
    }
    Ok(())
}

fn check_state(
    checker: &mut InvariantChecker,
    e: &Evaluation,
    state: &DensityMatrix,
    separable: bool,
) -> Result<()> {
    let d = state.dims().total();
    let (r1, r2, r3) = (e.r.get(1), e.r.get(2), e.r.get(3));
    checker.require(r2 * r2 <= r1 * r3 + 1e-12, || {
        format!("r2^2 = {:.17e} exceeds r1*r3 = {:.17e}", r2 * r2, r1 * r3)
    });

    gram_psd_checks(checker, &e.r, d, "r")?;
    gram_psd_checks(checker, &e.q, d, "q")?;

    let purity = state.purity();
    checker.require((r2 - purity).abs() <= 1e-10, || {
        format!("r2 = {r2:.17e} differs from purity {purity:.17e}")
    });
    checker.require((e.p.get(2) - purity).abs() <= 1e-10, || {
        format!("p2 = {:.17e} differs from purity {purity:.17e}", e.p.get(2))
    });
    checker.require((e.p.get(1) - 1.0).abs() <= 1e-10, || {
        format!("p1 = {:.17e} is not 1", e.p.get(1))
    });

    if e.group_entangled(Criterion::RMoment) {
        checker.require(e.group_entangled(Criterion::Ccnr), || {
            "r-moment flagged without ccnr".to_string()
        });
    }
    checker.require(
        e.group_entangled(Criterion::RMoment) == e.group_entangled(Criterion::RHankel),
        || "r-hankel-b1 verdict differs from r-moment".to_string(),
    );
    if e.group_entangled(Criterion::P3) || e.group_entangled(Criterion::PHankel) {
        checker.require(e.group_entangled(Criterion::Ppt), || {
            "a PT-moment test flagged without ppt".to_string()
        });
    }
    if separable {
        checker.require(!e.is_entangled(), || {
            let flagged: Vec<&str> = e
                .verdicts
                .iter()
                .filter(|v| v.is_entangled())
                .map(|v| v.criterion.as_str())
                .collect();
            format!("separable sample flagged by {}", flagged.join(", "))
        });
    }
    Ok(())
}

/// Run the audit. Deterministic given the config.
pub fn run_audit(config: &AuditConfig) -> Result<AuditSummary> {
    let mut detections = Vec::new();
    let mut total_checks = 0usize;
    let mut violation = None;

    for (ensemble, stream) in [(Ensemble::Ginibre, 0u64), (Ensemble::Separable, 1u64)] {
        let mut counts: Vec<(Criterion, usize)> =
            Criterion::ALL.iter().map(|&c| (c, 0)).collect();
        for index in 0..config.samples {
            let state_seed = Rng::derive_seed(config.seed, stream * config.samples as u64 + index as u64);
            let state = match ensemble {
                Ensemble::Ginibre => random_density(config.dims, state_seed),
                Ensemble::Separable => {
                    let num_terms = 1 + (state_seed % 4) as usize;
                    random_separable(config.dims, num_terms, state_seed)?
                }
            };
            let evaluation = crate::criteria::evaluate(&state)?;
            for (criterion, count) in counts.iter_mut() {
                if evaluation.group_entangled(*criterion) {
                    *count += 1;
                }
            }
            if violation.is_none() {
                let mut checker = InvariantChecker::new();
                check_state(
                    &mut checker,
                    &evaluation,
                    &state,
                    ensemble == Ensemble::Separable,
                )?;
                total_checks += checker.checks;
                if let Some(description) = checker.failure {
                    violation = Some(AuditViolation {
                        ensemble,
                        sample_index: index,
                        state_seed,
                        description,
                        state_document: serialize_state(&state),
                    });
                }
            }
        }
        detections.push((ensemble, counts));
    }

    Ok(AuditSummary {
        dims: config.dims,
        samples: config.samples,
        seed: config.seed,
        detections,
        invariant_checks: total_checks,
        violation,
    })
}
