//! remo — entanglement detection for bipartite density matrices via
//! realignment-moment separability criteria.
//!
//! The library computes three moment sequences of a state ρ on
//! `H_A ⊗ H_B` — realignment moments `r_k`, centered realignment moments
//! `q_k`, and partial-transpose moments `p_k` — and evaluates a family of
//! one-sided separability tests on them (moment inequalities, hatted Hankel
//! positivity, CCNR, PPT). Each test reports a signed margin; a
//! sufficiently negative margin certifies entanglement, while a
//! non-negative one is inconclusive.
//!
//! Modules:
//!
//! * [`linalg`] — dense complex matrices, Jacobi eigenvalues, singular values;
//! * [`reshape`] — vec, realignment, partial transpose, partial trace;
//! * [`states`] — state constructors, validation, file I/O;
//! * [`moments`] — the r/q/p moment sequences;
//! * [`criteria`] — the separability tests and their margins;
//! * [`report`] — the serializable per-state analysis report;
//! * [`sweep`] — family sweeps and threshold bisection;
//! * [`audit`] — randomized ensemble audits of the cross-criterion invariants;
//! * [`rng`] — the seeded xoshiro256** generator behind the ensembles.

pub mod audit;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod moments;
pub mod report;
pub mod reshape;
pub mod rng;
pub mod states;
pub mod sweep;

pub use criteria::{Criterion, CriterionVerdict, Verdict, TOL_CRIT};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use moments::{MomentKind, MomentVector};
pub use report::AnalysisReport;
pub use reshape::{BipartiteDims, Subsystem};
pub use states::DensityMatrix;
pub use sweep::Family;
