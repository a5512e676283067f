//! Parameter sweeps over state families and threshold location by bisection.

use crate::criteria::{evaluate, Criterion};
use crate::error::{Error, Result};
use crate::moments::realignment_moments;
use crate::states::{werner, DensityMatrix};

/// Parameterized state families available to sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `ρ_p = p|ψ⟩⟨ψ| + (1−p)/4·I₄` on two qubits, `p ∈ [0, 1]`.
    Werner,
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Werner => "werner",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "werner" => Ok(Family::Werner),
            other => Err(Error::InvalidParameter(format!(
                "unknown family \"{other}\"; expected \"werner\""
            ))),
        }
    }

    /// Valid parameter range of the family.
    pub fn range(&self) -> (f64, f64) {
        match self {
            Family::Werner => (0.0, 1.0),
        }
    }

    pub fn state(&self, param: f64) -> Result<DensityMatrix> {
        match self {
            Family::Werner => werner(param),
        }
    }
}

/// A sweep request: grid both endpoints inclusive.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub param_start: f64,
    pub param_end: f64,
    pub steps: usize,
    pub criteria: Vec<Criterion>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        let (lo, hi) = self.family.range();
        if !(self.param_start < self.param_end) {
            return Err(Error::InvalidParameter(format!(
                "param_start {} must be below param_end {}",
                self.param_start, self.param_end
            )));
        }
        if self.param_start < lo || self.param_end > hi {
            return Err(Error::InvalidParameter(format!(
                "range [{}, {}] leaves the family's valid range [{lo}, {hi}]",
                self.param_start, self.param_end
            )));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                self.param_start
                    + (self.param_end - self.param_start) * (i as f64) / ((n - 1) as f64)
            })
            .collect()
    }
}

/// One grid point of a sweep: the leading realignment moments, the
/// `f = r₃ − r₂²` slack, and the aggregated margin of each requested
/// criterion (minimum over a group's flag-capable members).
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub param: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub f: f64,
    pub margins: Vec<f64>,
}

/// Evaluate a sweep; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|param| {
            let state = spec.family.state(param)?;
            let e = evaluate(&state)?;
            let margins = spec.criteria.iter().map(|&c| e.group_margin(c)).collect();
            Ok(SweepRow {
                param,
                r1: e.r.get(1),
                r2: e.r.get(2),
                r3: e.r.get(3),
                f: e.r.get(3) - e.r.get(2) * e.r.get(2),
                margins,
            })
        })
        .collect()
}

/// Margin of one criterion group at one family parameter.
pub fn criterion_margin(family: Family, criterion: Criterion, param: f64) -> Result<f64> {
    let state = family.state(param)?;
    // The r-moment margin has a cheap direct path; everything else goes
    // through the full evaluation.
    if criterion == Criterion::RMoment {
        let r = realignment_moments(&state, 3)?;
        return Ok(r.get(3) - r.get(2) * r.get(2));
    }
    Ok(evaluate(&state)?.group_margin(criterion))
}

/// Width of the final bisection bracket.
pub const THRESHOLD_TOLERANCE: f64 = 1e-10;

/// Locate the parameter where a criterion's margin changes sign.
///
/// A coarse pre-scan over `prescan_points` grid points must find exactly one
/// strict sign change (grid values that are exactly zero separate signs but
/// are not crossings themselves); bisection then refines the bracket to
/// [`THRESHOLD_TOLERANCE`]. The result is independent of the pre-scan
/// resolution as long as the scan isolates the same crossing.
pub fn find_threshold(
    family: Family,
    criterion: Criterion,
    prescan_points: usize,
) -> Result<f64> {
    let (lo, hi) = family.range();
    let n = prescan_points.max(3);
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * (i as f64) / ((n - 1) as f64))
        .collect();
    let margins: Vec<f64> = grid
        .iter()
        .map(|&p| criterion_margin(family, criterion, p))
        .collect::<Result<_>>()?;

    let crossings: Vec<usize> = (0..n - 1)
        .filter(|&i| margins[i] * margins[i + 1] < 0.0)
        .collect();
    match crossings.len() {
        0 => {
            return Err(Error::NoSignChange(format!(
                "margin of {} never changes sign on [{lo}, {hi}] for family {}",
                criterion.id(),
                family.id()
            )))
        }
        1 => {}
        k => {
            return Err(Error::NoSignChange(format!(
                "margin of {} changes sign {k} times on [{lo}, {hi}]; no unique threshold",
                criterion.id()
            )))
        }
    }

    let i = crossings[0];
    let (mut a, mut b) = (grid[i], grid[i + 1]);
    let mut fa = margins[i];
    while b - a > THRESHOLD_TOLERANCE {
        let mid = 0.5 * (a + b);
        let fm = criterion_margin(family, criterion, mid)?;
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}
