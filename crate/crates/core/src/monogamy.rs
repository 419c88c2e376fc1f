//! Monogamy of the geometric discord: the residual D(total) − D(pair1) −
//! D(pair2) for measurements on atom A or atom B, evaluated from the closed
//! forms over parameter grids.
//!
//! For this state family the residual is provably nonnegative; in one branch
//! of each side's case analysis it collapses to exactly 4|x3 x4|², which the
//! tests pin to machine precision.

use crate::discord::{
    closed_ab_from_probs, closed_abc_from_probs, closed_ac_from_probs, closed_b_ac_from_probs,
    closed_ba_from_probs, closed_bc_from_probs,
};
use crate::error::{Error, Result};
use crate::model::{amplitudes, SystemParams};

/// Residuals below this are reported as violations; the slack absorbs
/// floating-point error in quartic polynomials of the amplitudes.
pub const VIOLATION_THRESHOLD: f64 = -1e-10;

/// Which atom the total-system measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// Active branch of the side's case analysis (see [`residual_a`] /
/// [`residual_b`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Branch1,
    Branch2,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Branch1 => write!(f, "branch1"),
            Branch::Branch2 => write!(f, "branch2"),
        }
    }
}

/// One evaluated monogamy inequality.
#[derive(Debug, Clone)]
pub struct MonogamyReport {
    pub params: SystemParams,
    pub t: f64,
    pub side: Side,
    pub d_total: f64,
    pub d_pair1: f64,
    pub d_pair2: f64,
    pub residual: f64,
    pub branch: Branch,
}

impl MonogamyReport {
    pub fn is_violation(&self) -> bool {
        self.residual < VIOLATION_THRESHOLD
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{},{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.params.alpha(),
            self.params.n(),
            self.params.g(),
            self.t,
            self.side,
            self.d_total,
            self.d_pair1,
            self.d_pair2,
            self.residual,
            self.branch
        )
    }
}

pub fn csv_header() -> &'static str {
    "alpha,n,g,t,side,d_total,d_pair1,d_pair2,residual,branch"
}

/// D(ρ_ABC) − D(ρ_AB) − D(ρ_AC), measurement on A. Branch 1 is the regime
/// 2|x1x2|² ≥ (|x1|²−|x3|²)² + (|x2|²−|x4|²)²; in branch 2 the residual is
/// identically 4|x3x4|².
pub fn residual_a(p: &SystemParams, t: f64) -> MonogamyReport {
    let pr = amplitudes(p, t).probabilities();
    let d_total = closed_abc_from_probs(&pr).value;
    let d_pair1 = closed_ab_from_probs(&pr).value;
    let d_pair2 = closed_ac_from_probs(&pr).value;
    let z = (pr[0] - pr[2]).powi(2) + (pr[1] - pr[3]).powi(2);
    let branch = if 2.0 * pr[0] * pr[1] >= z {
        Branch::Branch1
    } else {
        Branch::Branch2
    };
    MonogamyReport {
        params: *p,
        t,
        side: Side::A,
        d_total,
        d_pair1,
        d_pair2,
        residual: d_total - d_pair1 - d_pair2,
        branch,
    }
}

/// D(ρ_BAC) − D(ρ_BA) − D(ρ_BC), measurement on B. Branch 1 is the regime
/// Σ|x_i|⁴ ≥ 2(|x2x3|² + |x1x2|² + |x1x4|²), where the residual is
/// identically 4|x3x4|².
pub fn residual_b(p: &SystemParams, t: f64) -> MonogamyReport {
    let pr = amplitudes(p, t).probabilities();
    let d_total = closed_b_ac_from_probs(&pr).value;
    let d_pair1 = closed_ba_from_probs(&pr).value;
    let d_pair2 = closed_bc_from_probs(&pr).value;
    let quartic: f64 = pr.iter().map(|x| x * x).sum();
    let branch = if quartic >= 2.0 * (pr[1] * pr[2] + pr[0] * pr[1] + pr[0] * pr[3]) {
        Branch::Branch1
    } else {
        Branch::Branch2
    };
    MonogamyReport {
        params: *p,
        t,
        side: Side::B,
        d_total,
        d_pair1,
        d_pair2,
        residual: d_total - d_pair1 - d_pair2,
        branch,
    }
}

/// Summary of a sweep: the extremal residual and the violation count.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub min_residual: f64,
    /// Index into the report list where the minimum was attained.
    pub argmin: usize,
    pub violations: usize,
}

impl SweepSummary {
    pub fn has_violations(&self) -> bool {
        self.violations > 0
    }
}

/// Evaluates both requested sides on the full cartesian grid
/// params × t, in deterministic order.
pub fn sweep(
    params: &[SystemParams],
    ts: &[f64],
    sides: &[Side],
) -> Result<(Vec<MonogamyReport>, SweepSummary)> {
    if params.is_empty() || ts.is_empty() || sides.is_empty() {
        return Err(Error::InvalidGrid(
            "parameter, time and side grids must be non-empty".into(),
        ));
    }
    let mut reports = Vec::with_capacity(params.len() * ts.len() * sides.len());
    for p in params {
        for &t in ts {
            for side in sides {
                reports.push(match side {
                    Side::A => residual_a(p, t),
                    Side::B => residual_b(p, t),
                });
            }
        }
    }
    let summary = summarize(&reports);
    Ok((reports, summary))
}

pub fn summarize(reports: &[MonogamyReport]) -> SweepSummary {
    let mut min_residual = f64::INFINITY;
    let mut argmin = 0;
    let mut violations = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.residual < min_residual {
            min_residual = r.residual;
            argmin = i;
        }
        if r.is_violation() {
            violations += 1;
        }
    }
    SweepSummary {
        min_residual,
        argmin,
        violations,
    }
}
