//! Separability criteria as verdict-producing checks on bipartite states.
//!
//! Every check returns a [`CriterionReport`] carrying a signed score:
//!
//! * eigenvalue-margin criteria (partial transpose, reduction, Φ) store the
//!   minimum eigenvalue of the mapped state and flag entanglement when it
//!   drops below `−tol`;
//! * the realignment check stores the trace-norm excess `‖R(ρ)‖₁ − 1` and
//!   the majorization check the largest cumulative-spectrum violation, both
//!   flagging entanglement when the score exceeds `+tol`.
//!
//! A verdict of [`Verdict::Inconclusive`] never certifies separability; it
//! only means the criterion at hand did not fire.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{
    apply_local_map, hermitian_eigenvalues, partial_trace, tensor_product, trace_norm,
    ComplexMatrix, Subsystem,
};
use crate::maps::OperatorMap;
use crate::Result;

/// Validation tolerances for density matrices.
const STATE_HERMITICITY_TOL: f64 = 1e-10;
const STATE_TRACE_TOL: f64 = 1e-10;
const STATE_POSITIVITY_TOL: f64 = 1e-10;

/// A bipartite density matrix: Hermitian, unit trace, positive semidefinite,
/// with factor dimensions `(d1, d2)` and the first factor as major index.
#[derive(Debug, Clone)]
pub struct DensityState {
    matrix: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityState {
    /// Validates Hermiticity, trace and positivity (each within 1e-10).
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 == 0 || d2 == 0 {
            return Err(Error::invalid("state dimensions must be positive"));
        }
        if !matrix.is_square() || matrix.rows() != d1 * d2 {
            return Err(Error::invalid(format!(
                "state matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                d1 * d2,
                d1 * d2
            )));
        }
        if !matrix.all_finite() {
            return Err(Error::invalid("state matrix has non-finite entries"));
        }
        if matrix.hermiticity_error() > STATE_HERMITICITY_TOL {
            return Err(Error::invalid(format!(
                "state is not Hermitian (deviation {:.3e})",
                matrix.hermiticity_error()
            )));
        }
        let trace = matrix.trace();
        if f64::abs(trace.re - 1.0) > STATE_TRACE_TOL || f64::abs(trace.im) > STATE_TRACE_TOL {
            return Err(Error::invalid(format!(
                "state trace is {:.12} + {:.3e}i, expected 1",
                trace.re, trace.im
            )));
        }
        let min_eig = hermitian_eigenvalues(&matrix)?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -STATE_POSITIVITY_TOL {
            return Err(Error::invalid(format!(
                "state has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Skips validation; for internal constructions that are valid by
    /// construction (convex mixtures of valid states and the like).
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: (usize, usize)) -> Self {
        debug_assert_eq!(matrix.rows(), dims.0 * dims.1);
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// Total Hilbert space dimension `d1 · d2`.
    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    /// Reduced state of one factor.
    pub fn reduced(&self, which: Subsystem) -> ComplexMatrix {
        let keep = match which {
            Subsystem::First => Subsystem::Second,
            Subsystem::Second => Subsystem::First,
        };
        partial_trace(&self.matrix, self.dims, keep).expect("dims validated at construction")
    }
}

/// The individual checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    Ppt,
    /// Reduction map applied to the first factor: checks `I ⊗ ρ2 − ρ`.
    Reduction1,
    /// Reduction map applied to the second factor: checks `ρ1 ⊗ I − ρ`.
    Reduction2,
    Phi,
    Realignment,
    Majorization,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Ppt => "PPT",
            Criterion::Reduction1 => "Reduction1",
            Criterion::Reduction2 => "Reduction2",
            Criterion::Phi => "Phi",
            Criterion::Realignment => "Realignment",
            Criterion::Majorization => "Majorization",
        }
    }

    /// True when entanglement is flagged by `score > tol` rather than
    /// `score < −tol`.
    pub fn fires_high(&self) -> bool {
        matches!(self, Criterion::Realignment | Criterion::Majorization)
    }
}

impl core::fmt::Display for Criterion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Entangled => "Entangled",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one criterion on one state.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    /// Signed margin; see the module docs for the per-criterion convention.
    pub score: f64,
    pub detail: String,
}

impl CriterionReport {
    fn low_margin(criterion: Criterion, score: f64, tol: f64, detail: String) -> Self {
        let verdict = if score < -tol {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        };
        Self {
            criterion,
            verdict,
            score,
            detail,
        }
    }

    fn high_excess(criterion: Criterion, score: f64, tol: f64, detail: String) -> Self {
        let verdict = if score > tol {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        };
        Self {
            criterion,
            verdict,
            score,
            detail,
        }
    }

    /// Marker report for a criterion that does not apply to the state's
    /// dimensions.
    pub fn skipped(criterion: Criterion, reason: &str) -> Self {
        Self {
            criterion,
            verdict: Verdict::Inconclusive,
            score: 0.0,
            detail: format!("skipped: {reason}"),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.detail.starts_with("skipped:")
    }
}

fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.first().copied().unwrap_or(0.0))
}

/// Positive partial transpose check: the minimum eigenvalue of `(I ⊗ T)ρ`.
///
/// Works for any factor dimensions; on even `d2` the verdict coincides with
/// the partial time-reversal formulation, the two being unitarily equivalent.
pub fn ppt_check(rho: &DensityState, tol: f64) -> Result<CriterionReport> {
    let transpose = OperatorMap::transpose(rho.dims().1);
    let mapped = apply_local_map(rho.matrix(), rho.dims(), &transpose)?;
    let score = min_eigenvalue(&mapped)?;
    Ok(CriterionReport::low_margin(
        Criterion::Ppt,
        score,
        tol,
        format!("min eigenvalue of partially transposed state: {score:.6e}"),
    ))
}

/// Reduction criterion on both factors: minimum eigenvalues of
/// `I ⊗ ρ2 − ρ` (side 1) and `ρ1 ⊗ I − ρ` (side 2).
pub fn reduction_check(rho: &DensityState, tol: f64) -> Result<(CriterionReport, CriterionReport)> {
    let (d1, d2) = rho.dims();

    let rho2 = rho.reduced(Subsystem::Second);
    let side1_matrix = tensor_product(&ComplexMatrix::identity(d1), &rho2).sub(rho.matrix());
    let side1_score = min_eigenvalue(&side1_matrix)?;

    let reduction = OperatorMap::reduction(d2);
    let side2_matrix = apply_local_map(rho.matrix(), rho.dims(), &reduction)?;
    let side2_score = min_eigenvalue(&side2_matrix)?;

    Ok((
        CriterionReport::low_margin(
            Criterion::Reduction1,
            side1_score,
            tol,
            format!("min eigenvalue of I⊗ρ2 − ρ: {side1_score:.6e}"),
        ),
        CriterionReport::low_margin(
            Criterion::Reduction2,
            side2_score,
            tol,
            format!("min eigenvalue of ρ1⊗I − ρ: {side2_score:.6e}"),
        ),
    ))
}

/// Positive-map check on the second factor: the minimum eigenvalue of
/// `(I ⊗ Φ)ρ`. Requires even `d2 >= 4` (the map vanishes identically on
/// dimension 2 and does not exist on odd dimensions).
pub fn phi_check(rho: &DensityState, tol: f64) -> Result<CriterionReport> {
    let d2 = rho.dims().1;
    if d2 < 4 {
        return Err(Error::unsupported(format!(
            "phi criterion needs second-factor dimension >= 4, got {d2} (the map is trivially zero at 2)"
        )));
    }
    let phi = OperatorMap::phi(d2)?;
    let mapped = apply_local_map(rho.matrix(), rho.dims(), &phi)?;
    let score = min_eigenvalue(&mapped)?;
    Ok(CriterionReport::low_margin(
        Criterion::Phi,
        score,
        tol,
        format!("min eigenvalue of (I⊗Φ)ρ: {score:.6e}"),
    ))
}

/// Realigned matrix: `R(ρ)[(i·d1+j), (k·d2+l)] = ρ[(i·d2+k), (j·d2+l)]`,
/// a `d1² x d2²` matrix.
pub fn realign(rho: &ComplexMatrix, dims: (usize, usize)) -> ComplexMatrix {
    let (d1, d2) = dims;
    debug_assert_eq!(rho.rows(), d1 * d2);
    ComplexMatrix::from_fn(d1 * d1, d2 * d2, |row, col| {
        let (i, j) = (row / d1, row % d1);
        let (k, l) = (col / d2, col % d2);
        rho.get(i * d2 + k, j * d2 + l)
    })
}

/// Realignment (computable cross norm) check: `‖R(ρ)‖₁ − 1`.
pub fn realignment_check(rho: &DensityState, tol: f64) -> Result<CriterionReport> {
    let realigned = realign(rho.matrix(), rho.dims());
    let norm = trace_norm(&realigned)?;
    let score = norm - 1.0;
    Ok(CriterionReport::high_excess(
        Criterion::Realignment,
        score,
        tol,
        format!("trace norm of realigned state: {norm:.12}"),
    ))
}

/// Majorization check: spectra sorted descending, reduced spectra zero-padded;
/// the score is the largest cumulative-sum violation
/// `max_{k, side} Σ_{i<=k} λ_i(ρ) − Σ_{i<=k} λ_i(ρ_side)`.
pub fn majorization_check(rho: &DensityState, tol: f64) -> Result<CriterionReport> {
    let total_dim = rho.dim();
    let mut spectrum = hermitian_eigenvalues(rho.matrix())?;
    spectrum.reverse();

    let mut score = f64::NEG_INFINITY;
    for which in [Subsystem::First, Subsystem::Second] {
        let mut reduced_spectrum = hermitian_eigenvalues(&rho.reduced(which))?;
        reduced_spectrum.reverse();
        reduced_spectrum.resize(total_dim, 0.0);

        let mut cum = 0.0;
        let mut cum_reduced = 0.0;
        for k in 0..total_dim {
            cum += spectrum[k];
            cum_reduced += reduced_spectrum[k];
            let violation = cum - cum_reduced;
            if violation > score {
                score = violation;
            }
        }
    }
    Ok(CriterionReport::high_excess(
        Criterion::Majorization,
        score,
        tol,
        format!("max cumulative-spectrum violation: {score:.6e}"),
    ))
}

/// Run every applicable criterion in a fixed order; the Φ check degrades to a
/// skipped report when the second factor has an unsupported dimension.
pub fn analyze(rho: &DensityState, tol: f64) -> Result<Vec<CriterionReport>> {
    let mut reports = Vec::with_capacity(6);
    reports.push(ppt_check(rho, tol)?);
    let (r1, r2) = reduction_check(rho, tol)?;
    reports.push(r1);
    reports.push(r2);
    match phi_check(rho, tol) {
        Ok(report) => reports.push(report),
        Err(Error::UnsupportedDimension(_)) => {
            reports.push(CriterionReport::skipped(
                Criterion::Phi,
                "unsupported dimension",
            ));
        }
        Err(e) => return Err(e),
    }
    reports.push(realignment_check(rho, tol)?);
    reports.push(majorization_check(rho, tol)?);
    Ok(reports)
}
