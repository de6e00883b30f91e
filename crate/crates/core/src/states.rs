//! State constructors: the singlet/Werner mixture family, PPT bound
//! entangled states assembled from zero-expectation product vectors, and
//! seeded random ensembles.

use alloc::format;
use alloc::vec::Vec;

use crate::criteria::{
    majorization_check, phi_check, ppt_check, realignment_check, reduction_check, Criterion,
    DensityState, Verdict,
};
use crate::defaults::{GAMMA_TOL, POSITIVITY_TOL};
use crate::error::Error;
use crate::linalg::{tensor_product, ComplexMatrix};
use crate::rng::SeededRng;
use crate::spin::SpinSystem;
use crate::witness::{build_witness, gamma_membership, witness_expectation, GammaVector};
use crate::Result;

/// One state of the mixture family `ρ(λ) = λ P₀ + (1−λ) ρ₀`.
#[derive(Debug, Clone)]
pub struct FamilyPoint {
    pub n: usize,
    pub lambda: f64,
    pub state: DensityState,
}

fn require_family_dimension(sys: &SpinSystem) -> Result<()> {
    sys.require_even()?;
    if sys.n() < 4 {
        return Err(Error::unsupported(format!(
            "the mixture family needs dimension >= 4, got {}",
            sys.n()
        )));
    }
    Ok(())
}

/// The swap-symmetric Werner state `ρ₀ = (I + F) / (N(N+1))`, i.e. the
/// normalized projector onto the symmetric (odd total spin) subspace.
pub fn symmetric_werner_state(sys: &SpinSystem) -> Result<DensityState> {
    require_family_dimension(sys)?;
    let n = sys.n();
    let matrix = ComplexMatrix::identity(n * n)
        .add(&sys.swap_operator())
        .scale_real(1.0 / (n * (n + 1)) as f64);
    DensityState::new(matrix, (n, n))
}

/// `ρ(λ) = λ P₀ + (1−λ) ρ₀` for `λ ∈ [0, 1]`.
pub fn family_state(sys: &SpinSystem, lambda: f64) -> Result<FamilyPoint> {
    require_family_dimension(sys)?;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::invalid(format!(
            "mixing parameter λ = {lambda} outside [0, 1]"
        )));
    }
    let n = sys.n();
    let matrix = family_matrix(sys, &symmetric_werner_state(sys)?, lambda);
    Ok(FamilyPoint {
        n,
        lambda,
        state: DensityState::new(matrix, (n, n))?,
    })
}

fn family_matrix(sys: &SpinSystem, werner: &DensityState, lambda: f64) -> ComplexMatrix {
    sys.singlet_projector()
        .scale_real(lambda)
        .add(&werner.matrix().scale_real(1.0 - lambda))
}

/// Result of a threshold scan on the mixture family.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdScan {
    /// Critical mixing parameter: the criterion flags every `λ > lambda_c`
    /// that was probed. Zero means the criterion already fired at the
    /// smallest probe (`λ = resolution`); when `detected` is false the
    /// criterion never fired on `(0, 1]` and `lambda_c` is 1.
    pub lambda_c: f64,
    pub detected: bool,
}

/// Bisect the firing boundary of one criterion on the family, to an absolute
/// resolution `resolution` (also used as the smallest probe).
pub fn family_threshold(
    sys: &SpinSystem,
    criterion: Criterion,
    resolution: f64,
) -> Result<ThresholdScan> {
    require_family_dimension(sys)?;
    if !(resolution > 0.0 && resolution < 0.5) {
        return Err(Error::invalid(format!(
            "bisection resolution {resolution} outside (0, 0.5)"
        )));
    }
    let n = sys.n();
    let werner = symmetric_werner_state(sys)?;
    // Mixtures of two valid states are valid by construction; skip
    // re-validation inside the scan.
    let fires = |lambda: f64| -> Result<bool> {
        let state = DensityState::new_unchecked(family_matrix(sys, &werner, lambda), (n, n));
        let report = match criterion {
            Criterion::Ppt => ppt_check(&state, POSITIVITY_TOL)?,
            Criterion::Reduction1 => reduction_check(&state, POSITIVITY_TOL)?.0,
            Criterion::Reduction2 => reduction_check(&state, POSITIVITY_TOL)?.1,
            Criterion::Phi => phi_check(&state, POSITIVITY_TOL)?,
            Criterion::Realignment => realignment_check(&state, POSITIVITY_TOL)?,
            Criterion::Majorization => majorization_check(&state, POSITIVITY_TOL)?,
        };
        Ok(report.verdict == Verdict::Entangled)
    };

    if fires(resolution)? {
        return Ok(ThresholdScan {
            lambda_c: 0.0,
            detected: true,
        });
    }
    if !fires(1.0)? {
        return Ok(ThresholdScan {
            lambda_c: 1.0,
            detected: false,
        });
    }
    let mut lo = resolution;
    let mut hi = 1.0;
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if fires(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdScan {
        lambda_c: 0.5 * (lo + hi),
        detected: true,
    })
}

/// Recipe for a PPT bound entangled state: a detected PPT base plus a
/// nonnegative mixture of zero-expectation product vectors.
#[derive(Debug, Clone)]
pub struct ManifoldSpec {
    /// PPT state with negative witness expectation.
    pub base: DensityState,
    /// `(weight, product vector)` pairs; weights must be nonnegative.
    pub terms: Vec<(f64, GammaVector)>,
    /// Normalize the assembled state to unit trace.
    pub normalize: bool,
}

/// Output of [`bound_entangled_state`]: the assembled operator together with
/// the normalization metadata.
#[derive(Debug, Clone)]
pub struct BoundEntangledState {
    matrix: ComplexMatrix,
    raw_trace: f64,
    dims: (usize, usize),
}

impl BoundEntangledState {
    /// The assembly `base + Σ p_α Π_α`, divided by [`Self::raw_trace`] when
    /// normalization was requested.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Trace of the raw (unnormalized) assembly, `tr(base) + Σ p_α`.
    pub fn raw_trace(&self) -> f64 {
        self.raw_trace
    }

    /// Unit-trace density state, independent of the normalization flag.
    pub fn normalized_state(&self) -> Result<DensityState> {
        let trace = self.matrix.trace().re;
        DensityState::new(self.matrix.scale_real(1.0 / trace), self.dims)
    }
}

/// Assemble `base + Σ p_α |φ₁^α ⊗ φ₂^α⟩⟨φ₁^α ⊗ φ₂^α|`.
///
/// Adding projectors onto zero-expectation product vectors changes neither
/// the PPT property (the partial time reversal of a product projector stays
/// positive) nor the witness expectation, so the output inherits "PPT and
/// detected" from the base. Normalization preserves both.
pub fn bound_entangled_state(sys: &SpinSystem, spec: &ManifoldSpec) -> Result<BoundEntangledState> {
    let n = sys.n();
    if spec.base.dims() != (n, n) {
        return Err(Error::invalid(format!(
            "base state dims {:?} do not match the ({n}, {n}) system",
            spec.base.dims()
        )));
    }
    let witness = build_witness(sys)?;
    let base_ppt = ppt_check(&spec.base, POSITIVITY_TOL)?;
    if base_ppt.verdict != Verdict::Inconclusive {
        return Err(Error::invalid(format!(
            "base state is not PPT (partial transpose eigenvalue {:.3e})",
            base_ppt.score
        )));
    }
    let base_expectation = witness_expectation(&witness, &spec.base)?;
    if base_expectation >= 0.0 {
        return Err(Error::invalid(format!(
            "base state is not detected by the witness (tr(Wρ) = {base_expectation:.3e})"
        )));
    }

    let mut matrix = spec.base.matrix().clone();
    let mut total_weight = 0.0;
    for (weight, term) in &spec.terms {
        if !(weight.is_finite() && *weight >= 0.0) {
            return Err(Error::invalid(format!(
                "term weight {weight} must be nonnegative"
            )));
        }
        // Terms certify at construction; re-check so that stale or loosely
        // certified vectors cannot silently break the expectation guarantee.
        let (member, residual) = gamma_membership(sys, term.phi1(), term.phi2(), GAMMA_TOL)?;
        if !member {
            return Err(Error::invalid(format!(
                "product term has nonzero witness expectation ({residual:.3e})"
            )));
        }
        if *weight > 0.0 {
            matrix = matrix.add(&term.product_ket().projector().scale_real(*weight));
            total_weight += *weight;
        }
    }
    let raw_trace = 1.0 + total_weight;
    if spec.normalize {
        matrix = matrix.scale_real(1.0 / raw_trace);
    }
    Ok(BoundEntangledState {
        matrix,
        raw_trace,
        dims: (n, n),
    })
}

/// The 2N-term construction with `φ₂ = |j,m⟩` and `φ₁ = |j,m⟩` (first N
/// weights) or `φ₁ = |j,−m⟩` (second N weights), on a family base `ρ(λ)`
/// restricted to the PPT-detected window `0 < λ <= 1/(N+2)`. Output is
/// normalized.
pub fn standard_manifold_member(
    sys: &SpinSystem,
    lambda_base: f64,
    weights: &[f64],
) -> Result<DensityState> {
    require_family_dimension(sys)?;
    let n = sys.n();
    let ppt_edge = 1.0 / (n as f64 + 2.0);
    if !(lambda_base > 0.0 && lambda_base <= ppt_edge) {
        return Err(Error::invalid(format!(
            "λ = {lambda_base} outside the PPT-detected window (0, {ppt_edge:.6}]"
        )));
    }
    if weights.len() != 2 * n {
        return Err(Error::invalid(format!(
            "expected 2N = {} weights, got {}",
            2 * n,
            weights.len()
        )));
    }

    let mut terms = Vec::with_capacity(2 * n);
    for index in 0..n {
        let two_m = sys.two_m(index);
        let phi2 = sys.basis_ket(two_m)?;
        let same = GammaVector::certify(sys, phi2.clone(), phi2.clone(), GAMMA_TOL)?;
        terms.push((weights[index], same));
        let mirrored = GammaVector::certify(sys, sys.basis_ket(-two_m)?, phi2, GAMMA_TOL)?;
        terms.push((weights[n + index], mirrored));
    }

    let spec = ManifoldSpec {
        base: family_state(sys, lambda_base)?.state,
        terms,
        normalize: true,
    };
    bound_entangled_state(sys, &spec)?.normalized_state()
}

/// Random-state ensembles for soundness testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    /// `G G† / tr(G G†)` with a square complex Gaussian `G`.
    GinibreMixed,
    /// Projector onto a Haar-random pure state.
    PureHaar,
    /// `Σ_{i=1..k} p_i ρ₁^i ⊗ ρ₂^i` with flat-Dirichlet weights and Ginibre
    /// factors; separable by construction.
    SeparableMixture(usize),
}

/// Draw one state; identical seeds give bit-identical states.
pub fn random_state(dims: (usize, usize), ensemble: Ensemble, seed: u64) -> Result<DensityState> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 {
        return Err(Error::invalid("state dimensions must be positive"));
    }
    let total = d1 * d2;
    let mut rng = SeededRng::new(seed);
    let matrix = match ensemble {
        Ensemble::GinibreMixed => ginibre_density(&mut rng, total),
        Ensemble::PureHaar => rng.random_ket(total).projector(),
        Ensemble::SeparableMixture(k) => {
            if k == 0 {
                return Err(Error::invalid(
                    "separable mixtures need at least one component",
                ));
            }
            let weights = flat_simplex_weights(&mut rng, k);
            let mut acc = ComplexMatrix::zeros(total, total);
            for weight in weights {
                let left = ginibre_density(&mut rng, d1);
                let right = ginibre_density(&mut rng, d2);
                acc = acc.add(&tensor_product(&left, &right).scale_real(weight));
            }
            acc
        }
    };
    DensityState::new(matrix, dims)
}

/// Ginibre-induced density matrix `G G† / tr(G G†)`.
pub(crate) fn ginibre_density(rng: &mut SeededRng, dim: usize) -> ComplexMatrix {
    loop {
        let g = ComplexMatrix::from_fn(dim, dim, |_, _| rng.complex_gaussian());
        let gram = g.matmul(&g.adjoint());
        let trace = gram.trace().re;
        if trace > 0.0 {
            return gram.scale_real(1.0 / trace);
        }
    }
}

/// Flat Dirichlet weights via normalized exponentials.
fn flat_simplex_weights(rng: &mut SeededRng, k: usize) -> Vec<f64> {
    let mut raw: Vec<f64> = (0..k).map(|_| -libm::log(1.0 - rng.uniform())).collect();
    let total: f64 = raw.iter().sum();
    for w in &mut raw {
        *w /= total;
    }
    raw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, Subsystem};

    #[test]
    fn werner_state_basics() {
        for n in [4usize, 6] {
            let sys = SpinSystem::with_dimension(n).unwrap();
            let rho0 = symmetric_werner_state(&sys).unwrap();
            assert!(f64::abs(rho0.matrix().trace().re - 1.0) < 1e-12);
            // Swap-symmetric support.
            let f = sys.swap_operator();
            assert!(f.matmul(rho0.matrix()).max_diff(rho0.matrix()) < 1e-12);
        }
    }

    #[test]
    fn werner_state_matches_odd_sector_sum() {
        let n = 6;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let rho0 = symmetric_werner_state(&sys).unwrap();
        let dec = sys.total_spin_projectors();
        let mut odd_sum = ComplexMatrix::zeros(n * n, n * n);
        for (big_j, p) in dec.projectors() {
            if big_j % 2 == 1 {
                odd_sum = odd_sum.add(p);
            }
        }
        let expected = odd_sum.scale_real(2.0 / (n * (n + 1)) as f64);
        assert!(rho0.matrix().max_diff(&expected) < 1e-12);
    }

    #[test]
    fn family_endpoints() {
        let sys = SpinSystem::with_dimension(4).unwrap();
        let low = family_state(&sys, 0.0).unwrap();
        let rho0 = symmetric_werner_state(&sys).unwrap();
        assert!(low.state.matrix().max_diff(rho0.matrix()) < 1e-15);

        let high = family_state(&sys, 1.0).unwrap();
        assert!(high.state.matrix().max_diff(&sys.singlet_projector()) < 1e-15);

        assert!(family_state(&sys, -0.1).is_err());
        assert!(family_state(&sys, 1.1).is_err());
        let odd = SpinSystem::with_dimension(5).unwrap();
        assert!(family_state(&odd, 0.5).is_err());
    }

    #[test]
    fn family_marginals_are_maximally_mixed() {
        let sys = SpinSystem::with_dimension(4).unwrap();
        let point = family_state(&sys, 0.3).unwrap();
        for side in [Subsystem::First, Subsystem::Second] {
            let reduced = point.state.reduced(side);
            let mixed = ComplexMatrix::identity(4).scale_real(0.25);
            assert!(reduced.max_diff(&mixed) < 1e-12);
        }
    }

    #[test]
    fn thresholds_at_n4() {
        let sys = SpinSystem::with_dimension(4).unwrap();
        let res = 1e-6;

        let phi = family_threshold(&sys, Criterion::Phi, res).unwrap();
        assert!(phi.detected);
        assert_eq!(phi.lambda_c, 0.0, "Φ fires already at the probe point");

        let ppt = family_threshold(&sys, Criterion::Ppt, res).unwrap();
        assert!(ppt.detected);
        assert!(f64::abs(ppt.lambda_c - 1.0 / 6.0) < res);

        for criterion in [
            Criterion::Reduction1,
            Criterion::Reduction2,
            Criterion::Realignment,
            Criterion::Majorization,
        ] {
            let scan = family_threshold(&sys, criterion, res).unwrap();
            assert!(scan.detected, "{criterion} undetected");
            assert!(
                f64::abs(scan.lambda_c - 0.25) < res,
                "{criterion} boundary at {}",
                scan.lambda_c
            );
        }
    }

    #[test]
    fn manifold_member_is_ppt_and_detected() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let weights = alloc::vec![0.05; 2 * n];
        let rho = standard_manifold_member(&sys, 0.1, &weights).unwrap();

        let ppt = ppt_check(&rho, POSITIVITY_TOL).unwrap();
        assert_eq!(ppt.verdict, Verdict::Inconclusive);
        assert!(ppt.score >= -1e-10);

        let w = build_witness(&sys).unwrap();
        assert!(witness_expectation(&w, &rho).unwrap() < 0.0);
    }

    #[test]
    fn manifold_base_at_the_ppt_boundary_works() {
        // Base exactly at λ = 1/(N+2): still (numerically) PPT, still
        // detected; random weights keep both properties.
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let mut rng = crate::rng::SeededRng::new(61);
        let weights: alloc::vec::Vec<f64> = (0..2 * n).map(|_| rng.uniform()).collect();
        let rho = standard_manifold_member(&sys, 1.0 / 6.0, &weights).unwrap();
        let ppt = ppt_check(&rho, POSITIVITY_TOL).unwrap();
        assert_eq!(ppt.verdict, Verdict::Inconclusive);
        assert!(ppt.score >= -1e-10);
        let w = build_witness(&sys).unwrap();
        assert!(witness_expectation(&w, &rho).unwrap() < 0.0);
    }

    #[test]
    fn manifold_zero_weights_reduce_to_base() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let weights = alloc::vec![0.0; 2 * n];
        let rho = standard_manifold_member(&sys, 0.1, &weights).unwrap();
        let base = family_state(&sys, 0.1).unwrap();
        assert!(rho.matrix().max_diff(base.state.matrix()) < 1e-15);
    }

    #[test]
    fn manifold_window_and_weight_validation() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let weights = alloc::vec![0.05; 2 * n];
        // 0.25 > 1/6: base no longer PPT.
        assert!(standard_manifold_member(&sys, 0.25, &weights).is_err());
        assert!(standard_manifold_member(&sys, 0.0, &weights).is_err());
        assert!(standard_manifold_member(&sys, 0.1, &weights[..3]).is_err());
        let mut negative = weights.clone();
        negative[0] = -0.1;
        assert!(standard_manifold_member(&sys, 0.1, &negative).is_err());
    }

    #[test]
    fn manifold_unnormalized_trace_adds_weights() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let base = family_state(&sys, 0.1).unwrap().state;
        let phi2 = sys.basis_ket(sys.two_m(0)).unwrap();
        let term = GammaVector::certify(&sys, phi2.clone(), phi2, GAMMA_TOL).unwrap();
        let spec = ManifoldSpec {
            base,
            terms: alloc::vec![(0.3, term)],
            normalize: false,
        };
        let assembled = bound_entangled_state(&sys, &spec).unwrap();
        assert!(f64::abs(assembled.matrix().trace().re - 1.3) < 1e-12);
        assert!(f64::abs(assembled.raw_trace() - 1.3) < 1e-12);
        // The normalized view is still a detected PPT state.
        let state = assembled.normalized_state().unwrap();
        let w = build_witness(&sys).unwrap();
        assert!(witness_expectation(&w, &state).unwrap() < 0.0);
    }

    #[test]
    fn bound_state_rejects_non_ppt_base() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let base = family_state(&sys, 0.5).unwrap().state; // NPT point
        let spec = ManifoldSpec {
            base,
            terms: Vec::new(),
            normalize: true,
        };
        assert!(bound_entangled_state(&sys, &spec).is_err());
    }

    #[test]
    fn bound_state_rejects_undetected_base() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let base = family_state(&sys, 0.0).unwrap().state; // separable Werner
        let spec = ManifoldSpec {
            base,
            terms: Vec::new(),
            normalize: true,
        };
        assert!(bound_entangled_state(&sys, &spec).is_err());
    }

    #[test]
    fn bound_state_empty_terms_is_base() {
        let n = 4;
        let sys = SpinSystem::with_dimension(n).unwrap();
        let base = family_state(&sys, 0.1).unwrap().state;
        let spec = ManifoldSpec {
            base: base.clone(),
            terms: Vec::new(),
            normalize: true,
        };
        let rho = bound_entangled_state(&sys, &spec).unwrap();
        assert!(rho.matrix().max_diff(base.matrix()) < 1e-15);
        assert_eq!(rho.raw_trace(), 1.0);
    }

    #[test]
    fn random_states_are_valid_and_reproducible() {
        for ensemble in [
            Ensemble::GinibreMixed,
            Ensemble::PureHaar,
            Ensemble::SeparableMixture(5),
        ] {
            let a = random_state((2, 4), ensemble, 99).unwrap();
            let b = random_state((2, 4), ensemble, 99).unwrap();
            assert_eq!(a.matrix(), b.matrix(), "same seed must reproduce bits");

            assert!(f64::abs(a.matrix().trace().re - 1.0) < 1e-12);
            let min_eig = hermitian_eigenvalues(a.matrix()).unwrap()[0];
            assert!(min_eig > -1e-12);

            let other = random_state((2, 4), ensemble, 100).unwrap();
            assert!(a.matrix().max_diff(other.matrix()) > 1e-6);
        }
        assert!(random_state((0, 2), Ensemble::PureHaar, 1).is_err());
        assert!(random_state((2, 2), Ensemble::SeparableMixture(0), 1).is_err());
    }

    #[test]
    fn separable_mixture_never_fires_phi_or_ppt() {
        for i in 0..50 {
            let rho = random_state((4, 4), Ensemble::SeparableMixture(10), 1000 + i).unwrap();
            let phi = phi_check(&rho, POSITIVITY_TOL).unwrap();
            assert_eq!(phi.verdict, Verdict::Inconclusive, "Φ fired on separable");
            let ppt = ppt_check(&rho, POSITIVITY_TOL).unwrap();
            assert_eq!(ppt.verdict, Verdict::Inconclusive, "PPT fired on separable");
        }
    }
}
