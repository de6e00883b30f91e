//! The entanglement witness of the Φ map, its zero-expectation product
//! vectors, and numerical optimality verification.
//!
//! The witness on `C^N ⊗ C^N` is `W = N (I ⊗ Φ) P₀` with `P₀` the singlet
//! projector. In the total-spin decomposition it is
//! `−(N−2) P₀ + 2 P₂ + 2 P₄ + … + 2 P_{2j−1}`; construction cross-checks the
//! blockwise map application against this closed form.
//!
//! A normalized product vector `φ₁ ⊗ φ₂` has witness expectation
//! `1 − |⟨φ₁|φ₂⟩|² − |⟨φ₁|θφ₂⟩|²`, so the zero-expectation set consists of
//! the product vectors with `φ₁` in the span of `φ₂` and `θφ₂`. These vectors
//! span the full space, which is what makes the witness optimal; span rank is
//! certified numerically over random samples.

use alloc::format;
use alloc::vec::Vec;

use crate::criteria::DensityState;
use crate::error::Error;
use crate::linalg::{apply_local_map, c, span_rank, trace_of_product, ComplexMatrix, Ket, C64};
use crate::maps::OperatorMap;
use crate::rng::SeededRng;
use crate::spin::SpinSystem;
use crate::Result;

/// Tolerance of the internal closed-form cross-check in [`build_witness`].
const WITNESS_CROSS_CHECK_TOL: f64 = 1e-10;

/// Hermitian witness operator on `C^N ⊗ C^N`.
#[derive(Debug, Clone)]
pub struct Witness {
    n: usize,
    matrix: ComplexMatrix,
}

impl Witness {
    /// Single-particle dimension N.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `tr(Wρ)`; negative values certify entanglement.
    pub fn expectation(&self, rho: &DensityState) -> Result<f64> {
        witness_expectation(self, rho)
    }
}

/// Build the witness `N (I ⊗ Φ) P₀` for even `N >= 4` and cross-check it
/// against the total-spin closed form within 1e-10.
pub fn build_witness(sys: &SpinSystem) -> Result<Witness> {
    let n = sys.n();
    sys.require_even()?;
    if n < 4 {
        return Err(Error::unsupported(format!(
            "witness needs dimension >= 4, got {n} (Φ is the zero map at 2)"
        )));
    }

    let p0 = sys.singlet_projector();
    let phi = OperatorMap::phi(n)?;
    let matrix = apply_local_map(&p0, (n, n), &phi)?.scale_real(n as f64);

    // Sector form: −(N−2) on the singlet, 2 on even total spin >= 2, 0 on odd.
    let decomposition = sys.total_spin_projectors();
    let mut closed = ComplexMatrix::zeros(n * n, n * n);
    for (big_j, projector) in decomposition.projectors() {
        let coeff = if *big_j == 0 {
            -((n - 2) as f64)
        } else if big_j % 2 == 0 {
            2.0
        } else {
            0.0
        };
        if coeff != 0.0 {
            closed = closed.add(&projector.scale_real(coeff));
        }
    }
    let deviation = matrix.max_diff(&closed);
    if deviation > WITNESS_CROSS_CHECK_TOL {
        return Err(Error::numerical(format!(
            "witness construction disagrees with its sector form by {deviation:.3e}"
        )));
    }

    Ok(Witness { n, matrix })
}

/// `tr(Wρ)` for a state on matching dimensions.
pub fn witness_expectation(w: &Witness, rho: &DensityState) -> Result<f64> {
    if rho.dims() != (w.n, w.n) {
        return Err(Error::invalid(format!(
            "state dims {:?} do not match witness on ({}, {})",
            rho.dims(),
            w.n,
            w.n
        )));
    }
    Ok(trace_of_product(&w.matrix, rho.matrix()).re)
}

/// A product vector certified to have zero witness expectation.
#[derive(Debug, Clone)]
pub struct GammaVector {
    phi1: Ket,
    phi2: Ket,
    residual: f64,
}

impl GammaVector {
    /// Certify `(φ₁, φ₂)` via [`gamma_membership`]; errors when the residual
    /// exceeds `tol`.
    pub fn certify(sys: &SpinSystem, phi1: Ket, phi2: Ket, tol: f64) -> Result<Self> {
        let (member, residual) = gamma_membership(sys, &phi1, &phi2, tol)?;
        if !member {
            return Err(Error::invalid(format!(
                "product vector has witness expectation {residual:.3e}, beyond tolerance {tol:.1e}"
            )));
        }
        Ok(Self {
            phi1,
            phi2,
            residual,
        })
    }

    pub fn phi1(&self) -> &Ket {
        &self.phi1
    }

    pub fn phi2(&self) -> &Ket {
        &self.phi2
    }

    /// Witness expectation at certification time.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// The product ket `φ₁ ⊗ φ₂`.
    pub fn product_ket(&self) -> Ket {
        self.phi1.tensor(&self.phi2)
    }
}

/// Witness expectation of a normalized product vector,
/// `1 − |⟨φ₁|φ₂⟩|² − |⟨φ₁|θφ₂⟩|²`, and whether it vanishes within `tol`.
///
/// Kets must be normalized within 1e-8.
pub fn gamma_membership(sys: &SpinSystem, phi1: &Ket, phi2: &Ket, tol: f64) -> Result<(bool, f64)> {
    let n = sys.n();
    if phi1.dim() != n || phi2.dim() != n {
        return Err(Error::invalid(format!(
            "kets of dimension {} and {} on a system of dimension {n}",
            phi1.dim(),
            phi2.dim()
        )));
    }
    for (name, ket) in [("phi1", phi1), ("phi2", phi2)] {
        if f64::abs(ket.norm() - 1.0) > crate::defaults::KET_NORM_TOL {
            return Err(Error::invalid(format!(
                "{name} must be normalized (norm {:.9})",
                ket.norm()
            )));
        }
    }
    let overlap_direct = phi1.inner(phi2);
    let overlap_reversed = phi1.inner(&sys.theta_ket(phi2)?);
    let residual = 1.0 - overlap_direct.norm_sqr() - overlap_reversed.norm_sqr();
    Ok((f64::abs(residual) <= tol, residual))
}

/// One term of the four-term decomposition of a product vector over
/// zero-expectation product vectors.
#[derive(Debug, Clone)]
pub struct GammaTerm {
    pub coefficient: C64,
    /// First factor of the product vector (already of the `θψ ⊗ ψ` or
    /// `ψ ⊗ θψ` shape).
    pub left: Ket,
    /// Second factor.
    pub right: Ket,
    /// Membership residual of the normalized factors; `None` when both
    /// factors degenerated to zero vectors (the term then contributes
    /// nothing and has no direction to certify).
    pub membership_residual: Option<f64>,
}

impl GammaTerm {
    /// `coefficient · (left ⊗ right)` as a flat ket.
    pub fn weighted_product(&self) -> Ket {
        self.left.tensor(&self.right).scale(self.coefficient)
    }

    pub fn is_degenerate(&self) -> bool {
        self.membership_residual.is_none()
    }
}

/// Decompose `φ₁ ⊗ φ₂` into four product vectors with zero witness
/// expectation. Inputs may be unnormalized; the identity
/// `Σ coeff · (left ⊗ right) = φ₁ ⊗ φ₂` is exact up to rounding.
///
/// With `v₁ = θφ₁ + φ₂` and `v₂ = iθφ₁ + φ₂` the four terms are
/// `−½ θv₁ ⊗ v₁`, `−(i/2) θv₂ ⊗ v₂`, `−½(1+i) φ₁ ⊗ θφ₁` and
/// `+½(1+i) θφ₂ ⊗ φ₂`.
pub fn decompose_into_gamma(sys: &SpinSystem, phi1: &Ket, phi2: &Ket) -> Result<Vec<GammaTerm>> {
    let n = sys.n();
    if phi1.dim() != n || phi2.dim() != n {
        return Err(Error::invalid(format!(
            "kets of dimension {} and {} on a system of dimension {n}",
            phi1.dim(),
            phi2.dim()
        )));
    }
    let theta_phi1 = sys.theta_ket(phi1)?;
    let theta_phi2 = sys.theta_ket(phi2)?;
    let v1 = theta_phi1.add(phi2);
    let v2 = theta_phi1.scale(c(0.0, 1.0)).add(phi2);
    let theta_v1 = sys.theta_ket(&v1)?;
    let theta_v2 = sys.theta_ket(&v2)?;

    let half = 0.5;
    let terms = [
        (c(-half, 0.0), theta_v1, v1),
        (c(0.0, -half), theta_v2, v2),
        (c(-half, -half), phi1.clone(), theta_phi1),
        (c(half, half), theta_phi2, phi2.clone()),
    ];

    let mut out = Vec::with_capacity(4);
    for (coefficient, left, right) in terms {
        let membership_residual = match (left.normalized(), right.normalized()) {
            (Ok(l), Ok(r)) => {
                let (_, residual) = gamma_membership(sys, &l, &r, crate::defaults::GAMMA_TOL)?;
                Some(residual)
            }
            _ => None,
        };
        out.push(GammaTerm {
            coefficient,
            left,
            right,
            membership_residual,
        });
    }
    Ok(out)
}

/// Result of the numerical optimality verification.
#[derive(Debug, Clone, Copy)]
pub struct OptimalityCheck {
    /// Span rank of the sampled zero-expectation product vectors.
    pub span_rank: usize,
    /// Full space dimension `N²` the rank must reach.
    pub space_dim: usize,
    /// `max |(ϑ₂W − W)_ij|`.
    pub theta_residual: f64,
    /// Whether the residual is within the requested tolerance.
    pub theta_invariant: bool,
}

impl OptimalityCheck {
    /// Both conditions together: full span and partial-time-reversal
    /// invariance.
    pub fn confirmed(&self) -> bool {
        self.span_rank == self.space_dim && self.theta_invariant
    }
}

/// Sample zero-expectation product vectors (`φ ⊗ θφ` and `θφ ⊗ φ` over
/// Gaussian-random `φ`) and report their span rank together with the
/// `ϑ₂W = W` invariance residual.
pub fn verify_optimality(
    sys: &SpinSystem,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<OptimalityCheck> {
    let n = sys.n();
    let space_dim = n * n;
    let witness = build_witness(sys)?;
    if samples < space_dim {
        return Err(Error::invalid(format!(
            "need at least N² = {space_dim} samples to span the space, got {samples}"
        )));
    }

    let mut rng = SeededRng::new(seed);
    let mut vectors = Vec::with_capacity(samples);
    for i in 0..samples {
        let phi = rng.random_ket(n);
        let theta_phi = sys.theta_ket(&phi)?;
        let product = if i % 2 == 0 {
            phi.tensor(&theta_phi)
        } else {
            theta_phi.tensor(&phi)
        };
        vectors.push(product);
    }
    let rank = span_rank(&vectors, crate::defaults::RANK_TOL)?;

    let theta = OperatorMap::time_reversal(n)?;
    let reversed = apply_local_map(witness.matrix(), (n, n), &theta)?;
    let theta_residual = reversed.max_diff(witness.matrix());

    Ok(OptimalityCheck {
        span_rank: rank,
        space_dim,
        theta_residual,
        theta_invariant: theta_residual <= tol,
    })
}
