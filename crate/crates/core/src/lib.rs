//! Entanglement detection for bipartite quantum states.
//!
//! The crate is organized around a family of positivity-based separability
//! criteria for density matrices on `C^N ⊗ C^N` (and, where meaningful, on
//! `C^{d1} ⊗ C^{d2}`):
//!
//! * [`linalg`] — dense complex matrices and kets, tensor products, partial
//!   traces, blockwise application of local operator maps, a cyclic Jacobi
//!   eigensolver for Hermitian matrices, trace norms and span ranks.
//! * [`spin`] — spin-j basis machinery for `N = 2j + 1`: the skew-symmetric
//!   unitary `V`, the antiunitary time-reversal action on kets,
//!   Clebsch-Gordan coefficients, total-spin projectors, the swap operator
//!   and the singlet projector.
//! * [`maps`] — the operator maps used by the criteria: transposition, time
//!   reversal, the reduction map and the trace map combination
//!   `Φ B = (tr B) I − B − ϑB`, which is positive but not completely
//!   positive on even dimensions `N ≥ 4`.
//! * [`criteria`] — verdict-producing separability checks (partial
//!   transposition, reduction, Φ, realignment, majorization) plus an
//!   aggregate analyzer.
//! * [`witness`] — the entanglement witness obtained by applying `I ⊗ Φ` to
//!   the singlet projector, expectation evaluation, the zero-expectation
//!   product-vector set, and numerical optimality verification.
//! * [`states`] — constructors for the singlet/Werner mixture family, PPT
//!   bound entangled states built from zero-expectation product vectors, and
//!   seeded random state ensembles.
//!
//! Everything is `no_std`-compatible (with `alloc`); float transcendentals
//! go through `libm` so results are identical with and without `std`.
//!
//! ```
//! use entwit_core::criteria::{analyze, Criterion, Verdict};
//! use entwit_core::spin::SpinSystem;
//! use entwit_core::states::family_state;
//! use entwit_core::witness::{build_witness, witness_expectation};
//!
//! let sys = SpinSystem::with_dimension(4)?;
//! let point = family_state(&sys, 0.1)?;
//!
//! // The mixture at λ = 0.1 keeps a positive partial transpose, yet the
//! // map-based check and the witness both see its entanglement.
//! let reports = analyze(&point.state, 1e-10)?;
//! let verdict = |c: Criterion| reports.iter().find(|r| r.criterion == c).unwrap().verdict;
//! assert_eq!(verdict(Criterion::Ppt), Verdict::Inconclusive);
//! assert_eq!(verdict(Criterion::Phi), Verdict::Entangled);
//!
//! let witness = build_witness(&sys)?;
//! assert!(witness_expectation(&witness, &point.state)? < 0.0);
//! # Ok::<(), entwit_core::Error>(())
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod criteria;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod rng;
pub mod spin;
pub mod states;
pub mod witness;

pub use error::Error;
pub use linalg::{ComplexMatrix, HermitianSpectrum, Ket, Subsystem, C64};

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Default tolerances. Each check that consumes a tolerance takes it as a
/// parameter; these are the values used when callers have no reason to
/// deviate.
pub mod defaults {
    /// Absolute tolerance on eigenvalue margins when deciding positivity.
    pub const POSITIVITY_TOL: f64 = 1e-10;
    /// Relative tolerance on singular values when counting numerical rank.
    pub const RANK_TOL: f64 = 1e-8;
    /// Relative Hermiticity tolerance accepted by the eigensolver.
    pub const HERMITICITY_TOL: f64 = 1e-10;
    /// Norm slack allowed on kets that are required to be normalized.
    pub const KET_NORM_TOL: f64 = 1e-8;
    /// Certification tolerance on zero-expectation product vectors.
    pub const GAMMA_TOL: f64 = 1e-10;
    /// Absolute resolution of threshold bisection on the mixture family.
    pub const THRESHOLD_RESOLUTION: f64 = 1e-6;
}
