//! Linear operator maps on `dim x dim` matrices.
//!
//! All maps are represented behaviorally (apply-to-matrix) rather than as
//! superoperator matrices, since blockwise application to the second tensor
//! factor only ever needs the action on a block.
//!
//! The time reversal of an operator is `ϑB = V Bᵀ V†`. With the antidiagonal
//! `V` of [`crate::spin::SpinSystem::build_v`] this collapses to the index
//! form `(ϑB)[r][c] = (−1)^{r+c} B[n−1−c][n−1−r]`, which is what `apply`
//! computes; the matrix-product route is kept as a test oracle.

use alloc::format;

use crate::error::Error;
use crate::linalg::{ComplexMatrix, LocalMap};
use crate::Result;

/// Which map an [`OperatorMap`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// `B ↦ B`
    Identity,
    /// Entrywise transpose in the computational basis.
    Transpose,
    /// `B ↦ V Bᵀ V†` (spin flip); even dimensions only.
    TimeReversal,
    /// `B ↦ (tr B) I − B`.
    Reduction,
    /// `B ↦ (tr B) I − B − ϑB`; even dimensions only, the zero map at dim 2.
    Phi,
}

impl MapKind {
    pub fn name(&self) -> &'static str {
        match self {
            MapKind::Identity => "identity",
            MapKind::Transpose => "transpose",
            MapKind::TimeReversal => "time reversal",
            MapKind::Reduction => "reduction",
            MapKind::Phi => "phi",
        }
    }
}

/// A named linear map acting on `dim x dim` operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorMap {
    kind: MapKind,
    dim: usize,
}

impl OperatorMap {
    pub fn identity(dim: usize) -> Self {
        Self {
            kind: MapKind::Identity,
            dim,
        }
    }

    pub fn transpose(dim: usize) -> Self {
        Self {
            kind: MapKind::Transpose,
            dim,
        }
    }

    pub fn reduction(dim: usize) -> Self {
        Self {
            kind: MapKind::Reduction,
            dim,
        }
    }

    /// Time reversal; requires an even dimension (no skew-symmetric unitary
    /// exists otherwise).
    pub fn time_reversal(dim: usize) -> Result<Self> {
        require_even(dim)?;
        Ok(Self {
            kind: MapKind::TimeReversal,
            dim,
        })
    }

    /// The positive map `Φ = Λ − ϑ`. Even dimensions only. Dimension 2 is
    /// accepted but is identically the zero map there; callers that need a
    /// nontrivial criterion should insist on `dim >= 4`.
    pub fn phi(dim: usize) -> Result<Self> {
        require_even(dim)?;
        Ok(Self {
            kind: MapKind::Phi,
            dim,
        })
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Apply the map to a `dim x dim` matrix.
    pub fn apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !b.is_square() || b.rows() != self.dim {
            return Err(Error::invalid(format!(
                "{} map expects a {}x{} matrix, got {}x{}",
                self.kind.name(),
                self.dim,
                self.dim,
                b.rows(),
                b.cols()
            )));
        }
        Ok(match self.kind {
            MapKind::Identity => b.clone(),
            MapKind::Transpose => b.transpose(),
            MapKind::TimeReversal => time_reverse(b),
            MapKind::Reduction => reduce(b),
            MapKind::Phi => reduce(b).sub(&time_reverse(b)),
        })
    }
}

impl LocalMap for OperatorMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, block: &ComplexMatrix) -> Result<ComplexMatrix> {
        OperatorMap::apply(self, block)
    }
}

fn require_even(dim: usize) -> Result<()> {
    if dim.is_multiple_of(2) && dim >= 2 {
        Ok(())
    } else {
        Err(Error::unsupported(format!(
            "map is defined on even dimensions >= 2, got {dim}"
        )))
    }
}

/// `(tr B) I − B`.
fn reduce(b: &ComplexMatrix) -> ComplexMatrix {
    let n = b.rows();
    ComplexMatrix::identity(n).scale(b.trace()).sub(b)
}

/// `(ϑB)[r][c] = (−1)^{r+c} B[n−1−c][n−1−r]`.
fn time_reverse(b: &ComplexMatrix) -> ComplexMatrix {
    let n = b.rows();
    ComplexMatrix::from_fn(n, n, |r, col| {
        let sign = if (r + col) % 2 == 0 { 1.0 } else { -1.0 };
        b.get(n - 1 - col, n - 1 - r).scale(sign)
    })
}
