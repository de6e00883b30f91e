//! Shared oracle builders for integration tests: spin operator matrices and
//! the total-spin operator assembled from them, independent of the coupled
//! (Clebsch-Gordan) construction under test.

use entwit_core::linalg::{tensor_product, ComplexMatrix, C64};
use entwit_core::spin::SpinSystem;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `j_z = diag(j, j-1, …, -j)` in the m-descending basis.
pub fn jz_matrix(sys: &SpinSystem) -> ComplexMatrix {
    let n = sys.n();
    ComplexMatrix::from_fn(n, n, |i, k| {
        if i == k {
            c(sys.two_m(i) as f64 / 2.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Raising operator: `j_+ |j,m⟩ = sqrt(j(j+1) − m(m+1)) |j,m+1⟩`.
pub fn jplus_matrix(sys: &SpinSystem) -> ComplexMatrix {
    let n = sys.n();
    let j = sys.two_j() as f64 / 2.0;
    let mut out = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        let m = sys.two_m(col) as f64 / 2.0;
        if col > 0 {
            let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
            out.set(col - 1, col, c(amp, 0.0));
        }
    }
    out
}

/// Total-spin-squared operator `(ĵ⊗I + I⊗ĵ)²` assembled from the spin
/// matrices; its eigenvalues are `J(J+1)`.
pub fn total_spin_squared(sys: &SpinSystem) -> ComplexMatrix {
    let n = sys.n();
    let j = sys.two_j() as f64 / 2.0;
    let jp = jplus_matrix(sys);
    let jm = jp.adjoint();
    let jx = jp.add(&jm).scale_real(0.5);
    let jy = jp.sub(&jm).scale(c(0.0, -0.5));
    let jz = jz_matrix(sys);

    let mut total = ComplexMatrix::identity(n * n).scale_real(2.0 * j * (j + 1.0));
    for axis in [jx, jy, jz] {
        total = total.add(&tensor_product(&axis, &axis).scale_real(2.0));
    }
    total
}
