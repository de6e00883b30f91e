//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair (p, q) with a unitary that
//! is the product of a phase (absorbing the argument of `a_pq`) and a real
//! Givens rotation. Sweeps run over all pairs in row order until the
//! off-diagonal Frobenius mass drops below `1e-14` of the input norm.

use alloc::vec::Vec;

use super::{c, modulus, ComplexMatrix, Ket};
use crate::error::Error;
use crate::Result;

const OFF_DIAGONAL_REL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Returns eigenvalues (ascending) and orthonormal eigenvectors.
pub(super) fn jacobi(input: &ComplexMatrix) -> Result<(Vec<f64>, Vec<Ket>)> {
    let n = input.rows();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    // Symmetrize once so that rounding in the input cannot bias the sweep,
    // and force the diagonal real.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            c(input.get(i, i).re, 0.0)
        } else {
            (input.get(i, j) + input.get(j, i).conj()).scale(0.5)
        }
    });
    let mut q = ComplexMatrix::identity(n);
    let target = OFF_DIAGONAL_REL * input.fro_norm();

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            return Ok(sorted_spectrum(&a, &q));
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                rotate(&mut a, &mut q, p, r);
            }
        }
    }
    if off_diagonal_norm(&a) <= target {
        return Ok(sorted_spectrum(&a, &q));
    }
    Err(Error::numerical(
        "jacobi eigensolver did not converge within 100 sweeps",
    ))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

/// Annihilate the (p, q) entry, updating the accumulated eigenvector matrix.
fn rotate(a: &mut ComplexMatrix, q: &mut ComplexMatrix, p: usize, r: usize) {
    let apq = a.get(p, r);
    let alpha = modulus(apq);
    if alpha == 0.0 {
        return;
    }
    // Unit phase of the off-diagonal entry; dividing it out leaves a real
    // symmetric 2x2 problem solved by a Givens rotation with the smaller
    // angle.
    let u = apq.scale(1.0 / alpha);
    let app = a.get(p, p).re;
    let arr = a.get(r, r).re;
    let tau = (arr - app) / (2.0 * alpha);
    let t = if f64::abs(tau) > 1e8 {
        // Asymptotic root; avoids overflow of tau^2.
        1.0 / (2.0 * tau)
    } else if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let cos = 1.0 / libm::sqrt(1.0 + t * t);
    let sin = t * cos;

    // Columns p and r of A and of the accumulated Q transform by the 2x2
    // unitary [[c, s], [-conj(u) s, conj(u) c]].
    let n = a.rows();
    let ubar = u.conj();
    for i in 0..n {
        let aip = a.get(i, p);
        let air = a.get(i, r);
        a.set(i, p, aip.scale(cos) - air * ubar.scale(sin));
        a.set(i, r, aip.scale(sin) + air * ubar.scale(cos));
    }
    // Rows p and r transform by the conjugate transpose.
    for j in 0..n {
        let apj = a.get(p, j);
        let arj = a.get(r, j);
        a.set(p, j, apj.scale(cos) - u.scale(sin) * arj);
        a.set(r, j, apj.scale(sin) + u.scale(cos) * arj);
    }
    // The rotated pair is zero analytically; pin it and keep the diagonal real.
    a.set(p, r, c(0.0, 0.0));
    a.set(r, p, c(0.0, 0.0));
    let dpp = a.get(p, p).re;
    let drr = a.get(r, r).re;
    a.set(p, p, c(dpp, 0.0));
    a.set(r, r, c(drr, 0.0));

    for i in 0..n {
        let qip = q.get(i, p);
        let qir = q.get(i, r);
        q.set(i, p, qip.scale(cos) - qir * ubar.scale(sin));
        q.set(i, r, qip.scale(sin) + qir * ubar.scale(cos));
    }
}

fn sorted_spectrum(a: &ComplexMatrix, q: &ComplexMatrix) -> (Vec<f64>, Vec<Ket>) {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let eigenvectors: Vec<Ket> = order
        .iter()
        .map(|&col| Ket::from_fn(n, |row| q.get(row, col)))
        .collect();
    (eigenvalues, eigenvectors)
}
