//! Dense complex linear algebra on row-major matrices.
//!
//! Subsystem convention for bipartite objects: the first factor is the slow
//! (major) index, i.e. the flat index of `|i⟩ ⊗ |k⟩` with dimensions
//! `(d1, d2)` is `i·d2 + k`. Operator maps applied to the second subsystem
//! therefore act blockwise on a `d1 × d1` grid of `d2 × d2` blocks.

mod eigen;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::Error;
use crate::Result;

/// Complex scalar used everywhere.
pub type C64 = Complex<f64>;

/// Shorthand constructor.
#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    /// n x n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c(1.0, 0.0));
        }
        m
    }

    /// Build entrywise from a function of (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Square diagonal matrix from real entries.
    pub fn diag_real(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, c(x, 0.0));
        }
        m
    }

    /// From a row-major data vector. Errors when the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    /// True when every entry is finite.
    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(c(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &Ket) -> Ket {
        assert_eq!(self.cols, v.dim(), "matvec dimension mismatch");
        Ket::from_fn(self.rows, |i| {
            (0..self.cols)
                .map(|j| self.get(i, j) * v.amplitudes()[j])
                .sum()
        })
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| modulus(*z)).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// Largest entry modulus of the difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| modulus(a - b))
            .fold(0.0, f64::max)
    }

    /// Largest deviation from Hermiticity, `max |A_ij − conj(A_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = modulus(self.get(i, j) - self.get(j, i).conj());
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_error() <= tol
    }
}

impl core::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs)
    }
}

impl core::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs)
    }
}

impl core::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

#[inline]
pub(crate) fn modulus(z: C64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amplitudes: Vec<C64>,
}

impl Ket {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            amplitudes: vec![c(0.0, 0.0); dim],
        }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut k = Self::zeros(dim);
        k.amplitudes[index] = c(1.0, 0.0);
        k
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> C64) -> Self {
        Self {
            amplitudes: (0..dim).map(f).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &Ket) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Ket) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.amplitudes[i] * other.amplitudes[j].conj()
        })
    }

    /// Rank-one projector `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }

    /// `|self⟩ ⊗ |other⟩` with `self` as the major index.
    pub fn tensor(&self, other: &Ket) -> Ket {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                out.push(a * b);
            }
        }
        Ket::new(out)
    }

    pub fn conj(&self) -> Ket {
        Ket {
            amplitudes: self.amplitudes.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Ket {
        Ket {
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Ket) -> Ket {
        assert_eq!(self.dim(), other.dim());
        Ket {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Ket) -> Ket {
        assert_eq!(self.dim(), other.dim());
        Ket {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Unit-norm copy. Errors on the zero vector.
    pub fn normalized(&self) -> Result<Ket> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::invalid("cannot normalize a zero or non-finite ket"));
        }
        Ok(self.scale(c(1.0 / n, 0.0)))
    }

    pub fn all_finite(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Which tensor factor an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// `tr(A·B)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    assert_eq!(a.cols(), b.rows(), "trace_of_product dimension mismatch");
    assert_eq!(a.rows(), b.cols(), "trace_of_product dimension mismatch");
    let mut acc = c(0.0, 0.0);
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            acc += a.get(i, k) * b.get(k, i);
        }
    }
    acc
}

/// Kronecker product; the first factor is the major index.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == c(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Partial trace of a `(d1·d2) x (d1·d2)` matrix over one factor.
pub fn partial_trace(
    rho: &ComplexMatrix,
    dims: (usize, usize),
    which: Subsystem,
) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    check_bipartite(rho, dims)?;
    match which {
        Subsystem::Second => {
            let mut out = ComplexMatrix::zeros(d1, d1);
            for i in 0..d1 {
                for j in 0..d1 {
                    let mut acc = c(0.0, 0.0);
                    for k in 0..d2 {
                        acc += rho.get(i * d2 + k, j * d2 + k);
                    }
                    out.set(i, j, acc);
                }
            }
            Ok(out)
        }
        Subsystem::First => {
            let mut out = ComplexMatrix::zeros(d2, d2);
            for k in 0..d2 {
                for l in 0..d2 {
                    let mut acc = c(0.0, 0.0);
                    for i in 0..d1 {
                        acc += rho.get(i * d2 + k, i * d2 + l);
                    }
                    out.set(k, l, acc);
                }
            }
            Ok(out)
        }
    }
}

fn check_bipartite(rho: &ComplexMatrix, dims: (usize, usize)) -> Result<()> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 {
        return Err(Error::invalid("subsystem dimensions must be positive"));
    }
    if !rho.is_square() || rho.rows() != d1 * d2 {
        return Err(Error::invalid(format!(
            "matrix is {}x{}, expected square of dimension {}",
            rho.rows(),
            rho.cols(),
            d1 * d2
        )));
    }
    Ok(())
}

/// A linear map on `dim x dim` operator blocks, applicable to the second
/// tensor factor via [`apply_local_map`].
pub trait LocalMap {
    /// Block dimension the map expects.
    fn dim(&self) -> usize;
    /// Apply the map to one block.
    fn apply(&self, block: &ComplexMatrix) -> Result<ComplexMatrix>;
}

/// Apply a local map to the second subsystem: view `rho` as a `d1 x d1` grid
/// of `d2 x d2` blocks and map each block.
pub fn apply_local_map<M: LocalMap + ?Sized>(
    rho: &ComplexMatrix,
    dims: (usize, usize),
    map: &M,
) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    check_bipartite(rho, dims)?;
    if map.dim() != d2 {
        return Err(Error::invalid(format!(
            "local map acts on dimension {}, second subsystem has dimension {d2}",
            map.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(d1 * d2, d1 * d2);
    let mut block = ComplexMatrix::zeros(d2, d2);
    for bi in 0..d1 {
        for bj in 0..d1 {
            for k in 0..d2 {
                for l in 0..d2 {
                    block.set(k, l, rho.get(bi * d2 + k, bj * d2 + l));
                }
            }
            let mapped = map.apply(&block)?;
            debug_assert_eq!((mapped.rows(), mapped.cols()), (d2, d2));
            for k in 0..d2 {
                for l in 0..d2 {
                    out.set(bi * d2 + k, bj * d2 + l, mapped.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Full spectrum of a Hermitian matrix.
///
/// Eigenvalues are ascending; eigenvectors are orthonormal and stored in the
/// same order, so `A = Σ λ_i v_i v_i†`.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Ket>,
}

impl HermitianSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Ket] {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Sum of `v_i v_i†` over eigenvalues within `tol` of `value`.
    pub fn eigenprojector(&self, value: f64, tol: f64) -> ComplexMatrix {
        let n = self.eigenvectors.first().map_or(0, Ket::dim);
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(self.eigenvectors.iter()) {
            if f64::abs(lambda - value) <= tol {
                out = out.add(&v.projector());
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within `1e-10 · (1 + max |A_ij|)`; the relative
/// off-diagonal mass is driven below `1e-14` with a cap of 100 sweeps.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianSpectrum> {
    if !a.is_square() {
        return Err(Error::invalid(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.all_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let herm_tol = crate::defaults::HERMITICITY_TOL * (1.0 + a.max_norm());
    if a.hermiticity_error() > herm_tol {
        return Err(Error::invalid(format!(
            "matrix is not Hermitian (deviation {:.3e})",
            a.hermiticity_error()
        )));
    }
    let (eigenvalues, eigenvectors) = eigen::jacobi(a)?;
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(a)?.eigenvalues.clone())
}

/// Trace norm (sum of singular values) of a rectangular matrix, computed from
/// the spectrum of `A†A`; negative rounding is clipped before the square root.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?.iter().sum())
}

/// Singular values, descending.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    if !a.all_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    // Work with the smaller Gram matrix of the two.
    let gram = if a.rows() <= a.cols() {
        a.matmul(&a.adjoint())
    } else {
        a.adjoint().matmul(a)
    };
    let mut vals = hermitian_eigenvalues(&gram)?;
    vals.reverse();
    Ok(vals
        .into_iter()
        .map(|x| libm::sqrt(f64::max(x, 0.0)))
        .collect())
}

/// Number of singular values of the stacked vectors exceeding
/// `tol · (largest singular value)`. An empty list has rank 0.
pub fn span_rank(vectors: &[Ket], tol: f64) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let dim = first.dim();
    if vectors.iter().any(|v| v.dim() != dim) {
        return Err(Error::invalid("span_rank requires kets of equal dimension"));
    }
    let stacked = ComplexMatrix::from_fn(vectors.len(), dim, |i, j| vectors[i].amplitudes()[j]);
    let svals = singular_values(&stacked)?;
    let largest = svals.first().copied().unwrap_or(0.0);
    Ok(svals.iter().filter(|&&s| s > tol * largest).count())
}
