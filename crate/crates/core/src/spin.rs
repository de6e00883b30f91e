//! Spin-j basis machinery for an N-level system, N = 2j + 1.
//!
//! Basis ordering is fixed once here: index 0 holds m = +j and the magnetic
//! quantum number decreases by one per index, down to m = -j at index N - 1.
//! Every routine in the crate goes through [`SpinSystem::two_m`] /
//! [`SpinSystem::index_of_two_m`], so this is the single place the convention
//! lives. Quantum numbers are stored as doubled integers ("twice m") to keep
//! half-integer arithmetic exact.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{c, ComplexMatrix, Ket};
use crate::Result;

/// A single spin-j degree of freedom with the fixed m-descending basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinSystem {
    two_j: i32,
}

impl SpinSystem {
    /// System with Hilbert space dimension `n = 2j + 1`, any `n >= 1`.
    pub fn with_dimension(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("spin system dimension must be positive"));
        }
        Ok(Self {
            two_j: (n as i32) - 1,
        })
    }

    /// Hilbert space dimension.
    pub fn n(&self) -> usize {
        (self.two_j + 1) as usize
    }

    /// Twice the spin quantum number.
    pub fn two_j(&self) -> i32 {
        self.two_j
    }

    /// True when the dimension is even (half-integer j), which is what the
    /// time-reversal constructions require.
    pub fn has_even_dimension(&self) -> bool {
        self.n().is_multiple_of(2)
    }

    pub(crate) fn require_even(&self) -> Result<()> {
        if self.has_even_dimension() {
            Ok(())
        } else {
            Err(Error::unsupported(format!(
                "dimension {} is odd; a unitary skew-symmetric basis rotation exists only in even dimensions",
                self.n()
            )))
        }
    }

    /// Twice the magnetic quantum number stored at `index` (m descending).
    pub fn two_m(&self, index: usize) -> i32 {
        debug_assert!(index < self.n());
        self.two_j - 2 * (index as i32)
    }

    /// Basis index of the level with doubled magnetic number `two_m`.
    pub fn index_of_two_m(&self, two_m: i32) -> usize {
        debug_assert!(two_m.abs() <= self.two_j && (self.two_j - two_m) % 2 == 0);
        ((self.two_j - two_m) / 2) as usize
    }

    /// Basis ket `|j, m⟩` for doubled magnetic number `two_m`.
    pub fn basis_ket(&self, two_m: i32) -> Result<Ket> {
        if two_m.abs() > self.two_j || (self.two_j - two_m) % 2 != 0 {
            return Err(Error::invalid(format!(
                "two_m = {two_m} is not a magnetic level of two_j = {}",
                self.two_j
            )));
        }
        Ok(Ket::basis(self.n(), self.index_of_two_m(two_m)))
    }

    /// The skew-symmetric unitary with matrix elements
    /// `⟨j,m'|V|j,m⟩ = (−1)^{j−m} δ_{m',−m}`.
    ///
    /// In the m-descending basis this is the antidiagonal with alternating
    /// signs, `V[n−1−k][k] = (−1)^k`. Only even dimensions are supported.
    pub fn build_v(&self) -> Result<ComplexMatrix> {
        self.require_even()?;
        let n = self.n();
        let mut v = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            v.set(n - 1 - k, k, c(sign, 0.0));
        }
        Ok(v)
    }

    /// Antiunitary time-reversal action on a ket: conjugate, then rotate by
    /// `V`. Squares to `−I` on even dimensions, so `⟨φ|θφ⟩ = 0`.
    pub fn theta_ket(&self, phi: &Ket) -> Result<Ket> {
        self.require_even()?;
        let n = self.n();
        if phi.dim() != n {
            return Err(Error::invalid(format!(
                "ket has dimension {}, spin system has dimension {n}",
                phi.dim()
            )));
        }
        let mut out = alloc::vec![c(0.0, 0.0); n];
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            out[n - 1 - k] = phi.amplitudes()[k].conj().scale(sign);
        }
        Ok(Ket::new(out))
    }

    /// Swap operator on the two-particle space,
    /// `F[(i·n+k), (j·n+l)] = δ_il δ_kj`.
    pub fn swap_operator(&self) -> ComplexMatrix {
        let n = self.n();
        let mut f = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for k in 0..n {
                f.set(i * n + k, k * n + i, c(1.0, 0.0));
            }
        }
        f
    }

    /// Projectors onto the total-spin sectors of `C^n ⊗ C^n`, built from the
    /// Clebsch-Gordan coupled basis.
    pub fn total_spin_projectors(&self) -> TotalSpinDecomposition {
        let n = self.n();
        let lf = LnFactorials::up_to((2 * self.two_j + 1) as usize);
        let mut projectors = Vec::new();
        for two_big_j in (0..=2 * self.two_j).step_by(2) {
            let mut p = ComplexMatrix::zeros(n * n, n * n);
            let mut two_big_m = -two_big_j;
            while two_big_m <= two_big_j {
                let coupled = self.coupled_ket(two_big_j, two_big_m, &lf);
                p = p.add(&coupled.projector());
                two_big_m += 2;
            }
            projectors.push(((two_big_j / 2) as u32, p));
        }
        TotalSpinDecomposition { projectors }
    }

    /// Rank-one projector onto the total-spin-zero (singlet) state; the J = 0
    /// member of [`SpinSystem::total_spin_projectors`].
    pub fn singlet_projector(&self) -> ComplexMatrix {
        self.singlet_ket().projector()
    }

    /// The coupled `|J=0, M=0⟩` state itself.
    pub fn singlet_ket(&self) -> Ket {
        let lf = LnFactorials::up_to((2 * self.two_j + 1) as usize);
        self.coupled_ket(0, 0, &lf)
    }

    /// Coupled state `|J,M⟩ = Σ_{m1+m2=M} ⟨j,m1;j,m2|J,M⟩ |j,m1⟩⊗|j,m2⟩`.
    fn coupled_ket(&self, two_big_j: i32, two_big_m: i32, lf: &LnFactorials) -> Ket {
        let n = self.n();
        let mut out = alloc::vec![c(0.0, 0.0); n * n];
        for i1 in 0..n {
            let two_m1 = self.two_m(i1);
            let two_m2 = two_big_m - two_m1;
            if two_m2.abs() > self.two_j {
                continue;
            }
            let coeff = cg_equal_spins(self.two_j, two_m1, two_m2, two_big_j, two_big_m, lf);
            if coeff == 0.0 {
                continue;
            }
            let i2 = self.index_of_two_m(two_m2);
            out[i1 * n + i2] = c(coeff, 0.0);
        }
        Ket::new(out)
    }
}

/// The total-spin projector family `{P_J}` for one pair of equal spins.
#[derive(Debug, Clone)]
pub struct TotalSpinDecomposition {
    projectors: Vec<(u32, ComplexMatrix)>,
}

impl TotalSpinDecomposition {
    /// `(J, P_J)` pairs, J ascending from 0 to 2j.
    pub fn projectors(&self) -> &[(u32, ComplexMatrix)] {
        &self.projectors
    }

    pub fn projector(&self, big_j: u32) -> Option<&ComplexMatrix> {
        self.projectors
            .iter()
            .find(|(j, _)| *j == big_j)
            .map(|(_, p)| p)
    }
}

/// Clebsch-Gordan coefficient `⟨j,m1; j,m2 | J,M⟩` for two equal spins in the
/// Condon-Shortley convention (all coefficients real, highest-m1 coefficient
/// of each `|J,J⟩` positive).
///
/// All quantum numbers are doubled integers. Returns zero when
/// `M ≠ m1 + m2`; out-of-range or parity-violating arguments are errors.
pub fn clebsch_gordan(
    two_j: i32,
    two_m1: i32,
    two_m2: i32,
    two_big_j: i32,
    two_big_m: i32,
) -> Result<f64> {
    if two_j < 0 {
        return Err(Error::invalid("two_j must be nonnegative"));
    }
    for (name, two_m) in [("m1", two_m1), ("m2", two_m2)] {
        if two_m.abs() > two_j || (two_j - two_m) % 2 != 0 {
            return Err(Error::invalid(format!(
                "{name} out of range or wrong parity for two_j = {two_j}"
            )));
        }
    }
    if two_big_j < 0 || two_big_j > 2 * two_j || two_big_j % 2 != 0 {
        return Err(Error::invalid(format!(
            "total spin two_J = {two_big_j} outside 0..=2*two_j or wrong parity"
        )));
    }
    if two_big_m.abs() > two_big_j || two_big_m % 2 != 0 {
        return Err(Error::invalid(format!(
            "total two_M = {two_big_m} out of range for two_J = {two_big_j}"
        )));
    }
    let lf = LnFactorials::up_to((2 * two_j + 1) as usize);
    Ok(cg_equal_spins(
        two_j, two_m1, two_m2, two_big_j, two_big_m, &lf,
    ))
}

/// Racah's closed-form sum, specialised to j1 = j2 = j, evaluated with
/// precomputed log-factorials.
fn cg_equal_spins(
    two_j: i32,
    two_m1: i32,
    two_m2: i32,
    two_big_j: i32,
    two_big_m: i32,
    lf: &LnFactorials,
) -> f64 {
    if two_m1 + two_m2 != two_big_m {
        return 0.0;
    }
    // Integer factorial arguments; all divisions below are exact.
    let a = (2 * two_j - two_big_j) / 2; // j1 + j2 − J
    let b = two_big_j / 2; //                j1 − j2 + J and −j1 + j2 + J
    let d = (2 * two_j + two_big_j) / 2 + 1; // j1 + j2 + J + 1
    let e = (two_big_j + two_big_m) / 2;
    let f = (two_big_j - two_big_m) / 2;
    let g = (two_j - two_m1) / 2;
    let h = (two_j + two_m1) / 2;
    let p = (two_j - two_m2) / 2;
    let q = (two_j + two_m2) / 2;
    // Arguments shifted by k inside the alternating sum.
    let x = (two_big_j - two_j + two_m1) / 2; // J − j2 + m1
    let y = (two_big_j - two_j - two_m2) / 2; // J − j1 − m2

    let log_pref = 0.5
        * (libm::log((two_big_j + 1) as f64) + lf.get(a) + lf.get(b) + lf.get(b) - lf.get(d)
            + lf.get(e)
            + lf.get(f)
            + lf.get(g)
            + lf.get(h)
            + lf.get(p)
            + lf.get(q));

    let k_min = i32::max(0, i32::max(-x, -y));
    let k_max = i32::min(a, i32::min(g, q));
    let mut acc = 0.0;
    for k in k_min..=k_max {
        let log_den = lf.get(k)
            + lf.get(a - k)
            + lf.get(g - k)
            + lf.get(q - k)
            + lf.get(x + k)
            + lf.get(y + k);
        let term = libm::exp(log_pref - log_den);
        acc += if k % 2 == 0 { term } else { -term };
    }
    acc
}

/// Cumulative `ln(k!)` table.
struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    fn up_to(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for k in 1..=max {
            acc += libm::log(k as f64);
            table.push(acc);
        }
        Self { table }
    }

    #[inline]
    fn get(&self, arg: i32) -> f64 {
        debug_assert!(arg >= 0, "negative factorial argument");
        self.table[arg as usize]
    }
}
