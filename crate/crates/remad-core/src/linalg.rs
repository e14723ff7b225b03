//! Dense complex linear algebra: Hermitian eigendecomposition, von Neumann
//! entropy, positivity checks, and partial traces.
//!
//! Conventions fixed once and used everywhere:
//! - matrices are dense `nalgebra::DMatrix<Complex64>`;
//! - composite systems are ordered system ⊗ environment with the environment
//!   index fastest, so the joint basis index is `s * d_env + e`;
//! - entropies are in bits (`log2`) with the convention `0 * log2(0) = 0`;
//! - eigenvalues in `[-psd_tol, 0)` are clamped to zero before taking logs,
//!   since the channels routinely produce rank-deficient states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::tolerance::Tolerances;

/// Dense complex matrix used throughout the crate.
pub type ComplexMatrix = DMatrix<Complex64>;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("density matrix trace deviates from 1 by {0:e}")]
    InvalidTrace(f64),
    #[error("density matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Largest entry magnitude; zero for empty matrices.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest entrywise difference `max|a_ij - b_ij|`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max|m_ij - conj(m_ji)|` over all index pairs.
pub fn hermiticity_deviation(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Hermitian part `(m + m†)/2`.
pub fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * re(0.5)
}

/// Kronecker product `a ⊗ b` with the second factor's index fastest.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Real eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, aligned with
    /// `eigenvalues`; present only when requested.
    pub eigenvectors: Option<ComplexMatrix>,
}

/// Eigendecomposition of the Hermitian part of `m`.
///
/// Fails when `m` is not square or deviates from Hermiticity by more than
/// `tol.hermiticity`; the symmetrized part is what gets decomposed.
pub fn hermitian_eigensystem(
    m: &ComplexMatrix,
    want_vectors: bool,
    tol: &Tolerances,
) -> Result<Spectrum, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let dev = hermiticity_deviation(m);
    if dev > tol.hermiticity {
        return Err(LinalgError::NotHermitian(dev));
    }
    let h = hermitize(m);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = want_vectors.then(|| {
        let n = eig.eigenvectors.nrows();
        ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])])
    });
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &ComplexMatrix, tol: &Tolerances) -> Result<f64, LinalgError> {
    let spec = hermitian_eigensystem(m, false, tol)?;
    Ok(spec.eigenvalues.first().copied().unwrap_or(0.0))
}

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
///
/// The stored matrix is the symmetrized `(m + m†)/2`, so `ρ_ij = conj(ρ_ji)`
/// holds exactly.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and store a density matrix.
    pub fn new(m: ComplexMatrix, tol: &Tolerances) -> Result<Self, LinalgError> {
        if m.nrows() != m.ncols() {
            return Err(LinalgError::NonSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let dev = hermiticity_deviation(&m);
        if dev > tol.hermiticity {
            return Err(LinalgError::NotHermitian(dev));
        }
        let mat = hermitize(&m);
        let trace_dev = (mat.trace().re - 1.0).abs().max(mat.trace().im.abs());
        if trace_dev > tol.trace {
            return Err(LinalgError::InvalidTrace(trace_dev));
        }
        let min_eig = min_eigenvalue(&mat, tol)?;
        if min_eig < -tol.psd {
            return Err(LinalgError::NotPositive(min_eig));
        }
        Ok(Self { mat })
    }

    /// Wrap a matrix known to satisfy the invariants (e.g. the output of a
    /// CPTP map applied to a valid state); only symmetrizes.
    pub(crate) fn from_valid(m: ComplexMatrix) -> Self {
        Self { mat: hermitize(&m) }
    }

    /// Diagonal state from a probability vector.
    pub fn from_populations(p: &[f64], tol: &Tolerances) -> Result<Self, LinalgError> {
        let d = p.len();
        let m = ComplexMatrix::from_fn(d, d, |r, c| if r == c { re(p[r]) } else { re(0.0) });
        Self::new(m, tol)
    }

    /// Pure basis state `|k⟩⟨k|`.
    pub fn pure_basis(dim: usize, k: usize) -> Self {
        let m = ComplexMatrix::from_fn(
            dim,
            dim,
            |r, c| {
                if r == k && c == k {
                    re(1.0)
                } else {
                    re(0.0)
                }
            },
        );
        Self { mat: m }
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim, dim) * re(1.0 / dim as f64);
        Self { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Diagonal entries as real populations.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).collect()
    }
}

/// Shannon entropy in bits of a nonnegative vector; entries in
/// `[-psd_tol, 0)` are clamped to zero.
pub fn entropy_of_probs(p: &[f64]) -> f64 {
    let mut s = 0.0;
    for &x in p {
        if x > 0.0 {
            s -= x * x.log2();
        }
    }
    s
}

/// Von Neumann entropy `S(ρ) = -Tr[ρ log2 ρ]` in bits.
///
/// Validates the input spectrum: the trace must be 1 within `tol.trace` and
/// the minimum eigenvalue at least `-tol.psd`; eigenvalues in `[-psd, 0)`
/// are clamped to zero.
pub fn von_neumann_entropy_of(m: &ComplexMatrix, tol: &Tolerances) -> Result<f64, LinalgError> {
    let spec = hermitian_eigensystem(m, false, tol)?;
    let trace: f64 = spec.eigenvalues.iter().sum();
    if (trace - 1.0).abs() > tol.trace {
        return Err(LinalgError::InvalidTrace((trace - 1.0).abs()));
    }
    let min = spec.eigenvalues.first().copied().unwrap_or(0.0);
    if min < -tol.psd {
        return Err(LinalgError::NotPositive(min));
    }
    Ok(entropy_of_probs(&spec.eigenvalues))
}

/// Von Neumann entropy of a validated state.
pub fn von_neumann_entropy(rho: &DensityMatrix, tol: &Tolerances) -> f64 {
    // The state was validated at construction; the spectrum cannot fail the
    // checks again by more than the symmetrization round-off.
    von_neumann_entropy_of(rho.matrix(), tol).expect("validated density matrix")
}

/// Which tensor factor to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace of a `(dA*dB) x (dA*dB)` matrix over one factor.
///
/// The joint ordering is first ⊗ second with the second index fastest.
pub fn partial_trace(
    joint: &ComplexMatrix,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<ComplexMatrix, LinalgError> {
    let (da, db) = dims;
    let n = da * db;
    if joint.nrows() != n || joint.ncols() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            got: joint.nrows().max(joint.ncols()),
        });
    }
    let out = match keep {
        Subsystem::First => ComplexMatrix::from_fn(da, da, |a, ap| {
            (0..db).map(|b| joint[(a * db + b, ap * db + b)]).sum()
        }),
        Subsystem::Second => ComplexMatrix::from_fn(db, db, |b, bp| {
            (0..da).map(|a| joint[(a * db + b, a * db + bp)]).sum()
        }),
    };
    Ok(out)
}
