//! Liouville (vectorized) representation and degradability classification.
//!
//! Operators vectorize row-major, `|i⟩⟨j| → |i⟩ ⊗ |j⟩`, so a channel with
//! Kraus set `{K_i}` becomes the matrix `M = Σ_i K_i ⊗ K_i*` acting on
//! vectorized states. A candidate degrading map is recovered as
//! `M_D = M_Φ̃ · M_Φ⁻¹` and certified LCPTP through the positivity of its
//! Choi matrix; for qutrit ReMAD channels the superoperator is full rank
//! except on the boundaries `γ10 = 1` and `γ21 + γ20 = 1`, where kernel
//! witnesses settle the question instead.

use nalgebra::DVector;
use num_complex::Complex64;
use thiserror::Error;

use crate::channels::{remad_kraus, ChannelError, KrausSet, QutritParams, TransitionMatrix};
use crate::linalg::{hermitian_eigensystem, max_abs_diff, re, ComplexMatrix, LinalgError};
use crate::tolerance::Tolerances;

#[derive(Debug, Error)]
pub enum LiouvilleError {
    #[error("vector length {0} is not a perfect square")]
    BadLength(usize),
    #[error("superoperator is singular (sigma_min/sigma_max = {ratio:e})")]
    Singular { ratio: f64 },
    #[error("parameters sit on a singular boundary: {0}")]
    SingularBoundary(String),
    #[error("parameters are not on a singular boundary: ({0}, {1}, {2})")]
    NotOnBoundary(f64, f64, f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(
        "analytic and numeric classification disagree ({side}): analytic {analytic}, \
         numeric min Choi eigenvalue {min_eig:e}"
    )]
    Inconsistent {
        side: &'static str,
        analytic: bool,
        min_eig: f64,
    },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Row-major vectorization `ρ = Σ ρ_ij |i⟩⟨j| → Σ ρ_ij |i⟩⊗|j⟩`.
pub fn vectorize(m: &ComplexMatrix) -> DVector<Complex64> {
    let (rows, cols) = m.shape();
    DVector::from_fn(rows * cols, |idx, _| m[(idx / cols, idx % cols)])
}

/// Inverse of [`vectorize`]; fails unless the length is a perfect square.
pub fn devectorize(v: &DVector<Complex64>) -> Result<ComplexMatrix, LiouvilleError> {
    let n = v.len();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(LiouvilleError::BadLength(n));
    }
    Ok(ComplexMatrix::from_fn(d, d, |r, c| v[r * d + c]))
}

/// A channel as a matrix on vectorized operators.
#[derive(Debug, Clone)]
pub struct Superoperator {
    dim_in: usize,
    dim_out: usize,
    mat: ComplexMatrix,
}

impl Superoperator {
    pub fn from_matrix(mat: ComplexMatrix, dim_in: usize, dim_out: usize) -> Self {
        debug_assert_eq!(mat.ncols(), dim_in * dim_in);
        debug_assert_eq!(mat.nrows(), dim_out * dim_out);
        Self {
            dim_in,
            dim_out,
            mat,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Apply to an operator: `devec(M · vec(m))`.
    pub fn apply(&self, m: &ComplexMatrix) -> Result<ComplexMatrix, LiouvilleError> {
        if m.nrows() != self.dim_in || m.ncols() != self.dim_in {
            return Err(LiouvilleError::DimensionMismatch {
                expected: self.dim_in,
                got: m.nrows(),
            });
        }
        devectorize(&(&self.mat * vectorize(m)))
    }
}

/// Liouville matrix of a Kraus set: `M = Σ_i K_i ⊗ K_i*`.
pub fn superoperator_of(k: &KrausSet) -> Superoperator {
    let dim_in = k.dim_in();
    let dim_out = k.dim_out();
    let mut mat = ComplexMatrix::zeros(dim_out * dim_out, dim_in * dim_in);
    for op in k.operators() {
        mat += op.kronecker(&op.conjugate());
    }
    let sop = Superoperator {
        dim_in,
        dim_out,
        mat,
    };
    debug_assert!({
        // construction check: M·vec(ρ) equals the Kraus application on a
        // fixed full-coherence state
        let d = dim_in as f64;
        let probe = ComplexMatrix::from_fn(dim_in, dim_in, |r, c| {
            if r == c {
                re(1.0 / d)
            } else {
                Complex64::new(0.31 / d, 0.17 * (r as f64 - c as f64) / d)
            }
        });
        let via_sop = sop.apply(&probe).unwrap();
        let direct = crate::channels::apply_kraus_matrix(k, &probe);
        max_abs_diff(&via_sop, &direct) < 1e-12
    });
    sop
}

/// Superoperator of the ReMAD channel of `g`.
pub fn remad_superoperator(g: &TransitionMatrix) -> Superoperator {
    superoperator_of(&remad_kraus(g))
}

fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Invert a square superoperator.
///
/// Refuses with [`LiouvilleError::Singular`] when
/// `sigma_min < tol.singular_rel * sigma_max`; the ReMAD boundaries
/// `γ10 = 1` and `γ21 + γ20 = 1` are genuinely rank deficient and must be
/// handled through kernel witnesses instead.
pub fn invert_superoperator(
    m: &Superoperator,
    tol: &Tolerances,
) -> Result<Superoperator, LiouvilleError> {
    assert_eq!(m.dim_in, m.dim_out, "only square superoperators invert");
    let sv = singular_values(&m.mat);
    let (smax, smin) = (sv[0], *sv.last().unwrap());
    let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    if ratio < tol.singular_rel {
        return Err(LiouvilleError::Singular { ratio });
    }
    let inv = m
        .mat
        .clone()
        .try_inverse()
        .ok_or(LiouvilleError::Singular { ratio })?;
    debug_assert!(
        max_abs_diff(
            &(&m.mat * &inv),
            &ComplexMatrix::identity(m.mat.nrows(), m.mat.ncols())
        ) < 1e-8
    );
    Ok(Superoperator {
        dim_in: m.dim_out,
        dim_out: m.dim_in,
        mat: inv,
    })
}

/// Closed-form inverse of the qutrit ReMAD channel applied to `rho`
/// (entrywise, valid for `γ10 < 1` and `γ21 + γ20 < 1`).
pub fn qutrit_inverse_closed_form(
    g: &QutritParams,
    rho: &ComplexMatrix,
) -> Result<ComplexMatrix, LiouvilleError> {
    let s1 = 1.0 - g.g10;
    let s2 = 1.0 - g.g21 - g.g20;
    if s1 <= 0.0 || s2 <= 0.0 {
        return Err(LiouvilleError::SingularBoundary(format!(
            "gamma10 = {} or gamma21+gamma20 = {}",
            g.g10,
            g.g21 + g.g20
        )));
    }
    if rho.nrows() != 3 || rho.ncols() != 3 {
        return Err(LiouvilleError::DimensionMismatch {
            expected: 3,
            got: rho.nrows(),
        });
    }
    let a = g.g10;
    let b = g.g21;
    let c = g.g20;
    let mut out = ComplexMatrix::zeros(3, 3);
    out[(0, 0)] =
        rho[(0, 0)] - rho[(1, 1)] * re(a / s1) + rho[(2, 2)] * re((a * b - c * s1) / (s1 * s2));
    out[(0, 1)] =
        rho[(0, 1)] * re(1.0 / s1.sqrt()) - rho[(1, 2)] * re((a * b).sqrt() / (s1 * s2.sqrt()));
    out[(1, 0)] =
        rho[(1, 0)] * re(1.0 / s1.sqrt()) - rho[(2, 1)] * re((a * b).sqrt() / (s1 * s2.sqrt()));
    out[(0, 2)] = rho[(0, 2)] * re(1.0 / s2.sqrt());
    out[(2, 0)] = rho[(2, 0)] * re(1.0 / s2.sqrt());
    out[(1, 1)] = rho[(1, 1)] * re(1.0 / s1) - rho[(2, 2)] * re(b / (s1 * s2));
    out[(1, 2)] = rho[(1, 2)] * re(1.0 / (s1 * s2).sqrt());
    out[(2, 1)] = rho[(2, 1)] * re(1.0 / (s1 * s2).sqrt());
    out[(2, 2)] = rho[(2, 2)] * re(1.0 / s2);
    Ok(out)
}

/// Choi matrix `C = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)` (reference factor first).
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    dim_in: usize,
    dim_out: usize,
    mat: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }
}

/// Choi matrix of a superoperator: `C[(i,k),(j,l)] = [Φ(|i⟩⟨j|)]_{k,l}`.
pub fn choi_of(m: &Superoperator) -> ChoiMatrix {
    let din = m.dim_in;
    let dout = m.dim_out;
    let mat = ComplexMatrix::from_fn(din * dout, din * dout, |rc, cc| {
        let (i, k) = (rc / dout, rc % dout);
        let (j, l) = (cc / dout, cc % dout);
        m.mat[(k * dout + l, i * din + j)]
    });
    ChoiMatrix {
        dim_in: din,
        dim_out: dout,
        mat,
    }
}

/// Diagnostics of a CPTP check on a candidate map.
#[derive(Debug, Clone, Copy)]
pub struct CptpCheck {
    /// Minimum eigenvalue of the (Hermitized) Choi matrix.
    pub min_choi_eigenvalue: f64,
    /// `max|Tr_out C - I|` entrywise.
    pub tp_defect: f64,
    /// Hermiticity deviation of the Choi matrix.
    pub hermiticity_deviation: f64,
}

impl CptpCheck {
    pub fn is_cp(&self, tol: &Tolerances) -> bool {
        self.min_choi_eigenvalue >= -tol.cptp_eig && self.hermiticity_deviation <= tol.cptp_tp
    }

    pub fn is_tp(&self, tol: &Tolerances) -> bool {
        self.tp_defect <= tol.cptp_tp
    }

    pub fn is_cptp(&self, tol: &Tolerances) -> bool {
        self.is_cp(tol) && self.is_tp(tol)
    }
}

/// Check complete positivity (Choi positivity) and trace preservation of a
/// square superoperator.
pub fn is_cptp(m: &Superoperator, tol: &Tolerances) -> CptpCheck {
    let choi = choi_of(m);
    let herm_dev = crate::linalg::hermiticity_deviation(&choi.mat);
    let min_eig = if herm_dev > 1e-3 {
        // grossly non-Hermitian candidates cannot be CP; report the
        // Hermitized bound anyway
        f64::NEG_INFINITY
    } else {
        let relaxed = Tolerances {
            hermiticity: f64::INFINITY,
            ..tol.clone()
        };
        hermitian_eigensystem(&choi.mat, false, &relaxed)
            .map(|s| s.eigenvalues[0])
            .unwrap_or(f64::NEG_INFINITY)
    };
    // trace over the output factor must give the identity on the reference
    let din = choi.dim_in;
    let dout = choi.dim_out;
    let mut tp_defect: f64 = 0.0;
    for i in 0..din {
        for j in 0..din {
            let mut acc = Complex64::default();
            for k in 0..dout {
                acc += choi.mat[(i * dout + k, j * dout + k)];
            }
            let expect = if i == j { re(1.0) } else { re(0.0) };
            tp_defect = tp_defect.max((acc - expect).norm());
        }
    }
    CptpCheck {
        min_choi_eigenvalue: min_eig,
        tp_defect,
        hermiticity_deviation: herm_dev,
    }
}

/// Raw degrading-parameter candidate `(γ'10, γ'21, γ'20)` solving
/// `Φ_Γ̃ = Φ_Γ' ∘ Φ_Γ` on the population sector:
///
/// ```text
/// γ'10 = (1 - 2γ10)/(1 - γ10)
/// γ'21 = γ'10 · γ21/(1 - γ21 - γ20)
/// γ'20 = (1 - γ21 - 2γ20)/(1 - γ21 - γ20) - γ'10 · γ21/(1 - γ21 - γ20)
/// ```
pub fn degrading_candidate(g: &QutritParams) -> Result<[f64; 3], LiouvilleError> {
    let s1 = 1.0 - g.g10;
    let s2 = 1.0 - g.g21 - g.g20;
    if s1 <= 0.0 || s2 <= 0.0 {
        return Err(LiouvilleError::SingularBoundary(format!(
            "degrading candidate undefined at gamma10 = {} / gamma21+gamma20 = {}",
            g.g10,
            g.g21 + g.g20
        )));
    }
    let p10 = (1.0 - 2.0 * g.g10) / s1;
    let p21 = p10 * g.g21 / s2;
    let p20 = (1.0 - g.g21 - 2.0 * g.g20) / s2 - g.g21 / s2 * p10;
    Ok([p10, p21, p20])
}

/// Raw antidegrading-parameter candidate solving `Φ_Γ = Φ_Γ' ∘ Φ_Γ̃`:
///
/// ```text
/// γ'10 = (2γ10 - 1)/γ10
/// γ'21 = (γ21/γ20) · (2γ10 - 1)/γ10
/// γ'20 = 2 + [γ21(1 - γ10) - γ10]/(γ10 γ20)
/// ```
pub fn antidegrading_candidate(g: &QutritParams) -> Result<[f64; 3], LiouvilleError> {
    if g.g10 <= 0.0 || g.g20 <= 0.0 {
        return Err(LiouvilleError::SingularBoundary(format!(
            "antidegrading candidate undefined at gamma10 = {} / gamma20 = {}",
            g.g10, g.g20
        )));
    }
    let p10 = (2.0 * g.g10 - 1.0) / g.g10;
    let p21 = g.g21 / g.g20 * p10;
    let p20 = 2.0 + (g.g21 * (1.0 - g.g10) - g.g10) / (g.g10 * g.g20);
    Ok([p10, p21, p20])
}

fn in_domain3(c: &[f64; 3], slack: f64) -> bool {
    c.iter().all(|&x| (-slack..=1.0 + slack).contains(&x)) && c[1] + c[2] <= 1.0 + slack
}

/// Signed distance of a candidate from the domain boundary: positive inside.
fn domain3_margin(c: &[f64; 3]) -> f64 {
    let mut m = f64::INFINITY;
    for &x in c {
        m = m.min(x).min(1.0 - x);
    }
    m.min(1.0 - c[1] - c[2])
}

/// Degrading ReMAD parameters per the qutrit closed form, or `None` when the
/// candidate leaves the qutrit domain (then the channel is not degradable by
/// a ReMAD map).
pub fn analytic_degrading_params(g: &QutritParams) -> Result<Option<QutritParams>, LiouvilleError> {
    let c = degrading_candidate(g)?;
    if in_domain3(&c, 1e-12) {
        Ok(Some(QutritParams::new(
            c[0].clamp(0.0, 1.0),
            c[1].clamp(0.0, 1.0),
            c[2].clamp(0.0, 1.0),
        )?))
    } else {
        Ok(None)
    }
}

/// Antidegrading ReMAD parameters, or `None` when outside the domain.
pub fn analytic_antidegrading_params(
    g: &QutritParams,
) -> Result<Option<QutritParams>, LiouvilleError> {
    let c = antidegrading_candidate(g)?;
    if in_domain3(&c, 1e-12) {
        Ok(Some(QutritParams::new(
            c[0].clamp(0.0, 1.0),
            c[1].clamp(0.0, 1.0),
            c[2].clamp(0.0, 1.0),
        )?))
    } else {
        Ok(None)
    }
}

/// Orthonormal kernel basis of a superoperator (right singular vectors with
/// relatively tiny singular values).
fn kernel_basis(m: &Superoperator, tol: &Tolerances) -> Vec<DVector<Complex64>> {
    let gram = m.mat.adjoint() * &m.mat;
    let relaxed = Tolerances {
        hermiticity: 1e-6,
        ..tol.clone()
    };
    let spec = hermitian_eigensystem(&gram, true, &relaxed).expect("Gram matrix is Hermitian");
    let vmax = spec.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = (tol.singular_rel * tol.singular_rel * vmax).max(1e-24);
    let vectors = spec.eigenvectors.unwrap();
    spec.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &ev)| ev <= cutoff)
        .map(|(i, _)| vectors.column(i).clone_owned())
        .collect()
}

/// True when `ker a ⊄ ker b`, i.e. some operator annihilated by `a` survives
/// `b`. For channels this is the witness that no post-processing of `a` can
/// reproduce `b`.
pub fn kernel_not_included(a: &Superoperator, b: &Superoperator, tol: &Tolerances) -> bool {
    kernel_basis(a, tol)
        .iter()
        .any(|v| (&b.mat * v).norm() > 1e-6)
}

/// Kernel obstruction to degradability: `ker Φ ⊄ ker Φ̃`.
pub fn kernel_blocks_degradability(g: &QutritParams, tol: &Tolerances) -> bool {
    let gamma = TransitionMatrix::qutrit(*g);
    let phi = remad_superoperator(&gamma);
    let phi_t = remad_superoperator(&gamma.complementary());
    kernel_not_included(&phi, &phi_t, tol)
}

/// Kernel obstruction to antidegradability: `ker Φ̃ ⊄ ker Φ`.
pub fn kernel_blocks_antidegradability(g: &QutritParams, tol: &Tolerances) -> bool {
    let gamma = TransitionMatrix::qutrit(*g);
    let phi = remad_superoperator(&gamma);
    let phi_t = remad_superoperator(&gamma.complementary());
    kernel_not_included(&phi_t, &phi, tol)
}

/// Kernel-witness non-degradability test on the singular boundaries.
///
/// On `γ10 = 1` or `γ21 + γ20 = 1` (where the channel superoperator cannot
/// be inverted) this reports whether a kernel element of `Φ` survives `Φ̃`,
/// which rules out degradability. On the `γ10 = 0` plane it instead checks
/// the complementary witness (e.g. `|0⟩⟨1| ∈ ker Φ̃` while `Φ` keeps it),
/// which rules out antidegradability. Anywhere else: `NotOnBoundary`.
pub fn kernel_inclusion_nondegradable(
    g: &QutritParams,
    tol: &Tolerances,
) -> Result<bool, LiouvilleError> {
    let b = tol.boundary;
    if g.g10 >= 1.0 - b || g.g21 + g.g20 >= 1.0 - b {
        Ok(kernel_blocks_degradability(g, tol))
    } else if g.g10 <= b {
        Ok(kernel_blocks_antidegradability(g, tol))
    } else {
        Err(LiouvilleError::NotOnBoundary(g.g10, g.g21, g.g20))
    }
}

/// Classification verdict for a qutrit ReMAD channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Degradable,
    Antidegradable,
    Neither,
    /// On a singular boundary where one side could not be decided.
    SingularCase,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Degradable => "Degradable",
            Verdict::Antidegradable => "Antidegradable",
            Verdict::Neither => "Neither",
            Verdict::SingularCase => "SingularCase",
        }
    }
}

/// Outcome of [`classify_qutrit`]: the verdict plus the analytic witnesses
/// and numeric Choi evidence backing it.
#[derive(Debug, Clone)]
pub struct ChannelClassification {
    pub verdict: Verdict,
    /// `None` when a singular boundary left the side undecided.
    pub degradable: Option<bool>,
    pub antidegradable: Option<bool>,
    /// ReMAD parameters of the degrading map, when one exists.
    pub degrading_witness: Option<QutritParams>,
    pub antidegrading_witness: Option<QutritParams>,
    /// Min Choi eigenvalue of the numeric degrading candidate `M_Φ̃ M_Φ⁻¹`.
    pub degrading_choi_min_eig: Option<f64>,
    pub antidegrading_choi_min_eig: Option<f64>,
}

fn decide_side(
    candidate_margin: Option<f64>,
    analytic_in: Option<bool>,
    numeric: Option<&CptpCheck>,
    kernel_blocked: Option<bool>,
    side: &'static str,
    tol: &Tolerances,
) -> Result<Option<bool>, LiouvilleError> {
    match numeric {
        Some(check) => {
            let numeric_in = check.is_cptp(tol);
            if let (Some(analytic), Some(margin)) = (analytic_in, candidate_margin) {
                // cross-validate away from the analytic region boundary; the
                // numeric path is ground truth near it
                if analytic != numeric_in && margin.abs() > 1e-6 {
                    return Err(LiouvilleError::Inconsistent {
                        side,
                        analytic,
                        min_eig: check.min_choi_eigenvalue,
                    });
                }
            }
            Ok(Some(numeric_in))
        }
        None => match kernel_blocked {
            Some(true) => Ok(Some(false)),
            // kernel inclusion alone cannot certify the positive case
            _ => Ok(None),
        },
    }
}

/// Classify a qutrit ReMAD channel as degradable, antidegradable, neither,
/// or singular-undecided.
///
/// Where the channel (resp. complementary) superoperator is invertible the
/// numeric Choi-positivity check of `M_Φ̃ M_Φ⁻¹` (resp. `M_Φ M_Φ̃⁻¹`) is
/// authoritative and is cross-validated against the analytic region
/// formulas; disagreements away from the region boundary surface as
/// [`LiouvilleError::Inconsistent`]. On singular boundaries kernel witnesses
/// rule sides out.
pub fn classify_qutrit(
    g: &QutritParams,
    tol: &Tolerances,
) -> Result<ChannelClassification, LiouvilleError> {
    let gamma = TransitionMatrix::qutrit(*g);
    let gamma_t = gamma.complementary();
    let m_phi = remad_superoperator(&gamma);
    let m_phi_t = remad_superoperator(&gamma_t);
    let b = tol.boundary;

    let phi_invertible = g.g10 < 1.0 - b && g.g21 + g.g20 < 1.0 - b;
    let phi_t_invertible = g.g10 > b && g.g20 > b;

    // degradability side: candidate map D = M_Φ̃ M_Φ⁻¹ when invertible,
    // kernel witness otherwise (also when the guard refuses near-singular
    // points the boundary detector missed)
    let deg_numeric = if phi_invertible {
        match invert_superoperator(&m_phi, tol) {
            Ok(inv) => Some(is_cptp(
                &Superoperator::from_matrix(&m_phi_t.mat * &inv.mat, 3, 3),
                tol,
            )),
            Err(LiouvilleError::Singular { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let (deg_margin, deg_analytic, deg_witness) = if deg_numeric.is_some() {
        let cand = degrading_candidate(g)?;
        let margin = domain3_margin(&cand);
        let witness = analytic_degrading_params(g)?;
        (Some(margin), Some(witness.is_some()), witness)
    } else {
        (None, None, None)
    };
    let deg_kernel_blocked = deg_numeric
        .is_none()
        .then(|| kernel_not_included(&m_phi, &m_phi_t, tol));
    let degradable = decide_side(
        deg_margin,
        deg_analytic,
        deg_numeric.as_ref(),
        deg_kernel_blocked,
        "degradable",
        tol,
    )?;

    // antidegradability side: candidate map A = M_Φ M_Φ̃⁻¹
    let anti_numeric = if phi_t_invertible {
        match invert_superoperator(&m_phi_t, tol) {
            Ok(inv) => Some(is_cptp(
                &Superoperator::from_matrix(&m_phi.mat * &inv.mat, 3, 3),
                tol,
            )),
            Err(LiouvilleError::Singular { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let (anti_margin, anti_analytic, anti_witness) = if anti_numeric.is_some() {
        let cand = antidegrading_candidate(g)?;
        let margin = domain3_margin(&cand);
        let witness = analytic_antidegrading_params(g)?;
        (Some(margin), Some(witness.is_some()), witness)
    } else {
        (None, None, None)
    };
    let anti_kernel_blocked = anti_numeric
        .is_none()
        .then(|| kernel_not_included(&m_phi_t, &m_phi, tol));
    let antidegradable = decide_side(
        anti_margin,
        anti_analytic,
        anti_numeric.as_ref(),
        anti_kernel_blocked,
        "antidegradable",
        tol,
    )?;

    // antidegradability wins ties: both-true means both capacities vanish
    let verdict = match (degradable, antidegradable) {
        (_, Some(true)) => Verdict::Antidegradable,
        (Some(true), _) => Verdict::Degradable,
        (Some(false), Some(false)) => Verdict::Neither,
        _ => Verdict::SingularCase,
    };

    Ok(ChannelClassification {
        verdict,
        degradable,
        antidegradable,
        degrading_witness: if degradable == Some(true) {
            deg_witness
        } else {
            None
        },
        antidegrading_witness: if antidegradable == Some(true) {
            anti_witness
        } else {
            None
        },
        degrading_choi_min_eig: deg_numeric.map(|c| c.min_choi_eigenvalue),
        antidegrading_choi_min_eig: anti_numeric.map(|c| c.min_choi_eigenvalue),
    })
}
