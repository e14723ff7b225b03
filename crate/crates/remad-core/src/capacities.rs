//! Entropic functionals and capacity computation: coherent information,
//! the covariance-reduced diagonal optimization for degradable channels,
//! closed forms in the non-degradable planes, and entanglement-assisted
//! capacities.
//!
//! Channel covariance under the diagonal phase group lets every maximization
//! here run over diagonal input states only: for degradable channels the
//! coherent information is concave and the diagonal restriction is exact;
//! for the quantum mutual information concavity always holds. On diagonal
//! inputs both the channel and its complementary output diagonal states, so
//! the objectives reduce to Shannon entropies of probability vectors.

use thiserror::Error;

use crate::channels::{
    apply_kraus_matrix, remad_kraus, ChannelError, QutritParams, TransitionMatrix,
};
use crate::linalg::{entropy_of_probs, von_neumann_entropy_of, DensityMatrix, LinalgError};
use crate::liouville::{
    analytic_degrading_params, classify_qutrit, ChannelClassification, LiouvilleError, Verdict,
};
use crate::optimize::{golden_section_max, simplex_grid_nelder_mead_max};
use crate::tolerance::Tolerances;

#[derive(Debug, Error)]
pub enum CapacityError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parameters outside the qutrit domain: ({0}, {1}, {2})")]
    OutOfDomain(f64, f64, f64),
    #[error("channel is not degradable; the diagonal optimum is only a lower bound")]
    NotDegradable,
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Liouville(#[from] LiouvilleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How a capacity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMethod {
    /// A closed-form expression from the resolved parameter regions.
    ClosedForm,
    /// Exact single-letter value from the diagonal-input optimization
    /// (valid for degradable channels).
    DiagonalOptimization,
    /// Zero because the channel is antidegradable.
    ZeroByAntidegradability,
    /// Unresolved region: `value` is a lower bound, `upper` the
    /// data-processing upper bound when one exists.
    Unknown,
}

impl CapacityMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CapacityMethod::ClosedForm => "closed-form",
            CapacityMethod::DiagonalOptimization => "diagonal-optimization",
            CapacityMethod::ZeroByAntidegradability => "zero-by-antidegradability",
            CapacityMethod::Unknown => "unknown",
        }
    }
}

/// A diagonal input state, stored as its population vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalInput {
    populations: Vec<f64>,
}

impl DiagonalInput {
    pub fn new(populations: Vec<f64>) -> Result<Self, CapacityError> {
        let sum: f64 = populations.iter().sum();
        if populations
            .iter()
            .any(|&p| !(-1e-12..=1.0 + 1e-12).contains(&p))
            || (sum - 1.0).abs() > 1e-12
        {
            return Err(CapacityError::OutOfRange(format!(
                "populations {populations:?} are not a probability vector"
            )));
        }
        Ok(Self { populations })
    }

    fn from_p1p2(p1: f64, p2: f64) -> Self {
        Self {
            populations: vec![(1.0 - p1 - p2).max(0.0), p1, p2],
        }
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }
}

/// A capacity value in bits per channel use together with how it was
/// obtained. `method == Unknown` marks `value` as a lower bound only, with
/// `upper` carrying the bracket top when available.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    pub value: f64,
    pub method: CapacityMethod,
    pub argmax: Option<DiagonalInput>,
    pub optimizer_evals: u64,
    pub upper: Option<f64>,
}

impl CapacityResult {
    fn closed_form(value: f64) -> Self {
        Self {
            value,
            method: CapacityMethod::ClosedForm,
            argmax: None,
            optimizer_evals: 0,
            upper: None,
        }
    }

    /// True when the value is exact rather than a bound.
    pub fn is_resolved(&self) -> bool {
        self.method != CapacityMethod::Unknown
    }
}

/// Populations of `Φ_Γ(ρ)` for a diagonal input: `out_k = Σ_j p_j γ_{j,k}`.
pub fn diagonal_output(g: &TransitionMatrix, p: &[f64]) -> Vec<f64> {
    let d = g.dim();
    debug_assert_eq!(p.len(), d);
    (0..d)
        .map(|k| (k..d).map(|j| p[j] * g.gamma(j, k)).sum())
        .collect()
}

/// Coherent information `I_coh(Φ_Γ, ρ) = S(Φ_Γ(ρ)) - S(Φ_Γ̃(ρ))` in bits;
/// may be negative.
pub fn coherent_information(
    g: &TransitionMatrix,
    rho: &DensityMatrix,
    tol: &Tolerances,
) -> Result<f64, CapacityError> {
    let out = apply_kraus_matrix(&remad_kraus(g), rho.matrix());
    let out_c = apply_kraus_matrix(&remad_kraus(&g.complementary()), rho.matrix());
    Ok(von_neumann_entropy_of(&out, tol)? - von_neumann_entropy_of(&out_c, tol)?)
}

/// Coherent information restricted to a diagonal input, computed from the
/// population dynamics alone (both outputs stay diagonal).
pub fn diagonal_coherent_information(g: &TransitionMatrix, p: &[f64]) -> f64 {
    let out = diagonal_output(g, p);
    let out_c = diagonal_output(&g.complementary(), p);
    entropy_of_probs(&out) - entropy_of_probs(&out_c)
}

/// Quantum mutual information `I(Φ_Γ, ρ) = S(ρ) + I_coh(Φ_Γ, ρ)`.
pub fn mutual_information(
    g: &TransitionMatrix,
    rho: &DensityMatrix,
    tol: &Tolerances,
) -> Result<f64, CapacityError> {
    Ok(von_neumann_entropy_of(rho.matrix(), tol)? + coherent_information(g, rho, tol)?)
}

fn qutrit_diag_coh(g: &QutritParams, p1: f64, p2: f64) -> f64 {
    let p0 = (1.0 - p1 - p2).max(0.0);
    let s2 = g.survival2();
    let out = [
        p0 + g.g10 * p1 + g.g20 * p2,
        (1.0 - g.g10) * p1 + g.g21 * p2,
        s2 * p2,
    ];
    let out_c = [
        p0 + (1.0 - g.g10) * p1 + s2 * p2,
        g.g10 * p1 + g.g21 * p2,
        g.g20 * p2,
    ];
    entropy_of_probs(&out) - entropy_of_probs(&out_c)
}

/// Maximum of the coherent information over diagonal qutrit inputs.
fn diagonal_max(g: &QutritParams, resolution: usize) -> (f64, DiagonalInput, u64) {
    let r = simplex_grid_nelder_mead_max(|p1, p2| qutrit_diag_coh(g, p1, p2), resolution);
    (r.value, DiagonalInput::from_p1p2(r.p[0], r.p[1]), r.evals)
}

/// Single-letter quantum capacity of a degradable qutrit ReMAD channel via
/// the diagonal-restricted maximization (coarse grid of `resolution` steps
/// per axis plus local refinement).
///
/// When the channel is not degradable: with `strict` set this fails with
/// [`CapacityError::NotDegradable`]; otherwise the optimum is returned with
/// `method = Unknown`, flagging it as a lower bound only.
pub fn diagonal_q1(
    g: &QutritParams,
    resolution: usize,
    strict: bool,
    tol: &Tolerances,
) -> Result<CapacityResult, CapacityError> {
    let class = classify_qutrit(g, tol)?;
    let degradable = class.degradable == Some(true);
    if strict && !degradable {
        return Err(CapacityError::NotDegradable);
    }
    let (value, argmax, evals) = diagonal_max(g, resolution);
    Ok(CapacityResult {
        value,
        method: if degradable {
            CapacityMethod::DiagonalOptimization
        } else {
            CapacityMethod::Unknown
        },
        argmax: Some(argmax),
        optimizer_evals: evals,
        upper: None,
    })
}

/// The qubit-ADC capacity profile
/// `𝒬(x) = max_p { H2((1-x) p) - H2(x p) }`, zero for `x ≥ 1/2`.
pub fn qubit_adc_capacity(x: f64) -> Result<f64, CapacityError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(CapacityError::OutOfRange(format!(
            "damping parameter {x} outside [0, 1]"
        )));
    }
    if x >= 0.5 {
        return Ok(0.0);
    }
    let h2 = |q: f64| entropy_of_probs(&[q, 1.0 - q]);
    // concave in p for x < 1/2, so golden section is globally valid
    let r = golden_section_max(|p| h2((1.0 - x) * p) - h2(x * p), 0.0, 1.0, 1e-10);
    Ok(r.value.max(0.0))
}

/// Capacity on the `γ10 = 0` plane: exactly 1 (closed form) once
/// `γ21 + γ20 ≥ 1/2`, the diagonal optimization below it. The `{|0⟩,|1⟩}`
/// subspace is noiseless here, so the value never drops below 1.
pub fn plane_gamma10_zero_capacity(
    g21: f64,
    g20: f64,
    resolution: usize,
) -> Result<CapacityResult, CapacityError> {
    if !(0.0..=1.0).contains(&g21) || !(0.0..=1.0).contains(&g20) || g21 + g20 > 1.0 + 1e-12 {
        return Err(CapacityError::OutOfDomain(0.0, g21, g20));
    }
    if g21 + g20 >= 0.5 {
        return Ok(CapacityResult::closed_form(1.0));
    }
    let g = QutritParams::new(0.0, g21, g20)?;
    let (value, argmax, evals) = diagonal_max(&g, resolution);
    debug_assert!(value >= 1.0 - 1e-7);
    Ok(CapacityResult {
        value,
        method: CapacityMethod::DiagonalOptimization,
        argmax: Some(argmax),
        optimizer_evals: evals,
        upper: None,
    })
}

/// Capacity on the `γ21 = 0` plane, dispatched by quadrant: degradable for
/// `γ10, γ20 ≤ 1/2` (diagonal optimization), antidegradable for
/// `γ10, γ20 ≥ 1/2` (zero), and the symmetric closed form
/// `𝒬(min(γ10, γ20))` in the mixed quadrants.
pub fn plane_gamma21_zero_capacity(
    g10: f64,
    g20: f64,
    resolution: usize,
) -> Result<CapacityResult, CapacityError> {
    if !(0.0..=1.0).contains(&g10) || !(0.0..=1.0).contains(&g20) {
        return Err(CapacityError::OutOfRange(format!(
            "({g10}, {g20}) outside the unit square"
        )));
    }
    if g10 <= 0.5 && g20 <= 0.5 {
        let g = QutritParams::new(g10, 0.0, g20)?;
        let (value, argmax, evals) = diagonal_max(&g, resolution);
        Ok(CapacityResult {
            value,
            method: CapacityMethod::DiagonalOptimization,
            argmax: Some(argmax),
            optimizer_evals: evals,
            upper: None,
        })
    } else if g10 >= 0.5 && g20 >= 0.5 {
        Ok(CapacityResult {
            value: 0.0,
            method: CapacityMethod::ZeroByAntidegradability,
            argmax: None,
            optimizer_evals: 0,
            upper: None,
        })
    } else {
        Ok(CapacityResult::closed_form(qubit_adc_capacity(
            g10.min(g20),
        )?))
    }
}

/// The effective-qubit objective on the `γ10 = 1` face: coherent information
/// of the diagonal input `(1-p)|0⟩⟨0| + p|2⟩⟨2|`.
fn face_gamma10_one_objective(g21: f64, g20: f64, p: f64) -> f64 {
    let s2 = 1.0 - g21 - g20;
    let out = [1.0 - (1.0 - g20) * p, g21 * p, s2 * p];
    let out_c = [1.0 - (g21 + g20) * p, g21 * p, g20 * p];
    entropy_of_probs(&out) - entropy_of_probs(&out_c)
}

/// Capacity on the `γ10 = 1` face.
///
/// On the `γ21 + γ20 = 1` edge the channel is unitarily a qubit ADC and the
/// value is `𝒬(1 - γ21)` (closed form). Elsewhere the maximization runs over
/// the `{|0⟩,|2⟩}` diagonal inputs; its value vanishes identically for
/// `γ20 ≥ (1 - γ21)/2`, which is returned as an exact zero.
pub fn edge_gamma10_one_capacity(g21: f64, g20: f64) -> Result<CapacityResult, CapacityError> {
    if !(0.0..=1.0).contains(&g21) || !(0.0..=1.0).contains(&g20) || g21 + g20 > 1.0 + 1e-12 {
        return Err(CapacityError::OutOfDomain(1.0, g21, g20));
    }
    if (g21 + g20 - 1.0).abs() <= 1e-12 {
        return Ok(CapacityResult::closed_form(qubit_adc_capacity(1.0 - g21)?));
    }
    if g20 >= (1.0 - g21) / 2.0 {
        return Ok(CapacityResult::closed_form(0.0));
    }
    // the effective qubit channel is degradable here, so the objective is
    // concave in p and golden section is exact
    let r = golden_section_max(|p| face_gamma10_one_objective(g21, g20, p), 0.0, 1.0, 1e-10);
    Ok(CapacityResult {
        value: r.value.max(0.0),
        method: CapacityMethod::DiagonalOptimization,
        argmax: Some(DiagonalInput {
            populations: vec![1.0 - r.x, 0.0, r.x],
        }),
        optimizer_evals: r.evals,
        upper: None,
    })
}

/// Entanglement-assisted capacities.
#[derive(Debug, Clone)]
pub struct EaCapacities {
    /// Entanglement-assisted classical capacity (bits per use).
    pub ce: f64,
    /// Entanglement-assisted quantum capacity, `C_E / 2`.
    pub qe: f64,
    pub argmax: DiagonalInput,
    pub optimizer_evals: u64,
}

/// Maximize the quantum mutual information over diagonal inputs.
///
/// Mutual information is concave in the input for every channel, so the
/// covariance argument applies without any degradability requirement and the
/// diagonal restriction is exact.
pub fn entanglement_assisted_capacity(
    g: &QutritParams,
    resolution: usize,
) -> Result<EaCapacities, CapacityError> {
    let objective = |p1: f64, p2: f64| {
        let p0 = (1.0 - p1 - p2).max(0.0);
        entropy_of_probs(&[p0, p1, p2]) + qutrit_diag_coh(g, p1, p2)
    };
    let r = simplex_grid_nelder_mead_max(objective, resolution);
    Ok(EaCapacities {
        ce: r.value.max(0.0),
        qe: r.value.max(0.0) / 2.0,
        argmax: DiagonalInput::from_p1p2(r.p[0], r.p[1]),
        optimizer_evals: r.evals,
    })
}

/// Quantum and private-classical capacity of a qutrit ReMAD channel.
#[derive(Debug, Clone)]
pub struct CapacityPair {
    pub q: CapacityResult,
    pub cp: CapacityResult,
    pub classification: ChannelClassification,
}

/// Largest `γ20` on the line `(γ10, γ21, ·)` that is still analytically
/// degradable; the membership set is an interval starting at 0.
fn degradable_sup_gamma20(g10: f64, g21: f64) -> Option<f64> {
    let member = |g20: f64| {
        QutritParams::new(g10, g21, g20)
            .ok()
            .and_then(|g| analytic_degrading_params(&g).ok().flatten())
            .is_some()
    };
    if !member(0.0) {
        return None;
    }
    let (mut lo, mut hi) = (0.0, 1.0 - g21);
    if member(hi) {
        return Some(hi);
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if member(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Compute `Q` and `C_p` for a qutrit ReMAD channel, dispatching on the
/// classification and the resolved planes:
///
/// - antidegradable: both vanish;
/// - degradable: the single-letter diagonal optimization, `Q = C_p`;
/// - `γ10 = 0` plane: constant 1 beyond `γ21 + γ20 ≥ 1/2`;
/// - `γ21 = 0` plane: symmetric mixed-quadrant closed form;
/// - `γ10 = 1` face: effective-qubit closed forms;
/// - otherwise Unknown: the diagonal lower bound bracketed by the
///   `γ20`-monotonicity upper bound from the nearest resolved
///   smaller-`γ20` point on the same line (data processing).
///
/// In every resolved regime `Q = C_p`.
pub fn capacity_dispatch(
    g: &QutritParams,
    resolution: usize,
    tol: &Tolerances,
) -> Result<CapacityPair, CapacityError> {
    let classification = classify_qutrit(g, tol)?;
    let b = tol.boundary;

    let q = if classification.antidegradable == Some(true) {
        CapacityResult {
            value: 0.0,
            method: CapacityMethod::ZeroByAntidegradability,
            argmax: None,
            optimizer_evals: 0,
            upper: None,
        }
    } else if classification.degradable == Some(true) {
        let (value, argmax, evals) = diagonal_max(g, resolution);
        CapacityResult {
            value,
            method: CapacityMethod::DiagonalOptimization,
            argmax: Some(argmax),
            optimizer_evals: evals,
            upper: None,
        }
    } else if g.g10 <= b {
        plane_gamma10_zero_capacity(g.g21, g.g20, resolution)?
    } else if g.g21 <= b {
        plane_gamma21_zero_capacity(g.g10, g.g20, resolution)?
    } else if g.g10 >= 1.0 - b {
        edge_gamma10_one_capacity(g.g21, g.g20)?
    } else {
        // unresolved: report the diagonal lower bound and the monotonicity
        // upper bound inherited from the degradable stretch of the line
        let (value, argmax, evals) = diagonal_max(g, resolution);
        let upper = match degradable_sup_gamma20(g.g10, g.g21) {
            Some(t) if t < g.g20 => {
                let anchor = QutritParams::new(g.g10, g.g21, (t - 1e-9).max(0.0))?;
                Some(diagonal_max(&anchor, resolution).0)
            }
            _ => Some(3f64.log2()),
        };
        CapacityResult {
            value,
            method: CapacityMethod::Unknown,
            argmax: Some(argmax),
            optimizer_evals: evals,
            upper,
        }
    };

    // the paper proves Q = C_p in every regime it resolves; Unknown carries
    // the same bracket for both
    let cp = q.clone();
    Ok(CapacityPair {
        q,
        cp,
        classification,
    })
}

/// Convenience: verdicts where both capacities vanish.
pub fn is_zero_capacity(class: &ChannelClassification) -> bool {
    class.verdict == Verdict::Antidegradable
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default_profile()
    }

    fn qp(g10: f64, g21: f64, g20: f64) -> QutritParams {
        QutritParams::new(g10, g21, g20).unwrap()
    }

    const LOG2_3: f64 = 1.584962500721156;

    #[test]
    fn coherent_information_trivial_cases() {
        let t = tol();
        let id = TransitionMatrix::identity(3);
        let mixed = DensityMatrix::maximally_mixed(3);
        let ic = coherent_information(&id, &mixed, &t).unwrap();
        assert!((ic - LOG2_3).abs() < 1e-12);

        // |0⟩ is a fixed point and both outputs are pure
        let pure0 = DensityMatrix::pure_basis(3, 0);
        for g in [qp(0.3, 0.2, 0.2), qp(0.9, 0.1, 0.6), qp(0.0, 0.5, 0.5)] {
            let ic = coherent_information(&TransitionMatrix::qutrit(g), &pure0, &t).unwrap();
            assert!(ic.abs() < 1e-12);
        }

        // full decay: output pure, complementary is the identity
        let full = TransitionMatrix::qutrit(qp(1.0, 0.0, 1.0));
        let ic = coherent_information(&full, &mixed, &t).unwrap();
        assert!((ic + LOG2_3).abs() < 1e-12);
    }

    #[test]
    fn diagonal_path_matches_full_path_on_diagonal_inputs() {
        let t = tol();
        let g = TransitionMatrix::qutrit(qp(0.35, 0.2, 0.15));
        let p = [0.5, 0.3, 0.2];
        let rho = DensityMatrix::from_populations(&p, &t).unwrap();
        let full = coherent_information(&g, &rho, &t).unwrap();
        let fast = diagonal_coherent_information(&g, &p);
        assert!((full - fast).abs() < 1e-12);
        let fast_qutrit = qutrit_diag_coh(&qp(0.35, 0.2, 0.15), 0.3, 0.2);
        assert!((full - fast_qutrit).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_cases() {
        let t = tol();
        let id = TransitionMatrix::identity(3);
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!((mutual_information(&id, &mixed, &t).unwrap() - 2.0 * LOG2_3).abs() < 1e-12);

        let pure0 = DensityMatrix::pure_basis(3, 0);
        let g = TransitionMatrix::qutrit(qp(0.4, 0.3, 0.2));
        assert!(mutual_information(&g, &pure0, &t).unwrap().abs() < 1e-12);

        // full decay on the maximally mixed state: S + I_coh = log2(3) - log2(3)
        let full = TransitionMatrix::qutrit(qp(1.0, 0.0, 1.0));
        let mi = mutual_information(&full, &mixed, &t).unwrap();
        assert!(mi.abs() < 1e-12);
        assert!(mi >= -1e-12);
    }

    #[test]
    fn qubit_adc_endpoints() {
        assert!((qubit_adc_capacity(0.0).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(qubit_adc_capacity(0.5).unwrap(), 0.0);
        assert_eq!(qubit_adc_capacity(0.9).unwrap(), 0.0);
        assert!(qubit_adc_capacity(-0.1).is_err());
        assert!(qubit_adc_capacity(1.1).is_err());
    }

    #[test]
    fn diagonal_q1_identity_channel() {
        let r = diagonal_q1(&qp(0.0, 0.0, 0.0), 100, true, &tol()).unwrap();
        assert!((r.value - LOG2_3).abs() < 1e-6);
        assert_eq!(r.method, CapacityMethod::DiagonalOptimization);
        let p = r.argmax.unwrap();
        for &x in p.populations() {
            assert!((x - 1.0 / 3.0).abs() < 1e-4);
        }
    }

    #[test]
    fn diagonal_q1_strict_rejects_nondegradable() {
        let bs = TransitionMatrix::beamsplitter(0.4, 3)
            .unwrap()
            .to_qutrit_params()
            .unwrap();
        assert!(matches!(
            diagonal_q1(&bs, 50, true, &tol()),
            Err(CapacityError::NotDegradable)
        ));
        let r = diagonal_q1(&bs, 50, false, &tol()).unwrap();
        assert_eq!(r.method, CapacityMethod::Unknown);
    }

    #[test]
    fn plane_gamma10_zero_values() {
        let r = plane_gamma10_zero_capacity(0.0, 0.0, 100).unwrap();
        assert!((r.value - LOG2_3).abs() < 1e-6);

        let r = plane_gamma10_zero_capacity(0.3, 0.3, 100).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.method, CapacityMethod::ClosedForm);

        let r = plane_gamma10_zero_capacity(0.2, 0.1, 200).unwrap();
        assert_eq!(r.method, CapacityMethod::DiagonalOptimization);
        assert!(r.value >= 1.0 - 1e-9);

        assert!(plane_gamma10_zero_capacity(0.7, 0.5, 10).is_err());
    }

    #[test]
    fn plane_gamma21_zero_quadrants() {
        let r = plane_gamma21_zero_capacity(0.6, 0.7, 50).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.method, CapacityMethod::ZeroByAntidegradability);

        let a = plane_gamma21_zero_capacity(0.3, 0.8, 50).unwrap();
        let b = plane_gamma21_zero_capacity(0.8, 0.3, 50).unwrap();
        let expect = qubit_adc_capacity(0.3).unwrap();
        assert_eq!(a.value, expect);
        assert_eq!(b.value, expect);
        assert_eq!(a.method, CapacityMethod::ClosedForm);

        assert!(plane_gamma21_zero_capacity(1.2, 0.0, 10).is_err());
    }

    #[test]
    fn edge_gamma10_one_values() {
        // zero region of the face formula
        let r = edge_gamma10_one_capacity(0.2, 0.5).unwrap();
        assert_eq!(r.value, 0.0);

        let r = edge_gamma10_one_capacity(0.0, 0.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);

        // on the γ21 + γ20 = 1 edge the profile is the qubit ADC at 1 - γ21
        let r = edge_gamma10_one_capacity(0.8, 0.2).unwrap();
        let expect = qubit_adc_capacity(0.2).unwrap();
        assert!((r.value - expect).abs() < 1e-12);
        assert_eq!(r.method, CapacityMethod::ClosedForm);

        assert!(edge_gamma10_one_capacity(0.7, 0.5).is_err());
    }

    #[test]
    fn entanglement_assisted_identity() {
        let r = entanglement_assisted_capacity(&qp(0.0, 0.0, 0.0), 100).unwrap();
        assert!((r.ce - 2.0 * LOG2_3).abs() < 1e-6);
        assert!((r.qe - LOG2_3).abs() < 1e-6);
    }

    #[test]
    fn ea_dominates_coherent_information() {
        let g = qp(0.5, 0.5, 0.25);
        let ea = entanglement_assisted_capacity(&g, 100).unwrap();
        let (coh, _, _) = diagonal_max(&g, 100);
        assert!(ea.ce >= coh - 1e-9);
    }

    #[test]
    fn dispatch_examples() {
        let t = tol();
        let pair = capacity_dispatch(&qp(0.2, 0.1, 0.1), 150, &t).unwrap();
        assert_eq!(pair.q.method, CapacityMethod::DiagonalOptimization);
        assert!((pair.q.value - pair.cp.value).abs() < 1e-15);
        assert!(pair.q.value > 0.5);

        let bs = TransitionMatrix::beamsplitter(0.4, 3)
            .unwrap()
            .to_qutrit_params()
            .unwrap();
        let pair = capacity_dispatch(&bs, 100, &t).unwrap();
        assert_eq!(pair.q.method, CapacityMethod::ZeroByAntidegradability);
        assert_eq!(pair.q.value, 0.0);

        let pair = capacity_dispatch(&qp(0.3, 0.0, 0.8), 100, &t).unwrap();
        assert_eq!(pair.q.method, CapacityMethod::ClosedForm);
        assert!((pair.q.value - qubit_adc_capacity(0.3).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn dispatch_unknown_region_brackets() {
        let t = tol();
        // γ10 < 1/2 but γ20 too large for degradability: Unknown with a
        // monotonicity bracket from the degradable stretch of the line
        let pair = capacity_dispatch(&qp(0.2, 0.3, 0.55), 100, &t).unwrap();
        assert_eq!(pair.q.method, CapacityMethod::Unknown);
        let upper = pair.q.upper.unwrap();
        assert!(pair.q.value <= upper + 1e-9);
        assert!(upper < 3f64.log2());

        // γ10 > 1/2 with γ21 > 0 below the antidegradable stretch
        let pair = capacity_dispatch(&qp(0.8, 0.3, 0.1), 100, &t).unwrap();
        assert_eq!(pair.q.method, CapacityMethod::Unknown);
        assert!((pair.q.upper.unwrap() - 3f64.log2()).abs() < 1e-12);
    }
}
