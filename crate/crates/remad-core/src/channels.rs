//! MAD and ReMAD channel construction from transition matrices.
//!
//! A transition matrix `Γ` is lower triangular with entries `γ_{j,k}` giving
//! the probability for level `j` to decay into level `k ≤ j`; rows sum to 1,
//! so `γ_{j,j}` is the survival probability of level `j` and level 0 is a
//! fixed point. The ReMAD channel couples every equal-gap transition to the
//! same environment excitation and needs at most `d` Kraus operators
//! `K^(i) = Σ_l sqrt(γ_{i+l,l}) |l⟩⟨i+l|`; the MAD channel distinguishes every
//! transition and needs `1 + d(d-1)/2` of them.
//!
//! The complementary channel of a ReMAD map is, up to a level relabeling,
//! the ReMAD channel of the reordered matrix `γ̃_{j,k} = γ_{j,j-k}`.

use nalgebra::DVector;
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    hermiticity_deviation, max_abs_diff, partial_trace, re, ComplexMatrix, DensityMatrix,
    LinalgError, Subsystem,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parameters outside the qutrit domain: {0}")]
    OutOfDomain(String),
    #[error("row {row} of the transition matrix sums to {sum}, not 1")]
    RowNotNormalized { row: usize, sum: f64 },
    #[error("transition matrix row {row} has {got} entries, expected {expected}")]
    BadRowLength {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("Kraus completeness violated: max|ΣK†K - I| = {0:e}")]
    IncompleteKraus(f64),
    #[error("dimension mismatch: operator dimension {expected}, state dimension {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The qutrit parameter triple `(γ10, γ21, γ20)` restricted to the domain
/// `γ10, γ21, γ20 ∈ [0,1]` with `γ21 + γ20 ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritParams {
    pub g10: f64,
    pub g21: f64,
    pub g20: f64,
}

impl QutritParams {
    pub fn new(g10: f64, g21: f64, g20: f64) -> Result<Self, ChannelError> {
        let slack = 1e-12;
        let in_unit = |x: f64| (-slack..=1.0 + slack).contains(&x);
        if !in_unit(g10) || !in_unit(g21) || !in_unit(g20) {
            return Err(ChannelError::OutOfDomain(format!(
                "({g10}, {g21}, {g20}) has a component outside [0, 1]"
            )));
        }
        if g21 + g20 > 1.0 + slack {
            return Err(ChannelError::OutOfDomain(format!(
                "gamma21 + gamma20 = {} exceeds 1",
                g21 + g20
            )));
        }
        Ok(Self {
            g10: g10.clamp(0.0, 1.0),
            g21: g21.clamp(0.0, 1.0),
            g20: g20.clamp(0.0, 1.0),
        })
    }

    /// Survival probability of level 2, `1 - γ21 - γ20`, clamped at zero.
    pub fn survival2(&self) -> f64 {
        (1.0 - self.g21 - self.g20).max(0.0)
    }
}

/// Lower-triangular matrix of decay probabilities with unit row sums.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl TransitionMatrix {
    /// Validate and store rows; `rows[j]` holds `γ_{j,0} ... γ_{j,j}`.
    pub fn from_rows(rows: Vec<Vec<f64>>, tol: &Tolerances) -> Result<Self, ChannelError> {
        let dim = rows.len();
        if dim < 2 {
            return Err(ChannelError::OutOfRange(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != j + 1 {
                return Err(ChannelError::BadRowLength {
                    row: j,
                    expected: j + 1,
                    got: row.len(),
                });
            }
            for &g in row {
                if !(-tol.trace..=1.0 + tol.trace).contains(&g) {
                    return Err(ChannelError::OutOfRange(format!(
                        "gamma[{j}] entry {g} outside [0, 1]"
                    )));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > tol.trace {
                return Err(ChannelError::RowNotNormalized { row: j, sum });
            }
        }
        let mut rows = rows;
        rows[0][0] = 1.0;
        for row in rows.iter_mut() {
            for g in row.iter_mut() {
                *g = g.clamp(0.0, 1.0);
            }
        }
        Ok(Self { dim, rows })
    }

    /// Identity channel: every level survives with probability 1.
    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|j| {
                let mut row = vec![0.0; j + 1];
                row[j] = 1.0;
                row
            })
            .collect();
        Self { dim, rows }
    }

    /// Qutrit matrix with rows `(1), (γ10, 1-γ10), (γ20, γ21, 1-γ21-γ20)`.
    pub fn qutrit(p: QutritParams) -> Self {
        Self {
            dim: 3,
            rows: vec![
                vec![1.0],
                vec![p.g10, 1.0 - p.g10],
                vec![p.g20, p.g21, p.survival2()],
            ],
        }
    }

    /// Beamsplitter-type transition matrix at per-excitation transmittance
    /// `η`: `γ_{j,k}(η) = C(j,k) η^k (1-η)^{j-k}`, so each excitation
    /// survives with probability `η` and transmittances multiply under
    /// composition.
    pub fn beamsplitter(eta: f64, dim: usize) -> Result<Self, ChannelError> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(ChannelError::OutOfRange(format!(
                "transmittance {eta} outside [0, 1]"
            )));
        }
        if dim < 2 {
            return Err(ChannelError::OutOfRange(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        let rows = (0..dim)
            .map(|j| {
                (0..=j)
                    .map(|k| binomial(j, k) * eta.powi(k as i32) * (1.0 - eta).powi((j - k) as i32))
                    .collect()
            })
            .collect();
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `γ_{j,k}`; zero above the diagonal.
    pub fn gamma(&self, j: usize, k: usize) -> f64 {
        if k <= j {
            self.rows[j][k]
        } else {
            0.0
        }
    }

    /// Survival probability `γ_{j,j}`.
    pub fn survival(&self, j: usize) -> f64 {
        self.rows[j][j]
    }

    /// Transition matrix of the complementary channel: `γ̃_{j,k} = γ_{j,j-k}`.
    /// Applying it twice returns the original matrix exactly.
    pub fn complementary(&self) -> Self {
        let rows = (0..self.dim)
            .map(|j| (0..=j).map(|k| self.rows[j][j - k]).collect())
            .collect();
        Self {
            dim: self.dim,
            rows,
        }
    }

    /// Qutrit parameters, if this is a 3-level matrix.
    pub fn to_qutrit_params(&self) -> Option<QutritParams> {
        (self.dim == 3).then(|| QutritParams {
            g10: self.rows[1][0],
            g21: self.rows[2][1],
            g20: self.rows[2][0],
        })
    }

    /// Parse the text format: one line per row `j` holding the
    /// whitespace-separated values `γ_{j,0} ... γ_{j,j}`; `#` starts a
    /// comment; blank lines are ignored.
    pub fn from_text(text: &str, tol: &Tolerances) -> Result<Self, ChannelError> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for token in line.split_whitespace() {
                let value: f64 = token.parse().map_err(|_| ChannelError::Parse {
                    line: lineno + 1,
                    reason: format!("`{token}` is not a number"),
                })?;
                row.push(value);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(ChannelError::Parse {
                line: 0,
                reason: "no rows found".into(),
            });
        }
        Self::from_rows(rows, tol)
    }

    /// Serialize to the text format accepted by [`TransitionMatrix::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|g| format!("{g}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k.min(n));
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// An ordered Kraus set satisfying the completeness relation `Σ K†K = I`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    dim_in: usize,
    dim_out: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Validate completeness within `tol.trace` entrywise.
    pub fn new(ops: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self, ChannelError> {
        assert!(!ops.is_empty(), "a Kraus set needs at least one operator");
        let dim_out = ops[0].nrows();
        let dim_in = ops[0].ncols();
        let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
        for op in &ops {
            sum += op.adjoint() * op;
        }
        let defect = max_abs_diff(&sum, &ComplexMatrix::identity(dim_in, dim_in));
        if defect > tol.trace {
            return Err(ChannelError::IncompleteKraus(defect));
        }
        Ok(Self {
            dim_in,
            dim_out,
            ops,
        })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// Identity channel on `dim` levels.
    pub fn identity(dim: usize) -> Self {
        Self {
            dim_in: dim,
            dim_out: dim,
            ops: vec![ComplexMatrix::identity(dim, dim)],
        }
    }
}

/// ReMAD Kraus set: `K^(i) = Σ_{l=0}^{d-i-1} sqrt(γ_{i+l,l}) |l⟩⟨i+l|` for
/// `i = 0..d-1`, ordered by ascending `i`.
pub fn remad_kraus(g: &TransitionMatrix) -> KrausSet {
    let d = g.dim();
    let ops = (0..d)
        .map(|i| {
            let mut k = ComplexMatrix::zeros(d, d);
            for l in 0..d - i {
                k[(l, i + l)] = re(g.gamma(i + l, l).sqrt());
            }
            k
        })
        .collect();
    KrausSet {
        dim_in: d,
        dim_out: d,
        ops,
    }
}

/// MAD Kraus set: the diagonal survival operator `Σ_l sqrt(γ_{l,l}) |l⟩⟨l|`
/// followed by one rank-one operator `sqrt(γ_{j,j-k}) |j-k⟩⟨j|` per pair
/// `(j,k)` in lexicographic order, `1 + d(d-1)/2` operators in total.
pub fn mad_kraus(g: &TransitionMatrix) -> KrausSet {
    let d = g.dim();
    let mut ops = Vec::with_capacity(1 + d * (d - 1) / 2);
    let mut m0 = ComplexMatrix::zeros(d, d);
    for l in 0..d {
        m0[(l, l)] = re(g.survival(l).sqrt());
    }
    ops.push(m0);
    for j in 1..d {
        for k in 1..=j {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j - k, j)] = re(g.gamma(j, j - k).sqrt());
            ops.push(m);
        }
    }
    KrausSet {
        dim_in: d,
        dim_out: d,
        ops,
    }
}

/// Raw operator-sum application `Σ K m K†` on an arbitrary matrix.
pub fn apply_kraus_matrix(k: &KrausSet, m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(k.dim_out, k.dim_out);
    for op in &k.ops {
        out += op * m * op.adjoint();
    }
    out
}

/// Apply the channel to a state: `Φ(ρ) = Σ K ρ K†`.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix, ChannelError> {
    if rho.dim() != k.dim_in {
        return Err(ChannelError::DimensionMismatch {
            expected: k.dim_in,
            got: rho.dim(),
        });
    }
    Ok(DensityMatrix::from_valid(apply_kraus_matrix(
        k,
        rho.matrix(),
    )))
}

/// Which factor of the dilation to trace out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOut {
    /// Trace out the environment, producing the channel output.
    Environment,
    /// Trace out the system, producing the complementary-channel output.
    System,
}

/// The `d² x d²` Stinespring unitary acting on system ⊗ environment
/// (environment index fastest).
///
/// Columns for inputs `|j⟩_S |0⟩_E` are fixed by the transition matrix:
/// `U |j⟩|0⟩ = Σ_{k=0}^{j} sqrt(γ_{j,j-k}) |j-k⟩_S |k⟩_E`. The remaining
/// columns are completed deterministically by Gram-Schmidt over the canonical
/// basis; the channel never sees them.
pub fn stinespring_unitary(g: &TransitionMatrix) -> ComplexMatrix {
    let d = g.dim();
    let n = d * d;
    let mut u = ComplexMatrix::zeros(n, n);
    let mut fixed = vec![false; n];
    for j in 0..d {
        let col = j * d;
        for k in 0..=j {
            u[((j - k) * d + k, col)] = re(g.gamma(j, j - k).sqrt());
        }
        fixed[col] = true;
    }
    let mut basis: Vec<DVector<Complex64>> =
        (0..d).map(|j| u.column(j * d).clone_owned()).collect();
    let mut next_candidate = 0usize;
    for (col, _) in fixed.iter().enumerate().filter(|(_, f)| !**f) {
        // first canonical vector with a nonzero residual against the basis
        loop {
            let mut v = DVector::from_element(n, re(0.0));
            v[next_candidate] = re(1.0);
            next_candidate += 1;
            for b in &basis {
                let overlap = b.dotc(&v);
                v -= b * overlap;
            }
            let norm = v.norm();
            if norm > 1e-6 {
                let v = v / re(norm);
                u.set_column(col, &v);
                basis.push(v);
                break;
            }
        }
    }
    u
}

/// Evolve `ρ ⊗ |0⟩⟨0|_E` through the Stinespring unitary and trace out one
/// factor. Tracing out the environment reproduces the Kraus application of
/// the channel; tracing out the system reproduces the complementary channel
/// in the canonical environment basis (the level-relabeling isometry is the
/// identity there).
pub fn stinespring_apply(
    g: &TransitionMatrix,
    rho: &DensityMatrix,
    trace_out: TraceOut,
) -> Result<DensityMatrix, ChannelError> {
    let d = g.dim();
    if rho.dim() != d {
        return Err(ChannelError::DimensionMismatch {
            expected: d,
            got: rho.dim(),
        });
    }
    let u = stinespring_unitary(g);
    let mut env0 = ComplexMatrix::zeros(d, d);
    env0[(0, 0)] = re(1.0);
    let joint = crate::linalg::kron(rho.matrix(), &env0);
    let evolved = &u * joint * u.adjoint();
    let keep = match trace_out {
        TraceOut::Environment => Subsystem::First,
        TraceOut::System => Subsystem::Second,
    };
    let reduced = partial_trace(&evolved, (d, d), keep)?;
    debug_assert!(hermiticity_deviation(&reduced) < 1e-12);
    Ok(DensityMatrix::from_valid(reduced))
}

/// Diagonal phase unitary `U_S(θ) = Σ_j e^{-i j θ} |j⟩⟨j|` under which every
/// ReMAD channel is covariant.
pub fn covariance_unitary(theta: f64, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, -(r as f64) * theta)
        } else {
            re(0.0)
        }
    })
}
