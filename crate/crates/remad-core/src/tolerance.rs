//! Central tolerance configuration.
//!
//! Every numeric threshold used by validation, classification, and the CLI
//! lives here so that tests and callers share one source of truth.

/// Numeric tolerances shared across the crate.
///
/// All values are absolute unless stated otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Maximum admissible Hermiticity deviation `max|m_ij - conj(m_ji)|`.
    pub hermiticity: f64,
    /// Maximum admissible deviation of a density-matrix trace from 1.
    pub trace: f64,
    /// A Hermitian matrix counts as positive semidefinite when its minimum
    /// eigenvalue is at least `-psd`.
    pub psd: f64,
    /// Generic entrywise equality tolerance.
    pub equality: f64,
    /// A candidate map is completely positive when the minimum eigenvalue of
    /// its Choi matrix is at least `-cptp_eig`.
    pub cptp_eig: f64,
    /// A candidate map is trace preserving when the partial trace of its Choi
    /// matrix deviates from the identity by at most `cptp_tp` entrywise.
    pub cptp_tp: f64,
    /// Relative singular-value cutoff: inversion refuses when
    /// `sigma_min < singular_rel * sigma_max`.
    pub singular_rel: f64,
    /// Detection width for exact parameter boundaries such as `gamma10 = 1`.
    pub boundary: f64,
}

impl Tolerances {
    /// Default profile: safeguards sized an order of magnitude above the
    /// accumulated eigensolver error at the 9x9 superoperator scale.
    pub fn default_profile() -> Self {
        Self {
            hermiticity: 1e-9,
            trace: 1e-12,
            psd: 1e-10,
            equality: 1e-10,
            cptp_eig: 1e-9,
            cptp_tp: 1e-9,
            singular_rel: 1e-10,
            boundary: 1e-12,
        }
    }

    /// Strict profile: tightened validation thresholds for numerical-hygiene
    /// runs. The singular-value guard is left unchanged since the singular
    /// boundaries are genuinely rank deficient, not numerically marginal.
    pub fn strict() -> Self {
        Self {
            hermiticity: 1e-11,
            trace: 1e-13,
            psd: 1e-11,
            equality: 1e-12,
            cptp_eig: 1e-10,
            cptp_tp: 1e-10,
            singular_rel: 1e-10,
            boundary: 1e-12,
        }
    }

    /// Look up a named profile (`default` or `strict`).
    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default_profile()),
            "strict" => Some(Self::strict()),
            _ => None,
        }
    }

    /// Override a single field by name; returns false for unknown names.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        match key {
            "hermiticity" => self.hermiticity = value,
            "trace" => self.trace = value,
            "psd" => self.psd = value,
            "equality" => self.equality = value,
            "cptp_eig" => self.cptp_eig = value,
            "cptp_tp" => self.cptp_tp = value,
            "singular_rel" => self.singular_rel = value,
            "boundary" => self.boundary = value,
            _ => return false,
        }
        true
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::default_profile()
    }
}
