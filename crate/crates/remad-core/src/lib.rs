//! Resonant multilevel amplitude damping (ReMAD) channels.
//!
//! A ReMAD channel on a `d`-level system is fixed by a lower-triangular
//! transition matrix `Γ` of decay probabilities `γ_{j,k}` (level `j` decays to
//! level `k`) with unit row sums. The crate builds the channel and its
//! complementary map in Kraus, Stinespring, and Liouville (superoperator)
//! form, certifies degradability/antidegradability both analytically (qutrit
//! closed forms) and numerically (superoperator inversion plus Choi
//! positivity), and computes quantum, private-classical, and
//! entanglement-assisted capacities where they are known.
//!
//! Modules:
//! - [`linalg`]: dense complex linear algebra (Hermitian eigensystems,
//!   entropy, partial traces);
//! - [`channels`]: transition matrices, MAD/ReMAD Kraus sets, Stinespring
//!   dilation, covariance unitaries;
//! - [`liouville`]: vectorization, superoperators, Choi matrices, CPTP checks,
//!   and the qutrit degradability classifier;
//! - [`composition`]: the ReMAD composition algebra and its closure
//!   constraint;
//! - [`capacities`]: coherent information, diagonal-input optimization, and
//!   the closed-form capacity formulas;
//! - [`tolerance`]: the shared tolerance configuration.
//!
//! All operations are pure functions of their value inputs and are safe to
//! call concurrently.

pub mod capacities;
pub mod channels;
pub mod composition;
pub mod linalg;
pub mod liouville;
pub(crate) mod optimize;
pub mod tolerance;

pub use capacities::{CapacityMethod, CapacityPair, CapacityResult, DiagonalInput};
pub use channels::{KrausSet, QutritParams, TraceOut, TransitionMatrix};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum};
pub use liouville::{ChannelClassification, ChoiMatrix, Superoperator, Verdict};
pub use tolerance::Tolerances;
