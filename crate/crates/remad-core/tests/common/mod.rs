//! Shared helpers for the integration tests: seeded random states and
//! transition matrices.
//!
//! Each test binary compiles this module independently and uses a subset.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use remad_core::channels::{QutritParams, TransitionMatrix};
use remad_core::linalg::{ComplexMatrix, DensityMatrix};
use remad_core::tolerance::Tolerances;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random transition matrix with rows drawn from a flat Dirichlet; the last
/// entry absorbs the rounding so rows sum to 1 exactly.
pub fn random_transition(rng: &mut ChaCha8Rng, dim: usize, tol: &Tolerances) -> TransitionMatrix {
    let rows = (0..dim)
        .map(|j| {
            if j == 0 {
                return vec![1.0];
            }
            let mut row: Vec<f64> = (0..=j)
                .map(|_| -(rng.gen_range(1e-12..1.0f64)).ln())
                .collect();
            let sum: f64 = row.iter().sum();
            for g in row.iter_mut() {
                *g /= sum;
            }
            let head: f64 = row[..j].iter().sum();
            row[j] = (1.0 - head).max(0.0);
            row
        })
        .collect();
    TransitionMatrix::from_rows(rows, tol).expect("random rows are valid")
}

/// Random point of the qutrit domain, uniform over the wedge.
pub fn random_qutrit_params(rng: &mut ChaCha8Rng) -> QutritParams {
    let g10 = rng.gen_range(0.0..1.0);
    let mut g21 = rng.gen_range(0.0..1.0);
    let mut g20 = rng.gen_range(0.0..1.0);
    if g21 + g20 > 1.0 {
        g21 = 1.0 - g21;
        g20 = 1.0 - g20;
    }
    QutritParams::new(g10, g21, g20).unwrap()
}

/// Ginibre-random density matrix: `G G† / Tr(G G†)`.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize, tol: &Tolerances) -> DensityMatrix {
    use rand::distributions::Distribution;
    let normal = rand_distr_standard_normal();
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(normal.sample(rng), normal.sample(rng))
    });
    let m = &g * g.adjoint();
    let trace = m.trace().re;
    let rho: ComplexMatrix = m * Complex64::new(1.0 / trace, 0.0);
    DensityMatrix::new(rho, tol).expect("Ginibre construction is a valid state")
}

// rand 0.8 ships StandardNormal through rand_distr only; a Box-Muller pair
// keeps the dev-dependency list short.
struct BoxMuller;

impl rand::distributions::Distribution<f64> for BoxMuller {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

fn rand_distr_standard_normal() -> BoxMuller {
    BoxMuller
}

/// Random diagonal state populations on the `d`-simplex.
pub fn random_populations(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..dim)
        .map(|_| -(rng.gen_range(1e-12..1.0f64)).ln())
        .collect();
    let sum: f64 = p.iter().sum();
    for x in p.iter_mut() {
        *x /= sum;
    }
    let head: f64 = p[..dim - 1].iter().sum();
    p[dim - 1] = (1.0 - head).max(0.0);
    p
}
