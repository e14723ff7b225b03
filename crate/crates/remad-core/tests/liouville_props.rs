//! Liouville-representation properties: the superoperator against its
//! displayed qutrit form, inversion round trips, the closed-form inverse as
//! cross-check for the numeric one, Choi diagnostics, the degrading-map
//! identity, and classification consistency on a coarse grid.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use remad_core::channels::{remad_kraus, QutritParams, TransitionMatrix};
use remad_core::linalg::{max_abs_diff, ComplexMatrix};
use remad_core::liouville::{
    analytic_antidegrading_params, analytic_degrading_params, choi_of, classify_qutrit,
    invert_superoperator, is_cptp, qutrit_inverse_closed_form, remad_superoperator,
    superoperator_of, Superoperator, Verdict,
};
use remad_core::tolerance::Tolerances;

use common::{random_density, random_qutrit_params, rng};

fn tol() -> Tolerances {
    Tolerances::default_profile()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The displayed upper-triangular qutrit ReMAD superoperator in the
/// row-major operator basis (ρ00, ρ01, ..., ρ22).
fn displayed_superoperator(p: &QutritParams) -> ComplexMatrix {
    let (a, b, g) = (p.g10, p.g21, p.g20);
    let s1 = 1.0 - a;
    let s2 = 1.0 - b - g;
    let z = 0.0;
    let rows: [[f64; 9]; 9] = [
        [1.0, z, z, z, a, z, z, z, g],
        [z, s1.sqrt(), z, z, z, (a * b).sqrt(), z, z, z],
        [z, z, s2.sqrt(), z, z, z, z, z, z],
        [z, z, z, s1.sqrt(), z, z, z, (a * b).sqrt(), z],
        [z, z, z, z, s1, z, z, z, b],
        [z, z, z, z, z, (s1 * s2).sqrt(), z, z, z],
        [z, z, z, z, z, z, s2.sqrt(), z, z],
        [z, z, z, z, z, z, z, (s1 * s2).sqrt(), z],
        [z, z, z, z, z, z, z, z, s2],
    ];
    DMatrix::from_fn(9, 9, |r, cc| c(rows[r][cc]))
}

#[test]
fn superoperator_matches_displayed_matrix() {
    let mut r = rng(21);
    for _ in 0..50 {
        let p = random_qutrit_params(&mut r);
        let sop = remad_superoperator(&TransitionMatrix::qutrit(p));
        assert!(max_abs_diff(sop.matrix(), &displayed_superoperator(&p)) < 1e-14);
    }
}

#[test]
fn superoperator_application_agrees_with_kraus() {
    let t = tol();
    let mut r = rng(22);
    for _ in 0..50 {
        let p = random_qutrit_params(&mut r);
        let g = TransitionMatrix::qutrit(p);
        let k = remad_kraus(&g);
        let sop = superoperator_of(&k);
        let rho = random_density(&mut r, 3, &t);
        let a = sop.apply(rho.matrix()).unwrap();
        let b = remad_core::channels::apply_kraus_matrix(&k, rho.matrix());
        assert!(max_abs_diff(&a, &b) < 1e-12);
    }
}

#[test]
fn closed_form_inverse_equals_numeric_inverse() {
    let t = tol();
    let mut r = rng(23);
    let mut tried = 0;
    while tried < 200 {
        let p = random_qutrit_params(&mut r);
        // stay away from the singular boundaries
        if 1.0 - p.g10 < 1e-3 || 1.0 - p.g21 - p.g20 < 1e-3 {
            continue;
        }
        tried += 1;
        let g = TransitionMatrix::qutrit(p);
        let sop = remad_superoperator(&g);
        let inv = invert_superoperator(&sop, &t).unwrap();
        let rho = random_density(&mut r, 3, &t);
        let numeric = inv.apply(rho.matrix()).unwrap();
        let closed = qutrit_inverse_closed_form(&p, rho.matrix()).unwrap();
        assert!(max_abs_diff(&numeric, &closed) < 1e-10);

        // and the inverse actually inverts
        let out = sop.apply(rho.matrix()).unwrap();
        let back = qutrit_inverse_closed_form(&p, &out).unwrap();
        assert!(max_abs_diff(&back, rho.matrix()) < 1e-10);
    }
}

#[test]
fn degrading_identity_in_the_degradable_region() {
    let mut r = rng(24);
    let mut found = 0;
    while found < 100 {
        let p = random_qutrit_params(&mut r);
        let witness = match analytic_degrading_params(&p) {
            Ok(Some(w)) => w,
            _ => continue,
        };
        found += 1;
        let g = TransitionMatrix::qutrit(p);
        let m_phi = remad_superoperator(&g);
        let m_phi_t = remad_superoperator(&g.complementary());
        let m_d = remad_superoperator(&TransitionMatrix::qutrit(witness));
        let composed = m_d.matrix() * m_phi.matrix();
        assert!(max_abs_diff(&composed, m_phi_t.matrix()) < 1e-9);
    }
}

#[test]
fn antidegrading_identity_in_the_antidegradable_region() {
    let mut r = rng(25);
    let mut found = 0;
    while found < 100 {
        let p = random_qutrit_params(&mut r);
        let witness = match analytic_antidegrading_params(&p) {
            Ok(Some(w)) => w,
            _ => continue,
        };
        found += 1;
        let g = TransitionMatrix::qutrit(p);
        let m_phi = remad_superoperator(&g);
        let m_phi_t = remad_superoperator(&g.complementary());
        let m_a = remad_superoperator(&TransitionMatrix::qutrit(witness));
        let composed = m_a.matrix() * m_phi_t.matrix();
        assert!(max_abs_diff(&composed, m_phi.matrix()) < 1e-9);
    }
}

#[test]
fn choi_trace_and_tp_for_remad_maps() {
    let t = tol();
    let mut r = rng(26);
    for _ in 0..50 {
        let p = random_qutrit_params(&mut r);
        let sop = remad_superoperator(&TransitionMatrix::qutrit(p));
        let choi = choi_of(&sop);
        assert!((choi.matrix().trace().re - 3.0).abs() < 1e-10);
        let check = is_cptp(&sop, &t);
        assert!(check.tp_defect < 1e-10);
        assert!(check.min_choi_eigenvalue > -1e-10);
    }
}

#[test]
fn numeric_degrading_map_is_tp_even_when_not_cp() {
    // Φ̃ ∘ Φ⁻¹ always preserves traces; complete positivity is the actual
    // degradability test
    let t = tol();
    let mut r = rng(27);
    let mut seen_non_cp = 0;
    for _ in 0..100 {
        let p = random_qutrit_params(&mut r);
        if 1.0 - p.g10 < 1e-3 || 1.0 - p.g21 - p.g20 < 1e-3 {
            continue;
        }
        let g = TransitionMatrix::qutrit(p);
        let m_phi = remad_superoperator(&g);
        let m_phi_t = remad_superoperator(&g.complementary());
        let inv = invert_superoperator(&m_phi, &t).unwrap();
        let d = Superoperator::from_matrix(m_phi_t.matrix() * inv.matrix(), 3, 3);
        let check = is_cptp(&d, &t);
        assert!(check.tp_defect < 1e-8);
        if check.min_choi_eigenvalue < -1e-6 {
            seen_non_cp += 1;
        }
    }
    assert!(seen_non_cp > 0, "expected some non-degradable samples");
}

#[test]
fn classification_grid_analytic_equals_numeric() {
    // coarse version of the full acceptance grid
    let t = tol();
    let n = 12usize;
    let mut disagreements = 0;
    for i in 0..n {
        let g10 = (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            let g21 = (j as f64 + 0.5) / n as f64;
            for k in 0..n {
                let g20 = (k as f64 + 0.5) / n as f64;
                if g21 + g20 >= 1.0 {
                    continue;
                }
                let p = QutritParams::new(g10, g21, g20).unwrap();
                // classify_qutrit errors out exactly when analytic and
                // numeric verdicts disagree
                match classify_qutrit(&p, &t) {
                    Ok(_) => {}
                    Err(_) => disagreements += 1,
                }
            }
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn beamsplitter_line_classification() {
    let t = tol();
    for eta in [0.55, 0.6, 0.75, 0.9, 0.99] {
        let p = TransitionMatrix::beamsplitter(eta, 3)
            .unwrap()
            .to_qutrit_params()
            .unwrap();
        let cls = classify_qutrit(&p, &t).unwrap();
        assert_eq!(cls.verdict, Verdict::Degradable, "eta = {eta}");
    }
    for eta in [0.01, 0.1, 0.25, 0.4, 0.45] {
        let p = TransitionMatrix::beamsplitter(eta, 3)
            .unwrap()
            .to_qutrit_params()
            .unwrap();
        let cls = classify_qutrit(&p, &t).unwrap();
        assert_eq!(cls.verdict, Verdict::Antidegradable, "eta = {eta}");
    }
}

#[test]
fn plane_region_boundaries() {
    // on the γ10 = 0 plane the degradable region is exactly γ21 + γ20 ≤ 1/2
    for i in 0..=40 {
        let g21 = i as f64 / 40.0;
        for j in 0..=40 {
            let g20 = j as f64 / 40.0;
            if g21 + g20 >= 1.0 {
                continue;
            }
            let member = analytic_degrading_params(&QutritParams::new(0.0, g21, g20).unwrap())
                .unwrap()
                .is_some();
            assert_eq!(member, g21 + g20 <= 0.5 + 1e-12, "({g21}, {g20})");
        }
    }
    // on the γ21 = 0 plane: degradable iff both ≤ 1/2, antidegradable iff
    // both ≥ 1/2
    for i in 0..=40 {
        let g10 = i as f64 / 40.0;
        for j in 0..=40 {
            let g20 = j as f64 / 40.0;
            let p = QutritParams::new(g10, 0.0, g20).unwrap();
            if g10 < 1.0 && g20 < 1.0 {
                let deg = analytic_degrading_params(&p).unwrap().is_some();
                assert_eq!(deg, g10 <= 0.5 + 1e-12 && g20 <= 0.5 + 1e-12);
            }
            if g10 > 0.0 && g20 > 0.0 {
                let anti = analytic_antidegrading_params(&p).unwrap().is_some();
                assert_eq!(anti, g10 >= 0.5 - 1e-12 && g20 >= 0.5 - 1e-12);
            }
        }
    }
}

#[test]
fn verdicts_mutually_exclusive_unless_capacity_vanishes() {
    let t = tol();
    let mut r = rng(28);
    // generic points never carry both flags with robust margins
    for _ in 0..200 {
        let p = random_qutrit_params(&mut r);
        let cls = match classify_qutrit(&p, &t) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if cls.degradable == Some(true) && cls.antidegradable == Some(true) {
            let deg_margin = cls.degrading_choi_min_eig.unwrap_or(-1.0);
            let anti_margin = cls.antidegrading_choi_min_eig.unwrap_or(-1.0);
            assert!(
                deg_margin < 1e-6 || anti_margin < 1e-6 || {
                    // both robustly CPTP forces vanishing coherent information
                    let gamma = TransitionMatrix::qutrit(p);
                    let mut best = f64::NEG_INFINITY;
                    for i in 0..=60 {
                        for j in 0..=(60 - i) {
                            let pr = [
                                1.0 - (i + j) as f64 / 60.0,
                                i as f64 / 60.0,
                                j as f64 / 60.0,
                            ];
                            best = best.max(remad_core::capacities::diagonal_coherent_information(
                                &gamma, &pr,
                            ));
                        }
                    }
                    best < 1e-9
                }
            );
        }
    }
    // the self-complementary plane carries both verdict flags and zero capacity
    for g21 in [0.0, 0.2, 0.6] {
        let p = QutritParams::new(0.5, g21, (1.0 - g21) / 2.0).unwrap();
        let cls = classify_qutrit(&p, &t).unwrap();
        assert_eq!(cls.degradable, Some(true));
        assert_eq!(cls.antidegradable, Some(true));
        assert_eq!(cls.verdict, Verdict::Antidegradable);
    }
}

#[test]
fn numeric_path_generalizes_beyond_qutrits() {
    // the analytic region formulas are qutrit-only, but the numeric chain
    // (superoperator -> inversion -> Choi positivity) must work for any d:
    // the d = 4 beamsplitter splits at transmittance 1/2 like the qutrit one
    let t = tol();
    let check = |eta: f64| {
        let g = TransitionMatrix::beamsplitter(eta, 4).unwrap();
        let m_phi = remad_superoperator(&g);
        let m_phi_t = remad_superoperator(&g.complementary());
        let deg = {
            let inv = invert_superoperator(&m_phi, &t).unwrap();
            is_cptp(
                &Superoperator::from_matrix(m_phi_t.matrix() * inv.matrix(), 4, 4),
                &t,
            )
            .is_cptp(&t)
        };
        let anti = {
            let inv = invert_superoperator(&m_phi_t, &t).unwrap();
            is_cptp(
                &Superoperator::from_matrix(m_phi.matrix() * inv.matrix(), 4, 4),
                &t,
            )
            .is_cptp(&t)
        };
        (deg, anti)
    };
    for eta in [0.55, 0.75, 0.95] {
        assert_eq!(check(eta), (true, false), "eta = {eta}");
    }
    for eta in [0.05, 0.25, 0.45] {
        assert_eq!(check(eta), (false, true), "eta = {eta}");
    }
    // self-complementary at eta = 1/2: both compositions are the identity
    assert_eq!(check(0.5), (true, true));
}

#[test]
fn degrading_choi_of_beamsplitter_crosses_at_half() {
    let t = tol();
    // degrading candidate of the beamsplitter: CPTP above η = 1/2, not below
    let check = |eta: f64| {
        let g = TransitionMatrix::beamsplitter(eta, 3).unwrap();
        let m_phi = remad_superoperator(&g);
        let m_phi_t = remad_superoperator(&g.complementary());
        let inv = invert_superoperator(&m_phi, &t).unwrap();
        let d = Superoperator::from_matrix(m_phi_t.matrix() * inv.matrix(), 3, 3);
        is_cptp(&d, &t)
    };
    assert!(check(0.6).is_cptp(&t));
    assert!(!check(0.4).is_cptp(&t));
}
