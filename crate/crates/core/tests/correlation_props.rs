mod common;

use common::{random_direction, random_symmetric, rel_err, rng};
use gqfi::symplectic::rotation;
use gqfi::{
    apply_local_symplectic, apply_pure_loss, is_entangled, log_negativity, lqfi, make_sts,
    make_two_mode_symmetric, p2_closed, pt_min_symplectic_eigenvalue, q2_closed, q2_numeric,
    q2_sts, EntanglementThreshold, GeneratorSpec, Side, StsParams, KAPPA,
};
use proptest::prelude::*;

fn grid(lo: f64, step: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + step * i as f64)
}

#[test]
fn optimizer_matches_closed_form_on_sts_grid() {
    for n in grid(0.0, 0.5, 11) {
        for m in grid(0.0, 0.1, 11) {
            let p = StsParams::new(n, m).unwrap();
            let closed = q2_closed(p.symmetric_params().unwrap());
            let numeric = q2_numeric(&make_sts(p).unwrap(), 64, 1e-10).unwrap().value;
            if closed == 0.0 {
                assert_eq!(numeric, 0.0);
            } else {
                assert!(
                    rel_err(numeric, closed) <= 1e-6,
                    "N={n} m={m}: {numeric} vs {closed}"
                );
            }
        }
    }
}

#[test]
fn sts_shortcut_matches_state_pipeline() {
    for n in grid(0.0, 0.25, 21) {
        for m in grid(0.0, 0.05, 21) {
            let p = StsParams::new(n, m).unwrap();
            let from_state = make_sts(p).unwrap().symmetric_params(1e-12).unwrap();
            let (a, b) = (q2_sts(p), q2_closed(from_state));
            assert!(
                (a - b).abs() <= 1e-12 * a.max(1.0),
                "N={n} m={m}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn purity_form_of_sts_measure() {
    for mu in [1.0 / 9.0, 0.25, 0.5, 1.0] {
        for m in grid(0.0, 0.1, 11) {
            let expected = 2.0 * (2.0 * m).sinh().powi(2) / (4.0 * mu + 1.0);
            let got = q2_sts(StsParams::from_purity(mu, m).unwrap());
            assert!((got - expected).abs() <= 1e-12 * expected.max(1.0));
        }
    }
}

#[test]
fn measure_grows_with_squeezing_and_falls_with_purity() {
    for mu in [0.05, 1.0 / 9.0, 0.3, 0.7, 1.0] {
        let values: Vec<f64> = grid(0.0, 0.05, 21)
            .map(|m| q2_sts(StsParams::from_purity(mu, m).unwrap()))
            .collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]), "mu={mu}");
    }
    for m in [0.1, 0.3, 0.4, 0.5, 1.0] {
        let values: Vec<f64> = grid(0.05, 0.05, 20)
            .map(|mu| q2_sts(StsParams::from_purity(mu, m).unwrap()))
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "m={m}");
    }
    // spot check the optimizer along the same directions
    let at = |mu: f64, m: f64| {
        q2_numeric(
            &make_sts(StsParams::from_purity(mu, m).unwrap()).unwrap(),
            64,
            1e-10,
        )
        .unwrap()
        .value
    };
    assert!(at(1.0 / 9.0, 0.3) < at(1.0 / 9.0, 0.4) && at(1.0 / 9.0, 0.4) < at(1.0 / 9.0, 0.5));
    assert!(at(0.2, 0.4) > at(0.5, 0.4) && at(0.5, 0.4) > at(1.0, 0.4));
}

#[test]
fn loss_on_b_never_raises_the_measure() {
    for (n, m) in [(3.0, 0.4), (1.0, 0.6), (0.0, 0.5), (5.0, 1.0)] {
        let state = make_sts(StsParams::new(n, m).unwrap()).unwrap();
        let values: Vec<f64> = grid(0.0, 0.1, 11)
            .map(|eta| {
                let lossy = apply_pure_loss(&state, eta.min(1.0), Side::B).unwrap();
                q2_numeric(&lossy, 64, 1e-10).unwrap().value
            })
            .collect();
        assert_eq!(values[0], 0.0);
        assert!(
            values.windows(2).all(|w| w[0] <= w[1] + 1e-9),
            "N={n} m={m}: {values:?}"
        );
    }
}

#[test]
fn passive_rotations_leave_measure_unchanged() {
    let mut rng = rng(31);
    for _ in 0..100 {
        let p = random_symmetric(&mut rng);
        let state = make_two_mode_symmetric(p).unwrap();
        let tau = std::f64::consts::TAU;
        let rotated = apply_local_symplectic(
            &state,
            &rotation(rand::Rng::random_range(&mut rng, 0.0..tau)),
            &rotation(rand::Rng::random_range(&mut rng, 0.0..tau)),
        )
        .unwrap();
        let before = q2_numeric(&state, 64, 1e-10).unwrap().value;
        let after = q2_numeric(&rotated, 64, 1e-10).unwrap().value;
        assert!(
            (before - after).abs() <= 1e-6 * before.max(1.0),
            "{before} vs {after}"
        );
    }
}

#[test]
fn local_qfi_lies_between_extremes() {
    let mut rng = rng(32);
    for _ in 0..2_000 {
        let p = random_symmetric(&mut rng);
        let state = make_two_mode_symmetric(p).unwrap();
        let f = KAPPA
            * lqfi(
                &state,
                &GeneratorSpec::new(random_direction(&mut rng), Side::A),
            )
            .unwrap();
        let slack = 1e-10 * f.max(1.0);
        assert!(f >= q2_closed(p) - slack && f <= p2_closed(p) + slack);
    }
}

#[test]
fn separability_boundary_sits_at_half() {
    for n in grid(0.5, 0.5, 10) {
        let boundary_photons = n * n / (1.0 + 2.0 * n);
        let m = boundary_photons.sqrt().asinh();
        let state = make_sts(StsParams::new(n, m).unwrap()).unwrap();
        let nu = pt_min_symplectic_eigenvalue(&state).unwrap();
        assert!((nu - 0.5).abs() <= 1e-12, "N={n}: {nu}");
    }
}

#[test]
fn entanglement_onset_at_unit_threshold() {
    let onset = 0.5 * 1.5f64.ln();
    let state = |m: f64| make_sts(StsParams::from_purity(1.0 / 9.0, m).unwrap()).unwrap();
    assert!(!is_entangled(&state(onset - 1e-6), EntanglementThreshold::One).unwrap());
    assert!(is_entangled(&state(onset + 1e-6), EntanglementThreshold::One).unwrap());
    // log-negativity at the unit threshold crosses zero at the same point
    let nu = pt_min_symplectic_eigenvalue(&state(onset)).unwrap();
    assert!((nu - 1.0).abs() < 1e-12);
    assert!(log_negativity(&state(onset + 1e-3)).unwrap() > 0.0);
}

#[test]
fn sts_partial_transpose_spectrum_near_product() {
    for n in [0.0, 0.5, 1.990037944792998, 5.0] {
        for m in [1e-12, 1e-9, 3.6182560678719668e-6, 1e-4, 1e-2] {
            let p = StsParams::new(n, m).unwrap();
            let nu = pt_min_symplectic_eigenvalue(&make_sts(p).unwrap()).unwrap();
            let expected = 0.5 * p.thermal_scale() * (-2.0 * m).exp();
            assert!(
                (nu - expected).abs() <= 1e-12,
                "N={n} m={m}: {nu} vs {expected}"
            );
        }
    }
}

proptest! {
    #[test]
    fn sts_partial_transpose_spectrum(n in 0.0..5.0f64, m in 0.0..1.0f64) {
        let p = StsParams::new(n, m).unwrap();
        let nu = pt_min_symplectic_eigenvalue(&make_sts(p).unwrap()).unwrap();
        let expected = 0.5 * p.thermal_scale() * (-2.0 * m).exp();
        prop_assert!((nu - expected).abs() <= 1e-12 * p.thermal_scale().max(1.0));
    }
}
