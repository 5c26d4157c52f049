#![allow(dead_code)]

use gqfi::symplectic::{
    beam_splitter, local_symplectic, rotation, single_mode_squeezer, two_mode_squeezer,
};
use gqfi::{CovMatrix, GaussianState};
use nalgebra::{DMatrix, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_local(rng: &mut ChaCha8Rng, max_squeeze: f64) -> Matrix2<f64> {
    let tau = std::f64::consts::TAU;
    rotation(rng.random_range(0.0..tau))
        * single_mode_squeezer(rng.random_range(-max_squeeze..=max_squeeze))
        * rotation(rng.random_range(0.0..tau))
}

/// `S diag(ν₁, ν₂, ν₁, ν₂) Sᵀ` with `S` a product of elementary symplectics.
pub fn random_physical_cov(rng: &mut ChaCha8Rng) -> (CovMatrix, [f64; 2]) {
    random_cov_above(rng, 0.5)
}

/// Same as [`random_physical_cov`] with both symplectic eigenvalues in `[nu_lo, 4)`.
pub fn random_cov_above(rng: &mut ChaCha8Rng, nu_lo: f64) -> (CovMatrix, [f64; 2]) {
    let nu = [rng.random_range(nu_lo..4.0), rng.random_range(nu_lo..4.0)];
    let williamson = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        nu[0], nu[1], nu[0], nu[1],
    ]));
    let s = local_symplectic(&random_local(rng, 0.8), &random_local(rng, 0.8))
        * beam_splitter(rng.random_range(0.0..std::f64::consts::PI))
        * two_mode_squeezer(rng.random_range(-1.0..1.0))
        * local_symplectic(&random_local(rng, 0.5), &random_local(rng, 0.5));
    let cov = CovMatrix::new(&s * williamson * s.transpose()).unwrap();
    (cov, nu)
}

pub fn random_state(rng: &mut ChaCha8Rng) -> (GaussianState, [f64; 2]) {
    let (cov, nu) = random_physical_cov(rng);
    (GaussianState::centered(cov).unwrap(), nu)
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> gqfi::Direction {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    gqfi::Direction::from_angles(z.acos(), phi)
}

/// Symmetric-family parameters with `a ∈ [0.5, 5]` and `|d|` up to the
/// physical limit.
pub fn random_symmetric(rng: &mut ChaCha8Rng) -> gqfi::SymmetricCmParams {
    let a: f64 = rng.random_range(0.5..5.0);
    let d_max = (a * a - 0.25).max(0.0).sqrt();
    let d = rng.random_range(-1.0..=1.0) * d_max;
    gqfi::SymmetricCmParams::new(a, d).unwrap()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}
