//! Two-party phase estimation: the total QFI of `H = H_A + H_B`, its split
//! into local terms plus an interference term, Schwarz bounds, and the
//! quantum Cramér–Rao interval set by `Q²_A` and `P²_A`.
//!
//! The interference term carries the same `1/(8(ν² + 1))` prefactor as the
//! isotropic QFI, so that `F²(H) = F²(H_A) + F²(H_B) + 2C` holds exactly.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::correlation::{p2_numeric_with, q2_numeric_with, qcr_bounds, MeasureOptions};
use crate::error::{Error, Result};
use crate::qfi::{
    build_generator, gamma_dot, isotropic_nu, lqfi, qfi, qfi_general, trace_form, Direction,
    GeneratorSpec,
};
use crate::states::{GaussianState, SymmetricCmParams};
use crate::symplectic::symplectic_form;

/// Slack on the Schwarz inequality `|C| ≤ F_A F_B`.
pub const SCHWARZ_SLACK: f64 = 1e-12;

/// One point of a `θ` sweep with the same direction on both modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetrologyPoint {
    pub theta: f64,
    pub phi: f64,
    pub lqfi_a: f64,
    pub lqfi_b: f64,
    pub tqfi: f64,
    pub interference: f64,
    /// `tqfi / lqfi_a`, or NaN when `lqfi_a` is exactly zero.
    pub ratio: f64,
}

fn check_opposite(spec_a: &GeneratorSpec, spec_b: &GeneratorSpec) -> Result<()> {
    if spec_a.side == spec_b.side {
        return Err(Error::SameSide(spec_a.side));
    }
    Ok(())
}

/// `Tr(Γ̇_A J Γ̇_B J)` without any prefactor.
pub fn raw_interference_trace(
    state: &GaussianState,
    spec_a: &GeneratorSpec,
    spec_b: &GeneratorSpec,
) -> Result<f64> {
    check_opposite(spec_a, spec_b)?;
    let cov = state.cov();
    let gd_a = gamma_dot(cov, &build_generator(spec_a))?;
    let gd_b = gamma_dot(cov, &build_generator(spec_b))?;
    Ok(trace_form(&symplectic_form(2), &gd_a, &gd_b))
}

/// Interference term `C(ρ, H_A, H_B)`.
///
/// Isotropic states use `Tr(Γ̇_A J Γ̇_B J) / (8(ν² + 1))`. Other states fall
/// back to `½(F²(H_A + H_B) − F²(H_A) − F²(H_B))` with the general evaluator.
pub fn interference_term(
    state: &GaussianState,
    spec_a: &GeneratorSpec,
    spec_b: &GeneratorSpec,
) -> Result<f64> {
    check_opposite(spec_a, spec_b)?;
    match isotropic_nu(state.cov()) {
        Ok(nu) => Ok(raw_interference_trace(state, spec_a, spec_b)? / (8.0 * (nu * nu + 1.0))),
        Err(_) => {
            let (ka, kb) = (build_generator(spec_a), build_generator(spec_b));
            let total = qfi_general(state, &(&ka + &kb), None)?;
            let fa = qfi_general(state, &ka, None)?;
            let fb = qfi_general(state, &kb, None)?;
            Ok(0.5 * (total - fa - fb))
        }
    }
}

/// `4(a_x b_x + a_y b_y − a_z b_z) d² / (8(ν² + 1))` on the symmetric family.
pub fn interference_closed(m_a: &Direction, m_b: &Direction, params: SymmetricCmParams) -> f64 {
    let overlap = m_a.x() * m_b.x() + m_a.y() * m_b.y() - m_a.z() * m_b.z();
    4.0 * overlap * params.d().powi(2) / (8.0 * (params.nu_squared() + 1.0))
}

/// QFI of the combined generator `H_A + H_B`.
pub fn total_qfi(
    state: &GaussianState,
    spec_a: &GeneratorSpec,
    spec_b: &GeneratorSpec,
) -> Result<f64> {
    check_opposite(spec_a, spec_b)?;
    let k = &build_generator(spec_a) + &build_generator(spec_b);
    qfi(state, &k)
}

/// `|C| ≤ F_A F_B` with slack [`SCHWARZ_SLACK`] (relative above unit scale).
pub fn schwarz_check(
    state: &GaussianState,
    spec_a: &GeneratorSpec,
    spec_b: &GeneratorSpec,
) -> Result<bool> {
    let c = interference_term(state, spec_a, spec_b)?;
    let bound = (lqfi(state, spec_a)? * lqfi(state, spec_b)?)
        .max(0.0)
        .sqrt();
    Ok(c.abs() <= bound + SCHWARZ_SLACK * bound.max(1.0))
}

/// Sweeps `θ` over `theta_grid` evenly spaced points of `[0, π]` at fixed `φ`,
/// with the same direction `m̄(θ, φ)` on both modes.
pub fn ratio_profile(
    state: &GaussianState,
    phi: f64,
    theta_grid: usize,
) -> Result<Vec<MetrologyPoint>> {
    if theta_grid < 2 {
        return Err(Error::InvalidParameter {
            name: "theta_grid",
            value: theta_grid as f64,
        });
    }
    let step = PI / (theta_grid - 1) as f64;
    (0..theta_grid)
        .into_par_iter()
        .map(|i| metrology_point(state, i as f64 * step, phi))
        .collect()
}

pub fn metrology_point(state: &GaussianState, theta: f64, phi: f64) -> Result<MetrologyPoint> {
    let spec_a = GeneratorSpec::from_angles(theta, phi, crate::states::Side::A);
    let spec_b = GeneratorSpec::from_angles(theta, phi, crate::states::Side::B);
    let lqfi_a = lqfi(state, &spec_a)?;
    let lqfi_b = lqfi(state, &spec_b)?;
    let tqfi = total_qfi(state, &spec_a, &spec_b)?;
    let interference = interference_term(state, &spec_a, &spec_b)?;
    debug_assert!(
        (tqfi - lqfi_a - lqfi_b - 2.0 * interference).abs() <= 1e-9 * (1.0 + tqfi.abs()),
        "decomposition identity violated at θ={theta}"
    );
    let ratio = if lqfi_a == 0.0 {
        f64::NAN
    } else {
        tqfi / lqfi_a
    };
    Ok(MetrologyPoint {
        theta,
        phi,
        lqfi_a,
        lqfi_b,
        tqfi,
        interference,
        ratio,
    })
}

/// `(1/√P²_A, 1/√Q²_A)`, the range the estimation error is confined to.
pub fn qcr_interval(state: &GaussianState) -> Result<(f64, f64)> {
    qcr_interval_with(state, &MeasureOptions::default())
}

pub fn qcr_interval_with(state: &GaussianState, opts: &MeasureOptions) -> Result<(f64, f64)> {
    let q = q2_numeric_with(state, opts)?;
    let p = p2_numeric_with(state, opts)?;
    Ok(qcr_bounds(q.value, p.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_sts, make_two_mode_symmetric, Side, StsParams};
    use std::f64::consts::FRAC_PI_2;

    const SEPARABLE_LQFI_Y: f64 = 0.36460263721013864;
    const SEPARABLE_LQFI_Z: f64 = 1.289130939096931;

    fn sts(n: f64, m: f64) -> GaussianState {
        make_sts(StsParams::new(n, m).unwrap()).unwrap()
    }

    fn spec(x: f64, y: f64, z: f64, side: Side) -> GeneratorSpec {
        GeneratorSpec::new(Direction::new(x, y, z).unwrap(), side)
    }

    #[test]
    fn interference_values_separable_state() {
        let st = sts(3.0, 0.4);
        let c = interference_term(
            &st,
            &spec(0.0, 1.0, 0.0, Side::A),
            &spec(0.0, 1.0, 0.0, Side::B),
        )
        .unwrap();
        assert!((c - SEPARABLE_LQFI_Y).abs() < 1e-12);
        let c = interference_term(
            &st,
            &spec(0.0, 0.0, 1.0, Side::A),
            &spec(0.0, 0.0, 1.0, Side::B),
        )
        .unwrap();
        assert!((c + SEPARABLE_LQFI_Y).abs() < 1e-12);
        let d2 = st.symmetric_params(1e-12).unwrap().d().powi(2);
        let raw = raw_interference_trace(
            &st,
            &spec(0.0, 1.0, 0.0, Side::A),
            &spec(0.0, 1.0, 0.0, Side::B),
        )
        .unwrap();
        assert!((raw - 4.0 * d2).abs() < 1e-10);
    }

    #[test]
    fn interference_of_product_state() {
        let st = sts(2.0, 0.0);
        for (t, p) in [(0.0, 0.0), (0.4, 1.0), (FRAC_PI_2, 0.0), (2.0, 5.0)] {
            let a = GeneratorSpec::from_angles(t, p, Side::A);
            let b = GeneratorSpec::from_angles(p, t, Side::B);
            assert_eq!(interference_term(&st, &a, &b).unwrap(), 0.0);
        }
    }

    #[test]
    fn closed_form_cases() {
        let params = StsParams::new(3.0, 0.4)
            .unwrap()
            .symmetric_params()
            .unwrap();
        let x = Direction::new(1.0, 0.0, 0.0).unwrap();
        let z = Direction::new(0.0, 0.0, 1.0).unwrap();
        assert!((interference_closed(&x, &x, params) - SEPARABLE_LQFI_Y).abs() < 1e-12);
        assert_eq!(interference_closed(&x, &z, params), 0.0);
        let st = sts(3.0, 0.4);
        let c = interference_term(
            &st,
            &spec(1.0, 0.0, 0.0, Side::A),
            &spec(0.0, 0.0, 1.0, Side::B),
        )
        .unwrap();
        assert!(c.abs() < 1e-12);
        let prod = crate::states::SymmetricCmParams::new(1.5, 0.0).unwrap();
        assert_eq!(interference_closed(&x, &x, prod), 0.0);
    }

    #[test]
    fn same_side_rejected() {
        let st = sts(1.0, 0.6);
        let a = spec(0.0, 1.0, 0.0, Side::A);
        assert_eq!(total_qfi(&st, &a, &a), Err(Error::SameSide(Side::A)));
        assert_eq!(
            interference_term(&st, &a, &a),
            Err(Error::SameSide(Side::A))
        );
    }

    #[test]
    fn total_qfi_values() {
        let st = sts(3.0, 0.4);
        let y = total_qfi(
            &st,
            &spec(0.0, 1.0, 0.0, Side::A),
            &spec(0.0, 1.0, 0.0, Side::B),
        )
        .unwrap();
        assert!((y - 4.0 * SEPARABLE_LQFI_Y).abs() < 1e-12);
        let z = total_qfi(
            &st,
            &spec(0.0, 0.0, 1.0, Side::A),
            &spec(0.0, 0.0, 1.0, Side::B),
        )
        .unwrap();
        assert!((z - (2.0 * SEPARABLE_LQFI_Z - 2.0 * SEPARABLE_LQFI_Y)).abs() < 1e-12);
        let prod = sts(3.0, 0.0);
        let (a, b) = (
            GeneratorSpec::from_angles(0.9, 0.3, Side::A),
            GeneratorSpec::from_angles(0.9, 0.3, Side::B),
        );
        let t = total_qfi(&prod, &a, &b).unwrap();
        assert!((t - 2.0 * lqfi(&prod, &a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn schwarz_equality_case() {
        let st = sts(3.0, 0.4);
        let (a, b) = (spec(0.0, 1.0, 0.0, Side::A), spec(0.0, 1.0, 0.0, Side::B));
        assert!(schwarz_check(&st, &a, &b).unwrap());
        let c = interference_term(&st, &a, &b).unwrap();
        let bound = (lqfi(&st, &a).unwrap() * lqfi(&st, &b).unwrap()).sqrt();
        assert!((c.abs() - bound).abs() < 1e-12);
        assert!(schwarz_check(&sts(1.0, 0.0), &a, &b).unwrap());
    }

    #[test]
    fn ratio_profile_separable_state() {
        let st = sts(3.0, 0.4);
        let profile = ratio_profile(&st, 0.0, 101).unwrap();
        assert_eq!(profile.len(), 101);
        let mid = &profile[50];
        assert!((mid.ratio - 4.0).abs() < 1e-9);
        let max = profile.iter().map(|p| p.ratio).fold(f64::MIN, f64::max);
        assert!((max - 4.0).abs() < 1e-9);
        let params = st.symmetric_params(1e-12).unwrap();
        let expected = 2.0 + 2.0 * crate::q2_closed(params) / crate::p2_closed(params);
        assert!((profile[0].ratio - expected).abs() < 1e-12);
        for p in &profile {
            assert!((p.tqfi - p.lqfi_a - p.lqfi_b - 2.0 * p.interference).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_profile_product_state() {
        let st = sts(3.0, 0.0);
        for p in ratio_profile(&st, 0.0, 21).unwrap() {
            assert!((p.ratio - 2.0).abs() < 1e-9, "{p:?}");
        }
        assert!(ratio_profile(&st, 0.0, 1).is_err());
    }

    #[test]
    fn ratio_sentinel() {
        let st = make_two_mode_symmetric(crate::states::SymmetricCmParams::new(2.0, 0.0).unwrap())
            .unwrap();
        let p = metrology_point(&st, FRAC_PI_2, 0.0).unwrap();
        if p.lqfi_a == 0.0 {
            assert!(p.ratio.is_nan());
        }
        let exact = GeneratorSpec::new(Direction::new(0.0, 1.0, 0.0).unwrap(), Side::A);
        assert_eq!(lqfi(&st, &exact).unwrap(), 0.0);
    }

    #[test]
    fn qcr_values() {
        let (lo, hi) = qcr_interval(&sts(3.0, 0.4)).unwrap();
        assert!((lo - 0.44038).abs() < 1e-5 && (hi - 0.82805).abs() < 1e-5);
        let (lo, hi) = qcr_interval(&sts(1.0, 0.6)).unwrap();
        assert!((lo - 0.41085728898854224).abs() < 1e-9);
        assert!((hi - 0.5630065205390712).abs() < 1e-9);
        let (lo, hi) = qcr_interval(&sts(1.0, 0.0)).unwrap();
        assert!(hi.is_infinite() && lo.is_finite());
    }
}
