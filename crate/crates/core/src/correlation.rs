//! The QFI-based correlation measure `Q²_A` (minimum local QFI over unit
//! generators on mode A) and its counterpart `P²_A` (maximum).
//!
//! Both are reported in the normalization of the closed forms
//! `Q²_A = 2 min[d², 2a² − d²] / (1 + a² − d²)` and
//! `P²_A = 2 max[d², 2a² − d²] / (1 + a² − d²)`, which is [`KAPPA`] times the
//! extremal local QFI returned by [`crate::qfi::lqfi`].

use crate::error::{Error, Result};
use crate::qfi::{lqfi, Direction, GeneratorSpec};
use crate::search::{SphereOptimum, SphereSearch};
use crate::states::{
    log_negativity, pt_min_symplectic_eigenvalue, purity, GaussianState, Side, StsParams,
    SymmetricCmParams,
};

/// Ratio between the reported measure and the extremal local QFI.
pub const KAPPA: f64 = 4.0;

/// Minimum values below this, relative to the `σ_x` local QFI (floored at 1),
/// count as a flat zero.
const DEGENERATE_TOL: f64 = 1e-14;

/// `2 min[d², 2a² − d²] / (1 + a² − d²)`.
pub fn q2_closed(params: SymmetricCmParams) -> f64 {
    let (a2, d2) = (params.a().powi(2), params.d().powi(2));
    2.0 * d2.min(2.0 * a2 - d2) / (1.0 + params.nu_squared())
}

/// `2 max[d², 2a² − d²] / (1 + a² − d²)`.
pub fn p2_closed(params: SymmetricCmParams) -> f64 {
    let (a2, d2) = (params.a().powi(2), params.d().powi(2));
    2.0 * d2.max(2.0 * a2 - d2) / (1.0 + params.nu_squared())
}

/// `2 (1+2N)² sinh²(2m) / (4 + (1+2N)²)`.
pub fn q2_sts(p: StsParams) -> f64 {
    let s2 = p.thermal_scale().powi(2);
    2.0 * s2 * (2.0 * p.m_squeeze()).sinh().powi(2) / (4.0 + s2)
}

/// Settings for the numerical extremization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureOptions {
    pub search: SphereSearch,
    /// Multiplier applied to the extremal local QFI.
    pub kappa: f64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self {
            search: SphereSearch::default(),
            kappa: KAPPA,
        }
    }
}

impl MeasureOptions {
    pub fn with_grid(grid_steps: usize, refine_tol: f64) -> Self {
        Self {
            search: SphereSearch {
                grid_steps,
                refine_tol,
                ..SphereSearch::default()
            },
            ..Self::default()
        }
    }
}

/// Extremal value of the measure and the generator direction attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub direction: Direction,
}

fn local_objective(state: &GaussianState) -> impl Fn(f64, f64) -> Result<f64> + Sync + '_ {
    move |theta, phi| lqfi(state, &GeneratorSpec::from_angles(theta, phi, Side::A))
}

fn check_two_mode(state: &GaussianState) -> Result<()> {
    if state.n_modes() != 2 {
        return Err(Error::UnsupportedModes(state.n_modes()));
    }
    Ok(())
}

/// `κ · min_{|m̄|=1} F²(ρ, H_A(m̄))`, found by grid scan and refinement.
pub fn q2_numeric(state: &GaussianState, grid_steps: usize, refine_tol: f64) -> Result<Extremum> {
    q2_numeric_with(state, &MeasureOptions::with_grid(grid_steps, refine_tol))
}

pub fn q2_numeric_with(state: &GaussianState, opts: &MeasureOptions) -> Result<Extremum> {
    check_two_mode(state)?;
    let SphereOptimum {
        value, direction, ..
    } = opts.search.minimize(local_objective(state))?;
    let squeeze_dir = Direction::new(1.0, 0.0, 0.0)?;
    let scale = lqfi(state, &GeneratorSpec::new(squeeze_dir, Side::A))?
        .abs()
        .max(1.0);
    // flat zero minimum: report exactly 0 along the phase-rotation direction
    if value.abs() <= DEGENERATE_TOL * scale {
        return Ok(Extremum {
            value: 0.0,
            direction: Direction::new(0.0, 1.0, 0.0)?,
        });
    }
    Ok(Extremum {
        value: opts.kappa * value,
        direction,
    })
}

/// `κ · max_{|m̄|=1} F²(ρ, H_A(m̄))`.
pub fn p2_numeric(state: &GaussianState, grid_steps: usize, refine_tol: f64) -> Result<Extremum> {
    p2_numeric_with(state, &MeasureOptions::with_grid(grid_steps, refine_tol))
}

pub fn p2_numeric_with(state: &GaussianState, opts: &MeasureOptions) -> Result<Extremum> {
    check_two_mode(state)?;
    let opt = opts.search.maximize(local_objective(state))?;
    Ok(Extremum {
        value: opts.kappa * opt.value,
        direction: opt.direction,
    })
}

/// Correlation and entanglement diagnostics of one two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub q2: f64,
    pub p2: f64,
    pub argmin_direction: Direction,
    pub log_neg: f64,
    pub nu_tilde: f64,
    pub purity: f64,
    /// `1/√P²_A`.
    pub qcr_low: f64,
    /// `1/√Q²_A`; infinite when `Q²_A = 0`.
    pub qcr_high: f64,
}

pub fn correlation_report(state: &GaussianState) -> Result<CorrelationReport> {
    correlation_report_with(state, &MeasureOptions::default())
}

pub fn correlation_report_with(
    state: &GaussianState,
    opts: &MeasureOptions,
) -> Result<CorrelationReport> {
    let q = q2_numeric_with(state, opts)?;
    let p = p2_numeric_with(state, opts)?;
    let (qcr_low, qcr_high) = qcr_bounds(q.value, p.value);
    Ok(CorrelationReport {
        q2: q.value,
        p2: p.value,
        argmin_direction: q.direction,
        log_neg: log_negativity(state)?,
        nu_tilde: pt_min_symplectic_eigenvalue(state)?,
        purity: purity(state)?,
        qcr_low,
        qcr_high,
    })
}

/// `(1/√P², 1/√Q²)`; the upper end is `+∞` when `Q² ≤ 0`.
pub fn qcr_bounds(q2: f64, p2: f64) -> (f64, f64) {
    let inv_sqrt = |v: f64| {
        if v > 0.0 {
            v.sqrt().recip()
        } else {
            f64::INFINITY
        }
    };
    (inv_sqrt(p2), inv_sqrt(q2))
}
