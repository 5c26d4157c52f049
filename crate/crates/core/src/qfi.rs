//! Local quadratic generators and the quantum Fisher information of the
//! evolution `Γ̇ = KΓ + ΓKᵀ` they drive.
//!
//! Two evaluators are provided:
//!
//! - [`qfi_general`] works for any state: `F² = ¼(½ Tr(Φ Γ̇) + 2 ḋᵀ Γ⁻¹ ḋ)` with `Φ`
//!   the pseudo-inverse solution of `Γ Φ Γᵀ − J Φ Jᵀ = Γ̇`.
//! - [`qfi_isotropic`] needs `(ΓJ)² = −ν² I` and evaluates
//!   `Tr((Γ̇ J)²) / (8(ν² + 1))` directly.
//!
//! [`qfi`] picks the isotropic shortcut when it applies.

use std::ops::{Add, Neg};

use nalgebra::{Cholesky, DMatrix, DVector, Matrix2, Vector3};

use crate::error::{Error, Result};
use crate::states::{GaussianState, Side};
use crate::symplectic::{mode_permutation, solve_phi, symplectic_form, CovMatrix};

/// Allowed deviation of a generator direction from unit norm.
pub const UNIT_TOL: f64 = 1e-12;

/// Relative residual allowed in `(ΓJ)² + ν² I = 0`.
pub const ISOTROPY_TOL: f64 = 1e-10;

/// Unit vector `m̄` selecting `H = m_x σ_x + m_y (−iσ_y) + m_z σ_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vector3<f64>);

impl Direction {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vector3::new(x, y, z);
        let norm = v.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitDirection(norm));
        }
        Ok(Self(v))
    }

    /// `m̄ = (cos θ, sin θ cos φ, sin θ sin φ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vector3::new(ct, st * cp, st * sp))
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.0.dot(&other.0)
    }

    /// `(θ, φ)` with `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub fn angles(&self) -> (f64, f64) {
        let theta = self.0.x.clamp(-1.0, 1.0).acos();
        let phi = self.0.z.atan2(self.0.y).rem_euclid(std::f64::consts::TAU);
        (theta, phi)
    }
}

impl Neg for Direction {
    type Output = Direction;

    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

/// A generator direction together with the mode it acts on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub direction: Direction,
    pub side: Side,
}

impl GeneratorSpec {
    pub fn new(direction: Direction, side: Side) -> Self {
        Self { direction, side }
    }

    pub fn from_angles(theta: f64, phi: f64, side: Side) -> Self {
        Self::new(Direction::from_angles(theta, phi), side)
    }
}

pub fn sigma_x() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, 1.0, 0.0)
}

/// `−iσ_y`, the phase-rotation generator.
pub fn phase_rotation() -> Matrix2<f64> {
    Matrix2::new(0.0, -1.0, 1.0, 0.0)
}

pub fn sigma_z() -> Matrix2<f64> {
    Matrix2::new(1.0, 0.0, 0.0, -1.0)
}

/// `m_x σ_x + m_y (−iσ_y) + m_z σ_z` for arbitrary (not necessarily unit)
/// coefficients.
pub fn single_mode_block(m: &Vector3<f64>) -> Matrix2<f64> {
    sigma_x() * m.x + phase_rotation() * m.y + sigma_z() * m.z
}

/// Element `K` of the symplectic algebra; the evolution is `Γ̇ = KΓ + ΓKᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    matrix: DMatrix<f64>,
}

impl Generator {
    pub fn zero(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(2 * n_modes, 2 * n_modes),
        }
    }

    /// Places a `2×2` block (in `(x, p)` order) on mode `mode` of an
    /// `n_modes`-mode system.
    pub fn from_block(n_modes: usize, mode: usize, block: &Matrix2<f64>) -> Result<Self> {
        if mode >= n_modes {
            return Err(Error::UnsupportedModes(mode));
        }
        let mut matrix = DMatrix::zeros(2 * n_modes, 2 * n_modes);
        let idx = [mode, n_modes + mode];
        for r in 0..2 {
            for c in 0..2 {
                matrix[(idx[r], idx[c])] = block[(r, c)];
            }
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }
}

impl Add for &Generator {
    type Output = Generator;

    fn add(self, rhs: &Generator) -> Generator {
        Generator {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

/// `H_A = T (H_a ⊕ 0) T` or `H_B = T (0 ⊕ H_b) T` on two modes.
pub fn build_generator(spec: &GeneratorSpec) -> Generator {
    let block = single_mode_block(spec.direction.as_vector());
    let mut direct_sum = DMatrix::zeros(4, 4);
    let off = 2 * spec.side.mode_index();
    direct_sum.view_mut((off, off), (2, 2)).copy_from(&block);
    let t = mode_permutation(2).expect("two-mode permutation");
    Generator {
        matrix: &t * direct_sum * &t,
    }
}

/// `Γ̇ = KΓ + ΓKᵀ`, exactly symmetric.
pub fn gamma_dot(cov: &CovMatrix, k: &Generator) -> Result<DMatrix<f64>> {
    let (rows, cols) = k.matrix.shape();
    if rows != cov.dim() || cols != cov.dim() {
        return Err(Error::DimensionMismatch {
            expected: cov.dim(),
            rows,
            cols,
        });
    }
    let kg = &k.matrix * cov.entries();
    Ok(&kg + kg.transpose())
}

/// `¼(½ Tr(Φ Γ̇) + 2 ḋᵀ Γ⁻¹ ḋ)`. `d_dot = None` means no displacement.
///
/// The solve operator has eigenvalues `ν_i ν_j ± 1`, so outside the isotropic
/// class the result can be negative when some product `ν_i ν_j` is below 1.
pub fn qfi_general(
    state: &GaussianState,
    k: &Generator,
    d_dot: Option<&DVector<f64>>,
) -> Result<f64> {
    let cov = state.cov();
    let gd = gamma_dot(cov, k)?;
    let phi = solve_phi(cov, &gd)?.phi;
    let mut total = 0.5 * phi.dot(&gd);
    if let Some(dd) = d_dot {
        if dd.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                rows: dd.len(),
                cols: 1,
            });
        }
        let chol = Cholesky::new(cov.entries().clone()).ok_or(Error::NotPositiveDefinite)?;
        total += 2.0 * dd.dot(&chol.solve(dd));
    }
    Ok(0.25 * total)
}

/// `ν` when `(ΓJ)² = −ν² I` holds to [`ISOTROPY_TOL`].
pub fn isotropic_nu(cov: &CovMatrix) -> Result<f64> {
    let gj = cov.entries() * symplectic_form(cov.n_modes());
    let sq = &gj * &gj;
    let nu_sq = -sq.trace() / cov.dim() as f64;
    let residual = (&sq + DMatrix::identity(cov.dim(), cov.dim()) * nu_sq).amax();
    if nu_sq <= 0.0 || residual > ISOTROPY_TOL * nu_sq.max(1.0) {
        return Err(Error::NotIsotropic(residual));
    }
    Ok(nu_sq.sqrt())
}

pub fn is_isotropic(cov: &CovMatrix) -> bool {
    isotropic_nu(cov).is_ok()
}

/// `Tr(Γ̇₁ J Γ̇₂ J)`.
pub fn trace_form(j: &DMatrix<f64>, gd1: &DMatrix<f64>, gd2: &DMatrix<f64>) -> f64 {
    (gd1 * j * gd2 * j).trace()
}

/// `Tr((Γ̇ J)²) / (8(ν² + 1))`.
pub fn qfi_isotropic(state: &GaussianState, k: &Generator) -> Result<f64> {
    let cov = state.cov();
    let nu = isotropic_nu(cov)?;
    let gd = gamma_dot(cov, k)?;
    let j = symplectic_form(cov.n_modes());
    Ok(trace_form(&j, &gd, &gd) / (8.0 * (nu * nu + 1.0)))
}

/// QFI for a generator without displacement, using the isotropic shortcut
/// when the state allows it.
pub fn qfi(state: &GaussianState, k: &Generator) -> Result<f64> {
    if is_isotropic(state.cov()) {
        qfi_isotropic(state, k)
    } else {
        qfi_general(state, k, None)
    }
}

/// Local QFI of the one-sided generator named by `spec`.
pub fn lqfi(state: &GaussianState, spec: &GeneratorSpec) -> Result<f64> {
    if state.n_modes() != 2 {
        return Err(Error::UnsupportedModes(state.n_modes()));
    }
    qfi(state, &build_generator(spec))
}
