//! Gaussian states used throughout: the symmetric two-mode family, squeezed
//! thermal states, and the local maps needed to probe invariance and
//! monotonicity of the correlation measure.

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::error::{Error, Result};
use crate::symplectic::{
    local_symplectic, partial_transpose, symplectic_eigenvalues, CovMatrix, NU_MIN,
};

/// One of the two parties of a bipartite two-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn mode_index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// First moment and covariance matrix of a physical Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    first_moment: DVector<f64>,
    cov: CovMatrix,
}

impl GaussianState {
    pub fn new(first_moment: DVector<f64>, cov: CovMatrix) -> Result<Self> {
        if first_moment.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                rows: first_moment.len(),
                cols: 1,
            });
        }
        if let Some(&bad) = first_moment.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "first moment",
                value: bad,
            });
        }
        cov.check_physical()?;
        Ok(Self { first_moment, cov })
    }

    /// Zero-mean state with the given covariance matrix.
    pub fn centered(cov: CovMatrix) -> Result<Self> {
        Self::new(DVector::zeros(cov.dim()), cov)
    }

    pub fn first_moment(&self) -> &DVector<f64> {
        &self.first_moment
    }

    pub fn cov(&self) -> &CovMatrix {
        &self.cov
    }

    pub fn n_modes(&self) -> usize {
        self.cov.n_modes()
    }

    /// `(a, d)` when the state belongs to the symmetric family
    /// `α = β = aI`, `γ = diag(−d, d)` (to relative `tol`).
    pub fn symmetric_params(&self, tol: f64) -> Option<SymmetricCmParams> {
        if self.n_modes() != 2 {
            return None;
        }
        let alpha = self.cov.mode_block(0, 0);
        let beta = self.cov.mode_block(1, 1);
        let gamma = self.cov.mode_block(0, 1);
        let a = alpha[(0, 0)];
        let d = gamma[(1, 1)];
        let expected = |m: Matrix2<f64>, e: Matrix2<f64>| (m - e).amax();
        let scale = tol * self.cov.entries().amax().max(1.0);
        let diag_a = Matrix2::identity() * a;
        let ok = expected(alpha, diag_a) <= scale
            && expected(beta, diag_a) <= scale
            && expected(gamma, Matrix2::new(-d, 0.0, 0.0, d)) <= scale;
        ok.then_some(SymmetricCmParams { a, d })
    }
}

/// Squeezed thermal state parameters: `N` thermal photons per mode and
/// two-mode squeezing `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StsParams {
    n_thermal: f64,
    m_squeeze: f64,
}

impl StsParams {
    pub fn new(n_thermal: f64, m_squeeze: f64) -> Result<Self> {
        if !(n_thermal.is_finite() && n_thermal >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "thermal photon number N",
                value: n_thermal,
            });
        }
        if !(m_squeeze.is_finite() && m_squeeze >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "squeezing m",
                value: m_squeeze,
            });
        }
        Ok(Self {
            n_thermal,
            m_squeeze,
        })
    }

    /// Parameters with purity `μ = (1+2N)⁻²`.
    pub fn from_purity(mu: f64, m_squeeze: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "purity mu",
                value: mu,
            });
        }
        Self::new(0.5 * (mu.sqrt().recip() - 1.0), m_squeeze)
    }

    pub fn n_thermal(&self) -> f64 {
        self.n_thermal
    }

    pub fn m_squeeze(&self) -> f64 {
        self.m_squeeze
    }

    /// `N_m = sinh² m`.
    pub fn squeeze_photons(&self) -> f64 {
        self.m_squeeze.sinh().powi(2)
    }

    /// `s = 1 + 2N`.
    pub fn thermal_scale(&self) -> f64 {
        1.0 + 2.0 * self.n_thermal
    }

    /// `a = N_m s + N + ½`, `d = −s √(N_m(N_m + 1))`.
    pub fn symmetric_params(&self) -> Result<SymmetricCmParams> {
        let nm = self.squeeze_photons();
        let s = self.thermal_scale();
        let a = nm * s + self.n_thermal + 0.5;
        let d = -s * (nm * (nm + 1.0)).sqrt();
        SymmetricCmParams::new(a, d)
    }
}

/// Symmetric two-mode covariance parameters: `α = β = aI`, `γ = diag(c, d)`
/// with `c = −d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricCmParams {
    a: f64,
    d: f64,
}

impl SymmetricCmParams {
    /// Requires `a² − d² ≥ NU_MIN²` and `a > 0`.
    pub fn new(a: f64, d: f64) -> Result<Self> {
        if !(a.is_finite() && d.is_finite()) || a <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "symmetric parameter a",
                value: a,
            });
        }
        let nu_sq = a * a - d * d;
        if nu_sq < NU_MIN * NU_MIN - crate::symplectic::PHYSICALITY_TOL {
            return Err(Error::NotPhysical(nu_sq.max(0.0).sqrt()));
        }
        Ok(Self { a, d })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `ν² = a² − d²`, the doubly degenerate symplectic eigenvalue squared.
    pub fn nu_squared(&self) -> f64 {
        self.a * self.a - self.d * self.d
    }
}

pub fn make_two_mode_symmetric(params: SymmetricCmParams) -> Result<GaussianState> {
    let alpha = Matrix2::identity() * params.a;
    let gamma = Matrix2::new(-params.d, 0.0, 0.0, params.d);
    let cov = CovMatrix::from_mode_blocks(&alpha, &alpha, &gamma)?;
    GaussianState::centered(cov)
}

/// Squeezed thermal state `STS(N, m)`.
pub fn make_sts(p: StsParams) -> Result<GaussianState> {
    make_two_mode_symmetric(p.symmetric_params()?)
}

/// `μ = 1 / (2^N √det Γ)`. For the symmetric family this is `1/(2ν)²`.
pub fn purity(state: &GaussianState) -> Result<f64> {
    let det = state.cov().entries().determinant();
    if det <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(1.0 / (2f64.powi(state.n_modes() as i32) * det.sqrt()))
}

/// Smallest symplectic eigenvalue `ν̃₋` of the partially transposed
/// covariance matrix.
pub fn pt_min_symplectic_eigenvalue(state: &GaussianState) -> Result<f64> {
    let pt = partial_transpose(state.cov())?;
    Ok(symplectic_eigenvalues(&pt)?.nu_minus)
}

/// `max[0, −ln ν̃₋]`.
pub fn log_negativity(state: &GaussianState) -> Result<f64> {
    let nu = pt_min_symplectic_eigenvalue(state)?;
    Ok((-nu.ln()).max(0.0))
}

/// Cut applied to `ν̃₋` when classifying a state as entangled.
///
/// `Half` matches the separability boundary `N_m = N²/(1+2N)` of the squeezed
/// thermal family; `One` matches the `ν̃₋ < 1` reading used by
/// [`log_negativity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntanglementThreshold {
    #[default]
    Half,
    One,
}

impl EntanglementThreshold {
    pub fn value(self) -> f64 {
        match self {
            EntanglementThreshold::Half => 0.5,
            EntanglementThreshold::One => 1.0,
        }
    }
}

impl TryFrom<f64> for EntanglementThreshold {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        if v == 0.5 {
            Ok(EntanglementThreshold::Half)
        } else if v == 1.0 {
            Ok(EntanglementThreshold::One)
        } else {
            Err(Error::InvalidThreshold(v))
        }
    }
}

pub fn is_entangled(state: &GaussianState, threshold: EntanglementThreshold) -> Result<bool> {
    Ok(pt_min_symplectic_eigenvalue(state)? < threshold.value())
}

/// Applies `S_A ⊕ S_B` to both moments. Each block must be symplectic
/// (`det S = 1`) to within `1e-10`.
pub fn apply_local_symplectic(
    state: &GaussianState,
    s_a: &Matrix2<f64>,
    s_b: &Matrix2<f64>,
) -> Result<GaussianState> {
    if state.n_modes() != 2 {
        return Err(Error::UnsupportedModes(state.n_modes()));
    }
    for s in [s_a, s_b] {
        let residual = (s.determinant() - 1.0).abs();
        if residual > 1e-10 {
            return Err(Error::NotSymplectic(residual));
        }
    }
    let s = local_symplectic(s_a, s_b);
    let cov = state.cov().transformed(&s)?;
    GaussianState::new(&s * state.first_moment(), cov)
}

/// Pure-loss channel of transmissivity `eta` on one mode, injecting vacuum
/// `NU_MIN · I`.
pub fn apply_pure_loss(state: &GaussianState, eta: f64, side: Side) -> Result<GaussianState> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter {
            name: "transmissivity eta",
            value: eta,
        });
    }
    if state.n_modes() != 2 {
        return Err(Error::UnsupportedModes(state.n_modes()));
    }
    let n = state.n_modes();
    let mode = side.mode_index();
    let idx = [mode, n + mode];
    let mut x = DMatrix::identity(2 * n, 2 * n);
    let mut y = DMatrix::zeros(2 * n, 2 * n);
    for &i in &idx {
        x[(i, i)] = eta.sqrt();
        y[(i, i)] = (1.0 - eta) * NU_MIN;
    }
    let cov = CovMatrix::new(&x * state.cov().entries() * &x + y)?;
    GaussianState::new(&x * state.first_moment(), cov)
}
