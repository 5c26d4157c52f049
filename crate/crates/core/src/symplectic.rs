//! Phase-space linear algebra: symplectic form, mode reordering, invariants,
//! symplectic eigenvalues, partial transposition, and the pseudo-inverse solve
//! of `Γ Φ Γᵀ − J Φ Jᵀ = Γ̇`.

use nalgebra::{Cholesky, DMatrix, DVector, Matrix2, SymmetricEigen};

use crate::error::{Error, Result};

/// Smallest admissible symplectic eigenvalue. The vacuum is `I/2` in the
/// convention used throughout the crate.
pub const NU_MIN: f64 = 0.5;

/// Slack on physicality checks.
pub const PHYSICALITY_TOL: f64 = 1e-12;

/// Relative asymmetry tolerated when building a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues below `PINV_RTOL * max|λ|` in magnitude are dropped by [`solve_phi`].
pub const PINV_RTOL: f64 = 1e-12;

// Real parts of the eigenvalues of JΓ above this (relative) bound mean the
// input is not positive definite.
const SPECTRUM_IMAG_TOL: f64 = 1e-10;

/// Covariance matrix of an `N`-mode Gaussian state in quadrature ordering.
///
/// Construction only enforces shape and symmetry: a partially transposed
/// covariance matrix is a valid `CovMatrix` but need not be physical. Use
/// [`CovMatrix::check_physical`] for the physicality test.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
}

impl CovMatrix {
    /// Wraps a `2N×2N` real symmetric matrix. The stored matrix is the exact
    /// symmetric part of the input.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::BadShape { rows, cols });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "covariance entry",
                value: f64::NAN,
            });
        }
        let asym = asymmetry(&entries);
        if asym > SYMMETRY_TOL * entries.amax().max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
        let entries = (&entries + entries.transpose()) * 0.5;
        Ok(Self {
            n_modes: rows / 2,
            entries,
        })
    }

    /// `ν·I` on `n_modes` modes (thermal product state with every symplectic
    /// eigenvalue equal to `ν`).
    pub fn scaled_identity(n_modes: usize, nu: f64) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::UnsupportedModes(0));
        }
        Self::new(DMatrix::identity(2 * n_modes, 2 * n_modes) * nu)
    }

    /// Two-mode covariance matrix from its mode blocks
    /// `[[α, γ], [γᵀ, β]]` given in mode ordering `(x₁, p₁, x₂, p₂)`.
    pub fn from_mode_blocks(
        alpha: &Matrix2<f64>,
        beta: &Matrix2<f64>,
        gamma: &Matrix2<f64>,
    ) -> Result<Self> {
        let mut block = DMatrix::zeros(4, 4);
        block.view_mut((0, 0), (2, 2)).copy_from(alpha);
        block.view_mut((2, 2), (2, 2)).copy_from(beta);
        block.view_mut((0, 2), (2, 2)).copy_from(gamma);
        block.view_mut((2, 0), (2, 2)).copy_from(&gamma.transpose());
        let t = mode_permutation(2)?;
        Self::new(&t * block * &t)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    /// The same matrix in mode ordering `(x₁, p₁, x₂, p₂)`. Two modes only.
    pub fn to_mode_ordering(&self) -> Result<DMatrix<f64>> {
        let t = mode_permutation(self.n_modes)?;
        Ok(&t * &self.entries * &t)
    }

    /// The `2×2` block of mode `row` against mode `col`, in `(x, p)` order.
    pub fn mode_block(&self, row: usize, col: usize) -> Matrix2<f64> {
        let n = self.n_modes;
        Matrix2::new(
            self.entries[(row, col)],
            self.entries[(row, n + col)],
            self.entries[(n + row, col)],
            self.entries[(n + row, n + col)],
        )
    }

    /// `S Γ Sᵀ`.
    pub fn transformed(&self, s: &DMatrix<f64>) -> Result<Self> {
        check_square(s, self.dim())?;
        Self::new(s * &self.entries * s.transpose())
    }

    /// Symplectic eigenvalues in ascending order, computed as the moduli of
    /// the eigenvalues of `JΓ`. Works for any number of modes.
    pub fn symplectic_spectrum(&self) -> Result<Vec<f64>> {
        if Cholesky::new(self.entries.clone()).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let jg = symplectic_form(self.n_modes) * &self.entries;
        let eig = jg.complex_eigenvalues();
        let scale = self.entries.amax().max(1.0);
        let residual = eig.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
        if residual > SPECTRUM_IMAG_TOL * scale {
            return Err(Error::ComplexSpectrum(residual));
        }
        let mut moduli: Vec<f64> = eig.iter().map(|z| z.im.abs()).collect();
        moduli.sort_by(f64::total_cmp);
        // eigenvalues come in ±iν pairs
        Ok(moduli.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
    }

    /// Fails unless every symplectic eigenvalue is at least [`NU_MIN`]
    /// (up to [`PHYSICALITY_TOL`]).
    pub fn check_physical(&self) -> Result<()> {
        let spectrum = self.symplectic_spectrum()?;
        let smallest = spectrum[0];
        if smallest < NU_MIN - PHYSICALITY_TOL {
            return Err(Error::NotPhysical(smallest));
        }
        Ok(())
    }

    pub fn is_physical(&self) -> bool {
        self.check_physical().is_ok()
    }
}

/// `I₁ = det α`, `I₂ = det β`, `I₃ = det γ`, `I₄ = det Γ` and `Δ = I₁ + I₂ + 2I₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub delta: f64,
}

/// Both symplectic eigenvalues of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
}

/// `J = [[0, I_N], [−I_N, 0]]` in quadrature ordering.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let dim = 2 * n_modes;
    let mut j = DMatrix::zeros(dim, dim);
    for k in 0..n_modes {
        j[(k, n_modes + k)] = 1.0;
        j[(n_modes + k, k)] = -1.0;
    }
    j
}

/// Permutation `T` with `[T]_{ij} = δ_{j,2i−1} + δ_{j+4,2i}` (1-based), taking
/// mode ordering `(x₁, p₁, x₂, p₂)` to quadrature ordering `(x₁, x₂, p₁, p₂)`.
/// `T` is an involution, so the same matrix converts back.
pub fn mode_permutation(n_modes: usize) -> Result<DMatrix<f64>> {
    if n_modes != 2 {
        return Err(Error::UnsupportedModes(n_modes));
    }
    let dim = 2 * n_modes;
    Ok(DMatrix::from_fn(dim, dim, |r, c| {
        let (i, j) = (r + 1, c + 1);
        let hit = j == 2 * i - 1 || j + 4 == 2 * i;
        if hit {
            1.0
        } else {
            0.0
        }
    }))
}

pub fn symplectic_invariants(cov: &CovMatrix) -> Result<SymplecticInvariants> {
    if cov.n_modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            rows: cov.dim(),
            cols: cov.dim(),
        });
    }
    let alpha = cov.mode_block(0, 0);
    let beta = cov.mode_block(1, 1);
    let gamma = cov.mode_block(0, 1);
    let i1 = alpha.determinant();
    let i2 = beta.determinant();
    let i3 = gamma.determinant();
    let i4 = cov.entries().determinant();
    Ok(SymplecticInvariants {
        i1,
        i2,
        i3,
        i4,
        delta: i1 + i2 + 2.0 * i3,
    })
}

/// Two-mode symplectic eigenvalues from the invariants,
/// `ν±² = (Δ ± √(Δ² − 4I₄)) / 2`.
///
/// The discriminant is evaluated as `(I₁ − I₂)² + 4[(I₁ + I₂) I₃ + T]` with
/// `T = Tr(α ω γ ω β ω γᵀ ω)`, which equals `Δ² − 4I₄` but keeps full
/// precision when both terms are positive (partially transposed states).
/// Values within rounding error of zero are snapped to zero, so degenerate
/// spectra come out exactly degenerate.
pub fn symplectic_eigenvalues(cov: &CovMatrix) -> Result<SymplecticSpectrum> {
    let inv = symplectic_invariants(cov)?;
    let scale = inv.delta.abs().max(1.0).powi(2);
    let w = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    let (alpha, beta, gamma) = (
        cov.mode_block(0, 0),
        cov.mode_block(1, 1),
        cov.mode_block(0, 1),
    );
    let t = (alpha * w * gamma * w * beta * w * gamma.transpose() * w).trace();
    let mut disc = (inv.i1 - inv.i2).powi(2) + 4.0 * ((inv.i1 + inv.i2) * inv.i3 + t);

    let (a1, a2, a3) = (abs_det(&alpha), abs_det(&beta), abs_det(&gamma));
    let wa = w.abs();
    let t_abs =
        (alpha.abs() * wa * gamma.abs() * wa * beta.abs() * wa * gamma.transpose().abs() * wa)
            .trace();
    let rounding = 2.0 * (inv.i1 - inv.i2).abs() * (a1 + a2)
        + 4.0 * ((a1 + a2) * inv.i3.abs() + (inv.i1.abs() + inv.i2.abs()) * a3)
        + 4.0 * t_abs;
    if disc.abs() <= 64.0 * f64::EPSILON * rounding {
        disc = 0.0;
    }
    if disc < -1e-10 * scale {
        return Err(Error::NegativeDiscriminant(disc));
    }
    let nu_plus_sq = 0.5 * (inv.delta + disc.max(0.0).sqrt());
    if nu_plus_sq <= 0.0 || inv.i4 < -1e-10 * scale {
        return Err(Error::ComplexSpectrum(inv.i4.min(nu_plus_sq)));
    }
    // ν₊²ν₋² = I₄; avoids the cancellation in Δ − √(Δ² − 4I₄)
    let nu_minus_sq = (inv.i4 / nu_plus_sq).max(0.0);
    Ok(SymplecticSpectrum {
        nu_minus: nu_minus_sq.sqrt(),
        nu_plus: nu_plus_sq.sqrt(),
    })
}

/// `|m₀₀ m₁₁| + |m₀₁ m₁₀|`, the magnitude scale of a 2×2 determinant.
fn abs_det(m: &Matrix2<f64>) -> f64 {
    (m[(0, 0)] * m[(1, 1)]).abs() + (m[(0, 1)] * m[(1, 0)]).abs()
}

/// Time reversal of mode B (`p_B → −p_B`), which flips the sign of `I₃`.
pub fn partial_transpose(cov: &CovMatrix) -> Result<CovMatrix> {
    if cov.n_modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            rows: cov.dim(),
            cols: cov.dim(),
        });
    }
    let mut flip = DMatrix::identity(4, 4);
    flip[(3, 3)] = -1.0;
    cov.transformed(&flip)
}

/// Moore–Penrose solution of the superoperator equation.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSolution {
    pub phi: DMatrix<f64>,
    /// Effective rank of the superoperator on symmetric matrices.
    pub rank: usize,
    /// Dimension of the symmetric-matrix space, `d(d+1)/2`.
    pub dim: usize,
}

/// Solves `Γ Φ Γᵀ − J Φ Jᵀ = Γ̇` for symmetric `Φ` in the least-squares,
/// minimum-norm sense.
///
/// The superoperator is assembled on an orthonormal basis of symmetric
/// matrices (10-dimensional for two modes). It is self-adjoint under the
/// Frobenius product, so its matrix there is symmetric and the pseudo-inverse
/// comes from a symmetric eigendecomposition, with singular values `|λ|`.
pub fn solve_phi(cov: &CovMatrix, gamma_dot: &DMatrix<f64>) -> Result<PhiSolution> {
    let dim = cov.dim();
    check_square(gamma_dot, dim)?;
    let asym = asymmetry(gamma_dot);
    if asym > SYMMETRY_TOL * gamma_dot.amax().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    let gamma = cov.entries();
    let j = symplectic_form(cov.n_modes());
    let basis = symmetric_basis(dim);
    let sdim = basis.len();

    let mut op = DMatrix::zeros(sdim, sdim);
    for (k, b) in basis.iter().enumerate() {
        let image = gamma * b * gamma.transpose() - &j * b * j.transpose();
        op.set_column(k, &coordinates(&basis, &image));
    }
    let rhs = coordinates(&basis, gamma_dot);

    let op = (&op + op.transpose()) * 0.5;
    let eig = SymmetricEigen::new(op);
    let sigma_max = eig.eigenvalues.amax();
    let threshold = PINV_RTOL * sigma_max;
    let mut projected = eig.eigenvectors.transpose() * rhs;
    let mut rank = 0;
    for (c, &lambda) in projected.iter_mut().zip(eig.eigenvalues.iter()) {
        if lambda.abs() > threshold {
            *c /= lambda;
            rank += 1;
        } else {
            *c = 0.0;
        }
    }
    let x = &eig.eigenvectors * projected;
    let phi = basis
        .iter()
        .zip(x.iter())
        .fold(DMatrix::zeros(dim, dim), |acc, (b, &c)| acc + b * c);
    Ok(PhiSolution {
        phi,
        rank,
        dim: sdim,
    })
}

/// Applies `X ↦ Γ X Γᵀ − J X Jᵀ`.
pub fn phi_operator(cov: &CovMatrix, x: &DMatrix<f64>) -> DMatrix<f64> {
    let gamma = cov.entries();
    let j = symplectic_form(cov.n_modes());
    gamma * x * gamma.transpose() - &j * x * j.transpose()
}

/// Rotation `[[cos θ, −sin θ], [sin θ, cos θ]]` acting on `(x, p)` of one mode.
pub fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Single-mode squeezer `diag(e^r, e^{−r})`.
pub fn single_mode_squeezer(r: f64) -> Matrix2<f64> {
    Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp())
}

/// Two-mode squeezer in quadrature ordering. Applied to `(s/2)·I` it yields
/// the squeezed thermal state with squeezing `r`.
pub fn two_mode_squeezer(r: f64) -> DMatrix<f64> {
    let (ch, sh) = (r.cosh(), r.sinh());
    let mut s = DMatrix::zeros(4, 4);
    s[(0, 0)] = ch;
    s[(0, 1)] = sh;
    s[(1, 0)] = sh;
    s[(1, 1)] = ch;
    s[(2, 2)] = ch;
    s[(2, 3)] = -sh;
    s[(3, 2)] = -sh;
    s[(3, 3)] = ch;
    s
}

/// Beam splitter with mixing angle `theta`, quadrature ordering.
pub fn beam_splitter(theta: f64) -> DMatrix<f64> {
    let (sn, c) = theta.sin_cos();
    let mut s = DMatrix::zeros(4, 4);
    for off in [0, 2] {
        s[(off, off)] = c;
        s[(off, off + 1)] = sn;
        s[(off + 1, off)] = -sn;
        s[(off + 1, off + 1)] = c;
    }
    s
}

/// Embeds single-mode blocks `S_A ⊕ S_B` (each in `(x, p)` order) into a
/// two-mode quadrature-ordered matrix.
pub fn local_symplectic(s_a: &Matrix2<f64>, s_b: &Matrix2<f64>) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(4, 4);
    for (mode, block) in [(0usize, s_a), (1, s_b)] {
        let idx = [mode, 2 + mode];
        for r in 0..2 {
            for c in 0..2 {
                s[(idx[r], idx[c])] = block[(r, c)];
            }
        }
    }
    s
}

/// `max |Sᵀ J S − J|`.
pub fn symplectic_residual(s: &DMatrix<f64>) -> Result<f64> {
    let (rows, cols) = s.shape();
    if rows != cols || rows % 2 != 0 {
        return Err(Error::BadShape { rows, cols });
    }
    let j = symplectic_form(rows / 2);
    Ok((s.transpose() * &j * s - j).amax())
}

fn check_square(m: &DMatrix<f64>, expected: usize) -> Result<()> {
    let (rows, cols) = m.shape();
    if rows != expected || cols != expected {
        return Err(Error::DimensionMismatch {
            expected,
            rows,
            cols,
        });
    }
    Ok(())
}

fn asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

// Orthonormal (Frobenius) basis of d×d symmetric matrices: E_ii and
// (E_ij + E_ji)/√2 for i < j.
fn symmetric_basis(dim: usize) -> Vec<DMatrix<f64>> {
    let mut basis = Vec::with_capacity(dim * (dim + 1) / 2);
    for i in 0..dim {
        for j in i..dim {
            let mut b = DMatrix::zeros(dim, dim);
            if i == j {
                b[(i, i)] = 1.0;
            } else {
                b[(i, j)] = std::f64::consts::FRAC_1_SQRT_2;
                b[(j, i)] = std::f64::consts::FRAC_1_SQRT_2;
            }
            basis.push(b);
        }
    }
    basis
}

fn coordinates(basis: &[DMatrix<f64>], m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(m)))
}
