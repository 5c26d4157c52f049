//! Deterministic minimization over unit directions `m̄(θ, φ)`: a coarse
//! `(θ, φ)` grid followed by compass-search refinement.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qfi::Direction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSearch {
    /// Points per axis of the coarse grid: `θ ∈ [0, π]` inclusive,
    /// `φ ∈ [0, 2π)` exclusive.
    pub grid_steps: usize,
    /// Refinement stops once the step size falls below this.
    pub refine_tol: f64,
    /// Cap on refinement iterations.
    pub max_iter: usize,
}

impl Default for SphereSearch {
    fn default() -> Self {
        Self {
            grid_steps: 64,
            refine_tol: 1e-10,
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereOptimum {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
    pub direction: Direction,
    pub iterations: usize,
}

impl SphereSearch {
    fn validate(&self) -> Result<()> {
        if self.grid_steps < 16 {
            return Err(Error::InvalidParameter {
                name: "grid_steps",
                value: self.grid_steps as f64,
            });
        }
        if !(self.refine_tol > 0.0 && self.refine_tol.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "refine_tol",
                value: self.refine_tol,
            });
        }
        Ok(())
    }

    /// Minimizes `f(θ, φ)`. Grid ties go to the smaller `θ`, then the smaller `φ`.
    pub fn minimize<F>(&self, f: F) -> Result<SphereOptimum>
    where
        F: Fn(f64, f64) -> Result<f64> + Sync,
    {
        self.validate()?;
        let n = self.grid_steps;
        let d_theta = PI / (n - 1) as f64;
        let d_phi = TAU / n as f64;

        // values are collected in grid order, so the scan below is the same
        // whatever the thread count
        let values: Vec<Result<f64>> = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                f(i as f64 * d_theta, j as f64 * d_phi)
            })
            .collect();

        let mut best = (f64::INFINITY, 0.0, 0.0);
        for (idx, v) in values.into_iter().enumerate() {
            let v = v?;
            if v < best.0 {
                best = (v, (idx / n) as f64 * d_theta, (idx % n) as f64 * d_phi);
            }
        }

        let (mut value, mut theta, mut phi) = best;
        let mut step = d_theta.max(d_phi);
        let mut iterations = 0;
        while step >= self.refine_tol {
            if iterations >= self.max_iter {
                return Err(Error::NoConvergence(self.max_iter));
            }
            iterations += 1;
            let mut moved = None;
            for (dt, dp) in [(-step, 0.0), (step, 0.0), (0.0, -step), (0.0, step)] {
                let candidate = f(theta + dt, phi + dp)?;
                if candidate < moved.map_or(value, |(v, _, _)| v) {
                    moved = Some((candidate, theta + dt, phi + dp));
                }
            }
            match moved {
                Some((v, t, p)) => {
                    value = v;
                    theta = t;
                    phi = p;
                }
                None => step *= 0.5,
            }
        }

        let direction = Direction::from_angles(theta, phi);
        let (theta, phi) = direction.angles();
        Ok(SphereOptimum {
            value,
            theta,
            phi,
            direction,
            iterations,
        })
    }

    /// Maximizes `f(θ, φ)` with the same machinery.
    pub fn maximize<F>(&self, f: F) -> Result<SphereOptimum>
    where
        F: Fn(f64, f64) -> Result<f64> + Sync,
    {
        let mut opt = self.minimize(|t, p| f(t, p).map(|v| -v))?;
        opt.value = -opt.value;
        Ok(opt)
    }
}
