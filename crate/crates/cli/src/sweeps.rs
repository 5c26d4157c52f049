//! Figure sweeps. Rows are computed in parallel and collected in sweep order.

use gqfi::{
    log_negativity, make_sts, q2_numeric_with, ratio_profile, MeasureOptions, Result, StsParams,
};
use rayon::prelude::*;

use crate::table::Table;

fn evenly_spaced(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect()
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(gqfi::Error::InvalidParameter {
            name: "steps",
            value: 0.0,
        });
    }
    Ok(())
}

/// Columns `m,q2,logneg` for `m ∈ [0, m_max]` at purity `mu`.
pub fn fig1a(mu: f64, m_max: f64, steps: usize, opts: &MeasureOptions) -> Result<Table> {
    check_steps(steps)?;
    if !(m_max >= 0.0 && m_max.is_finite()) {
        return Err(gqfi::Error::InvalidParameter {
            name: "m_max",
            value: m_max,
        });
    }
    StsParams::from_purity(mu, 0.0)?;
    let rows = evenly_spaced(0.0, m_max, steps)
        .into_par_iter()
        .map(|m| {
            let state = make_sts(StsParams::from_purity(mu, m)?)?;
            let q2 = q2_numeric_with(&state, opts)?.value;
            Ok(vec![m, q2, log_negativity(&state)?])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: vec!["m", "q2", "logneg"],
        rows,
    })
}

/// Long-form columns `m,mu,q2` with `mu ∈ (0, 1]` in `mu_steps` steps for each `m`.
pub fn fig1b(m_list: &[f64], mu_steps: usize, opts: &MeasureOptions) -> Result<Table> {
    check_steps(mu_steps)?;
    let points: Vec<(f64, f64)> = m_list
        .iter()
        .flat_map(|&m| (1..=mu_steps).map(move |i| (m, i as f64 / mu_steps as f64)))
        .collect();
    let rows = points
        .into_par_iter()
        .map(|(m, mu)| {
            let state = make_sts(StsParams::from_purity(mu, m)?)?;
            Ok(vec![m, mu, q2_numeric_with(&state, opts)?.value])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: vec!["m", "mu", "q2"],
        rows,
    })
}

/// Columns `theta,lqfi,tqfi,ratio` over `steps + 1` points of `θ ∈ [0, π]`.
pub fn fig3(n_thermal: f64, m: f64, phi: f64, steps: usize) -> Result<Table> {
    check_steps(steps)?;
    let state = make_sts(StsParams::new(n_thermal, m)?)?;
    let rows = ratio_profile(&state, phi, steps + 1)?
        .into_iter()
        .map(|p| vec![p.theta, p.lqfi_a, p.tqfi, p.ratio])
        .collect();
    Ok(Table {
        header: vec!["theta", "lqfi", "tqfi", "ratio"],
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> MeasureOptions {
        MeasureOptions::default()
    }

    #[test]
    fn fig1a_rows() {
        let t = fig1a(1.0 / 9.0, 1.0, 10, &opts()).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert_eq!(t.rows[0], vec![0.0, 0.0, 0.0]);
        let q2_at_04 = 2.0 * 0.8f64.sinh().powi(2) / (4.0 / 9.0 + 1.0);
        assert!((t.rows[4][1] - q2_at_04).abs() < 1e-9);
        assert!((t.rows[4][1] - 1.09209).abs() < 5e-6);
        // log-negativity switches on between m = 0.2 and m = 0.3
        assert_eq!(t.rows[2][2], 0.0);
        assert!(t.rows[3][2] > 0.0);
    }

    #[test]
    fn fig1b_rows() {
        let t = fig1b(&[0.0, 0.4], 9, &opts()).unwrap();
        assert_eq!(t.rows.len(), 18);
        assert!(t.rows[..9].iter().all(|r| r[2] == 0.0));
        let q = t.column("q2").unwrap();
        assert!((q[9] - 1.09209).abs() < 5e-6);
        assert!((q[17] - 0.315493).abs() < 5e-7);
        assert!(q[9..].windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn fig3_rows() {
        let t = fig3(3.0, 0.4, 0.0, 100).unwrap();
        assert_eq!(t.rows.len(), 101);
        assert!((t.rows[50][3] - 4.0).abs() < 1e-9);
        let t = fig3(1.0, 0.6, 0.0, 100).unwrap();
        assert!((t.rows[50][1] - 0.7887023942824911).abs() < 1e-9);
        assert!((t.rows[50][2] - 3.1548095771299645).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(fig1a(0.0, 1.0, 10, &opts()).is_err());
        assert!(fig1a(0.5, 1.0, 0, &opts()).is_err());
        assert!(fig1b(&[-0.1], 10, &opts()).is_err());
        assert!(fig3(-1.0, 0.4, 0.0, 10).is_err());
    }
}
