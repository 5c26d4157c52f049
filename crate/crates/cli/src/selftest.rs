//! Numerical self-checks run by `gqfi selftest`, one per acceptance criterion.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use gqfi::symplectic::rotation;
use gqfi::{
    apply_local_symplectic, apply_pure_loss, build_generator, interference_closed,
    interference_term, is_entangled, lqfi, make_sts, make_two_mode_symmetric,
    pt_min_symplectic_eigenvalue, q2_closed, q2_numeric_with, q2_sts, qfi_general, qfi_isotropic,
    ratio_profile, schwarz_check, Direction, EntanglementThreshold, GaussianState, GeneratorSpec,
    MeasureOptions, Side, StsParams, SymmetricCmParams,
};
use serde::Serialize;

use crate::sweeps;

pub const CHECK_COUNT: u8 = 12;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Worst measured deviation relative to its tolerance.
    pub delta: f64,
    pub tolerance: f64,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {:<40} delta={:.3e} tol={:.1e}{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.delta,
            self.tolerance,
            if self.failures.is_empty() {
                String::new()
            } else {
                format!("  ({})", self.failures.join("; "))
            }
        )
    }
}

#[derive(Default)]
struct Recorder {
    worst: Option<(f64, f64)>,
    failures: Vec<String>,
}

impl Recorder {
    fn within(&mut self, what: &str, delta: f64, tol: f64) {
        let score = |(d, t): (f64, f64)| if t > 0.0 { d / t } else { d };
        if self.worst.is_none_or(|w| score((delta, tol)) > score(w)) {
            self.worst = Some((delta, tol));
        }
        if delta.is_nan() || delta > tol {
            self.failures
                .push(format!("{what}: delta {delta:.3e} > {tol:.1e}"));
        }
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.within(what, (got - want).abs(), tol);
    }

    fn require(&mut self, what: &str, cond: bool) {
        if !cond {
            self.failures.push(what.to_string());
        }
    }

    fn finish(self, id: u8, name: &'static str) -> CheckResult {
        let (delta, tolerance) = self.worst.unwrap_or((0.0, 0.0));
        CheckResult {
            id,
            name,
            passed: self.failures.is_empty(),
            delta,
            tolerance,
            failures: self.failures,
        }
    }
}

const NAMES: [&str; CHECK_COUNT as usize] = [
    "anchor values, separable state",
    "anchor values, entangled state",
    "ratio four at theta = pi/2",
    "general vs isotropic QFI",
    "optimizer vs closed form, kappa oracle",
    "squeezed thermal shortcut identity",
    "separability boundary and onset",
    "interference closed form",
    "Schwarz bound",
    "monotonicity in m, mu and loss",
    "passive local rotation invariance",
    "deterministic CSV output",
];

fn sts(n: f64, m: f64) -> gqfi::Result<GaussianState> {
    make_sts(StsParams::new(n, m)?)
}

/// Additive golden-ratio sequence in `[0, 1)`, one stream per `offset`.
fn low_discrepancy(i: usize, offset: usize) -> f64 {
    const ALPHAS: [f64; 4] = [
        0.618_033_988_749_895,
        0.414_213_562_373_095,
        0.732_050_807_568_877,
        0.236_067_977_499_790,
    ];
    ((i + 1) as f64 * ALPHAS[offset % 4] + 0.5 * (offset / 4) as f64).fract()
}

fn direction_from(u: f64, v: f64) -> Direction {
    Direction::from_angles((2.0 * u - 1.0).clamp(-1.0, 1.0).acos(), TAU * v)
}

fn anchor_values(
    rec: &mut Recorder,
    opts: &MeasureOptions,
    (n, m): (f64, f64),
    (q2_want, q2_tol): (f64, f64),
    nu_want: f64,
    entangled: bool,
) -> gqfi::Result<()> {
    let state = sts(n, m)?;
    rec.close("q2", q2_numeric_with(&state, opts)?.value, q2_want, q2_tol);
    rec.close(
        "nu_tilde",
        pt_min_symplectic_eigenvalue(&state)?,
        nu_want,
        0.005,
    );
    rec.require(
        if entangled {
            "expected entangled"
        } else {
            "expected separable"
        },
        is_entangled(&state, EntanglementThreshold::Half)? == entangled,
    );
    Ok(())
}

fn ratio_four(rec: &mut Recorder) -> gqfi::Result<()> {
    for (n, m, separable) in [(3.0, 0.4, true), (1.0, 0.6, false)] {
        let state = sts(n, m)?;
        let profile = ratio_profile(&state, 0.0, 101)?;
        let mid = profile[50];
        rec.close("theta", mid.theta, FRAC_PI_2, 1e-15);
        rec.close("ratio at pi/2", mid.ratio, 4.0, 1e-9);
        let peak = profile.iter().map(|p| p.ratio).fold(f64::MIN, f64::max);
        rec.close("peak ratio", peak, 4.0, 1e-9);
        rec.require(
            "separability of the anchor state",
            is_entangled(&state, EntanglementThreshold::Half)? != separable,
        );
    }
    Ok(())
}

fn general_vs_isotropic(rec: &mut Recorder) -> gqfi::Result<()> {
    let mut worst: f64 = 0.0;
    for n in [0.0, 1.25, 2.5, 3.75, 5.0] {
        for m in [0.1, 0.7] {
            let state = sts(n, m)?;
            for i in 0..10 {
                for j in 0..10 {
                    let theta = PI * i as f64 / 9.0;
                    let phi = TAU * j as f64 / 10.0;
                    let side = if (i + j) % 2 == 0 { Side::A } else { Side::B };
                    let k = build_generator(&GeneratorSpec::from_angles(theta, phi, side));
                    let iso = qfi_isotropic(&state, &k)?;
                    let gen = qfi_general(&state, &k, None)?;
                    worst = worst.max((gen - iso).abs() / iso.abs().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    rec.within("relative error", worst, 1e-9);
    Ok(())
}

fn optimizer_vs_closed(rec: &mut Recorder, opts: &MeasureOptions) -> gqfi::Result<()> {
    for (n, m) in [(3.0, 0.4), (1.0, 0.6), (0.0, 0.3), (5.0, 1.0), (0.5, 0.05)] {
        let p = StsParams::new(n, m)?;
        let state = make_sts(p)?;
        let closed = q2_closed(p.symmetric_params()?);
        let numeric = q2_numeric_with(&state, opts)?.value;
        rec.within("relative q2 error", (numeric - closed).abs() / closed, 1e-6);

        // dense scan of the raw local QFI, independent of the optimizer
        let mut min = f64::INFINITY;
        for i in 0..=180 {
            for j in 0..360 {
                let spec = GeneratorSpec::from_angles(
                    PI * i as f64 / 180.0,
                    TAU * j as f64 / 360.0,
                    Side::A,
                );
                min = min.min(lqfi(&state, &spec)?);
            }
        }
        rec.within("kappa estimate", (closed / min - opts.kappa).abs(), 1e-9);
    }
    Ok(())
}

fn sts_identity(rec: &mut Recorder) -> gqfi::Result<()> {
    let mut worst: f64 = 0.0;
    for i in 0..=10 {
        for j in 0..=10 {
            let p = StsParams::new(0.5 * i as f64, 0.1 * j as f64)?;
            let from_state = make_sts(p)?
                .symmetric_params(1e-12)
                .ok_or(gqfi::Error::NotSymmetricState)?;
            worst = worst.max((q2_sts(p) - q2_closed(from_state)).abs());
        }
    }
    rec.within("absolute difference", worst, 1e-12);
    Ok(())
}

fn separability(rec: &mut Recorder) -> gqfi::Result<()> {
    for i in 1..=10 {
        let n = 0.5 * i as f64;
        let m = (n * n / (1.0 + 2.0 * n)).sqrt().asinh();
        rec.close(
            "boundary nu_tilde",
            pt_min_symplectic_eigenvalue(&sts(n, m)?)?,
            0.5,
            1e-12,
        );
    }
    let nu_at = |m: f64| -> gqfi::Result<f64> {
        pt_min_symplectic_eigenvalue(&make_sts(StsParams::from_purity(1.0 / 9.0, m)?)?)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if nu_at(mid)? >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let onset = 0.5 * (lo + hi);
    rec.close("onset", onset, 0.5 * 1.5f64.ln(), 1e-12);
    rec.close("onset vs 0.2027", onset, 0.2027, 5e-5);
    let at = |m: f64| make_sts(StsParams::from_purity(1.0 / 9.0, m)?);
    rec.require(
        "separable just below onset at threshold 1",
        !is_entangled(&at(onset - 1e-6)?, EntanglementThreshold::One)?,
    );
    rec.require(
        "entangled just above onset at threshold 1",
        is_entangled(&at(onset + 1e-6)?, EntanglementThreshold::One)?,
    );
    Ok(())
}

fn interference(rec: &mut Recorder) -> gqfi::Result<()> {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 3.5, 5.0] {
        let d_max = (a * a - 0.25_f64).max(0.0).sqrt();
        for frac in [-0.99, -0.5, 0.0, 0.5, 0.99] {
            let p = SymmetricCmParams::new(a, frac * d_max)?;
            let state = make_two_mode_symmetric(p)?;
            for i in 0..100 {
                let da = direction_from(low_discrepancy(i, 0), low_discrepancy(i, 1));
                let db = direction_from(low_discrepancy(i, 2), low_discrepancy(i, 3));
                let (sa, sb) = (
                    GeneratorSpec::new(da, Side::A),
                    GeneratorSpec::new(db, Side::B),
                );
                let term = interference_term(&state, &sa, &sb)?;
                worst = worst.max((interference_closed(&da, &db, p) - term).abs());
                if frac == 0.0 {
                    rec.require("product state interference is exactly 0", term == 0.0);
                }
            }
        }
    }
    rec.within("absolute difference", worst, 1e-10);
    Ok(())
}

fn schwarz(rec: &mut Recorder) -> gqfi::Result<()> {
    let mut states = Vec::new();
    for (k, (a, frac)) in [(0.5, 0.0), (0.8, 0.9), (1.5, 0.5), (3.0, 0.99), (5.0, 0.3)]
        .into_iter()
        .enumerate()
    {
        let d_max = (a * a - 0.25_f64).max(0.0).sqrt();
        let base = make_two_mode_symmetric(SymmetricCmParams::new(a, frac * d_max)?)?;
        let rot =
            apply_local_symplectic(&base, &rotation(1.0 + k as f64), &rotation(2.5 - k as f64))?;
        states.push(base);
        states.push(rot);
    }
    let mut violations = 0usize;
    let mut trials = 0usize;
    for (s, state) in states.iter().enumerate() {
        for i in 0..1000 {
            let idx = i + 1000 * s;
            let sa = GeneratorSpec::new(
                direction_from(low_discrepancy(idx, 0), low_discrepancy(idx, 1)),
                Side::A,
            );
            let sb = GeneratorSpec::new(
                direction_from(low_discrepancy(idx, 2), low_discrepancy(idx, 3)),
                Side::B,
            );
            trials += 1;
            if !schwarz_check(state, &sa, &sb)? {
                violations += 1;
            }
        }
    }
    rec.require("10000 trials", trials == 10_000);
    rec.within("violations", violations as f64, 0.0);
    let state = sts(3.0, 0.4)?;
    let y = Direction::new(0.0, 1.0, 0.0)?;
    let (sa, sb) = (
        GeneratorSpec::new(y, Side::A),
        GeneratorSpec::new(y, Side::B),
    );
    let c = interference_term(&state, &sa, &sb)?;
    let bound = (lqfi(&state, &sa)? * lqfi(&state, &sb)?).sqrt();
    rec.close("equality case", c.abs(), bound, 1e-12);
    Ok(())
}

fn monotonicity(rec: &mut Recorder, opts: &MeasureOptions) -> gqfi::Result<()> {
    let q2 = |state: &GaussianState| q2_numeric_with(state, opts).map(|e| e.value);
    let mut worst: f64 = 0.0;
    let mut prev = -1.0;
    for i in 0..=10 {
        let v = q2(&make_sts(StsParams::from_purity(
            1.0 / 9.0,
            0.1 * i as f64,
        )?)?)?;
        rec.require("q2 strictly increasing in m", v > prev);
        worst = worst.max(prev - v);
        prev = v;
    }
    let mut prev = f64::INFINITY;
    for i in 1..=10 {
        let v = q2(&make_sts(StsParams::from_purity(0.1 * i as f64, 0.4)?)?)?;
        rec.require("q2 strictly decreasing in mu", v < prev);
        worst = worst.max(v - prev);
        prev = v;
    }
    for (n, m) in [(3.0, 0.4), (1.0, 0.6)] {
        let state = sts(n, m)?;
        let mut prev = q2(&state)?;
        for i in (0..10).rev() {
            let v = q2(&apply_pure_loss(&state, 0.1 * i as f64, Side::B)?)?;
            worst = worst.max(v - prev);
            prev = v;
        }
    }
    rec.within("worst increase", worst.max(0.0), 1e-9);
    Ok(())
}

fn passive_invariance(rec: &mut Recorder, opts: &MeasureOptions) -> gqfi::Result<()> {
    let bases = [
        sts(3.0, 0.4)?,
        sts(1.0, 0.6)?,
        sts(0.0, 0.8)?,
        sts(2.0, 0.1)?,
    ];
    let reference: Vec<f64> = bases
        .iter()
        .map(|s| q2_numeric_with(s, opts).map(|e| e.value))
        .collect::<gqfi::Result<_>>()?;
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let k = i % bases.len();
        let rotated = apply_local_symplectic(
            &bases[k],
            &rotation(TAU * low_discrepancy(i, 0)),
            &rotation(TAU * low_discrepancy(i, 1)),
        )?;
        let v = q2_numeric_with(&rotated, opts)?.value;
        worst = worst.max((v - reference[k]).abs() / reference[k].max(1.0));
    }
    rec.within("relative change", worst, 1e-6);
    Ok(())
}

fn determinism(rec: &mut Recorder) -> gqfi::Result<()> {
    let render = |threads: usize| -> gqfi::Result<String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            let a = sweeps::fig1a(1.0 / 9.0, 1.0, 20, &MeasureOptions::default())?;
            let b = sweeps::fig3(3.0, 0.4, 0.0, 40)?;
            Ok(a.to_csv() + &b.to_csv())
        })
    };
    let first = render(1)?;
    let mut differing = 0usize;
    for threads in [1, 4] {
        let again = render(threads)?;
        differing += first
            .bytes()
            .zip(again.bytes())
            .filter(|(x, y)| x != y)
            .count()
            + first.len().abs_diff(again.len());
    }
    rec.within("differing bytes", differing as f64, 0.0);
    Ok(())
}

/// Runs check `id` (1-based). `opts.kappa` feeds every check that reports `Q²_A`.
pub fn run_check(id: u8, opts: &MeasureOptions) -> CheckResult {
    assert!((1..=CHECK_COUNT).contains(&id), "no check {id}");
    let mut rec = Recorder::default();
    let outcome = match id {
        1 => anchor_values(&mut rec, opts, (3.0, 0.4), (1.4584, 0.005), 1.5727, false),
        2 => anchor_values(&mut rec, opts, (1.0, 0.6), (3.1549, 0.0005), 0.4518, true),
        3 => ratio_four(&mut rec),
        4 => general_vs_isotropic(&mut rec),
        5 => optimizer_vs_closed(&mut rec, opts),
        6 => sts_identity(&mut rec),
        7 => separability(&mut rec),
        8 => interference(&mut rec),
        9 => schwarz(&mut rec),
        10 => monotonicity(&mut rec, opts),
        11 => passive_invariance(&mut rec, opts),
        _ => determinism(&mut rec),
    };
    if let Err(e) = outcome {
        rec.failures.push(format!("error: {e}"));
    }
    rec.finish(id, NAMES[id as usize - 1])
}

pub fn run_all(opts: &MeasureOptions) -> Vec<CheckResult> {
    (1..=CHECK_COUNT).map(|id| run_check(id, opts)).collect()
}
