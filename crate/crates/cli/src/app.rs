use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gqfi::{EntanglementThreshold, MeasureOptions};

use crate::config::Config;
use crate::error::CliError;
use crate::{report, selftest, sweeps};

#[derive(Debug, Parser)]
#[command(
    name = "gqfi",
    version,
    about = "QFI-based correlation sweeps for two-mode Gaussian states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Q² and log-negativity against squeezing at fixed purity (columns m,q2,logneg)
    Fig1a,
    /// Q² against purity for a list of squeezings (columns m,mu,q2)
    Fig1b,
    /// Local and total QFI along a θ sweep (columns theta,lqfi,tqfi,ratio)
    Fig3,
    /// Correlation and entanglement diagnostics of one squeezed thermal state
    Report,
    /// Run the numerical self-checks
    Selftest,
}

#[derive(Debug, Args, Default)]
pub struct Flags {
    /// Mean thermal photon number
    #[arg(long = "N", global = true, allow_negative_numbers = true)]
    pub n_thermal: Option<f64>,
    /// Two-mode squeezing parameter
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// Purity of the squeezed thermal state
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Azimuthal angle of the generator direction
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Number of sweep intervals
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Upper end of the squeezing sweep
    #[arg(long = "m-max", global = true, allow_negative_numbers = true)]
    pub m_max: Option<f64>,
    /// Comma-separated squeezing values
    #[arg(
        long = "m-list",
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    pub m_list: Option<Vec<f64>>,
    /// Entanglement threshold on the partially transposed spectrum (0.5 or 1)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Machine-readable self-test output
    #[arg(long, global = true)]
    pub json: bool,
    /// key=value file supplying defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, hide = true, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
}

/// Flags merged with the config file and defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub n_thermal: Option<f64>,
    pub m: Option<f64>,
    pub mu: f64,
    pub phi: f64,
    pub steps: usize,
    pub m_max: f64,
    pub m_list: Vec<f64>,
    pub threshold: EntanglementThreshold,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub json: bool,
    pub kappa: f64,
}

impl Settings {
    pub fn resolve(flags: Flags) -> Result<Self, CliError> {
        let cfg = match &flags.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        let m_list = match flags.m_list {
            Some(list) => list,
            None => match cfg.raw("m_list") {
                Some(raw) => raw
                    .split(',')
                    .map(|v| {
                        v.trim().parse().map_err(|_| {
                            CliError::Usage(format!("config key 'm_list': cannot parse '{v}'"))
                        })
                    })
                    .collect::<Result<_, _>>()?,
                None => vec![0.3, 0.4, 0.5],
            },
        };
        let threshold = flags.threshold.or(cfg.get("threshold")?).unwrap_or(0.5);
        let threshold = EntanglementThreshold::try_from(threshold).map_err(|_| {
            CliError::Usage(format!("--threshold must be 0.5 or 1, got {threshold}"))
        })?;
        let jobs = flags.jobs.or(cfg.get("jobs")?);
        if jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(Self {
            n_thermal: flags.n_thermal.or(cfg.get("N")?),
            m: flags.m.or(cfg.get("m")?),
            mu: flags.mu.or(cfg.get("mu")?).unwrap_or(1.0 / 9.0),
            phi: flags.phi.or(cfg.get("phi")?).unwrap_or(0.0),
            steps: flags.steps.or(cfg.get("steps")?).unwrap_or(100),
            m_max: flags.m_max.or(cfg.get("m_max")?).unwrap_or(1.0),
            m_list,
            threshold,
            out: flags.out.or(cfg.get("out")?),
            jobs,
            json: flags.json,
            kappa: flags.kappa.unwrap_or(gqfi::KAPPA),
        })
    }

    fn measure_options(&self) -> MeasureOptions {
        MeasureOptions {
            kappa: self.kappa,
            ..MeasureOptions::default()
        }
    }

    fn require(value: Option<f64>, flag: &str) -> Result<f64, CliError> {
        value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Executes a parsed command and returns the process exit code.
pub fn execute(command: &Command, settings: &Settings) -> Result<i32, CliError> {
    let opts = settings.measure_options();
    let out = settings.out.as_deref();
    match command {
        Command::Fig1a => {
            let table = sweeps::fig1a(settings.mu, settings.m_max, settings.steps, &opts)?;
            emit(&table.to_csv(), out)?;
        }
        Command::Fig1b => {
            let table = sweeps::fig1b(&settings.m_list, settings.steps, &opts)?;
            emit(&table.to_csv(), out)?;
        }
        Command::Fig3 => {
            let table = sweeps::fig3(
                settings.n_thermal.unwrap_or(3.0),
                settings.m.unwrap_or(0.4),
                settings.phi,
                settings.steps,
            )?;
            emit(&table.to_csv(), out)?;
        }
        Command::Report => {
            let r = report::state_report(
                Settings::require(settings.n_thermal, "N")?,
                Settings::require(settings.m, "m")?,
                settings.threshold,
                &opts,
            )?;
            emit(&r.to_text(), None)?;
            if let Some(path) = out {
                emit(&r.to_table().to_csv(), Some(path))?;
            }
        }
        Command::Selftest => {
            let results = selftest::run_all(&opts);
            let passed = results.iter().filter(|r| r.passed).count();
            let text = if settings.json {
                serde_json::to_string_pretty(&results).expect("results serialize") + "\n"
            } else {
                let mut lines: Vec<String> = results.iter().map(|r| r.line()).collect();
                lines.push(format!("{passed}/{} checks passed", results.len()));
                lines.join("\n") + "\n"
            };
            emit(&text, out)?;
            return Ok(if passed == results.len() { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Parses `args` and runs the command, reporting errors on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = Settings::resolve(cli.flags).and_then(|settings| match settings.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?
            .install(|| execute(&cli.command, &settings)),
        None => execute(&cli.command, &settings),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> (Command, Settings) {
        let cli = Cli::try_parse_from(std::iter::once("gqfi").chain(args.iter().copied())).unwrap();
        (cli.command, Settings::resolve(cli.flags).unwrap())
    }

    #[test]
    fn defaults() {
        let (cmd, s) = parse(&["fig1b"]);
        assert!(matches!(cmd, Command::Fig1b));
        assert_eq!(s.m_list, vec![0.3, 0.4, 0.5]);
        assert_eq!(s.threshold, EntanglementThreshold::Half);
        assert_eq!((s.steps, s.phi, s.kappa), (100, 0.0, 4.0));
    }

    #[test]
    fn flags_before_or_after_subcommand() {
        let (_, s) = parse(&[
            "--N",
            "3",
            "report",
            "--m",
            "0.4",
            "--threshold",
            "1",
            "--phi",
            "-0.5",
        ]);
        assert_eq!((s.n_thermal, s.m, s.phi), (Some(3.0), Some(0.4), -0.5));
        assert_eq!(s.threshold, EntanglementThreshold::One);
    }

    #[test]
    fn config_fills_gaps_and_flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "# sweep\nN=1\nm=0.6\nsteps=20\nm_list=0.1, 0.2\n").unwrap();
        let (_, s) = parse(&["fig3", "--config", path.to_str().unwrap(), "--steps", "8"]);
        assert_eq!((s.n_thermal, s.m, s.steps), (Some(1.0), Some(0.6), 8));
        assert_eq!(s.m_list, vec![0.1, 0.2]);
    }

    #[test]
    fn usage_errors() {
        let bad = |args: &[&str]| {
            let cli = Cli::try_parse_from(std::iter::once("gqfi").chain(args.iter().copied()));
            cli.map_err(|e| e.exit_code())
                .and_then(|c| Settings::resolve(c.flags).map_err(|e| e.exit_code()))
                .err()
        };
        assert_eq!(bad(&["fig3", "--threshold", "0.7"]), Some(2));
        assert_eq!(bad(&["fig3", "--jobs", "0"]), Some(2));
        assert_eq!(bad(&["fig3", "--steps", "ten"]), Some(2));
        assert_eq!(bad(&["nope"]), Some(2));
        assert_eq!(run(["gqfi", "report", "--N", "3"]), 2);
        assert_eq!(run(["gqfi", "fig1a", "--mu", "0"]), 2);
    }
}
