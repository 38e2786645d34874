//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::compression::{default_max_sweeps, symmetrize_to_fixpoint, DEFAULT_TOL};
use crate::functionals::{additive_energy, l2_norm, mu_constant, ratio, u2_fourth_fast};
use crate::hypercube::{PointSet, SphereSpec};
use crate::io::{parse_function, parse_set, write_function, write_trace_csv};
use crate::optimize::{maximize_ratio, OptimizerConfig};
use crate::spectral::{fourier_forward, fourier_inverse, Normalization, Spectrum};
use crate::verify::{lemma_suite, remark_duality_check, signed_monotonicity_search, verify_all, RATIO_TOL};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hamming-energy", version, about = "Additive energy and u2 extremal problems on Hamming spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SphereArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, exact energy and closed-form mu of S(n,k).
    Mu(SphereArgs),
    /// Exact additive energy of a set file.
    Energy {
        #[arg(long)]
        set: PathBuf,
    },
    /// Walsh-Hadamard spectrum (expectation normalization) of a function file.
    Transform {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Treat the file as a spectrum and print the function.
        #[arg(long)]
        inverse: bool,
    },
    /// Iterate pair compressions to a fixpoint.
    Compress {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        max_sweeps: Option<usize>,
        /// Write the per-step trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Multi-start gradient ascent of the u2/l2 ratio on a support.
    Optimize {
        #[arg(long, conflicts_with_all = ["n", "k"])]
        set: Option<PathBuf>,
        #[arg(long, requires = "k")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        k: Option<u32>,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50_000)]
        max_iters: usize,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
    /// Certify the constant-function maximizer for every S(n,k), n <= n-max.
    Verify {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = RATIO_TOL)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compression property suite on random functions on S(n,k).
    LemmaTest {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also search sign-changing functions for a u2 decrease (report only).
        #[arg(long)]
        signed: bool,
    },
    /// Check ratio4(f) = N ratio_u2(f^) on random spectra supported on a set.
    DualityTest {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAIL,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| Failure::Usage(e.to_string());
    match cmd {
        Command::Mu(SphereArgs { n, k }) => {
            let mu = mu_constant(SphereSpec::new(n, k)?)?;
            writeln!(out, "{mu}").map_err(io_err)?;
        }
        Command::Energy { set } => {
            let set_data = with_path(&set, parse_set(&read(&set)?))?;
            let e = additive_energy(&set_data)?;
            writeln!(out, "E={e} |A|={}", set_data.len()).map_err(io_err)?;
        }
        Command::Transform { function, inverse } => {
            let f = with_path(&function, parse_function(&read(&function)?))?;
            let text = if inverse {
                let s = Spectrum::new(f.dim(), f.into_values(), Normalization::Expectation)?;
                format!("# function\n{}", write_function(&fourier_inverse(&s)?))
            } else {
                let s = fourier_forward(&f);
                format!("# spectrum, expectation normalization\n{}", write_function(&s.as_function()))
            };
            write!(out, "{text}").map_err(io_err)?;
        }
        Command::Compress { function, tol, max_sweeps, trace } => {
            let f = with_path(&function, parse_function(&read(&function)?))?;
            let max_sweeps = max_sweeps.unwrap_or_else(|| default_max_sweeps(f.dim()));
            let outcome = symmetrize_to_fixpoint(&f, tol, max_sweeps)?;
            if let Some(path) = trace {
                write_file(&path, &write_trace_csv(&outcome.trace))?;
            }
            let g = &outcome.function;
            writeln!(
                out,
                "# sweeps={} converged={} last_change={:e} u2_fourth={} l2={} ratio={}",
                outcome.sweeps,
                outcome.converged,
                outcome.last_change,
                u2_fourth_fast(g),
                l2_norm(g),
                ratio(g)
            )
            .map_err(io_err)?;
            write!(out, "{}", write_function(g)).map_err(io_err)?;
        }
        Command::Optimize { set, n, k, starts, seed, tol, max_iters, step } => {
            let (points, sphere) = match (set, n, k) {
                (Some(path), _, _) => (with_path(&path, parse_set(&read(&path)?))?, None),
                (None, Some(n), Some(k)) => {
                    let s = SphereSpec::new(n, k)?;
                    (PointSet::sphere(s), Some(s))
                }
                _ => return Err(Failure::Usage("give either --set FILE or --n and --k".into())),
            };
            let cfg = OptimizerConfig { starts, step, tol, max_iters, seed };
            let res = maximize_ratio(&points, &cfg)?;
            for t in &res.starts {
                writeln!(
                    out,
                    "start={} ratio={} iterations={} grad_norm={:e} converged={}",
                    t.start, t.ratio, t.iterations, t.grad_norm, t.converged
                )
                .map_err(io_err)?;
            }
            writeln!(out, "best_ratio={} best_start={}", res.best_ratio, res.best_start).map_err(io_err)?;
            if let Some(s) = sphere {
                let mu = mu_constant(s)?;
                writeln!(out, "mu={} ({})", mu.exact, mu.value).map_err(io_err)?;
                if res.best_ratio > mu.value + RATIO_TOL {
                    writeln!(err, "best ratio exceeds the constant-function value").map_err(io_err)?;
                    return Err(Failure::Check);
                }
            }
        }
        Command::Verify { n_max, trials, seed, tol, out: path } => {
            let report = verify_all(n_max, trials, seed, tol)?;
            let json = to_json(&report);
            match path {
                Some(p) => {
                    write_file(&p, &json)?;
                    for c in &report.cells {
                        writeln!(
                            out,
                            "{} mu={} compression={} gradient={} pass={}",
                            c.spec, c.mu_exact, c.best_ratio_compression, c.best_ratio_gradient, c.pass
                        )
                        .map_err(io_err)?;
                    }
                }
                None => write!(out, "{json}").map_err(io_err)?,
            }
            if !report.pass {
                for c in report.cells.iter().filter(|c| !c.pass) {
                    writeln!(err, "{} failed: {}", c.spec, c.failures.join(" | ")).map_err(io_err)?;
                }
                return Err(Failure::Check);
            }
        }
        Command::LemmaTest { n, k, trials, seed, signed } => {
            let s = SphereSpec::new(n, k)?;
            let report = lemma_suite(s, trials, seed)?;
            write!(out, "{}", to_json(&report)).map_err(io_err)?;
            if signed {
                let search = signed_monotonicity_search(s, trials, seed)?;
                write!(out, "{}", to_json(&search)).map_err(io_err)?;
            }
            if !report.pass {
                return Err(Failure::Check);
            }
        }
        Command::DualityTest { n, set, trials, seed } => {
            let points = with_path(&set, parse_set(&read(&set)?))?;
            let report = remark_duality_check(n, &points, trials, seed)?;
            write!(out, "{}", to_json(&report)).map_err(io_err)?;
            if !report.pass {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}
