//! `quadrature` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::format::sig15;
use super::report::{build_report, method_estimates, reference_pi, Method};
use super::svg::{render_figure, FigureName, FigureSpec};
use super::verify::{run_suite, Suite};
use crate::error::Error;
use crate::numerics::{Extended, Mode, PrecisionContext, Real};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "quadrature",
    version,
    about = "Rectangle apposition, telescoping series and the quadratrix"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate π with one method.
    Pi {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        iterations: u32,
        /// Decimal digits; switches to extended arithmetic.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Run an invariant suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Replaces every upper tolerance in the suite.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Tabulate every method against the reference π.
    Report {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m_max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Render a figure as SVG.
    Figure {
        /// descartes_rectangles, polygon_radii or summarium_spiral
        #[arg(long)]
        name: String,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        overlay_quadratrix: bool,
        /// Scale of the figure.
        #[arg(short, long, default_value_t = 1.0)]
        a: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn context(precision: Option<u32>) -> Result<PrecisionContext, Failure> {
    match precision {
        None => Ok(PrecisionContext::native()),
        Some(d) => Ok(PrecisionContext::extended(d)?),
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text)
            .map_err(|e| Failure::Failed(format!("cannot write {}: {e}", p.display()))),
        _ => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Failed(e.to_string())),
    }
}

fn pi_command(
    method: Method,
    iterations: u32,
    ctx: &PrecisionContext,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let reference = reference_pi(ctx);
    let (estimate, abs_error) = match ctx.mode() {
        Mode::Native => {
            let e = *method_estimates::<f64>(method, iterations, ctx)?
                .last()
                .expect("iterations >= 1");
            (
                e,
                (Extended::with_precision(e, reference.precision()) - reference)
                    .abs()
                    .to_f64(),
            )
        }
        Mode::Extended => {
            let e = method_estimates::<Extended>(method, iterations, ctx)?
                .pop()
                .expect("iterations >= 1");
            (e.to_f64(), (e - reference).abs().to_f64())
        }
    };
    let text = format!(
        "method {method}\niterations {iterations}\nestimate {}\nabs_error {}\nerror_model {}\n",
        sig15(estimate),
        sig15(abs_error),
        sig15(method.error_model(iterations)),
    );
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Failed(e.to_string()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Pi {
            method,
            iterations,
            precision,
        } => pi_command(method, iterations, &context(precision)?, out),
        Command::Verify { suite, tol } => {
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
                }
            }
            let checks = run_suite(suite, tol)?;
            let mut text = String::new();
            for c in &checks {
                text.push_str(&c.to_string());
                text.push('\n');
            }
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Failed(e.to_string()))?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                Err(Failure::Failed(format!(
                    "{failed} of {} checks failed",
                    checks.len()
                )))
            } else {
                Ok(())
            }
        }
        Command::Report {
            m_max,
            format,
            output,
            precision,
        } => {
            let report = build_report(m_max, &context(precision)?)?;
            let text = match format {
                ReportFormat::Csv => report.to_csv(),
                ReportFormat::Json => report.to_json(),
            };
            write_output(output.as_deref(), &text, out)
        }
        Command::Figure {
            name,
            steps,
            overlay_quadratrix,
            a,
            output,
        } => {
            let spec = FigureSpec::new(name.parse::<FigureName>()?, steps)
                .with_overlay(overlay_quadratrix);
            let svg = render_figure(&spec, a, &PrecisionContext::native())?;
            write_output(output.as_deref(), &svg, out)
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
