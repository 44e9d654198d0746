//! Command-line front end: reads an architecture + orientation document,
//! runs one pipeline stage (or the full verification), and writes
//! machine-readable reports.
//!
//! Exit codes: 0 success, 1 verification findings, 2 input error,
//! 3 internal error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stewart_sing::platform::InputDoc;
use stewart_sing::report;
use stewart_sing::Error;

#[derive(Parser)]
#[command(name = "stewart-sing", version, about = "Singularity geometry of Gough-Stewart platforms")]
struct Cli {
    /// Input document (TOML: base, platform, cayley; rationals as "num/den").
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output directory for reports.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Numeric tolerance for the floating-point checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Random seed; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for probes, sweeps, and exports.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Grid resolution per axis for `mesh`.
    #[arg(long, global = true, default_value_t = 32)]
    grid: usize,
    /// Half-width of the sampling box for `mesh`.
    #[arg(long = "box", global = true, default_value_t = 10.0)]
    box_half: f64,
    /// Floating-point precision: only `double` is implemented.
    #[arg(long, global = true, default_value = "double")]
    precision: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singularity surface: cubic, homogenization, curve at infinity.
    Surface,
    /// Reciprocal-twist polynomials and their forms at infinity.
    Twist,
    /// The quadric containing all reciprocal twists.
    Quadric,
    /// Rational parametrization of the surface, with sampled poses.
    Param,
    /// The 27 lines, their classification, and the exceptional structure.
    Lines,
    /// Structure on the plane at infinity.
    Infinity,
    /// Full verification pipeline; findings set exit code 1.
    Verify,
    /// Grid of surface values plus the tagged lines, for renderers.
    Mesh,
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), Error> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    if cli.precision != "double" {
        return Err(Error::Input(format!(
            "unsupported precision {:?}; only \"double\" is implemented",
            cli.precision
        )));
    }
    if cli.tol <= 0.0 {
        return Err(Error::Input("tolerance must be positive".into()));
    }
    let input = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Input("missing --input file".into()))?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", input.display())))?;
    let (arch, r) = InputDoc::parse(&text)?;
    let (seed, tol) = (cli.seed, cli.tol);

    match cli.command {
        Command::Surface => {
            let rep = report::surface_report(&arch, &r, cli.samples, seed, tol)?;
            write_out(&cli.out, "surface.json", &to_json(&rep)?)?;
        }
        Command::Twist => {
            let rep = report::twist_report(&arch, &r, seed, tol)?;
            write_out(&cli.out, "twist.json", &to_json(&rep)?)?;
        }
        Command::Quadric => {
            let rep = report::quadric_report(&arch, &r, seed, tol)?;
            write_out(&cli.out, "quadric.json", &to_json(&rep)?)?;
        }
        Command::Param => {
            let rep = report::param_report(&arch, &r, cli.samples, seed, tol)?;
            write_out(&cli.out, "param.json", &to_json(&rep)?)?;
            write_out(&cli.out, "param.csv", &report::param_csv(&rep))?;
        }
        Command::Lines => {
            let rep = report::lines_report(&arch, &r, seed, tol)?;
            write_out(&cli.out, "lines.json", &to_json(&rep)?)?;
        }
        Command::Infinity => {
            let rep = report::infinity_report(&arch, &r, cli.samples, seed, tol)?;
            write_out(&cli.out, "infinity.json", &to_json(&rep)?)?;
        }
        Command::Verify => {
            let rep = report::verify_report(&arch, &r, seed, tol);
            write_out(&cli.out, "verify.json", &to_json(&rep)?)?;
            for c in &rep.checks {
                println!("{}: {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if !rep.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Mesh => {
            let grid = report::mesh_grid_csv(&arch, &r, cli.box_half, cli.grid)?;
            write_out(&cli.out, "mesh_grid.csv", &grid)?;
            let lines = report::mesh_lines_json(&arch, &r, seed, tol)?;
            write_out(&cli.out, "mesh_lines.json", &lines)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e @ (Error::Input(_) | Error::Parse { .. })) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
