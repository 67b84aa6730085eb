use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fchd_core::invariants::eta;
use fchd_core::oracle::rep::MAX_REP_K;
use fchd_core::{FchdManifold, SpinStructure};

use crate::catalog::{sweep, MAX_SWEEP_K};
use crate::render::{
    catalog_csv, catalog_json, render_eta, render_harmonic, render_table, OutputFormat,
};
use crate::verify::run_verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fchd",
    version,
    about = "Eta invariants and harmonic spinors of flat manifolds with cyclic holonomy"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Plus,
    Minus,
}

impl From<StructureArg> for SpinStructure {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Plus => SpinStructure::Plus,
            StructureArg::Minus => SpinStructure::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct DimArgs {
    /// Odd dimension n = 2k + 1 >= 3
    #[arg(long, allow_negative_numbers = true)]
    pub dim: i64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact eta invariant with its residue multiplicities
    Eta {
        #[command(flatten)]
        dim: DimArgs,
        #[arg(long, value_enum, default_value = "plus")]
        structure: StructureArg,
    },
    /// Residue of each sign vector in D+
    Table {
        #[command(flatten)]
        dim: DimArgs,
        #[arg(long, value_enum, default_value = "plus")]
        structure: StructureArg,
    },
    /// Dimension of the space of harmonic spinors
    Harmonic {
        #[command(flatten)]
        dim: DimArgs,
        /// Both structures when omitted
        #[arg(long, value_enum)]
        structure: Option<StructureArg>,
    },
    /// Check the closed forms against the explicit spinor representation
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        dim: i64,
        /// Eigenvalue window |l| <= W, default 3n
        #[arg(long, allow_negative_numbers = true)]
        window: Option<i64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Catalog of every k in a range
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        kmin: i64,
        #[arg(long, allow_negative_numbers = true)]
        kmax: i64,
        /// Standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Both structures when omitted
        #[arg(long, value_enum)]
        structure: Option<StructureArg>,
        /// Add the spinor-oracle comparison for k <= 12
        #[arg(long)]
        with_oracle: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn manifold(dim: i64) -> Result<FchdManifold, Failure> {
    FchdManifold::from_dim(dim).map_err(|e| usage(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_FAILED,
        message: format!("write failed: {e}"),
    })
}

fn structures(filter: Option<StructureArg>) -> Vec<SpinStructure> {
    match filter {
        Some(s) => vec![s.into()],
        None => SpinStructure::ALL.to_vec(),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eta { dim, structure } => {
            let m = manifold(dim.dim)?;
            emit(out, &render_eta(&eta(&m, structure.into()), dim.format))?;
            Ok(EXIT_OK)
        }
        Command::Table { dim, structure } => {
            let m = manifold(dim.dim)?;
            emit(out, &render_table(&m, structure.into(), dim.format))?;
            Ok(EXIT_OK)
        }
        Command::Harmonic { dim, structure } => {
            let m = manifold(dim.dim)?;
            emit(
                out,
                &render_harmonic(&m, &structures(structure), dim.format),
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify { dim, window, tol } => {
            let m = manifold(dim)?;
            if m.k() > MAX_REP_K {
                return Err(usage(format!(
                    "verify needs k <= {MAX_REP_K}, got k = {} (n = {dim})",
                    m.k()
                )));
            }
            let n = m.n() as i64;
            let window = window.unwrap_or(3 * n);
            if window < n {
                return Err(usage(format!(
                    "window {window} is smaller than the dimension {n}"
                )));
            }
            if !(tol.is_finite() && tol > 0.0) {
                return Err(usage(format!("tolerance must be positive, got {tol}")));
            }
            let report = run_verify(&m, window, tol).map_err(|e| Failure {
                code: EXIT_FAILED,
                message: e.to_string(),
            })?;
            let mut text = format!("verify {m}, window {window}, tol {tol:e}\n");
            for line in &report.lines {
                text.push_str(&format!("{line}\n"));
            }
            let failed = report.failures();
            if failed == 0 {
                text.push_str("all checks passed\n");
            } else {
                text.push_str(&format!("{failed} check(s) failed\n"));
            }
            emit(out, &text)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Sweep {
            kmin,
            kmax,
            out: path,
            format,
            structure,
            with_oracle,
        } => {
            if !(1 <= kmin && kmin <= kmax && kmax <= MAX_SWEEP_K as i64) {
                return Err(usage(format!(
                    "need 1 <= kmin <= kmax <= {MAX_SWEEP_K}, got kmin = {kmin}, kmax = {kmax}"
                )));
            }
            if format == OutputFormat::Text {
                return Err(usage("sweep writes json or csv"));
            }
            let entries = sweep(
                kmin as u32,
                kmax as u32,
                &structures(structure),
                with_oracle,
            );
            let body = match format {
                OutputFormat::Csv => catalog_csv(&entries),
                _ => catalog_json(&entries),
            };
            match path {
                Some(p) => fs::write(&p, body)
                    .map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?,
                None => emit(out, &body)?,
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["fchd"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn even_dim_is_usage_error() {
        assert_eq!(call(&["verify", "--dim", "4"]).0, EXIT_USAGE);
        assert_eq!(call(&["eta", "--dim", "8"]).0, EXIT_USAGE);
        assert_eq!(call(&["eta", "--dim", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["eta", "--dim", "-7"]).0, EXIT_USAGE);
    }

    #[test]
    fn bad_flags() {
        assert_eq!(
            call(&["eta", "--dim", "7", "--structure", "sideways"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["eta"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["verify", "--dim", "7", "--window", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["verify", "--dim", "27"]).0, EXIT_USAGE);
        assert_eq!(call(&["sweep", "--kmin", "3", "--kmax", "2"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["sweep", "--kmin", "1", "--kmax", "26"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["sweep", "--kmin", "1", "--kmax", "2", "--format", "text"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn eta_text_mentions_even_k() {
        let (code, out, _) = call(&["eta", "--dim", "5", "--structure", "plus"]);
        assert_eq!(code, 0);
        assert!(out.contains("k even"));
        assert!(out.contains("eta        0\n"));
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
