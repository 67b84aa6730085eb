//! The `verify` driver: representation relations, spectral oracle against the
//! residue tables, and the zeta continuation against the exact eta.

use std::fmt;

use fchd_core::combinatorics::multiplicity_table;
use fchd_core::invariants::{eta, harmonic_dim};
use fchd_core::oracle::{build_rep, kernel_dim_oracle, windowed_spectrum, CheckOutcome};
use fchd_core::zeta::eta_numeric;
use fchd_core::{FchdManifold, Result, SpinStructure};

pub const CLIFFORD_TOL: f64 = 1e-12;
pub const EIGEN_TOL: f64 = 1e-10;
pub const ZETA_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub enum VerifyLine {
    Check(CheckOutcome),
    Skip { name: String, reason: String },
}

impl VerifyLine {
    pub fn passed(&self) -> bool {
        match self {
            VerifyLine::Check(c) => c.passed,
            VerifyLine::Skip { .. } => true,
        }
    }
}

impl fmt::Display for VerifyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyLine::Check(c) => write!(f, "{c}"),
            VerifyLine::Skip { name, reason } => write!(f, "SKIP  {name}: {reason}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub manifold: FchdManifold,
    pub lines: Vec<VerifyLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(VerifyLine::passed)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed()).count()
    }
}

fn count_check(name: String, got: u64, want: u64) -> VerifyLine {
    let c = CheckOutcome::from_error(name, got.abs_diff(want) as f64, 0.0)
        .with_detail(format!("oracle {got}, formula {want}"));
    VerifyLine::Check(c)
}

pub fn run_verify(m: &FchdManifold, window: i64, tol: f64) -> Result<VerifyReport> {
    let rep = build_rep(m.k())?;
    let mut lines: Vec<VerifyLine> = rep
        .full_report(CLIFFORD_TOL, tol, EIGEN_TOL)
        .into_iter()
        .map(VerifyLine::Check)
        .collect();

    for s in SpinStructure::ALL {
        let table = multiplicity_table(m, s);
        let spec = windowed_spectrum(&rep, m, s, window, tol)?;
        let name = format!("windowed spectrum folded mod n = A_r ({s}, window {window})");
        if m.k_is_odd() {
            let bad = spec.fold_mismatches(&table);
            let c = CheckOutcome::from_error(name, bad.len() as f64, 0.0);
            let c = if bad.is_empty() {
                c.with_detail(format!("{} sections", spec.sections.len()))
            } else {
                c.with_detail(format!("residues {bad:?} differ"))
            };
            lines.push(VerifyLine::Check(c));
        } else {
            lines.push(VerifyLine::Skip {
                name,
                reason: "k even, the table does not describe the spectrum".into(),
            });
        }
        if !spec.anomalies.is_empty() {
            let c = CheckOutcome::from_error(
                format!("sign-vector states are e_n eigenvectors ({s})"),
                spec.anomalies.len() as f64,
                0.0,
            );
            lines.push(VerifyLine::Check(c));
        }

        let kernel = kernel_dim_oracle(&rep, m, s, tol)?;
        lines.push(count_check(
            format!("kernel dimension = harmonic_dim ({s})"),
            kernel,
            harmonic_dim(m, s),
        ));

        let name = format!("eta_numeric(0) = exact eta ({s})");
        if m.k_is_odd() {
            let exact = eta(m, s).value;
            let numeric = eta_numeric(m, 0.0, s)?;
            let c = CheckOutcome::from_error(name, (numeric - exact.to_f64()).abs(), ZETA_TOL)
                .with_detail(format!("exact {exact}, numeric {numeric:.12}"));
            lines.push(VerifyLine::Check(c));
        } else {
            lines.push(VerifyLine::Skip {
                name,
                reason: "k even, eta is zero by symmetry".into(),
            });
        }
    }
    Ok(VerifyReport {
        manifold: *m,
        lines,
    })
}
