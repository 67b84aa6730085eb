//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fchd_cli::render::{render_table, OutputFormat};
use fchd_core::combinatorics::multiplicity_table;
use fchd_core::invariants::{check_corollary2, check_proposition1a, eta, harmonic_dim};
use fchd_core::oracle::{build_rep, kernel_dim_oracle, windowed_spectrum};
use fchd_core::zeta::{eta_numeric, hurwitz_zeta};
use fchd_core::{ExactRational, FchdManifold, SpinStructure};

const GOLDEN_N7_PLUS: &str = include_str!("golden/table_n7_plus.txt");

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(problems: Vec<String>, ok_detail: impl Into<String>) -> Self {
        if problems.is_empty() {
            Verdict {
                passed: true,
                detail: ok_detail.into(),
            }
        } else {
            Verdict {
                passed: false,
                detail: problems.join("; "),
            }
        }
    }
}

type Criterion = (&'static str, fn() -> Verdict);

fn manifold(k: u32) -> FchdManifold {
    FchdManifold::new(k as i64).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn example_one() -> Verdict {
    let m = FchdManifold::from_dim(7).unwrap();
    let (r, took) = timed(|| eta(&m, SpinStructure::Plus));
    let mut problems = Vec::new();
    if r.value != ExactRational::from_integer(-2) {
        problems.push(format!("eta = {}", r.value));
    }
    let want = [2, 0, 0, 2, 0, 2, 2];
    if r.table.counts() != want {
        problems.push(format!("A = {:?}", r.table.counts()));
    }
    if took >= Duration::from_millis(10) {
        problems.push(format!("took {took:?}"));
    }
    Verdict::new(
        problems,
        format!("eta = -2, A_0 = A_3 = A_5 = A_6 = 2, {took:?}"),
    )
}

fn conservation() -> Verdict {
    let (problems, took) = timed(|| {
        let mut problems = Vec::new();
        for k in 1..=20u32 {
            let m = manifold(k);
            for s in SpinStructure::ALL {
                let total = multiplicity_table(&m, s).total();
                if total != 1u64 << k {
                    problems.push(format!("k = {k} {s}: {total}"));
                }
            }
        }
        problems
    });
    let mut problems = problems;
    if took >= Duration::from_secs(5) {
        problems.push(format!("took {took:?}"));
    }
    Verdict::new(problems, format!("k = 1..20, both structures, {took:?}"))
}

fn parity() -> Verdict {
    let problems = (1..=15u32)
        .step_by(2)
        .filter_map(|k| {
            let m = manifold(k);
            let diff = eta(&m, SpinStructure::Plus).value - eta(&m, SpinStructure::Minus).value;
            let verdict = check_corollary2(&m);
            let half = diff.clone() * ExactRational::new(1, 2);
            (!(half.is_integer() && verdict.holds())).then(|| format!("k = {k}: difference {diff}"))
        })
        .collect();
    Verdict::new(problems, "odd k <= 15")
}

fn integrality() -> Verdict {
    let mut problems = Vec::new();
    for n in [7i64, 11, 19, 23] {
        let m = FchdManifold::from_dim(n).unwrap();
        for s in SpinStructure::ALL {
            let v = eta(&m, s).value;
            if !v.is_integer() {
                problems.push(format!("n = {n} {s}: {v}"));
            }
        }
    }
    Verdict::new(problems, "n in {7, 11, 19, 23}, both structures")
}

fn denominator_law() -> Verdict {
    let mut problems = Vec::new();
    for k in (1..=15u32).step_by(2) {
        let m = manifold(k);
        for s in SpinStructure::ALL {
            let v = eta(&m, s).value;
            let scaled = v.clone() * ExactRational::from_integer(m.n() as i64);
            if !scaled.is_integer() {
                problems.push(format!("n = {} {s}: {v}", m.n()));
            }
        }
    }
    Verdict::new(problems, "n * eta integral for odd k <= 15")
}

fn harmonic() -> Verdict {
    let mut problems = Vec::new();
    for k in 1..=12u32 {
        let d = harmonic_dim(&manifold(k), SpinStructure::Minus);
        if d != 0 {
            problems.push(format!("minus k = {k}: {d}"));
        }
    }
    let d7 = harmonic_dim(&FchdManifold::from_dim(7).unwrap(), SpinStructure::Plus);
    if d7 != 2 {
        problems.push(format!("n = 7 plus: {d7}"));
    }
    let d3 = harmonic_dim(&FchdManifold::from_dim(3).unwrap(), SpinStructure::Plus);
    if d3 != 0 {
        problems.push(format!("n = 3 plus: {d3}"));
    }
    let off: Vec<String> = check_proposition1a(12)
        .into_iter()
        .filter(|r| !r.agrees())
        .map(|r| format!("n = {} has dim {}", r.n, r.harmonic_dim_plus))
        .collect();
    let note = if off.is_empty() {
        "plus threshold n >= 5 holds for k <= 12".to_string()
    } else {
        format!("plus threshold n >= 5 reported off at {}", off.join(", "))
    };
    Verdict::new(
        problems,
        format!("minus 0 for k <= 12, n = 7 plus 2, n = 3 plus 0; {note}"),
    )
}

fn spectral_oracle() -> Verdict {
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    for k in [1u32, 3, 5] {
        let (res, took) = timed(|| {
            let m = manifold(k);
            let rep = build_rep(k).unwrap();
            let mut bad = Vec::new();
            for s in SpinStructure::ALL {
                let spec = windowed_spectrum(&rep, &m, s, 3 * m.n() as i64, 1e-9).unwrap();
                let mismatch = spec.fold_mismatches(&multiplicity_table(&m, s));
                if !mismatch.is_empty() || !spec.anomalies.is_empty() {
                    bad.push(format!("k = {k} {s}: residues {mismatch:?}"));
                }
            }
            bad
        });
        problems.extend(res);
        slowest = slowest.max(took);
        if k == 5 && took >= Duration::from_secs(30) {
            problems.push(format!("k = 5 took {took:?}"));
        }
    }
    Verdict::new(
        problems,
        format!("k in {{1, 3, 5}}, both structures, slowest {slowest:?}"),
    )
}

fn kernel_oracle() -> Verdict {
    let mut problems = Vec::new();
    for k in 1..=8u32 {
        let m = manifold(k);
        let rep = build_rep(k).unwrap();
        let plus = kernel_dim_oracle(&rep, &m, SpinStructure::Plus, 1e-9).unwrap();
        let formula = harmonic_dim(&m, SpinStructure::Plus);
        if plus != formula {
            problems.push(format!("k = {k} plus: oracle {plus}, formula {formula}"));
        }
        let minus = kernel_dim_oracle(&rep, &m, SpinStructure::Minus, 1e-9).unwrap();
        if minus != 0 {
            problems.push(format!("k = {k} minus: oracle {minus}"));
        }
    }
    Verdict::new(problems, "k <= 8")
}

fn representation() -> Verdict {
    let mut problems = Vec::new();
    for k in 1..=5u32 {
        let rep = build_rep(k).unwrap();
        for c in rep.full_report(1e-12, 1e-9, 1e-10) {
            if !c.passed {
                problems.push(format!("k = {k}: {c}"));
            }
        }
    }
    Verdict::new(problems, "k <= 5")
}

fn zeta() -> Verdict {
    let mut problems = Vec::new();
    for j in 1..=20 {
        let a = j as f64 / 20.0;
        let got = hurwitz_zeta(0.0, a).unwrap().value;
        if (got - (0.5 - a)).abs() > 1e-10 {
            problems.push(format!("zeta(0, {a}) = {got}"));
        }
    }
    for k in [1u32, 3, 5, 7] {
        let m = manifold(k);
        for s in SpinStructure::ALL {
            let exact = eta(&m, s).value.to_f64();
            let numeric = eta_numeric(&m, 0.0, s).unwrap();
            if (numeric - exact).abs() > 1e-8 {
                problems.push(format!("k = {k} {s}: {numeric} vs {exact}"));
            }
        }
    }
    Verdict::new(problems, "20-point grid, odd k <= 7")
}

fn golden() -> Verdict {
    let got = render_table(
        &FchdManifold::from_dim(7).unwrap(),
        SpinStructure::Plus,
        OutputFormat::Text,
    );
    let problems = if got == GOLDEN_N7_PLUS {
        vec![]
    } else {
        vec![format!("rendered:\n{got}")]
    };
    Verdict::new(problems, "byte-for-byte")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("example one reproduction", example_one),
        ("multiplicity conservation", conservation),
        ("eta parity between structures", parity),
        ("integrality for primes 3 mod 4", integrality),
        ("denominator law", denominator_law),
        ("harmonic spinor dimensions", harmonic),
        ("spectral oracle equivalence", spectral_oracle),
        ("kernel oracle equivalence", kernel_oracle),
        ("representation integrity", representation),
        ("zeta regularization", zeta),
        ("golden n = 7 table", golden),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        let tag = if v.passed { "PASS" } else { "FAIL" };
        if !v.passed {
            failed += 1;
        }
        println!("{tag} {:>2}. {name}: {}", i + 1, v.detail);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
