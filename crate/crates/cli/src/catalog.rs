//! Serializable catalog rows and the sweep that produces them.

use std::collections::BTreeMap;

use fchd_core::combinatorics::multiplicity_table;
use fchd_core::invariants::{check_corollary1, check_corollary2, eta, harmonic_dim, EtaResult};
use fchd_core::oracle::{build_rep, kernel_dim_oracle, rep::MAX_REP_K, windowed_spectrum};
use fchd_core::{ExactRational, FchdManifold, SpinStructure};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MAX_SWEEP_K: u32 = 25;

const ORACLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPair {
    pub numerator: i64,
    pub denominator: i64,
}

impl From<&ExactRational> for RationalPair {
    fn from(q: &ExactRational) -> Self {
        Self {
            numerator: q.numerator().to_i64().expect("eta numerator fits in i64"),
            denominator: q
                .denominator()
                .to_i64()
                .expect("eta denominator fits in i64"),
        }
    }
}

impl RationalPair {
    pub fn to_exact(self) -> ExactRational {
        ExactRational::new(self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub n: u32,
    pub k: u32,
    pub structure: String,
    pub multiplicities: Vec<u64>,
    pub eta: RationalPair,
    pub harmonic_dim: u64,
    pub checks: BTreeMap<String, String>,
}

pub fn prop1_verdict(m: &FchdManifold, s: SpinStructure, dim: u64) -> (&'static str, &'static str) {
    match s {
        SpinStructure::Plus => {
            let claimed = m.n() >= 5;
            let v = if (dim > 0) == claimed {
                "consistent"
            } else {
                "discrepancy"
            };
            ("prop1a", v)
        }
        SpinStructure::Minus => (
            "prop1b",
            if dim == 0 {
                "consistent"
            } else {
                "discrepancy"
            },
        ),
    }
}

/// Kernel count and, for odd `k`, the folded window spectrum against the
/// closed forms. `None` above the representation cap.
pub fn oracle_agreement(m: &FchdManifold, s: SpinStructure) -> Option<String> {
    if m.k() > MAX_REP_K {
        return None;
    }
    let rep = build_rep(m.k()).ok()?;
    let kernel = kernel_dim_oracle(&rep, m, s, ORACLE_TOL).ok()?;
    let formula = harmonic_dim(m, s);
    let mut problems = Vec::new();
    if kernel != formula {
        problems.push(format!("kernel {kernel} vs formula {formula}"));
    }
    if m.k_is_odd() {
        let spec = windowed_spectrum(&rep, m, s, 3 * m.n() as i64, ORACLE_TOL).ok()?;
        let bad = spec.fold_mismatches(&multiplicity_table(m, s));
        if !bad.is_empty() {
            problems.push(format!("spectrum differs at residues {bad:?}"));
        }
    }
    Some(if problems.is_empty() {
        "agree".to_string()
    } else {
        format!("disagree: {}", problems.join("; "))
    })
}

pub fn catalog_entry(m: &FchdManifold, s: SpinStructure, with_oracle: bool) -> CatalogEntry {
    let EtaResult { value, table, .. } = eta(m, s);
    let dim = harmonic_dim(m, s);
    let mut checks = BTreeMap::new();
    checks.insert(
        "corollary1".to_string(),
        check_corollary1(m, s).as_str().to_string(),
    );
    checks.insert(
        "corollary2".to_string(),
        check_corollary2(m).as_str().to_string(),
    );
    let (key, verdict) = prop1_verdict(m, s, dim);
    checks.insert(key.to_string(), verdict.to_string());
    if with_oracle {
        let v = oracle_agreement(m, s).unwrap_or_else(|| format!("skipped (k > {MAX_REP_K})"));
        checks.insert("oracle_agreement".to_string(), v);
    }
    CatalogEntry {
        n: m.n(),
        k: m.k(),
        structure: s.as_str().to_string(),
        multiplicities: table.counts().to_vec(),
        eta: RationalPair::from(&value),
        harmonic_dim: dim,
        checks,
    }
}

/// Entries for `k_min..=k_max`, ordered by `k` then plus before minus.
pub fn sweep(
    k_min: u32,
    k_max: u32,
    structures: &[SpinStructure],
    with_oracle: bool,
) -> Vec<CatalogEntry> {
    (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let m = FchdManifold::new(k as i64).expect("k >= 1");
            structures
                .iter()
                .map(|&s| catalog_entry(&m, s, with_oracle))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
