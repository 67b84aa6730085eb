//! Exact eta invariants, harmonic spinor counts, and the integrality and
//! parity checks that follow from them.

use std::fmt;

use crate::combinatorics::{multiplicity_table, MultiplicityTable};
use crate::manifold::{FchdManifold, SpinStructure};
use crate::rational::ExactRational;

/// Which closed form produced an eta value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaBranch {
    /// `k` odd: weighted residue sum over the table.
    OddK,
    /// `k` even: the spectrum is symmetric and eta vanishes.
    EvenKVanishing,
}

impl fmt::Display for EtaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaBranch::OddK => f.write_str("k odd: residue-weighted sum"),
            EtaBranch::EvenKVanishing => f.write_str("k even: eta vanishes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaResult {
    pub manifold: FchdManifold,
    pub structure: SpinStructure,
    pub value: ExactRational,
    pub table: MultiplicityTable,
    pub branch: EtaBranch,
}

pub fn eta(m: &FchdManifold, s: SpinStructure) -> EtaResult {
    let table = multiplicity_table(m, s);
    let (value, branch) = if m.k_is_odd() {
        (eta_from_table(&table), EtaBranch::OddK)
    } else {
        (ExactRational::zero(), EtaBranch::EvenKVanishing)
    };
    EtaResult {
        manifold: *m,
        structure: s,
        value,
        table,
        branch,
    }
}

/// Plus: `Σ_{r=1}^{n-1} A_r (n - 2r)/n`. Minus: `Σ_{r=0}^{n-1} A_r (n - 2r - 1)/n`.
///
/// The plus sum skips `r = 0`: that class is symmetric under `λ ↦ -λ`.
pub fn eta_from_table(table: &MultiplicityTable) -> ExactRational {
    let n = table.n() as i64;
    let (start, offset) = match table.structure() {
        SpinStructure::Plus => (1, 0),
        SpinStructure::Minus => (0, 1),
    };
    (start..table.n())
        .map(|r| {
            let weight = n - 2 * r as i64 - offset;
            ExactRational::new(table.get(r) as i64 * weight, n)
        })
        .sum()
}

/// Dimension of the space of harmonic spinors.
///
/// Plus returns `A_0^+ = 2 #{ε ∈ D_+ : μ_ε/2 + c(k)n ≡ 0 (mod n)}`. Minus is
/// always 0, since `g^n = -id` leaves no nonzero fixed spinor.
///
/// The plus count doubles the `D_+` solutions, pairing `ε` with `-ε ∈ D_-`.
/// That pairing only holds for odd `k`; for `k ≡ 0 (mod 4)` the fixed space of
/// `α_+` can be smaller than this count (see `oracle::kernel_dim_oracle`).
pub fn harmonic_dim(m: &FchdManifold, s: SpinStructure) -> u64 {
    match s {
        SpinStructure::Plus => multiplicity_table(m, s).get(0),
        SpinStructure::Minus => 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary1Verdict {
    ApplicableIntegral,
    ApplicableNonIntegral,
    NotApplicable,
}

impl Corollary1Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Corollary1Verdict::ApplicableIntegral => "applicable_integral",
            Corollary1Verdict::ApplicableNonIntegral => "applicable_non_integral",
            Corollary1Verdict::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for Corollary1Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Primes `n > 3` with `4 | n + 1` must have integral eta.
pub fn corollary1_applies(n: u32) -> bool {
    n > 3 && is_prime(n as u64) && (n + 1).is_multiple_of(4)
}

pub fn check_corollary1(m: &FchdManifold, s: SpinStructure) -> Corollary1Verdict {
    if !corollary1_applies(m.n()) {
        return Corollary1Verdict::NotApplicable;
    }
    if eta(m, s).value.is_integer() {
        Corollary1Verdict::ApplicableIntegral
    } else {
        Corollary1Verdict::ApplicableNonIntegral
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corollary2Verdict {
    InTwoZ { difference: ExactRational },
    Violation { difference: ExactRational },
}

impl Corollary2Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Corollary2Verdict::InTwoZ { .. })
    }

    pub fn difference(&self) -> &ExactRational {
        match self {
            Corollary2Verdict::InTwoZ { difference }
            | Corollary2Verdict::Violation { difference } => difference,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Corollary2Verdict::InTwoZ { .. } => "in_two_z",
            Corollary2Verdict::Violation { .. } => "violation",
        }
    }
}

/// `η(α_+) - η(α_-) ∈ 2Z`. For even `k` both vanish and the difference is 0.
pub fn check_corollary2(m: &FchdManifold) -> Corollary2Verdict {
    let difference = eta(m, SpinStructure::Plus).value - eta(m, SpinStructure::Minus).value;
    if difference.is_even_integer() {
        Corollary2Verdict::InTwoZ { difference }
    } else {
        Corollary2Verdict::Violation { difference }
    }
}

/// One row of the positivity report for harmonic spinors under `α_+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prop1aRow {
    pub k: u32,
    pub n: u32,
    pub harmonic_dim_plus: u64,
    pub positive: bool,
    /// The published threshold: positive exactly when `n >= 5`.
    pub claimed_positive: bool,
}

impl Prop1aRow {
    pub fn agrees(&self) -> bool {
        self.positive == self.claimed_positive
    }
}

/// Tabulates `harmonic_dim(·, Plus) > 0` against the threshold `n >= 5` for
/// `k = 1..=k_max`. Disagreements are reported in the rows, not reconciled.
pub fn check_proposition1a(k_max: u32) -> Vec<Prop1aRow> {
    (1..=k_max)
        .map(|k| {
            let m = FchdManifold::new(k as i64).expect("k >= 1");
            let dim = harmonic_dim(&m, SpinStructure::Plus);
            Prop1aRow {
                k,
                n: m.n(),
                harmonic_dim_plus: dim,
                positive: dim > 0,
                claimed_positive: m.n() >= 5,
            }
        })
        .collect()
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
