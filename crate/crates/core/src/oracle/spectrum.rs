//! Equivariant Dirac eigensections `f_b v_ε` with `b` on the `e_n` axis,
//! found by testing invariance under the holonomy lift directly.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::matrix::{max_abs_diff_vec, C64, I};
use super::rep::SpinorRep;
use crate::combinatorics::{MultiplicityTable, SignVector};
use crate::error::{Error, Result};
use crate::manifold::{FchdManifold, SpinStructure};

/// One invariant section `f_b v_ε`, `b = l e_n` (plus) or `(l + ½) e_n`
/// (minus), with its Dirac eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenSection {
    pub epsilon: SignVector,
    pub l: i64,
    pub structure: SpinStructure,
    /// Twice the eigenvalue in units of `2π`; odd exactly for the minus structure.
    pub twice_eigenvalue: i64,
}

impl EigenSection {
    /// Eigenvalue in units of `2π`.
    pub fn eigenvalue(&self) -> f64 {
        self.twice_eigenvalue as f64 / 2.0
    }
}

#[derive(Debug, Clone)]
pub struct WindowedSpectrum {
    pub n: u32,
    pub structure: SpinStructure,
    pub window: i64,
    pub sections: Vec<EigenSection>,
    /// Keyed by twice the eigenvalue in units of `2π`.
    pub multiplicities: BTreeMap<i64, u64>,
    /// Sign vectors whose state failed to be an `e_n` eigenvector.
    pub anomalies: Vec<SignVector>,
}

impl WindowedSpectrum {
    pub fn multiplicity(&self, twice_eigenvalue: i64) -> u64 {
        self.multiplicities
            .get(&twice_eigenvalue)
            .copied()
            .unwrap_or(0)
    }

    /// Integers `m` whose eigenvalue `m` (plus) or `m + ½` (minus) is reached
    /// from both signs of `ν` inside the window.
    pub fn covered_classes(&self) -> std::ops::RangeInclusive<i64> {
        match self.structure {
            SpinStructure::Plus => -self.window..=self.window,
            SpinStructure::Minus => -self.window..=self.window - 1,
        }
    }

    fn twice_for_class(&self, m: i64) -> i64 {
        match self.structure {
            SpinStructure::Plus => 2 * m,
            SpinStructure::Minus => 2 * m + 1,
        }
    }

    /// Multiplicity per residue class `r = m mod n`, if every covered
    /// eigenvalue in the class has the same multiplicity.
    pub fn folded_by_residue(&self) -> Vec<Option<u64>> {
        let n = self.n as i64;
        let mut folded: Vec<Option<Option<u64>>> = vec![None; self.n as usize];
        for m in self.covered_classes() {
            let r = m.rem_euclid(n) as usize;
            let mult = self.multiplicity(self.twice_for_class(m));
            folded[r] = match folded[r] {
                None => Some(Some(mult)),
                Some(Some(prev)) if prev == mult => Some(Some(prev)),
                _ => Some(None),
            };
        }
        folded.into_iter().map(Option::flatten).collect()
    }

    /// Residues where the folded spectrum disagrees with `table`.
    pub fn fold_mismatches(&self, table: &MultiplicityTable) -> Vec<u32> {
        assert_eq!(table.n(), self.n);
        self.folded_by_residue()
            .iter()
            .enumerate()
            .filter(|(r, f)| **f != Some(table.get(*r as u32)))
            .map(|(r, _)| r as u32)
            .collect()
    }

    /// Whether eigenvalues `2πm` with `m ≡ 0 (mod n)` occur with `-2πm` at
    /// equal multiplicity.
    pub fn zero_class_symmetric(&self) -> bool {
        let n = self.n as i64;
        self.covered_classes()
            .filter(|m| m.rem_euclid(n) == 0 && *m > 0)
            .all(|m| {
                let t = self.twice_for_class(m);
                self.multiplicity(t) == self.multiplicity(-t)
            })
    }
}

fn check_rep_matches(rep: &SpinorRep, m: &FchdManifold) -> Result<()> {
    if rep.k() != m.k() {
        return Err(Error::LengthMismatch {
            expected: m.k(),
            got: rep.k(),
        });
    }
    Ok(())
}

/// Reads `σ` off `e_n v = -iσ v`; `None` if `v` is not an eigenvector with
/// `σ = ±1`.
fn dirac_sign(rep: &SpinorRep, v: &[C64], tol: f64) -> Option<i64> {
    let en_v = rep.e(rep.n() as usize).apply(v);
    let pivot = (0..v.len()).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))?;
    let c = en_v[pivot] / v[pivot];
    let sigma = (I * c).re.round();
    if sigma.abs() != 1.0 || (I * c - sigma).norm() > tol {
        return None;
    }
    let want: Vec<C64> = v.iter().map(|x| x * c).collect();
    (max_abs_diff_vec(&en_v, &want) <= tol).then_some(sigma as i64)
}

/// Every invariant section with `|l| <= window`.
///
/// For each `ε ∈ {-1,1}^k` and each `l`, the section `f_b v_ε` is kept when
/// `α_± v_ε = e^{2πi⟨b, a⟩} v_ε` within `tol`, where `⟨b, a⟩ = l/n` (plus) or
/// `(l + ½)/n` (minus). Its eigenvalue is `σ·l` or `σ·(l + ½)` with `σ` read
/// from the action of `e_n`.
pub fn windowed_spectrum(
    rep: &SpinorRep,
    m: &FchdManifold,
    s: SpinStructure,
    window: i64,
    tol: f64,
) -> Result<WindowedSpectrum> {
    check_rep_matches(rep, m)?;
    let n = m.n() as f64;
    let lift = rep.lift(s);
    let mut sections = Vec::new();
    let mut anomalies = Vec::new();
    for eps in SignVector::all(m.k()) {
        let v = rep.sign_state(&eps);
        let Some(sigma) = dirac_sign(rep, &v, tol) else {
            anomalies.push(eps);
            continue;
        };
        let gv = lift.apply(&v);
        for l in -window..=window {
            let twice_frac = match s {
                SpinStructure::Plus => 2 * l,
                SpinStructure::Minus => 2 * l + 1,
            };
            let phase = C64::from_polar(1.0, PI * twice_frac as f64 / n);
            let invariant = gv
                .iter()
                .zip(&v)
                .all(|(a, b)| (a - phase * b).norm() <= tol);
            if invariant {
                sections.push(EigenSection {
                    epsilon: eps,
                    l,
                    structure: s,
                    twice_eigenvalue: sigma * twice_frac,
                });
            }
        }
    }
    let mut multiplicities = BTreeMap::new();
    for sec in &sections {
        *multiplicities.entry(sec.twice_eigenvalue).or_insert(0) += 1;
    }
    Ok(WindowedSpectrum {
        n: m.n(),
        structure: s,
        window,
        sections,
        multiplicities,
        anomalies,
    })
}

/// Dimension of the harmonic spinors: sign-vector states over all of
/// `{-1,1}^k` fixed by the lift.
pub fn kernel_dim_oracle(
    rep: &SpinorRep,
    m: &FchdManifold,
    s: SpinStructure,
    tol: f64,
) -> Result<u64> {
    check_rep_matches(rep, m)?;
    let lift = rep.lift(s);
    Ok(SignVector::all(m.k())
        .filter(|eps| {
            let v = rep.sign_state(eps);
            max_abs_diff_vec(&lift.apply(&v), &v) <= tol
        })
        .count() as u64)
}
