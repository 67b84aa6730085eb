//! Sign vectors `ε ∈ {-1,1}^k`, the weights `μ_ε = Σ ε_j j` and
//! `ν(ε) = ε_1 ⋯ ε_k`, and the residue tables `A_r^±`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::manifold::{FchdManifold, SpinStructure};

/// Largest `k` for which full enumeration of `{-1,1}^k` is supported.
pub const MAX_ENUM_K: u32 = 32;

/// Bit `j - 1` set means `ε_j = +1`, clear means `ε_j = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: u64,
    k: u32,
}

impl SignVector {
    pub fn new(bits: u64, k: u32) -> Self {
        assert!(
            (1..=MAX_ENUM_K).contains(&k),
            "sign vector length out of range"
        );
        assert!(bits >> k == 0, "bits beyond length {k}");
        Self { bits, k }
    }

    /// From explicit entries; each must be `1` or `-1`.
    pub fn from_signs(signs: &[i8]) -> Self {
        let mut bits = 0;
        for (j, &s) in signs.iter().enumerate() {
            match s {
                1 => bits |= 1 << j,
                -1 => {}
                _ => panic!("sign vector entries must be +1 or -1, got {s}"),
            }
        }
        Self::new(bits, signs.len() as u32)
    }

    pub fn all_plus(k: u32) -> Self {
        Self::new(mask(k), k)
    }

    pub fn all_minus(k: u32) -> Self {
        Self::new(0, k)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `ε_j` for `j` in `1..=k`.
    pub fn sign(&self, j: u32) -> i8 {
        if self.bits >> (j - 1) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (1..=self.k).map(|j| self.sign(j)).collect()
    }

    pub fn negated(&self) -> Self {
        Self::new(!self.bits & mask(self.k), self.k)
    }

    pub fn minus_count(&self) -> u32 {
        self.k - self.bits.count_ones()
    }

    /// `μ_ε = Σ_j ε_j j`.
    pub fn mu(&self) -> i64 {
        let mut plus_weight = 0i64;
        let mut b = self.bits;
        while b != 0 {
            let j = b.trailing_zeros() as i64 + 1;
            plus_weight += j;
            b &= b - 1;
        }
        let total = self.k as i64 * (self.k as i64 + 1) / 2;
        2 * plus_weight - total
    }

    /// `ν(ε) = ε_1 ⋯ ε_k`.
    pub fn nu(&self) -> i8 {
        if self.minus_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Every vector of length `k` in ascending bit order.
    pub fn all(k: u32) -> impl Iterator<Item = SignVector> {
        assert!((1..=MAX_ENUM_K).contains(&k));
        (0..1u64 << k).map(move |bits| SignVector { bits, k })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for j in 1..=self.k {
            if j > 1 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.sign(j))?;
        }
        f.write_str(")")
    }
}

fn mask(k: u32) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// `D_+ = {ε : ν(ε) = 1}`, ascending bit order. Yields `2^{k-1}` vectors.
pub fn enumerate_dplus(k: u32) -> impl Iterator<Item = SignVector> {
    SignVector::all(k).filter(|e| e.nu() == 1)
}

/// `μ_ε/2 + c(k)n`, plus `k` for the minus structure. May be negative.
///
/// This is the middle column of the residue tables; `residue` reduces it.
pub fn shifted_half_mu(eps: &SignVector, m: &FchdManifold, s: SpinStructure) -> Result<i64> {
    if eps.len() != m.k() {
        return Err(Error::LengthMismatch {
            expected: m.k(),
            got: eps.len(),
        });
    }
    Ok(shifted_half_mu_unchecked(eps, m, s))
}

fn shifted_half_mu_unchecked(eps: &SignVector, m: &FchdManifold, s: SpinStructure) -> i64 {
    let twice = eps.mu() + m.delta() as i64 * m.n() as i64;
    assert!(
        twice % 2 == 0,
        "mu + delta*n must be even (mu = {}, n = {})",
        eps.mu(),
        m.n()
    );
    let shift = match s {
        SpinStructure::Plus => 0,
        SpinStructure::Minus => m.k() as i64,
    };
    twice / 2 + shift
}

/// The class `r ∈ [0, n)` with `μ_ε/2 + c(k)n (+ k) ≡ r (mod n)`.
pub fn residue(eps: &SignVector, m: &FchdManifold, s: SpinStructure) -> Result<u32> {
    Ok(shifted_half_mu(eps, m, s)?.rem_euclid(m.n() as i64) as u32)
}

/// The doubled residue counts `A_r = 2 #{ε ∈ D_+ : residue(ε) = r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    n: u32,
    structure: SpinStructure,
    counts: Vec<u64>,
}

impl MultiplicityTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn structure(&self) -> SpinStructure {
        self.structure
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, r: u32) -> u64 {
        self.counts[r as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Residues with a nonzero count, ascending.
    pub fn support(&self) -> Vec<u32> {
        (0..self.n).filter(|&r| self.get(r) != 0).collect()
    }
}

pub fn multiplicity_table(m: &FchdManifold, s: SpinStructure) -> MultiplicityTable {
    let k = m.k();
    assert!(k <= MAX_ENUM_K, "enumeration capped at k = {MAX_ENUM_K}");
    let n = m.n() as usize;
    let tally = |mut acc: Vec<u64>, bits: u64| {
        let eps = SignVector { bits, k };
        if eps.nu() == 1 {
            let r = shifted_half_mu_unchecked(&eps, m, s).rem_euclid(n as i64) as usize;
            acc[r] += 1;
        }
        acc
    };
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let half_counts = if k < 14 {
        (0..1u64 << k).fold(vec![0; n], tally)
    } else {
        (0..1u64 << k)
            .into_par_iter()
            .fold(|| vec![0; n], tally)
            .reduce(|| vec![0; n], merge)
    };
    MultiplicityTable {
        n: m.n(),
        structure: s,
        counts: half_counts.into_iter().map(|c| 2 * c).collect(),
    }
}

/// Whether `α_+ v_ε = v_ε`, phrased as `μ_ε ≡ δ n (mod 2n)`.
///
/// Equivalent to `residue(ε, m, Plus) == 0`; kept separate so the two
/// formulations can be checked against each other.
pub fn fixed_by_alpha_plus_mod_2n(eps: &SignVector, m: &FchdManifold) -> bool {
    let two_n = 2 * m.n() as i64;
    (eps.mu() - m.delta() as i64 * m.n() as i64).rem_euclid(two_n) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn man(k: i64) -> FchdManifold {
        FchdManifold::new(k).unwrap()
    }

    #[test]
    fn mu_examples() {
        assert_eq!(SignVector::from_signs(&[1, 1, 1]).mu(), 6);
        assert_eq!(SignVector::from_signs(&[-1, -1, 1]).mu(), 0);
        for k in 1..=10u32 {
            let t = (k * (k + 1) / 2) as i64;
            assert_eq!(SignVector::all_minus(k).mu(), -t);
            assert_eq!(SignVector::all_plus(k).mu(), t);
        }
    }

    #[test]
    fn nu_examples() {
        assert_eq!(SignVector::from_signs(&[1, 1, 1]).nu(), 1);
        assert_eq!(SignVector::from_signs(&[1, -1, -1]).nu(), 1);
        assert_eq!(SignVector::from_signs(&[-1, 1, 1]).nu(), -1);
    }

    #[test]
    fn dplus_k3_matches_table() {
        let got: Vec<_> = enumerate_dplus(3).collect();
        let mut expected = vec![
            SignVector::from_signs(&[1, 1, 1]),
            SignVector::from_signs(&[1, -1, -1]),
            SignVector::from_signs(&[-1, 1, -1]),
            SignVector::from_signs(&[-1, -1, 1]),
        ];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn dplus_k1_and_k5() {
        assert_eq!(
            enumerate_dplus(1).collect::<Vec<_>>(),
            vec![SignVector::from_signs(&[1])]
        );
        let v: Vec<_> = enumerate_dplus(5).collect();
        assert_eq!(v.len(), 16);
        assert!(v.iter().all(|e| e.minus_count() % 2 == 0));
        assert!(v.windows(2).all(|w| w[0].bits() < w[1].bits()));
    }

    #[test]
    fn residue_examples() {
        let m7 = man(3);
        let e = SignVector::from_signs(&[1, -1, -1]);
        assert_eq!(shifted_half_mu(&e, &m7, SpinStructure::Plus).unwrap(), -2);
        assert_eq!(residue(&e, &m7, SpinStructure::Plus).unwrap(), 5);
        let e = SignVector::from_signs(&[-1, 1, -1]);
        assert_eq!(residue(&e, &m7, SpinStructure::Plus).unwrap(), 6);

        let m3 = man(1);
        let e = SignVector::from_signs(&[1]);
        assert_eq!(shifted_half_mu(&e, &m3, SpinStructure::Plus).unwrap(), 2);
        assert_eq!(residue(&e, &m3, SpinStructure::Plus).unwrap(), 2);
        assert_eq!(residue(&e, &m3, SpinStructure::Minus).unwrap(), 0);
    }

    #[test]
    fn residue_rejects_length_mismatch() {
        let e = SignVector::from_signs(&[1, 1]);
        assert_eq!(
            residue(&e, &man(3), SpinStructure::Plus),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn table_examples() {
        let t = multiplicity_table(&man(3), SpinStructure::Plus);
        assert_eq!(t.counts(), &[2, 0, 0, 2, 0, 2, 2]);
        let t = multiplicity_table(&man(1), SpinStructure::Plus);
        assert_eq!(t.counts(), &[0, 0, 2]);
        let t = multiplicity_table(&man(1), SpinStructure::Minus);
        assert_eq!(t.counts(), &[2, 0, 0]);
    }

    #[test]
    fn parallel_path_matches_sequential() {
        // k = 14 takes the rayon branch; recount it by hand.
        let m = man(14);
        for s in SpinStructure::ALL {
            let mut expected = vec![0u64; m.n() as usize];
            for e in enumerate_dplus(14) {
                expected[residue(&e, &m, s).unwrap() as usize] += 2;
            }
            assert_eq!(multiplicity_table(&m, s).counts(), expected.as_slice());
        }
    }

    #[test]
    fn mod_2n_and_mod_n_formulations_agree() {
        for k in 1..=14 {
            let m = man(k);
            for e in SignVector::all(m.k()) {
                assert_eq!(
                    fixed_by_alpha_plus_mod_2n(&e, &m),
                    residue(&e, &m, SpinStructure::Plus).unwrap() == 0,
                    "k = {k}, eps = {e}"
                );
            }
        }
    }

    #[test]
    fn display_matches_paper_layout() {
        assert_eq!(
            SignVector::from_signs(&[1, -1, -1]).to_string(),
            "(1,-1,-1)"
        );
    }
}
