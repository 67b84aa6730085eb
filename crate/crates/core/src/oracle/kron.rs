//! Operators on `(C^2)^{⊗k}` stored as `coeff · F_1 ⊗ ... ⊗ F_k`.
//!
//! Products are exact factorwise; sums are supported when the operands differ
//! in at most one slot. Slot 1 is the leftmost factor and indexes the highest
//! bit of a dense vector.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};

const PIVOT_TIE: f64 = 1e-9;
const FACTOR_MATCH: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct KronOperator {
    coeff: C64,
    factors: Vec<ComplexMatrix>,
}

impl KronOperator {
    pub fn identity(k: u32) -> Self {
        Self {
            coeff: ONE,
            factors: vec![ComplexMatrix::identity(2); k as usize],
        }
    }

    pub fn from_factors(coeff: C64, factors: Vec<ComplexMatrix>) -> Self {
        assert!(factors.iter().all(|f| f.dim() == 2), "factors must be 2x2");
        Self { coeff, factors }
    }

    pub fn k(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn dim(&self) -> usize {
        1 << self.factors.len()
    }

    pub fn coeff(&self) -> C64 {
        self.coeff
    }

    pub fn factors(&self) -> &[ComplexMatrix] {
        &self.factors
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k(), other.k());
        Self {
            coeff: self.coeff * other.coeff,
            factors: self
                .factors
                .iter()
                .zip(&other.factors)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            coeff: self.coeff * c,
            factors: self.factors.clone(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            coeff: self.coeff.conj(),
            factors: self.factors.iter().map(ComplexMatrix::adjoint).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::identity(self.k()), |acc, _| acc.mul(self))
    }

    /// Rescales each factor so its first (near-)largest entry is 1.
    fn normalized(&self) -> Self {
        let mut coeff = self.coeff;
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let max = f.max_abs();
            if max == 0.0 {
                return Self {
                    coeff: ZERO,
                    factors: vec![ComplexMatrix::identity(2); self.factors.len()],
                };
            }
            let pivot = (0..4)
                .map(|idx| f[(idx / 2, idx % 2)])
                .find(|z| z.norm() >= max * (1.0 - PIVOT_TIE))
                .expect("some entry attains the max");
            coeff *= pivot;
            factors.push(f.scale(ONE / pivot));
        }
        if coeff == ZERO {
            factors = vec![ComplexMatrix::identity(2); self.factors.len()];
        }
        Self { coeff, factors }
    }

    fn differing_slots(a: &Self, b: &Self) -> Vec<usize> {
        (0..a.factors.len())
            .filter(|&i| a.factors[i].max_abs_diff(&b.factors[i]) > FACTOR_MATCH)
            .collect()
    }

    /// `self + other` if the result is again a single tensor product.
    pub fn try_add(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.k(), other.k());
        let (a, b) = (self.normalized(), other.normalized());
        if a.coeff == ZERO {
            return Some(other.clone());
        }
        if b.coeff == ZERO {
            return Some(self.clone());
        }
        match Self::differing_slots(&a, &b).as_slice() {
            [] => Some(Self {
                coeff: a.coeff + b.coeff,
                factors: a.factors,
            }),
            [s] => {
                let mut factors = a.factors.clone();
                factors[*s] = a.factors[*s]
                    .scale(a.coeff)
                    .add(&b.factors[*s].scale(b.coeff));
                Some(Self {
                    coeff: ONE,
                    factors,
                })
            }
            _ => None,
        }
    }

    /// Largest entrywise modulus of `self - other` as dense matrices.
    ///
    /// Exact when the operands differ in at most one slot, or when the
    /// dimension is small enough to materialize; otherwise falls back to the
    /// larger coefficient, which exceeds any reasonable tolerance.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.k(), other.k());
        let (a, b) = (self.normalized(), other.normalized());
        let slots = Self::differing_slots(&a, &b);
        let rest = |skip: Option<usize>| -> f64 {
            a.factors
                .iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != skip)
                .map(|(_, f)| f.max_abs())
                .product()
        };
        match slots.as_slice() {
            [] => (a.coeff - b.coeff).norm() * rest(None),
            [s] => {
                let diff = a.factors[*s]
                    .scale(a.coeff)
                    .add(&b.factors[*s].scale(-b.coeff));
                diff.max_abs() * rest(Some(*s))
            }
            _ if self.k() <= 8 => self.to_dense().max_abs_diff(&other.to_dense()),
            _ => a.coeff.norm().max(b.coeff.norm()),
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::identity(1).scale(self.coeff);
        for f in &self.factors {
            out = out.kron(f);
        }
        out
    }

    /// Applies the operator to a dense vector of length `2^k`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let k = self.factors.len();
        assert_eq!(v.len(), 1 << k);
        let mut out = v.to_vec();
        for (slot, f) in self.factors.iter().enumerate() {
            let bit = 1usize << (k - 1 - slot);
            let (a, b, c, d) = (f[(0, 0)], f[(0, 1)], f[(1, 0)], f[(1, 1)]);
            for idx in 0..out.len() {
                if idx & bit != 0 {
                    continue;
                }
                let (x0, x1) = (out[idx], out[idx | bit]);
                out[idx] = a * x0 + b * x1;
                out[idx | bit] = c * x0 + d * x1;
            }
        }
        for z in &mut out {
            *z *= self.coeff;
        }
        out
    }
}

/// Dense product state `w_1 ⊗ ... ⊗ w_k`.
pub fn product_state(parts: &[[C64; 2]]) -> Vec<C64> {
    let mut out = vec![ONE];
    for w in parts {
        out = out.iter().flat_map(|&x| [x * w[0], x * w[1]]).collect();
    }
    out
}
