//! The manifold family, its two spin structures, and the integer holonomy
//! matrix.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A member of the family: dimension `n = 2k + 1`, holonomy `Z_n`.
///
/// `delta` stores `2·c(k)`, which is 1 when `k(k+1)/2` is odd and 0 otherwise,
/// so every residue computation downstream stays in the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FchdManifold {
    k: u32,
    n: u32,
    delta: u8,
}

impl FchdManifold {
    pub fn new(k: i64) -> Result<Self> {
        if k < 1 || k > (u32::MAX as i64 - 1) / 2 {
            return Err(Error::InvalidK(k));
        }
        let k = k as u32;
        let triangular = (k as u64) * (k as u64 + 1) / 2;
        Ok(Self {
            k,
            n: 2 * k + 1,
            delta: (triangular % 2) as u8,
        })
    }

    /// Builds the manifold of dimension `dim`; `dim` must be odd and at least 3.
    pub fn from_dim(dim: i64) -> Result<Self> {
        if dim < 3 || dim % 2 == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        Self::new((dim - 1) / 2)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }

    /// `k(k+1)/2`, the exponent in `alpha^n = (-1)^{k(k+1)/2}`.
    pub fn triangular(&self) -> u64 {
        (self.k as u64) * (self.k as u64 + 1) / 2
    }

    pub fn k_is_odd(&self) -> bool {
        self.k % 2 == 1
    }

    pub fn holonomy_matrix(&self) -> HolonomyMatrix {
        HolonomyMatrix::for_manifold(self)
    }
}

impl fmt::Display for FchdManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M^{} (k = {})", self.n, self.k)
    }
}

/// The two lifts of the holonomy generator to `Spin(n)`:
/// `alpha_+^n = 1` and `alpha_-^n = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinStructure {
    Plus,
    Minus,
}

impl SpinStructure {
    pub const ALL: [SpinStructure; 2] = [SpinStructure::Plus, SpinStructure::Minus];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpinStructure::Plus => "plus",
            SpinStructure::Minus => "minus",
        }
    }
}

impl fmt::Display for SpinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpinStructure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(SpinStructure::Plus),
            "minus" | "-" => Ok(SpinStructure::Minus),
            other => Err(format!("unknown spin structure `{other}`")),
        }
    }
}

/// Square integer matrix, row-major. Columns are the images of the lattice
/// basis vectors `a_1, ..., a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl HolonomyMatrix {
    /// `A(a_j) = a_{j+1}` for `j < n-1`, `A(a_{n-1}) = -(a_1 + ... + a_{n-1})`,
    /// `A(a_n) = a_n`.
    pub fn for_manifold(m: &FchdManifold) -> Self {
        let n = m.n() as usize;
        let mut a = Self::zeros(n);
        for col in 0..n - 2 {
            a.set(col + 1, col, 1);
        }
        for row in 0..n - 1 {
            a.set(row, n - 2, -1);
        }
        a.set(n - 1, n - 1, 1);
        a
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: i64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * other.get(l, j);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Coefficients of `det(A - zI)`, lowest degree first, computed exactly by
    /// the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let d = self.dim;
        let a: Vec<BigInt> = self.entries.iter().map(|&x| BigInt::from(x)).collect();
        // monic[i] is the coefficient of z^i in det(zI - A)
        let mut monic = vec![BigInt::zero(); d + 1];
        monic[d] = BigInt::one();
        let mut m = vec![BigInt::zero(); d * d];
        for step in 1..=d {
            let prev_coeff = monic[d + 1 - step].clone();
            // M_step = A * M_{step-1} + c_{d-step+1} I
            let mut next = big_matmul(&a, &m, d);
            for i in 0..d {
                next[i * d + i] += &prev_coeff;
            }
            let am = big_matmul(&a, &next, d);
            let trace: BigInt = (0..d).map(|i| am[i * d + i].clone()).sum();
            let coeff = -trace / BigInt::from(step);
            monic[d - step] = coeff;
            m = next;
        }
        // det(A - zI) = (-1)^d det(zI - A)
        if d % 2 == 1 {
            for c in &mut monic {
                *c = -c.clone();
            }
        }
        monic
    }
}

fn big_matmul(a: &[BigInt], b: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d * d];
    for i in 0..d {
        for l in 0..d {
            let x = &a[i * d + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * &b[l * d + j];
            }
        }
    }
    out
}
