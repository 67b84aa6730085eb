//! Hurwitz zeta `ζ(s, a) = Σ_{m≥0} (m + a)^{-s}` continued by Euler–Maclaurin
//! summation, and the eta function assembled from it.

use std::f64::consts::PI;

use crate::combinatorics::multiplicity_table;
use crate::error::{Error, Result};
use crate::manifold::{FchdManifold, SpinStructure};

/// Terms summed directly before the Euler–Maclaurin tail takes over.
pub const DIRECT_TERMS: usize = 50;

/// `B_2, B_4, ..., B_12` followed by `B_14`, which only feeds the error estimate.
const BERNOULLI_EVEN: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const POLE_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEval {
    pub s: f64,
    pub a: f64,
    pub value: f64,
    /// Magnitude of the first omitted Bernoulli correction.
    pub est_error: f64,
}

pub fn hurwitz_zeta(s: f64, a: f64) -> Result<ZetaEval> {
    if a.is_nan() || a <= 0.0 || !a.is_finite() {
        return Err(Error::ZetaParameter(a));
    }
    if (s - 1.0).abs() < POLE_GUARD {
        return Err(Error::ZetaPole(s));
    }
    let x = DIRECT_TERMS as f64 + a;
    let pole = x.powf(1.0 - s) / (s - 1.0);
    let (head, tail, est_error) = head_and_tail(s, a);
    Ok(ZetaEval {
        s,
        a,
        value: head + pole + tail,
        est_error,
    })
}

/// `ζ(s, a) - ζ(s, b)`, finite at `s = 1` where the poles cancel.
pub fn hurwitz_zeta_difference(s: f64, a: f64, b: f64) -> Result<ZetaEval> {
    for p in [a, b] {
        if p.is_nan() || p <= 0.0 || !p.is_finite() {
            return Err(Error::ZetaParameter(p));
        }
    }
    let (head_a, tail_a, err_a) = head_and_tail(s, a);
    let (head_b, tail_b, err_b) = head_and_tail(s, b);
    let xa = DIRECT_TERMS as f64 + a;
    let xb = DIRECT_TERMS as f64 + b;
    // (xa^u - xb^u) / (-u) with u = 1 - s, written to survive u -> 0
    let u = 1.0 - s;
    let (la, lb) = (xa.ln(), xb.ln());
    let d = la - lb;
    let ratio = if (u * d).abs() < 1e-300 {
        d
    } else {
        (u * d).exp_m1() / u
    };
    let pole_diff = -(u * lb).exp() * ratio;
    Ok(ZetaEval {
        s,
        a,
        value: (head_a - head_b) + pole_diff + (tail_a - tail_b),
        est_error: err_a + err_b,
    })
}

/// Partial sum, the `½ x^{-s}` boundary term plus Bernoulli corrections, and
/// the first omitted correction.
fn head_and_tail(s: f64, a: f64) -> (f64, f64, f64) {
    let head: f64 = (0..DIRECT_TERMS).map(|m| (m as f64 + a).powf(-s)).sum();
    let x = DIRECT_TERMS as f64 + a;
    let mut tail = 0.5 * x.powf(-s);
    // rising = s (s+1) ... (s + 2j - 2), fact = (2j)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut est_error = 0.0;
    for (idx, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = idx as i32 + 1;
        let term = b / fact * rising * x.powf(-s - (2 * j - 1) as f64);
        if idx + 1 == BERNOULLI_EVEN.len() {
            est_error = term.abs();
        } else {
            tail += term;
        }
        let next = 2.0 * j as f64;
        rising *= (s + next - 1.0) * (s + next);
        fact *= (next + 1.0) * (next + 2.0);
    }
    (head, tail, est_error)
}

/// `η(z)` of the asymmetric part of the spectrum, for odd `k`:
///
/// plus: `Σ_{r=1}^{n-1} A_r (2πn)^{-z} [ζ(z, r/n) - ζ(z, 1 - r/n)]`,
/// minus: `Σ_{r=0}^{n-1} A_r (2πn)^{-z} [ζ(z, a_r) - ζ(z, 1 - a_r)]` with
/// `a_r = (2r+1)/(2n)`.
///
/// At `z = 0` the prefactor is 1 and the value is the eta invariant.
pub fn eta_numeric(m: &FchdManifold, s_eval: f64, structure: SpinStructure) -> Result<f64> {
    if !m.k_is_odd() {
        return Err(Error::EvenK(m.k()));
    }
    let n = m.n();
    let table = multiplicity_table(m, structure);
    let scale = (2.0 * PI * n as f64).powf(-s_eval);
    let mut total = 0.0;
    for r in 0..n {
        let count = table.get(r);
        let a = match structure {
            SpinStructure::Plus if r == 0 => continue,
            SpinStructure::Plus => r as f64 / n as f64,
            SpinStructure::Minus => (2 * r + 1) as f64 / (2 * n) as f64,
        };
        if count == 0 {
            continue;
        }
        let diff = hurwitz_zeta_difference(s_eval, a, 1.0 - a)?;
        total += count as f64 * diff.value;
    }
    Ok(scale * total)
}
