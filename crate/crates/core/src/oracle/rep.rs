//! The spinor module `Σ = (C^2)^{⊗k}` with the Clifford generators
//! `e_1, ..., e_n`, the rotations `r_j`, and the two lifts `α_±`.

use std::f64::consts::PI;
use std::fmt;

use super::kron::{product_state, KronOperator};
use super::matrix::{g1, g2, max_abs_diff_vec, t, ComplexMatrix, C64, I, ONE};
use crate::combinatorics::SignVector;
use crate::error::{Error, Result};
use crate::manifold::{FchdManifold, SpinStructure};

/// Largest `k` the representation is built for (matrix dimension 4096).
pub const MAX_REP_K: u32 = 12;

/// Largest `k` for which the relation checks are repeated on dense matrices.
pub const DENSE_MAX_K: u32 = 6;

/// Largest `k` for which the Gram determinant is computed by dense elimination.
pub const GRAM_DENSE_MAX_K: u32 = 8;

/// Where the `g` factor of `e_{2p-1}`, `e_{2p}` sits among the `k` slots.
///
/// Both orders satisfy the Clifford relations. Only `TBeforeG` puts the
/// rotation `r_p` on slot `p`, which the eigenbasis `v_ε = w_{ε_1} ⊗ ... ⊗
/// w_{ε_k}` with `α v_ε = e^{iβμ_ε} v_ε` requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotOrder {
    /// `T ⊗ ... ⊗ T ⊗ g ⊗ I ⊗ ... ⊗ I`, `g` on slot `p`.
    TBeforeG,
    /// `I ⊗ ... ⊗ I ⊗ g ⊗ T ⊗ ... ⊗ T`, `g` on slot `k - p + 1`.
    GBeforeT,
}

#[derive(Debug, Clone)]
pub struct SpinorRep {
    k: u32,
    n: u32,
    order: SlotOrder,
    e: Vec<KronOperator>,
    r: Vec<KronOperator>,
    alpha: KronOperator,
    alpha_plus: KronOperator,
    alpha_minus: KronOperator,
}

pub fn build_rep(k: u32) -> Result<SpinorRep> {
    build_rep_with_order(k, SlotOrder::TBeforeG)
}

pub fn build_rep_with_order(k: u32, order: SlotOrder) -> Result<SpinorRep> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    if k > MAX_REP_K {
        return Err(Error::OracleCap { k, cap: MAX_REP_K });
    }
    let n = 2 * k + 1;
    let ku = k as usize;
    let mut e = Vec::with_capacity(n as usize);
    for j in 1..=2 * ku {
        let pair = j.div_ceil(2);
        let g = if j % 2 == 1 { g1() } else { g2() };
        let slot = match order {
            SlotOrder::TBeforeG => pair,
            SlotOrder::GBeforeT => ku - pair + 1,
        };
        let factors = (1..=ku)
            .map(|s| {
                use std::cmp::Ordering::*;
                match (s.cmp(&slot), order) {
                    (Equal, _) => g.clone(),
                    (Less, SlotOrder::TBeforeG) | (Greater, SlotOrder::GBeforeT) => t(),
                    _ => ComplexMatrix::identity(2),
                }
            })
            .collect();
        e.push(KronOperator::from_factors(ONE, factors));
    }
    // e_n = ±i T ⊗ ... ⊗ T; both signs give an irreducible module. The sign
    // (-1)^{k+1} is the one with e_n v_ε = -i ν(ε) v_ε, since T w_{±1} = ∓w_{±1}.
    let en_coeff = if k % 2 == 1 { I } else { -I };
    e.push(KronOperator::from_factors(en_coeff, vec![t(); ku]));

    let beta = PI / n as f64;
    let id = KronOperator::identity(k);
    let r: Vec<KronOperator> = (1..=ku)
        .map(|j| {
            let angle = j as f64 * beta;
            let plane = e[2 * j - 2].mul(&e[2 * j - 1]);
            id.scale(C64::new(angle.cos(), 0.0))
                .try_add(&plane.scale(C64::new(angle.sin(), 0.0)))
                .expect("e_{2j-1} e_{2j} acts on a single tensor slot")
        })
        .collect();
    let alpha = r.iter().fold(id.clone(), |acc, rj| acc.mul(rj));
    let sign = if (k as u64 * (k as u64 + 1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let alpha_plus = alpha.scale(C64::new(sign, 0.0));
    let alpha_minus = alpha.scale(C64::new(-sign, 0.0));
    Ok(SpinorRep {
        k,
        n,
        order,
        e,
        r,
        alpha,
        alpha_plus,
        alpha_minus,
    })
}

/// Named pass/fail outcome of one relation check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tol: f64,
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn from_error(name: impl Into<String>, max_error: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            passed: max_error <= tol,
            max_error,
            tol,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag}  {} (max error {:.3e}, tol {:.0e})",
            self.name, self.max_error, self.tol
        )?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

impl SpinorRep {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.k
    }

    pub fn order(&self) -> SlotOrder {
        self.order
    }

    /// `e_j` for `j` in `1..=n`.
    pub fn e(&self, j: usize) -> &KronOperator {
        &self.e[j - 1]
    }

    /// `r_j` for `j` in `1..=k`.
    pub fn r(&self, j: usize) -> &KronOperator {
        &self.r[j - 1]
    }

    pub fn alpha(&self) -> &KronOperator {
        &self.alpha
    }

    pub fn lift(&self, s: SpinStructure) -> &KronOperator {
        match s {
            SpinStructure::Plus => &self.alpha_plus,
            SpinStructure::Minus => &self.alpha_minus,
        }
    }

    fn beta(&self) -> f64 {
        PI / self.n as f64
    }

    /// `(-1)^{k(k+1)/2}`.
    fn alpha_power_sign(&self) -> f64 {
        if (self.k as u64 * (self.k as u64 + 1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `e_i e_j + e_j e_i = -2 δ_ij`.
    pub fn check_clifford(&self, tol: f64) -> CheckOutcome {
        let minus_id = KronOperator::identity(self.k).scale(-ONE);
        let mut worst = 0.0f64;
        let mut at = (0, 0);
        for i in 1..=self.n as usize {
            for j in i..=self.n as usize {
                let ij = self.e(i).mul(self.e(j));
                let err = if i == j {
                    2.0 * ij.distance(&minus_id)
                } else {
                    ij.distance(&self.e(j).mul(self.e(i)).scale(-ONE))
                };
                if err > worst {
                    worst = err;
                    at = (i, j);
                }
            }
        }
        let out = CheckOutcome::from_error("clifford anticommutation", worst, tol);
        if out.passed {
            out
        } else {
            out.with_detail(format!("worst at (e_{}, e_{})", at.0, at.1))
        }
    }

    /// The same relations on materialized dense matrices.
    pub fn check_clifford_dense(&self, tol: f64) -> Option<CheckOutcome> {
        if self.k > DENSE_MAX_K {
            return None;
        }
        let dense: Vec<ComplexMatrix> = self.e.iter().map(KronOperator::to_dense).collect();
        let zero = ComplexMatrix::zeros(self.dim());
        let minus_two = ComplexMatrix::identity(self.dim()).scale(C64::new(-2.0, 0.0));
        let mut worst = 0.0f64;
        for i in 0..dense.len() {
            for j in i..dense.len() {
                let anti = dense[i].mul(&dense[j]).add(&dense[j].mul(&dense[i]));
                let target = if i == j { &minus_two } else { &zero };
                worst = worst.max(anti.max_abs_diff(target));
            }
        }
        Some(CheckOutcome::from_error(
            "clifford anticommutation (dense)",
            worst,
            tol,
        ))
    }

    pub fn check_rotations_commute(&self, tol: f64) -> CheckOutcome {
        let mut worst = 0.0f64;
        for i in 0..self.r.len() {
            for j in i + 1..self.r.len() {
                worst = worst.max(
                    self.r[i]
                        .mul(&self.r[j])
                        .distance(&self.r[j].mul(&self.r[i])),
                );
            }
        }
        CheckOutcome::from_error("r_i r_j = r_j r_i", worst, tol)
    }

    /// `α^n = (-1)^{k(k+1)/2}`, `α_+^n = 1`, `α_-^n = -1`.
    pub fn check_alpha_powers(&self, tol: f64) -> Vec<CheckOutcome> {
        let id = KronOperator::identity(self.k);
        let sign = C64::new(self.alpha_power_sign(), 0.0);
        vec![
            CheckOutcome::from_error(
                "alpha^n = (-1)^{k(k+1)/2}",
                self.alpha.pow(self.n).distance(&id.scale(sign)),
                tol,
            ),
            CheckOutcome::from_error(
                "alpha_+^n = 1",
                self.alpha_plus.pow(self.n).distance(&id),
                tol,
            ),
            CheckOutcome::from_error(
                "alpha_-^n = -1",
                self.alpha_minus.pow(self.n).distance(&id.scale(-ONE)),
                tol,
            ),
        ]
    }

    /// `α e_l α^{-1} = Σ_m R_{ml} e_m`, with `R` the block rotation of the
    /// holonomy in the orthonormal frame and `α^{-1} = α^*`.
    pub fn check_conjugation(&self, tol: f64) -> Vec<CheckOutcome> {
        let id = KronOperator::identity(self.k);
        let alpha_adj = self.alpha.adjoint();
        let unitary = CheckOutcome::from_error(
            "alpha alpha^* = 1",
            self.alpha.mul(&alpha_adj).distance(&id),
            tol,
        );
        let rot = rotation_matrix(self.k);
        let mut worst = 0.0f64;
        let mut worst_l = 0;
        for l in 1..=self.n as usize {
            let lhs = self.alpha.mul(self.e(l)).mul(&alpha_adj);
            let mut rhs: Option<KronOperator> = None;
            for m in 1..=self.n as usize {
                let c = rot[m - 1][l - 1];
                if c.abs() < 1e-15 {
                    continue;
                }
                let term = self.e(m).scale(C64::new(c, 0.0));
                rhs = Some(match rhs {
                    None => term,
                    Some(acc) => acc
                        .try_add(&term)
                        .expect("rotation partners differ in one slot"),
                });
            }
            let err = lhs.distance(&rhs.expect("rotation column is nonzero"));
            if err > worst {
                worst = err;
                worst_l = l;
            }
        }
        let conj = CheckOutcome::from_error("alpha e_l alpha^-1 = A e_l", worst, tol);
        let conj = if conj.passed {
            conj
        } else {
            conj.with_detail(format!("worst at l = {worst_l}"))
        };
        vec![unitary, conj]
    }

    pub fn check_conjugation_dense(&self, tol: f64) -> Option<CheckOutcome> {
        if self.k > DENSE_MAX_K {
            return None;
        }
        let a = self.alpha.to_dense();
        let a_inv = a.adjoint();
        let e: Vec<ComplexMatrix> = self.e.iter().map(KronOperator::to_dense).collect();
        let rot = rotation_matrix(self.k);
        let mut worst = 0.0f64;
        for l in 0..e.len() {
            let lhs = a.mul(&e[l]).mul(&a_inv);
            let rhs = (0..e.len()).fold(ComplexMatrix::zeros(self.dim()), |acc, m| {
                acc.add(&e[m].scale(C64::new(rot[m][l], 0.0)))
            });
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        Some(CheckOutcome::from_error(
            "alpha e_l alpha^-1 = A e_l (dense)",
            worst,
            tol,
        ))
    }

    /// `v_ε = w_{ε_1} ⊗ ... ⊗ w_{ε_k}` with `w_{+1} = (1, -i)`, `w_{-1} = (1, i)`.
    pub fn sign_state(&self, eps: &SignVector) -> Vec<C64> {
        assert_eq!(eps.len(), self.k);
        let parts: Vec<[C64; 2]> = eps.signs().iter().map(|&s| w(s)).collect();
        product_state(&parts)
    }

    /// Eigenrelations of `α`, `e_n`, and `ρ_1` on the sign-vector basis.
    pub fn eigenbasis_check(&self, tol: f64) -> EigenbasisReport {
        let mut first_failure = None;
        let mut alpha_err = 0.0f64;
        let mut en_err = 0.0f64;
        let beta = self.beta();
        for eps in SignVector::all(self.k) {
            let v = self.sign_state(&eps);
            let phase = C64::from_polar(1.0, beta * eps.mu() as f64);
            let want: Vec<C64> = v.iter().map(|x| x * phase).collect();
            let err = max_abs_diff_vec(&self.alpha.apply(&v), &want);
            alpha_err = alpha_err.max(err);
            if err > tol && first_failure.is_none() {
                first_failure = Some((eps, "alpha v = e^{i beta mu} v".to_string()));
            }
            let en_eig = -I * eps.nu() as f64;
            let want: Vec<C64> = v.iter().map(|x| x * en_eig).collect();
            let err = max_abs_diff_vec(&self.e(self.n as usize).apply(&v), &want);
            en_err = en_err.max(err);
            if err > tol && first_failure.is_none() {
                first_failure = Some((eps, "e_n v = -i nu v".to_string()));
            }
        }

        let rho1 = rho(beta);
        let mut rho_err = 0.0f64;
        for s in [1i8, -1] {
            let wv = w(s);
            let got = rho1.apply(&wv);
            let ph = C64::from_polar(1.0, s as f64 * beta);
            rho_err = rho_err.max(max_abs_diff_vec(&got, &[wv[0] * ph, wv[1] * ph]));
        }

        let en = self.e(self.n as usize);
        let commute = self.alpha.mul(en).distance(&en.mul(&self.alpha));

        let (gram_name, gram_det) = self.gram_determinant();
        let checks = vec![
            CheckOutcome::from_error("alpha v_eps = e^{i beta mu_eps} v_eps", alpha_err, tol),
            CheckOutcome::from_error("e_n v_eps = -i nu(eps) v_eps", en_err, tol),
            CheckOutcome::from_error("rho_1 w_{+-1} = e^{+-i beta} w_{+-1}", rho_err, tol),
            CheckOutcome::from_error("alpha e_n = e_n alpha", commute, tol),
            CheckOutcome {
                name: gram_name,
                passed: gram_det > 0.5,
                max_error: 0.0,
                tol: 0.0,
                detail: Some(format!("log2 |det| = {:.3}", gram_det.log2())),
            },
        ];
        EigenbasisReport {
            checks,
            first_failure,
        }
    }

    /// `|det G|` of the normalized Gram matrix of `{v_ε}`: dense elimination
    /// up to `GRAM_DENSE_MAX_K`, otherwise `det(G_1 ⊗ ... ⊗ G_k)` from the
    /// per-slot 2×2 Gram matrices.
    fn gram_determinant(&self) -> (String, f64) {
        if self.k <= GRAM_DENSE_MAX_K {
            let states: Vec<Vec<C64>> = SignVector::all(self.k)
                .map(|e| self.sign_state(&e))
                .collect();
            let d = states.len();
            let mut gram = ComplexMatrix::zeros(d);
            for i in 0..d {
                for j in 0..d {
                    gram[(i, j)] = states[i]
                        .iter()
                        .zip(&states[j])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                }
            }
            // normalize each state to unit length so the determinant stays representable
            let scale = 0.5f64.powi(self.k as i32);
            let det = gram.scale(C64::new(scale, 0.0)).determinant().norm();
            ("sign-vector states form a basis (dense Gram)".into(), det)
        } else {
            let (p, m) = (w(1), w(-1));
            let ip = |a: &[C64; 2], b: &[C64; 2]| a[0].conj() * b[0] + a[1].conj() * b[1];
            let g =
                ComplexMatrix::from_rows(&[&[ip(&p, &p), ip(&p, &m)], &[ip(&m, &p), ip(&m, &m)]]);
            let det_slot = g.scale(C64::new(0.5, 0.0)).determinant().norm();
            let det = det_slot.powf(self.k as f64 * (1u64 << (self.k - 1)) as f64);
            (
                "sign-vector states form a basis (factored Gram)".into(),
                det,
            )
        }
    }

    /// Every relation check at the given tolerances.
    pub fn full_report(
        &self,
        clifford_tol: f64,
        power_tol: f64,
        eigen_tol: f64,
    ) -> Vec<CheckOutcome> {
        let mut out = vec![self.check_clifford(clifford_tol)];
        out.extend(self.check_clifford_dense(clifford_tol));
        out.push(self.check_rotations_commute(clifford_tol));
        out.extend(self.check_alpha_powers(power_tol));
        out.extend(self.check_conjugation(power_tol));
        out.extend(self.check_conjugation_dense(power_tol));
        out.extend(self.eigenbasis_check(eigen_tol).checks);
        out
    }
}

#[derive(Debug, Clone)]
pub struct EigenbasisReport {
    pub checks: Vec<CheckOutcome>,
    pub first_failure: Option<(SignVector, String)>,
}

impl EigenbasisReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.checks.iter().all(|c| c.passed)
    }
}

fn w(sign: i8) -> [C64; 2] {
    if sign > 0 {
        [ONE, -I]
    } else {
        [ONE, I]
    }
}

/// `ρ_1 = cos β + sin β · g_1 g_2` on `C^2`.
fn rho(beta: f64) -> ComplexMatrix {
    ComplexMatrix::identity(2)
        .scale(C64::new(beta.cos(), 0.0))
        .add(&g1().mul(&g2()).scale(C64::new(beta.sin(), 0.0)))
}

/// The holonomy in the orthonormal frame `e_1, ..., e_n`: rotation by
/// `2πj/n` in the plane `(e_{2j-1}, e_{2j})`, identity on `e_n`.
/// Entry `[m][l]` is the `e_m` component of `A e_l`.
pub fn rotation_matrix(k: u32) -> Vec<Vec<f64>> {
    let n = (2 * k + 1) as usize;
    let mut rot = vec![vec![0.0; n]; n];
    for j in 1..=k as usize {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let (a, b) = (2 * j - 2, 2 * j - 1);
        rot[a][a] = theta.cos();
        rot[b][a] = theta.sin();
        rot[a][b] = -theta.sin();
        rot[b][b] = theta.cos();
    }
    rot[n - 1][n - 1] = 1.0;
    rot
}

/// `λ` realizes the integer holonomy: traces of powers agree.
pub fn rotation_traces_match_holonomy(m: &FchdManifold, tol: f64) -> bool {
    let rot = rotation_matrix(m.k());
    let n = m.n() as usize;
    let a = m.holonomy_matrix();
    let mut rp = identity_f64(n);
    for p in 1..=m.n() {
        rp = matmul_f64(&rp, &rot);
        let tr_rot: f64 = (0..n).map(|i| rp[i][i]).sum();
        let ap = a.pow(p);
        let tr_int: i64 = (0..n).map(|i| ap.get(i, i)).sum();
        if (tr_rot - tr_int as f64).abs() > tol {
            return false;
        }
    }
    true
}

fn identity_f64(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn matmul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}
