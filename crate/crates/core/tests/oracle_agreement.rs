//! The spinor-module oracle against the closed forms.

use fchd_core::combinatorics::multiplicity_table;
use fchd_core::invariants::harmonic_dim;
use fchd_core::oracle::{build_rep, kernel_dim_oracle, windowed_spectrum};
use fchd_core::{FchdManifold, SpinStructure};

const PHASE_TOL: f64 = 1e-9;

fn manifold(k: u32) -> FchdManifold {
    FchdManifold::new(k as i64).unwrap()
}

#[test]
fn kernel_matches_formula_for_odd_k() {
    for k in [1, 3, 5, 7] {
        let rep = build_rep(k).unwrap();
        let m = manifold(k);
        assert_eq!(
            kernel_dim_oracle(&rep, &m, SpinStructure::Plus, PHASE_TOL).unwrap(),
            harmonic_dim(&m, SpinStructure::Plus),
            "k = {k}"
        );
    }
}

#[test]
fn minus_structure_has_no_harmonic_spinors() {
    for k in 1..=8 {
        let rep = build_rep(k).unwrap();
        let m = manifold(k);
        assert_eq!(
            kernel_dim_oracle(&rep, &m, SpinStructure::Minus, PHASE_TOL).unwrap(),
            0
        );
    }
}

/// At k = 4 the fixed space of α_+ is spanned by v_ε for ε = ±(1,-1,-1,1),
/// both in D_+, so it is 2-dimensional while the doubled D_+ count gives 4.
#[test]
fn kernel_at_k4_is_half_the_doubled_count() {
    let rep = build_rep(4).unwrap();
    let m = manifold(4);
    assert_eq!(
        kernel_dim_oracle(&rep, &m, SpinStructure::Plus, PHASE_TOL).unwrap(),
        2
    );
    assert_eq!(harmonic_dim(&m, SpinStructure::Plus), 4);
}

#[test]
fn windowed_spectrum_folds_onto_tables() {
    for k in [1, 3, 5] {
        let rep = build_rep(k).unwrap();
        let m = manifold(k);
        for s in SpinStructure::ALL {
            let spec = windowed_spectrum(&rep, &m, s, 3 * m.n() as i64, PHASE_TOL).unwrap();
            assert!(spec.anomalies.is_empty());
            let table = multiplicity_table(&m, s);
            assert_eq!(
                spec.fold_mismatches(&table),
                Vec::<u32>::new(),
                "k = {k}, {s}"
            );
            let folded: Vec<u64> = spec
                .folded_by_residue()
                .into_iter()
                .map(Option::unwrap)
                .collect();
            assert_eq!(folded, table.counts());
        }
    }
}

#[test]
fn zero_class_is_symmetric_for_plus() {
    for k in [1, 3, 5, 7] {
        let rep = build_rep(k).unwrap();
        let m = manifold(k);
        let spec =
            windowed_spectrum(&rep, &m, SpinStructure::Plus, 3 * m.n() as i64, PHASE_TOL).unwrap();
        assert!(spec.zero_class_symmetric(), "k = {k}");
    }
}

#[test]
fn every_section_sits_on_the_equivariance_congruence() {
    use fchd_core::combinatorics::shifted_half_mu;
    let k = 3;
    let rep = build_rep(k).unwrap();
    let m = manifold(k);
    let n = m.n() as i64;
    for s in SpinStructure::ALL {
        let spec = windowed_spectrum(&rep, &m, s, 2 * n, PHASE_TOL).unwrap();
        for sec in &spec.sections {
            // l ≡ μ/2 + c(k)n (+ k) with the sign vector itself, any ν
            let t = shifted_half_mu(&sec.epsilon, &m, s).unwrap();
            assert_eq!((sec.l - t).rem_euclid(n), 0, "{sec:?}");
        }
    }
}

#[test]
fn relation_checks_at_the_cap() {
    let rep = build_rep(12).unwrap();
    assert!(rep.check_clifford(1e-12).passed);
    assert!(rep.check_alpha_powers(1e-9).iter().all(|c| c.passed));
    assert!(rep.check_conjugation(1e-9).iter().all(|c| c.passed));
}
