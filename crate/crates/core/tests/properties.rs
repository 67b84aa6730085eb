use fchd_core::combinatorics::{enumerate_dplus, multiplicity_table, residue, SignVector};
use fchd_core::invariants::{check_corollary2, eta, eta_from_table, harmonic_dim};
use fchd_core::zeta::hurwitz_zeta;
use fchd_core::{FchdManifold, SpinStructure};
use proptest::prelude::*;

fn sign_vector() -> impl Strategy<Value = SignVector> {
    (1u32..=20).prop_flat_map(|k| (0..1u64 << k).prop_map(move |bits| SignVector::new(bits, k)))
}

fn structure() -> impl Strategy<Value = SpinStructure> {
    prop_oneof![Just(SpinStructure::Plus), Just(SpinStructure::Minus)]
}

proptest! {
    #[test]
    fn negation_flips_mu(eps in sign_vector()) {
        prop_assert_eq!(eps.negated().mu(), -eps.mu());
        let k = eps.len();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(eps.negated().nu(), sign * eps.nu());
    }

    #[test]
    fn mu_range_and_parity(eps in sign_vector()) {
        let t = (eps.len() as i64) * (eps.len() as i64 + 1) / 2;
        prop_assert!(eps.mu().abs() <= t);
        prop_assert_eq!((eps.mu() - t).rem_euclid(2), 0);
    }

    #[test]
    fn residue_pairing_for_odd_k(eps in sign_vector()) {
        prop_assume!(eps.len() % 2 == 1);
        let m = FchdManifold::new(eps.len() as i64).unwrap();
        let n = m.n();
        let r = residue(&eps, &m, SpinStructure::Plus).unwrap();
        let r_neg = residue(&eps.negated(), &m, SpinStructure::Plus).unwrap();
        prop_assert_eq!(r_neg, (n - r) % n);
        // minus structure pairs r with -r-1
        let r = residue(&eps, &m, SpinStructure::Minus).unwrap();
        let r_neg = residue(&eps.negated(), &m, SpinStructure::Minus).unwrap();
        prop_assert_eq!(r_neg, (2 * n - r - 1) % n);
    }

    #[test]
    fn tables_are_even_and_conserve_mass(k in 1u32..=16, s in structure()) {
        let m = FchdManifold::new(k as i64).unwrap();
        let t = multiplicity_table(&m, s);
        prop_assert_eq!(t.total(), 1u64 << k);
        prop_assert!(t.counts().iter().all(|c| c % 2 == 0));
        prop_assert_eq!(t.counts().len() as u32, m.n());
    }

    #[test]
    fn eta_denominator_divides_n(k in 1u32..=15, s in structure()) {
        let m = FchdManifold::new(k as i64).unwrap();
        let r = eta(&m, s);
        prop_assert!(r.value.denominator_divides(m.n() as u64));
        if k % 2 == 0 {
            prop_assert!(r.value.is_zero());
        } else {
            prop_assert_eq!(&r.value, &eta_from_table(&r.table));
        }
    }

    #[test]
    fn hurwitz_recurrence(s in prop::sample::select(vec![0.5, 2.0, 3.0]), a in prop::sample::select(vec![0.2, 0.7])) {
        let lhs = hurwitz_zeta(s, a).unwrap().value - hurwitz_zeta(s, a + 1.0).unwrap().value;
        prop_assert!((lhs - a.powf(-s)).abs() < 1e-9);
    }

    #[test]
    fn hurwitz_at_zero(a in 0.001f64..=1.0) {
        prop_assert!((hurwitz_zeta(0.0, a).unwrap().value - (0.5 - a)).abs() < 1e-10);
    }
}

#[test]
fn dplus_has_half_the_vectors() {
    for k in 1..=16 {
        let v: Vec<_> = enumerate_dplus(k).collect();
        assert_eq!(v.len(), 1usize << (k - 1));
        assert!(v.iter().all(|e| e.nu() == 1));
    }
}

#[test]
fn harmonic_dim_is_the_zero_residue_count() {
    for k in 1..=16 {
        let m = FchdManifold::new(k).unwrap();
        assert_eq!(
            harmonic_dim(&m, SpinStructure::Plus),
            multiplicity_table(&m, SpinStructure::Plus).get(0)
        );
    }
}

#[test]
fn corollary2_for_odd_k() {
    for k in (1..=15).step_by(2) {
        let m = FchdManifold::new(k).unwrap();
        assert!(check_corollary2(&m).holds(), "k = {k}");
    }
}
