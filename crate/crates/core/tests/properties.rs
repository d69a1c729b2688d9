use proptest::prelude::*;

use spaceform::action::{direct_sum, round_truncation_bound, spectral_action_closed, TestFunction};
use spaceform::closedspec::{berger_spectrum, merge_spectrum, round_spectrum, BergerMetric};
use spaceform::exactmath::Rational;
use spaceform::genfun::{genfun_coeffs, sphere_multiplicity, Sign};
use spaceform::groups::{enumerate, GroupSpec};
use spaceform::invariantdirac::compare_with_closed;
use spaceform::multpoly::{evaluate_family, round_polynomials};

fn small_group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..=12).prop_map(GroupSpec::Cyclic),
        (1u32..=6).prop_map(GroupSpec::Dicyclic),
        Just(GroupSpec::BinaryTetrahedral),
        Just(GroupSpec::BinaryOctahedral),
        Just(GroupSpec::BinaryIcosahedral),
    ]
}

fn berger_group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![(1u32..=8).prop_map(GroupSpec::Cyclic), (1u32..=5).prop_map(GroupSpec::Dicyclic)]
}

fn metric() -> impl Strategy<Value = BergerMetric> {
    (1i64..=40, 1i64..=40).prop_map(|(p, q)| BergerMetric::new(Rational::new(p, q)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicities_bounded_by_sphere(spec in small_group(), k in 0usize..200) {
        let rs = round_spectrum(spec, k);
        prop_assert!(rs.m_plus[k] <= sphere_multiplicity(k as u64));
        prop_assert!(rs.m_minus[k] <= sphere_multiplicity(k as u64));
    }

    #[test]
    fn groups_containing_minus_one_split_by_parity(spec in small_group(), k in 0usize..120) {
        let contains_minus_one = match spec {
            GroupSpec::Cyclic(n) => n % 2 == 0,
            _ => true,
        };
        prop_assume!(contains_minus_one);
        let rs = round_spectrum(spec, k);
        if k % 2 == 1 {
            prop_assert_eq!(rs.m_plus[k], 0);
        } else {
            prop_assert_eq!(rs.m_minus[k], 0);
        }
    }

    #[test]
    fn polynomials_reproduce_coefficients(spec in small_group(), k_max in 0u64..150) {
        let (plus, minus) = evaluate_family(&round_polynomials(spec), k_max);
        let gp = genfun_coeffs(spec, Sign::Plus, k_max as usize).unwrap();
        let gm = genfun_coeffs(spec, Sign::Minus, k_max as usize).unwrap();
        for k in 0..=k_max as usize {
            prop_assert_eq!(&plus[k], &Rational::integer(gp[k] as i64));
            prop_assert_eq!(&minus[k], &Rational::integer(gm[k] as i64));
        }
    }

    #[test]
    fn berger_rows_well_formed(spec in berger_group(), m in metric(), n_max in 0u64..30) {
        let entries = berger_spectrum(spec, &m, n_max).unwrap();
        prop_assert!(entries.iter().all(|e| e.multiplicity >= 1 && e.n <= n_max));
        prop_assert!(entries.iter().all(|e| e.radicand.eval(m.t()) >= Rational::zero()));
        let merged = merge_spectrum(&entries).unwrap();
        let total: u64 = entries.iter().map(|e| e.multiplicity).sum();
        prop_assert_eq!(merged.iter().map(|x| x.multiplicity).sum::<u64>(), total);
        for e in &entries {
            prop_assert!((e.key().to_f64() - e.eigenvalue()).abs() <= 1e-9 * (1.0 + e.eigenvalue().abs()));
        }
    }

    #[test]
    fn berger_level_dimension(spec in berger_group(), m in metric(), n in 0u64..25) {
        // every level n contributes dim Hom_Γ(V_n, Σ)·(n + 1) eigenvalues; over
        // all of Γ this is at most 2(n + 1)²
        let entries = berger_spectrum(spec, &m, n).unwrap();
        let at_n: u64 = entries.iter().filter(|e| e.n == n).map(|e| e.multiplicity).sum();
        prop_assert!(at_n <= 2 * (n + 1) * (n + 1));
        prop_assert_eq!(at_n % (n + 1), 0);
    }

    #[test]
    fn oracle_agrees_at_random_t(spec in berger_group(), m in metric()) {
        let report = compare_with_closed(spec, &m, 14).unwrap();
        prop_assert!(report.passes(1e-9), "{:?}", report);
    }

    #[test]
    fn action_is_linear_and_positive(spec in small_group(), lambda in 0.3f64..6.0, c in 0.1f64..10.0) {
        let f = TestFunction::gaussian(1.0).unwrap();
        let g = f.scaled(c);
        let rs = round_spectrum(spec, 120);
        let a = direct_sum(&rs, lambda, |u| f.eval(u));
        let b = direct_sum(&rs, lambda, |u| g.eval(u));
        prop_assert!(a > 0.0);
        prop_assert!((b - c * a).abs() <= 1e-12 * b.abs());
        let closed_ratio = spectral_action_closed(spec.order(), &g, lambda) / spectral_action_closed(spec.order(), &f, lambda);
        prop_assert!((closed_ratio - c).abs() <= 1e-12 * c);
    }

    #[test]
    fn truncation_bound_monotone(lambda in 0.5f64..20.0, k in 0usize..200) {
        let f = TestFunction::gaussian(1.0).unwrap();
        prop_assert!(round_truncation_bound(&f, lambda, k + 1) <= round_truncation_bound(&f, lambda, k));
    }

    #[test]
    fn closed_form_scales_with_order(spec in small_group(), lambda in 0.1f64..50.0) {
        let f = TestFunction::gaussian(0.7).unwrap();
        let order = enumerate(spec).len() as u64;
        prop_assert_eq!(order, spec.order());
        let lhs = spectral_action_closed(order, &f, lambda) * order as f64;
        let rhs = spectral_action_closed(1, &f, lambda);
        prop_assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON * rhs.abs().max(1e-300));
    }
}
