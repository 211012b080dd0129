use proptest::prelude::*;

use qortho::analytic::{product_gf_check, quadrature_moment, weight_density, Measure, NumericConfig, ProductGf};
use qortho::families::{family_closed_form, family_poly, FamilyId};
use qortho::qcore::{q_binomial, scalar_normalize, Poly, Scalar};
use qortho::qoperators::{d_q, eps_q};
use qortho::transforms::{from_basis, inverse_pair_apply, to_basis, Direction, PairId};
use qortho::umbral::{coeff_matrix, umbral_inverse};

fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-5i64..=5, -4i64..=6), 1..5)
        .prop_map(|terms| terms.into_iter().map(|(c, e)| Scalar::from_int(c) * Scalar::v_pow(e)).sum())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a / b })
}

fn poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((laurent(), 0..=max_deg, 0u32..=2), 0..6)
        .prop_map(|terms| terms.into_iter().map(|(c, a, b)| Poly::term(c, a, b)).sum())
}

fn x_poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((laurent(), 0..=max_deg), 0..6)
        .prop_map(|terms| terms.into_iter().map(|(c, a)| Poly::term(c, a, 0)).sum())
}

fn family() -> impl Strategy<Value = FamilyId> {
    prop::sample::select(FamilyId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn normalize_is_idempotent(a in scalar()) {
        let (shift, num) = a.numerator();
        let again = scalar_normalize(shift, num.clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn q_binomial_rules(n in 0i64..20, k in 0i64..20) {
        prop_assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
        if n > 0 {
            let pascal = q_binomial(n - 1, k - 1) + Scalar::q_pow(k) * q_binomial(n - 1, k);
            prop_assert_eq!(q_binomial(n, k), pascal);
        }
        if k > n {
            prop_assert!(q_binomial(n, k).is_zero());
        }
    }

    #[test]
    fn q_product_rule(f in x_poly(8), g in x_poly(8)) {
        let lhs = d_q(&(&f * &g));
        let rhs = &g * &d_q(&f) + &eps_q(&f) * &d_q(&g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eps_through_d_q(p in x_poly(10)) {
        let rhs = &p + &d_q(&p).shift(1, 0).scale(&(Scalar::q() - Scalar::one()));
        prop_assert_eq!(eps_q(&p), rhs);
    }

    #[test]
    fn inverse_pairs_round_trip(
        id in prop::sample::select(PairId::ALL.to_vec()),
        tail in prop::collection::vec(-20i64..=20, 0..10),
        s in prop::sample::select(vec![1i64, -1, 2, -3]),
    ) {
        let seq: Vec<Scalar> = std::iter::once(Scalar::one()).chain(tail.into_iter().map(Scalar::from_int)).collect();
        let s = Scalar::from_int(s);
        let fwd = inverse_pair_apply(id, &s, &seq, Direction::Forward).unwrap();
        prop_assert_eq!(inverse_pair_apply(id, &s, &fwd, Direction::Backward).unwrap(), seq);
    }

    #[test]
    fn basis_round_trip(id in family(), p in poly(12)) {
        let coeffs = to_basis(&p, id).unwrap();
        prop_assert_eq!(from_basis(&coeffs, id), p);
    }

    #[test]
    fn recurrence_matches_closed_form(id in family(), n in 0u32..=16) {
        prop_assert_eq!(family_poly(id, n), family_closed_form(id, n).unwrap());
    }

    #[test]
    fn density_is_nonnegative(x in -1.0f64..=1.0, q in 0.0f64..0.95) {
        let cfg = NumericConfig::new(q).unwrap();
        prop_assert!(weight_density(x, &cfg).unwrap() >= -1e-12);
    }

    #[test]
    fn truncation_is_stable(q in 0.05f64..0.8, x in -0.5f64..0.5, t in -0.3f64..0.3) {
        let cfg = NumericConfig::new(q).unwrap();
        let wide = cfg.doubled();
        let a = quadrature_moment(Measure::QHermiteWeight, 4, &cfg).unwrap();
        let b = quadrature_moment(Measure::QHermiteWeight, 4, &wide).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
        let g = ProductGf::Eq5_10 { x, s: 0.05, t };
        let r = product_gf_check(g, &cfg).unwrap();
        let r2 = product_gf_check(g, &wide).unwrap();
        prop_assert!((r.lhs - r2.lhs).abs() < 1e-12);
        prop_assert!(r.residual < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(14))]

    #[test]
    fn umbral_inverse_is_an_involution(id in family(), n in 0usize..=12) {
        let m = coeff_matrix(id, n).unwrap();
        let back = umbral_inverse(&umbral_inverse(&m).unwrap()).unwrap();
        prop_assert_eq!(back.rows(), m.rows());
    }
}
