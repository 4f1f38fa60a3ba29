mod oracle;

use num_bigint::BigUint;
use proptest::prelude::*;

use posring::arith::poly::NatPoly;
use posring::arith::rational::rat;
use posring::cyclic::CyclicRational;
use posring::exp::ExpSum;
use posring::kernel::{length_set, Certificate, MonoidView, Payload, SearchBudget};
use posring::model::SemiringModel;
use posring::natpoly::{factorizations_natpoly, is_irreducible_natpoly, Irreducibility, NatPolyMul};
use posring::numerical::{NumericalAdd, NumericalMonoid};
use posring::ray::RaySemiring;
use posring::Rational;

fn exp_sum() -> impl Strategy<Value = ExpSum> {
    prop::collection::vec((0i64..6, 1i64..4, 1u32..4), 1..4).prop_map(|ts| {
        ts.into_iter().fold(ExpSum::zero(), |acc, (n, d, c)| {
            acc.add(&ExpSum::term(rat(n, d), BigUint::from(c)))
        })
    })
}

fn natpoly() -> impl Strategy<Value = NatPoly> {
    prop::collection::vec(0u64..4, 1..6)
        .prop_filter("nonzero, not 1", |c| {
            c.iter().any(|&x| x > 0) && !(c.len() == 1 && c[0] == 1) && *c.last().unwrap() > 0
        })
        .prop_map(|c| NatPoly::from_u64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn exp_division_undoes_multiplication(a in exp_sum(), b in exp_sum()) {
        let p = a.multiply(&b);
        prop_assert_eq!(p.divide(&b), Some(a.clone()));
        prop_assert_eq!(p.divide(&a), Some(b));
    }

    #[test]
    fn exp_display_parses_back(a in exp_sum()) {
        prop_assert_eq!(ExpSum::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn natpoly_factorizations_are_sound(f in natpoly()) {
        let view = NatPolyMul;
        let set = factorizations_natpoly(&f).unwrap();
        prop_assert!(!set.factorizations.is_empty());
        for z in &set.factorizations {
            prop_assert_eq!(z.evaluate(&view), f.clone());
            for a in z.atoms() {
                prop_assert_eq!(is_irreducible_natpoly(a).unwrap(), Irreducibility::Irreducible);
            }
        }
    }

    #[test]
    fn numerical_lengths_agree(a in 2u64..7, b in 2u64..11, n in 0u64..40) {
        prop_assume!(num_integer::gcd(a, b) == 1 && a != b);
        let view = NumericalAdd { s: NumericalMonoid::new(&[a, b]).unwrap() };
        let want = &oracle::coin_change_lengths(&[a, b], n)[n as usize];
        let x = BigUint::from(n);
        prop_assert_eq!(view.is_member(&x), !want.is_empty());
        if !want.is_empty() {
            let (l, complete) = length_set(&view, &x, &SearchBudget::new(40, 12, 100_000).unwrap()).unwrap();
            prop_assert!(complete);
            prop_assert_eq!(&l, want);
        }
    }

    #[test]
    fn chains_exist_exactly_below_one(n in 1i64..9, d in 1i64..9) {
        prop_assume!(num_integer::gcd(n, d) == 1 && n != d);
        let s = CyclicRational::new(rat(n, d)).unwrap();
        let chain = s.accp_fail_chain(6);
        if n < d {
            let c = chain.unwrap();
            let cert = c.certificate(&s.spec()).unwrap();
            prop_assert!(cert.verified);
            prop_assert!(c.chain.windows(2).all(|w| w[0] > w[1]));
        } else {
            prop_assert!(chain.is_err());
        }
    }

    #[test]
    fn ray_family_roundtrips(k in 1i64..12, count in 1usize..12) {
        // targets strictly inside (2r, 2r + 1) for r = 2
        let s = RaySemiring::new(rat(2, 1)).unwrap();
        let t = rat(4, 1) + rat(k, 13);
        let cert = s.non_ff_family(&t, count).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        prop_assert!(back.verify().is_ok());
    }

    #[test]
    fn tampered_certificates_fail(k in 1i64..12) {
        let s = RaySemiring::new(rat(2, 1)).unwrap();
        let t = rat(4, 1) + rat(k, 13);
        let mut cert = s.non_ff_family(&t, 3).unwrap();
        if let Payload::NonFFFamily { element, .. } = &mut cert.payload {
            *element = (t + Rational::from_integer(1.into())).to_string();
        }
        prop_assert!(cert.verify().is_err());
    }

    #[test]
    fn cyclic_spec_roundtrips(n in 1i64..30, d in 1i64..30) {
        let spec = format!("N0[{}]", rat(n, d));
        let m = SemiringModel::parse(&spec).unwrap();
        prop_assert_eq!(SemiringModel::parse(&m.spec()).unwrap().spec(), m.spec());
    }
}
