//! Property tests: field axioms for scalars, canonical-form stability, and
//! display/parse round-tripping.

use exactnum::{qrat, Laurent, Scalar};
use proptest::prelude::*;

fn laurent_strategy() -> impl Strategy<Value = Laurent> {
    prop::collection::vec(((-6i64..=6), (-5i64..=5), (1i64..=3)), 0..5).prop_map(|terms| {
        let mut p = Laurent::zero();
        for (exp, num, den) in terms {
            p = &p + &Laurent::monomial(qrat(num, den), exp);
        }
        p
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (laurent_strategy(), laurent_strategy()).prop_map(|(num, den)| {
        if den.is_zero() {
            Scalar::from_laurent(num)
        } else {
            Scalar::fraction(&num, &den).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(a in scalar_strategy(), b in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in scalar_strategy(), b in scalar_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn addition_associates(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_associates(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributive_law(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_inverse(a in scalar_strategy()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &Scalar::zero(), a);
    }

    #[test]
    fn multiplicative_inverse(a in scalar_strategy()) {
        if !a.is_zero() {
            let inv = a.recip().unwrap();
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn display_parse_round_trip(a in scalar_strategy()) {
        let text = a.to_string();
        let back = Scalar::parse(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_form_is_stable(a in scalar_strategy(), b in scalar_strategy()) {
        // A quotient rebuilt from cross-multiplied raw parts must equal the
        // direct quotient once both are reduced to canonical form.
        if !b.is_zero() {
            let direct = &a / &b;
            let num = a.num() * b.den();
            let den = a.den() * b.num();
            let rebuilt = Scalar::fraction(&num, &den).unwrap();
            prop_assert_eq!(direct, rebuilt);
        }
    }

    #[test]
    fn fraction_invariants_hold(a in scalar_strategy()) {
        // Denominator is monic with nonzero constant term.
        let den = a.den();
        prop_assert!(!den.is_zero());
        prop_assert_eq!(den.min_exp().unwrap(), 0);
        prop_assert_eq!(den.leading_coeff(), qrat(1, 1));
        if a.is_zero() {
            prop_assert!(den.is_one());
        }
    }
}
