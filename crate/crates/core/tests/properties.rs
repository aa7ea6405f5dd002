use ordram::build::{mono, nat, sum, wpow};
use ordram::ordinal::{milner_rado_sum, mr_sum_oracle_check};
use ordram::pigeonhole::pcl_number;
use ordram::topology::{homeo_invariant, homeomorphic, least_homeomorphic, less_star, tree_child, tree_parent};
use ordram::witness::{cb_rank_coloring, isolating_base, Color, PartiteColoring};
use ordram::{format_ordinal, parse_ordinal, Ordinal};
use proptest::prelude::*;

fn from_exponents(mut parts: Vec<(Ordinal, u64)>) -> Ordinal {
    parts.sort_by(|a, b| b.0.cmp(&a.0));
    parts.dedup_by(|a, b| a.0 == b.0);
    parts.into_iter().fold(Ordinal::zero(), |acc, (e, c)| acc.add(&mono(e, c)))
}

/// Ordinals below `w^(w^w)` with up to three terms.
fn ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..5).prop_map(nat);
    let exponent = leaf.prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec((inner, 1u64..4), 0..3).prop_map(from_exponents)
    });
    prop::collection::vec((exponent, 1u64..5), 0..4).prop_map(from_exponents)
}

fn nonzero() -> impl Strategy<Value = Ordinal> {
    ordinal().prop_filter("nonzero", |x| !x.is_zero())
}

/// Finite exponents and small coefficients: below `w^4`.
fn small() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((0u64..4, 1u64..4), 0..3)
        .prop_map(|v| from_exponents(v.into_iter().map(|(e, c)| (nat(e), c)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn parse_format_round_trip(x in ordinal()) {
        prop_assert_eq!(parse_ordinal(&format_ordinal(&x)).unwrap(), x);
    }

    #[test]
    fn addition_laws(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a <= a.add(&b) && b <= a.add(&b));
        prop_assert_eq!(a.left_subtract(&a.add(&b)).unwrap(), b);
    }

    #[test]
    fn multiplication_laws(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&Ordinal::one()), a.clone());
        prop_assert_eq!(Ordinal::one().mul(&a), a);
    }

    #[test]
    fn absorption(a in ordinal(), g in ordinal()) {
        let p = wpow(g);
        if a < p {
            prop_assert_eq!(a.add(&p), p);
        }
    }

    #[test]
    fn natural_sum_laws(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.natural_sum(&b), b.natural_sum(&a));
        prop_assert_eq!(a.natural_sum(&b).natural_sum(&c), a.natural_sum(&b.natural_sum(&c)));
        prop_assert!(a.add(&b) <= a.natural_sum(&b));
        if a < b {
            prop_assert!(a.natural_sum(&c) < b.natural_sum(&c));
        }
    }

    #[test]
    fn milner_rado_laws(a in nonzero(), b in nonzero(), c in nonzero()) {
        let ab = milner_rado_sum(&a, &b).unwrap();
        prop_assert_eq!(&ab, &milner_rado_sum(&b, &a).unwrap());
        prop_assert_eq!(
            milner_rado_sum(&ab, &c).unwrap(),
            milner_rado_sum(&a, &milner_rado_sum(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(milner_rado_sum(&a, &Ordinal::one()).unwrap(), a);
    }

    #[test]
    fn milner_rado_matches_oracle(a in small(), b in small()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let s = milner_rado_sum(&a, &b).unwrap();
        prop_assert!(mr_sum_oracle_check(&a, &b, &s));
    }

    #[test]
    fn fundamental_sequences_increase(a in nonzero(), n in 0u64..20) {
        prop_assume!(a.is_limit());
        let x = a.fundamental_sequence(n).unwrap();
        let y = a.fundamental_sequence(n + 1).unwrap();
        prop_assert!(x < y && y < a);
    }

    #[test]
    fn homeomorphism_is_witnessed_by_least_representative(a in nonzero(), b in nonzero()) {
        let la = least_homeomorphic(&a);
        prop_assert!(la <= a);
        prop_assert!(homeomorphic(&a, &la));
        prop_assert_eq!(homeomorphic(&a, &b), la == least_homeomorphic(&b));
        prop_assert_eq!(homeo_invariant(&a).gamma1, a.leading_exponent());
    }

    #[test]
    fn tree_navigation(x in nonzero(), n in 0u64..10) {
        let p = tree_parent(&x);
        prop_assert!(less_star(&x, &p));
        if x.cb_rank().is_successor() {
            let c = tree_child(&x, n).unwrap();
            prop_assert_eq!(tree_parent(&c), x.clone());
            prop_assert!(less_star(&c, &x));
        }
    }

    #[test]
    fn cb_classes_are_discrete(x in nonzero(), y in nonzero()) {
        // (eta, x) holds only points of smaller rank, so x is isolated in its class.
        let eta = isolating_base(&x).unwrap();
        if eta < y && y < x {
            prop_assert!(y.cb_rank() < x.cb_rank());
        }
    }

    #[test]
    fn partite_coloring_splits_by_rank(x in small(), y in small()) {
        let d = PartiteColoring::new(cb_rank_coloring(4));
        match d.pair_color(&x, &y) {
            None => prop_assert_eq!(&x, &y),
            Some(c) => {
                prop_assert_eq!(c, d.pair_color(&y, &x).unwrap());
                let same = (x.is_zero() && y.is_finite()) || (y.is_zero() && x.is_finite()) || x.cb_rank() == y.cb_rank();
                prop_assert_eq!(c == Color::Red, same);
            }
        }
    }

    #[test]
    fn pigeonhole_laws(ts in prop::collection::vec(small(), 1..4), extra in small(), bump in 1u64..3) {
        let ts: Vec<Ordinal> = ts.into_iter().filter(|t| !t.is_zero()).collect();
        prop_assume!(!ts.is_empty());
        let p = pcl_number(&ts).unwrap();
        prop_assert!(ts.iter().all(|t| *t <= p));
        let mut rev = ts.clone();
        rev.reverse();
        prop_assert_eq!(&pcl_number(&rev).unwrap(), &p);
        let mut with_one = ts.clone();
        with_one.push(Ordinal::one());
        prop_assert_eq!(&pcl_number(&with_one).unwrap(), &p);
        prop_assert_eq!(pcl_number(&ts[..1]).unwrap(), ts[0].clone());
        let mut bigger = ts.clone();
        bigger[0] = bigger[0].add(&nat(bump));
        prop_assert!(pcl_number(&bigger).unwrap() >= p);
        if !extra.is_zero() {
            let mut more = ts.clone();
            more.push(extra);
            prop_assert!(pcl_number(&more).unwrap() >= p);
        }
    }
}

#[test]
fn pigeonhole_of_omega_plus_one_powers() {
    for k in 1..=5 {
        let t = vec![sum(&[wpow(nat(1)), nat(1)]); k];
        assert_eq!(pcl_number(&t).unwrap(), sum(&[wpow(nat(k as u64)), nat(1)]));
    }
}
