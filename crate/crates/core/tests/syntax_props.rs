mod common;

use proptest::prelude::*;

use ext_real::arith::{self, ATerm, Arith, Bound};
use ext_real::forcing::Condition;
use ext_real::syntax::{parse_arith, parse_condition, parse_fformula, parse_formula, parse_type};

fn aterm() -> impl Strategy<Value = ATerm> {
    let leaf = prop_oneof![(0u64..20).prop_map(ATerm::Num), prop::sample::select(vec!["x", "y"]).prop_map(ATerm::var)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| ATerm::Succ(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ATerm::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| ATerm::mul(a, b)),
        ]
    })
}

fn arith_formula() -> impl Strategy<Value = Arith> {
    let atom = prop_oneof![
        (aterm(), aterm()).prop_map(|(a, b)| arith::eq(a, b)),
        (aterm(), aterm()).prop_map(|(a, b)| arith::lt(a, b)),
    ];
    let bound = prop_oneof![Just(Bound::Omega), (0u64..5).prop_map(Bound::Below)];
    atom.prop_recursive(3, 16, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| arith::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| arith::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| arith::imp(a, b)),
            inner.clone().prop_map(arith::not),
            (prop::sample::select(vec!["x", "y"]), bound.clone(), inner.clone()).prop_map(|(v, b, a)| arith::all(v, b, a)),
            (prop::sample::select(vec!["x", "y"]), bound.clone(), inner).prop_map(|(v, b, a)| arith::ex(v, b, a)),
        ]
    })
}

proptest! {
    #[test]
    fn arithmetic_round_trips(phi in arith_formula()) {
        prop_assert_eq!(parse_arith(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn forcing_formulas_round_trip(seed in any::<u64>()) {
        let phi = common::fgen::random_fformula(&mut common::rng(seed), &mut Vec::new(), 4);
        prop_assert_eq!(parse_fformula(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn formulas_round_trip(seed in any::<u64>()) {
        let names = common::small_names();
        let phi = common::random_formula(&mut common::rng(seed), &names, &mut Vec::new(), 4);
        prop_assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn conditions_round_trip(values in prop::collection::btree_map(0u64..50, 0u64..50, 0..6)) {
        let c = Condition::new(values).unwrap();
        prop_assert_eq!(parse_condition(&c.to_string()).unwrap(), c);
    }
}

#[test]
fn type_codes_round_trip() {
    for s in common::type_pool(2) {
        assert_eq!(parse_type(&s.to_string()).unwrap(), s);
    }
}
