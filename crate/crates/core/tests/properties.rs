use proptest::prelude::*;

use conjlambek::cvp::{decode_circuit, encode_circuit, Circuit, Gate};
use conjlambek::prover::{LambekProver, MacllProver, ProverError};
use conjlambek::samples::{is_triple_power, triple_power_ccg};
use conjlambek::syntax::{hat_translate, parse_macll_formula, subexpressions};
use conjlambek::{
    ccg_member, parse_category, parse_macll_sequent, parse_sequent, Calculus, Category,
    MacllFormula, MacllSequent, PrimCat, Sequent,
};

fn prim() -> impl Strategy<Value = Category> {
    prop::sample::select(vec!["p", "q", "r", "s1"]).prop_map(Category::prim)
}

fn category(additives: bool) -> impl Strategy<Value = Category> {
    prim().prop_recursive(4, 24, 2, move |inner| {
        let ops = if additives { 0..6u8 } else { 0..3u8 };
        (ops, inner.clone(), inner).prop_map(|(op, a, b)| match op {
            0 => Category::prod(a, b),
            1 => Category::ldiv(a, b),
            2 => Category::rdiv(a, b),
            3 => Category::and(a, b),
            _ => Category::or(a, b),
        })
    })
}

fn sequent(additives: bool) -> impl Strategy<Value = Sequent> {
    (
        prop::collection::vec(category(additives), 0..3),
        category(additives),
    )
        .prop_map(|(a, b)| Sequent::new(a, b))
}

fn macll() -> impl Strategy<Value = MacllFormula> {
    let leaf = prop_oneof![
        (prop::sample::select(vec!["p", "q", "r"]), any::<bool>()).prop_map(|(n, negated)| {
            MacllFormula::Atom {
                name: PrimCat::new(n),
                negated,
            }
        }),
        Just(MacllFormula::One),
        Just(MacllFormula::Bottom),
        Just(MacllFormula::Top),
        Just(MacllFormula::Zero),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        (0..4u8, inner.clone(), inner).prop_map(|(op, a, b)| match op {
            0 => MacllFormula::times(a, b),
            1 => MacllFormula::par(a, b),
            2 => MacllFormula::with(a, b),
            _ => MacllFormula::plus(a, b),
        })
    })
}

/// Basic categories with conjunct denominators.
fn basic() -> impl Strategy<Value = Category> {
    let conjunct = prop::collection::vec(prop::sample::select(vec!["x", "y", "z"]), 1..3)
        .prop_map(|ns| Category::and_all(ns.into_iter().map(Category::prim)).unwrap());
    prim().prop_recursive(4, 8, 1, move |inner| {
        (any::<bool>(), conjunct.clone(), inner).prop_map(|(left, c, a)| {
            if left {
                Category::ldiv(c, a)
            } else {
                Category::rdiv(a, c)
            }
        })
    })
}

fn skip_budget(r: Result<bool, ProverError>) -> Option<bool> {
    match r {
        Ok(b) => Some(b),
        Err(ProverError::Budget(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #[test]
    fn category_printing_round_trips(c in category(true)) {
        prop_assert_eq!(parse_category(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn sequent_printing_round_trips(s in sequent(true)) {
        prop_assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn macll_printing_round_trips(f in macll(), g in macll()) {
        prop_assert_eq!(parse_macll_formula(&f.to_string()).unwrap(), f.clone());
        let s = MacllSequent::new(vec![f, g]).unwrap();
        prop_assert_eq!(parse_macll_sequent(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn negation_is_an_involution(f in macll()) {
        prop_assert_eq!(f.negate().negate(), f.clone());
        prop_assert_eq!(f.negate().connectives(), f.connectives());
    }

    #[test]
    fn embedding_preserves_size_and_substitution(c in category(true), d in category(true)) {
        prop_assert_eq!(hat_translate(&c).connectives(), c.connectives());
        let p = PrimCat::new("p");
        prop_assert_eq!(hat_translate(&c.substitute(&p, &d)), hat_translate(&c).substitute(&p, &hat_translate(&d)));
    }

    #[test]
    fn identity_is_derivable(c in category(true)) {
        let s = Sequent::new(vec![c.clone()], c);
        prop_assert_eq!(skip_budget(LambekProver::new(Calculus::Malc).derivable(&s)).unwrap_or(true), true);
        let m = MacllSequent::from_lambek(&s);
        prop_assert_eq!(skip_budget(MacllProver::new().derivable(&m)).unwrap_or(true), true);
    }

    #[test]
    fn one_sided_embedding_agrees(s in sequent(false)) {
        let two = skip_budget(LambekProver::new(Calculus::LStar).with_budget(200_000).derivable(&s));
        let one = skip_budget(MacllProver::new().with_budget(200_000).derivable(&MacllSequent::from_lambek(&s)));
        if let (Some(a), Some(b)) = (two, one) {
            prop_assert_eq!(a, b, "{}", s);
        }
    }

    #[test]
    fn subexpressions_of_basic_categories(c in basic()) {
        let subs = subexpressions(&c).unwrap();
        prop_assert!(subs.contains(&c));
        for s in &subs {
            prop_assert!(s.node_count() <= c.node_count());
            prop_assert!(subexpressions(s).unwrap().iter().all(|t| subs.contains(t)));
        }
    }

    #[test]
    fn circuit_codes_round_trip(inputs in prop::collection::vec(any::<bool>(), 1..4), args in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let mut gates: Vec<Gate> = inputs.into_iter().map(Gate::Input).collect();
        for a in args {
            let i = gates.len() + 1;
            gates.push(Gate::Nor(1 + a.index(i - 1)));
        }
        let c = Circuit::new(gates).unwrap();
        prop_assert_eq!(decode_circuit(&encode_circuit(&c)), Some(c));
    }

    #[test]
    fn chart_membership_matches_predicate(w in "[abc]{1,9}") {
        prop_assert_eq!(ccg_member(&triple_power_ccg(), &w).unwrap(), is_triple_power(&w));
    }
}
