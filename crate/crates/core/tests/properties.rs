use fock_core::dsl::{parse_expr, IndexedOp, OpExpr};
use fock_core::ealgebra::{normalize, normalize_with, AlgElement, Generator, Strategy as Rewrite, Word};
use fock_core::fermion::{eval_element, eval_normal_form};
use fock_core::{FermionState, LinComb, Scalar, WedgeMonomial};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn wedge(max_index: u32) -> impl Strategy<Value = WedgeMonomial> {
    prop::collection::btree_set(1..=max_index, 0..=5).prop_map(|s| WedgeMonomial::new(s.into_iter().collect()).unwrap())
}

fn fermion_state(max_index: u32) -> impl Strategy<Value = FermionState> {
    prop::collection::vec((wedge(max_index), scalar()), 0..5).prop_map(LinComb::from_terms)
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(), 0..=max_len).prop_map(Word::new)
}

fn element() -> impl Strategy<Value = AlgElement> {
    prop::collection::vec((word(6), scalar()), 0..4).prop_map(LinComb::from_terms)
}

proptest! {
    #[test]
    fn lincomb_is_canonical(terms in prop::collection::vec((wedge(6), scalar()), 0..8)) {
        let a = FermionState::from_terms(terms.clone());
        let mut rev = terms;
        rev.reverse();
        prop_assert_eq!(&a, &FermionState::from_terms(rev));
        prop_assert!(a.iter().all(|(_, c)| !c.is_zero()));
        let keys: Vec<_> = a.keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(keys, sorted);
        prop_assert_eq!(a.to_string(), FermionState::from_terms(a.iter().map(|(m, c)| (m.clone(), c.clone()))).to_string());
    }

    #[test]
    fn addition_laws(a in fermion_state(6), b in fermion_state(6), c in fermion_state(6)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn t_degree_formula(m in wedge(12)) {
        let expected: i64 = m.indices().iter().enumerate().map(|(k, &i)| i as i64 - (k as i64 + 1)).sum();
        prop_assert!(expected >= 0);
        prop_assert_eq!(m.t_degree() as i64, expected);
    }

    #[test]
    fn normalize_is_idempotent_and_linear(a in element(), b in element(), c in scalar()) {
        let na = normalize(&a).into_element();
        prop_assert_eq!(normalize(&na).into_element(), na.clone());
        prop_assert!(na.keys().all(|w| w.is_normal()));
        let lhs = normalize(&(&a + &b.scale(&c))).into_element();
        let rhs = &na + &normalize(&b).into_element().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_agree(w in word(10)) {
        let x = AlgElement::basis(w);
        prop_assert_eq!(normalize_with(&x, Rewrite::Leftmost), normalize_with(&x, Rewrite::Rightmost));
    }

    #[test]
    fn eval_commutes_with_normalize(x in element(), s in fermion_state(8)) {
        prop_assert_eq!(eval_element(&x, &s), eval_normal_form(&normalize(&x), &s));
    }
}

/// Trees of the shape the parser produces: `Neg` only as the right operand of a `Sum`.
fn parsed_tree() -> impl Strategy<Value = OpExpr> {
    let leaf = prop_oneof![
        scalar().prop_map(OpExpr::Scalar),
        generator().prop_map(OpExpr::Gen),
        (prop::sample::select(IndexedOp::ALL.to_vec()), -4i64..=6)
            .prop_filter("valid index", |(op, k)| op.index_ok(*k))
            .prop_map(|(op, k)| OpExpr::Indexed(op, k)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| OpExpr::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| OpExpr::sum(a, OpExpr::negated(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| OpExpr::product(a, b)),
            (inner, 0u32..4).prop_map(|(a, n)| OpExpr::power(a, n)),
        ]
    })
}

proptest! {
    #[test]
    fn parser_round_trip(e in parsed_tree()) {
        let printed = e.to_string();
        let back = parse_expr(&printed).unwrap();
        prop_assert_eq!(&back, &e, "printed as {}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }
}
