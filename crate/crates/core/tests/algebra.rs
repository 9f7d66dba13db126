mod common;

use adequate::canonical::{are_isomorphic, canonical_form};
use adequate::enumerate::all_trees;
use adequate::error::OpError;
use adequate::ops::{classify, AlgebraMode, FreeAlgebra, Sidedness};
use adequate::prune::{is_pruned, prune};
use adequate::random::RandomSpec;
use adequate::term::{eval_term, parse_term, term_for_tree, tree_to_term, words_equal, Alphabet};
use adequate::tree::SigmaTree;
use common::*;
use proptest::prelude::*;
use rand::Rng;

const MODES: [AlgebraMode; 3] = [
    AlgebraMode::LEFT,
    AlgebraMode::RIGHT,
    AlgebraMode::TWO_SIDED,
];

#[test]
fn basic_identities_hold_in_both_one_sided_algebras() {
    for (seed, side) in [(31, Sidedness::Left), (32, Sidedness::Right)] {
        let mut g = RandomSpec::ab(seed, 6, AlgebraMode::monoid(side)).generator();
        for _ in 0..100 {
            for (name, lhs, rhs) in identity_instances(side, &mut g) {
                assert_eq!(form(&lhs), form(&rhs), "{side}: {name}");
            }
        }
    }
}

#[test]
fn word_problem_examples() {
    let eq = |s, t| words_equal(s, t, &Alphabet::Unrestricted, AlgebraMode::LEFT).unwrap();
    assert!(eq("a^+a", "a"));
    assert!(eq("(ab)^+", "(ab^+)^+"));
    assert!(!eq("a^+", "(aa)^+"));
    assert!(!eq("a", "b"));
    let eq_right = |s, t| words_equal(s, t, &Alphabet::Unrestricted, AlgebraMode::RIGHT).unwrap();
    assert!(eq_right("aa^*", "a"));
    assert!(eq_right("(ab)^*", "(a^*b)^*"));
}

#[test]
fn free_algebra_checks_its_domain() {
    let left = FreeAlgebra::new(AlgebraMode::LEFT);
    let right_tree = data("figure_middle.json").mirror();
    assert_eq!(
        left.plus(&right_tree).unwrap_err(),
        OpError::NotSided(Sidedness::Left)
    );
    assert!(matches!(
        left.star(&SigmaTree::trivial()),
        Err(OpError::OperationNotInSignature { .. })
    ));
    let semi = FreeAlgebra::new(AlgebraMode::semigroup(Sidedness::Left));
    assert_eq!(semi.identity().unwrap_err(), OpError::IdentityInSemigroup);
    let fork = eval_term(
        &parse_term("a^+a^+", &Alphabet::Unrestricted, AlgebraMode::LEFT).unwrap(),
        false,
    );
    assert_eq!(
        left.multiply(&fork, &fork).unwrap_err(),
        OpError::UnprunedOperand
    );
    assert!(left.multiply_any(&fork, &fork).is_ok());
}

#[test]
fn trunk_only_trees_are_exactly_the_two_sided_ones() {
    for x in all_trees(&[letter("a"), letter("b")], 3)
        .into_iter()
        .filter(is_pruned)
    {
        let c = classify(&x);
        assert_eq!(c.is_left_adequate && c.is_right_adequate, c.is_trunk_only);
    }
}

#[test]
fn products_do_not_deepen_trees_but_plus_does() {
    let mut g = RandomSpec::ab(33, 6, AlgebraMode::LEFT).generator();
    let alg = FreeAlgebra::new(AlgebraMode::LEFT);
    for _ in 0..200 {
        let (x, y) = (g.pruned_tree(), g.pruned_tree());
        let p = alg.multiply(&x, &y).unwrap();
        assert!(p.trunk_depth() <= x.trunk_depth().max(y.trunk_depth()));
    }
    let a = SigmaTree::base(letter("a"));
    let aa_plus = alg.plus(&alg.multiply(&a, &a).unwrap()).unwrap();
    assert_eq!(a.trunk_depth(), 0);
    assert_eq!(aa_plus.trunk_depth(), 2);
}

#[test]
fn decomposition_rebuilds_arbitrary_trees() {
    let mut g = RandomSpec::ab(34, 12, AlgebraMode::TWO_SIDED).generator();
    for _ in 0..200 {
        let x = g.tree();
        let t = term_for_tree(&x);
        assert!(are_isomorphic(&eval_term(&t, false), &x));
        assert!(are_isomorphic(&eval_term(&t, true), &prune(&x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), side in 0usize..3) {
        let mode = MODES[side];
        let mut g = RandomSpec::ab(seed, 7, mode).generator();
        let alg = FreeAlgebra::new(mode);
        let (x, y, z) = (g.pruned_tree(), g.pruned_tree(), g.pruned_tree());
        let l = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&l), canonical_form(&r));
    }

    #[test]
    fn pruning_is_a_morphism_of_term_algebras(seed in any::<u64>(), side in 0usize..3) {
        let t = RandomSpec::ab(seed, 10, MODES[side]).generator().term();
        prop_assert!(are_isomorphic(&prune(&eval_term(&t, false)), &eval_term(&t, true)));
    }

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), side in 0usize..3, semi in any::<bool>()) {
        let mode = if semi { AlgebraMode::semigroup(MODES[side].sidedness) } else { MODES[side] };
        let alphabet = ["a", "b", "c1", "x_2"].map(letter).to_vec();
        let t = RandomSpec::new(seed, 10, alphabet, mode).generator().term();
        let printed = t.to_string();
        prop_assert_eq!(parse_term(&printed, &Alphabet::Unrestricted, mode).unwrap(), t);
    }

    #[test]
    fn word_problem_is_decided_by_canonical_forms(seed in any::<u64>()) {
        let mut g = RandomSpec::ab(seed, 5, AlgebraMode::LEFT).generator();
        let (s, t) = (g.term().to_string(), g.term().to_string());
        let mode = AlgebraMode::LEFT;
        let sigma = Alphabet::Unrestricted;
        let st = words_equal(&s, &t, &sigma, mode).unwrap();
        prop_assert_eq!(st, words_equal(&t, &s, &sigma, mode).unwrap());
        prop_assert!(words_equal(&s, &s, &sigma, mode).unwrap());
        let forms_agree = canonical_form(&eval_term(&parse_term(&s, &sigma, mode).unwrap(), true))
            == canonical_form(&eval_term(&parse_term(&t, &sigma, mode).unwrap(), true));
        prop_assert_eq!(st, forms_agree);
    }

    #[test]
    fn pruned_trees_come_from_their_terms(seed in any::<u64>(), side in 0usize..3) {
        let mode = MODES[side];
        let x = RandomSpec::ab(seed, 12, mode).generator().pruned_tree();
        let t = tree_to_term(&x, mode.sidedness).unwrap();
        prop_assert!(t.fits(mode));
        prop_assert!(are_isomorphic(&eval_term(&t, true), &x));
    }

    #[test]
    fn equal_words_have_equal_trees_after_rewriting(seed in any::<u64>()) {
        // a^+ a = a and (ab)^+ = (ab^+)^+ applied at a random position
        let mut g = RandomSpec::ab(seed, 4, AlgebraMode::LEFT).generator();
        let t = g.term().to_string();
        let u = g.term().to_string();
        let (lhs, rhs) = if g.rng().gen_bool(0.5) {
            (format!("({t})^+({t})"), format!("({t})"))
        } else {
            (format!("(({t})({u}))^+"), format!("(({t})({u})^+)^+"))
        };
        let s = format!("({u}){lhs}");
        let r = format!("({u}){rhs}");
        prop_assert!(words_equal(&s, &r, &Alphabet::Unrestricted, AlgebraMode::LEFT).unwrap());
    }
}
