//! Weight sets against leftmost-derivation counting.

mod support {
    pub mod derivations;
}

use std::collections::BTreeSet;

use support::derivations::{brute_weights, load_ok, random_grammars_agree, t};

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn corpus(rel: &str) -> String {
    std::fs::read_to_string(format!("{CORPUS}/{rel}")).unwrap()
}

#[test]
fn examples_match_derivations() {
    let l = load_ok(&corpus("examples/ex06_weights.sy"));
    let r = t("(+ x (* x x))");
    assert_eq!(brute_weights(&l, "f", ":numX", &r, 8), BTreeSet::from([3]));
    assert_eq!(l.state.fun("f").unwrap().rules.as_ref().unwrap().weight_sets(":numX", &r).bases(), BTreeSet::from([3]));

    let l = load_ok(&corpus("examples/ex07_weights_multi.sy"));
    let r = t("(+ x 1)");
    assert_eq!(brute_weights(&l, "f", ":numI", &r, 8), BTreeSet::from([0, 2]));
    assert_eq!(l.state.fun("f").unwrap().rules.as_ref().unwrap().weight_sets(":numI", &r).bases(), BTreeSet::from([0, 2]));
}

#[test]
fn unit_cycle_pumps_by_one() {
    let l = load_ok(
        "(set-logic LIA)\n(set-feature :weights true)\n(declare-weight w)\n\
         (synth-fun f () Int ((I Int) (J Int)) ((I Int (J 0)) (J Int ((! I :w 1)))))\n",
    );
    assert_eq!(brute_weights(&l, "f", ":w", &t("0"), 8), (0..=3).collect());
}

#[test]
fn random_grammars_match_derivations() {
    random_grammars_agree(7, 50);
}
