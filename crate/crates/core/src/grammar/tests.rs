use std::collections::BTreeSet;

use super::*;
use crate::session::{load, Loaded};
use crate::syntax::term_from_str;
use crate::Options;

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn load_file(rel: &str) -> Loaded {
    let text = std::fs::read_to_string(format!("{CORPUS}/{rel}")).unwrap();
    let l = load(&text, &Options::default());
    assert!(l.ok(), "{rel}: {:?}", l.diagnostics);
    l
}

fn rules_of(l: &Loaded, f: &str) -> RuleSet {
    l.state.fun(f).unwrap().rules.clone().unwrap()
}

fn t(s: &str) -> Term {
    term_from_str(s).unwrap()
}

#[test]
fn ex1_shape_and_membership() {
    let l = load_file("examples/ex01_lia.sy");
    let rs = rules_of(&l, "f");
    assert_eq!(rs.nts.len(), 2);
    assert_eq!(rs.rules[0].len(), 6);
    assert_eq!(rs.rules[1].len(), 5);
    assert!(rs.generates("I", &t("(* 2 (+ x y))")));
    assert!(rs.generates("I", &t("(+ (* 2 x) (* 2 y))")));
    assert!(!rs.generates("I", &t("(* x y)")));
    assert!(!rs.generates("I", &t("(* 3 x)")));
    assert!(rs.generates("Ic", &t("(- 2)")));
}

#[test]
fn ic_enumeration() {
    let l = load_file("examples/ex01_lia.sy");
    let rs = rules_of(&l, "f");
    let e = rs.enumerate("Ic", 2);
    let got: BTreeSet<String> = e.terms.iter().map(|t| t.to_string()).collect();
    let want: BTreeSet<String> = ["0", "1", "2", "(- 1)", "(- 2)"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
    assert!(!e.sampled);
}

#[test]
fn enumeration_is_sorted_and_unique() {
    let l = load_file("examples/ex01_lia.sy");
    let rs = rules_of(&l, "f");
    let e = rs.enumerate("I", 6);
    let sizes: Vec<usize> = e.terms.iter().map(Term::size).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    let uniq: std::collections::HashSet<_> = e.terms.iter().collect();
    assert_eq!(uniq.len(), e.terms.len());
    assert!(e.terms.iter().all(|t| rs.generates("I", t)));
}

#[test]
fn constant_classes_are_sampled() {
    let l = load_file("reference/lia.sy");
    let rs = rules_of(&l, "f");
    let e = rs.enumerate(rs.start(), 3);
    assert!(e.sampled);
    assert!(rs.generates(rs.start(), &t("12345")));
}

#[test]
fn weight_examples() {
    let l = load_file("examples/ex06_weights.sy");
    let ws = rules_of(&l, "f").weight_sets(":numX", &t("(+ x (* x x))"));
    assert_eq!(ws.to_string(), "bases={3} pumps={}");
    let l = load_file("examples/ex07_weights_multi.sy");
    let ws = rules_of(&l, "f").weight_sets(":numI", &t("(+ x 1)"));
    assert_eq!(ws.to_string(), "bases={0,2} pumps={}");
}

#[test]
fn unit_cycle_gives_pump() {
    let text = "(set-logic LIA)\n(set-feature :weights true)\n(declare-weight w)\n\
        (synth-fun f () Int ((I Int) (J Int)) ((I Int (J 0)) (J Int ((! I :w 1)))))\n";
    let l = load(text, &Options::default());
    assert!(l.ok(), "{:?}", l.diagnostics);
    let ws = rules_of(&l, "f").weight_sets(":w", &t("0"));
    assert_eq!(ws.to_string(), "bases={0} pumps={1}");
}
