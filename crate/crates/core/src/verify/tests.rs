use std::time::Duration;

use super::*;
use crate::eval::Value;
use crate::session::{load, SynthState};
use crate::Options;

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn read(rel: &str) -> String {
    std::fs::read_to_string(format!("{CORPUS}/{rel}")).unwrap()
}

fn state(rel: &str) -> SynthState {
    let l = load(&read(rel), &Options::default());
    assert!(l.ok(), "{rel}: {:?}", l.diagnostics);
    l.state
}

fn response(st: &SynthState, text: &str) -> Response {
    parse_response(text, st).unwrap_or_else(|d| panic!("{d}"))
}

const PLAIN: [&str; 10] = [
    "ex01_lia", "ex02_dtlia", "ex03_bv", "ex04_fwd_decls", "ex05_pbe_strings", "ex06_weights", "ex07_weights_multi",
    "ex09_inv", "ex10_chc", "ex11_chc_multi",
];

#[test]
fn corpus_responses_pass() {
    for name in PLAIN {
        let st = state(&format!("examples/{name}.sy"));
        let r = response(&st, &read(&format!("examples/{name}.resp")));
        check_syntactic(&st, r.defs()).unwrap_or_else(|e| panic!("{name}: {e}"));
        let s = check_semantic_bounded(&st, r.defs(), &DomainSpec::default(), None, &[]);
        assert!(s.passed(), "{name}: {s}");
    }
}

#[test]
fn optimisation_responses_are_consistent() {
    let st = state("examples/ex08_optimize_weights.sy");
    for f in ["ex08_optimize_weights.resp", "ex08_optimize_weights_alt.resp"] {
        let Response::OptSolution(vals, defs) = response(&st, &read(&format!("examples/{f}"))) else { panic!("{f}") };
        check_syntactic(&st, &defs).unwrap();
        let s = check_optimize(&st, &vals, &defs, &DomainSpec::default(), None).unwrap();
        assert!(s.passed(), "{f}: {s}");
        // Claiming the wrong weight value is refuted.
        let wrong = vec![Value::int(7)];
        assert!(check_optimize(&st, &wrong, &defs, &DomainSpec::default(), None).unwrap().refuted());
    }
}

#[test]
fn mutation_lia_leaves_the_grammar() {
    let st = state("examples/ex01_lia.sy");
    let r = response(&st, "((define-fun f ((x Int) (y Int)) Int (* x y)))");
    let e = check_syntactic(&st, r.defs()).unwrap_err();
    assert_eq!(e.fun, "f");
    assert_eq!(e.culprit.map(|t| t.to_string()).as_deref(), Some("(* x y)"));
}

#[test]
fn mutation_pbe_is_refuted_at_first_example() {
    let st = state("examples/ex05_pbe_strings.sy");
    let r = response(&st, "((define-fun f ((fname String) (lname String)) String fname))");
    check_syntactic(&st, r.defs()).unwrap();
    match check_semantic_bounded(&st, r.defs(), &DomainSpec::default(), None, &[]) {
        Semantic::Refuted { constraint, .. } => assert_eq!(constraint, st.constraints[0]),
        other => panic!("{other}"),
    }
}

#[test]
fn mutation_bv_identity_is_refuted() {
    let st = state("examples/ex03_bv.sy");
    let r = response(&st, "((define-fun f ((x (_ BitVec 32))) (_ BitVec 32) x))");
    check_syntactic(&st, r.defs()).unwrap();
    match check_semantic_bounded(&st, r.defs(), &DomainSpec::default(), None, &[]) {
        Semantic::Refuted { constraint, .. } => assert!(constraint.to_string().contains("#x0782ECAD"), "{constraint}"),
        other => panic!("{other}"),
    }
}

#[test]
fn weights_outside_the_set_are_refuted() {
    // x*x alone has numX = 2, but the constraint asks for 3.
    let st = state("examples/ex06_weights.sy");
    let r = response(&st, "((define-fun f ((x Int)) Int (* x x)))");
    assert!(check_semantic_bounded(&st, r.defs(), &DomainSpec::default(), None, &[]).refuted());
}

#[test]
fn malformed_responses_are_rejected() {
    let st = state("examples/ex01_lia.sy");
    for text in [
        "((define-fun g ((x Int) (y Int)) Int x))",
        "((define-fun f ((x Int)) Int x))",
        "((define-fun f ((x Int) (y Int)) Bool true))",
        "((define-fun f ((x Int) (y Int)) Int x) (define-fun f ((x Int) (y Int)) Int x))",
        "(define-fun f ((x Int) (y Int)) Int x)",
        "fail fail",
    ] {
        assert!(parse_response(text, &st).is_err(), "{text}");
    }
    assert_eq!(response(&st, "fail"), Response::Fail);
    assert_eq!(response(&st, "infeasible"), Response::Infeasible);
}

#[test]
fn recursion_marker_must_match() {
    let st = state("examples/ex04_fwd_decls.sy");
    let ok = "((define-fun f ((x Int)) Int x) (define-fun g ((x Int)) Int (fx_plus_one x)) \
              (define-fun-rec h ((x Int)) Int (ite (> x 0) (h (- x 1)) 1)))";
    assert!(response(&st, ok).defs()[2].recursive);
    let bad = ok.replace("define-fun-rec", "define-fun");
    assert!(parse_response(&bad, &st).is_err());
}

#[test]
fn objective_orderings() {
    let st = state("examples/ex08_optimize_weights.sy");
    let obj = st.objective.as_ref().unwrap();
    let p = compare_solutions(&[Value::int(1)], &[Value::int(0)], obj).unwrap();
    assert_eq!(p, Preference::BPreferred);

    let lex = load(&read("invalid/lexico.sy"), &Options::default()).state;
    let Response::OptSolution(a, _) = response(&lex, &read("invalid/lexico_a.resp")) else { panic!() };
    let Response::OptSolution(b, _) = response(&lex, &read("invalid/lexico_b.resp")) else { panic!() };
    let obj = lex.objective.as_ref().unwrap();
    assert_eq!(compare_solutions(&a, &b, obj).unwrap(), Preference::APreferred);
    let dirs = directions(obj);
    assert_eq!(compare_values(&a, &b, &dirs, false), Preference::Incomparable);
}

#[test]
fn smt_goldens() {
    for name in ["ex01_lia", "ex02_dtlia"] {
        let st = state(&format!("examples/{name}.sy"));
        let r = response(&st, &read(&format!("examples/{name}.resp")));
        let smt = emit_smt(&st, r.defs(), false).unwrap();
        assert_eq!(smt, read(&format!("golden/{name}.smt2")), "{name}");
    }
}

#[test]
fn smt_refuses_pumps_and_oracles() {
    let st = state("examples/ex07_weights_multi.sy");
    let r = response(&st, &read("examples/ex07_weights_multi.resp"));
    let smt = emit_smt(&st, r.defs(), false).unwrap();
    assert!(smt.contains("(exists ((numI!f Int))"), "{smt}");

    let st = state("examples/ex12_pbe_oracle.sy");
    let r = response(&st, &read("examples/ex12_pbe_oracle.resp"));
    assert!(emit_smt(&st, r.defs(), false).is_err());
}

fn quick_opts(secs: u64, max_size: usize) -> SolveOptions {
    SolveOptions { max_size, budget: Duration::from_secs(secs), dom: DomainSpec::default() }
}

#[test]
fn solver_finds_lia_example() {
    let st = state("examples/ex01_lia.sy");
    let r = solve_enumerative(&st, &quick_opts(10, 7), None);
    assert!(matches!(r, Response::Solution(_)), "{r}");
    check_syntactic(&st, r.defs()).unwrap();
    assert!(check_semantic_bounded(&st, r.defs(), &DomainSpec::default(), None, &[]).passed());
}

#[test]
fn solver_finds_bv_example() {
    let st = state("examples/ex03_bv.sy");
    let r = solve_enumerative(&st, &quick_opts(30, 6), None);
    assert!(matches!(r, Response::Solution(_)), "{r}");
}

#[test]
fn solver_handles_several_functions() {
    let st = state("examples/ex04_fwd_decls.sy");
    let r = solve_enumerative(&st, &quick_opts(30, 3), None);
    assert!(matches!(r, Response::Solution(_)), "{r}");
    assert!(check_semantic_bounded(&st, r.defs(), &DomainSpec::default(), None, &[]).passed());
}

#[test]
fn solver_gives_up_within_budget() {
    let st = state("examples/ex01_lia.sy");
    assert_eq!(solve_enumerative(&st, &quick_opts(10, 2), None), Response::Fail);
}
