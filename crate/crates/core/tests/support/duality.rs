//! Enumeration and membership agree: everything enumerated is generated,
//! and every small term over the grammar's own symbols that is generated
//! shows up in the enumeration.

use std::collections::HashSet;

use sygus::grammar::RuleSet;
use sygus::session::load;
use sygus::syntax::{GTerm, GrammarDef, Identifier, Term};
use sygus::Options;

// Resolves from either crate of the workspace.
const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/corpus");

fn grammar(rel: &str) -> (GrammarDef, RuleSet) {
    let l = load(&std::fs::read_to_string(format!("{CORPUS}/{rel}")).unwrap(), &Options::default());
    assert!(l.ok(), "{rel}: {:?}", l.diagnostics);
    let f = &l.state.funs[0];
    (f.grammar.clone().unwrap(), f.rules.clone().unwrap())
}

/// Operators with arities, and leaves, used anywhere in the grammar.
fn symbols(g: &GrammarDef, rs: &RuleSet) -> (Vec<(Identifier, usize)>, Vec<Term>) {
    let nts: HashSet<&str> = g.nonterminals.iter().map(|n| n.name.as_str()).collect();
    let mut ops = Vec::new();
    let mut leaves = Vec::new();
    fn walk(t: &Term, nts: &HashSet<&str>, ops: &mut Vec<(Identifier, usize)>, leaves: &mut Vec<Term>) {
        match t {
            Term::App(id, args) => {
                if !ops.contains(&(id.clone(), args.len())) {
                    ops.push((id.clone(), args.len()));
                }
                args.iter().for_each(|a| walk(a, nts, ops, leaves));
            }
            Term::Ident(id) if id.as_simple().is_some_and(|n| nts.contains(n)) => {}
            Term::Annot(inner, _) => walk(inner, nts, ops, leaves),
            _ => {
                if !leaves.contains(t) {
                    leaves.push(t.clone());
                }
            }
        }
    }
    for group in &g.groups {
        for r in &group.rules {
            match r {
                GTerm::Term(t) => walk(t, &nts, &mut ops, &mut leaves),
                GTerm::Variable(s) => {
                    for p in rs.params.iter().filter(|p| &p.sort == s) {
                        let t = Term::sym(&p.name);
                        if !leaves.contains(&t) {
                            leaves.push(t);
                        }
                    }
                }
                GTerm::Constant(s) => {
                    for t in rs.constant_sample(s) {
                        if t.size() == 1 && !leaves.contains(&t) {
                            leaves.push(t);
                        } else if t.size() > 1 {
                            walk(&t, &nts, &mut ops, &mut leaves);
                        }
                    }
                }
            }
        }
    }
    (ops, leaves)
}

/// All terms over `ops` and `leaves`, indexed by size.
fn all_terms(ops: &[(Identifier, usize)], leaves: &[Term], max: usize) -> Vec<Vec<Term>> {
    let mut by: Vec<Vec<Term>> = vec![Vec::new(); max + 1];
    by[1] = leaves.to_vec();
    for s in 2..=max {
        let mut out = Vec::new();
        for (id, k) in ops {
            let mut parts = Vec::new();
            fill(&by, *k, s - 1, &mut parts, &mut |args| out.push(Term::App(id.clone(), args.to_vec())));
        }
        by[s] = out;
    }
    by
}

fn fill(by: &[Vec<Term>], k: usize, budget: usize, picked: &mut Vec<Term>, emit: &mut dyn FnMut(&[Term])) {
    if k == 0 {
        if budget == 0 {
            emit(picked);
        }
        return;
    }
    for s in 1..=budget.saturating_sub(k - 1) {
        for t in &by[s] {
            picked.push(t.clone());
            fill(by, k - 1, budget - s, picked, emit);
            picked.pop();
        }
    }
}

/// Panics on the first disagreement. Returns how many enumerated terms
/// and how many generated candidates were compared.
pub fn duality(rel: &str) -> (usize, usize) {
    let (g, rs) = grammar(rel);
    let table = rs.enumerate_all(6);
    let (mut listed, mut accepted) = (0, 0);
    for (y, nt) in rs.nts.iter().enumerate() {
        for s in 1..=6 {
            for t in &table.by_size[y][s] {
                assert!(rs.generates(&nt.name, t), "{rel}: {} enumerates {t} but does not generate it", nt.name);
                listed += 1;
            }
        }
    }
    let (ops, leaves) = symbols(&g, &rs);
    let candidates = all_terms(&ops, &leaves, 4);
    for (y, nt) in rs.nts.iter().enumerate() {
        let enumerated: HashSet<&Term> = table.by_size[y][1..=4].iter().flatten().collect();
        for t in candidates.iter().flatten() {
            if rs.generates(&nt.name, t) {
                assert!(enumerated.contains(t), "{rel}: {} generates {t} but did not enumerate it", nt.name);
                accepted += 1;
            }
        }
    }
    assert!(accepted > 0, "{rel}: no candidate was generated");
    (listed, accepted)
}
