//! SMT-LIB 2.6 validity queries: the file is `unsat` iff the solution is
//! correct.

use std::collections::{BTreeMap, BTreeSet};

use super::semantic::weight_keys;
use super::SolutionDef;
use crate::eval::expand_macros;
use crate::diag::{err, Code, DResult};
use crate::session::SynthState;
use crate::syntax::{print_script, Command, Identifier, SortedVar, Term};

fn smt_logic(state: &SynthState) -> String {
    let mut name = state.logic.input.name.clone();
    if name == "ALL" {
        return name;
    }
    if !state.oracle_vars.is_empty() && !name.contains("UF") {
        let at = usize::from(name.starts_with('A'));
        name.insert_str(at, "UF");
    }
    name
}

fn conj(ts: &[Term]) -> Term {
    match ts {
        [] => Term::bool(true),
        [t] => t.clone(),
        _ => Term::app("and", ts.to_vec()),
    }
}

fn replace_weights(t: &Term, names: &BTreeMap<Identifier, String>) -> Term {
    match t {
        Term::Ident(id) => match names.get(id) {
            Some(n) => Term::sym(n),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| replace_weights(a, names)).collect()),
        Term::Annot(inner, attrs) => Term::Annot(Box::new(replace_weights(inner, names)), attrs.clone()),
        Term::Exists(vs, b) => Term::Exists(vs.clone(), Box::new(replace_weights(b, names))),
        Term::Forall(vs, b) => Term::Forall(vs.clone(), Box::new(replace_weights(b, names))),
        Term::Let(bs, b) => Term::Let(
            bs.iter().map(|(x, v)| (x.clone(), replace_weights(v, names))).collect(),
            Box::new(replace_weights(b, names)),
        ),
        Term::Lit(_) => t.clone(),
    }
}

fn declare(v: &SortedVar) -> String {
    match v.sort.as_arrow() {
        Some((args, ret)) => {
            let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            format!("(declare-fun {} ({}) {ret})\n", v.name, args.join(" "))
        }
        None => format!("(declare-const {} {})\n", v.name, v.sort),
    }
}

pub fn emit_smt(state: &SynthState, defs: &[SolutionDef], allow_pump_truncation: bool) -> DResult<String> {
    if !state.oracles.is_empty() {
        return err(Code::Oracle, "oracle commands have no SMT-LIB encoding; check them with the oracle transport instead");
    }
    let all: Vec<&Term> = state.constraints.iter().chain(&state.assumptions).collect();
    let weighted = !weight_keys(state, &all).is_empty();
    let mentions_weights = |t: &Term| !weight_keys(state, &[t]).is_empty();
    let mut out = format!("(set-logic {})\n", smt_logic(state));
    for c in &state.core {
        match c {
            // Macros over weight symbols are inlined into the query instead.
            Command::DefineFun(d) if weighted && mentions_weights(&d.body) => {}
            Command::DeclareDatatype(..)
            | Command::DeclareDatatypes(..)
            | Command::DeclareSort(..)
            | Command::DefineSort(..)
            | Command::DefineFun(_)
            | Command::DefineFunRec(_) => out.push_str(&print_script(std::slice::from_ref(c))),
            Command::SynthFun(sf) => {
                let Some(d) = defs.iter().find(|d| d.name == sf.name) else {
                    return err(Code::Response, format!("no definition for `{}`", sf.name));
                };
                out.push_str(&format!("{d}\n"));
            }
            _ => {}
        }
    }

    // Weight symbols become existentially chosen integers ranging over the bases.
    let mut names: BTreeMap<Identifier, String> = BTreeMap::new();
    let mut ranges: Vec<(String, BTreeSet<u64>)> = Vec::new();
    let mut notes = String::new();
    let inline = |t: &Term| if weighted { expand_macros(t, &state.sig) } else { t.clone() };
    let alpha: Vec<Term> = state.assumptions.iter().map(inline).collect();
    let phi: Vec<Term> = state.constraints.iter().map(inline).collect();
    for t in alpha.iter().chain(&phi) {
        t.for_each_ident(&mut |id, _| {
            if let Some((w, f)) = state.sig.weight_symbol(id) {
                if !names.contains_key(id) {
                    names.insert(id.clone(), format!("{w}!{f}"));
                }
            }
        });
    }
    for (id, name) in &names {
        let (w, f) = state.sig.weight_symbol(id).expect("weight symbol");
        let ws = match (state.fun(f).and_then(|e| e.rules.as_ref()), defs.iter().find(|d| d.name == f)) {
            (Some(rs), Some(d)) => rs.weight_sets(&format!(":{w}"), &d.body),
            _ => return err(Code::Weight, format!("no grammar to derive weights of `{f}`")),
        };
        if !ws.pumps().is_empty() {
            if !allow_pump_truncation {
                return err(Code::Weight, format!("weights of `{id}` are unbounded ({ws}); pass --allow-pump-truncation to keep only the bases"));
            }
            notes.push_str(&format!("; {id}: {ws}, pumps dropped\n"));
        }
        ranges.push((name.clone(), ws.bases()));
    }

    let alpha: Vec<Term> = alpha.iter().map(|t| replace_weights(t, &names)).collect();
    let phi: Vec<Term> = phi.iter().map(|t| replace_weights(t, &names)).collect();
    let body = if alpha.is_empty() { conj(&phi) } else { Term::app("=>", vec![conj(&alpha), conj(&phi)]) };

    if ranges.is_empty() {
        for v in &state.vars {
            out.push_str(&declare(v));
        }
        out.push_str(&format!("(assert (not {body}))\n"));
    } else {
        out.push_str(&notes);
        let vars: Vec<SortedVar> = state.vars.clone();
        let inner = if vars.is_empty() { body } else { Term::Forall(vars, Box::new(body)) };
        let mut parts: Vec<Term> = ranges
            .iter()
            .map(|(n, bases)| {
                let eqs: Vec<Term> = bases.iter().map(|b| Term::app("=", vec![Term::sym(n), Term::int(*b)])).collect();
                if eqs.len() == 1 { eqs[0].clone() } else { Term::app("or", eqs) }
            })
            .collect();
        parts.push(inner);
        let ws: Vec<SortedVar> = ranges.iter().map(|(n, _)| SortedVar::new(n, crate::syntax::Sort::int())).collect();
        let ex = Term::Exists(ws, Box::new(Term::app("and", parts)));
        out.push_str(&format!("(assert (not {ex}))\n"));
    }
    out.push_str("(check-sat)\n");
    Ok(out)
}
