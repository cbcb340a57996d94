//! Capture-avoiding substitution, beta-reduction and macro expansion.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{Identifier, SortedVar, Term};
use crate::theories::{Signature, SymKind};

/// Replacement for a symbol: a term for leaf occurrences, or a lambda
/// (parameters and body) that is beta-reduced at application sites.
#[derive(Debug, Clone)]
pub enum Binding {
    Term(Term),
    Lambda(Vec<String>, Term),
}

fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    (0..).map(|k| format!("{base}!{k}")).find(|c| !avoid.contains(c)).unwrap()
}

fn binding_free(b: &Binding) -> BTreeSet<String> {
    match b {
        Binding::Term(t) => t.free_symbols(),
        Binding::Lambda(ps, body) => {
            let mut s = body.free_symbols();
            for p in ps {
                s.remove(p);
            }
            s
        }
    }
}

/// Substitute `map` into `t` without capturing free symbols of the
/// replacements.
pub fn substitute(t: &Term, map: &BTreeMap<String, Term>) -> Term {
    let m: BTreeMap<String, Binding> = map.iter().map(|(k, v)| (k.clone(), Binding::Term(v.clone()))).collect();
    substitute_bindings(t, &m)
}

pub fn substitute_bindings(t: &Term, map: &BTreeMap<String, Binding>) -> Term {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        Term::Lit(_) => t.clone(),
        Term::Ident(id) => match id.as_simple().and_then(|s| map.get(s)) {
            Some(Binding::Term(r)) => r.clone(),
            Some(Binding::Lambda(ps, body)) if ps.is_empty() => body.clone(),
            _ => t.clone(),
        },
        Term::App(id, args) => {
            let args: Vec<Term> = args.iter().map(|a| substitute_bindings(a, map)).collect();
            match id.as_simple().and_then(|s| map.get(s)) {
                Some(Binding::Term(Term::Ident(new))) => Term::App(new.clone(), args),
                Some(Binding::Lambda(ps, body)) if ps.len() == args.len() => beta(ps, body, &args),
                _ => Term::App(id.clone(), args),
            }
        }
        Term::Annot(inner, attrs) => Term::Annot(Box::new(substitute_bindings(inner, map)), attrs.clone()),
        Term::Forall(vs, body) | Term::Exists(vs, body) => {
            let (vs, body) = under_binder(vs, body, map);
            if matches!(t, Term::Forall(..)) {
                Term::Forall(vs, Box::new(body))
            } else {
                Term::Exists(vs, Box::new(body))
            }
        }
        Term::Let(bs, body) => {
            let bound: Vec<Term> = bs.iter().map(|(_, bt)| substitute_bindings(bt, map)).collect();
            let names: Vec<String> = bs.iter().map(|(n, _)| n.clone()).collect();
            let (names, body) = rename_and_subst(&names, body, map);
            Term::Let(names.into_iter().zip(bound).collect(), Box::new(body))
        }
    }
}

fn under_binder(vs: &[SortedVar], body: &Term, map: &BTreeMap<String, Binding>) -> (Vec<SortedVar>, Term) {
    let names: Vec<String> = vs.iter().map(|v| v.name.clone()).collect();
    let (names, body) = rename_and_subst(&names, body, map);
    let vs = vs.iter().zip(names).map(|(v, n)| SortedVar::new(n, v.sort.clone())).collect();
    (vs, body)
}

fn rename_and_subst(names: &[String], body: &Term, map: &BTreeMap<String, Binding>) -> (Vec<String>, Term) {
    let mut inner: BTreeMap<String, Binding> = map.clone();
    for n in names {
        inner.remove(n);
    }
    let body_free = body.free_symbols();
    let mut repl_free = BTreeSet::new();
    for (k, b) in &inner {
        if body_free.contains(k) {
            repl_free.extend(binding_free(b));
        }
    }
    let mut avoid: BTreeSet<String> = body_free.union(&repl_free).cloned().collect();
    avoid.extend(names.iter().cloned());
    let mut new_names = Vec::new();
    for n in names {
        if repl_free.contains(n) {
            let f = fresh(n, &avoid);
            avoid.insert(f.clone());
            inner.insert(n.clone(), Binding::Term(Term::sym(f.clone())));
            new_names.push(f);
        } else {
            new_names.push(n.clone());
        }
    }
    (new_names, substitute_bindings(body, &inner))
}

/// Beta-reduce `(lambda (ps) body)` applied to `args`.
pub fn beta(params: &[String], body: &Term, args: &[Term]) -> Term {
    let map: BTreeMap<String, Term> = params.iter().cloned().zip(args.iter().cloned()).collect();
    substitute(body, &map)
}

/// Expand every macro application until none remain. Symbols in `bound`
/// (and binder-introduced symbols) shadow macros.
pub fn expand_macros(t: &Term, sig: &Signature) -> Term {
    expand_with_bound(t, sig, &mut Vec::new())
}

pub fn expand_macros_shadowed(t: &Term, sig: &Signature, bound: &[String]) -> Term {
    expand_with_bound(t, sig, &mut bound.to_vec())
}

fn macro_def<'a>(sig: &'a Signature, id: &Identifier, bound: &[String]) -> Option<(Vec<String>, &'a Term)> {
    let name = id.as_simple()?;
    if bound.iter().any(|b| b == name) {
        return None;
    }
    let sym = sig.symbols.get(name)?;
    if sym.kind != SymKind::Macro {
        return None;
    }
    Some((sym.params.iter().map(|p| p.name.clone()).collect(), sym.body.as_ref()?))
}

fn expand_with_bound(t: &Term, sig: &Signature, bound: &mut Vec<String>) -> Term {
    match t {
        Term::Lit(_) => t.clone(),
        Term::Ident(id) => match macro_def(sig, id, bound) {
            Some((ps, body)) if ps.is_empty() => expand_with_bound(body, sig, &mut Vec::new()),
            _ => t.clone(),
        },
        Term::App(id, args) => {
            let args: Vec<Term> = args.iter().map(|a| expand_with_bound(a, sig, bound)).collect();
            match macro_def(sig, id, bound) {
                Some((ps, body)) if ps.len() == args.len() => {
                    let reduced = beta(&ps, body, &args);
                    expand_with_bound(&reduced, sig, &mut Vec::new())
                }
                _ => Term::App(id.clone(), args),
            }
        }
        Term::Annot(inner, attrs) => Term::Annot(Box::new(expand_with_bound(inner, sig, bound)), attrs.clone()),
        Term::Forall(vs, body) | Term::Exists(vs, body) => {
            let n = bound.len();
            bound.extend(vs.iter().map(|v| v.name.clone()));
            let b = expand_with_bound(body, sig, bound);
            bound.truncate(n);
            if matches!(t, Term::Forall(..)) {
                Term::Forall(vs.clone(), Box::new(b))
            } else {
                Term::Exists(vs.clone(), Box::new(b))
            }
        }
        Term::Let(bs, body) => {
            let bs: Vec<(String, Term)> =
                bs.iter().map(|(n, bt)| (n.clone(), expand_with_bound(bt, sig, bound))).collect();
            let n = bound.len();
            bound.extend(bs.iter().map(|(x, _)| x.clone()));
            let b = expand_with_bound(body, sig, bound);
            bound.truncate(n);
            Term::Let(bs, Box::new(b))
        }
    }
}

/// Inline let-bindings (capture-avoiding).
pub fn eliminate_lets(t: &Term) -> Term {
    match t {
        Term::Let(bs, body) => {
            let map: BTreeMap<String, Term> = bs.iter().map(|(n, bt)| (n.clone(), eliminate_lets(bt))).collect();
            eliminate_lets(&substitute(body, &map))
        }
        Term::App(id, args) => Term::App(id.clone(), args.iter().map(eliminate_lets).collect()),
        Term::Annot(inner, attrs) => Term::Annot(Box::new(eliminate_lets(inner)), attrs.clone()),
        Term::Forall(vs, b) => Term::Forall(vs.clone(), Box::new(eliminate_lets(b))),
        Term::Exists(vs, b) => Term::Exists(vs.clone(), Box::new(eliminate_lets(b))),
        _ => t.clone(),
    }
}
