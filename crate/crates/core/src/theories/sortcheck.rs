use super::builtins::{builtin_app, builtin_const};
use super::Signature;
use crate::diag::{err, Code, DResult};
use crate::syntax::{Identifier, Literal, Sort, SortedVar, Term};

/// Local bindings, innermost last.
pub type Scope = Vec<(String, Sort)>;

fn lookup<'a>(scope: &'a Scope, name: &str) -> Option<&'a Sort> {
    scope.iter().rev().find(|(n, _)| n == name).map(|(_, s)| s)
}

pub(crate) fn literal_sort(l: &Literal, sig: &Signature) -> DResult<Sort> {
    let th = &sig.theories;
    match l {
        Literal::Bool(_) => Ok(Sort::bool()),
        Literal::Numeral(_) if th.has_int_sort() => Ok(Sort::int()),
        Literal::Numeral(_) if th.reals => Ok(Sort::real()),
        Literal::Decimal(_) if th.reals => Ok(Sort::real()),
        Literal::Hex(h) if th.bv => Ok(Sort::bitvec(4 * h.len() as u64)),
        Literal::Binary(b) if th.bv => Ok(Sort::bitvec(b.len() as u64)),
        Literal::Str(_) if th.strings => Ok(Sort::string()),
        _ => err(Code::Sort, format!("literal `{l}` is not available in the current logic")),
    }
}

fn apply_arrow(id: &Identifier, arrow: &Sort, args: &[Sort]) -> DResult<Sort> {
    let Some((params, ret)) = arrow.as_arrow() else {
        return err(Code::Sort, format!("`{id}` of sort {arrow} cannot be applied"));
    };
    if params != args {
        return err(Code::Sort, format!("`{id}` expects arguments ({}), found ({})", join(params), join(args)));
    }
    Ok(ret.clone())
}

fn join(ss: &[Sort]) -> String {
    ss.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

fn ident_sort(id: &Identifier, sig: &Signature, scope: &Scope) -> DResult<Sort> {
    if let Some(name) = id.as_simple() {
        if let Some(s) = lookup(scope, name) {
            return Ok(s.clone());
        }
        if let Some(sym) = sig.symbols.get(name) {
            return Ok(sym.value_sort());
        }
        if let Some((def, c)) = sig.constructor(name) {
            if c.selectors.is_empty() {
                return Ok(Sort::simple(&def.name));
            }
            return err(Code::Sort, format!("constructor `{name}` needs {} arguments", c.selectors.len()));
        }
        if let Some(s) = builtin_const(id, sig) {
            return Ok(s);
        }
        return err(Code::Unbound, format!("unbound symbol `{name}`"));
    }
    if sig.weight_symbol(id).is_some() {
        return Ok(Sort::int());
    }
    err(Code::Unbound, format!("unknown identifier `{id}`"))
}

fn bind_vars(vars: &[SortedVar], sig: &Signature, scope: &mut Scope) -> DResult<()> {
    for v in vars {
        let s = sig.resolve_sort(&v.sort)?;
        scope.push((v.name.clone(), s));
    }
    Ok(())
}

/// Infer the sort of `t`. Annotations are transparent.
pub fn sort_check(t: &Term, sig: &Signature, scope: &mut Scope) -> DResult<Sort> {
    match t {
        Term::Lit(l) => literal_sort(l, sig),
        Term::Ident(id) => ident_sort(id, sig, scope),
        Term::Annot(inner, _) => sort_check(inner, sig, scope),
        Term::Forall(vars, body) | Term::Exists(vars, body) => {
            let n = scope.len();
            bind_vars(vars, sig, scope)?;
            let s = sort_check(body, sig, scope);
            scope.truncate(n);
            let s = s?;
            if !s.is_bool() {
                return err(Code::Sort, format!("quantifier body has sort {s}, expected Bool"));
            }
            Ok(Sort::bool())
        }
        Term::Let(bindings, body) => {
            let mut sorts = Vec::new();
            for (x, bt) in bindings {
                sorts.push((x.clone(), sort_check(bt, sig, scope)?));
            }
            let n = scope.len();
            scope.extend(sorts);
            let s = sort_check(body, sig, scope);
            scope.truncate(n);
            s
        }
        Term::App(id, args) => {
            let arg_sorts = args.iter().map(|a| sort_check(a, sig, scope)).collect::<DResult<Vec<_>>>()?;
            if let Some(name) = id.as_simple() {
                if let Some(s) = lookup(scope, name) {
                    return apply_arrow(id, s, &arg_sorts);
                }
                if let Some(sym) = sig.symbols.get(name) {
                    if sym.params.is_empty() {
                        return apply_arrow(id, &sym.ret, &arg_sorts);
                    }
                    let params: Vec<Sort> = sym.params.iter().map(|p| p.sort.clone()).collect();
                    if params != arg_sorts {
                        return err(
                            Code::Sort,
                            format!("`{name}` expects arguments ({}), found ({})", join(&params), join(&arg_sorts)),
                        );
                    }
                    return Ok(sym.ret.clone());
                }
                if let Some((def, c)) = sig.constructor(name) {
                    let params: Vec<Sort> = c.selectors.iter().map(|p| p.sort.clone()).collect();
                    if params != arg_sorts {
                        return err(
                            Code::Sort,
                            format!("constructor `{name}` expects ({}), found ({})", join(&params), join(&arg_sorts)),
                        );
                    }
                    return Ok(Sort::simple(&def.name));
                }
                if let Some((dt, ci, si)) = sig.sels.get(name) {
                    if arg_sorts.len() == 1 && arg_sorts[0].as_simple_name() == Some(dt.as_str()) {
                        return Ok(sig.datatypes[dt].constructors[*ci].selectors[*si].sort.clone());
                    }
                    return err(Code::Sort, format!("selector `{name}` expects one argument of sort {dt}"));
                }
            }
            match builtin_app(id, &arg_sorts, sig) {
                Some(Ok(s)) => Ok(s),
                Some(Err(m)) => err(Code::Sort, m),
                None => err(Code::Unbound, format!("unknown function `{id}`")),
            }
        }
    }
}
