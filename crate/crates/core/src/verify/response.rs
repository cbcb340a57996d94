//! Solver responses: `fail`, `infeasible`, a list of definitions, or a
//! value tuple followed by definitions for optimisation queries.

use std::fmt;

use crate::diag::{err, Code, DResult};
use crate::eval::{value_from_sexpr, Value};
use crate::reader::{read_all, SExpr};
use crate::session::SynthState;
use crate::syntax::{parse_command, Command, Sort, SortedVar, Term};
use crate::theories::{sort_check, Scope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionDef {
    pub name: String,
    pub params: Vec<SortedVar>,
    pub ret: Sort,
    pub body: Term,
    pub recursive: bool,
}

impl fmt::Display for SolutionDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kw = if self.recursive { "define-fun-rec" } else { "define-fun" };
        let ps: Vec<String> = self.params.iter().map(|p| format!("({} {})", p.name, p.sort)).collect();
        write!(f, "({kw} {} ({}) {} {})", self.name, ps.join(" "), self.ret, self.body)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Response {
    Solution(Vec<SolutionDef>),
    OptSolution(Vec<Value>, Vec<SolutionDef>),
    Infeasible,
    Fail,
}

impl Response {
    pub fn defs(&self) -> &[SolutionDef] {
        match self {
            Response::Solution(d) | Response::OptSolution(_, d) => d,
            _ => &[],
        }
    }
}

impl fmt::Display for Response {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Response::Fail => writeln!(f, "fail"),
            Response::Infeasible => writeln!(f, "infeasible"),
            Response::Solution(defs) | Response::OptSolution(_, defs) => {
                writeln!(f, "(")?;
                if let Response::OptSolution(vs, _) = self {
                    let vs: Vec<String> = vs.iter().map(Value::to_string).collect();
                    writeln!(f, "  ({})", vs.join(" "))?;
                }
                for d in defs {
                    writeln!(f, "  {d}")?;
                }
                writeln!(f, ")")
            }
        }
    }
}

fn bad<T>(msg: impl Into<String>) -> DResult<T> {
    err(Code::Response, msg)
}

/// Parse a response and check it against the declarations in `state`.
pub fn parse_response(text: &str, state: &SynthState) -> DResult<Response> {
    let items = read_all(text)?;
    let [item] = items.as_slice() else {
        return bad(format!("expected one response, found {} S-expressions", items.len()));
    };
    if item.is_symbol("fail") {
        return Ok(Response::Fail);
    }
    if item.is_symbol("infeasible") {
        return Ok(Response::Infeasible);
    }
    let Some(list) = item.as_list() else {
        return bad(format!("unexpected response `{item}`"));
    };
    let (values, defs) = match (list.first(), &state.objective) {
        (Some(SExpr::List { items, .. }), Some(obj)) if !items.first().is_some_and(|h| h.is_symbol("define-fun")) => {
            if items.len() != obj.terms.len() {
                return bad(format!("expected {} objective values, found {}", obj.terms.len(), items.len()));
            }
            let mut vals = Vec::new();
            for (e, t) in items.iter().zip(&obj.terms) {
                let s = sort_check(t, &state.sig, &mut Scope::new())?;
                vals.push(value_from_sexpr(e, &s, &state.sig).map_err(|mut d| {
                    d.code = Code::Response;
                    d
                })?);
            }
            (Some(vals), &list[1..])
        }
        (_, Some(_)) => return bad("an optimisation response starts with a tuple of objective values"),
        _ => (None, list),
    };
    let defs = parse_defs(defs, state)?;
    Ok(match values {
        Some(v) => Response::OptSolution(v, defs),
        None => Response::Solution(defs),
    })
}

fn parse_defs(items: &[SExpr], state: &SynthState) -> DResult<Vec<SolutionDef>> {
    if items.len() != state.funs.len() {
        return bad(format!("expected {} definitions, found {}", state.funs.len(), items.len()));
    }
    let mut out = Vec::new();
    for (e, entry) in items.iter().zip(&state.funs) {
        let (fd, rec) = match parse_command(e, &state.opts)? {
            Command::DefineFun(fd) => (fd, false),
            Command::DefineFunRec(fd) => (fd, true),
            other => return bad(format!("expected define-fun, found {}", other.name())),
        };
        if fd.name != entry.name {
            return bad(format!("definition of `{}` found where `{}` was expected", fd.name, entry.name));
        }
        let params = fd
            .params
            .iter()
            .map(|p| Ok(SortedVar::new(&p.name, state.sig.resolve_sort(&p.sort)?)))
            .collect::<DResult<Vec<_>>>()?;
        if params != entry.params {
            return bad(format!("argument list of `{}` differs from its synth-fun declaration", fd.name));
        }
        if state.sig.resolve_sort(&fd.ret)? != entry.ret {
            return bad(format!("`{}` is declared to return {}", fd.name, entry.ret));
        }
        let free = fd.body.free_symbols();
        let occurs = free.contains(&fd.name) && !params.iter().any(|p| p.name == fd.name);
        if occurs && !rec {
            return bad(format!("`{}` occurs in its own body; use define-fun-rec", fd.name));
        }
        if rec && !occurs {
            return bad(format!("`{}` is not recursive; use define-fun", fd.name));
        }
        let mut scope: Scope = params.iter().map(|p| (p.name.clone(), p.sort.clone())).collect();
        let s = sort_check(&fd.body, &state.sig, &mut scope)?;
        if s != entry.ret {
            return bad(format!("body of `{}` has sort {s}, expected {}", fd.name, entry.ret));
        }
        out.push(SolutionDef { name: fd.name, params, ret: entry.ret.clone(), body: fd.body, recursive: rec });
    }
    Ok(out)
}
