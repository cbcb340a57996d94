use std::fmt;

use super::SolutionDef;
use crate::logics::check_output_term;
use crate::session::SynthState;
use crate::syntax::Term;
use crate::theories::{sort_check, Scope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticFailure {
    pub fun: String,
    /// Smallest subterm that no nonterminal generates, when one was found.
    pub culprit: Option<Term>,
    pub reason: String,
}

impl fmt::Display for SyntacticFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`: {}", self.fun, self.reason)?;
        if let Some(t) = &self.culprit {
            write!(f, " (at `{t}`)")?;
        }
        Ok(())
    }
}

/// Grammar membership for every function with a grammar, output-logic
/// conformance for the rest.
pub fn check_syntactic(state: &SynthState, defs: &[SolutionDef]) -> Result<(), SyntacticFailure> {
    for d in defs {
        let Some(entry) = state.fun(&d.name) else {
            return Err(fail(&d.name, None, "not a function-to-synthesize"));
        };
        let body = d.body.strip_annotations();
        match &entry.rules {
            Some(rs) => {
                if let Some(y) = body.free_symbols().iter().find(|s| rs.nt_index(s).is_some() && !rs.params.iter().any(|p| &p.name == *s)) {
                    return Err(fail(&d.name, None, &format!("body mentions nonterminal `{y}`")));
                }
                if !rs.generates(rs.start(), &body) {
                    let culprit = deepest_rejected(rs, &body);
                    return Err(fail(&d.name, culprit, &format!("body is not generated by the grammar of `{}`", d.name)));
                }
            }
            None => {
                let mut scope: Scope = entry.params.iter().map(|p| (p.name.clone(), p.sort.clone())).collect();
                match sort_check(&body, &state.sig, &mut scope) {
                    Ok(s) if s == entry.ret => {}
                    Ok(s) => return Err(fail(&d.name, None, &format!("body has sort {s}, expected {}", entry.ret))),
                    Err(e) => return Err(fail(&d.name, None, &e.message)),
                }
                if let Err(v) = check_output_term(&state.logic, &body, &state.sig) {
                    return Err(fail(&d.name, v.at.clone(), &v.reason));
                }
            }
        }
    }
    Ok(())
}

fn fail(fun: &str, culprit: Option<Term>, reason: &str) -> SyntacticFailure {
    SyntacticFailure { fun: fun.to_string(), culprit, reason: reason.to_string() }
}

/// Descend into subterms that no nonterminal generates.
fn deepest_rejected(rs: &crate::grammar::RuleSet, t: &Term) -> Option<Term> {
    let by_any = |t: &Term| rs.nts.iter().any(|y| rs.generates(&y.name, t));
    if by_any(t) {
        return None;
    }
    if let Term::App(_, args) = t {
        for a in args {
            if let Some(c) = deepest_rejected(rs, a) {
                return Some(c);
            }
        }
    }
    Some(t.clone())
}
