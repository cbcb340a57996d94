use std::cmp::Ordering;

use super::{check_semantic_bounded, DomainSpec, Pins, Semantic, SolutionDef};
use crate::diag::{err, Code, DResult};
use crate::eval::Value;
use crate::session::{Objective, SynthState};
use crate::syntax::Term;
use crate::theories::{sort_check, Scope};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    APreferred,
    BPreferred,
    Incomparable,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
    /// No `:min`/`:max`: values compare only for equality.
    Unordered,
}

pub fn directions(obj: &Objective) -> Vec<Direction> {
    obj.terms
        .iter()
        .map(|t| match t {
            Term::Annot(_, attrs) if attrs.iter().any(|a| a.keyword == ":min") => Direction::Min,
            Term::Annot(_, attrs) if attrs.iter().any(|a| a.keyword == ":max") => Direction::Max,
            _ => Direction::Unordered,
        })
        .collect()
}

fn natural(a: &Value, b: &Value) -> Option<Ordering> {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Some(x.cmp(y)),
        (Value::Real(x), Value::Real(y)) => Some(x.cmp(y)),
        _ if a == b => Some(Ordering::Equal),
        _ => None,
    }
}

/// `Greater` when `a` is preferred at this position.
fn position(d: Direction, a: &Value, b: &Value) -> Option<Ordering> {
    if a == b {
        return Some(Ordering::Equal);
    }
    match d {
        Direction::Max => natural(a, b),
        Direction::Min => natural(a, b).map(Ordering::reverse),
        Direction::Unordered => None,
    }
}

pub fn compare_values(a: &[Value], b: &[Value], dirs: &[Direction], lexico: bool) -> Preference {
    assert_eq!(a.len(), b.len());
    let cmps: Vec<Option<Ordering>> = dirs.iter().zip(a.iter().zip(b)).map(|(d, (x, y))| position(*d, x, y)).collect();
    if lexico {
        for c in cmps {
            match c {
                Some(Ordering::Equal) => continue,
                Some(Ordering::Greater) => return Preference::APreferred,
                Some(Ordering::Less) => return Preference::BPreferred,
                None => return Preference::Incomparable,
            }
        }
        return Preference::Equal;
    }
    if cmps.iter().any(Option::is_none) {
        return Preference::Incomparable;
    }
    let ge = cmps.iter().all(|c| *c != Some(Ordering::Less));
    let le = cmps.iter().all(|c| *c != Some(Ordering::Greater));
    match (ge, le) {
        (true, true) => Preference::Equal,
        (true, false) => Preference::APreferred,
        (false, true) => Preference::BPreferred,
        (false, false) => Preference::Incomparable,
    }
}

pub fn compare_solutions(a: &[Value], b: &[Value], obj: &Objective) -> DResult<Preference> {
    if a.len() != obj.terms.len() || b.len() != obj.terms.len() {
        return err(Code::Opt, "value tuples must match the number of objectives");
    }
    Ok(compare_values(a, b, &directions(obj), obj.lexico()))
}

/// Consistency of an optimisation response: the solution must be correct
/// and each objective term must evaluate to the reported value.
pub fn check_optimize(
    state: &SynthState,
    values: &[Value],
    defs: &[SolutionDef],
    dom: &DomainSpec,
    pins: Option<&Pins>,
) -> DResult<Semantic> {
    let Some(obj) = &state.objective else {
        return err(Code::Opt, "the problem has no optimize-synth objective");
    };
    if values.len() != obj.terms.len() {
        return err(Code::Opt, format!("expected {} objective values, found {}", obj.terms.len(), values.len()));
    }
    let mut extra = Vec::new();
    for (t, v) in obj.terms.iter().zip(values) {
        let s = sort_check(t, &state.sig, &mut Scope::new())?;
        if v.sort(&state.sig).as_ref() != Some(&s) {
            return err(Code::Opt, format!("value {v} does not have the sort {s} of objective `{t}`"));
        }
        extra.push(Term::app("=", vec![t.strip_annotations(), v.to_term()]));
    }
    Ok(check_semantic_bounded(state, defs, dom, pins, &extra))
}
