//! Bounded falsification of `(⋀α) ⇒ (⋀φ)` for a candidate solution.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{domain, SolutionDef};
use crate::eval::{expand_macros, EvalError, Interp, Value, DEFAULT_FUEL};
use crate::grammar::WeightSet;
use crate::session::SynthState;
use crate::syntax::{SortedVar, Term};

#[derive(Debug, Clone, Copy)]
pub struct DomainSpec {
    pub bound: i64,
    pub samples: usize,
    pub seed: u64,
    pub fuel: u64,
    /// Largest exhaustive grid per constraint before the Int bound shrinks.
    pub grid_cap: usize,
}

impl Default for DomainSpec {
    fn default() -> DomainSpec {
        DomainSpec { bound: 50, samples: 500, seed: 0, fuel: DEFAULT_FUEL, grid_cap: 100_000 }
    }
}

/// Oracle results that extend the conjecture: pinned oracle-function
/// tables and instantiated constraints and assumptions.
#[derive(Debug, Clone, Default)]
pub struct Pins {
    pub tables: HashMap<String, HashMap<Vec<Value>, Value>>,
    pub constraints: Vec<Term>,
    pub assumptions: Vec<Term>,
}

/// Weight symbol `(_ w f)` as (weight name, function).
pub type WeightKey = (String, String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Semantic {
    Refuted { constraint: Term, point: Vec<(String, Value)>, weights: BTreeMap<WeightKey, BigInt> },
    PassedBounded { points: usize, weights: BTreeMap<WeightKey, BigInt> },
    Unknown(String),
}

impl Semantic {
    pub fn passed(&self) -> bool {
        matches!(self, Semantic::PassedBounded { .. })
    }

    pub fn refuted(&self) -> bool {
        matches!(self, Semantic::Refuted { .. })
    }
}

fn show_weights(f: &mut fmt::Formatter<'_>, ws: &BTreeMap<WeightKey, BigInt>) -> fmt::Result {
    if ws.is_empty() {
        return Ok(());
    }
    let parts: Vec<String> = ws.iter().map(|((w, g), v)| format!("(_ {w} {g})={v}")).collect();
    write!(f, " with {}", parts.join(", "))
}

impl fmt::Display for Semantic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantic::PassedBounded { points, weights } => {
                write!(f, "passed-bounded ({points} points)")?;
                show_weights(f, weights)
            }
            Semantic::Refuted { constraint, point, weights } => {
                write!(f, "refuted: {constraint}")?;
                if !point.is_empty() {
                    let p: Vec<String> = point.iter().map(|(x, v)| format!("{x}={v}")).collect();
                    write!(f, " at {}", p.join(" "))?;
                }
                show_weights(f, weights)
            }
            Semantic::Unknown(r) => write!(f, "unknown: {r}"),
        }
    }
}

/// Candidate values per weight symbol, derived from the solution bodies.
fn weight_choices(state: &SynthState, defs: &[SolutionDef], keys: &BTreeSet<WeightKey>) -> Result<Vec<(WeightKey, Vec<u64>)>, WeightKey> {
    let mut out = Vec::new();
    for key in keys {
        let (w, f) = key;
        let ws = match (state.fun(f).and_then(|e| e.rules.as_ref()), defs.iter().find(|d| &d.name == f)) {
            (Some(rs), Some(d)) => rs.weight_sets(&format!(":{w}"), &d.body),
            _ => WeightSet::empty(),
        };
        if ws.is_empty() {
            return Err(key.clone());
        }
        let top = ws.bases().iter().max().copied().unwrap_or(0) + 4 * ws.pumps().iter().max().copied().unwrap_or(0);
        let vals: Vec<u64> = ws.members_upto(top).into_iter().take(32).collect();
        out.push((key.clone(), vals));
    }
    Ok(out)
}

/// Weight symbols mentioned by `ts`, looking through macros.
pub(crate) fn weight_keys(state: &SynthState, ts: &[&Term]) -> BTreeSet<WeightKey> {
    let mut keys = BTreeSet::new();
    for t in ts {
        expand_macros(t, &state.sig).for_each_ident(&mut |id, _| {
            if let Some((w, f)) = state.sig.weight_symbol(id) {
                keys.insert((w.to_string(), f.to_string()));
            }
        });
    }
    keys
}

/// Install a solution into a fresh interpreter.
pub fn interp_for<'s>(state: &'s SynthState, defs: &[SolutionDef], fuel: u64, pins: Option<&Pins>) -> Interp<'s> {
    let mut it = Interp::new(&state.sig);
    it.fuel = fuel;
    for d in defs {
        it.define(&d.name, d.params.clone(), d.body.clone(), d.recursive);
    }
    if let Some(p) = pins {
        it.oracle_tables = p.tables.clone();
    }
    it
}

/// Bounded semantic check. `extra` holds variable-free constraints added by
/// the caller (objective consistency).
pub fn check_semantic_bounded(
    state: &SynthState,
    defs: &[SolutionDef],
    dom: &DomainSpec,
    pins: Option<&Pins>,
    extra: &[Term],
) -> Semantic {
    if !state.oracles.is_empty() && pins.is_none() {
        return Semantic::Unknown("oracle constraints have not been instantiated".into());
    }
    let mut constraints: Vec<Term> = state.constraints.clone();
    let mut assumptions: Vec<Term> = state.assumptions.clone();
    if let Some(p) = pins {
        constraints.extend(p.constraints.iter().cloned());
        assumptions.extend(p.assumptions.iter().cloned());
    }
    constraints.extend(extra.iter().cloned());

    let all: Vec<&Term> = constraints.iter().chain(&assumptions).collect();
    let keys = weight_keys(state, &all);
    let choices = match weight_choices(state, defs, &keys) {
        Ok(c) => c,
        Err((w, f)) => {
            let c = constraints.iter().find(|t| weight_keys(state, &[t]).contains(&(w.clone(), f.clone())));
            return Semantic::Refuted {
                constraint: c.cloned().unwrap_or_else(|| Term::bool(true)),
                point: Vec::new(),
                weights: BTreeMap::new(),
            };
        }
    };

    let mut base = interp_for(state, defs, dom.fuel, pins);
    let mut first_refuted = None;
    let mut first_unknown = None;
    let mut idx = vec![0usize; choices.len()];
    let mut tried = 0;
    loop {
        let sigma: BTreeMap<WeightKey, BigInt> =
            choices.iter().zip(&idx).map(|((k, vs), &i)| (k.clone(), BigInt::from(vs[i]))).collect();
        base.weights = sigma.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        match check_points(state, &base, &constraints, &assumptions, dom) {
            Semantic::PassedBounded { points, .. } => return Semantic::PassedBounded { points, weights: sigma },
            Semantic::Refuted { constraint, point, .. } => {
                first_refuted.get_or_insert(Semantic::Refuted { constraint, point, weights: sigma });
            }
            u @ Semantic::Unknown(_) => {
                first_unknown.get_or_insert(u);
            }
        }
        tried += 1;
        // Advance the odometer over weight choices.
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() || tried >= 256 {
            break;
        }
    }
    first_unknown.or(first_refuted).expect("at least one weight choice")
}

fn universal_vars<'s>(state: &'s SynthState, t: &Term) -> Vec<&'s SortedVar> {
    let free = t.free_symbols();
    state.vars.iter().filter(|v| free.contains(&v.name) && !state.oracle_vars.contains(&v.name)).collect()
}

fn conjoin(ts: &[Term]) -> Term {
    match ts {
        [t] => t.clone(),
        _ => Term::app("and", ts.to_vec()),
    }
}

fn check_points(state: &SynthState, it: &Interp, constraints: &[Term], assumptions: &[Term], dom: &DomainSpec) -> Semantic {
    let mut points = 0;
    let mut unknown: Option<String> = None;
    for (i, phi) in constraints.iter().enumerate() {
        let formula = if assumptions.is_empty() {
            phi.clone()
        } else {
            Term::app("=>", vec![conjoin(assumptions), phi.clone()])
        };
        let vars = universal_vars(state, &formula);
        let mut run = |env: &[(String, Value)]| -> Option<Semantic> {
            points += 1;
            match it.eval(&formula, env) {
                Ok(Value::Bool(true)) => None,
                Ok(Value::Bool(false)) => Some(Semantic::Refuted {
                    constraint: phi.clone(),
                    point: env.to_vec(),
                    weights: BTreeMap::new(),
                }),
                Ok(v) => {
                    unknown.get_or_insert(format!("constraint evaluated to {v}"));
                    None
                }
                Err(e) => {
                    unknown.get_or_insert(describe(&e));
                    None
                }
            }
        };
        if vars.is_empty() {
            if let Some(r) = run(&[]) {
                return r;
            }
            continue;
        }
        // Exhaustive grid, shrinking the Int bound to fit the cap.
        let mut bound = dom.bound;
        let grid = loop {
            let Some(g) = vars.iter().map(|v| domain::grid(&v.sort, bound, &state.sig)).collect::<Option<Vec<_>>>() else {
                let v = vars.iter().find(|v| domain::grid(&v.sort, 0, &state.sig).is_none()).unwrap();
                return Semantic::Unknown(format!("unsupported: no test domain for sort {} of `{}`", v.sort, v.name));
            };
            let size = g.iter().try_fold(1usize, |acc, d| acc.checked_mul(d.len()));
            match size {
                Some(n) if n <= dom.grid_cap => break Some(g),
                _ if bound > 0 => bound = (bound * 3 / 4).min(bound - 1),
                _ => break None,
            }
        };
        if let Some(g) = &grid {
            let mut idx = vec![0usize; g.len()];
            let mut env: Vec<(String, Value)> = vars.iter().map(|v| (v.name.clone(), Value::Bool(false))).collect();
            loop {
                for (k, d) in g.iter().enumerate() {
                    env[k].1 = d[idx[k]].clone();
                }
                if let Some(r) = run(&env) {
                    return r;
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < g[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
        if grid.is_some() && vars.iter().all(|v| domain::exhaustive(&v.sort)) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(dom.seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        for _ in 0..dom.samples {
            let env: Option<Vec<(String, Value)>> = vars
                .iter()
                .map(|v| domain::random(&v.sort, dom.bound, &state.sig, &mut rng).map(|x| (v.name.clone(), x)))
                .collect();
            let Some(env) = env else { break };
            if let Some(r) = run(&env) {
                return r;
            }
        }
    }
    match unknown {
        Some(r) => Semantic::Unknown(r),
        None => Semantic::PassedBounded { points, weights: BTreeMap::new() },
    }
}

fn describe(e: &EvalError) -> String {
    match e {
        EvalError::OutOfFuel => "out-of-fuel".into(),
        EvalError::Undefined(m) => format!("undefined: {m}"),
        EvalError::Unsupported(m) => format!("unsupported: {m}"),
        EvalError::Unpinned(m) => format!("unsupported: no interpretation for `{m}`"),
        EvalError::Unbound(m) => format!("unsupported: unbound `{m}`"),
    }
}
