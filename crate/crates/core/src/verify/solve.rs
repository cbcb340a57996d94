//! Bottom-up enumerative solver with observational-equivalence pruning.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::semantic::interp_for;
use super::{check_semantic_bounded, domain, DomainSpec, Pins, Response, Semantic, SolutionDef};
use crate::eval::{Interp, Value};
use crate::grammar::{Rhs, RuleSet};
use crate::session::{FunEntry, SynthState};
use crate::syntax::{SortedVar, Term};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub max_size: usize,
    pub budget: Duration,
    pub dom: DomainSpec,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions { max_size: 7, budget: Duration::from_secs(60), dom: DomainSpec::default() }
    }
}

const CHEAP_BOUND: i64 = 2;
const CHEAP_CAP: usize = 125;
const CHEAP_RANDOM: usize = 40;
const MAX_ROUNDS: usize = 32;

type Env = Vec<(String, Value)>;

/// A constraint in implication form with its quick-test points.
struct Probe {
    formula: Term,
    envs: Vec<Env>,
}

#[derive(Hash, PartialEq, Eq)]
enum SigKey {
    Outputs(Vec<Value>),
    /// Evaluation failed somewhere; the term stands for itself.
    Term(Term),
}

/// Per-function enumeration state, indexed `[nonterminal][size]`.
struct FunEnum<'a> {
    rs: &'a RuleSet,
    inputs: Vec<Vec<Value>>,
    by_size: Vec<Vec<Vec<Term>>>,
    seen: Vec<HashSet<SigKey>>,
}

impl<'a> FunEnum<'a> {
    fn new(rs: &'a RuleSet, inputs: Vec<Vec<Value>>) -> FunEnum<'a> {
        let n = rs.nts.len();
        FunEnum { rs, inputs, by_size: vec![vec![Vec::new()]; n], seen: (0..n).map(|_| HashSet::new()).collect() }
    }

    fn key(&self, it: &Interp, t: &Term) -> SigKey {
        let mut outs = Vec::with_capacity(self.inputs.len());
        for tuple in &self.inputs {
            let env: Env = self.rs.params.iter().map(|p| p.name.clone()).zip(tuple.iter().cloned()).collect();
            match it.eval(t, &env) {
                Ok(v) => outs.push(v),
                Err(_) => return SigKey::Term(t.clone()),
            }
        }
        SigKey::Outputs(outs)
    }

    fn size_done(&self) -> usize {
        self.by_size[0].len() - 1
    }

    /// Extend every nonterminal with its representatives of the next size.
    fn grow(&mut self, it: &Interp) {
        let size = self.size_done() + 1;
        let n = self.rs.nts.len();
        let mut fresh: Vec<Vec<Term>> = vec![Vec::new(); n];
        for (y, rules) in self.rs.rules.iter().enumerate() {
            for r in rules {
                match &r.rhs {
                    Rhs::Const(s) => fresh[y].extend(self.rs.constant_sample(s).into_iter().filter(|t| t.size() == size)),
                    Rhs::Var(_, vs) if size == 1 => fresh[y].extend(vs.iter().map(Term::sym)),
                    Rhs::Var(..) => {}
                    Rhs::Term(p) => {
                        let mut holes = Vec::new();
                        p.holes(&mut holes);
                        if holes.len() == 1 && p.fixed_size() == 0 {
                            continue;
                        }
                        let fixed = p.fixed_size();
                        if fixed > size {
                            continue;
                        }
                        if holes.is_empty() {
                            if fixed == size {
                                fresh[y].push(p.fill(&mut std::iter::empty()));
                            }
                            continue;
                        }
                        let mut picked = Vec::new();
                        combos(&self.by_size, &holes, size - fixed, &mut picked, &mut |subs| {
                            fresh[y].push(p.fill(&mut subs.iter().cloned()));
                        });
                    }
                }
            }
        }
        let mut next: Vec<Vec<Term>> = vec![Vec::new(); n];
        for y in 0..n {
            for &z in &self.rs.unit[y] {
                for t in &fresh[z] {
                    let k = self.key(it, t);
                    if self.seen[y].insert(k) {
                        next[y].push(t.clone());
                    }
                }
            }
        }
        for (y, ts) in next.into_iter().enumerate() {
            self.by_size[y].push(ts);
        }
    }

    fn at(&mut self, it: &Interp, size: usize) -> &[Term] {
        while self.size_done() < size {
            self.grow(it);
        }
        &self.by_size[0][size]
    }
}

fn combos(table: &[Vec<Vec<Term>>], holes: &[usize], budget: usize, picked: &mut Vec<Term>, emit: &mut impl FnMut(&[Term])) {
    let Some((&h, rest)) = holes.split_first() else {
        if budget == 0 {
            emit(picked);
        }
        return;
    };
    if budget < holes.len() {
        return;
    }
    for s in 1..=budget - rest.len() {
        if rest.is_empty() && s != budget {
            continue;
        }
        if s >= table[h].len() {
            break;
        }
        for t in &table[h][s] {
            picked.push(t.clone());
            combos(table, rest, budget - s, picked, emit);
            picked.pop();
        }
    }
}

fn cheap_envs(vars: &[&SortedVar], state: &SynthState, seed: u64) -> Vec<Env> {
    if vars.is_empty() {
        return vec![Vec::new()];
    }
    let grids: Option<Vec<Vec<Value>>> = vars.iter().map(|v| domain::grid(&v.sort, CHEAP_BOUND, &state.sig)).collect();
    let mut out = Vec::new();
    if let Some(g) = grids {
        let total = g.iter().try_fold(1usize, |a, d| a.checked_mul(d.len()));
        if total.is_some_and(|t| t <= CHEAP_CAP) {
            let mut idx = vec![0usize; g.len()];
            loop {
                out.push(vars.iter().zip(&idx).enumerate().map(|(k, (v, &i))| (v.name.clone(), g[k][i].clone())).collect());
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
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CHEAP_RANDOM {
        let env: Option<Env> =
            vars.iter().map(|v| domain::random(&v.sort, 10, &state.sig, &mut rng).map(|x| (v.name.clone(), x))).collect();
        match env {
            Some(e) => out.push(e),
            None => break,
        }
    }
    out
}

/// Ground applications `(f a…)` whose arguments do not mention any
/// function-to-synthesize.
fn applications(t: &Term, f: &str, state: &SynthState, out: &mut Vec<Vec<Term>>) {
    match t {
        Term::App(id, args) => {
            if id.as_simple() == Some(f) && args.iter().all(|a| a.free_symbols().iter().all(|s| !state.sig.is_synth_fun(s))) {
                out.push(args.clone());
            }
            args.iter().for_each(|a| applications(a, f, state, out));
        }
        Term::Annot(inner, _) => applications(inner, f, state, out),
        Term::Exists(_, b) | Term::Forall(_, b) => applications(b, f, state, out),
        Term::Let(bs, b) => {
            bs.iter().for_each(|(_, v)| applications(v, f, state, out));
            applications(b, f, state, out);
        }
        _ => {}
    }
}

fn inputs_for(entry: &FunEntry, probes: &[Probe], state: &SynthState, it: &Interp) -> Vec<Vec<Value>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in probes {
        let mut apps = Vec::new();
        applications(&p.formula, &entry.name, state, &mut apps);
        for env in &p.envs {
            for args in &apps {
                let vals: Option<Vec<Value>> = args.iter().map(|a| it.eval(a, env).ok()).collect();
                if let Some(v) = vals {
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        let vars: Vec<&SortedVar> = entry.params.iter().collect();
        for env in cheap_envs(&vars, state, 1) {
            out.push(env.into_iter().map(|(_, v)| v).collect());
        }
    }
    out
}

fn quick(state: &SynthState, defs: &[SolutionDef], probes: &[Probe], fuel: u64, pins: Option<&Pins>) -> bool {
    let it = interp_for(state, defs, fuel.min(2_000), pins);
    probes.iter().all(|p| p.envs.iter().all(|env| matches!(it.eval(&p.formula, env), Ok(Value::Bool(true)))))
}

fn def_for(entry: &FunEntry, body: &Term) -> SolutionDef {
    SolutionDef {
        name: entry.name.clone(),
        params: entry.params.clone(),
        ret: entry.ret.clone(),
        body: body.clone(),
        recursive: body.free_symbols().contains(&entry.name),
    }
}

/// Size vectors with the given total, each component in `1..=max`.
fn compositions(n: usize, total: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let left = n - cur.len() - 1;
    for s in 1..=max.min(total.saturating_sub(left)) {
        cur.push(s);
        compositions(n, total - s, max, cur, out);
        cur.pop();
    }
}

pub fn solve_enumerative(state: &SynthState, opts: &SolveOptions, pins: Option<&Pins>) -> Response {
    let deadline = Instant::now() + opts.budget;
    if state.funs.is_empty() || state.funs.iter().any(|f| f.rules.is_none()) {
        return Response::Fail;
    }
    let mut constraints = state.constraints.clone();
    let mut assumptions = state.assumptions.clone();
    if let Some(p) = pins {
        constraints.extend(p.constraints.iter().cloned());
        assumptions.extend(p.assumptions.iter().cloned());
    }
    let mut probes: Vec<Probe> = constraints
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let formula = if assumptions.is_empty() {
                phi.clone()
            } else {
                Term::app("=>", vec![Term::app("and", assumptions.clone()), phi.clone()])
            };
            let free = formula.free_symbols();
            let vars: Vec<&SortedVar> =
                state.vars.iter().filter(|v| free.contains(&v.name) && !state.oracle_vars.contains(&v.name)).collect();
            let envs = cheap_envs(&vars, state, opts.dom.seed.wrapping_add(i as u64));
            Probe { formula, envs }
        })
        .collect();

    let base = interp_for(state, &[], opts.dom.fuel.min(2_000), pins);
    let n = state.funs.len();
    for _round in 0..MAX_ROUNDS {
        let mut enums: Vec<FunEnum> = state
            .funs
            .iter()
            .map(|e| FunEnum::new(e.rules.as_ref().unwrap(), inputs_for(e, &probes, state, &base)))
            .collect();
        let mut cex: Option<(Term, Env)> = None;
        'search: for total in n..=n * opts.max_size {
            let mut shapes = Vec::new();
            compositions(n, total, opts.max_size, &mut Vec::new(), &mut shapes);
            for shape in shapes {
                let lists: Vec<Vec<Term>> = shape.iter().zip(enums.iter_mut()).map(|(&s, e)| e.at(&base, s).to_vec()).collect();
                if lists.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut idx = vec![0usize; n];
                loop {
                    if Instant::now() > deadline {
                        return Response::Fail;
                    }
                    let defs: Vec<SolutionDef> =
                        state.funs.iter().zip(&idx).enumerate().map(|(k, (e, &i))| def_for(e, &lists[k][i])).collect();
                    if quick(state, &defs, &probes, opts.dom.fuel, pins) {
                        match check_semantic_bounded(state, &defs, &opts.dom, pins, &[]) {
                            Semantic::PassedBounded { .. } => return Response::Solution(defs),
                            Semantic::Refuted { constraint, point, .. } if !point.is_empty() => {
                                cex = Some((constraint, point));
                                break 'search;
                            }
                            _ => {}
                        }
                    }
                    let mut k = 0;
                    while k < n {
                        idx[k] += 1;
                        if idx[k] < lists[k].len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                }
            }
        }
        let Some((phi, point)) = cex else { return Response::Fail };
        // Add the counterexample to every probe whose variables it covers.
        for (p, c) in probes.iter_mut().zip(&constraints) {
            let free = p.formula.free_symbols();
            let env: Env = point.iter().filter(|(x, _)| free.contains(x)).cloned().collect();
            if (c == &phi || !env.is_empty())
                && !p.envs.contains(&env) {
                    p.envs.push(env);
                }
        }
    }
    Response::Fail
}
