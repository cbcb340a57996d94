//! Grammar engine: rule normalisation, membership, enumeration by size and
//! derivation weights.

mod weights;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use weights::{weight_achievable, LinearSet, WeightSet};

use crate::diag::{err, Code, DResult};
use crate::eval::value_of_literal_term;
use crate::syntax::{GTerm, GrammarDef, Identifier, Literal, Sort, SortedVar, Term};
use crate::theories::{sort_check, Scope, Signature};

/// Right-hand side of a rule with nonterminal leaves resolved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Nt(usize),
    Ident(Identifier),
    Lit(Literal),
    App(Identifier, Vec<Pattern>),
}

impl Pattern {
    pub(crate) fn holes(&self, out: &mut Vec<usize>) {
        match self {
            Pattern::Nt(i) => out.push(*i),
            Pattern::App(_, ps) => ps.iter().for_each(|p| p.holes(out)),
            _ => {}
        }
    }

    /// Nodes other than nonterminal holes.
    pub(crate) fn fixed_size(&self) -> usize {
        match self {
            Pattern::Nt(_) => 0,
            Pattern::Ident(_) | Pattern::Lit(_) => 1,
            Pattern::App(_, ps) => 1 + ps.iter().map(Pattern::fixed_size).sum::<usize>(),
        }
    }

    pub(crate) fn fill(&self, subs: &mut impl Iterator<Item = Term>) -> Term {
        match self {
            Pattern::Nt(_) => subs.next().unwrap(),
            Pattern::Ident(id) => Term::Ident(id.clone()),
            Pattern::Lit(l) => Term::Lit(l.clone()),
            Pattern::App(id, ps) => Term::App(id.clone(), ps.iter().map(|p| p.fill(subs)).collect()),
        }
    }

    fn to_term(&self, nts: &[SortedVar]) -> Term {
        match self {
            Pattern::Nt(i) => Term::sym(&nts[*i].name),
            Pattern::Ident(id) => Term::Ident(id.clone()),
            Pattern::Lit(l) => Term::Lit(l.clone()),
            Pattern::App(id, ps) => Term::App(id.clone(), ps.iter().map(|p| p.to_term(nts)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    Const(Sort),
    /// Variable class with the matching argument names.
    Var(Sort, Vec<String>),
    Term(Pattern),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub rhs: Rhs,
    /// Explicit weights by keyword (with colon).
    pub weights: BTreeMap<String, u64>,
}

impl Rule {
    fn unit(&self) -> Option<usize> {
        match &self.rhs {
            Rhs::Term(Pattern::Nt(j)) => Some(*j),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    pub owner: String,
    pub params: Vec<SortedVar>,
    pub nts: Vec<SortedVar>,
    pub rules: Vec<Vec<Rule>>,
    /// Weight keyword (with colon) to default value.
    pub defaults: BTreeMap<String, u64>,
    /// Unit-rule reachability: `unit[y]` includes `y`.
    pub unit: Vec<BTreeSet<usize>>,
    pub sig: Signature,
}

/// Terms produced by [`RuleSet::enumerate`].
#[derive(Debug, Clone, Default)]
pub struct Enumeration {
    pub terms: Vec<Term>,
    /// Set when a `(Constant σ)` rule contributed a finite sample.
    pub sampled: bool,
}

fn pattern_of(t: &Term, nts: &[SortedVar]) -> DResult<Pattern> {
    match t {
        Term::Ident(id) => match id.as_simple().and_then(|n| nts.iter().position(|y| y.name == n)) {
            Some(i) => Ok(Pattern::Nt(i)),
            None => Ok(Pattern::Ident(id.clone())),
        },
        Term::Lit(l) => Ok(Pattern::Lit(l.clone())),
        Term::App(id, args) => {
            if id.as_simple().is_some_and(|n| nts.iter().any(|y| y.name == n)) {
                return err(Code::Sort, format!("nonterminal `{id}` cannot be applied"));
            }
            Ok(Pattern::App(id.clone(), args.iter().map(|a| pattern_of(a, nts)).collect::<DResult<_>>()?))
        }
        Term::Annot(inner, _) => pattern_of(inner, nts),
        _ => err(Code::Syntax, format!("binders are not allowed in grammar rules: `{t}`")),
    }
}

fn weight_value(n: &BigUint) -> DResult<u64> {
    n.to_u64().map_or_else(|| err(Code::Weight, "weight value is too large"), Ok)
}

/// Normalise a grammar for the function `f` with arguments `params`.
pub fn compile(
    g: &GrammarDef,
    f: &str,
    params: &[SortedVar],
    ret: &Sort,
    sig: &Signature,
    weights: &BTreeMap<String, BigUint>,
) -> DResult<RuleSet> {
    let mut nts = Vec::new();
    for y in &g.nonterminals {
        if nts.iter().any(|z: &SortedVar| z.name == y.name) {
            return err(Code::GrammarDecl, format!("nonterminal `{}` is declared twice", y.name));
        }
        nts.push(SortedVar::new(&y.name, sig.resolve_sort(&y.sort)?));
    }
    if nts.is_empty() {
        return err(Code::GrammarDecl, "grammar has no nonterminals");
    }
    if g.groups.len() != nts.len() {
        return err(
            Code::GrammarDecl,
            format!("grammar predeclares {} nonterminals but lists {} rule groups", nts.len(), g.groups.len()),
        );
    }
    for (y, group) in nts.iter().zip(&g.groups) {
        if group.name != y.name {
            return err(Code::GrammarDecl, format!("rule group `{}` does not match predeclared `{}`", group.name, y.name));
        }
        if sig.resolve_sort(&group.sort)? != y.sort {
            return err(Code::GrammarDecl, format!("rule group `{}` has sort {}, predeclared {}", group.name, group.sort, y.sort));
        }
    }
    if nts[0].sort != *ret {
        return err(Code::GrammarSort, format!("start symbol `{}` has sort {}, `{f}` returns {ret}", nts[0].name, nts[0].sort));
    }
    let defaults: BTreeMap<String, u64> =
        weights.iter().map(|(k, v)| Ok((k.clone(), weight_value(v)?))).collect::<DResult<_>>()?;
    let mut scope: Scope = params.iter().map(|p| (p.name.clone(), p.sort.clone())).collect();
    scope.extend(nts.iter().map(|y| (y.name.clone(), y.sort.clone())));
    let mut rules = Vec::new();
    for (y, group) in nts.iter().zip(&g.groups) {
        let mut rs = Vec::new();
        for r in &group.rules {
            let rule = match r {
                GTerm::Constant(s) | GTerm::Variable(s) => {
                    let s = sig.resolve_sort(s)?;
                    if s != y.sort {
                        return err(Code::GrammarSort, format!("rule `{r:?}` for `{}` has sort {s}, expected {}", y.name, y.sort));
                    }
                    let rhs = match r {
                        GTerm::Constant(_) => Rhs::Const(s),
                        _ => Rhs::Var(s.clone(), params.iter().filter(|p| p.sort == s).map(|p| p.name.clone()).collect()),
                    };
                    Rule { rhs, weights: BTreeMap::new() }
                }
                GTerm::Term(t) => {
                    let found = sort_check(t, sig, &mut scope)?;
                    if found != y.sort {
                        return err(Code::GrammarSort, format!("rule `{t}` for `{}` has sort {found}, expected {}", y.name, y.sort));
                    }
                    let (base, attrs) = match t {
                        Term::Annot(inner, attrs) => (inner.as_ref(), attrs.as_slice()),
                        _ => (t, &[][..]),
                    };
                    let mut ws = BTreeMap::new();
                    for kw in defaults.keys() {
                        let hits: Vec<_> = attrs.iter().filter(|a| &a.keyword == kw).collect();
                        if let [a] = hits.as_slice() {
                            match a.numeral() {
                                Some(n) => {
                                    ws.insert(kw.clone(), weight_value(n)?);
                                }
                                None => return err(Code::Weight, format!("weight attribute {kw} needs a numeral value")),
                            }
                        }
                    }
                    Rule { rhs: Rhs::Term(pattern_of(base, &nts)?), weights: ws }
                }
            };
            rs.push(rule);
        }
        rules.push(rs);
    }
    let mut rs = RuleSet {
        owner: f.to_string(),
        params: params.to_vec(),
        nts,
        rules,
        defaults,
        unit: Vec::new(),
        sig: sig.clone(),
    };
    rs.unit = rs.unit_closure();
    Ok(rs)
}

impl RuleSet {
    fn unit_closure(&self) -> Vec<BTreeSet<usize>> {
        (0..self.nts.len())
            .map(|y| {
                let mut seen = BTreeSet::from([y]);
                let mut stack = vec![y];
                while let Some(z) = stack.pop() {
                    for r in &self.rules[z] {
                        if let Some(j) = r.unit() {
                            if seen.insert(j) {
                                stack.push(j);
                            }
                        }
                    }
                }
                seen
            })
            .collect()
    }

    pub fn nt_index(&self, name: &str) -> Option<usize> {
        self.nts.iter().position(|y| y.name == name)
    }

    pub fn start(&self) -> &str {
        &self.nts[0].name
    }

    /// Weight of a rule with respect to keyword `w` (with colon).
    pub fn rule_weight(&self, r: &Rule, w: &str) -> u64 {
        r.weights.get(w).copied().unwrap_or_else(|| self.defaults.get(w).copied().unwrap_or(0))
    }

    /// The rule right-hand side as written, for display.
    pub fn rule_term(&self, r: &Rule) -> Term {
        match &r.rhs {
            Rhs::Const(s) => Term::app("Constant", vec![Term::sym(s.to_string())]),
            Rhs::Var(s, _) => Term::app("Variable", vec![Term::sym(s.to_string())]),
            Rhs::Term(p) => p.to_term(&self.nts),
        }
    }

    pub fn rule_count(&self) -> usize {
        self.rules.iter().map(Vec::len).sum()
    }

    pub(crate) fn is_constant_of(&self, r: &Term, s: &Sort) -> bool {
        if s.is("RegLan") {
            return sort_check(r, &self.sig, &mut Scope::new()).is_ok_and(|found| &found == s);
        }
        value_of_literal_term(r, &self.sig).and_then(|v| v.sort(&self.sig)).is_some_and(|found| &found == s)
    }

    /// Whether nonterminal `y` generates the term `r` (annotations in `r`
    /// are ignored).
    pub fn generates(&self, y: &str, r: &Term) -> bool {
        let Some(i) = self.nt_index(y) else { return false };
        let r = r.strip_annotations();
        let mut memo = HashMap::new();
        self.gen(i, &r, &mut memo)
    }

    fn gen(&self, y: usize, r: &Term, memo: &mut HashMap<(usize, *const Term), bool>) -> bool {
        let key = (y, r as *const Term);
        if let Some(b) = memo.get(&key) {
            return *b;
        }
        // Provisional answer stops unit cycles; the closure makes them redundant anyway.
        memo.insert(key, false);
        let ok = self.unit[y].iter().any(|&z| {
            self.rules[z].iter().any(|rule| match &rule.rhs {
                Rhs::Const(s) => self.is_constant_of(r, s),
                Rhs::Var(_, vs) => r.as_symbol().is_some_and(|n| vs.iter().any(|v| v == n)),
                Rhs::Term(Pattern::Nt(_)) => false,
                Rhs::Term(p) => self.matches(p, r, memo),
            })
        });
        memo.insert(key, ok);
        ok
    }

    fn matches(&self, p: &Pattern, r: &Term, memo: &mut HashMap<(usize, *const Term), bool>) -> bool {
        match (p, r) {
            (Pattern::Nt(j), _) => self.gen(*j, r, memo),
            (Pattern::Ident(a), Term::Ident(b)) => a == b,
            (Pattern::Lit(a), Term::Lit(b)) => a == b,
            (Pattern::App(f, ps), Term::App(g, args)) => {
                f == g && ps.len() == args.len() && ps.iter().zip(args).all(|(p, a)| self.matches(p, a, memo))
            }
            _ => false,
        }
    }

    /// Sample used for `(Constant σ)` during enumeration.
    pub fn constant_sample(&self, s: &Sort) -> Vec<Term> {
        let neg = |t: Term| Term::app("-", vec![t]);
        let dec = |d: &str| Term::Lit(Literal::Decimal(d.to_string()));
        if s.is("Int") {
            vec![Term::int(0), Term::int(1), Term::int(2), neg(Term::int(1)), neg(Term::int(2))]
        } else if s.is("Real") {
            vec![dec("0.0"), dec("1.0"), neg(dec("1.0"))]
        } else if s.is("String") {
            vec![Term::str(""), Term::str("a"), Term::str("A")]
        } else if s.is_bool() {
            vec![Term::bool(true), Term::bool(false)]
        } else if let Some(w) = s.bv_width() {
            let bin = |bits: String| Term::Lit(Literal::Binary(bits));
            let mut one = "0".repeat(w as usize - 1);
            one.push('1');
            let mut out = vec![bin("0".repeat(w as usize)), bin("1".repeat(w as usize))];
            if w > 1 {
                out.push(bin(one));
            }
            out
        } else if s.is("RegLan") {
            vec![Term::sym("re.none"), Term::sym("re.all")]
        } else if let Some(dt) = self.sig.datatype_of_sort(s) {
            dt.constructors.iter().filter(|c| c.selectors.is_empty()).map(|c| Term::sym(&c.name)).collect()
        } else {
            Vec::new()
        }
    }

    /// Every term generated from `y` with at most `max_size` nodes, in
    /// nondecreasing size, each once.
    pub fn enumerate(&self, y: &str, max_size: usize) -> Enumeration {
        let Some(start) = self.nt_index(y) else { return Enumeration::default() };
        let table = self.enumerate_all(max_size);
        let mut out = Enumeration { terms: Vec::new(), sampled: table.sampled[start] };
        for s in 1..=max_size {
            out.terms.extend(table.by_size[start][s].iter().cloned());
        }
        out
    }

    /// Size-indexed table of generated terms for every nonterminal.
    pub fn enumerate_all(&self, max_size: usize) -> SizeTable {
        let n = self.nts.len();
        let mut by_size: Vec<Vec<Vec<Term>>> = vec![vec![Vec::new(); max_size + 1]; n];
        let mut seen: Vec<HashSet<Term>> = vec![HashSet::new(); n];
        let mut sampled = vec![false; n];
        for (y, rules) in self.rules.iter().enumerate() {
            if rules.iter().any(|r| matches!(&r.rhs, Rhs::Const(s) if !s.is_bool())) {
                sampled[y] = true;
            }
        }
        // Sampling anywhere below a nonterminal makes its enumeration partial.
        loop {
            let mut changed = false;
            for y in 0..n {
                if sampled[y] {
                    continue;
                }
                let below = self.rules[y].iter().any(|r| match &r.rhs {
                    Rhs::Term(p) => {
                        let mut hs = Vec::new();
                        p.holes(&mut hs);
                        hs.iter().any(|&h| sampled[h])
                    }
                    _ => false,
                });
                if below {
                    sampled[y] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for size in 1..=max_size {
            let mut fresh: Vec<Vec<Term>> = vec![Vec::new(); n];
            for (y, rules) in self.rules.iter().enumerate() {
                for r in rules {
                    match &r.rhs {
                        Rhs::Const(s) => {
                            fresh[y].extend(self.constant_sample(s).into_iter().filter(|t| t.size() == size));
                        }
                        Rhs::Var(_, vs) if size == 1 => fresh[y].extend(vs.iter().map(Term::sym)),
                        Rhs::Var(..) | Rhs::Term(Pattern::Nt(_)) => {}
                        Rhs::Term(p) => {
                            let fixed = p.fixed_size();
                            if fixed > size {
                                continue;
                            }
                            let mut holes = Vec::new();
                            p.holes(&mut holes);
                            if holes.is_empty() {
                                if fixed == size {
                                    fresh[y].push(p.fill(&mut std::iter::empty()));
                                }
                                continue;
                            }
                            let mut picked = Vec::new();
                            fill_holes(&by_size, &holes, size - fixed, &mut picked, &mut |subs| {
                                fresh[y].push(p.fill(&mut subs.iter().cloned()));
                            });
                        }
                    }
                }
            }
            for y in 0..n {
                for &z in &self.unit[y] {
                    for t in &fresh[z] {
                        if seen[y].insert(t.clone()) {
                            by_size[y][size].push(t.clone());
                        }
                    }
                }
            }
        }
        SizeTable { by_size, sampled }
    }
}

/// Output of [`RuleSet::enumerate_all`]: `by_size[y][s]` holds the terms of
/// exactly `s` nodes generated from nonterminal `y`.
pub struct SizeTable {
    pub by_size: Vec<Vec<Vec<Term>>>,
    pub sampled: Vec<bool>,
}

fn fill_holes(
    table: &[Vec<Vec<Term>>],
    holes: &[usize],
    budget: usize,
    picked: &mut Vec<Term>,
    emit: &mut impl FnMut(&[Term]),
) {
    let Some((&h, rest)) = holes.split_first() else {
        if budget == 0 {
            emit(picked);
        }
        return;
    };
    if budget < holes.len() {
        return;
    }
    let max_here = budget - rest.len();
    for s in 1..=max_here {
        if rest.is_empty() && s != budget {
            continue;
        }
        for t in &table[h][s] {
            picked.push(t.clone());
            fill_holes(table, rest, budget - s, picked, emit);
            picked.pop();
        }
    }
}

#[cfg(test)]
mod tests;
