//! Derivation weights as finite unions of linear sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{Pattern, Rhs, RuleSet};
use crate::syntax::Term;

/// `{base + Σ kᵢ·pᵢ : kᵢ ≥ 0, pᵢ ∈ pumps}`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearSet {
    pub base: u64,
    pub pumps: BTreeSet<u64>,
}

impl LinearSet {
    pub fn point(base: u64) -> LinearSet {
        LinearSet { base, pumps: BTreeSet::new() }
    }

    pub fn contains(&self, k: u64) -> bool {
        k >= self.base && representable(k - self.base, &self.pumps)
    }

    fn plus(&self, o: &LinearSet) -> LinearSet {
        LinearSet { base: self.base + o.base, pumps: self.pumps.union(&o.pumps).copied().collect() }
    }

    fn subsumes(&self, o: &LinearSet) -> bool {
        o.pumps.is_subset(&self.pumps) && self.contains(o.base)
    }

    /// Whether `self` with the pumps of `o` stays inside `self ∪ o`.
    fn widens_to(&self, o: &LinearSet) -> bool {
        self.pumps.is_subset(&o.pumps)
            && self.pumps != o.pumps
            && o.pumps.difference(&self.pumps).all(|&p| o.contains(self.base + p))
    }
}

/// Whether `n` is a nonnegative combination of `pumps`.
fn representable(n: u64, pumps: &BTreeSet<u64>) -> bool {
    if n == 0 {
        return true;
    }
    if pumps.is_empty() {
        return false;
    }
    let n = n as usize;
    let mut can = vec![false; n + 1];
    can[0] = true;
    for i in 1..=n {
        can[i] = pumps.iter().any(|&p| (p as usize) <= i && can[i - p as usize]);
    }
    can[n]
}

/// The achievable weights of a term: a union of linear sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightSet {
    pub linear: Vec<LinearSet>,
}

impl WeightSet {
    pub fn empty() -> WeightSet {
        WeightSet::default()
    }

    pub fn point(b: u64) -> WeightSet {
        WeightSet { linear: vec![LinearSet::point(b)] }
    }

    pub fn is_empty(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn bases(&self) -> BTreeSet<u64> {
        self.linear.iter().map(|l| l.base).collect()
    }

    pub fn pumps(&self) -> BTreeSet<u64> {
        self.linear.iter().flat_map(|l| l.pumps.iter().copied()).collect()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.linear.iter().any(|l| l.contains(k))
    }

    /// Members not exceeding `bound`.
    pub fn members_upto(&self, bound: u64) -> BTreeSet<u64> {
        (0..=bound).filter(|&k| self.contains(k)).collect()
    }

    fn insert(&mut self, l: LinearSet) {
        if self.linear.iter().any(|m| m.subsumes(&l)) {
            return;
        }
        self.linear.retain(|m| !l.subsumes(m));
        // (b', P') ∪ (b, P) = (b', P) when P' ⊆ P and b' + p ∈ (b, P) for p ∈ P \ P'.
        let merge = self.linear.iter().position(|m| l.widens_to(m) || m.widens_to(&l));
        if let Some(i) = merge {
            let m = self.linear.remove(i);
            let (lo, hi) = if l.widens_to(&m) { (l, m) } else { (m, l) };
            self.insert(LinearSet { base: lo.base, pumps: hi.pumps });
            return;
        }
        self.linear.push(l);
        self.linear.sort();
    }

    pub fn union(&mut self, o: &WeightSet) {
        for l in &o.linear {
            self.insert(l.clone());
        }
    }

    pub fn sum(&self, o: &WeightSet) -> WeightSet {
        let mut out = WeightSet::empty();
        for a in &self.linear {
            for b in &o.linear {
                out.insert(a.plus(b));
            }
        }
        out
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "bases={{{}}} pumps={{{}}}", join(self.bases()), join(self.pumps()))
    }
}

pub fn weight_achievable(ws: &WeightSet, k: u64) -> bool {
    ws.contains(k)
}

/// Unit-rule edge: (from, to, weight).
type Edge = (usize, usize, u64);

struct UnitGraph {
    edges: Vec<Edge>,
    /// Distinct simple cycles as (vertex set, weight).
    cycles: Vec<(BTreeSet<usize>, u64)>,
}

impl UnitGraph {
    fn new(rs: &RuleSet, w: &str) -> UnitGraph {
        let mut edges = Vec::new();
        for (y, rules) in rs.rules.iter().enumerate() {
            for r in rules {
                if let Some(j) = r.unit() {
                    edges.push((y, j, rs.rule_weight(r, w)));
                }
            }
        }
        let mut g = UnitGraph { edges, cycles: Vec::new() };
        let mut found = BTreeSet::new();
        for s in 0..rs.nts.len() {
            g.cycles_from(s, s, 0, &mut vec![s], &mut found);
        }
        g.cycles = found.into_iter().collect();
        g
    }

    /// Simple cycles through `s` whose other vertices are all greater than `s`.
    fn cycles_from(&self, s: usize, at: usize, w: u64, path: &mut Vec<usize>, out: &mut BTreeSet<(BTreeSet<usize>, u64)>) {
        for &(a, b, ew) in &self.edges {
            if a != at {
                continue;
            }
            if b == s {
                out.insert((path.iter().copied().collect(), w + ew));
            } else if b > s && !path.contains(&b) {
                path.push(b);
                self.cycles_from(s, b, w + ew, path, out);
                path.pop();
            }
        }
    }

    /// Weights of all unit walks from `y` to `z`.
    fn walks(&self, y: usize, z: usize) -> WeightSet {
        let mut paths = Vec::new();
        self.simple_paths(y, z, 0, &mut vec![y], &mut paths);
        let mut out = WeightSet::empty();
        for (verts, w) in paths {
            let mut seen = BTreeSet::new();
            self.grow(&verts, w, &BTreeSet::new(), &mut seen, &mut out);
        }
        out
    }

    fn simple_paths(&self, at: usize, z: usize, w: u64, path: &mut Vec<usize>, out: &mut Vec<(BTreeSet<usize>, u64)>) {
        if at == z {
            out.push((path.iter().copied().collect(), w));
            return;
        }
        for &(a, b, ew) in &self.edges {
            if a == at && !path.contains(&b) {
                path.push(b);
                self.simple_paths(b, z, w + ew, path, out);
                path.pop();
            }
        }
    }

    /// Add every connected extension of `verts` by a set of cycles.
    fn grow(
        &self,
        verts: &BTreeSet<usize>,
        w: u64,
        chosen: &BTreeSet<usize>,
        seen: &mut BTreeSet<BTreeSet<usize>>,
        out: &mut WeightSet,
    ) {
        if !seen.insert(chosen.clone()) {
            return;
        }
        let pumps: BTreeSet<u64> = chosen.iter().map(|&c| self.cycles[c].1).filter(|&p| p > 0).collect();
        out.insert(LinearSet { base: w, pumps });
        for (c, (cv, cw)) in self.cycles.iter().enumerate() {
            if chosen.contains(&c) || cv.is_disjoint(verts) {
                continue;
            }
            let mut nv = verts.clone();
            nv.extend(cv.iter().copied());
            let mut nc = chosen.clone();
            nc.insert(c);
            self.grow(&nv, w + cw, &nc, seen, out);
        }
    }
}

impl RuleSet {
    /// Achievable total weights of `r` derived from the start symbol with
    /// respect to weight keyword `w` (with colon).
    pub fn weight_sets(&self, w: &str, r: &Term) -> WeightSet {
        self.weight_sets_from(0, w, r)
    }

    pub fn weight_sets_from(&self, y: usize, w: &str, r: &Term) -> WeightSet {
        let g = UnitGraph::new(self, w);
        let n = self.nts.len();
        let walks: Vec<Vec<WeightSet>> =
            (0..n).map(|a| (0..n).map(|b| if self.unit[a].contains(&b) { g.walks(a, b) } else { WeightSet::empty() }).collect()).collect();
        let r = r.strip_annotations();
        let mut memo = HashMap::new();
        self.ws(y, &r, w, &walks, &mut memo)
    }

    fn ws(
        &self,
        y: usize,
        r: &Term,
        w: &str,
        walks: &[Vec<WeightSet>],
        memo: &mut HashMap<(usize, *const Term), WeightSet>,
    ) -> WeightSet {
        let key = (y, r as *const Term);
        if let Some(s) = memo.get(&key) {
            return s.clone();
        }
        let mut out = WeightSet::empty();
        for &z in &self.unit[y] {
            let mut at_z = WeightSet::empty();
            for rule in &self.rules[z] {
                let rw = WeightSet::point(self.rule_weight(rule, w));
                let here = match &rule.rhs {
                    Rhs::Const(s) if self.is_constant_of(r, s) => rw,
                    Rhs::Var(_, vs) if r.as_symbol().is_some_and(|n| vs.iter().any(|v| v == n)) => rw,
                    Rhs::Term(Pattern::Nt(_)) => continue,
                    Rhs::Term(p) => {
                        let mut kids = Vec::new();
                        if !split(p, r, &mut kids) {
                            continue;
                        }
                        let mut acc = rw;
                        for (j, t) in kids {
                            if acc.is_empty() {
                                break;
                            }
                            acc = acc.sum(&self.ws(j, t, w, walks, memo));
                        }
                        acc
                    }
                    _ => continue,
                };
                at_z.union(&here);
            }
            if !at_z.is_empty() {
                out.union(&walks[y][z].sum(&at_z));
            }
        }
        memo.insert(key, out.clone());
        out
    }
}

/// Structural match of a pattern against `r`, collecting the subterms at
/// nonterminal holes.
fn split<'t>(p: &Pattern, r: &'t Term, out: &mut Vec<(usize, &'t Term)>) -> bool {
    match (p, r) {
        (Pattern::Nt(j), _) => {
            out.push((*j, r));
            true
        }
        (Pattern::Ident(a), Term::Ident(b)) => a == b,
        (Pattern::Lit(a), Term::Lit(b)) => a == b,
        (Pattern::App(f, ps), Term::App(g, args)) => {
            f == g && ps.len() == args.len() && ps.iter().zip(args).all(|(p, a)| split(p, a, out))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn achievable_examples() {
        assert!(weight_achievable(&WeightSet::point(3), 3));
        let mut two = WeightSet::point(0);
        two.union(&WeightSet::point(2));
        assert!(!weight_achievable(&two, 1));
        let ws = WeightSet { linear: vec![LinearSet { base: 0, pumps: set(&[2, 3]) }] };
        assert!(weight_achievable(&ws, 7));
        assert!(!weight_achievable(&ws, 1));
    }

    #[test]
    fn subsumption() {
        let mut ws = WeightSet::point(4);
        ws.union(&WeightSet { linear: vec![LinearSet { base: 0, pumps: set(&[2]) }] });
        assert_eq!(ws.linear.len(), 1);
        assert_eq!(ws.to_string(), "bases={0} pumps={2}");
    }
}
