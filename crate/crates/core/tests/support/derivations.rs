//! Leftmost derivations over the surface grammar, as an oracle for weight sets.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sygus::session::{load, Loaded};
use sygus::syntax::{term_from_str, AttrValue, GTerm, Literal, Term};
use sygus::Options;

pub struct Surface {
    nts: Vec<(String, Vec<(Term, u64)>)>,
}

pub fn surface(l: &Loaded, f: &str, w: &str) -> Surface {
    let entry = l.state.fun(f).unwrap();
    let g = entry.grammar.as_ref().unwrap();
    let default = l.state.weights.get(w).map(|b| u64::try_from(b).unwrap()).unwrap_or(0);
    let nts = g
        .groups
        .iter()
        .map(|grp| {
            let mut rules = Vec::new();
            for r in &grp.rules {
                match r {
                    GTerm::Term(term) => {
                        let mut weight = default;
                        let mut body = term.clone();
                        while let Term::Annot(inner, attrs) = body {
                            for a in &attrs {
                                if a.keyword == w {
                                    if let Some(AttrValue::Lit(Literal::Numeral(n))) = &a.value {
                                        weight = u64::try_from(n).unwrap();
                                    }
                                }
                            }
                            body = *inner;
                        }
                        rules.push((body, weight));
                    }
                    GTerm::Variable(s) => {
                        for p in entry.params.iter().filter(|p| &p.sort == s) {
                            rules.push((Term::sym(&p.name), default));
                        }
                    }
                    GTerm::Constant(_) => panic!("oracle grammars avoid constant classes"),
                }
            }
            (grp.name.clone(), rules)
        })
        .collect();
    Surface { nts }
}

impl Surface {
    fn nt(&self, t: &Term) -> Option<usize> {
        t.as_symbol().and_then(|s| self.nts.iter().position(|(n, _)| n == s))
    }

    fn compatible(&self, form: &Term, r: &Term) -> bool {
        if self.nt(form).is_some() {
            return true;
        }
        match (form, r) {
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.compatible(x, y))
            }
            _ => form == r,
        }
    }

    /// Replace the leftmost nonterminal; `None` when there is none.
    fn expand(&self, form: &Term) -> Option<(usize, Box<dyn Fn(Term) -> Term + '_>)> {
        if let Some(i) = self.nt(form) {
            return Some((i, Box::new(|b| b)));
        }
        if let Term::App(f, xs) = form {
            for (k, x) in xs.iter().enumerate() {
                if let Some((i, put)) = self.expand(x) {
                    let f = f.clone();
                    let xs = xs.clone();
                    return Some((
                        i,
                        Box::new(move |b| {
                            let mut ys = xs.clone();
                            ys[k] = put(b);
                            Term::App(f.clone(), ys)
                        }),
                    ));
                }
            }
        }
        None
    }

    fn derive(&self, form: Term, r: &Term, steps: usize, weight: u64, out: &mut BTreeSet<u64>) {
        if !self.compatible(&form, r) {
            return;
        }
        let Some((i, put)) = self.expand(&form) else {
            if &form == r {
                out.insert(weight);
            }
            return;
        };
        if steps == 0 {
            return;
        }
        for (body, w) in &self.nts[i].1 {
            self.derive(put(body.clone()), r, steps - 1, weight + w, out);
        }
    }
}

/// Weights of all derivations of `r` with at most `depth` steps.
pub fn brute_weights(l: &Loaded, f: &str, w: &str, r: &Term, depth: usize) -> BTreeSet<u64> {
    let s = surface(l, f, w);
    let mut out = BTreeSet::new();
    s.derive(Term::sym(&s.nts[0].0), r, depth, 0, &mut out);
    out
}

pub fn load_ok(text: &str) -> Loaded {
    let l = load(text, &Options::default());
    assert!(l.ok(), "{:?}", l.diagnostics);
    l
}

pub fn random_grammar(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=2);
    let names = ["A", "B"];
    let mut groups = String::new();
    for y in 0..n {
        let mut pool: Vec<String> = vec!["0".into(), "1".into(), "x".into()];
        for a in &names[..n] {
            pool.push(format!("(- {a})"));
            for b in &names[..n] {
                pool.push(format!("(+ {a} {b})"));
            }
            if *a != names[y] {
                pool.push(a.to_string());
            }
        }
        if rng.gen_bool(0.3) {
            pool.push(names[y].to_string());
        }
        let mut rules = Vec::new();
        let k = rng.gen_range(2..=4.min(pool.len()));
        for _ in 0..k {
            let r = pool.swap_remove(rng.gen_range(0..pool.len()));
            let w = rng.gen_range(0..=2);
            rules.push(if w == 1 && rng.gen_bool(0.5) { r } else { format!("(! {r} :w {w})") });
        }
        groups.push_str(&format!("({} Int ({}))", names[y], rules.join(" ")));
    }
    let decls: Vec<String> = names[..n].iter().map(|a| format!("({a} Int)")).collect();
    format!(
        "(set-logic LIA)\n(set-feature :weights true)\n(declare-weight w :default 1)\n\
         (synth-fun f ((x Int)) Int ({}) ({}))\n",
        decls.join(" "),
        groups
    )
}

/// Compares weight sets with the brute force on `count` random grammars.
/// Below the pump threshold the two must agree exactly.
pub fn random_grammars_agree(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let depth = 12;
    while checked < count {
        let text = random_grammar(&mut rng);
        let l = load(&text, &Options::default());
        if !l.ok() {
            continue;
        }
        let rs = l.state.fun("f").unwrap().rules.clone().unwrap();
        let terms = rs.enumerate(rs.start(), 4).terms;
        if terms.is_empty() {
            continue;
        }
        let r = terms[rng.gen_range(0..terms.len())].clone();
        let ws = rs.weight_sets(":w", &r);
        let brute = brute_weights(&l, "f", ":w", &r, depth);
        for k in &brute {
            assert!(ws.contains(*k), "{text}\n{r}: brute {brute:?} vs {ws}");
        }
        let nn = rs.nts.len() as i64;
        let limit = depth as i64 / nn - r.size() as i64 * nn;
        for k in 0..=limit.max(-1) {
            assert_eq!(ws.contains(k as u64), brute.contains(&(k as u64)), "{text}\n{r} at {k}: {brute:?} vs {ws}");
        }
        checked += 1;
    }
}

pub fn t(s: &str) -> Term {
    term_from_str(s).unwrap()
}
