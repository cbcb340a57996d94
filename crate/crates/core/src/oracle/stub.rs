//! A table-driven oracle for tests. The table is a file of pairs
//! `((v…) (w…))` and an optional `(fallback t…)` whose terms are evaluated
//! with `x1 … xn` (and `x` for the first input) bound to the inputs.

use crate::eval::{value_from_sexpr, Interp, Value};
use crate::reader::{read_all, AtomKind, SExpr};
use crate::syntax::{parse_term, Sort, Term};
use crate::theories::{Signature, Theories};

#[derive(Debug, Clone)]
pub struct StubTable {
    entries: Vec<(Vec<SExpr>, Vec<SExpr>)>,
    fallback: Option<Vec<Term>>,
}

/// Exit status, standard output, standard error.
pub type StubOutcome = (i32, String, String);

fn sig() -> Signature {
    Signature::new(Theories { ints: true, reals: true, bv: true, strings: true, ..Theories::default() })
}

/// Read a value whose sort is evident from its syntax.
pub fn guess_value(e: &SExpr, sig: &Signature) -> Option<Value> {
    let sort = match e {
        SExpr::Atom { kind: AtomKind::Bool, .. } => Sort::bool(),
        SExpr::Atom { kind: AtomKind::Numeral, .. } => Sort::int(),
        SExpr::Atom { kind: AtomKind::Decimal, .. } => Sort::real(),
        SExpr::Atom { kind: AtomKind::String, .. } => Sort::string(),
        SExpr::Atom { kind: AtomKind::Hex, text, .. } => Sort::bitvec(4 * (text.len() as u64 - 2)),
        SExpr::Atom { kind: AtomKind::Binary, text, .. } => Sort::bitvec(text.len() as u64 - 2),
        SExpr::List { items, .. } => match items.as_slice() {
            [m, SExpr::Atom { kind: AtomKind::Numeral, .. }] if m.is_symbol("-") => Sort::int(),
            [m, SExpr::Atom { kind: AtomKind::Decimal, .. }] if m.is_symbol("-") => Sort::real(),
            [d, _, _] if d.is_symbol("/") => Sort::real(),
            _ => return None,
        },
        _ => return None,
    };
    value_from_sexpr(e, &sort, sig).ok()
}

fn same(a: &SExpr, b: &SExpr, sig: &Signature) -> bool {
    match (guess_value(a, sig), guess_value(b, sig)) {
        (Some(x), Some(y)) => x == y,
        _ => a == b,
    }
}

impl StubTable {
    pub fn parse(text: &str) -> Result<StubTable, String> {
        let items = read_all(text).map_err(|e| e.to_string())?;
        let mut t = StubTable { entries: Vec::new(), fallback: None };
        for item in items {
            let Some(parts) = item.as_list() else { return Err(format!("bad table entry `{item}`")) };
            if parts.first().is_some_and(|h| h.is_symbol("fallback")) {
                let terms = parts[1..].iter().map(parse_term).collect::<Result<Vec<_>, _>>().map_err(|d| d.message)?;
                t.fallback = Some(terms);
                continue;
            }
            match parts {
                [SExpr::List { items: vs, .. }, SExpr::List { items: ws, .. }] => t.entries.push((vs.clone(), ws.clone())),
                _ => return Err(format!("bad table entry `{item}`")),
            }
        }
        Ok(t)
    }

    /// The reply tuple for `inputs`.
    pub fn answer(&self, inputs: &[SExpr]) -> Result<String, String> {
        let sig = sig();
        for (vs, ws) in &self.entries {
            if vs.len() == inputs.len() && vs.iter().zip(inputs).all(|(a, b)| same(a, b, &sig)) {
                let ws: Vec<String> = ws.iter().map(SExpr::to_string).collect();
                return Ok(format!("({})", ws.join(" ")));
            }
        }
        let Some(fallback) = &self.fallback else {
            let shown: Vec<String> = inputs.iter().map(SExpr::to_string).collect();
            return Err(format!("no table entry for ({})", shown.join(" ")));
        };
        // A bare input variable echoes the input verbatim, whatever its sort.
        let mut env = Vec::new();
        let mut raw = Vec::new();
        for (i, e) in inputs.iter().enumerate() {
            let name = format!("x{}", i + 1);
            raw.push((name.clone(), e));
            if i == 0 {
                raw.push(("x".to_string(), e));
            }
            if let Some(v) = guess_value(e, &sig) {
                if i == 0 {
                    env.push(("x".to_string(), v.clone()));
                }
                env.push((name, v));
            }
        }
        let it = Interp::new(&sig);
        let mut outs = Vec::new();
        for t in fallback {
            if let Term::Ident(id) = t {
                if let Some((_, e)) = raw.iter().find(|(n, _)| Some(n.as_str()) == id.as_simple()) {
                    outs.push(e.to_string());
                    continue;
                }
            }
            match it.eval(t, &env) {
                Ok(v) => outs.push(v.to_string()),
                Err(e) => return Err(format!("fallback `{t}` failed: {e:?}")),
            }
        }
        Ok(format!("({})", outs.join(" ")))
    }
}

/// Behave as an oracle: command-line mode reads one value per argument,
/// file mode reads a tuple from the file named by the only argument.
pub fn stub_main(table_text: &str, file_mode: bool, args: &[String]) -> StubOutcome {
    let table = match StubTable::parse(table_text) {
        Ok(t) => t,
        Err(e) => return (3, String::new(), format!("stub: {e}\n")),
    };
    let inputs: Result<Vec<SExpr>, String> = if file_mode {
        let [path] = args else { return (2, String::new(), "stub: file mode takes one query file\n".into()) };
        std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|text| {
            match read_all(&text).map_err(|e| e.to_string())?.as_slice() {
                [SExpr::List { items, .. }] => Ok(items.clone()),
                _ => Err(format!("query file `{path}` does not hold one tuple")),
            }
        })
    } else {
        args.iter()
            .map(|a| match read_all(a).map_err(|e| e.to_string())?.as_slice() {
                [e] => Ok(e.clone()),
                _ => Err(format!("argument `{a}` is not one value")),
            })
            .collect()
    };
    match inputs.and_then(|vs| table.answer(&vs)) {
        Ok(reply) => (0, format!("{reply}\n"), String::new()),
        Err(e) => (3, String::new(), format!("stub: {e}\n")),
    }
}
