use std::collections::BTreeSet;

use crate::reader::{read_all, AtomKind, SExpr};

/// Every symbol atom in a script, so that generated names avoid symbols
/// declared later in the file as well as earlier ones.
pub fn script_symbols(text: &str) -> BTreeSet<String> {
    fn walk(e: &SExpr, out: &mut BTreeSet<String>) {
        match e {
            SExpr::Atom { kind: AtomKind::Symbol, text, .. } => {
                out.insert(text.clone());
            }
            SExpr::Atom { .. } => {}
            SExpr::List { items, .. } => items.iter().for_each(|i| walk(i, out)),
        }
    }
    let mut out = BTreeSet::new();
    if let Ok(es) = read_all(text) {
        es.iter().for_each(|e| walk(e, &mut out));
    }
    out
}

/// Generator for `base!k` names.
#[derive(Debug, Clone, Default)]
pub struct FreshNames {
    used: BTreeSet<String>,
}

impl FreshNames {
    pub fn reserve(&mut self, names: impl IntoIterator<Item = String>) {
        self.used.extend(names);
    }

    /// Smallest `k` such that `base!k` is neither used nor taken.
    pub fn next(&mut self, base: &str, taken: impl Fn(&str) -> bool) -> String {
        let name = (0..)
            .map(|k| format!("{base}!{k}"))
            .find(|n| !self.used.contains(n) && !taken(n))
            .unwrap();
        self.used.insert(name.clone());
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_reserved_names() {
        let mut f = FreshNames::default();
        f.reserve(script_symbols("(declare-var v1!0 Int) (define-fun v1!1 () Int 0)"));
        assert_eq!(f.next("v1", |_| false), "v1!2");
        assert_eq!(f.next("v1", |_| false), "v1!3");
        assert_eq!(f.next("x", |n| n == "x!0"), "x!1");
    }
}
