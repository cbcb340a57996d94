//! SyGuS logics: input/output base logics, feature sets, and the
//! restrictions they place on constraints and grammars.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diag::{err, Code, DResult};
use crate::eval::{expand_macros, expand_macros_shadowed};
use crate::syntax::{Feature, GTerm, GrammarDef, Identifier, Literal, SortedVar, Term};
use crate::theories::{is_builtin_name, Signature, SymKind, Theories};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// The default logic: core theory only.
    Core,
    /// `QF_X` for a standard `X`.
    Smt,
    Pbe,
    Inv,
    Chc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLogic {
    /// The underlying standard logic name `X` (empty for the core logic).
    pub name: String,
    pub flavor: Flavor,
    pub theories: Theories,
    /// Multiplication and division restricted to constant operands.
    pub linear: bool,
}

impl BaseLogic {
    pub fn core() -> BaseLogic {
        BaseLogic { name: String::new(), flavor: Flavor::Core, theories: Theories::default(), linear: false }
    }

    /// Every base logic here is quantifier-free.
    pub fn quantifier_free(&self) -> bool {
        true
    }
}

impl fmt::Display for BaseLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::Core => f.write_str("Core"),
            Flavor::Smt => write!(f, "QF_{}", self.name),
            Flavor::Pbe => write!(f, "PBE_{}", self.name),
            Flavor::Inv => write!(f, "Inv_QF_{}", self.name),
            Flavor::Chc => write!(f, "CHC_QF_{}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SygusLogic {
    /// The name given to set-logic, if any.
    pub name: Option<String>,
    pub input: BaseLogic,
    pub output: BaseLogic,
    pub features: BTreeSet<Feature>,
}

impl Default for SygusLogic {
    fn default() -> SygusLogic {
        SygusLogic {
            name: None,
            input: BaseLogic::core(),
            output: BaseLogic::core(),
            features: [Feature::Grammars].into_iter().collect(),
        }
    }
}

impl SygusLogic {
    pub fn has(&self, f: Feature) -> bool {
        self.features.contains(&f)
    }

    /// The standard logic underneath a PBE_/Inv_/CHC_ wrapper.
    pub fn underlying_name(&self) -> Option<&str> {
        match self.input.flavor {
            Flavor::Core => None,
            _ => Some(&self.input.name),
        }
    }
}

/// Theories of a standard logic name such as `LIA`, `DTLIA`, `ABV`, `SLIA`.
fn theories_of(x: &str) -> Option<(Theories, bool)> {
    let mut th = Theories::default();
    let mut rest = x;
    for (prefix, set) in [("A", 0), ("UF", 1), ("DT", 2), ("S", 3)] {
        if let Some(r) = rest.strip_prefix(prefix) {
            // `S` alone is a whole logic; `SLIA` etc. carry arithmetic after it.
            match set {
                0 => th.arrays = true,
                1 => th.uf = true,
                2 => th.dt = true,
                _ => th.strings = true,
            }
            rest = r;
        }
    }
    let linear = match rest {
        "" => false,
        "BV" => {
            th.bv = true;
            false
        }
        "LIA" => {
            th.ints = true;
            true
        }
        "NIA" => {
            th.ints = true;
            false
        }
        "LRA" => {
            th.reals = true;
            true
        }
        "NRA" => {
            th.reals = true;
            false
        }
        _ => return None,
    };
    if th == Theories::default() {
        return None;
    }
    Some((th, linear))
}

/// Interpret the argument of set-logic.
pub fn parse_logic(name: &str) -> DResult<SygusLogic> {
    if name.starts_with("QF_") {
        return err(Code::LogicUnknown, format!("logic `{name}`: QF_ logics are not allowed in set-logic"));
    }
    let (flavor, x) = if let Some(x) = name.strip_prefix("PBE_") {
        (Flavor::Pbe, x)
    } else if let Some(x) = name.strip_prefix("Inv_") {
        (Flavor::Inv, x)
    } else if let Some(x) = name.strip_prefix("CHC_") {
        (Flavor::Chc, x)
    } else {
        (Flavor::Smt, name)
    };
    if x.starts_with("QF_") {
        return err(Code::LogicUnknown, format!("logic `{name}`: wrapped logic must not carry QF_"));
    }
    let Some((theories, linear)) = theories_of(x) else {
        return err(Code::LogicUnknown, format!("unknown logic `{name}`"));
    };
    let output = BaseLogic { name: x.to_string(), flavor: Flavor::Smt, theories, linear };
    let input = BaseLogic { flavor, ..output.clone() };
    Ok(SygusLogic { name: Some(name.to_string()), input, output, ..SygusLogic::default() })
}

/// A logic restriction that a term or grammar fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub reason: String,
    /// Offending subterm, when there is one.
    pub at: Option<Term>,
    /// Set when the grammar check rejects without having found a witness term.
    pub conservative: bool,
}

impl Violation {
    fn new(reason: impl Into<String>, at: Option<&Term>) -> Violation {
        Violation { reason: reason.into(), at: at.cloned(), conservative: false }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)?;
        if let Some(t) = &self.at {
            write!(f, " in `{t}`")?;
        }
        if self.conservative {
            f.write_str(" (conservative)")?;
        }
        Ok(())
    }
}

/// Whether `t` is a literal value: literals, `(- N)`, `(/ N M)` forms and
/// constructor applications to values.
pub fn is_value_term(t: &Term, sig: &Signature) -> bool {
    match t {
        Term::Lit(_) => true,
        Term::Ident(id) => id.as_simple().is_some_and(|n| sig.constructor(n).is_some()),
        Term::App(id, args) => match (id.as_simple(), args.as_slice()) {
            (Some("-"), [Term::Lit(Literal::Numeral(_) | Literal::Decimal(_))]) => true,
            (Some("/"), [n, Term::Lit(Literal::Numeral(_) | Literal::Decimal(_))]) => match n {
                Term::Lit(Literal::Numeral(_) | Literal::Decimal(_)) => true,
                Term::App(m, a) => {
                    m.as_simple() == Some("-") && matches!(a.as_slice(), [Term::Lit(Literal::Numeral(_) | Literal::Decimal(_))])
                }
                _ => false,
            },
            (Some(c), _) if sig.constructor(c).is_some() => args.iter().all(|a| is_value_term(a, sig)),
            _ => false,
        },
        Term::Annot(inner, _) => is_value_term(inner, sig),
        _ => false,
    }
}

/// `(= (f c⃗) d)` with f a function-to-synthesize and literal c⃗, d.
pub fn is_pbe_equality(t: &Term, sig: &Signature) -> bool {
    let Some((eq, args)) = t.head() else { return false };
    if eq.as_simple() != Some("=") || args.len() != 2 {
        return false;
    }
    let lhs_ok = match &args[0] {
        Term::App(f, cs) => {
            f.as_simple().is_some_and(|n| sig.is_synth_fun(n)) && cs.iter().all(|c| is_value_term(c, sig))
        }
        Term::Ident(f) => f.as_simple().is_some_and(|n| sig.is_synth_fun(n)),
        _ => false,
    };
    lhs_ok && is_value_term(&args[1], sig)
}

fn is_pbe_conjunction(t: &Term, sig: &Signature) -> bool {
    match t.head() {
        Some((id, args)) if id.as_simple() == Some("and") => args.iter().all(|a| is_pbe_conjunction(a, sig)),
        _ => is_pbe_equality(t, sig),
    }
}

/// Closed terms over theory symbols and literals only.
fn is_constant_term(t: &Term, sig: &Signature, bound: &[String]) -> bool {
    match t {
        Term::Lit(_) => true,
        Term::Ident(id) => match id.as_simple() {
            Some(n) if bound.iter().any(|b| b == n) => false,
            Some(n) => sig.constructor(n).is_some() || (!sig.symbols.contains_key(n) && is_builtin_name(n, &sig.theories)),
            None => false,
        },
        Term::App(id, args) => {
            let head_ok = match id.as_simple() {
                Some(n) if bound.iter().any(|b| b == n) => false,
                Some(n) => !sig.symbols.contains_key(n),
                None => sig.weight_symbol(id).is_none(),
            };
            head_ok && args.iter().all(|a| is_constant_term(a, sig, bound))
        }
        Term::Annot(inner, _) => is_constant_term(inner, sig, bound),
        _ => false,
    }
}

/// Linearity: `*` has at most one non-constant operand; divisors are constant.
fn check_linear(t: &Term, sig: &Signature, bound: &mut Vec<String>) -> Result<(), Violation> {
    match t {
        Term::App(id, args) => {
            for a in args {
                check_linear(a, sig, bound)?;
            }
            match id.as_simple() {
                Some("*") => {
                    let nonconst = args.iter().filter(|a| !is_constant_term(a, sig, bound)).count();
                    if nonconst > 1 {
                        return Err(Violation::new("multiplication of two non-constant terms", Some(t)));
                    }
                }
                Some("div" | "mod" | "/")
                    if args[1..].iter().any(|a| !is_constant_term(a, sig, bound)) => {
                        return Err(Violation::new("division by a non-constant term", Some(t)));
                    }
                _ => {}
            }
            Ok(())
        }
        Term::Annot(inner, _) => check_linear(inner, sig, bound),
        Term::Let(bs, body) => {
            for (_, bt) in bs {
                check_linear(bt, sig, bound)?;
            }
            let n = bound.len();
            bound.extend(bs.iter().map(|(x, _)| x.clone()));
            let r = check_linear(body, sig, bound);
            bound.truncate(n);
            r
        }
        Term::Forall(vs, body) | Term::Exists(vs, body) => {
            let n = bound.len();
            bound.extend(vs.iter().map(|v| v.name.clone()));
            let r = check_linear(body, sig, bound);
            bound.truncate(n);
            r
        }
        _ => Ok(()),
    }
}

fn first_quantifier(t: &Term) -> Option<&Term> {
    match t {
        Term::Forall(..) | Term::Exists(..) => Some(t),
        Term::App(_, args) => args.iter().find_map(first_quantifier),
        Term::Annot(inner, _) => first_quantifier(inner),
        Term::Let(bs, body) => bs.iter().find_map(|(_, b)| first_quantifier(b)).or_else(|| first_quantifier(body)),
        _ => None,
    }
}

/// Term-level check against a standard base logic (after macro expansion).
pub fn check_base_term(base: &BaseLogic, t: &Term, sig: &Signature) -> Result<(), Violation> {
    let t = expand_macros(t, sig);
    if base.quantifier_free() {
        if let Some(q) = first_quantifier(&t) {
            return Err(Violation::new("quantifiers are not allowed in a quantifier-free logic", Some(q)));
        }
    }
    if base.linear {
        check_linear(&t, sig, &mut Vec::new())?;
    }
    Ok(())
}

/// Whether `t` may be the argument of a constraint command.
pub fn check_constraint_allowed(logic: &SygusLogic, t: &Term, sig: &Signature) -> Result<(), Violation> {
    check_base_term(&logic.input, t, sig)?;
    if logic.input.flavor == Flavor::Pbe && !is_pbe_conjunction(t, sig) {
        return Err(Violation::new("PBE logics only allow conjunctions of PBE equalities", Some(t)));
    }
    Ok(())
}

/// Whether `t` may be the body of a grammar-less solution.
pub fn check_output_term(logic: &SygusLogic, t: &Term, sig: &Signature) -> Result<(), Violation> {
    check_base_term(&logic.output, t, sig)
}

fn weight_keyword_used(attrs: &[crate::syntax::Attribute], weights: &BTreeSet<String>) -> Option<String> {
    attrs.iter().find(|a| weights.contains(&a.keyword)).map(|a| a.keyword.clone())
}

fn annotation_weights(t: &Term, weights: &BTreeSet<String>) -> Option<String> {
    match t {
        Term::Annot(inner, attrs) => weight_keyword_used(attrs, weights).or_else(|| annotation_weights(inner, weights)),
        Term::App(_, args) => args.iter().find_map(|a| annotation_weights(a, weights)),
        _ => None,
    }
}

fn uses_weight_symbol(t: &Term, sig: &Signature) -> bool {
    let mut found = false;
    t.for_each_ident(&mut |id, _| {
        if sig.weight_symbol(id).is_some() {
            found = true;
        }
    });
    found
}

/// Whether a weight symbol `(_ w f)` occurs in `t`.
pub fn mentions_weight_symbol(t: &Term, sig: &Signature) -> bool {
    uses_weight_symbol(t, sig)
}

/// Greatest set of nonterminals all of whose generated terms are closed
/// constants (computed as the least fixpoint of non-constancy).
pub fn constant_nonterminals(g: &GrammarDef, params: &[SortedVar], sig: &Signature) -> BTreeSet<String> {
    let names: Vec<String> = g.nonterminals.iter().map(|n| n.name.clone()).collect();
    let mut constant: BTreeSet<String> = names.iter().cloned().collect();
    let param_names: Vec<String> = params.iter().map(|p| p.name.clone()).collect();
    loop {
        let mut changed = false;
        for group in &g.groups {
            if !constant.contains(&group.name) {
                continue;
            }
            let ok = group.rules.iter().all(|r| match r {
                GTerm::Constant(_) => true,
                GTerm::Variable(_) => false,
                GTerm::Term(t) => {
                    let t = expand_macros_shadowed(t, sig, &names);
                    rule_is_constant(&t, sig, &names, &constant, &param_names)
                }
            });
            if !ok {
                constant.remove(&group.name);
                changed = true;
            }
        }
        if !changed {
            return constant;
        }
    }
}

fn rule_is_constant(
    t: &Term,
    sig: &Signature,
    nts: &[String],
    constant: &BTreeSet<String>,
    params: &[String],
) -> bool {
    match t {
        Term::Lit(_) => true,
        Term::Ident(id) => match id.as_simple() {
            Some(n) if nts.iter().any(|y| y == n) => constant.contains(n),
            Some(n) if params.iter().any(|p| p == n) => false,
            Some(n) => sig.constructor(n).is_some() || (!sig.symbols.contains_key(n) && is_builtin_name(n, &sig.theories)),
            None => false,
        },
        Term::App(id, args) => {
            let head_ok = match id.as_simple() {
                Some(n) => !sig.symbols.contains_key(n) && !nts.iter().any(|y| y == n),
                None => sig.weight_symbol(id).is_none(),
            };
            head_ok && args.iter().all(|a| rule_is_constant(a, sig, nts, constant, params))
        }
        Term::Annot(inner, _) => rule_is_constant(inner, sig, nts, constant, params),
        _ => false,
    }
}

fn rule_linearity(
    t: &Term,
    sig: &Signature,
    nts: &[String],
    constant: &BTreeSet<String>,
    params: &[String],
) -> Result<(), Violation> {
    if let Term::App(id, args) = t {
        for a in args {
            rule_linearity(a, sig, nts, constant, params)?;
        }
        let is_const = |a: &Term| rule_is_constant(a, sig, nts, constant, params);
        match id.as_simple() {
            Some("*") if args.iter().filter(|a| !is_const(a)).count() > 1 => {
                return Err(Violation::new("rule can generate a product of two non-constant terms", Some(t)));
            }
            Some("div" | "mod" | "/") if args[1..].iter().any(|a| !is_const(a)) => {
                return Err(Violation::new("rule can generate a division by a non-constant term", Some(t)));
            }
            _ => {}
        }
    } else if let Term::Annot(inner, _) = t {
        return rule_linearity(inner, sig, nts, constant, params);
    }
    Ok(())
}

fn symbol_check(
    t: &Term,
    sig: &Signature,
    output: &Theories,
    nts: &[String],
    params: &[String],
) -> Result<(), Violation> {
    let mut bad: Option<String> = None;
    t.for_each_ident(&mut |id: &Identifier, _| {
        if bad.is_some() {
            return;
        }
        let Some(n) = id.as_simple() else { return };
        if nts.iter().any(|y| y == n) || params.iter().any(|p| p == n) {
            return;
        }
        if let Some(sym) = sig.symbols.get(n) {
            if sym.kind == SymKind::Var {
                bad = Some(format!("universal variable `{n}` cannot appear in a grammar"));
            }
            return;
        }
        if sig.constructor(n).is_some() || sig.sels.contains_key(n) {
            return;
        }
        if is_builtin_name(n, &sig.theories) && !is_builtin_name(n, output) {
            bad = Some(format!("`{n}` is not in the output logic"));
        }
    });
    match bad {
        Some(reason) => Err(Violation::new(reason, Some(t))),
        None => Ok(()),
    }
}

/// Feature gates, linearity and symbol restrictions on a grammar for `f`.
///
/// `witness` is consulted when the constancy analysis rejects a linear
/// grammar: it should return a generated closed term that violates
/// linearity, if one is found by bounded search.
pub fn check_grammar_allowed(
    logic: &SygusLogic,
    g: &GrammarDef,
    f: &str,
    params: &[SortedVar],
    sig: &Signature,
    weight_keywords: &BTreeSet<String>,
    witness: &mut dyn FnMut() -> Option<Term>,
) -> Result<(), (Code, Violation)> {
    let gate = |v: Violation| (Code::FeatureGated, v);
    if !logic.has(Feature::Grammars) {
        return Err(gate(Violation::new("grammars require the `grammars` feature", None)));
    }
    let nts: Vec<String> = g.nonterminals.iter().map(|n| n.name.clone()).collect();
    let param_names: Vec<String> = params.iter().map(|p| p.name.clone()).collect();
    let mut expanded = Vec::new();
    for group in &g.groups {
        for r in &group.rules {
            let GTerm::Term(t) = r else { continue };
            if let Some(k) = annotation_weights(t, weight_keywords) {
                if !logic.has(Feature::Weights) {
                    return Err(gate(Violation::new(format!("weight attribute {k} requires the `weights` feature"), Some(t))));
                }
            }
            let e = expand_macros_shadowed(t, sig, &nts);
            let mut calls = BTreeSet::new();
            e.for_each_ident(&mut |id, _| {
                if let Some(n) = id.as_simple() {
                    if !nts.iter().any(|y| y == n) && sig.is_synth_fun(n) {
                        calls.insert(n.to_string());
                    }
                }
            });
            if calls.contains(f) && !logic.has(Feature::Recursion) {
                return Err(gate(Violation::new(format!("rule mentions `{f}` itself; requires `recursion`"), Some(t))));
            }
            if calls.iter().any(|c| c != f) && !logic.has(Feature::FwdDecls) {
                return Err(gate(Violation::new("rule mentions another function-to-synthesize; requires `fwd-decls`", Some(t))));
            }
            if uses_weight_symbol(&e, sig) && !logic.has(Feature::Weights) {
                return Err(gate(Violation::new("weight symbols require the `weights` feature", Some(t))));
            }
            symbol_check(&e, sig, &logic.output.theories, &nts, &param_names).map_err(|v| (Code::LogicGrammar, v))?;
            expanded.push(e);
        }
    }
    if logic.output.linear {
        let constant = constant_nonterminals(g, params, sig);
        for e in &expanded {
            if let Err(mut v) = rule_linearity(e, sig, &nts, &constant, &param_names) {
                match witness() {
                    Some(w) => {
                        v.reason = format!("{}; generated witness `{w}`", v.reason);
                    }
                    None => v.conservative = true,
                }
                return Err((Code::LogicGrammar, v));
            }
        }
    }
    Ok(())
}

/// Linearity of a closed generated term, used to look for grammar witnesses.
pub fn term_is_linear(t: &Term, sig: &Signature, params: &[SortedVar]) -> bool {
    let bound: Vec<String> = params.iter().map(|p| p.name.clone()).collect();
    let mut b = bound;
    check_linear(&expand_macros(t, sig), sig, &mut b).is_ok()
}

/// How each constraint in the state was introduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Constraint,
    Inv,
    Chc(usize),
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChcClause {
    pub vars: Vec<SortedVar>,
    pub body: Term,
    pub head: Term,
}

/// Definition 1: no symbol of `s`, or `(S u1 … uk)` with variable arguments.
pub fn is_atomic(t: &Term, s: &BTreeSet<String>, vars: &[SortedVar]) -> bool {
    let t = t.base();
    let mentions = {
        let mut m = false;
        t.for_each_ident(&mut |id, _| {
            if id.as_simple().is_some_and(|n| s.contains(n)) {
                m = true;
            }
        });
        m
    };
    if !mentions {
        return true;
    }
    match t {
        Term::Ident(id) => id.as_simple().is_some_and(|n| s.contains(n)),
        Term::App(id, args) => {
            id.as_simple().is_some_and(|n| s.contains(n))
                && args.iter().all(|a| a.as_symbol().is_some_and(|x| vars.iter().any(|v| v.name == x)))
        }
        _ => false,
    }
}

fn is_atomic_conjunction(t: &Term, s: &BTreeSet<String>, vars: &[SortedVar]) -> bool {
    match t.base().head() {
        Some((id, args)) if id.as_simple() == Some("and") && !is_atomic(t, s, vars) => {
            args.iter().all(|a| is_atomic(a, s, vars))
        }
        _ => is_atomic(t, s, vars),
    }
}

/// Summary of a processed state that the special-logic check needs.
pub struct SpecialFacts<'a> {
    pub funs: Vec<(&'a str, bool)>,
    pub origins: &'a [Origin],
    pub chc: &'a [ChcClause],
    pub inv_count: usize,
    pub oracle_constraints: usize,
}

/// The whole-script restrictions of the Inv_X and CHC_X logics.
pub fn check_special_logic(logic: &SygusLogic, facts: &SpecialFacts) -> Result<(), Violation> {
    match logic.input.flavor {
        Flavor::Inv => {
            if facts.funs.len() != 1 || !facts.funs[0].1 {
                return Err(Violation::new("Inv logics need exactly one Bool-returning function-to-synthesize", None));
            }
            if facts.inv_count != 1 {
                return Err(Violation::new(format!("Inv logics need exactly one inv-constraint, found {}", facts.inv_count), None));
            }
            if facts.origins.iter().any(|o| *o != Origin::Inv) || facts.oracle_constraints > 0 {
                return Err(Violation::new("Inv logics allow no constraints besides the inv-constraint", None));
            }
            Ok(())
        }
        Flavor::Chc => {
            if let Some((f, _)) = facts.funs.iter().find(|(_, b)| !b) {
                return Err(Violation::new(format!("CHC logics need Bool-returning functions; `{f}` is not"), None));
            }
            if facts.chc.is_empty() {
                return Err(Violation::new("CHC logics need at least one chc-constraint", None));
            }
            if facts.origins.iter().any(|o| !matches!(o, Origin::Chc(_))) || facts.oracle_constraints > 0 {
                return Err(Violation::new("CHC logics allow no constraints besides chc-constraint", None));
            }
            let s: BTreeSet<String> = facts.funs.iter().map(|(f, _)| f.to_string()).collect();
            for c in facts.chc {
                if !is_atomic(&c.head, &s, &c.vars) {
                    return Err(Violation::new("CHC head is not an atomic term", Some(&c.head)));
                }
                if !is_atomic_conjunction(&c.body, &s, &c.vars) {
                    return Err(Violation::new("CHC body is not a conjunction of atomic terms", Some(&c.body)));
                }
            }
            let queries = facts.chc.iter().filter(|c| matches!(c.head.base(), Term::Lit(Literal::Bool(false)))).count();
            if queries != 1 {
                return Err(Violation::new(format!("CHC logics need exactly one query, found {queries}"), None));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Symbols of the output logic, for messages.
pub fn describe_features(fs: &BTreeSet<Feature>) -> String {
    fs.iter().map(|f| f.keyword()).collect::<Vec<_>>().join(" ")
}

/// Weight defaults declared so far: keyword (with colon) → default value.
pub type WeightDefaults = BTreeMap<String, u64>;
