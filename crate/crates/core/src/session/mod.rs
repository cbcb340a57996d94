//! Command processing: ordering, declarations, constraints, and the
//! desugaring of inv-constraint, chc-constraint and the oracle commands.

mod fresh;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

pub use fresh::{script_symbols, FreshNames};

use crate::diag::{err, Code, DResult, Diagnostic};
use crate::eval::expand_macros;
use crate::grammar::{compile, RuleSet};
use crate::logics::{
    check_constraint_allowed, check_grammar_allowed, check_special_logic, mentions_weight_symbol, parse_logic,
    term_is_linear, ChcClause, Flavor, Origin, SpecialFacts, SygusLogic,
};
use crate::reader::Span;
use crate::syntax::{
    parse_script, AttrValue, Attribute, Command, Feature, FunDef, GrammarDef, OracleSpec, OracleSugar, Sort,
    SortedVar, SynthFun, Term,
};
use crate::theories::{sort_check, Scope, Signature, SortDef, SymKind, UserSym};
use crate::Options;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Phase {
    Start,
    Setters,
    Body,
}

#[derive(Debug, Clone)]
pub struct FunEntry {
    pub name: String,
    pub params: Vec<SortedVar>,
    pub ret: Sort,
    pub grammar: Option<GrammarDef>,
    pub rules: Option<RuleSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Constraint,
    Assume,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    CommandLine,
    File,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBinding {
    pub kind: OracleKind,
    pub inputs: Vec<SortedVar>,
    pub outputs: Vec<SortedVar>,
    pub template: Term,
    pub oracle: String,
    pub transport: Transport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub terms: Vec<Term>,
    pub attrs: Vec<Attribute>,
}

impl Objective {
    pub fn lexico(&self) -> bool {
        self.attrs.iter().any(|a| a.keyword == ":lexico")
    }
}

/// `∃f⃗. ∀v⃗. (⋀α) ⇒ (⋀φ)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture {
    pub funs: Vec<String>,
    pub vars: Vec<SortedVar>,
    pub assumptions: Vec<Term>,
    pub constraints: Vec<Term>,
}

impl Conjecture {
    /// The body Ψ, with the trivial cases simplified.
    pub fn formula(&self) -> Term {
        let conj = |ts: &[Term]| match ts {
            [] => Term::bool(true),
            [t] => t.clone(),
            _ => Term::app("and", ts.to_vec()),
        };
        if self.assumptions.is_empty() {
            conj(&self.constraints)
        } else {
            Term::app("=>", vec![conj(&self.assumptions), conj(&self.constraints)])
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthState {
    pub opts: Options,
    pub phase: Phase,
    pub logic: SygusLogic,
    pub sig: Signature,
    pub funs: Vec<FunEntry>,
    pub vars: Vec<SortedVar>,
    /// Function-sorted universal variables introduced for oracle functions.
    pub oracle_vars: BTreeSet<String>,
    pub constraints: Vec<Term>,
    pub origins: Vec<Origin>,
    pub assumptions: Vec<Term>,
    pub oracles: Vec<OracleBinding>,
    /// Weight keyword (with colon) to default value.
    pub weights: BTreeMap<String, BigUint>,
    pub info: Vec<(String, Option<AttrValue>)>,
    pub options: Vec<(String, Option<AttrValue>)>,
    pub objective: Option<Objective>,
    pub chc: Vec<ChcClause>,
    pub inv_count: usize,
    pub check_synth: bool,
    /// The command stream in core form.
    pub core: Vec<Command>,
    pub fresh: FreshNames,
}

fn apply(f: &str, args: Vec<Term>) -> Term {
    if args.is_empty() {
        Term::sym(f)
    } else {
        Term::app(f, args)
    }
}

fn var_terms(vs: &[SortedVar]) -> Vec<Term> {
    vs.iter().map(|v| Term::sym(&v.name)).collect()
}

impl SynthState {
    pub fn new(opts: Options) -> SynthState {
        let mut sig = Signature::new(SygusLogic::default().input.theories);
        sig.strict = opts.strict;
        sig.permissive = opts.permissive;
        sig.weight_names.insert("weight".to_string());
        let mut weights = BTreeMap::new();
        weights.insert(":weight".to_string(), BigUint::default());
        SynthState {
            opts,
            phase: Phase::Start,
            logic: SygusLogic::default(),
            sig,
            funs: Vec::new(),
            vars: Vec::new(),
            oracle_vars: BTreeSet::new(),
            constraints: Vec::new(),
            origins: Vec::new(),
            assumptions: Vec::new(),
            oracles: Vec::new(),
            weights,
            info: Vec::new(),
            options: Vec::new(),
            objective: None,
            chc: Vec::new(),
            inv_count: 0,
            check_synth: false,
            core: Vec::new(),
            fresh: FreshNames::default(),
        }
    }

    pub fn fun(&self, name: &str) -> Option<&FunEntry> {
        self.funs.iter().find(|f| f.name == name)
    }

    pub fn conjecture(&self) -> Conjecture {
        Conjecture {
            funs: self.funs.iter().map(|f| f.name.clone()).collect(),
            vars: self.vars.clone(),
            assumptions: self.assumptions.clone(),
            constraints: self.constraints.clone(),
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        let sig = &self.sig;
        self.fresh.next(base, |n| sig.is_bound(n) || sig.is_sort_bound(n))
    }

    fn advance(&mut self, cmd: &Command) -> DResult<()> {
        let target = match cmd {
            Command::SetInfo(..) => return Ok(()),
            Command::SetLogic(_) => Phase::Start,
            Command::SetFeature(..) | Command::SetOption(..) => Phase::Setters,
            _ => Phase::Body,
        };
        let ok = match target {
            Phase::Start => self.phase == Phase::Start,
            Phase::Setters => self.phase <= Phase::Setters,
            Phase::Body => true,
        };
        if !ok {
            return err(Code::Order, format!("`{}` must precede all other commands", cmd.name()));
        }
        // set-logic itself leaves the state in Start only until something else arrives.
        self.phase = match target {
            Phase::Start => Phase::Setters,
            p => p,
        };
        Ok(())
    }

    /// Process one command. On error the state is left as it was.
    pub fn process(&mut self, cmd: &Command) -> DResult<()> {
        self.advance(cmd)?;
        match cmd {
            Command::SetLogic(name) => {
                let logic = parse_logic(name)?;
                self.sig.theories = logic.input.theories;
                self.logic = logic;
                let shown = self.logic.underlying_name().unwrap_or(name).to_string();
                self.core.push(Command::SetLogic(shown));
            }
            Command::SetFeature(f, on) => {
                if *on {
                    self.logic.features.insert(*f);
                } else {
                    self.logic.features.remove(f);
                }
                self.core.push(cmd.clone());
            }
            Command::SetOption(k, v) => {
                self.options.push((k.clone(), v.clone()));
                self.core.push(cmd.clone());
            }
            Command::SetInfo(k, v) => {
                self.info.push((k.clone(), v.clone()));
                self.core.push(cmd.clone());
            }
            Command::DeclareVar(name, sort) => self.declare_var(name, sort)?,
            Command::DeclareWeight(name, attrs) => self.declare_weight(name, attrs)?,
            Command::SynthFun(sf) => self.synth_fun(sf)?,
            Command::DefineFun(def) => self.define_fun(def)?,
            Command::DefineFunRec(_) => {
                return err(Code::UnknownCommand, "define-fun-rec is only allowed in responses");
            }
            Command::DefineSort(name, params, body) => {
                if self.sig.is_sort_bound(name) {
                    return err(Code::DupSymbol, format!("sort `{name}` is already declared"));
                }
                self.sig.sorts.insert(name.clone(), SortDef::Alias(params.clone(), body.clone()));
                if params.is_empty() {
                    if let Err(e) = self.sig.resolve_sort(body) {
                        self.sig.sorts.remove(name);
                        return Err(e);
                    }
                }
                self.core.push(cmd.clone());
            }
            Command::DeclareSort(name, arity) => {
                if !self.sig.theories.uf {
                    return err(Code::LogicCmd, "declare-sort requires a logic with uninterpreted functions (UF)");
                }
                if self.sig.is_sort_bound(name) {
                    return err(Code::DupSymbol, format!("sort `{name}` is already declared"));
                }
                self.sig.sorts.insert(name.clone(), SortDef::Uninterpreted(*arity));
                self.core.push(cmd.clone());
            }
            Command::DeclareDatatype(name, decl) => {
                self.datatypes(&[(name.clone(), 0)], std::slice::from_ref(decl))?;
                self.core.push(cmd.clone());
            }
            Command::DeclareDatatypes(decls, bodies) => {
                self.datatypes(decls, bodies)?;
                self.core.push(cmd.clone());
            }
            Command::Constraint(t) => {
                let t = self.check_formula(t, true)?;
                self.constraints.push(t.clone());
                self.origins.push(Origin::Constraint);
                self.core.push(Command::Constraint(t));
            }
            Command::Assume(t) => {
                let t = self.check_formula(t, false)?;
                self.assumptions.push(t.clone());
                self.core.push(Command::Assume(t));
            }
            Command::InvConstraint { inv, pre, trans, post } => self.inv_constraint(inv, pre, trans, post)?,
            Command::ChcConstraint { vars, body, head } => self.chc_constraint(vars, body, head)?,
            Command::OracleConstraint(spec) => self.oracle_binding(OracleKind::Constraint, spec)?,
            Command::OracleAssume(spec) => self.oracle_binding(OracleKind::Assume, spec)?,
            Command::DeclareOracleFun { name, args, ret, oracle, attrs } => {
                self.require(Feature::Oracles, "declare-oracle-fun")?;
                self.declare_oracle_fun(name, args, ret, oracle, attrs)?;
            }
            Command::Sugar { kind, fun, oracle, attrs } => self.oracle_sugar(*kind, fun, oracle, attrs)?,
            Command::OptimizeSynth(terms, attrs) => self.optimize(terms, attrs)?,
            Command::CheckSynth => {
                self.check_synth = true;
                self.core.push(cmd.clone());
            }
        }
        Ok(())
    }

    fn require(&self, f: Feature, what: &str) -> DResult<()> {
        if self.logic.has(f) {
            Ok(())
        } else {
            err(Code::FeatureGated, format!("`{what}` requires the {} feature", f.keyword()))
        }
    }

    fn datatypes(&mut self, decls: &[(String, u64)], bodies: &[crate::syntax::DatatypeDecl]) -> DResult<()> {
        if !self.sig.theories.dt {
            return err(Code::LogicCmd, "datatype declarations require a logic with datatypes (DT)");
        }
        let mut sig = self.sig.clone();
        sig.declare_datatypes(decls, bodies)?;
        self.sig = sig;
        Ok(())
    }

    fn declare_var(&mut self, name: &str, sort: &Sort) -> DResult<()> {
        let s = self.sig.resolve_sort(sort)?;
        let arrow = s.as_arrow().is_some();
        if arrow && !self.logic.has(Feature::Oracles) {
            return err(Code::Sort, format!("universal variable `{name}` cannot have function sort {s}"));
        }
        self.sig.add_symbol(name, UserSym { kind: SymKind::Var, params: vec![], ret: s.clone(), body: None })?;
        if arrow {
            self.oracle_vars.insert(name.to_string());
        }
        self.vars.push(SortedVar::new(name, s.clone()));
        self.core.push(Command::DeclareVar(name.to_string(), s));
        Ok(())
    }

    fn declare_weight(&mut self, name: &str, attrs: &[Attribute]) -> DResult<()> {
        self.require(Feature::Weights, "declare-weight")?;
        let kw = format!(":{name}");
        if self.weights.contains_key(&kw) {
            return err(Code::DupSymbol, format!("weight `{name}` is already declared"));
        }
        let mut default = BigUint::default();
        for a in attrs {
            if a.keyword == ":default" {
                match a.numeral() {
                    Some(n) => default = n.clone(),
                    None => return err(Code::Weight, "`:default` of a weight must be a numeral"),
                }
            }
        }
        self.weights.insert(kw, default);
        self.sig.weight_names.insert(name.to_string());
        self.core.push(Command::DeclareWeight(name.to_string(), attrs.to_vec()));
        Ok(())
    }

    fn resolve_vars(&self, vs: &[SortedVar]) -> DResult<Vec<SortedVar>> {
        vs.iter().map(|v| Ok(SortedVar::new(&v.name, self.sig.resolve_sort(&v.sort)?))).collect()
    }

    fn synth_fun(&mut self, sf: &SynthFun) -> DResult<()> {
        let params = self.resolve_vars(&sf.params)?;
        let ret = self.sig.resolve_sort(&sf.ret)?;
        self.sig.add_symbol(
            &sf.name,
            UserSym { kind: SymKind::SynthFun, params: params.clone(), ret: ret.clone(), body: None },
        )?;
        let rules = match &sf.grammar {
            None => Ok(None),
            Some(g) => self.check_grammar(&sf.name, &params, &ret, g).map(Some),
        };
        match rules {
            Ok(rules) => {
                self.funs.push(FunEntry { name: sf.name.clone(), params, ret, grammar: sf.grammar.clone(), rules });
                self.core.push(Command::SynthFun(sf.clone()));
                Ok(())
            }
            Err(e) => {
                self.sig.symbols.remove(&sf.name);
                Err(e)
            }
        }
    }

    fn check_grammar(&self, f: &str, params: &[SortedVar], ret: &Sort, g: &GrammarDef) -> DResult<RuleSet> {
        if !self.logic.has(Feature::Grammars) {
            return err(Code::FeatureGated, "a grammar requires the :grammars feature");
        }
        let keywords: BTreeSet<String> = self.weights.keys().cloned().collect();
        let rs = compile(g, f, params, ret, &self.sig, &self.weights)?;
        let sig = &self.sig;
        let mut witness = || {
            let start = &rs.nts[0].name;
            rs.enumerate(start, 7).terms.into_iter().find(|t| !term_is_linear(t, sig, params))
        };
        check_grammar_allowed(&self.logic, g, f, params, &self.sig, &keywords, &mut witness)
            .map_err(|(code, v)| Diagnostic::error(code, Span::default(), format!("grammar for `{f}`: {v}")))?;
        Ok(rs)
    }

    fn define_fun(&mut self, def: &FunDef) -> DResult<()> {
        let params = self.resolve_vars(&def.params)?;
        let ret = self.sig.resolve_sort(&def.ret)?;
        if self.sig.is_bound(&def.name) {
            return err(Code::DupSymbol, format!("symbol `{}` is already declared", def.name));
        }
        let mut scope: Scope = params.iter().map(|p| (p.name.clone(), p.sort.clone())).collect();
        let s = sort_check(&def.body, &self.sig, &mut scope)?;
        if s != ret {
            return err(Code::Sort, format!("body of `{}` has sort {s}, declared {ret}", def.name));
        }
        self.gate_weight_symbols(&def.body)?;
        self.sig.add_symbol(
            &def.name,
            UserSym { kind: SymKind::Macro, params: params.clone(), ret: ret.clone(), body: Some(def.body.clone()) },
        )?;
        self.core.push(Command::DefineFun(FunDef { name: def.name.clone(), params, ret, body: def.body.clone() }));
        Ok(())
    }

    fn gate_weight_symbols(&self, t: &Term) -> DResult<()> {
        if !self.logic.has(Feature::Weights) && mentions_weight_symbol(&expand_macros(t, &self.sig), &self.sig) {
            return err(Code::FeatureGated, "weight symbols require the :weights feature");
        }
        Ok(())
    }

    /// Sort-check a constraint or assumption and apply the logic checks.
    fn check_formula(&self, t: &Term, constraint: bool) -> DResult<Term> {
        let s = sort_check(t, &self.sig, &mut Scope::new())?;
        if !s.is_bool() {
            return err(Code::NotBool, format!("`{t}` has sort {s}, expected Bool"));
        }
        self.gate_weight_symbols(t)?;
        let r = if constraint {
            check_constraint_allowed(&self.logic, t, &self.sig)
        } else {
            crate::logics::check_base_term(&self.logic.input, t, &self.sig)
        };
        r.map_err(|v| Diagnostic::error(Code::LogicTerm, Span::default(), v.to_string()))?;
        Ok(t.clone())
    }

    fn macro_sig(&self, name: &str, what: &str) -> DResult<(Vec<Sort>, Sort)> {
        match self.sig.symbols.get(name) {
            Some(s) if s.kind == SymKind::Macro => Ok((s.params.iter().map(|p| p.sort.clone()).collect(), s.ret.clone())),
            _ => err(Code::Inv, format!("{what} `{name}` must be a defined function")),
        }
    }

    fn inv_constraint(&mut self, inv: &str, pre: &str, trans: &str, post: &str) -> DResult<()> {
        let Some(entry) = self.fun(inv) else {
            return err(Code::Inv, format!("`{inv}` is not a function-to-synthesize"));
        };
        if !entry.ret.is_bool() {
            return err(Code::Inv, format!("`{inv}` must return Bool"));
        }
        let sorts: Vec<Sort> = entry.params.iter().map(|p| p.sort.clone()).collect();
        let doubled: Vec<Sort> = sorts.iter().chain(sorts.iter()).cloned().collect();
        for (name, what, want) in [(pre, "pre-condition", &sorts), (trans, "transition relation", &doubled), (post, "post-condition", &sorts)] {
            let (ps, r) = self.macro_sig(name, what)?;
            if &ps != want || !r.is_bool() {
                return err(
                    Code::Inv,
                    format!("{what} `{name}` must have {} arguments of the invariant's sorts and return Bool", want.len()),
                );
            }
        }
        let n = sorts.len();
        let mut v = Vec::new();
        let mut vp = Vec::new();
        for i in 0..n {
            v.push(self.fresh(&format!("v{}", i + 1)));
        }
        for i in 0..n {
            vp.push(self.fresh(&format!("v{}p", i + 1)));
        }
        for (name, s) in v.iter().chain(vp.iter()).zip(sorts.iter().chain(sorts.iter())) {
            self.declare_var(name, s)?;
        }
        let vt: Vec<Term> = v.iter().map(Term::sym).collect();
        let vpt: Vec<Term> = vp.iter().map(Term::sym).collect();
        let both: Vec<Term> = vt.iter().chain(vpt.iter()).cloned().collect();
        let cs = [
            Term::app("=>", vec![apply(pre, vt.clone()), apply(inv, vt.clone())]),
            Term::app(
                "=>",
                vec![Term::app("and", vec![apply(inv, vt.clone()), apply(trans, both)]), apply(inv, vpt.clone())],
            ),
            Term::app("=>", vec![apply(inv, vt.clone()), apply(post, vt)]),
        ];
        for c in cs {
            self.constraints.push(c.clone());
            self.origins.push(Origin::Inv);
            self.core.push(Command::Constraint(c));
        }
        self.inv_count += 1;
        Ok(())
    }

    fn chc_constraint(&mut self, vars: &[SortedVar], body: &Term, head: &Term) -> DResult<()> {
        let vars = self.resolve_vars(vars)?;
        let mut scope: Scope = vars.iter().map(|p| (p.name.clone(), p.sort.clone())).collect();
        for (what, t) in [("body", body), ("head", head)] {
            let s = sort_check(t, &self.sig, &mut scope)
                .map_err(|d| Diagnostic::error(Code::Chc, d.span, format!("chc-constraint {what}: {}", d.message)))?;
            if !s.is_bool() {
                return err(Code::Chc, format!("chc-constraint {what} has sort {s}, expected Bool"));
            }
        }
        let clause = ChcClause { vars: vars.clone(), body: body.clone(), head: head.clone() };
        let vs: Vec<String> = (0..vars.len()).map(|i| self.fresh(&format!("v{}", i + 1))).collect();
        for (name, v) in vs.iter().zip(&vars) {
            self.declare_var(name, &v.sort)?;
        }
        let fb = self.fresh("F_body");
        let fh = self.fresh("F_head");
        for (name, t) in [(&fb, body), (&fh, head)] {
            self.define_fun(&FunDef { name: name.clone(), params: vars.clone(), ret: Sort::bool(), body: t.clone() })?;
        }
        let args: Vec<Term> = vs.iter().map(Term::sym).collect();
        let c = Term::app("=>", vec![apply(&fb, args.clone()), apply(&fh, args)]);
        self.constraints.push(c.clone());
        self.origins.push(Origin::Chc(self.chc.len()));
        self.chc.push(clause);
        self.core.push(Command::Constraint(c));
        Ok(())
    }

    fn oracle_binding(&mut self, kind: OracleKind, spec: &OracleSpec) -> DResult<()> {
        let what = if kind == OracleKind::Constraint { "oracle-constraint" } else { "oracle-assume" };
        self.require(Feature::Oracles, what)?;
        let inputs = self.resolve_vars(&spec.inputs)?;
        let outputs = self.resolve_vars(&spec.outputs)?;
        let mut scope: Scope = inputs.iter().chain(&outputs).map(|p| (p.name.clone(), p.sort.clone())).collect();
        let s = sort_check(&spec.term, &self.sig, &mut scope)?;
        if !s.is_bool() {
            return err(Code::NotBool, format!("{what} template has sort {s}, expected Bool"));
        }
        let transport = if spec.attrs.iter().any(|a| a.keyword == ":file") { Transport::File } else { Transport::CommandLine };
        self.oracles.push(OracleBinding {
            kind,
            inputs: inputs.clone(),
            outputs: outputs.clone(),
            template: spec.term.clone(),
            oracle: spec.oracle.clone(),
            transport,
        });
        let spec = OracleSpec { inputs, outputs, ..spec.clone() };
        self.core.push(match kind {
            OracleKind::Constraint => Command::OracleConstraint(spec),
            OracleKind::Assume => Command::OracleAssume(spec),
        });
        Ok(())
    }

    fn declare_oracle_fun(&mut self, name: &str, args: &[Sort], ret: &Sort, oracle: &str, attrs: &[Attribute]) -> DResult<()> {
        let args = args.iter().map(|s| self.sig.resolve_sort(s)).collect::<DResult<Vec<_>>>()?;
        let ret = self.sig.resolve_sort(ret)?;
        if self.sig.is_bound(name) {
            return err(Code::DupSymbol, format!("symbol `{name}` is already declared"));
        }
        let xs: Vec<SortedVar> =
            args.iter().enumerate().map(|(i, s)| SortedVar::new(self.fresh(&format!("x{}", i + 1)), s.clone())).collect();
        let x = SortedVar::new(self.fresh("x"), ret.clone());
        let sort = if args.is_empty() { ret.clone() } else { Sort::arrow(args, ret) };
        self.declare_var(name, &sort)?;
        if !self.oracle_vars.contains(name) {
            self.oracle_vars.insert(name.to_string());
        }
        let template = Term::app("=", vec![apply(name, var_terms(&xs)), Term::sym(&x.name)]);
        let spec = OracleSpec { inputs: xs, outputs: vec![x], term: template, oracle: oracle.to_string(), attrs: attrs.to_vec() };
        self.oracle_binding(OracleKind::Assume, &spec)
    }

    fn oracle_sugar(&mut self, kind: OracleSugar, fun: &str, oracle: &str, attrs: &[Attribute]) -> DResult<()> {
        self.require(Feature::Oracles, kind.command())?;
        let Some(entry) = self.fun(fun) else {
            return err(Code::Oracle, format!("`{fun}` is not a function-to-synthesize"));
        };
        let sorts: Vec<Sort> = entry.params.iter().map(|p| p.sort.clone()).collect();
        let ret = entry.ret.clone();
        let fsort = Sort::arrow(sorts.clone(), ret.clone());
        let mut xs: Vec<SortedVar> =
            sorts.iter().enumerate().map(|(i, s)| SortedVar::new(self.fresh(&format!("x{}", i + 1)), s.clone())).collect();
        let app = apply(fun, var_terms(&xs));
        let spec = |inputs, outputs, term| OracleSpec { inputs, outputs, term, oracle: oracle.to_string(), attrs: attrs.to_vec() };
        match kind {
            OracleSugar::Io => {
                let x = SortedVar::new(self.fresh("x"), ret);
                let t = Term::app("=", vec![app, Term::sym(&x.name)]);
                self.oracle_binding(OracleKind::Constraint, &spec(xs, vec![x], t))
            }
            OracleSugar::PosWitness | OracleSugar::NegWitness => {
                let x = SortedVar::new(self.fresh("x"), ret);
                let mut t = Term::app("=", vec![app, Term::sym(&x.name)]);
                if kind == OracleSugar::NegWitness {
                    t = Term::app("not", vec![t]);
                }
                xs.push(x);
                self.oracle_binding(OracleKind::Constraint, &spec(vec![], xs, t))
            }
            OracleSugar::Membership => {
                let x = SortedVar::new(self.fresh("x"), ret);
                let r = SortedVar::new(self.fresh("R"), Sort::bool());
                let t = Term::app("=", vec![Term::app("=", vec![app, Term::sym(&x.name)]), Term::sym(&r.name)]);
                xs.push(x);
                self.oracle_binding(OracleKind::Constraint, &spec(xs, vec![r], t))
            }
            OracleSugar::Cex => self.cex_sugar(fun, xs, fsort, oracle, attrs),
            OracleSugar::Correctness => self.correctness_sugar(fun, fsort, oracle, attrs),
            OracleSugar::CorrectnessCex => {
                self.cex_sugar(fun, xs, fsort.clone(), oracle, attrs)?;
                self.correctness_sugar(fun, fsort, oracle, attrs)
            }
        }
    }

    fn cex_sugar(&mut self, fun: &str, xs: Vec<SortedVar>, fsort: Sort, oracle: &str, attrs: &[Attribute]) -> DResult<()> {
        let fc = SortedVar::new(self.fresh("F_c"), fsort);
        let r = SortedVar::new(self.fresh("R"), Sort::bool());
        let args = var_terms(&xs);
        let t = Term::app(
            "=>",
            vec![
                Term::sym(&r.name),
                Term::app("not", vec![Term::app("=", vec![apply(fun, args.clone()), apply(&fc.name, args)])]),
            ],
        );
        let mut outputs = vec![r];
        outputs.extend(xs);
        let spec = OracleSpec { inputs: vec![fc], outputs, term: t, oracle: oracle.to_string(), attrs: attrs.to_vec() };
        self.oracle_binding(OracleKind::Constraint, &spec)
    }

    fn correctness_sugar(&mut self, fun: &str, fsort: Sort, oracle: &str, attrs: &[Attribute]) -> DResult<()> {
        let s = self.fresh("s");
        self.declare_oracle_fun(&s, &[fsort], &Sort::bool(), oracle, attrs)?;
        let c = Term::app(&s, vec![Term::sym(fun)]);
        self.constraints.push(c.clone());
        self.origins.push(Origin::Constraint);
        self.core.push(Command::Constraint(c));
        Ok(())
    }

    fn optimize(&mut self, terms: &[Term], attrs: &[Attribute]) -> DResult<()> {
        for t in terms {
            sort_check(t, &self.sig, &mut Scope::new())?;
            self.gate_weight_symbols(t)?;
            let free = expand_macros(t, &self.sig).free_symbols();
            if let Some(v) = self.vars.iter().find(|v| free.contains(&v.name)) {
                return err(Code::Opt, format!("objective `{t}` mentions universal variable `{}`", v.name));
            }
        }
        if self.objective.is_some() {
            return err(Code::Opt, "only one optimize-synth command is allowed");
        }
        self.objective = Some(Objective { terms: terms.to_vec(), attrs: attrs.to_vec() });
        self.core.push(Command::OptimizeSynth(terms.to_vec(), attrs.to_vec()));
        Ok(())
    }

    /// Whole-script checks, run once the stream is exhausted.
    pub fn finish(&self) -> DResult<()> {
        let funs: Vec<(&str, bool)> = self.funs.iter().map(|f| (f.name.as_str(), f.ret.is_bool())).collect();
        let facts = SpecialFacts {
            funs,
            origins: &self.origins,
            chc: &self.chc,
            inv_count: self.inv_count,
            oracle_constraints: self.oracles.len() + self.assumptions.len(),
        };
        check_special_logic(&self.logic, &facts)
            .map_err(|v| Diagnostic::error(Code::LogicSpecial, Span::default(), v.to_string()))
    }

    pub fn is_pbe(&self) -> bool {
        self.logic.input.flavor == Flavor::Pbe
    }
}

/// Result of loading a script.
pub struct Loaded {
    pub state: SynthState,
    pub diagnostics: Vec<Diagnostic>,
}

impl Loaded {
    pub fn ok(&self) -> bool {
        self.diagnostics.iter().all(|d| !d.is_error())
    }
}

/// Parse and process a whole script, collecting one diagnostic per
/// rejected command. Parse errors stop processing.
pub fn load(text: &str, opts: &Options) -> Loaded {
    let mut state = SynthState::new(*opts);
    let cmds = match parse_script(text, opts) {
        Ok(c) => c,
        Err(diagnostics) => return Loaded { state, diagnostics },
    };
    state.fresh.reserve(script_symbols(text));
    let mut diagnostics = Vec::new();
    for c in &cmds {
        if let Err(d) = state.process(&c.node) {
            diagnostics.push(d.at(c.span));
        }
    }
    if diagnostics.is_empty() {
        if let Err(d) = state.finish() {
            diagnostics.push(d);
        }
    }
    Loaded { state, diagnostics }
}

/// The core-form script, optionally with macros expanded in constraints.
pub fn desugar(state: &SynthState, expand: bool) -> String {
    let cmds: Vec<Command> = state
        .core
        .iter()
        .map(|c| match c {
            Command::Constraint(t) if expand => Command::Constraint(expand_macros(t, &state.sig)),
            Command::Assume(t) if expand => Command::Assume(expand_macros(t, &state.sig)),
            other => other.clone(),
        })
        .collect();
    crate::syntax::print_script(&cmds)
}
