use num_bigint::BigUint;

use crate::reader::SExpr;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Num(u64),
    Sym(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identifier {
    pub symbol: String,
    pub indices: Vec<Index>,
}

impl Identifier {
    pub fn simple(s: impl Into<String>) -> Identifier {
        Identifier { symbol: s.into(), indices: Vec::new() }
    }

    pub fn indexed(s: impl Into<String>, indices: Vec<Index>) -> Identifier {
        Identifier { symbol: s.into(), indices }
    }

    pub fn is_simple(&self) -> bool {
        self.indices.is_empty()
    }

    /// The symbol, if the identifier carries no indices.
    pub fn as_simple(&self) -> Option<&str> {
        self.indices.is_empty().then_some(self.symbol.as_str())
    }

    pub fn num_indices(&self) -> Option<Vec<u64>> {
        self.indices
            .iter()
            .map(|i| match i {
                Index::Num(n) => Some(*n),
                Index::Sym(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sort {
    pub id: Identifier,
    pub args: Vec<Sort>,
}

impl Sort {
    pub fn simple(s: &str) -> Sort {
        Sort { id: Identifier::simple(s), args: Vec::new() }
    }

    pub fn int() -> Sort {
        Sort::simple("Int")
    }

    pub fn real() -> Sort {
        Sort::simple("Real")
    }

    pub fn bool() -> Sort {
        Sort::simple("Bool")
    }

    pub fn string() -> Sort {
        Sort::simple("String")
    }

    pub fn reglan() -> Sort {
        Sort::simple("RegLan")
    }

    pub fn bitvec(width: u64) -> Sort {
        Sort { id: Identifier::indexed("BitVec", vec![Index::Num(width)]), args: Vec::new() }
    }

    pub fn arrow(mut args: Vec<Sort>, ret: Sort) -> Sort {
        args.push(ret);
        Sort { id: Identifier::simple("->"), args }
    }

    pub fn is(&self, name: &str) -> bool {
        self.args.is_empty() && self.id.as_simple() == Some(name)
    }

    pub fn is_bool(&self) -> bool {
        self.is("Bool")
    }

    pub fn bv_width(&self) -> Option<u64> {
        if self.id.symbol == "BitVec" && self.args.is_empty() {
            match self.id.indices.as_slice() {
                [Index::Num(w)] => Some(*w),
                _ => None,
            }
        } else {
            None
        }
    }

    /// Parameter sorts and result sort of an arrow sort.
    pub fn as_arrow(&self) -> Option<(&[Sort], &Sort)> {
        if self.id.as_simple() == Some("->") && !self.args.is_empty() {
            let (ret, params) = self.args.split_last().unwrap();
            Some((params, ret))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    Numeral(BigUint),
    /// Kept as its lexeme so printing is exact.
    Decimal(String),
    Bool(bool),
    /// Hex digits without the `#x` prefix.
    Hex(String),
    /// Binary digits without the `#b` prefix.
    Binary(String),
    /// Decoded string contents.
    Str(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AttrValue {
    Lit(Literal),
    Sym(String),
    SExpr(SExpr),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Attribute {
    /// Includes the leading colon.
    pub keyword: String,
    pub value: Option<AttrValue>,
}

impl Attribute {
    pub fn flag(keyword: &str) -> Attribute {
        Attribute { keyword: keyword.to_string(), value: None }
    }

    pub fn numeral(&self) -> Option<&BigUint> {
        match &self.value {
            Some(AttrValue::Lit(Literal::Numeral(n))) => Some(n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedVar {
    pub name: String,
    pub sort: Sort,
}

impl SortedVar {
    pub fn new(name: impl Into<String>, sort: Sort) -> SortedVar {
        SortedVar { name: name.into(), sort }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Ident(Identifier),
    Lit(Literal),
    App(Identifier, Vec<Term>),
    Annot(Box<Term>, Vec<Attribute>),
    Exists(Vec<SortedVar>, Box<Term>),
    Forall(Vec<SortedVar>, Box<Term>),
    Let(Vec<(String, Term)>, Box<Term>),
}

impl Term {
    pub fn sym(s: impl Into<String>) -> Term {
        Term::Ident(Identifier::simple(s))
    }

    pub fn app(f: impl Into<String>, args: Vec<Term>) -> Term {
        if args.is_empty() {
            Term::sym(f)
        } else {
            Term::App(Identifier::simple(f), args)
        }
    }

    pub fn int(n: u64) -> Term {
        Term::Lit(Literal::Numeral(BigUint::from(n)))
    }

    pub fn bool(b: bool) -> Term {
        Term::Lit(Literal::Bool(b))
    }

    pub fn str(s: impl Into<String>) -> Term {
        Term::Lit(Literal::Str(s.into()))
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            Term::Ident(id) => id.as_simple(),
            _ => None,
        }
    }

    /// Head identifier and arguments; a bare identifier has no arguments.
    pub fn head(&self) -> Option<(&Identifier, &[Term])> {
        match self {
            Term::Ident(id) => Some((id, &[])),
            Term::App(id, args) => Some((id, args)),
            _ => None,
        }
    }

    pub fn is_app_of(&self, name: &str) -> bool {
        matches!(self, Term::App(id, _) if id.as_simple() == Some(name))
    }

    /// Strip annotations at the top.
    pub fn base(&self) -> &Term {
        let mut t = self;
        while let Term::Annot(inner, _) = t {
            t = inner;
        }
        t
    }

    /// Remove every annotation anywhere in the term.
    pub fn strip_annotations(&self) -> Term {
        match self {
            Term::Annot(inner, _) => inner.strip_annotations(),
            Term::App(id, args) => {
                Term::App(id.clone(), args.iter().map(Term::strip_annotations).collect())
            }
            Term::Exists(vs, b) => Term::Exists(vs.clone(), Box::new(b.strip_annotations())),
            Term::Forall(vs, b) => Term::Forall(vs.clone(), Box::new(b.strip_annotations())),
            Term::Let(bs, b) => Term::Let(
                bs.iter().map(|(n, t)| (n.clone(), t.strip_annotations())).collect(),
                Box::new(b.strip_annotations()),
            ),
            other => other.clone(),
        }
    }

    pub fn is_binder_free(&self) -> bool {
        match self {
            Term::Ident(_) | Term::Lit(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_binder_free),
            Term::Annot(t, _) => t.is_binder_free(),
            Term::Exists(..) | Term::Forall(..) | Term::Let(..) => false,
        }
    }

    pub fn has_annotation(&self) -> bool {
        match self {
            Term::Ident(_) | Term::Lit(_) => false,
            Term::App(_, args) => args.iter().any(Term::has_annotation),
            Term::Annot(..) => true,
            Term::Exists(_, b) | Term::Forall(_, b) => b.has_annotation(),
            Term::Let(bs, b) => bs.iter().any(|(_, t)| t.has_annotation()) || b.has_annotation(),
        }
    }

    /// Number of AST nodes; identifiers and literals count one, applications
    /// count one plus their arguments.
    pub fn size(&self) -> usize {
        match self {
            Term::Ident(_) | Term::Lit(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::Annot(t, _) => t.size(),
            Term::Exists(_, b) | Term::Forall(_, b) => 1 + b.size(),
            Term::Let(bs, b) => 1 + bs.iter().map(|(_, t)| t.size()).sum::<usize>() + b.size(),
        }
    }

    /// Visit every identifier occurring in head or leaf position.
    pub fn for_each_ident<'a>(&'a self, f: &mut impl FnMut(&'a Identifier, usize)) {
        match self {
            Term::Ident(id) => f(id, 0),
            Term::Lit(_) => {}
            Term::App(id, args) => {
                f(id, args.len());
                for a in args {
                    a.for_each_ident(f);
                }
            }
            Term::Annot(t, _) => t.for_each_ident(f),
            Term::Exists(_, b) | Term::Forall(_, b) => b.for_each_ident(f),
            Term::Let(bs, b) => {
                for (_, t) in bs {
                    t.for_each_ident(f);
                }
                b.for_each_ident(f);
            }
        }
    }

    /// Collect the free simple symbols of the term.
    pub fn free_symbols(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Term::Ident(id) | Term::App(id, _) if id.is_simple() && !bound.contains(&id.symbol) => {
                out.insert(id.symbol.clone());
            }
            _ => {}
        }
        match self {
            Term::Ident(_) | Term::Lit(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_free(bound, out)),
            Term::Annot(t, _) => t.collect_free(bound, out),
            Term::Exists(vs, b) | Term::Forall(vs, b) => {
                let n = bound.len();
                bound.extend(vs.iter().map(|v| v.name.clone()));
                b.collect_free(bound, out);
                bound.truncate(n);
            }
            Term::Let(bs, b) => {
                for (_, t) in bs {
                    t.collect_free(bound, out);
                }
                let n = bound.len();
                bound.extend(bs.iter().map(|(x, _)| x.clone()));
                b.collect_free(bound, out);
                bound.truncate(n);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GTerm {
    Constant(Sort),
    Variable(Sort),
    Term(Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleGroup {
    pub name: String,
    pub sort: Sort,
    pub rules: Vec<GTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrammarDef {
    pub nonterminals: Vec<SortedVar>,
    pub groups: Vec<RuleGroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Grammars,
    FwdDecls,
    Recursion,
    Oracles,
    Weights,
}

impl Feature {
    pub fn keyword(self) -> &'static str {
        match self {
            Feature::Grammars => ":grammars",
            Feature::FwdDecls => ":fwd-decls",
            Feature::Recursion => ":recursion",
            Feature::Oracles => ":oracles",
            Feature::Weights => ":weights",
        }
    }

    pub fn from_keyword(k: &str) -> Option<Feature> {
        Some(match k {
            ":grammars" => Feature::Grammars,
            ":fwd-decls" => Feature::FwdDecls,
            ":recursion" => Feature::Recursion,
            ":oracles" => Feature::Oracles,
            ":weights" => Feature::Weights,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SynthFun {
    pub name: String,
    pub params: Vec<SortedVar>,
    pub ret: Sort,
    pub grammar: Option<GrammarDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunDef {
    pub name: String,
    pub params: Vec<SortedVar>,
    pub ret: Sort,
    pub body: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constructor {
    pub name: String,
    pub selectors: Vec<SortedVar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DatatypeDecl {
    pub constructors: Vec<Constructor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OracleSpec {
    pub inputs: Vec<SortedVar>,
    pub outputs: Vec<SortedVar>,
    pub term: Term,
    pub oracle: String,
    pub attrs: Vec<Attribute>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleSugar {
    Io,
    Cex,
    Membership,
    PosWitness,
    NegWitness,
    Correctness,
    CorrectnessCex,
}

impl OracleSugar {
    pub fn command(self) -> &'static str {
        match self {
            OracleSugar::Io => "oracle-constraint-io",
            OracleSugar::Cex => "oracle-constraint-cex",
            OracleSugar::Membership => "oracle-constraint-membership",
            OracleSugar::PosWitness => "oracle-constraint-poswitness",
            OracleSugar::NegWitness => "oracle-constraint-negwitness",
            OracleSugar::Correctness => "declare-correctness-oracle",
            OracleSugar::CorrectnessCex => "declare-correctness-cex-oracle",
        }
    }

    pub fn from_command(s: &str) -> Option<OracleSugar> {
        [
            OracleSugar::Io,
            OracleSugar::Cex,
            OracleSugar::Membership,
            OracleSugar::PosWitness,
            OracleSugar::NegWitness,
            OracleSugar::Correctness,
            OracleSugar::CorrectnessCex,
        ]
        .into_iter()
        .find(|k| k.command() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Command {
    Assume(Term),
    CheckSynth,
    ChcConstraint { vars: Vec<SortedVar>, body: Term, head: Term },
    Constraint(Term),
    DeclareVar(String, Sort),
    DeclareWeight(String, Vec<Attribute>),
    InvConstraint { inv: String, pre: String, trans: String, post: String },
    OptimizeSynth(Vec<Term>, Vec<Attribute>),
    SetFeature(Feature, bool),
    SynthFun(SynthFun),
    OracleAssume(OracleSpec),
    OracleConstraint(OracleSpec),
    DeclareOracleFun { name: String, args: Vec<Sort>, ret: Sort, oracle: String, attrs: Vec<Attribute> },
    Sugar { kind: OracleSugar, fun: String, oracle: String, attrs: Vec<Attribute> },
    DeclareDatatype(String, DatatypeDecl),
    DeclareDatatypes(Vec<(String, u64)>, Vec<DatatypeDecl>),
    DeclareSort(String, u64),
    DefineFun(FunDef),
    DefineFunRec(FunDef),
    DefineSort(String, Vec<String>, Sort),
    SetInfo(String, Option<AttrValue>),
    SetLogic(String),
    SetOption(String, Option<AttrValue>),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Assume(_) => "assume",
            Command::CheckSynth => "check-synth",
            Command::ChcConstraint { .. } => "chc-constraint",
            Command::Constraint(_) => "constraint",
            Command::DeclareVar(..) => "declare-var",
            Command::DeclareWeight(..) => "declare-weight",
            Command::InvConstraint { .. } => "inv-constraint",
            Command::OptimizeSynth(..) => "optimize-synth",
            Command::SetFeature(..) => "set-feature",
            Command::SynthFun(_) => "synth-fun",
            Command::OracleAssume(_) => "oracle-assume",
            Command::OracleConstraint(_) => "oracle-constraint",
            Command::DeclareOracleFun { .. } => "declare-oracle-fun",
            Command::Sugar { kind, .. } => kind.command(),
            Command::DeclareDatatype(..) => "declare-datatype",
            Command::DeclareDatatypes(..) => "declare-datatypes",
            Command::DeclareSort(..) => "declare-sort",
            Command::DefineFun(_) => "define-fun",
            Command::DefineFunRec(_) => "define-fun-rec",
            Command::DefineSort(..) => "define-sort",
            Command::SetInfo(..) => "set-info",
            Command::SetLogic(_) => "set-logic",
            Command::SetOption(..) => "set-option",
        }
    }
}
