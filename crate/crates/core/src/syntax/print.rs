//! AST to concrete syntax.

use std::fmt::{self, Display, Formatter, Write};

use super::ast::*;
use crate::reader::encode_string;

fn join<T: Display>(f: &mut Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl Display for Index {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Index::Num(n) => write!(f, "{n}"),
            Index::Sym(s) => f.write_str(s),
        }
    }
}

impl Display for Identifier {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            f.write_str(&self.symbol)
        } else {
            write!(f, "(_ {} ", self.symbol)?;
            join(f, &self.indices)?;
            f.write_char(')')
        }
    }
}

impl Display for Sort {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.id)
        } else {
            write!(f, "({} ", self.id)?;
            join(f, &self.args)?;
            f.write_char(')')
        }
    }
}

impl Display for Literal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Numeral(n) => write!(f, "{n}"),
            Literal::Decimal(d) => f.write_str(d),
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Hex(h) => write!(f, "#x{h}"),
            Literal::Binary(b) => write!(f, "#b{b}"),
            Literal::Str(s) => f.write_str(&encode_string(s)),
        }
    }
}

impl Display for AttrValue {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            AttrValue::Lit(l) => write!(f, "{l}"),
            AttrValue::Sym(s) => f.write_str(s),
            AttrValue::SExpr(e) => write!(f, "{e}"),
        }
    }
}

impl Display for Attribute {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(&self.keyword)?;
        if let Some(v) = &self.value {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl Display for SortedVar {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.name, self.sort)
    }
}

struct Paren<'a, T>(&'a [T]);

impl<T: Display> Display for Paren<'_, T> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        join(f, self.0)?;
        f.write_char(')')
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Ident(id) => write!(f, "{id}"),
            Term::Lit(l) => write!(f, "{l}"),
            Term::App(id, args) => {
                write!(f, "({id} ")?;
                join(f, args)?;
                f.write_char(')')
            }
            Term::Annot(t, attrs) => {
                write!(f, "(! {t} ")?;
                join(f, attrs)?;
                f.write_char(')')
            }
            Term::Exists(vs, b) => write!(f, "(exists {} {b})", Paren(vs)),
            Term::Forall(vs, b) => write!(f, "(forall {} {b})", Paren(vs)),
            Term::Let(bs, b) => {
                f.write_str("(let (")?;
                for (i, (x, t)) in bs.iter().enumerate() {
                    if i > 0 {
                        f.write_char(' ')?;
                    }
                    write!(f, "({x} {t})")?;
                }
                write!(f, ") {b})")
            }
        }
    }
}

impl Display for GTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            GTerm::Constant(s) => write!(f, "(Constant {s})"),
            GTerm::Variable(s) => write!(f, "(Variable {s})"),
            GTerm::Term(t) => write!(f, "{t}"),
        }
    }
}

impl Display for RuleGroup {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.name, self.sort, Paren(&self.rules))
    }
}

impl Display for GrammarDef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "  {}\n  (", Paren(&self.nonterminals))?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str("\n   ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_char(')')
    }
}

impl Display for Feature {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

fn fun_def(f: &mut Formatter<'_>, head: &str, d: &FunDef) -> fmt::Result {
    write!(f, "({head} {} {} {} {})", d.name, Paren(&d.params), d.ret, d.body)
}

fn attrs_tail(f: &mut Formatter<'_>, attrs: &[Attribute]) -> fmt::Result {
    for a in attrs {
        write!(f, " {a}")?;
    }
    Ok(())
}

fn oracle_spec(f: &mut Formatter<'_>, head: &str, s: &OracleSpec) -> fmt::Result {
    write!(f, "({head} {} {} {} {}", Paren(&s.inputs), Paren(&s.outputs), s.term, s.oracle)?;
    attrs_tail(f, &s.attrs)?;
    f.write_char(')')
}

impl Display for DatatypeDecl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, c) in self.constructors.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(f, "({}", c.name)?;
            for s in &c.selectors {
                write!(f, " {s}")?;
            }
            f.write_char(')')?;
        }
        f.write_char(')')
    }
}

impl Display for Command {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Command::Assume(t) => write!(f, "(assume {t})"),
            Command::CheckSynth => f.write_str("(check-synth)"),
            Command::ChcConstraint { vars, body, head } => {
                write!(f, "(chc-constraint {} {body} {head})", Paren(vars))
            }
            Command::Constraint(t) => write!(f, "(constraint {t})"),
            Command::DeclareVar(x, s) => write!(f, "(declare-var {x} {s})"),
            Command::DeclareWeight(w, attrs) => {
                write!(f, "(declare-weight {w}")?;
                attrs_tail(f, attrs)?;
                f.write_char(')')
            }
            Command::InvConstraint { inv, pre, trans, post } => {
                write!(f, "(inv-constraint {inv} {pre} {trans} {post})")
            }
            Command::OptimizeSynth(ts, attrs) => {
                write!(f, "(optimize-synth {}", Paren(ts))?;
                attrs_tail(f, attrs)?;
                f.write_char(')')
            }
            Command::SetFeature(feat, b) => write!(f, "(set-feature {feat} {b})"),
            Command::SynthFun(sf) => {
                write!(f, "(synth-fun {} {} {}", sf.name, Paren(&sf.params), sf.ret)?;
                if let Some(g) = &sf.grammar {
                    write!(f, "\n{g}")?;
                }
                f.write_char(')')
            }
            Command::OracleAssume(s) => oracle_spec(f, "oracle-assume", s),
            Command::OracleConstraint(s) => oracle_spec(f, "oracle-constraint", s),
            Command::DeclareOracleFun { name, args, ret, oracle, attrs } => {
                write!(f, "(declare-oracle-fun {name} {} {ret} {oracle}", Paren(args))?;
                attrs_tail(f, attrs)?;
                f.write_char(')')
            }
            Command::Sugar { kind, fun, oracle, attrs } => {
                write!(f, "({} {fun} {oracle}", kind.command())?;
                attrs_tail(f, attrs)?;
                f.write_char(')')
            }
            Command::DeclareDatatype(name, d) => write!(f, "(declare-datatype {name} {d})"),
            Command::DeclareDatatypes(decls, ds) => {
                f.write_str("(declare-datatypes (")?;
                for (i, (n, a)) in decls.iter().enumerate() {
                    if i > 0 {
                        f.write_char(' ')?;
                    }
                    write!(f, "({n} {a})")?;
                }
                write!(f, ") {})", Paren(ds))
            }
            Command::DeclareSort(s, n) => write!(f, "(declare-sort {s} {n})"),
            Command::DefineFun(d) => fun_def(f, "define-fun", d),
            Command::DefineFunRec(d) => fun_def(f, "define-fun-rec", d),
            Command::DefineSort(s, ps, sort) => {
                if ps.is_empty() {
                    write!(f, "(define-sort {s} {sort})")
                } else {
                    write!(f, "(define-sort {s} {} {sort})", Paren(ps))
                }
            }
            Command::SetInfo(k, v) | Command::SetOption(k, v) => {
                let head = if matches!(self, Command::SetInfo(..)) { "set-info" } else { "set-option" };
                match v {
                    Some(v) => write!(f, "({head} {k} {v})"),
                    None => write!(f, "({head} {k})"),
                }
            }
            Command::SetLogic(l) => write!(f, "(set-logic {l})"),
        }
    }
}

/// Print a list of commands, one per line.
pub fn print_script(cmds: &[Command]) -> String {
    let mut out = String::new();
    for c in cmds {
        let _ = writeln!(out, "{c}");
    }
    out
}
