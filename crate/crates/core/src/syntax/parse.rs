//! S-expressions to AST.

use num_bigint::BigUint;

use super::ast::*;
use crate::diag::{Code, DResult, Diagnostic};
use crate::reader::{self, AtomKind, SExpr, Span};
use crate::Options;

fn fail<T>(code: Code, e: &SExpr, msg: impl Into<String>) -> DResult<T> {
    Err(Diagnostic::error(code, e.span(), msg))
}

fn is_reserved_symbol(s: &str) -> bool {
    reader::is_reserved(s)
}

/// A symbol in binding position: must be a plain, non-reserved symbol.
pub fn parse_symbol(e: &SExpr) -> DResult<String> {
    match e {
        SExpr::Atom { kind: AtomKind::Symbol, text, .. } => {
            if is_reserved_symbol(text) {
                fail(Code::Reserved, e, format!("reserved word `{text}` used as a symbol"))
            } else {
                Ok(text.clone())
            }
        }
        SExpr::Atom { kind: AtomKind::Bool, text, .. } => {
            fail(Code::Reserved, e, format!("reserved word `{text}` used as a symbol"))
        }
        _ => fail(Code::Syntax, e, format!("expected a symbol, found `{e}`")),
    }
}

pub fn parse_numeral_u64(e: &SExpr) -> DResult<u64> {
    match e {
        SExpr::Atom { kind: AtomKind::Numeral, text, .. } => text
            .parse::<u64>()
            .or_else(|_| fail(Code::Syntax, e, format!("numeral `{text}` is too large"))),
        _ => fail(Code::Syntax, e, format!("expected a numeral, found `{e}`")),
    }
}

pub fn parse_literal(e: &SExpr) -> Option<Literal> {
    let SExpr::Atom { kind, text, .. } = e else { return None };
    Some(match kind {
        AtomKind::Numeral => Literal::Numeral(text.parse::<BigUint>().ok()?),
        AtomKind::Decimal => Literal::Decimal(text.clone()),
        AtomKind::Bool => Literal::Bool(text == "true"),
        AtomKind::Hex => Literal::Hex(text[2..].to_string()),
        AtomKind::Binary => Literal::Binary(text[2..].to_string()),
        AtomKind::String => Literal::Str(reader::decode_string(text)),
        AtomKind::Symbol | AtomKind::Keyword => return None,
    })
}

fn parse_index(e: &SExpr) -> DResult<Index> {
    match e.kind() {
        Some(AtomKind::Numeral) => Ok(Index::Num(parse_numeral_u64(e)?)),
        Some(AtomKind::Symbol) => Ok(Index::Sym(e.text().unwrap().to_string())),
        _ => fail(Code::Syntax, e, format!("invalid index `{e}`")),
    }
}

/// `(_ sym idx+)`.
fn parse_indexed(items: &[SExpr], whole: &SExpr) -> DResult<Identifier> {
    if items.len() < 3 {
        return fail(Code::Arity, whole, "indexed identifier needs a symbol and at least one index");
    }
    let SExpr::Atom { kind: AtomKind::Symbol, text, .. } = &items[1] else {
        return fail(Code::Syntax, &items[1], "expected a symbol after `_`");
    };
    let indices = items[2..].iter().map(parse_index).collect::<DResult<Vec<_>>>()?;
    Ok(Identifier::indexed(text.clone(), indices))
}

pub fn parse_identifier(e: &SExpr) -> DResult<Identifier> {
    match e {
        SExpr::Atom { kind: AtomKind::Symbol, .. } => Ok(Identifier::simple(parse_symbol(e)?)),
        SExpr::List { items, .. } if items.first().is_some_and(|h| h.is_symbol("_")) => {
            parse_indexed(items, e)
        }
        _ => fail(Code::Syntax, e, format!("expected an identifier, found `{e}`")),
    }
}

pub fn parse_sort(e: &SExpr) -> DResult<Sort> {
    match e {
        SExpr::Atom { kind: AtomKind::Symbol, text, .. } => {
            if text == "->" {
                return fail(Code::Syntax, e, "`->` needs argument sorts");
            }
            Ok(Sort { id: Identifier::simple(parse_symbol(e)?), args: Vec::new() })
        }
        SExpr::List { items, .. } => {
            let Some(head) = items.first() else {
                return fail(Code::Syntax, e, "empty sort");
            };
            if head.is_symbol("_") {
                return Ok(Sort { id: parse_indexed(items, e)?, args: Vec::new() });
            }
            if items.len() < 2 {
                return fail(Code::Arity, e, "sort application needs at least one argument");
            }
            let id = if head.is_symbol("->") {
                Identifier::simple("->")
            } else {
                parse_identifier(head)?
            };
            let args = items[1..].iter().map(parse_sort).collect::<DResult<Vec<_>>>()?;
            Ok(Sort { id, args })
        }
        _ => fail(Code::Syntax, e, format!("expected a sort, found `{e}`")),
    }
}

pub fn parse_sorted_var(e: &SExpr) -> DResult<SortedVar> {
    match e.as_list() {
        Some([name, sort]) => Ok(SortedVar { name: parse_symbol(name)?, sort: parse_sort(sort)? }),
        Some(_) => fail(Code::Arity, e, "sorted variable must be `(symbol sort)`"),
        None => fail(Code::Syntax, e, format!("expected a sorted variable, found `{e}`")),
    }
}

pub fn parse_sorted_vars(e: &SExpr) -> DResult<Vec<SortedVar>> {
    match e.as_list() {
        Some(items) => items.iter().map(parse_sorted_var).collect(),
        None => fail(Code::Syntax, e, "expected a list of sorted variables"),
    }
}

fn parse_attr_value(e: &SExpr) -> AttrValue {
    if let Some(l) = parse_literal(e) {
        return AttrValue::Lit(l);
    }
    match e {
        SExpr::Atom { kind: AtomKind::Symbol, text, .. } => AttrValue::Sym(text.clone()),
        _ => AttrValue::SExpr(e.clone()),
    }
}

/// A run of `:keyword [value]` attributes.
pub fn parse_attributes(items: &[SExpr]) -> DResult<Vec<Attribute>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let Some(kw) = items[i].as_keyword() else {
            return fail(Code::Syntax, &items[i], format!("expected a keyword, found `{}`", items[i]));
        };
        let value = match items.get(i + 1) {
            Some(v) if v.as_keyword().is_none() => {
                i += 1;
                Some(parse_attr_value(v))
            }
            _ => None,
        };
        out.push(Attribute { keyword: kw.to_string(), value });
        i += 1;
    }
    Ok(out)
}

pub fn parse_term(e: &SExpr) -> DResult<Term> {
    match e {
        SExpr::Atom { kind: AtomKind::Symbol, .. } => Ok(Term::Ident(Identifier::simple(parse_symbol(e)?))),
        SExpr::Atom { kind: AtomKind::Keyword, text, .. } => {
            fail(Code::Syntax, e, format!("keyword `{text}` is not a term"))
        }
        SExpr::Atom { .. } => Ok(Term::Lit(parse_literal(e).expect("literal atom"))),
        SExpr::List { items, .. } => {
            let Some(head) = items.first() else {
                return fail(Code::Syntax, e, "empty list is not a term");
            };
            match head.as_symbol() {
                Some("_") => return Ok(Term::Ident(parse_indexed(items, e)?)),
                Some("!") => {
                    if items.len() < 3 {
                        return fail(Code::Arity, e, "annotation needs a term and at least one attribute");
                    }
                    let body = parse_term(&items[1])?;
                    let attrs = parse_attributes(&items[2..])?;
                    return Ok(Term::Annot(Box::new(body), attrs));
                }
                Some(q @ ("forall" | "exists")) => {
                    if items.len() != 3 {
                        return fail(Code::Arity, e, format!("`{q}` takes a binder list and a body"));
                    }
                    let vars = parse_sorted_vars(&items[1])?;
                    if vars.is_empty() {
                        return fail(Code::Syntax, &items[1], format!("`{q}` needs at least one binder"));
                    }
                    let body = Box::new(parse_term(&items[2])?);
                    return Ok(if q == "forall" { Term::Forall(vars, body) } else { Term::Exists(vars, body) });
                }
                Some("let") => {
                    if items.len() != 3 {
                        return fail(Code::Arity, e, "`let` takes a binding list and a body");
                    }
                    let Some(bs) = items[1].as_list() else {
                        return fail(Code::Syntax, &items[1], "expected a binding list");
                    };
                    if bs.is_empty() {
                        return fail(Code::Syntax, &items[1], "`let` needs at least one binding");
                    }
                    let mut bindings = Vec::new();
                    for b in bs {
                        match b.as_list() {
                            Some([x, t]) => bindings.push((parse_symbol(x)?, parse_term(t)?)),
                            _ => return fail(Code::Syntax, b, "binding must be `(symbol term)`"),
                        }
                    }
                    return Ok(Term::Let(bindings, Box::new(parse_term(&items[2])?)));
                }
                Some(kw @ ("as" | "match" | "lambda")) => {
                    return fail(Code::Syntax, e, format!("`{kw}` terms are not supported"));
                }
                _ => {}
            }
            let id = parse_identifier(head)?;
            if items.len() < 2 {
                return fail(Code::Syntax, e, format!("application of `{head}` needs arguments"));
            }
            let args = items[1..].iter().map(parse_term).collect::<DResult<Vec<_>>>()?;
            Ok(Term::App(id, args))
        }
    }
}

pub fn parse_gterm(e: &SExpr) -> DResult<GTerm> {
    if let Some([head, sort]) = e.as_list() {
        if head.is_symbol("Constant") {
            return Ok(GTerm::Constant(parse_sort(sort)?));
        }
        if head.is_symbol("Variable") {
            return Ok(GTerm::Variable(parse_sort(sort)?));
        }
    }
    if matches!(e.head_symbol(), Some("Constant" | "Variable")) {
        return fail(Code::Arity, e, format!("`{}` takes exactly one sort", e.head_symbol().unwrap()));
    }
    if e.head_symbol() == Some("!") {
        if let Some(inner) = e.as_list().and_then(|i| i.get(1)) {
            if matches!(inner.head_symbol(), Some("Constant" | "Variable")) {
                return fail(Code::Syntax, e, "`Constant`/`Variable` rules cannot be annotated");
            }
        }
    }
    let t = parse_term(e)?;
    if !t.is_binder_free() {
        return fail(Code::Syntax, e, "grammar rules must be binder-free (no let, forall or exists)");
    }
    Ok(GTerm::Term(t))
}

pub fn parse_grammar(pre: &SExpr, listing: &SExpr) -> DResult<GrammarDef> {
    let nonterminals = parse_sorted_vars(pre)?;
    let Some(groups_sx) = listing.as_list() else {
        return fail(Code::Syntax, listing, "expected a grouped rule listing");
    };
    let mut groups = Vec::new();
    for g in groups_sx {
        let Some(items) = g.as_list() else {
            return fail(Code::Syntax, g, "expected a rule group `(symbol sort (gterm+))`");
        };
        if items.len() != 3 {
            return fail(Code::Arity, g, "rule group must be `(symbol sort (gterm+))`");
        }
        let name = parse_symbol(&items[0])?;
        let sort = parse_sort(&items[1])?;
        let Some(rules_sx) = items[2].as_list() else {
            return fail(Code::Syntax, &items[2], "expected a list of grammar terms");
        };
        if rules_sx.is_empty() {
            return fail(Code::Syntax, &items[2], format!("rule group for `{name}` is empty"));
        }
        let rules = rules_sx.iter().map(parse_gterm).collect::<DResult<Vec<_>>>()?;
        groups.push(RuleGroup { name, sort, rules });
    }
    Ok(GrammarDef { nonterminals, groups })
}

fn parse_dt_decl(e: &SExpr) -> DResult<DatatypeDecl> {
    let Some(items) = e.as_list() else {
        return fail(Code::Syntax, e, "expected a datatype declaration");
    };
    if items.is_empty() {
        return fail(Code::Datatype, e, "datatype needs at least one constructor");
    }
    let mut constructors = Vec::new();
    for c in items {
        let Some(parts) = c.as_list() else {
            return fail(Code::Syntax, c, "constructor declaration must be a list");
        };
        let Some(name) = parts.first() else {
            return fail(Code::Syntax, c, "empty constructor declaration");
        };
        let name = parse_symbol(name)?;
        let selectors = parts[1..].iter().map(parse_sorted_var).collect::<DResult<Vec<_>>>()?;
        constructors.push(Constructor { name, selectors });
    }
    Ok(DatatypeDecl { constructors })
}

fn arity(e: &SExpr, items: &[SExpr], n: usize) -> DResult<()> {
    if items.len() != n + 1 {
        let head = items[0].text().unwrap_or("?");
        return fail(
            Code::Arity,
            e,
            format!("`{head}` expects {n} argument{}, found {}", if n == 1 { "" } else { "s" }, items.len() - 1),
        );
    }
    Ok(())
}

fn arity_at_least(e: &SExpr, items: &[SExpr], n: usize) -> DResult<()> {
    if items.len() < n + 1 {
        let head = items[0].text().unwrap_or("?");
        return fail(Code::Arity, e, format!("`{head}` expects at least {n} arguments, found {}", items.len() - 1));
    }
    Ok(())
}

fn parse_fun_def(items: &[SExpr]) -> DResult<FunDef> {
    Ok(FunDef {
        name: parse_symbol(&items[1])?,
        params: parse_sorted_vars(&items[2])?,
        ret: parse_sort(&items[3])?,
        body: parse_term(&items[4])?,
    })
}

fn parse_oracle_spec(e: &SExpr, items: &[SExpr], opts: &Options) -> DResult<OracleSpec> {
    let head = items[0].text().unwrap_or("?").to_string();
    // Leading run of lists that parse as sorted-variable lists.
    let mut lists = Vec::new();
    let mut i = 1;
    while i < items.len() && lists.len() < 3 {
        match items[i].as_list() {
            Some(l) if l.iter().all(|x| x.as_list().is_some_and(|p| p.len() == 2 && p[0].as_symbol().is_some())) => {
                lists.push(&items[i]);
                i += 1;
            }
            _ => break,
        }
    }
    let rest = &items[i..];
    let (inputs, outputs) = match lists.len() {
        2 => (parse_sorted_vars(lists[0])?, parse_sorted_vars(lists[1])?),
        3 if opts.permissive => {
            let parsed = lists.iter().map(|l| parse_sorted_vars(l)).collect::<DResult<Vec<_>>>()?;
            if parsed.iter().filter(|l| !l.is_empty()).count() != 2 {
                return fail(Code::Arity, e, format!("`{head}` with three variable lists needs exactly two nonempty lists"));
            }
            let first = parsed.iter().position(|l| !l.is_empty()).unwrap();
            let mut outputs = Vec::new();
            for (k, l) in parsed.iter().enumerate() {
                if k != first {
                    outputs.extend(l.iter().cloned());
                }
            }
            (parsed[first].clone(), outputs)
        }
        n => {
            return fail(Code::Arity, e, format!("`{head}` takes exactly two sorted-variable lists, found {n}"));
        }
    };
    if rest.len() < 2 {
        return fail(Code::Arity, e, format!("`{head}` needs a term and an oracle name"));
    }
    // Name and term may be swapped only in permissive mode.
    let attr_start = rest.iter().position(|x| x.as_keyword().is_some()).unwrap_or(rest.len());
    if attr_start != 2 {
        return fail(Code::Arity, e, format!("`{head}` needs exactly a term and an oracle name before attributes"));
    }
    let (term_sx, name_sx) = if rest[1].as_symbol().is_some() || !opts.permissive {
        (&rest[0], &rest[1])
    } else {
        (&rest[1], &rest[0])
    };
    Ok(OracleSpec {
        inputs,
        outputs,
        term: parse_term(term_sx)?,
        oracle: parse_symbol(name_sx)?,
        attrs: parse_attributes(&rest[2..])?,
    })
}

pub fn parse_command(e: &SExpr, opts: &Options) -> DResult<Command> {
    let Some(items) = e.as_list() else {
        return fail(Code::Syntax, e, format!("expected a command, found `{e}`"));
    };
    let Some(head) = items.first().and_then(SExpr::as_symbol) else {
        return fail(Code::Syntax, e, "command must start with a symbol");
    };
    let cmd = match head {
        "assume" => {
            arity(e, items, 1)?;
            Command::Assume(parse_term(&items[1])?)
        }
        "constraint" => {
            arity(e, items, 1)?;
            Command::Constraint(parse_term(&items[1])?)
        }
        "check-synth" => {
            arity(e, items, 0)?;
            Command::CheckSynth
        }
        "chc-constraint" => {
            arity(e, items, 3)?;
            Command::ChcConstraint {
                vars: parse_sorted_vars(&items[1])?,
                body: parse_term(&items[2])?,
                head: parse_term(&items[3])?,
            }
        }
        "declare-var" => {
            arity(e, items, 2)?;
            Command::DeclareVar(parse_symbol(&items[1])?, parse_sort(&items[2])?)
        }
        "declare-weight" => {
            arity_at_least(e, items, 1)?;
            Command::DeclareWeight(parse_symbol(&items[1])?, parse_attributes(&items[2..])?)
        }
        "inv-constraint" => {
            arity(e, items, 4)?;
            Command::InvConstraint {
                inv: parse_symbol(&items[1])?,
                pre: parse_symbol(&items[2])?,
                trans: parse_symbol(&items[3])?,
                post: parse_symbol(&items[4])?,
            }
        }
        "optimize-synth" => {
            arity_at_least(e, items, 1)?;
            let Some(ts) = items[1].as_list() else {
                return fail(Code::Syntax, &items[1], "expected a list of objective terms");
            };
            let terms = ts.iter().map(parse_term).collect::<DResult<Vec<_>>>()?;
            Command::OptimizeSynth(terms, parse_attributes(&items[2..])?)
        }
        "set-feature" => {
            arity(e, items, 2)?;
            let Some(kw) = items[1].as_keyword() else {
                return fail(Code::Syntax, &items[1], "expected a feature keyword");
            };
            let Some(f) = Feature::from_keyword(kw) else {
                return fail(Code::Syntax, &items[1], format!("unknown feature `{kw}`"));
            };
            let value = match parse_literal(&items[2]) {
                Some(Literal::Bool(b)) => b,
                _ => return fail(Code::Syntax, &items[2], "feature value must be `true` or `false`"),
            };
            Command::SetFeature(f, value)
        }
        "synth-fun" => {
            if items.len() != 4 && items.len() != 6 {
                let msg = if items.len() == 5 {
                    "`synth-fun` grammar needs both a nonterminal predeclaration and a grouped rule listing".to_string()
                } else {
                    format!("`synth-fun` expects 3 or 5 arguments, found {}", items.len() - 1)
                };
                return fail(Code::Arity, e, msg);
            }
            let grammar = if items.len() == 6 { Some(parse_grammar(&items[4], &items[5])?) } else { None };
            Command::SynthFun(SynthFun {
                name: parse_symbol(&items[1])?,
                params: parse_sorted_vars(&items[2])?,
                ret: parse_sort(&items[3])?,
                grammar,
            })
        }
        "oracle-assume" => Command::OracleAssume(parse_oracle_spec(e, items, opts)?),
        "oracle-constraint" => Command::OracleConstraint(parse_oracle_spec(e, items, opts)?),
        "declare-oracle-fun" => {
            arity_at_least(e, items, 4)?;
            let Some(arg_sx) = items[2].as_list() else {
                return fail(Code::Syntax, &items[2], "expected a list of argument sorts");
            };
            Command::DeclareOracleFun {
                name: parse_symbol(&items[1])?,
                args: arg_sx.iter().map(parse_sort).collect::<DResult<Vec<_>>>()?,
                ret: parse_sort(&items[3])?,
                oracle: parse_symbol(&items[4])?,
                attrs: parse_attributes(&items[5..])?,
            }
        }
        "declare-datatype" => {
            arity(e, items, 2)?;
            Command::DeclareDatatype(parse_symbol(&items[1])?, parse_dt_decl(&items[2])?)
        }
        "declare-datatypes" => {
            arity(e, items, 2)?;
            let (Some(sds), Some(dts)) = (items[1].as_list(), items[2].as_list()) else {
                return fail(Code::Syntax, e, "`declare-datatypes` takes two lists");
            };
            let mut decls = Vec::new();
            for sd in sds {
                match sd.as_list() {
                    Some([n, a]) => decls.push((parse_symbol(n)?, parse_numeral_u64(a)?)),
                    _ => return fail(Code::Syntax, sd, "sort declaration must be `(symbol numeral)`"),
                }
            }
            if decls.is_empty() || decls.len() != dts.len() {
                return fail(Code::Arity, e, "`declare-datatypes` needs matching nonempty sort and datatype lists");
            }
            let bodies = dts.iter().map(parse_dt_decl).collect::<DResult<Vec<_>>>()?;
            Command::DeclareDatatypes(decls, bodies)
        }
        "declare-sort" => {
            arity(e, items, 2)?;
            Command::DeclareSort(parse_symbol(&items[1])?, parse_numeral_u64(&items[2])?)
        }
        "define-fun" => {
            arity(e, items, 4)?;
            Command::DefineFun(parse_fun_def(items)?)
        }
        "define-fun-rec" => {
            arity(e, items, 4)?;
            Command::DefineFunRec(parse_fun_def(items)?)
        }
        "define-sort" => match items.len() {
            3 => Command::DefineSort(parse_symbol(&items[1])?, Vec::new(), parse_sort(&items[2])?),
            4 => {
                let Some(ps) = items[2].as_list() else {
                    return fail(Code::Syntax, &items[2], "expected a list of sort parameters");
                };
                let params = ps.iter().map(parse_symbol).collect::<DResult<Vec<_>>>()?;
                Command::DefineSort(parse_symbol(&items[1])?, params, parse_sort(&items[3])?)
            }
            _ => return fail(Code::Arity, e, "`define-sort` expects 2 or 3 arguments"),
        },
        "set-info" | "set-option" => {
            if items.len() != 2 && items.len() != 3 {
                return fail(Code::Arity, e, format!("`{head}` takes a keyword and a value"));
            }
            let Some(kw) = items[1].as_keyword() else {
                return fail(Code::Syntax, &items[1], "expected a keyword");
            };
            let value = items.get(2).map(parse_attr_value);
            if head == "set-info" {
                Command::SetInfo(kw.to_string(), value)
            } else {
                Command::SetOption(kw.to_string(), value)
            }
        }
        "set-logic" => {
            arity(e, items, 1)?;
            let Some(s) = items[1].as_symbol() else {
                return fail(Code::Syntax, &items[1], "expected a logic name");
            };
            Command::SetLogic(s.to_string())
        }
        other => {
            if let Some(kind) = OracleSugar::from_command(other) {
                arity_at_least(e, items, 2)?;
                return Ok(Command::Sugar {
                    kind,
                    fun: parse_symbol(&items[1])?,
                    oracle: parse_symbol(&items[2])?,
                    attrs: parse_attributes(&items[3..])?,
                });
            }
            return fail(Code::UnknownCommand, &items[0], format!("unknown command `{other}`"));
        }
    };
    Ok(cmd)
}

#[derive(Debug, Clone)]
pub struct Located<T> {
    pub node: T,
    pub span: Span,
}

/// Read and parse a whole script. Read errors are fatal; every command that
/// fails to parse contributes one diagnostic.
pub fn parse_script(text: &str, opts: &Options) -> Result<Vec<Located<Command>>, Vec<Diagnostic>> {
    let ropts = reader::ReaderOptions { allow_newlines_in_strings: !opts.reject_string_newlines };
    let sexprs = reader::read_all_with(text, ropts).map_err(|e| vec![Diagnostic::from(e)])?;
    let mut cmds = Vec::new();
    let mut diags = Vec::new();
    for sx in &sexprs {
        match parse_command(sx, opts) {
            Ok(c) => cmds.push(Located { node: c, span: sx.span() }),
            Err(d) => diags.push(d),
        }
    }
    if diags.is_empty() {
        Ok(cmds)
    } else {
        Err(diags)
    }
}

/// Parse a single term from text.
pub fn term_from_str(text: &str) -> DResult<Term> {
    parse_term(&reader::read_one(text)?)
}

pub fn sort_from_str(text: &str) -> DResult<Sort> {
    parse_sort(&reader::read_one(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmd(s: &str) -> DResult<Command> {
        parse_command(&reader::read_one(s).unwrap(), &Options::default())
    }

    #[test]
    fn declare_var_and_set_info() {
        assert_eq!(cmd("(declare-var x Int)").unwrap(), Command::DeclareVar("x".into(), Sort::int()));
        assert_eq!(
            cmd("(set-info :sygus-version 2.1)").unwrap(),
            Command::SetInfo(":sygus-version".into(), Some(AttrValue::Lit(Literal::Decimal("2.1".into()))))
        );
    }

    #[test]
    fn arity_errors() {
        assert_eq!(cmd("(constraint)").unwrap_err().code, Code::Arity);
        assert_eq!(cmd("(check-synth 1)").unwrap_err().code, Code::Arity);
        assert_eq!(cmd("(frobnicate)").unwrap_err().code, Code::UnknownCommand);
    }

    #[test]
    fn reserved_in_symbol_position() {
        assert_eq!(cmd("(declare-var constraint Int)").unwrap_err().code, Code::Reserved);
        assert_eq!(cmd("(declare-var true Int)").unwrap_err().code, Code::Reserved);
    }

    #[test]
    fn indexed_sorts_and_terms() {
        assert_eq!(sort_from_str("(_ BitVec 32)").unwrap().bv_width(), Some(32));
        let t = term_from_str("((_ extract 15 0) x)").unwrap();
        let Term::App(id, args) = t else { panic!() };
        assert_eq!(id.indices, vec![Index::Num(15), Index::Num(0)]);
        assert_eq!(args.len(), 1);
    }

    #[test]
    fn annotation_and_let() {
        let t = term_from_str("(! (* x x) :numX 2)").unwrap();
        let Term::Annot(body, attrs) = t else { panic!() };
        assert!(body.is_app_of("*"));
        assert_eq!(attrs[0].keyword, ":numX");
        assert_eq!(attrs[0].numeral().unwrap(), &BigUint::from(2u32));
        let l = term_from_str("(let ((x t)) x)").unwrap();
        assert!(matches!(l, Term::Let(ref bs, _) if bs.len() == 1));
    }

    #[test]
    fn term_errors() {
        assert!(term_from_str("()").is_err());
        assert!(term_from_str("(let () x)").is_err());
        assert!(term_from_str("(! x)").is_err());
        assert!(term_from_str("(forall () x)").is_err());
        assert!(term_from_str("(as x Int)").is_err());
    }

    #[test]
    fn let_rejected_in_grammar() {
        let e = cmd("(synth-fun f () Int ((I Int)) ((I Int ((let ((y 1)) y)))))").unwrap_err();
        assert_eq!(e.code, Code::Syntax);
    }

    #[test]
    fn oracle_constraint_lists() {
        let three = "(oracle-constraint () ((x Int)) ((z Bool)) bin (=> (f x) z))";
        assert_eq!(cmd(three).unwrap_err().code, Code::Arity);
        let opts = Options { permissive: true, ..Options::default() };
        let c = parse_command(&reader::read_one(three).unwrap(), &opts).unwrap();
        let Command::OracleConstraint(spec) = c else { panic!() };
        assert_eq!(spec.inputs.len(), 1);
        assert_eq!(spec.outputs.len(), 1);
        assert_eq!(spec.oracle, "bin");
        let two = "(oracle-constraint ((x Int)) ((y Int)) (= (f x) y) bin :file)";
        let Command::OracleConstraint(spec) = cmd(two).unwrap() else { panic!() };
        assert_eq!(spec.attrs[0].keyword, ":file");
    }

    #[test]
    fn define_sort_both_forms() {
        assert!(matches!(cmd("(define-sort B (_ BitVec 8))").unwrap(), Command::DefineSort(_, ref p, _) if p.is_empty()));
        assert!(matches!(cmd("(define-sort A (T) (Array T T))").unwrap(), Command::DefineSort(_, ref p, _) if p.len() == 1));
    }
}
