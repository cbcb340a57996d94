use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diag::{err, Code, DResult};
use crate::reader::{encode_string, AtomKind, SExpr};
use crate::syntax::{parse_sort, parse_symbol, Literal, Sort, SortedVar, Term};
use crate::theories::Signature;

/// A closed value. Bit-vectors keep their bits as an unsigned number below
/// `2^width`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Int(BigInt),
    Real(BigRational),
    BV { width: u64, bits: BigUint },
    Str(String),
    Dt { ctor: String, args: Vec<Value> },
    Fun { params: Vec<SortedVar>, body: Term },
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Int(BigInt::from(n))
    }

    pub fn bv(width: u64, bits: impl Into<BigUint>) -> Value {
        let bits = bits.into() & mask(width);
        Value::BV { width, bits }
    }

    pub fn str(s: &str) -> Value {
        Value::Str(s.to_string())
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(n) => Some(n),
            _ => None,
        }
    }

    /// The value as a term built only from literals, `-`, `/` and
    /// constructors (or a lambda for function values).
    pub fn to_term(&self) -> Term {
        match self {
            Value::Bool(b) => Term::bool(*b),
            Value::Int(n) => {
                let lit = Term::Lit(Literal::Numeral(n.magnitude().clone()));
                if n.is_negative() {
                    Term::app("-", vec![lit])
                } else {
                    lit
                }
            }
            Value::Real(r) => {
                let neg = r.is_negative();
                let num = r.numer().magnitude().clone();
                let den = r.denom().magnitude().clone();
                if den.is_one() {
                    let lit = Term::Lit(Literal::Decimal(format!("{num}.0")));
                    if neg {
                        Term::app("-", vec![lit])
                    } else {
                        lit
                    }
                } else {
                    let n = Term::Lit(Literal::Numeral(num));
                    let n = if neg { Term::app("-", vec![n]) } else { n };
                    Term::app("/", vec![n, Term::Lit(Literal::Numeral(den))])
                }
            }
            Value::BV { width, bits } => Term::Lit(bv_literal(*width, bits)),
            Value::Str(s) => Term::str(s.clone()),
            Value::Dt { ctor, args } => Term::app(ctor.clone(), args.iter().map(Value::to_term).collect()),
            Value::Fun { .. } => {
                // Lambdas are not terms of the input language; printed via Display.
                Term::sym(self.to_string())
            }
        }
    }

    /// Sort of the value, when it can be read off the value alone.
    pub fn sort(&self, sig: &Signature) -> Option<Sort> {
        Some(match self {
            Value::Bool(_) => Sort::bool(),
            Value::Int(_) => Sort::int(),
            Value::Real(_) => Sort::real(),
            Value::BV { width, .. } => Sort::bitvec(*width),
            Value::Str(_) => Sort::string(),
            Value::Dt { ctor, .. } => Sort::simple(&sig.ctors.get(ctor)?.0),
            Value::Fun { .. } => return None,
        })
    }
}

pub fn mask(width: u64) -> BigUint {
    (BigUint::one() << width) - BigUint::one()
}

fn bv_literal(width: u64, bits: &BigUint) -> Literal {
    if width.is_multiple_of(4) {
        let hex = bits.to_str_radix(16);
        let pad = (width / 4) as usize;
        Literal::Hex(format!("{}{hex}", "0".repeat(pad.saturating_sub(hex.len()))))
    } else {
        let bin = bits.to_str_radix(2);
        let pad = width as usize;
        Literal::Binary(format!("{}{bin}", "0".repeat(pad.saturating_sub(bin.len()))))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Fun { params, body } => {
                f.write_str("(lambda (")?;
                for (i, p) in params.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ") {body})")
            }
            Value::Str(s) => f.write_str(&encode_string(s)),
            _ => write!(f, "{}", self.to_term()),
        }
    }
}

fn numeral(e: &SExpr) -> Option<BigUint> {
    match e {
        SExpr::Atom { kind: AtomKind::Numeral, text, .. } => text.parse().ok(),
        _ => None,
    }
}

fn decimal(text: &str) -> BigRational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let den = num_traits::pow(BigInt::from(10), frac.len());
    BigRational::new(digits, den)
}

/// Read a value of the expected sort from an S-expression in value syntax.
pub fn value_from_sexpr(e: &SExpr, sort: &Sort, sig: &Signature) -> DResult<Value> {
    let bad = || err(Code::Oracle, format!("`{e}` is not a value of sort {sort}"));
    if let Some((params, ret)) = sort.as_arrow() {
        let Some([head, ps, body]) = e.as_list() else { return bad() };
        if !head.is_symbol("lambda") {
            return bad();
        }
        let Some(ps) = ps.as_list() else { return bad() };
        let mut vars = Vec::new();
        for p in ps {
            let Some([n, s]) = p.as_list() else { return bad() };
            vars.push(SortedVar::new(parse_symbol(n)?, sig.resolve_sort(&parse_sort(s)?)?));
        }
        let got: Vec<Sort> = vars.iter().map(|v| v.sort.clone()).collect();
        if got != params {
            return bad();
        }
        let body = crate::syntax::parse_term(body)?;
        let mut scope: crate::theories::Scope = vars.iter().map(|v| (v.name.clone(), v.sort.clone())).collect();
        let s = crate::theories::sort_check(&body, sig, &mut scope)?;
        if s != *ret {
            return bad();
        }
        return Ok(Value::Fun { params: vars, body });
    }
    if sort.is_bool() {
        return match e {
            SExpr::Atom { kind: AtomKind::Bool, text, .. } => Ok(Value::Bool(text == "true")),
            _ => bad(),
        };
    }
    if sort.is("Int") {
        if let Some(n) = numeral(e) {
            return Ok(Value::Int(BigInt::from(n)));
        }
        if let Some([m, n]) = e.as_list() {
            if m.is_symbol("-") {
                if let Some(n) = numeral(n) {
                    if !n.is_zero() {
                        return Ok(Value::Int(-BigInt::from(n)));
                    }
                }
            }
        }
        return bad();
    }
    if sort.is("Real") {
        return real_from_sexpr(e).map(Value::Real).ok_or(()).or_else(|_| bad());
    }
    if let Some(w) = sort.bv_width() {
        return match e {
            SExpr::Atom { kind: AtomKind::Hex, text, .. } if 4 * (text.len() as u64 - 2) == w => {
                Ok(Value::bv(w, BigUint::parse_bytes(text[2..].as_bytes(), 16).unwrap()))
            }
            SExpr::Atom { kind: AtomKind::Binary, text, .. } if text.len() as u64 - 2 == w => {
                Ok(Value::bv(w, BigUint::parse_bytes(text[2..].as_bytes(), 2).unwrap()))
            }
            _ => bad(),
        };
    }
    if sort.is("String") {
        return e.string_value().map(Value::Str).ok_or(()).or_else(|_| bad());
    }
    if let Some(def) = sig.datatype_of_sort(sort) {
        let (name, args) = match e {
            SExpr::Atom { kind: AtomKind::Symbol, text, .. } => (text.as_str(), &[][..]),
            SExpr::List { items, .. } if items.len() >= 2 => match items[0].as_symbol() {
                Some(h) => (h, &items[1..]),
                None => return bad(),
            },
            _ => return bad(),
        };
        let Some(c) = def.constructors.iter().find(|c| c.name == name) else { return bad() };
        if c.selectors.len() != args.len() {
            return bad();
        }
        let vals = c
            .selectors
            .iter()
            .zip(args)
            .map(|(s, a)| value_from_sexpr(a, &s.sort, sig))
            .collect::<DResult<Vec<_>>>()?;
        return Ok(Value::Dt { ctor: c.name.clone(), args: vals });
    }
    bad()
}

fn real_from_sexpr(e: &SExpr) -> Option<BigRational> {
    match e {
        SExpr::Atom { kind: AtomKind::Decimal, text, .. } => Some(decimal(text)),
        SExpr::Atom { kind: AtomKind::Numeral, text, .. } => Some(BigRational::from(text.parse::<BigInt>().ok()?)),
        SExpr::List { items, .. } => match items.as_slice() {
            [m, x] if m.is_symbol("-") => {
                let r = real_from_sexpr(x)?;
                (!r.is_zero() && r.is_positive() && x.as_list().is_none()).then(|| -r)
            }
            [d, n, m] if d.is_symbol("/") => {
                let num = match n {
                    SExpr::List { items, .. } => match items.as_slice() {
                        [neg, k] if neg.is_symbol("-") => -BigInt::from(numeral(k)?),
                        _ => return None,
                    },
                    _ => BigInt::from(numeral(n)?),
                };
                let den = BigInt::from(numeral(m)?);
                (!den.is_zero()).then(|| BigRational::new(num, den))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Interpret a closed literal-like term as a value, without a signature
/// (datatype values are recognised through `sig` when given).
pub fn value_of_literal_term(t: &Term, sig: &Signature) -> Option<Value> {
    match t {
        Term::Lit(l) => Some(match l {
            Literal::Bool(b) => Value::Bool(*b),
            Literal::Numeral(n) => {
                if sig.theories.has_int_sort() || !sig.theories.reals {
                    Value::Int(BigInt::from(n.clone()))
                } else {
                    Value::Real(BigRational::from(BigInt::from(n.clone())))
                }
            }
            Literal::Decimal(d) => Value::Real(decimal(d)),
            Literal::Hex(h) => Value::bv(4 * h.len() as u64, BigUint::parse_bytes(h.as_bytes(), 16)?),
            Literal::Binary(b) => Value::bv(b.len() as u64, BigUint::parse_bytes(b.as_bytes(), 2)?),
            Literal::Str(s) => Value::Str(s.clone()),
        }),
        Term::App(id, args) if id.as_simple() == Some("-") && args.len() == 1 => {
            match value_of_literal_term(&args[0], sig)? {
                Value::Int(n) if n.is_positive() && matches!(args[0], Term::Lit(_)) => Some(Value::Int(-n)),
                Value::Real(r) if r.is_positive() && matches!(args[0], Term::Lit(Literal::Decimal(_))) => {
                    Some(Value::Real(-r))
                }
                _ => None,
            }
        }
        Term::App(id, args) if id.as_simple() == Some("/") && args.len() == 2 && sig.theories.reals => {
            let num = match &args[0] {
                Term::Lit(Literal::Numeral(n)) => BigInt::from(n.clone()),
                Term::App(m, inner) if m.as_simple() == Some("-") && inner.len() == 1 => match &inner[0] {
                    Term::Lit(Literal::Numeral(n)) if !n.is_zero() => -BigInt::from(n.clone()),
                    _ => return None,
                },
                _ => return None,
            };
            let Term::Lit(Literal::Numeral(d)) = &args[1] else { return None };
            if d.is_zero() {
                return None;
            }
            Some(Value::Real(BigRational::new(num, BigInt::from(d.clone()))))
        }
        Term::Ident(id) | Term::App(id, _) => {
            let name = id.as_simple()?;
            let (_, c) = sig.constructor(name)?;
            let args: &[Term] = match t {
                Term::App(_, a) => a,
                _ => &[],
            };
            if c.selectors.len() != args.len() {
                return None;
            }
            let vals = args.iter().map(|a| value_of_literal_term(a, sig)).collect::<Option<Vec<_>>>()?;
            Some(Value::Dt { ctor: name.to_string(), args: vals })
        }
        _ => None,
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Value {
        Value::Bool(b)
    }
}
