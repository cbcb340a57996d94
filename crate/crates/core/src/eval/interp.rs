//! Call-by-value evaluation of closed terms.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::value::{value_of_literal_term, Value};
use super::{bv, strings};
use crate::syntax::{Identifier, Index, Sort, SortedVar, Term};
use crate::theories::{Signature, SymKind};

pub const DEFAULT_FUEL: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// An underspecified application (division by zero, wrong selector).
    Undefined(String),
    OutOfFuel,
    Unsupported(String),
    /// A symbol whose interpretation is not known at this point
    /// (oracle function off its recorded table, unsolved function).
    Unpinned(String),
    Unbound(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Undefined(m) => write!(f, "undefined: {m}"),
            EvalError::OutOfFuel => f.write_str("out of fuel"),
            EvalError::Unsupported(m) => write!(f, "unsupported for evaluation: {m}"),
            EvalError::Unpinned(m) => write!(f, "no interpretation for `{m}`"),
            EvalError::Unbound(m) => write!(f, "unbound symbol `{m}`"),
        }
    }
}

pub type EvalResult = Result<Value, EvalError>;

#[derive(Debug, Clone)]
pub struct Def {
    pub params: Vec<SortedVar>,
    pub body: Term,
    pub recursive: bool,
}

/// Interpretation context: the signature plus definitions for the
/// functions-to-synthesize and any pinned oracle behaviour.
#[derive(Debug, Clone)]
pub struct Interp<'a> {
    pub sig: &'a Signature,
    pub defs: HashMap<String, Def>,
    pub oracle_tables: HashMap<String, HashMap<Vec<Value>, Value>>,
    /// Values of weight symbols, keyed by (weight name, function).
    pub weights: HashMap<(String, String), BigInt>,
    pub fuel: u64,
}

struct Run {
    fuel: u64,
}

type Env = Vec<(String, Value)>;

fn undefined<T>(m: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Undefined(m.into()))
}

impl<'a> Interp<'a> {
    pub fn new(sig: &'a Signature) -> Interp<'a> {
        Interp { sig, defs: HashMap::new(), oracle_tables: HashMap::new(), weights: HashMap::new(), fuel: DEFAULT_FUEL }
    }

    pub fn define(&mut self, name: &str, params: Vec<SortedVar>, body: Term, recursive: bool) {
        self.defs.insert(name.to_string(), Def { params, body, recursive });
    }

    /// Evaluate `t` with the given variable assignment.
    pub fn eval(&self, t: &Term, env: &[(String, Value)]) -> EvalResult {
        let mut run = Run { fuel: self.fuel };
        let mut env: Env = env.to_vec();
        self.ev(&mut run, t, &mut env)
    }

    /// Apply a named function to argument values.
    pub fn call(&self, name: &str, args: Vec<Value>) -> EvalResult {
        let mut run = Run { fuel: self.fuel };
        self.apply_named(&mut run, &Identifier::simple(name), args, &mut Vec::new())
    }

    fn lookup<'e>(env: &'e Env, name: &str) -> Option<&'e Value> {
        env.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn ev(&self, run: &mut Run, t: &Term, env: &mut Env) -> EvalResult {
        match t {
            Term::Lit(_) => value_of_literal_term(t, self.sig).ok_or_else(|| EvalError::Unsupported(t.to_string())),
            Term::Annot(inner, _) => self.ev(run, inner, env),
            Term::Ident(id) => self.ident(run, id, env),
            Term::Let(bs, body) => {
                let mut vals = Vec::new();
                for (x, bt) in bs {
                    vals.push((x.clone(), self.ev(run, bt, env)?));
                }
                let n = env.len();
                env.extend(vals);
                let r = self.ev(run, body, env);
                env.truncate(n);
                r
            }
            Term::Forall(vs, body) | Term::Exists(vs, body) => {
                let universal = matches!(t, Term::Forall(..));
                let domains = vs
                    .iter()
                    .map(|v| small_domain(&v.sort).ok_or_else(|| EvalError::Unsupported(format!("quantifier over {}", v.sort))))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut first_err = None;
                let mut idx = vec![0usize; vs.len()];
                loop {
                    let n = env.len();
                    for (k, v) in vs.iter().enumerate() {
                        env.push((v.name.clone(), domains[k][idx[k]].clone()));
                    }
                    let r = self.ev(run, body, env);
                    env.truncate(n);
                    match r {
                        Ok(Value::Bool(b)) if b != universal => return Ok(Value::Bool(b)),
                        Ok(_) => {}
                        Err(e) => {
                            first_err.get_or_insert(e);
                        }
                    }
                    let mut k = 0;
                    loop {
                        if k == vs.len() {
                            return match first_err {
                                Some(e) => Err(e),
                                None => Ok(Value::Bool(universal)),
                            };
                        }
                        idx[k] += 1;
                        if idx[k] < domains[k].len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                }
            }
            Term::App(id, args) => {
                if let Some(name) = id.as_simple() {
                    if Self::lookup(env, name).is_none() && !self.shadowed(name) {
                        match name {
                            "ite" if args.len() == 3 => return self.ite(run, args, env),
                            "and" | "or" => return self.and_or(run, name == "and", args, env),
                            "=>" => return self.implies(run, args, env),
                            _ => {}
                        }
                    }
                }
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.ev(run, a, env)?);
                }
                self.apply_named(run, id, vals, env)
            }
        }
    }

    fn shadowed(&self, name: &str) -> bool {
        self.defs.contains_key(name) || self.sig.symbols.contains_key(name)
    }

    fn ite(&self, run: &mut Run, args: &[Term], env: &mut Env) -> EvalResult {
        match self.ev(run, &args[0], env) {
            Ok(Value::Bool(true)) => self.ev(run, &args[1], env),
            Ok(Value::Bool(false)) => self.ev(run, &args[2], env),
            Ok(v) => Err(EvalError::Unsupported(format!("ite condition {v}"))),
            Err(e) => {
                let a = self.ev(run, &args[1], env);
                let b = self.ev(run, &args[2], env);
                match (a, b) {
                    (Ok(a), Ok(b)) if a == b => Ok(a),
                    _ => Err(e),
                }
            }
        }
    }

    fn and_or(&self, run: &mut Run, is_and: bool, args: &[Term], env: &mut Env) -> EvalResult {
        let mut first_err = None;
        for a in args {
            match self.ev(run, a, env) {
                Ok(Value::Bool(b)) if b != is_and => return Ok(Value::Bool(b)),
                Ok(_) => {}
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        match first_err {
            Some(e) => Err(e),
            None => Ok(Value::Bool(is_and)),
        }
    }

    fn implies(&self, run: &mut Run, args: &[Term], env: &mut Env) -> EvalResult {
        let (last, ante) = args.split_last().ok_or_else(|| EvalError::Unsupported("=>".into()))?;
        let mut first_err = None;
        for a in ante {
            match self.ev(run, a, env) {
                Ok(Value::Bool(false)) => return Ok(Value::Bool(true)),
                Ok(_) => {}
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        match self.ev(run, last, env) {
            Ok(Value::Bool(true)) => Ok(Value::Bool(true)),
            Ok(v) => match first_err {
                Some(e) => Err(e),
                None => Ok(v),
            },
            Err(e) => Err(first_err.unwrap_or(e)),
        }
    }

    fn fun_value(&self, name: &str) -> Option<Value> {
        if let Some(d) = self.defs.get(name) {
            if !d.params.is_empty() && !d.recursive {
                return Some(Value::Fun { params: d.params.clone(), body: self.close_body(&d.body) });
            }
        }
        None
    }

    /// Inline macros and non-recursive definitions so a function value is closed.
    fn close_body(&self, body: &Term) -> Term {
        let mut t = super::subst::expand_macros(body, self.sig);
        for _ in 0..8 {
            let mut changed = false;
            t = self.inline_defs(&t, &mut changed);
            if !changed {
                break;
            }
        }
        t
    }

    fn inline_defs(&self, t: &Term, changed: &mut bool) -> Term {
        match t {
            Term::App(id, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.inline_defs(a, changed)).collect();
                if let Some(d) = id.as_simple().and_then(|n| self.defs.get(n)) {
                    if !d.recursive && d.params.len() == args.len() {
                        *changed = true;
                        let ps: Vec<String> = d.params.iter().map(|p| p.name.clone()).collect();
                        return super::subst::beta(&ps, &d.body, &args);
                    }
                }
                Term::App(id.clone(), args)
            }
            Term::Ident(id) => match id.as_simple().and_then(|n| self.defs.get(n)) {
                Some(d) if d.params.is_empty() && !d.recursive => {
                    *changed = true;
                    d.body.clone()
                }
                _ => t.clone(),
            },
            Term::Annot(inner, a) => Term::Annot(Box::new(self.inline_defs(inner, changed)), a.clone()),
            _ => t.clone(),
        }
    }

    fn ident(&self, run: &mut Run, id: &Identifier, env: &mut Env) -> EvalResult {
        if let Some(name) = id.as_simple() {
            if let Some(v) = Self::lookup(env, name) {
                return Ok(v.clone());
            }
            if let Some(d) = self.defs.get(name) {
                if d.params.is_empty() {
                    return self.apply_def(run, name, d, Vec::new());
                }
                return self.fun_value(name).ok_or_else(|| EvalError::Unsupported(format!("recursive `{name}` as a value")));
            }
            if let Some(sym) = self.sig.symbols.get(name) {
                return match sym.kind {
                    SymKind::Macro if sym.params.is_empty() => {
                        let body = sym.body.as_ref().expect("macro body");
                        self.ev(run, body, &mut Vec::new())
                    }
                    SymKind::Macro => Ok(Value::Fun {
                        params: sym.params.clone(),
                        body: self.close_body(sym.body.as_ref().expect("macro body")),
                    }),
                    SymKind::SynthFun => Err(EvalError::Unpinned(name.to_string())),
                    SymKind::Var => Err(EvalError::Unbound(name.to_string())),
                };
            }
            if let Some((_, c)) = self.sig.constructor(name) {
                if c.selectors.is_empty() {
                    return Ok(Value::Dt { ctor: name.to_string(), args: Vec::new() });
                }
            }
            if matches!(name, "re.none" | "re.all" | "re.allchar") {
                return Err(EvalError::Unsupported(name.to_string()));
            }
            return Err(EvalError::Unbound(name.to_string()));
        }
        if let Some((w, f)) = self.sig.weight_symbol(id) {
            return match self.weights.get(&(w.to_string(), f.to_string())) {
                Some(v) => Ok(Value::Int(v.clone())),
                None => Err(EvalError::Unpinned(id.to_string())),
            };
        }
        Err(EvalError::Unbound(id.to_string()))
    }

    fn apply_def(&self, run: &mut Run, name: &str, d: &Def, args: Vec<Value>) -> EvalResult {
        if d.recursive {
            if run.fuel == 0 {
                return Err(EvalError::OutOfFuel);
            }
            run.fuel -= 1;
        }
        if d.params.len() != args.len() {
            return Err(EvalError::Unsupported(format!("arity of `{name}`")));
        }
        let mut env: Env = d.params.iter().map(|p| p.name.clone()).zip(args).collect();
        self.ev(run, &d.body, &mut env)
    }

    fn apply_fun_value(&self, run: &mut Run, f: &Value, args: Vec<Value>) -> EvalResult {
        match f {
            Value::Fun { params, body } if params.len() == args.len() => {
                let mut env: Env = params.iter().map(|p| p.name.clone()).zip(args).collect();
                self.ev(run, body, &mut env)
            }
            other => Err(EvalError::Unsupported(format!("application of {other}"))),
        }
    }

    fn apply_named(&self, run: &mut Run, id: &Identifier, args: Vec<Value>, env: &mut Env) -> EvalResult {
        if let Some(name) = id.as_simple() {
            if let Some(f) = Self::lookup(env, name) {
                let f = f.clone();
                return self.apply_fun_value(run, &f, args);
            }
            if let Some(d) = self.defs.get(name) {
                return self.apply_def(run, name, d, args);
            }
            if let Some(sym) = self.sig.symbols.get(name) {
                return match sym.kind {
                    SymKind::Macro => {
                        let d = Def { params: sym.params.clone(), body: sym.body.clone().unwrap(), recursive: false };
                        self.apply_def(run, name, &d, args)
                    }
                    SymKind::SynthFun => Err(EvalError::Unpinned(name.to_string())),
                    SymKind::Var => match self.oracle_tables.get(name).and_then(|t| t.get(&args)) {
                        Some(v) => Ok(v.clone()),
                        None => Err(EvalError::Unpinned(format!(
                            "{name} at ({})",
                            args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
                        ))),
                    },
                };
            }
            if let Some((_, c)) = self.sig.constructor(name) {
                if c.selectors.len() == args.len() {
                    return Ok(Value::Dt { ctor: name.to_string(), args });
                }
            }
            if let Some((_, ci, si)) = self.sig.sels.get(name) {
                let (dt, ci, si) = (&self.sig.sels[name].0, *ci, *si);
                let ctor = &self.sig.datatypes[dt].constructors[ci].name;
                return match args.into_iter().next() {
                    Some(Value::Dt { ctor: c, args }) if c == *ctor => Ok(args[si].clone()),
                    _ => undefined(format!("selector `{name}` applied to the wrong constructor")),
                };
            }
        }
        builtin(id, args)
    }
}

fn small_domain(s: &Sort) -> Option<Vec<Value>> {
    if s.is_bool() {
        return Some(vec![Value::Bool(false), Value::Bool(true)]);
    }
    match s.bv_width() {
        Some(w) if w <= 8 => Some((0u32..(1 << w)).map(|b| Value::bv(w, b)).collect()),
        _ => None,
    }
}

fn unsupported<T>(id: &Identifier, args: &[Value]) -> Result<T, EvalError> {
    Err(EvalError::Unsupported(format!(
        "({id} {})",
        args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
    )))
}

fn ints(args: &[Value]) -> Option<Vec<&BigInt>> {
    args.iter().map(|a| if let Value::Int(n) = a { Some(n) } else { None }).collect()
}

fn reals(args: &[Value]) -> Option<Vec<&BigRational>> {
    args.iter().map(|a| if let Value::Real(n) = a { Some(n) } else { None }).collect()
}

fn bools(args: &[Value]) -> Option<Vec<bool>> {
    args.iter().map(Value::as_bool).collect()
}

fn strs(args: &[Value]) -> Option<Vec<&str>> {
    args.iter().map(|a| if let Value::Str(s) = a { Some(s.as_str()) } else { None }).collect()
}

fn bvs(args: &[Value]) -> Option<(u64, Vec<&BigUint>)> {
    let mut w = None;
    let mut out = Vec::new();
    for a in args {
        let Value::BV { width, bits } = a else { return None };
        w.get_or_insert(*width);
        out.push(bits);
    }
    Some((w?, out))
}

/// Euclidean division: remainder in `[0, |y|)`.
pub fn euclid_div_mod(x: &BigInt, y: &BigInt) -> Option<(BigInt, BigInt)> {
    if y.is_zero() {
        return None;
    }
    let r = x.mod_floor(&y.abs());
    let q = (x - &r) / y;
    Some((q, r))
}

fn chain<T>(xs: &[T], f: impl Fn(&T, &T) -> bool) -> bool {
    xs.windows(2).all(|w| f(&w[0], &w[1]))
}

fn builtin(id: &Identifier, args: Vec<Value>) -> EvalResult {
    let name = id.symbol.as_str();
    if !id.indices.is_empty() {
        let nums = id.num_indices();
        return match (name, nums.as_deref(), args.as_slice()) {
            ("is", _, [Value::Dt { ctor, .. }]) => match id.indices.as_slice() {
                [Index::Sym(c)] => Ok(Value::Bool(c == ctor)),
                _ => unsupported(id, &args),
            },
            ("extract", Some(&[i, j]), [Value::BV { bits, .. }]) => Ok(Value::bv(i - j + 1, bv::extract(i, j, bits))),
            ("zero_extend", Some(&[i]), [Value::BV { width, bits }]) => Ok(Value::bv(width + i, bits.clone())),
            ("sign_extend", Some(&[i]), [Value::BV { width, bits }]) => {
                Ok(Value::bv(width + i, bv::sign_extend(*width, i, bits)))
            }
            ("repeat", Some(&[i]), [Value::BV { width, bits }]) => Ok(Value::bv(width * i, bv::repeat(*width, i, bits))),
            ("rotate_left", Some(&[i]), [Value::BV { width, bits }]) => {
                Ok(Value::bv(*width, bv::rotate_left(*width, i, bits)))
            }
            ("rotate_right", Some(&[i]), [Value::BV { width, bits }]) => {
                Ok(Value::bv(*width, bv::rotate_right(*width, i, bits)))
            }
            _ => unsupported(id, &args),
        };
    }
    match name {
        "not" => match args.as_slice() {
            [Value::Bool(b)] => Ok(Value::Bool(!b)),
            _ => unsupported(id, &args),
        },
        "xor" => match bools(&args) {
            Some(bs) => Ok(Value::Bool(bs.into_iter().fold(false, |a, b| a ^ b))),
            None => unsupported(id, &args),
        },
        "=" => Ok(Value::Bool(chain(&args, |a, b| a == b))),
        "distinct" => {
            let all = args.iter().enumerate().all(|(i, a)| args[i + 1..].iter().all(|b| a != b));
            Ok(Value::Bool(all))
        }
        "+" | "-" | "*" | "<" | "<=" | ">" | ">=" => {
            if let Some(xs) = ints(&args) {
                return Ok(arith(name, xs.into_iter().cloned().collect()));
            }
            if let Some(xs) = reals(&args) {
                return Ok(arith(name, xs.into_iter().cloned().collect()));
            }
            unsupported(id, &args)
        }
        "div" | "mod" => {
            let Some(xs) = ints(&args) else { return unsupported(id, &args) };
            let mut acc = xs[0].clone();
            for y in &xs[1..] {
                let Some((q, r)) = euclid_div_mod(&acc, y) else {
                    return undefined(format!("({name} {} 0)", Value::Int(acc)));
                };
                acc = if name == "div" { q } else { r };
            }
            Ok(Value::Int(acc))
        }
        "abs" => match args.as_slice() {
            [Value::Int(n)] => Ok(Value::Int(n.abs())),
            _ => unsupported(id, &args),
        },
        "/" => {
            let Some(xs) = reals(&args) else { return unsupported(id, &args) };
            let mut acc = xs[0].clone();
            for y in &xs[1..] {
                if y.is_zero() {
                    return undefined("real division by zero");
                }
                acc /= *y;
            }
            Ok(Value::Real(acc))
        }
        n if n.starts_with("bv") || n == "concat" => bv_builtin(id, args),
        n if n.starts_with("str.") => str_builtin(id, args),
        _ => unsupported(id, &args),
    }
}

trait Num: Clone + PartialOrd + std::ops::Neg<Output = Self> + Into<Value> {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Num for BigInt {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Num for BigRational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Value {
        Value::Int(n)
    }
}

impl From<BigRational> for Value {
    fn from(n: BigRational) -> Value {
        Value::Real(n)
    }
}

fn arith<N: Num>(name: &str, xs: Vec<N>) -> Value {
    match name {
        "+" => xs[1..].iter().fold(xs[0].clone(), |a, b| a.add(b)).into(),
        "*" => xs[1..].iter().fold(xs[0].clone(), |a, b| a.mul(b)).into(),
        "-" if xs.len() == 1 => (-xs[0].clone()).into(),
        "-" => xs[1..].iter().fold(xs[0].clone(), |a, b| a.sub(b)).into(),
        "<" => Value::Bool(chain(&xs, |a, b| a < b)),
        "<=" => Value::Bool(chain(&xs, |a, b| a <= b)),
        ">" => Value::Bool(chain(&xs, |a, b| a > b)),
        ">=" => Value::Bool(chain(&xs, |a, b| a >= b)),
        _ => unreachable!(),
    }
}

fn bv_builtin(id: &Identifier, args: Vec<Value>) -> EvalResult {
    let name = id.symbol.as_str();
    if name == "concat" {
        let mut it = args.iter();
        let Some(Value::BV { width, bits }) = it.next() else { return unsupported(id, &args) };
        let (mut w, mut acc) = (*width, bits.clone());
        for a in it {
            let Value::BV { width, bits } = a else { return unsupported(id, &args) };
            acc = bv::concat(*width, &acc, bits);
            w += width;
        }
        return Ok(Value::bv(w, acc));
    }
    let Some((w, xs)) = bvs(&args) else { return unsupported(id, &args) };
    let fold = |f: &dyn Fn(&BigUint, &BigUint) -> BigUint| -> BigUint {
        xs[1..].iter().fold(xs[0].clone(), |a, b| f(&a, b))
    };
    let bits = match (name, xs.len()) {
        ("bvnot", 1) => bv::not(w, xs[0]),
        ("bvneg", 1) => bv::neg(w, xs[0]),
        ("bvand", _) => fold(&|a, b| a & b),
        ("bvor", _) => fold(&|a, b| a | b),
        ("bvxor", _) => fold(&|a, b| a ^ b),
        ("bvadd", _) => fold(&|a, b| bv::add(w, a, b)),
        ("bvmul", _) => fold(&|a, b| bv::mul(w, a, b)),
        (_, 2) => {
            let (a, b) = (xs[0], xs[1]);
            let cmp = |r: bool| Ok(Value::Bool(r));
            match name {
                "bvnand" => bv::not(w, &(a & b)),
                "bvnor" => bv::not(w, &(a | b)),
                "bvxnor" => bv::not(w, &(a ^ b)),
                "bvsub" => bv::sub(w, a, b),
                "bvudiv" => bv::udiv(w, a, b),
                "bvurem" => bv::urem(a, b),
                "bvsdiv" => bv::sdiv(w, a, b),
                "bvsrem" => bv::srem(w, a, b),
                "bvsmod" => bv::smod(w, a, b),
                "bvshl" => bv::shl(w, a, b),
                "bvlshr" => bv::lshr(w, a, b),
                "bvashr" => bv::ashr(w, a, b),
                "bvcomp" => return Ok(Value::bv(1, u32::from(a == b))),
                "bvult" => return cmp(a < b),
                "bvule" => return cmp(a <= b),
                "bvugt" => return cmp(a > b),
                "bvuge" => return cmp(a >= b),
                "bvslt" => return cmp(bv::signed(w, a) < bv::signed(w, b)),
                "bvsle" => return cmp(bv::signed(w, a) <= bv::signed(w, b)),
                "bvsgt" => return cmp(bv::signed(w, a) > bv::signed(w, b)),
                "bvsge" => return cmp(bv::signed(w, a) >= bv::signed(w, b)),
                _ => return unsupported(id, &args),
            }
        }
        _ => return unsupported(id, &args),
    };
    Ok(Value::bv(w, bits))
}

fn str_builtin(id: &Identifier, args: Vec<Value>) -> EvalResult {
    use strings as s;
    let name = id.symbol.as_str();
    let st = Value::Str;
    match (name, args.as_slice()) {
        ("str.++", _) => match strs(&args) {
            Some(xs) => Ok(st(xs.concat())),
            None => unsupported(id, &args),
        },
        ("str.len", [Value::Str(a)]) => Ok(Value::Int(s::len(a))),
        ("str.<", [Value::Str(a), Value::Str(b)]) => Ok(Value::Bool(s::lt(a, b))),
        ("str.<=", [Value::Str(a), Value::Str(b)]) => Ok(Value::Bool(s::le(a, b))),
        ("str.at", [Value::Str(a), Value::Int(i)]) => Ok(st(s::at(a, i))),
        ("str.substr", [Value::Str(a), Value::Int(i), Value::Int(n)]) => Ok(st(s::substr(a, i, n))),
        ("str.prefixof", [Value::Str(a), Value::Str(b)]) => Ok(Value::Bool(b.starts_with(a.as_str()))),
        ("str.suffixof", [Value::Str(a), Value::Str(b)]) => Ok(Value::Bool(b.ends_with(a.as_str()))),
        ("str.contains", [Value::Str(a), Value::Str(b)]) => Ok(Value::Bool(s::contains(a, b))),
        ("str.indexof", [Value::Str(a), Value::Str(b), Value::Int(i)]) => Ok(Value::Int(s::indexof(a, b, i))),
        ("str.replace", [Value::Str(a), Value::Str(b), Value::Str(c)]) => Ok(st(s::replace(a, b, c))),
        ("str.replace_all", [Value::Str(a), Value::Str(b), Value::Str(c)]) => Ok(st(s::replace_all(a, b, c))),
        ("str.is_digit", [Value::Str(a)]) => Ok(Value::Bool(s::is_digit(a))),
        ("str.to_code", [Value::Str(a)]) => Ok(Value::Int(s::to_code(a))),
        ("str.from_code", [Value::Int(n)]) => match s::from_code(n) {
            Some(r) => Ok(st(r)),
            None => Err(EvalError::Unsupported(format!("surrogate code point {n}"))),
        },
        ("str.to_int", [Value::Str(a)]) => Ok(Value::Int(s::to_int(a))),
        ("str.from_int", [Value::Int(n)]) => Ok(st(s::from_int(n))),
        _ => unsupported(id, &args),
    }
}

/// Convert a small integer value to i64, for tests and diagnostics.
pub fn to_i64(v: &Value) -> Option<i64> {
    v.as_int().and_then(|n| n.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term_from_str;
    use crate::theories::Theories;

    fn sig(th: Theories) -> Signature {
        Signature::new(th)
    }

    fn ev(sig: &Signature, t: &str, env: &[(&str, Value)]) -> EvalResult {
        let env: Vec<(String, Value)> = env.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
        Interp::new(sig).eval(&term_from_str(t).unwrap(), &env)
    }

    #[test]
    fn euclidean() {
        let s = sig(Theories { ints: true, ..Default::default() });
        assert_eq!(ev(&s, "(div (- 7) 2)", &[]).unwrap(), Value::int(-4));
        assert_eq!(ev(&s, "(mod (- 7) 2)", &[]).unwrap(), Value::int(1));
        assert_eq!(ev(&s, "(div 7 (- 2))", &[]).unwrap(), Value::int(-3));
        assert!(matches!(ev(&s, "(div 1 0)", &[]), Err(EvalError::Undefined(_))));
    }

    #[test]
    fn undefined_short_circuits() {
        let s = sig(Theories { ints: true, ..Default::default() });
        assert_eq!(ev(&s, "(or true (= (div 1 0) 0))", &[]).unwrap(), Value::Bool(true));
        assert_eq!(ev(&s, "(=> false (= (div 1 0) 0))", &[]).unwrap(), Value::Bool(true));
        assert_eq!(ev(&s, "(ite (= (div 1 0) 0) 3 3)", &[]).unwrap(), Value::int(3));
        assert!(ev(&s, "(and true (= (div 1 0) 0))", &[]).is_err());
    }

    #[test]
    fn strings_example() {
        let s = sig(Theories { ints: true, strings: true, ..Default::default() });
        let env = [("fname", Value::str("Nancy")), ("lname", Value::str("FreeHafer"))];
        assert_eq!(ev(&s, "(str.++ fname (str.++ \" \" lname))", &env).unwrap(), Value::str("Nancy FreeHafer"));
    }

    #[test]
    fn bv_example() {
        let s = sig(Theories { bv: true, ..Default::default() });
        let env = [("x", Value::bv(32, 0x0782ECADu32))];
        assert_eq!(ev(&s, "(concat ((_ extract 15 0) x) #x0000)", &env).unwrap(), Value::bv(32, 0xECAD0000u32));
    }

    #[test]
    fn quantifier_over_bool() {
        let s = sig(Theories::default());
        assert_eq!(ev(&s, "(forall ((b Bool)) (or b (not b)))", &[]).unwrap(), Value::Bool(true));
        assert_eq!(ev(&s, "(exists ((b Bool) (c Bool)) (and b (not c)))", &[]).unwrap(), Value::Bool(true));
    }

    #[test]
    fn fuel_runs_out() {
        let s = sig(Theories { ints: true, ..Default::default() });
        let mut i = Interp::new(&s);
        i.fuel = 50;
        i.define("loop", vec![SortedVar::new("x", Sort::int())], term_from_str("(loop (+ x 1))").unwrap(), true);
        assert_eq!(i.eval(&term_from_str("(loop 0)").unwrap(), &[]), Err(EvalError::OutOfFuel));
    }

    #[test]
    fn annotation_transparent() {
        let s = sig(Theories { ints: true, ..Default::default() });
        assert_eq!(ev(&s, "(! (+ 1 2) :w 3)", &[]).unwrap(), Value::int(3));
    }
}
