use super::{Signature, Theories};
use crate::syntax::{Identifier, Index, Sort};

const CORE: &[&str] = &["not", "and", "or", "=>", "xor", "=", "ite"];
const INTS: &[&str] = &["+", "-", "*", "div", "mod", "abs", "<", "<=", ">", ">="];
const REALS: &[&str] = &["+", "-", "*", "/", "<", "<=", ">", ">="];
const BV: &[&str] = &[
    "bvnot", "bvand", "bvor", "bvneg", "bvadd", "bvmul", "bvudiv", "bvurem", "bvshl", "bvlshr", "bvult", "concat",
    "extract", "bvnand", "bvnor", "bvxor", "bvxnor", "bvcomp", "bvsub", "bvsdiv", "bvsrem", "bvsmod", "bvashr",
    "repeat", "zero_extend", "sign_extend", "rotate_left", "rotate_right", "bvule", "bvugt", "bvuge", "bvslt",
    "bvsle", "bvsgt", "bvsge",
];
const STRINGS: &[&str] = &[
    "str.++", "str.len", "str.<", "str.<=", "str.at", "str.substr", "str.prefixof", "str.suffixof", "str.contains",
    "str.indexof", "str.replace", "str.replace_all", "str.replace_re", "str.replace_re_all", "str.is_digit",
    "str.to_code", "str.from_code", "str.to_int", "str.from_int", "str.to_re", "str.in_re", "re.none", "re.all",
    "re.allchar", "re.++", "re.union", "re.inter", "re.*", "re.+", "re.opt", "re.range", "re.comp", "re.diff",
    "re.loop", "re.^",
];
const ARRAYS: &[&str] = &["select", "store"];

/// Every builtin function name contributed by the given theories.
pub fn builtin_names(th: &Theories, strict: bool) -> Vec<&'static str> {
    let mut out: Vec<&'static str> = CORE.to_vec();
    if !strict {
        out.push("distinct");
    }
    let mut add = |names: &[&'static str]| {
        for n in names {
            if !out.contains(n) {
                out.push(n);
            }
        }
    };
    if th.ints {
        add(INTS);
    }
    if th.reals {
        add(REALS);
    }
    if th.bv {
        add(BV);
    }
    if th.strings {
        add(STRINGS);
    }
    if th.arrays {
        add(ARRAYS);
    }
    out
}

pub fn is_builtin_name(name: &str, th: &Theories) -> bool {
    CORE.contains(&name)
        || name == "distinct"
        || (th.ints && INTS.contains(&name))
        || (th.reals && REALS.contains(&name))
        || (th.bv && BV.contains(&name))
        || (th.strings && STRINGS.contains(&name))
        || (th.arrays && ARRAYS.contains(&name))
}

pub fn is_builtin_sort_name(name: &str, th: &Theories) -> bool {
    match name {
        "Bool" => true,
        "Int" => th.has_int_sort(),
        "Real" => th.reals,
        "BitVec" => th.bv,
        "String" | "RegLan" => th.strings,
        "Array" => th.arrays,
        _ => false,
    }
}

fn all_same(args: &[Sort]) -> Option<&Sort> {
    let first = args.first()?;
    args.iter().all(|a| a == first).then_some(first)
}

fn show(args: &[Sort]) -> String {
    args.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

/// Sort of a nullary builtin identifier, if it is one.
pub(super) fn builtin_const(id: &Identifier, sig: &Signature) -> Option<Sort> {
    if sig.theories.strings && id.is_simple() && matches!(id.symbol.as_str(), "re.none" | "re.all" | "re.allchar") {
        return Some(Sort::reglan());
    }
    None
}

/// Sort of a builtin application. `None` when `id` is not an active builtin.
pub(super) fn builtin_app(id: &Identifier, args: &[Sort], sig: &Signature) -> Option<Result<Sort, String>> {
    let th = &sig.theories;
    let name = id.symbol.as_str();
    let bad = || Err(format!("no overload of `{id}` accepts ({})", show(args)));
    let bool_ = Sort::bool();
    let n = args.len();

    if !id.indices.is_empty() {
        let idx = id.num_indices();
        let w = |i: usize| args.get(i).and_then(Sort::bv_width);
        return Some(match (name, idx.as_deref()) {
            ("is", _) if th.dt || !sig.datatypes.is_empty() => {
                let [Index::Sym(c)] = id.indices.as_slice() else { return Some(bad()) };
                match sig.ctors.get(c) {
                    Some((dt, _)) if n == 1 && args[0].as_simple_name() == Some(dt.as_str()) => Ok(bool_),
                    Some(_) => bad(),
                    None => Err(format!("`{c}` is not a constructor")),
                }
            }
            ("extract", Some(&[i, j])) if th.bv => match w(0) {
                Some(width) if n == 1 && j <= i && i < width => Ok(Sort::bitvec(i - j + 1)),
                Some(width) if n == 1 => Err(format!("extract indices {i} {j} invalid for width {width}")),
                _ => bad(),
            },
            ("zero_extend" | "sign_extend", Some(&[i])) if th.bv => match w(0) {
                Some(width) if n == 1 => Ok(Sort::bitvec(width + i)),
                _ => bad(),
            },
            ("repeat", Some(&[i])) if th.bv => match w(0) {
                Some(width) if n == 1 && i >= 1 => Ok(Sort::bitvec(width * i)),
                _ => bad(),
            },
            ("rotate_left" | "rotate_right", Some(&[_])) if th.bv => match w(0) {
                Some(width) if n == 1 => Ok(Sort::bitvec(width)),
                _ => bad(),
            },
            ("re.loop", Some(&[_, _])) | ("re.^", Some(&[_])) if th.strings => {
                if n == 1 && args[0] == Sort::reglan() {
                    Ok(Sort::reglan())
                } else {
                    bad()
                }
            }
            _ => return None,
        });
    }

    let chain_ok = |k: usize| k == 2 || (sig.permissive && k >= 2);
    let result = match name {
        "not" => {
            if n == 1 && args[0].is_bool() {
                Ok(bool_)
            } else {
                bad()
            }
        }
        "and" | "or" | "xor" | "=>" => {
            if n >= 2 && args.iter().all(Sort::is_bool) {
                Ok(bool_)
            } else {
                bad()
            }
        }
        "=" => {
            if chain_ok(n) && all_same(args).is_some() {
                Ok(bool_)
            } else {
                bad()
            }
        }
        "distinct" if !sig.strict => {
            if n >= 2 && all_same(args).is_some() {
                Ok(bool_)
            } else {
                bad()
            }
        }
        "ite" => {
            if n == 3 && args[0].is_bool() && args[1] == args[2] {
                Ok(args[1].clone())
            } else if n == 3 && args[0].is_bool() {
                Err(format!("`ite` branches have different sorts {} and {}", args[1], args[2]))
            } else {
                bad()
            }
        }
        "+" | "-" | "*" | "<" | "<=" | ">" | ">=" if th.ints || th.reals => {
            let s = all_same(args);
            let numeric = s.is_some_and(|s| (th.ints && s.is("Int")) || (th.reals && s.is("Real")));
            let cmp = matches!(name, "<" | "<=" | ">" | ">=");
            if !numeric {
                bad()
            } else if cmp {
                if chain_ok(n) {
                    Ok(bool_)
                } else {
                    bad()
                }
            } else if n >= 2 || (name == "-" && n == 1) {
                Ok(s.unwrap().clone())
            } else {
                bad()
            }
        }
        "div" | "mod" if th.ints => {
            if n >= 2 && args.iter().all(|a| a.is("Int")) && (name == "div" || n == 2) {
                Ok(Sort::int())
            } else {
                bad()
            }
        }
        "abs" if th.ints => {
            if n == 1 && args[0].is("Int") {
                Ok(Sort::int())
            } else {
                bad()
            }
        }
        "/" if th.reals => {
            if n >= 2 && args.iter().all(|a| a.is("Real")) {
                Ok(Sort::real())
            } else {
                bad()
            }
        }
        _ if th.bv && BV.contains(&name) => bv_app(name, args).unwrap_or_else(bad),
        _ if th.strings && STRINGS.contains(&name) => str_app(name, args).unwrap_or_else(bad),
        "select" if th.arrays => match args {
            [a, i] if a.id.as_simple() == Some("Array") && a.args.len() == 2 && a.args[0] == *i => {
                Ok(a.args[1].clone())
            }
            _ => bad(),
        },
        "store" if th.arrays => match args {
            [a, i, e] if a.id.as_simple() == Some("Array") && a.args.len() == 2 && a.args[0] == *i && a.args[1] == *e => {
                Ok(a.clone())
            }
            _ => bad(),
        },
        _ => return None,
    };
    Some(result)
}

fn bv_app(name: &str, args: &[Sort]) -> Option<Result<Sort, String>> {
    let widths: Option<Vec<u64>> = args.iter().map(Sort::bv_width).collect();
    let widths = widths?;
    let n = widths.len();
    let same = n > 0 && widths.iter().all(|w| *w == widths[0]);
    let w = *widths.first()?;
    Some(Ok(match name {
        "bvnot" | "bvneg" if n == 1 => Sort::bitvec(w),
        "bvand" | "bvor" | "bvxor" | "bvadd" | "bvmul" if n >= 2 && same => Sort::bitvec(w),
        "bvudiv" | "bvurem" | "bvshl" | "bvlshr" | "bvnand" | "bvnor" | "bvxnor" | "bvsub" | "bvsdiv" | "bvsrem"
        | "bvsmod" | "bvashr"
            if n == 2 && same =>
        {
            Sort::bitvec(w)
        }
        "bvcomp" if n == 2 && same => Sort::bitvec(1),
        "bvult" | "bvule" | "bvugt" | "bvuge" | "bvslt" | "bvsle" | "bvsgt" | "bvsge" if n == 2 && same => Sort::bool(),
        "concat" if n >= 2 => Sort::bitvec(widths.iter().sum()),
        _ => return None,
    }))
}

fn str_app(name: &str, args: &[Sort]) -> Option<Result<Sort, String>> {
    let s = Sort::string();
    let i = Sort::int();
    let r = Sort::reglan();
    let b = Sort::bool();
    let sig_of = |params: &[&Sort]| args.len() == params.len() && args.iter().zip(params).all(|(a, p)| a == *p);
    let res = match name {
        "str.++" if args.len() >= 2 && args.iter().all(|a| *a == s) => s.clone(),
        "str.len" | "str.to_code" | "str.to_int" if sig_of(&[&s]) => i.clone(),
        "str.<" | "str.<=" | "str.prefixof" | "str.suffixof" | "str.contains" if sig_of(&[&s, &s]) => b.clone(),
        "str.at" if sig_of(&[&s, &i]) => s.clone(),
        "str.substr" if sig_of(&[&s, &i, &i]) => s.clone(),
        "str.indexof" if sig_of(&[&s, &s, &i]) => i.clone(),
        "str.replace" | "str.replace_all" if sig_of(&[&s, &s, &s]) => s.clone(),
        "str.replace_re" | "str.replace_re_all" if sig_of(&[&s, &r, &s]) => s.clone(),
        "str.is_digit" if sig_of(&[&s]) => b.clone(),
        "str.from_code" | "str.from_int" if sig_of(&[&i]) => s.clone(),
        "str.to_re" if sig_of(&[&s]) => r.clone(),
        "str.in_re" if sig_of(&[&s, &r]) => b.clone(),
        "re.++" | "re.union" | "re.inter" if args.len() >= 2 && args.iter().all(|a| *a == r) => r.clone(),
        "re.*" | "re.+" | "re.opt" | "re.comp" if sig_of(&[&r]) => r.clone(),
        "re.diff" if sig_of(&[&r, &r]) => r.clone(),
        "re.range" if sig_of(&[&s, &s]) => r.clone(),
        _ => return None,
    };
    Some(Ok(res))
}
