//! Evaluator laws, each checked against a small reference implementation
//! kept in this file. Every check panics on the first mismatch.

use sygus::eval::{Interp, Value};
use sygus::reader::read_one;
use sygus::syntax::parse_term;
use sygus::theories::{Signature, Theories};

pub fn sig() -> Signature {
    Signature::new(Theories { ints: true, bv: true, strings: true, ..Theories::default() })
}

pub fn ev(sig: &Signature, text: &str, env: &[(&str, Value)]) -> Option<Value> {
    let t = parse_term(&read_one(text).unwrap()).unwrap();
    let env: Vec<(String, Value)> = env.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
    Interp::new(sig).eval(&t, &env).ok()
}

fn int(v: Option<Value>) -> i64 {
    match v {
        Some(Value::Int(n)) => i64::try_from(n).unwrap(),
        other => panic!("{other:?}"),
    }
}

pub fn euclidean_division_exhaustive() {
    let s = sig();
    for x in -50i64..=50 {
        for y in -50i64..=50 {
            let env = [("x", Value::int(x)), ("y", Value::int(y))];
            if y == 0 {
                assert!(ev(&s, "(div x y)", &env).is_none());
                continue;
            }
            let q = int(ev(&s, "(div x y)", &env));
            let r = int(ev(&s, "(mod x y)", &env));
            assert_eq!(x, y * q + r, "x={x} y={y}");
            assert!((0..y.abs()).contains(&r), "x={x} y={y} r={r}");
        }
    }
}

// Width-4 reference: values are 0..16, signed view in -8..8.
const W: u32 = 4;
const M: i64 = 16;

fn signed(a: i64) -> i64 {
    if a >= 8 {
        a - 16
    } else {
        a
    }
}

fn wrap(a: i64) -> i64 {
    a.rem_euclid(M)
}

fn reference_bv(op: &str, a: i64, b: i64) -> Value {
    let bv = |x: i64| Value::bv(4, wrap(x) as u32);
    let bool = Value::Bool;
    match op {
        "bvadd" => bv(a + b),
        "bvsub" => bv(a - b),
        "bvmul" => bv(a * b),
        "bvand" => bv(a & b),
        "bvor" => bv(a | b),
        "bvxor" => bv(a ^ b),
        "bvudiv" => bv(if b == 0 { M - 1 } else { a / b }),
        "bvurem" => bv(if b == 0 { a } else { a % b }),
        "bvshl" => bv(if b >= W as i64 { 0 } else { a << b }),
        "bvlshr" => bv(if b >= W as i64 { 0 } else { a >> b }),
        "bvashr" => bv(if b >= W as i64 { if signed(a) < 0 { -1 } else { 0 } } else { signed(a) >> b }),
        "bvsdiv" => {
            let (x, y) = (signed(a), signed(b));
            // Truncating division; by zero: -1 for x >= 0, 1 otherwise.
            bv(if y == 0 { if x >= 0 { -1 } else { 1 } } else { x / y })
        }
        "bvsrem" => {
            let (x, y) = (signed(a), signed(b));
            bv(if y == 0 { x } else { x % y })
        }
        "bvsmod" => {
            let (x, y) = (signed(a), signed(b));
            if y == 0 {
                bv(x)
            } else {
                let r = x % y;
                bv(if r != 0 && (r < 0) != (y < 0) { r + y } else { r })
            }
        }
        "bvult" => bool(a < b),
        "bvule" => bool(a <= b),
        "bvslt" => bool(signed(a) < signed(b)),
        "bvsle" => bool(signed(a) <= signed(b)),
        "bvcomp" => Value::bv(1, u32::from(a == b)),
        _ => unreachable!(),
    }
}

pub fn bv_width4_exhaustive() {
    let s = sig();
    let ops = [
        "bvadd", "bvsub", "bvmul", "bvand", "bvor", "bvxor", "bvudiv", "bvurem", "bvshl", "bvlshr", "bvashr", "bvsdiv",
        "bvsrem", "bvsmod", "bvult", "bvule", "bvslt", "bvsle", "bvcomp",
    ];
    for a in 0..M {
        let x = Value::bv(4, a as u32);
        assert_eq!(ev(&s, "(bvneg x)", &[("x", x.clone())]), Some(Value::bv(4, wrap(-a) as u32)));
        assert_eq!(ev(&s, "(bvnot x)", &[("x", x.clone())]), Some(Value::bv(4, (15 - a) as u32)));
        for b in 0..M {
            let env = [("x", x.clone()), ("y", Value::bv(4, b as u32))];
            for op in ops {
                assert_eq!(ev(&s, &format!("({op} x y)"), &env), Some(reference_bv(op, a, b)), "{op} {a} {b}");
            }
            // Laws that tie operations together.
            assert_eq!(ev(&s, "(bvsub x y)", &env), ev(&s, "(bvadd x (bvneg y))", &env));
            assert_eq!(ev(&s, "(concat ((_ extract 3 2) x) ((_ extract 1 0) x))", &env), Some(x.clone()));
        }
    }
}

// String reference over char vectors, SMT-LIB 2.6 semantics.
fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn r_substr(s: &str, i: i64, n: i64) -> String {
    let cs = chars(s);
    if i < 0 || n <= 0 || i >= cs.len() as i64 {
        return String::new();
    }
    let end = (i + n).min(cs.len() as i64);
    cs[i as usize..end as usize].iter().collect()
}

fn r_indexof(s: &str, t: &str, i: i64) -> i64 {
    let (hs, ns) = (chars(s), chars(t));
    if i < 0 || i > hs.len() as i64 {
        return -1;
    }
    for p in i as usize..=hs.len() {
        if p + ns.len() <= hs.len() && hs[p..p + ns.len()] == ns[..] {
            return p as i64;
        }
    }
    -1
}

fn r_replace(s: &str, t: &str, u: &str) -> String {
    if t.is_empty() {
        return format!("{u}{s}");
    }
    match r_indexof(s, t, 0) {
        -1 => s.to_string(),
        p => {
            let cs = chars(s);
            let p = p as usize;
            let before: String = cs[..p].iter().collect();
            let after: String = cs[p + chars(t).len()..].iter().collect();
            format!("{before}{u}{after}")
        }
    }
}

fn r_to_int(s: &str) -> i64 {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        -1
    } else {
        s.parse().unwrap()
    }
}

fn r_from_int(n: i64) -> String {
    if n < 0 {
        String::new()
    } else {
        n.to_string()
    }
}

fn words() -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..3 {
        layer = layer.iter().flat_map(|p| ["a", "b", "1"].iter().map(move |c| format!("{p}{c}"))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn string_corner_cases() {
    let s = sig();
    let e = |t: &str| ev(&s, t, &[]);
    assert_eq!(e("(str.substr \"abc\" (- 1) 2)"), Some(Value::str("")));
    assert_eq!(e("(str.indexof \"abc\" \"d\" 0)"), Some(Value::int(-1)));
    assert_eq!(e("(str.indexof \"abc\" \"\" 3)"), Some(Value::int(3)));
    assert_eq!(e("(str.indexof \"abc\" \"\" 4)"), Some(Value::int(-1)));
    assert_eq!(e("(str.at \"abc\" 3)"), Some(Value::str("")));
    assert_eq!(e("(str.replace \"abc\" \"\" \"x\")"), Some(Value::str("xabc")));
    assert_eq!(e("(str.to_int \"\")"), Some(Value::int(-1)));
    assert_eq!(e("(str.from_int (- 5))"), Some(Value::str("")));
}

pub fn strings_match_reference_exhaustively() {
    let s = sig();
    let ws = words();
    let small: Vec<&String> = ws.iter().filter(|w| w.chars().count() <= 2).collect();
    for a in &ws {
        let x = Value::str(a);
        assert_eq!(ev(&s, "(str.to_int x)", &[("x", x.clone())]), Some(Value::int(r_to_int(a))), "{a}");
        assert_eq!(ev(&s, "(str.len x)", &[("x", x.clone())]), Some(Value::int(a.chars().count() as i64)));
        for i in -1..=4 {
            let env = [("x", x.clone()), ("i", Value::int(i))];
            assert_eq!(ev(&s, "(str.at x i)", &env), Some(Value::str(&r_substr(a, i, 1))), "{a} {i}");
            for n in -1..=4 {
                let env = [("x", x.clone()), ("i", Value::int(i)), ("n", Value::int(n))];
                assert_eq!(ev(&s, "(str.substr x i n)", &env), Some(Value::str(&r_substr(a, i, n))), "{a} {i} {n}");
            }
        }
        for b in &small {
            let y = Value::str(b);
            let env = [("x", x.clone()), ("y", y.clone())];
            assert_eq!(ev(&s, "(str.contains x y)", &env), Some(Value::Bool(r_indexof(a, b, 0) >= 0)), "{a} {b}");
            assert_eq!(ev(&s, "(str.prefixof y x)", &env), Some(Value::Bool(a.starts_with(b.as_str()))));
            assert_eq!(ev(&s, "(str.suffixof y x)", &env), Some(Value::Bool(a.ends_with(b.as_str()))));
            for i in -1..=4 {
                let env = [("x", x.clone()), ("y", y.clone()), ("i", Value::int(i))];
                assert_eq!(ev(&s, "(str.indexof x y i)", &env), Some(Value::int(r_indexof(a, b, i))), "{a} {b} {i}");
            }
            for c in ["", "z"] {
                let env = [("x", x.clone()), ("y", y.clone()), ("z", Value::str(c))];
                assert_eq!(ev(&s, "(str.replace x y z)", &env), Some(Value::str(&r_replace(a, b, c))), "{a} {b} {c}");
            }
        }
    }
    for n in -3..=120 {
        assert_eq!(ev(&s, "(str.from_int n)", &[("n", Value::int(n))]), Some(Value::str(&r_from_int(n))));
    }
}
