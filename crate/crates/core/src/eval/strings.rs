//! String operations with SMT-LIB total semantics. Indices count code points.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn idx(n: &BigInt) -> Option<usize> {
    if n.is_negative() {
        None
    } else {
        n.to_usize()
    }
}

pub fn len(s: &str) -> BigInt {
    BigInt::from(s.chars().count())
}

pub fn at(s: &str, i: &BigInt) -> String {
    let cs = chars(s);
    match idx(i) {
        Some(i) if i < cs.len() => cs[i].to_string(),
        _ => String::new(),
    }
}

pub fn substr(s: &str, i: &BigInt, n: &BigInt) -> String {
    let cs = chars(s);
    let (Some(i), true) = (idx(i), n.is_positive()) else { return String::new() };
    if i >= cs.len() {
        return String::new();
    }
    let n = n.to_usize().unwrap_or(usize::MAX);
    let end = i.saturating_add(n).min(cs.len());
    cs[i..end].iter().collect()
}

fn find_from(hay: &[char], needle: &[char], from: usize) -> Option<usize> {
    if needle.is_empty() {
        return (from <= hay.len()).then_some(from);
    }
    if needle.len() > hay.len() {
        return None;
    }
    (from..=hay.len() - needle.len()).find(|&p| hay[p..p + needle.len()] == *needle)
}

pub fn indexof(s: &str, t: &str, i: &BigInt) -> BigInt {
    let (hs, ns) = (chars(s), chars(t));
    match idx(i) {
        Some(i) if i <= hs.len() => match find_from(&hs, &ns, i) {
            Some(p) => BigInt::from(p),
            None => BigInt::from(-1),
        },
        _ => BigInt::from(-1),
    }
}

pub fn contains(s: &str, t: &str) -> bool {
    find_from(&chars(s), &chars(t), 0).is_some()
}

pub fn replace(s: &str, t: &str, u: &str) -> String {
    if t.is_empty() {
        return format!("{u}{s}");
    }
    let (hs, ns) = (chars(s), chars(t));
    match find_from(&hs, &ns, 0) {
        Some(p) => {
            let mut out: String = hs[..p].iter().collect();
            out.push_str(u);
            out.extend(&hs[p + ns.len()..]);
            out
        }
        None => s.to_string(),
    }
}

pub fn replace_all(s: &str, t: &str, u: &str) -> String {
    if t.is_empty() {
        return s.to_string();
    }
    let (hs, ns) = (chars(s), chars(t));
    let mut out = String::new();
    let mut pos = 0;
    while let Some(p) = find_from(&hs, &ns, pos) {
        out.extend(&hs[pos..p]);
        out.push_str(u);
        pos = p + ns.len();
    }
    out.extend(&hs[pos..]);
    out
}

pub fn is_digit(s: &str) -> bool {
    let cs = chars(s);
    cs.len() == 1 && cs[0].is_ascii_digit()
}

pub fn to_code(s: &str) -> BigInt {
    let cs = chars(s);
    if cs.len() == 1 {
        BigInt::from(cs[0] as u32)
    } else {
        BigInt::from(-1)
    }
}

/// `None` for code points that cannot be held in a Rust string (surrogates).
pub fn from_code(n: &BigInt) -> Option<String> {
    match n.to_u32() {
        Some(c) if c <= 0x2FFFF => char::from_u32(c).map(|c| c.to_string()),
        _ => Some(String::new()),
    }
}

pub fn to_int(s: &str) -> BigInt {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
        s.parse().unwrap()
    } else {
        BigInt::from(-1)
    }
}

pub fn from_int(n: &BigInt) -> String {
    if n.is_negative() {
        String::new()
    } else {
        n.to_string()
    }
}

pub fn lt(s: &str, t: &str) -> bool {
    chars(s) < chars(t)
}

pub fn le(s: &str, t: &str) -> bool {
    chars(s) <= chars(t)
}

pub fn zero() -> BigInt {
    BigInt::zero()
}
