//! Finite test domains and seeded random values per sort.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::eval::{mask, Value};
use crate::syntax::Sort;
use crate::theories::Signature;

const DT_DEPTH: usize = 3;
const DT_CAP: usize = 500;
const ALPHABET: [char; 3] = ['a', 'b', 'c'];
const RANDOM_CHARS: [char; 7] = ['a', 'b', 'c', 'A', 'z', ' ', '0'];

/// Grid values for `s`; Int ranges over `[-bound, bound]`.
pub fn grid(s: &Sort, bound: i64, sig: &Signature) -> Option<Vec<Value>> {
    if s.is_bool() {
        return Some(vec![Value::Bool(false), Value::Bool(true)]);
    }
    if s.is("Int") {
        return Some((-bound..=bound).map(Value::int).collect());
    }
    if s.is("Real") {
        let mut out: Vec<Value> = (-bound..=bound).map(|k| Value::Real(BigRational::from(BigInt::from(k)))).collect();
        for (n, d) in [(1, 2), (-1, 2), (1, 3)] {
            out.push(Value::Real(BigRational::new(n.into(), d.into())));
        }
        return Some(out);
    }
    if let Some(w) = s.bv_width() {
        return Some(bv_grid(w));
    }
    if s.is("String") {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..3 {
            layer = layer.iter().flat_map(|p| ALPHABET.iter().map(move |c| format!("{p}{c}"))).collect();
            out.extend(layer.iter().cloned());
        }
        return Some(out.into_iter().map(Value::Str).collect());
    }
    if sig.datatype_of_sort(s).is_some() {
        return dt_values(s, DT_DEPTH, sig);
    }
    None
}

/// Whether the grid for `s` covers the whole sort.
pub fn exhaustive(s: &Sort) -> bool {
    s.is_bool() || s.bv_width().is_some_and(|w| w <= 8)
}

fn bv_grid(w: u64) -> Vec<Value> {
    if w <= 8 {
        return (0u32..(1 << w)).map(|b| Value::bv(w, b)).collect();
    }
    let m = mask(w);
    let msb = BigUint::from(1u32) << (w - 1);
    let alt = (0..w).step_by(2).fold(BigUint::from(0u32), |acc, i| acc | (BigUint::from(1u32) << i));
    let mut out: Vec<Value> = Vec::new();
    for bits in [BigUint::from(0u32), BigUint::from(1u32), BigUint::from(2u32), msb.clone(), msb - 1u32, m.clone(), &m - 1u32, alt.clone(), &m ^ &alt] {
        let v = Value::bv(w, bits);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Leaf values used for non-datatype constructor fields.
fn field_values(s: &Sort, depth: usize, sig: &Signature) -> Option<Vec<Value>> {
    if s.is("Int") {
        return Some((-2..=2).map(Value::int).collect());
    }
    if s.is("String") {
        return Some(vec![Value::str(""), Value::str("a")]);
    }
    if sig.datatype_of_sort(s).is_some() {
        return dt_values(s, depth, sig);
    }
    grid(s, 2, sig)
}

fn dt_values(s: &Sort, depth: usize, sig: &Signature) -> Option<Vec<Value>> {
    let dt = sig.datatype_of_sort(s)?;
    let mut out = Vec::new();
    for c in &dt.constructors {
        if c.selectors.is_empty() {
            out.push(Value::Dt { ctor: c.name.clone(), args: Vec::new() });
            continue;
        }
        if depth <= 1 {
            continue;
        }
        let fields = c.selectors.iter().map(|f| field_values(&f.sort, depth - 1, sig)).collect::<Option<Vec<_>>>()?;
        let mut idx = vec![0usize; fields.len()];
        if fields.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            out.push(Value::Dt { ctor: c.name.clone(), args: idx.iter().zip(&fields).map(|(&i, f)| f[i].clone()).collect() });
            if out.len() >= DT_CAP {
                return Some(out);
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < fields[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Some(out)
}

/// A random value of sort `s`.
pub fn random(s: &Sort, bound: i64, sig: &Signature, rng: &mut ChaCha8Rng) -> Option<Value> {
    if s.is_bool() {
        return Some(Value::Bool(rng.gen()));
    }
    if s.is("Int") {
        return Some(Value::int(rng.gen_range(-bound..=bound)));
    }
    if s.is("Real") {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=10i64);
        return Some(Value::Real(BigRational::new(n.into(), d.into())));
    }
    if let Some(w) = s.bv_width() {
        let words: Vec<u32> = (0..w.div_ceil(32)).map(|_| rng.gen()).collect();
        return Some(Value::bv(w, BigUint::new(words)));
    }
    if s.is("String") {
        let n = rng.gen_range(0..=6);
        return Some(Value::Str((0..n).map(|_| RANDOM_CHARS[rng.gen_range(0..RANDOM_CHARS.len())]).collect()));
    }
    if sig.datatype_of_sort(s).is_some() {
        let vs = dt_values(s, DT_DEPTH, sig)?;
        return if vs.is_empty() { None } else { Some(vs[rng.gen_range(0..vs.len())].clone()) };
    }
    None
}
