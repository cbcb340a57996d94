//! Fixed-width bit-vector operations (SMT-LIB conventions).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::value::mask;

fn msb(w: u64, x: &BigUint) -> bool {
    w > 0 && x.bit(w - 1)
}

pub fn neg(w: u64, x: &BigUint) -> BigUint {
    if x.is_zero() {
        BigUint::zero()
    } else {
        (BigUint::one() << w) - x
    }
}

pub fn not(w: u64, x: &BigUint) -> BigUint {
    mask(w) ^ x
}

pub fn add(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    (x + y) & mask(w)
}

pub fn sub(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    add(w, x, &neg(w, y))
}

pub fn mul(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    (x * y) & mask(w)
}

pub fn udiv(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    if y.is_zero() {
        mask(w)
    } else {
        x / y
    }
}

pub fn urem(x: &BigUint, y: &BigUint) -> BigUint {
    if y.is_zero() {
        x.clone()
    } else {
        x % y
    }
}

fn shift_amount(w: u64, y: &BigUint) -> Option<u64> {
    y.to_u64().filter(|s| *s < w)
}

pub fn shl(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    match shift_amount(w, y) {
        Some(s) => (x << s) & mask(w),
        None => BigUint::zero(),
    }
}

pub fn lshr(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    match shift_amount(w, y) {
        Some(s) => x >> s,
        None => BigUint::zero(),
    }
}

pub fn ashr(w: u64, x: &BigUint, y: &BigUint) -> BigUint {
    let fill = msb(w, x);
    match shift_amount(w, y) {
        Some(s) => {
            let shifted = x >> s;
            if fill {
                shifted | (mask(w) ^ mask(w - s))
            } else {
                shifted
            }
        }
        None => {
            if fill {
                mask(w)
            } else {
                BigUint::zero()
            }
        }
    }
}

pub fn sdiv(w: u64, s: &BigUint, t: &BigUint) -> BigUint {
    match (msb(w, s), msb(w, t)) {
        (false, false) => udiv(w, s, t),
        (true, false) => neg(w, &udiv(w, &neg(w, s), t)),
        (false, true) => neg(w, &udiv(w, s, &neg(w, t))),
        (true, true) => udiv(w, &neg(w, s), &neg(w, t)),
    }
}

pub fn srem(w: u64, s: &BigUint, t: &BigUint) -> BigUint {
    match (msb(w, s), msb(w, t)) {
        (false, false) => urem(s, t),
        (true, false) => neg(w, &urem(&neg(w, s), t)),
        (false, true) => urem(s, &neg(w, t)),
        (true, true) => neg(w, &urem(&neg(w, s), &neg(w, t))),
    }
}

pub fn smod(w: u64, s: &BigUint, t: &BigUint) -> BigUint {
    let (ms, mt) = (msb(w, s), msb(w, t));
    let abs_s = if ms { neg(w, s) } else { s.clone() };
    let abs_t = if mt { neg(w, t) } else { t.clone() };
    let u = urem(&abs_s, &abs_t);
    if u.is_zero() {
        return u;
    }
    match (ms, mt) {
        (false, false) => u,
        (true, false) => add(w, &neg(w, &u), t),
        (false, true) => add(w, &u, t),
        (true, true) => neg(w, &u),
    }
}

/// Two's complement reading.
pub fn signed(w: u64, x: &BigUint) -> BigInt {
    if msb(w, x) {
        BigInt::from(x.clone()) - (BigInt::one() << w)
    } else {
        BigInt::from(x.clone())
    }
}

pub fn concat(w2: u64, x: &BigUint, y: &BigUint) -> BigUint {
    (x << w2) | y
}

pub fn extract(i: u64, j: u64, x: &BigUint) -> BigUint {
    (x >> j) & mask(i - j + 1)
}

pub fn sign_extend(w: u64, i: u64, x: &BigUint) -> BigUint {
    if msb(w, x) {
        x | (mask(w + i) ^ mask(w))
    } else {
        x.clone()
    }
}

pub fn repeat(w: u64, i: u64, x: &BigUint) -> BigUint {
    let mut out = BigUint::zero();
    for _ in 0..i {
        out = concat(w, &out, x);
    }
    out
}

pub fn rotate_left(w: u64, i: u64, x: &BigUint) -> BigUint {
    let i = i % w;
    if i == 0 {
        return x.clone();
    }
    ((x << i) | (x >> (w - i))) & mask(w)
}

pub fn rotate_right(w: u64, i: u64, x: &BigUint) -> BigUint {
    rotate_left(w, w - i % w, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn division_by_zero_conventions() {
        assert_eq!(udiv(4, &b(5), &b(0)), b(15));
        assert_eq!(urem(&b(5), &b(0)), b(5));
    }

    #[test]
    fn signed_ops_width_4() {
        // -7 sdiv 2 = -3 (truncating): 1001 / 0010 -> 1101
        assert_eq!(sdiv(4, &b(9), &b(2)), b(13));
        // -7 srem 2 = -1
        assert_eq!(srem(4, &b(9), &b(2)), b(15));
        // -7 smod 2 = 1
        assert_eq!(smod(4, &b(9), &b(2)), b(1));
        assert_eq!(ashr(4, &b(8), &b(1)), b(12));
        assert_eq!(ashr(4, &b(8), &b(9)), b(15));
    }

    #[test]
    fn rotations_and_extension() {
        assert_eq!(rotate_left(4, 1, &b(9)), b(3));
        assert_eq!(rotate_right(4, 1, &b(9)), b(12));
        assert_eq!(sign_extend(4, 4, &b(9)), b(0xF9));
        assert_eq!(repeat(2, 3, &b(2)), b(0b101010));
        assert_eq!(extract(15, 0, &b(0x0782ECAD)), b(0xECAD));
    }
}
