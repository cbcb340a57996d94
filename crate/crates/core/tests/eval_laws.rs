//! Evaluator laws against independent references.

mod support {
    pub mod laws;
}

use num_bigint::BigInt;
use proptest::prelude::*;
use support::laws::{self, ev, sig};
use sygus::eval::Value;

#[test]
fn euclidean_division_exhaustive() {
    laws::euclidean_division_exhaustive();
}

#[test]
fn bv_width4_exhaustive() {
    laws::bv_width4_exhaustive();
}

#[test]
fn string_corner_cases() {
    laws::string_corner_cases();
}

#[test]
fn strings_match_reference_exhaustively() {
    laws::strings_match_reference_exhaustively();
}

proptest! {
    #[test]
    fn euclidean_division_large(x in any::<i64>(), y in any::<i64>().prop_filter("nonzero", |y| *y != 0)) {
        let s = sig();
        let env = [("x", Value::Int(BigInt::from(x))), ("y", Value::Int(BigInt::from(y)))];
        let (Some(Value::Int(q)), Some(Value::Int(r))) = (ev(&s, "(div x y)", &env), ev(&s, "(mod x y)", &env)) else {
            panic!("div/mod undefined")
        };
        prop_assert_eq!(BigInt::from(x), BigInt::from(y) * q + &r);
        prop_assert!(r >= BigInt::from(0) && r < BigInt::from(y).magnitude().clone().into());
    }

    #[test]
    fn str_concat_length_adds(a in "[ab]{0,8}", b in "[ab]{0,8}") {
        let s = sig();
        let env = [("x", Value::str(&a)), ("y", Value::str(&b))];
        prop_assert_eq!(
            ev(&s, "(str.len (str.++ x y))", &env),
            Some(Value::int((a.len() + b.len()) as i64))
        );
    }
}
