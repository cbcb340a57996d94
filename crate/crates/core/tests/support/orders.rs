//! Brute-force reading of the preference orders over integer tuples.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sygus::eval::Value;
use sygus::verify::{compare_values, Direction, Preference};

/// Whether `a` is strictly preferred to `b`.
pub fn better(a: &[i64], b: &[i64], dirs: &[Direction], lexico: bool) -> bool {
    let gain = |i: usize| match dirs[i] {
        Direction::Max => a[i].cmp(&b[i]),
        Direction::Min => b[i].cmp(&a[i]),
        Direction::Unordered => std::cmp::Ordering::Equal,
    };
    let comparable = (0..a.len()).all(|i| dirs[i] != Direction::Unordered || a[i] == b[i]);
    if lexico {
        for i in 0..a.len() {
            if a[i] != b[i] {
                return dirs[i] != Direction::Unordered && gain(i).is_gt();
            }
        }
        return false;
    }
    comparable && (0..a.len()).all(|i| !gain(i).is_lt()) && (0..a.len()).any(|i| gain(i).is_gt())
}

/// Checks `compare_values` against [`better`] on `count` random triples of tuples,
/// including irreflexivity, asymmetry and transitivity.
pub fn random_tuples_agree(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        let dirs: Vec<Direction> =
            (0..n).map(|_| [Direction::Min, Direction::Max, Direction::Unordered][rng.gen_range(0..3)]).collect();
        let lexico = rng.gen_bool(0.5);
        let tuples: Vec<Vec<i64>> = (0..3).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let vals: Vec<Vec<Value>> = tuples.iter().map(|t| t.iter().map(|&x| Value::Int(BigInt::from(x))).collect()).collect();
        let pref = |i: usize, j: usize| compare_values(&vals[i], &vals[j], &dirs, lexico);
        for i in 0..3 {
            assert_eq!(pref(i, i), Preference::Equal);
            for j in 0..3 {
                let ab = better(&tuples[i], &tuples[j], &dirs, lexico);
                let ba = better(&tuples[j], &tuples[i], &dirs, lexico);
                assert!(!(ab && ba));
                let expect = match (ab, ba) {
                    (true, _) => Preference::APreferred,
                    (_, true) => Preference::BPreferred,
                    _ if tuples[i] == tuples[j] => Preference::Equal,
                    _ => Preference::Incomparable,
                };
                assert_eq!(pref(i, j), expect, "{:?} {:?} {dirs:?} lexico={lexico}", tuples[i], tuples[j]);
                for k in 0..3 {
                    if ab && better(&tuples[j], &tuples[k], &dirs, lexico) {
                        assert_eq!(pref(i, k), Preference::APreferred);
                    }
                }
            }
        }
    }
}
