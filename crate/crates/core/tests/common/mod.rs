#![allow(dead_code)]

use hom3lie::algebra::Algebra3;
use hom3lie::corpus;
use hom3lie::Rational;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Small random rational, zero about a third of the time.
pub fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    if rng.gen_range(0..3) == 0 {
        return q(0, 1);
    }
    q(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Corpus algebras small enough for exhaustive level-2 evaluation.
pub fn small_corpus() -> Vec<(&'static str, Algebra3<Q>)> {
    vec![
        ("a4", corpus::a4()),
        ("z2-zero", corpus::z2_zero_bracket()),
        ("det3", corpus::det3()),
        ("det3-twisted", corpus::det3_twisted()),
        ("a4+center", corpus::a4_plus_center()),
        (
            "det3 x grassmann",
            corpus::color_tensor(&corpus::det3(), &corpus::grassmann1()).unwrap(),
        ),
    ]
}
