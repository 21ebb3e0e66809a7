#![allow(dead_code)]

use bicomplex::{Bicomplex, Complex, IdempotentPair};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Four components uniform in `[-r, r]`.
pub fn cube(rng: &mut impl Rng, r: f64) -> Bicomplex {
    let mut x = || rng.gen_range(-r..=r);
    Bicomplex::from_four_reals(x(), x(), x(), x())
}

/// Uniform in the open R^4 ball of radius `r`.
pub fn ball(rng: &mut impl Rng, r: f64) -> Bicomplex {
    loop {
        let w = cube(rng, r);
        if w.euclid() < r {
            return w;
        }
    }
}

pub fn pair(p1: Complex, p2: Complex) -> Bicomplex {
    IdempotentPair::new(p1, p2).to_bicomplex()
}

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn arb_bicomplex(r: f64) -> impl Strategy<Value = Bicomplex> {
    [-r..=r, -r..=r, -r..=r, -r..=r].prop_map(|[a, b, c, d]| Bicomplex::from_four_reals(a, b, c, d))
}

/// `||x - y|| <= rel * max(1, scale)`.
pub fn close(x: Bicomplex, y: Bicomplex, scale: f64, rel: f64) -> bool {
    (x - y).euclid() <= rel * scale.max(1.0)
}
