//! Seeded random elements for the verification suites. Everything is driven
//! by a ChaCha stream so reports are reproducible for a fixed seed.

use crate::algebra::{AlgebraElement, Monomial};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian-rational times a small kappa power, never zero.
pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let re = rng.gen_range(-3i64..=3);
        let im = rng.gen_range(-2i64..=2);
        if re == 0 && im == 0 {
            continue;
        }
        let e = rng.gen_range(-1i64..=1);
        return &Scalar::gauss(re, im) * &Scalar::k_pow(e);
    }
}

/// Random element with at most `terms` monomials, `|n| <= max_n` and
/// `p + q <= max_v` per monomial.
pub fn random_element(
    rng: &mut ChaCha8Rng,
    max_n: i32,
    max_v: u32,
    terms: usize,
) -> AlgebraElement {
    let mut acc = AlgebraElement::zero();
    for _ in 0..terms {
        let n = rng.gen_range(-max_n..=max_n);
        let p = rng.gen_range(0..=max_v);
        let q = rng.gen_range(0..=(max_v - p));
        let c = random_scalar(rng);
        acc = acc.add(&AlgebraElement::term(Monomial::new(n, p, q), c));
    }
    acc
}
