//! Seeded random inputs for sampling checks and test fixtures.

use rand::Rng;

use crate::algebra::{Alphabet, Polynomial, Word};
use crate::ring::{Coeff, Ring};

/// A nonzero-or-zero coefficient drawn from `-3 ..= 3`.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> Coeff {
    ring.from_i64(rng.gen_range(-3..=3))
}

/// A random word of length exactly `len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Word {
    Word((0..len).map(|_| rng.gen_range(0..alphabet.len() as u32)).collect())
}

/// Up to `max_terms` random terms of degree `≤ max_deg`; degree-0 terms
/// appear only when `unital`.
pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    ring: Ring,
    alphabet: &Alphabet,
    unital: bool,
    max_deg: usize,
    max_terms: usize,
) -> Polynomial {
    let mut p = Polynomial::zero(ring, alphabet, unital);
    if alphabet.is_empty() && !unital {
        return p;
    }
    let min = if unital || alphabet.is_empty() { 0 } else { 1 };
    let max_deg = if alphabet.is_empty() { 0 } else { max_deg.max(min) };
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let len = rng.gen_range(min..=max_deg);
        let w = random_word(rng, alphabet, len);
        p.add_term(w, &random_coeff(rng, ring));
    }
    p
}
