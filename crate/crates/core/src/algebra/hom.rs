use std::collections::BTreeMap;

use crate::algebra::alphabet::Alphabet;
use crate::algebra::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

/// A substitution homomorphism `K⟨source⟩ → K⟨target⟩` (or the unital
/// versions), determined by the image of every source letter.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    ring: Ring,
    source: Alphabet,
    target: Alphabet,
    target_unital: bool,
    images: Vec<Polynomial>,
}

impl AlgebraHom {
    /// `images[i]` is the image of source letter `i`. When `target_unital`
    /// is false the images must have no constant term.
    pub fn new(
        ring: Ring,
        source: &Alphabet,
        target: &Alphabet,
        target_unital: bool,
        images: Vec<Polynomial>,
    ) -> Result<AlgebraHom> {
        if images.len() != source.len() {
            return Err(Error::DimensionMismatch { expected: source.len(), found: images.len() });
        }
        let mut stored = Vec::with_capacity(images.len());
        for img in images {
            if img.ring() != ring {
                return Err(Error::RingMismatch(ring.name(), img.ring().name()));
            }
            if img.alphabet() != target {
                return Err(Error::AlphabetMismatch("image over a different alphabet".into()));
            }
            if !target_unital && !img.constant_term().is_zero() {
                return Err(Error::UnitalMismatch("image with constant term in a non-unital target".into()));
            }
            stored.push(img.embed_unital());
        }
        Ok(AlgebraHom { ring, source: source.clone(), target: target.clone(), target_unital, images: stored })
    }

    pub fn identity(ring: Ring, alphabet: &Alphabet, unital: bool) -> AlgebraHom {
        let images = (0..alphabet.len() as u32).map(|i| Polynomial::var(ring, alphabet, true, i)).collect();
        AlgebraHom { ring, source: alphabet.clone(), target: alphabet.clone(), target_unital: unital, images }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, i: u32) -> &Polynomial {
        &self.images[i as usize]
    }

    /// Applies the homomorphism. Words sharing a first letter are grouped so
    /// that common prefixes are substituted once.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.name(), p.ring().name()));
        }
        if p.alphabet() != &self.source {
            return Err(Error::AlphabetMismatch("polynomial is not over the source alphabet".into()));
        }
        if !self.target_unital && !p.constant_term().is_zero() {
            return Err(Error::UnitalMismatch("constant term has no image in a non-unital target".into()));
        }
        let terms: Vec<(&[u32], &Coeff)> = p.terms().iter().map(|(w, c)| (w.letters(), c)).collect();
        let out = self.eval(terms);
        out.with_unital(self.target_unital)
    }

    fn eval(&self, terms: Vec<(&[u32], &Coeff)>) -> Polynomial {
        let mut out = Polynomial::zero(self.ring, &self.target, true);
        let mut groups: BTreeMap<u32, Vec<(&[u32], &Coeff)>> = BTreeMap::new();
        for (w, c) in terms {
            match w.split_first() {
                None => out.add_term(crate::algebra::Word::empty(), c),
                Some((&x, rest)) => groups.entry(x).or_default().push((rest, c)),
            }
        }
        for (x, sub) in groups {
            let tail = self.eval(sub);
            let prod = &self.images[x as usize] * &tail;
            out.add_scaled(&self.ring.one(), &prod);
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraHom) -> Result<AlgebraHom> {
        if first.target != self.source {
            return Err(Error::AlphabetMismatch("composition of incompatible homomorphisms".into()));
        }
        let images = first
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        AlgebraHom::new(self.ring, &first.source, &self.target, self.target_unital, images)
    }
}

/// Applies `h` to `p`.
pub fn apply_hom(h: &AlgebraHom, p: &Polynomial) -> Result<Polynomial> {
    h.apply(p)
}
