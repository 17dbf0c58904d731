use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

/// A word over an alphabet, stored as letter indices. Ordered by length,
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: u32) -> Word {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_letters(&self.0, alphabet)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All words with length in `min..=max`, in canonical order.
pub fn enumerate_words(alphabet: &Alphabet, min_deg: usize, max_deg: usize) -> Vec<Word> {
    let n = alphabet.len() as u32;
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for d in 0..=max_deg {
        if d >= min_deg {
            out.extend(layer.iter().cloned());
        }
        if d == max_deg || n == 0 {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |x| {
                    let mut v = w.0.clone();
                    v.push(x);
                    Word(v)
                })
            })
            .collect();
    }
    out
}

/// A noncommutative polynomial with exact coefficients.
///
/// `unital` says whether the empty word (the formal identity) is admissible.
/// Arithmetic between polynomials requires equal ring, alphabet and unital
/// flag; the operator impls panic on a mismatch, the `checked_*` methods
/// return an error.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    alphabet: Alphabet,
    unital: bool,
    terms: BTreeMap<Word, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: Ring, alphabet: &Alphabet, unital: bool) -> Polynomial {
        Polynomial { ring, alphabet: alphabet.clone(), unital, terms: BTreeMap::new() }
    }

    /// The identity of `K⟨X⟩¹`.
    pub fn one(ring: Ring, alphabet: &Alphabet) -> Polynomial {
        Polynomial::constant(ring.one(), alphabet)
    }

    pub fn constant(c: Coeff, alphabet: &Alphabet) -> Polynomial {
        let mut p = Polynomial::zero(c.ring(), alphabet, true);
        p.add_term(Word::empty(), &c);
        p
    }

    pub fn var(ring: Ring, alphabet: &Alphabet, unital: bool, i: u32) -> Polynomial {
        assert!((i as usize) < alphabet.len(), "letter index out of range");
        let mut p = Polynomial::zero(ring, alphabet, unital);
        p.terms.insert(Word::letter(i), ring.one());
        p
    }

    pub fn monomial(ring: Ring, alphabet: &Alphabet, unital: bool, word: Word, c: Coeff) -> Result<Polynomial> {
        Polynomial::from_terms(ring, alphabet, unital, [(word, c)])
    }

    pub fn from_terms(
        ring: Ring,
        alphabet: &Alphabet,
        unital: bool,
        terms: impl IntoIterator<Item = (Word, Coeff)>,
    ) -> Result<Polynomial> {
        let mut p = Polynomial::zero(ring, alphabet, unital);
        for (w, c) in terms {
            if c.ring() != ring {
                return Err(Error::RingMismatch(ring.name(), c.ring().name()));
            }
            if let Some(&bad) = w.0.iter().find(|&&l| l as usize >= alphabet.len()) {
                return Err(Error::AlphabetMismatch(format!("letter index {bad} out of range")));
            }
            if w.is_empty() && !unital && !c.is_zero() {
                return Err(Error::EmptyWordTerm(0));
            }
            p.add_term(w, &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Terms in ascending word order (length, then lexicographic).
    pub fn terms(&self) -> &BTreeMap<Word, Coeff> {
        &self.terms
    }

    /// Terms in serialization order: degree descending, then lexicographic.
    pub fn canonical_terms(&self) -> Vec<(&Word, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0 .0.cmp(&b.0 .0)));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Word::empty())
    }

    /// Adds `c·w` in place.
    pub fn add_term(&mut self, w: Word, c: &Coeff) {
        debug_assert!(self.unital || !w.is_empty() || c.is_zero());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Coeff, other: &Polynomial) {
        self.assert_compatible(other);
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(c * d));
        }
    }

    pub fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.names(),
                other.alphabet.names()
            )));
        }
        if self.unital != other.unital {
            return Err(Error::UnitalMismatch("embed the non-unital operand first".into()));
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Polynomial) {
        if let Err(e) = self.check_compatible(other) {
            panic!("{e}");
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.ring, &self.alphabet, self.unital);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.concat(b), &(c * d));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let mut out = Polynomial::zero(self.ring, &self.alphabet, self.unital);
        if c.is_zero() {
            return out;
        }
        for (w, d) in &self.terms {
            out.add_term(w.clone(), &(c * d));
        }
        out
    }

    /// `self^n`; `n = 0` needs a unital polynomial.
    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        if n == 0 {
            if !self.unital {
                return Err(Error::UnitalMismatch("zeroth power outside K⟨X⟩¹".into()));
            }
            return Ok(Polynomial::one(self.ring, &self.alphabet));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplies every word by `left` on the left and `right` on the right.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Polynomial {
        let mut out = Polynomial::zero(self.ring, &self.alphabet, self.unital);
        for (w, c) in &self.terms {
            out.terms.insert(left.concat(w).concat(right), c.clone());
        }
        out
    }

    /// The same polynomial viewed in `K⟨X⟩¹`.
    pub fn embed_unital(&self) -> Polynomial {
        Polynomial { unital: true, ..self.clone() }
    }

    /// The same polynomial viewed in `K⟨X⟩`; fails if there is a constant term.
    pub fn to_nonunital(&self) -> Result<Polynomial> {
        if !self.constant_term().is_zero() {
            return Err(Error::EmptyWordTerm(0));
        }
        Ok(Polynomial { unital: false, ..self.clone() })
    }

    pub fn with_unital(&self, unital: bool) -> Result<Polynomial> {
        if unital {
            Ok(self.embed_unital())
        } else {
            self.to_nonunital()
        }
    }

    /// Reinterprets letters through `map` into a larger or different alphabet.
    pub fn relabel(&self, target: &Alphabet, map: &[u32]) -> Polynomial {
        let mut out = Polynomial::zero(self.ring, target, self.unital);
        for (w, c) in &self.terms {
            out.add_term(Word(w.0.iter().map(|&l| map[l as usize]).collect()), c);
        }
        out
    }
}

fn render_letters(letters: &[u32], alphabet: &Alphabet) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = alphabet.name(letters[i]);
        parts.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = if neg { c.abs() } else { c.clone() };
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", w.render(&self.alphabet))?;
            } else {
                write!(f, "{mag}*{}", w.render(&self.alphabet))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.ring.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    #[test]
    fn noncommutative_square() {
        let z = Ring::Integers;
        let a = xy();
        let x = Polynomial::var(z, &a, false, 0);
        let y = Polynomial::var(z, &a, false, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - x*y + y*x - y^2");
        assert_ne!(&x * &y, &y * &x);
        assert!((&p * &Polynomial::zero(z, &a, false)).is_zero());
        let one = Polynomial::one(z, &a);
        assert_eq!(&one * &p.embed_unital(), p.embed_unital());
    }

    #[test]
    fn formatting() {
        let z = Ring::Integers;
        let a = xy();
        assert_eq!(Polynomial::zero(z, &a, false).to_string(), "0");
        let p = Polynomial::from_terms(
            z,
            &a,
            false,
            [(Word(vec![0, 1]), z.from_i64(2)), (Word(vec![1, 0]), z.from_i64(-1))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "2*x*y - y*x");
        let c = Polynomial::constant(z.from_i64(-3), &a);
        assert_eq!(c.to_string(), "-3");
    }

    #[test]
    fn rejects_constants_outside_unital() {
        let z = Ring::Integers;
        assert!(Polynomial::monomial(z, &xy(), false, Word::empty(), z.one()).is_err());
        assert!(Polynomial::one(z, &xy()).to_nonunital().is_err());
    }

    #[test]
    fn word_enumeration() {
        let x = Alphabet::new(["x"]).unwrap();
        let ws = enumerate_words(&x, 1, 3);
        assert_eq!(ws, vec![Word(vec![0]), Word(vec![0, 0]), Word(vec![0, 0, 0])]);
        let ws = enumerate_words(&xy(), 2, 2);
        assert_eq!(ws.len(), 4);
        assert_eq!(ws[1], Word(vec![0, 1]));
        assert!(enumerate_words(&xy(), 1, 0).is_empty());
        assert_eq!(enumerate_words(&xy(), 0, 0), vec![Word::empty()]);
    }
}
