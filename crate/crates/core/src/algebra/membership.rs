//! Degree-capped ideal membership certificates.
//!
//! A certificate writes the target as `Σ c · l · g · r` with `l`, `r` words of
//! length at most the cap (`l` empty for right ideals). Finding one is a
//! linear system over the finite set of such triples. Only triples that are
//! connected to the target's support through shared monomials can matter,
//! because the full system splits into independent blocks along that
//! relation, so the search explores exactly that block.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::polynomial::{Polynomial, Word};
use crate::error::{Error, Result};
use crate::linalg::{solve_linear, Matrix};
use crate::ring::Coeff;

/// Upper bound on the number of unknowns in a single search.
pub const MAX_SEARCH_ROWS: usize = 6000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Right,
    TwoSided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub left: Word,
    pub generator: usize,
    pub right: Word,
    pub scalar: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub summands: Vec<Summand>,
    /// Coefficients of the extra free polynomials, when the search had any.
    pub free: Vec<Coeff>,
}

impl MembershipCertificate {
    /// `Σ scalar · left · gen · right + Σ free_i · extra_i`, in the unital
    /// algebra.
    pub fn evaluate(&self, gens: &[Polynomial], extras: &[Polynomial], like: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(like.ring(), like.alphabet(), true);
        for s in &self.summands {
            out.add_scaled(&s.scalar, &gens[s.generator].embed_unital().sandwich(&s.left, &s.right));
        }
        for (c, e) in self.free.iter().zip(extras) {
            out.add_scaled(c, &e.embed_unital());
        }
        out
    }

    pub fn verify(&self, gens: &[Polynomial], extras: &[Polynomial], target: &Polynomial) -> bool {
        self.evaluate(gens, extras, target) == target.embed_unital()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Unknown {
    Triple(Word, usize, Word),
    Free(usize),
}

/// Searches for a certificate that `target` lies in the (right or two-sided)
/// ideal generated by `gens`, with multiplier words of length `≤ cap`.
/// `None` means no certificate exists within the cap.
pub fn ideal_membership_bounded(
    gens: &[Polynomial],
    target: &Polynomial,
    side: Side,
    cap: usize,
) -> Result<Option<MembershipCertificate>> {
    membership_search(gens, &[], target, side, cap)
}

/// As [`ideal_membership_bounded`], with additional polynomials `extras`
/// that may be added with arbitrary coefficients.
pub fn membership_search(
    gens: &[Polynomial],
    extras: &[Polynomial],
    target: &Polynomial,
    side: Side,
    cap: usize,
) -> Result<Option<MembershipCertificate>> {
    for p in gens.iter().chain(extras) {
        if p.ring() != target.ring() {
            return Err(Error::RingMismatch(target.ring().name(), p.ring().name()));
        }
        if p.alphabet() != target.alphabet() {
            return Err(Error::AlphabetMismatch("membership inputs over different alphabets".into()));
        }
    }
    let ring = target.ring();
    if target.is_zero() {
        return Ok(Some(MembershipCertificate { summands: vec![], free: vec![ring.zero(); extras.len()] }));
    }

    let mut extras_by_word: HashMap<&Word, Vec<usize>> = HashMap::new();
    for (i, e) in extras.iter().enumerate() {
        for w in e.terms().keys() {
            extras_by_word.entry(w).or_default().push(i);
        }
    }

    let mut cols: HashMap<Word, usize> = HashMap::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    let mut unknowns: Vec<Unknown> = Vec::new();
    let mut seen: HashSet<Unknown> = HashSet::new();

    let touch = |w: Word, cols: &mut HashMap<Word, usize>, queue: &mut VecDeque<Word>| {
        if !cols.contains_key(&w) {
            cols.insert(w.clone(), cols.len());
            queue.push_back(w);
        }
    };
    for w in target.terms().keys() {
        touch(w.clone(), &mut cols, &mut queue);
    }

    while let Some(w) = queue.pop_front() {
        let letters = w.letters();
        for (gi, g) in gens.iter().enumerate() {
            for m in g.terms().keys() {
                let ml = m.len();
                if ml > letters.len() {
                    continue;
                }
                for i in 0..=letters.len() - ml {
                    if &letters[i..i + ml] != m.letters() {
                        continue;
                    }
                    let l = &letters[..i];
                    let r = &letters[i + ml..];
                    if l.len() > cap || r.len() > cap || (side == Side::Right && !l.is_empty()) {
                        continue;
                    }
                    let key = Unknown::Triple(Word(l.to_vec()), gi, Word(r.to_vec()));
                    if !seen.insert(key.clone()) {
                        continue;
                    }
                    let (lw, rw) = (Word(l.to_vec()), Word(r.to_vec()));
                    for t in g.terms().keys() {
                        touch(lw.concat(t).concat(&rw), &mut cols, &mut queue);
                    }
                    unknowns.push(key);
                }
            }
        }
        if let Some(ids) = extras_by_word.get(&w) {
            for &i in ids {
                let key = Unknown::Free(i);
                if seen.insert(key.clone()) {
                    for t in extras[i].terms().keys() {
                        touch(t.clone(), &mut cols, &mut queue);
                    }
                    unknowns.push(key);
                }
            }
        }
        if unknowns.len() > MAX_SEARCH_ROWS {
            return Err(Error::SearchLimit(MAX_SEARCH_ROWS));
        }
    }

    if unknowns.is_empty() {
        return Ok(None);
    }
    // Free unknowns first, so the canonical solution leaves as much as
    // possible to the generators.
    unknowns.sort_by_key(|u| !matches!(u, Unknown::Free(_)));
    let ncols = cols.len();
    let mut rows = Vec::with_capacity(unknowns.len());
    for u in &unknowns {
        let mut row = vec![ring.zero(); ncols];
        match u {
            Unknown::Triple(l, gi, r) => {
                for (t, c) in gens[*gi].terms() {
                    row[cols[&l.concat(t).concat(r)]] = c.clone();
                }
            }
            Unknown::Free(i) => {
                for (t, c) in extras[*i].terms() {
                    row[cols[t]] = c.clone();
                }
            }
        }
        rows.push(row);
    }
    let mut rhs = vec![ring.zero(); ncols];
    for (w, c) in target.terms() {
        rhs[cols[w]] = c.clone();
    }
    let map = Matrix::new(ring, ncols, rows)?;
    let Some(x) = solve_linear(&map, &rhs)? else { return Ok(None) };

    let mut cert = MembershipCertificate { summands: vec![], free: vec![ring.zero(); extras.len()] };
    for (u, c) in unknowns.into_iter().zip(x) {
        if c.is_zero() {
            continue;
        }
        match u {
            Unknown::Triple(left, generator, right) => {
                cert.summands.push(Summand { left, generator, right, scalar: c })
            }
            Unknown::Free(i) => cert.free[i] = c,
        }
    }
    cert.summands.sort_by(|a, b| {
        (a.generator, &a.left, &a.right).cmp(&(b.generator, &b.left, &b.right))
    });
    if !cert.verify(gens, extras, target) {
        return Err(Error::Internal("membership certificate does not reproduce its target".into()));
    }
    Ok(Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::alphabet::Alphabet;
    use crate::algebra::parse::parse_poly;
    use crate::ring::Ring;

    #[test]
    fn right_multiple() {
        let q = Ring::Rationals;
        let a = Alphabet::new(["x"]).unwrap();
        let g = parse_poly("x^2 - x", &a, q, false).unwrap();
        let t = parse_poly("x^3 - x^2", &a, q, false).unwrap();
        let cert = ideal_membership_bounded(std::slice::from_ref(&g), &t, Side::Right, 1).unwrap().unwrap();
        assert_eq!(cert.summands.len(), 1);
        assert_eq!(cert.summands[0].right, Word(vec![0]));
        assert!(cert.verify(std::slice::from_ref(&g), &[], &t));
        assert!(ideal_membership_bounded(std::slice::from_ref(&g), &t, Side::Right, 0).unwrap().is_none());
        let zero = Polynomial::zero(q, &a, false);
        assert!(ideal_membership_bounded(&[g], &zero, Side::Right, 0).unwrap().unwrap().summands.is_empty());
    }

    #[test]
    fn right_ideal_excludes_left_multiples() {
        let q = Ring::Rationals;
        let a = Alphabet::new(["x", "y"]).unwrap();
        let g = parse_poly("y", &a, q, false).unwrap();
        let t = parse_poly("x*y", &a, q, false).unwrap();
        assert!(ideal_membership_bounded(std::slice::from_ref(&g), &t, Side::Right, 3).unwrap().is_none());
        assert!(ideal_membership_bounded(&[g], &t, Side::TwoSided, 1).unwrap().is_some());
    }

    #[test]
    fn integrality_matters() {
        let z = Ring::Integers;
        let a = Alphabet::new(["x"]).unwrap();
        let g = parse_poly("2*x", &a, z, false).unwrap();
        let t = parse_poly("x^2", &a, z, false).unwrap();
        assert!(ideal_membership_bounded(std::slice::from_ref(&g), &t, Side::TwoSided, 2).unwrap().is_none());
        let t2 = parse_poly("4*x^2", &a, z, false).unwrap();
        assert!(ideal_membership_bounded(&[g], &t2, Side::TwoSided, 1).unwrap().is_some());
    }

    #[test]
    fn extras_are_free() {
        let q = Ring::Rationals;
        let a = Alphabet::new(["x", "y"]).unwrap();
        let g = parse_poly("x*y - y", &a, q, false).unwrap();
        let e = parse_poly("y", &a, q, false).unwrap();
        let t = parse_poly("x*y", &a, q, false).unwrap();
        let cert = membership_search(std::slice::from_ref(&g), std::slice::from_ref(&e), &t, Side::TwoSided, 0).unwrap().unwrap();
        assert_eq!(cert.free, vec![q.one()]);
    }
}
