use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Alphabet, Polynomial, Word};
use crate::error::{Error, Result, Violation};
use crate::linalg::{
    axpy, format_vec, kernel_modulo, quotient_presentation, solve_linear, unit_vec, Matrix, QuotientModule, Submodule,
};
use crate::quotient::IdealClass;
use crate::ring::{Coeff, Ring};

/// Which products a closure is taken under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    /// Products with arbitrary elements of `Q` on either side.
    LeftRightIdeal,
    /// Products of two elements of the submodule itself.
    Subalgebra,
}

/// A finite-rank algebra `Q = K^k / N_Q` given by structure constants,
/// together with a surjection `π : K⟨X⟩ → Q` and a marked submodule `S`.
/// Represents `B = π⁻¹(S + N_Q)`.
#[derive(Clone, Debug)]
pub struct AlgebraRep {
    ring: Ring,
    alphabet: Alphabet,
    rank: usize,
    relations: Submodule,
    /// `structure[i][j]` is the coordinate vector of `q_i · q_j`.
    structure: Vec<Vec<Vec<Coeff>>>,
    images: Vec<Vec<Coeff>>,
    marked: Submodule,
    /// `S + N_Q`.
    marked_full: Submodule,
}

impl AlgebraRep {
    pub fn new(
        ring: Ring,
        alphabet: Alphabet,
        rank: usize,
        relations: Vec<Vec<Coeff>>,
        structure: Vec<Vec<Vec<Coeff>>>,
        images: Vec<Vec<Coeff>>,
        marked: Vec<Vec<Coeff>>,
    ) -> Result<AlgebraRep> {
        let mut bad = Vec::new();
        let vec_ok = |v: &Vec<Coeff>| v.len() == rank && v.iter().all(|c| c.ring() == ring);
        if !relations.iter().all(vec_ok) {
            bad.push(Violation::new("relations", format!("every relation must be a vector of length {rank}")));
        }
        if structure.len() != rank || !structure.iter().all(|r| r.len() == rank && r.iter().all(vec_ok)) {
            bad.push(Violation::new("structure_constants", format!("expected a {rank}×{rank} table of vectors")));
        }
        if images.len() != alphabet.len() || !images.iter().all(vec_ok) {
            bad.push(Violation::new("images", format!("expected one vector of length {rank} per variable")));
        }
        if !marked.iter().all(vec_ok) {
            bad.push(Violation::new("marked_submodule", format!("every generator must have length {rank}")));
        }
        if !bad.is_empty() {
            return Err(Error::InvalidRep(bad));
        }
        let relations = Submodule::new(ring, rank, relations)?;
        let marked = Submodule::new(ring, rank, marked)?;
        let marked_full = marked.sum(&relations)?;
        let rep = AlgebraRep { ring, alphabet, rank, relations, structure, images, marked, marked_full };
        rep.check_invariants(&mut bad);
        if !bad.is_empty() {
            return Err(Error::InvalidRep(bad));
        }
        Ok(rep)
    }

    fn check_invariants(&self, bad: &mut Vec<Violation>) {
        let k = self.rank;
        let units: Vec<Vec<Coeff>> = (0..k).map(|i| unit_vec(self.ring, k, i)).collect();
        for n in self.relations.basis() {
            for (j, q) in units.iter().enumerate() {
                if !self.relations.contains(&self.mul(n, q)).unwrap_or(false)
                    || !self.relations.contains(&self.mul(q, n)).unwrap_or(false)
                {
                    bad.push(Violation::new(
                        "well_defined",
                        format!("product of relation {} with q{j} leaves the relations", format_vec(n)),
                    ));
                }
            }
        }
        'assoc: for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let left = self.mul(&self.structure[i][j], &units[l]);
                    let right = self.mul(&units[i], &self.structure[j][l]);
                    let diff: Vec<Coeff> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
                    if !self.relations.contains(&diff).unwrap_or(false) {
                        bad.push(Violation::new(
                            "associativity",
                            format!("(q{i}·q{j})·q{l} differs from q{i}·(q{j}·q{l})"),
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        let gens = Submodule::new(self.ring, k, self.images.clone()).expect("dims").sum(&self.relations).expect("dims");
        let closure = self.closure_submodule(&gens, ClosureMode::Subalgebra);
        if closure != Submodule::full(self.ring, k) {
            bad.push(Violation::new(
                "surjectivity",
                "the images of the variables do not generate the algebra",
            ));
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    pub fn structure(&self) -> &[Vec<Vec<Coeff>>] {
        &self.structure
    }

    pub fn images(&self) -> &[Vec<Coeff>] {
        &self.images
    }

    pub fn marked(&self) -> &Submodule {
        &self.marked
    }

    /// `S + N_Q`, the submodule whose preimage is `B`.
    pub fn marked_full(&self) -> &Submodule {
        &self.marked_full
    }

    /// Bilinear product of coordinate vectors (not reduced).
    pub fn mul(&self, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let mut out = vec![self.ring.zero(); self.rank];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ai * bj), &self.structure[i][j]);
            }
        }
        out
    }

    /// `π(p)` reduced modulo `N_Q`. `p` must have no constant term.
    pub fn eval(&self, p: &Polynomial) -> Result<Vec<Coeff>> {
        if p.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.name(), p.ring().name()));
        }
        if p.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch("polynomial is not over the representation's alphabet".into()));
        }
        if !p.constant_term().is_zero() {
            return Err(Error::UnitalMismatch("π is defined on K⟨X⟩ only".into()));
        }
        let mut out = vec![self.ring.zero(); self.rank];
        let mut groups: BTreeMap<u32, Vec<(&[u32], &Coeff)>> = BTreeMap::new();
        for (w, c) in p.terms() {
            let (&x, rest) = w.letters().split_first().expect("nonempty word");
            groups.entry(x).or_default().push((rest, c));
        }
        for (x, sub) in groups {
            let v = self.eval_from(self.images[x as usize].clone(), sub);
            axpy(&mut out, &self.ring.one(), &v);
        }
        Ok(self.relations.reduce(&out)?.0)
    }

    fn eval_from(&self, prefix: Vec<Coeff>, terms: Vec<(&[u32], &Coeff)>) -> Vec<Coeff> {
        let mut out = vec![self.ring.zero(); self.rank];
        let mut groups: BTreeMap<u32, Vec<(&[u32], &Coeff)>> = BTreeMap::new();
        for (w, c) in terms {
            match w.split_first() {
                None => axpy(&mut out, c, &prefix),
                Some((&x, rest)) => groups.entry(x).or_default().push((rest, c)),
            }
        }
        for (x, sub) in groups {
            let next = self.mul(&prefix, &self.images[x as usize]);
            let next = self.relations.reduce(&next).expect("dims").0;
            let v = self.eval_from(next, sub);
            axpy(&mut out, &self.ring.one(), &v);
        }
        out
    }

    pub fn is_member(&self, p: &Polynomial) -> Result<bool> {
        if !p.constant_term().is_zero() {
            return Ok(false);
        }
        self.marked_full.contains(&self.eval(p)?)
    }

    fn products_stay(&self, left: &[Vec<Coeff>], right: &[Vec<Coeff>]) -> bool {
        left.iter().all(|a| right.iter().all(|b| self.marked_full.contains(&self.mul(a, b)).unwrap_or(false)))
    }

    pub fn classify(&self) -> IdealClass {
        let s = self.marked_full.basis();
        let units: Vec<Vec<Coeff>> = (0..self.rank).map(|i| unit_vec(self.ring, self.rank, i)).collect();
        if !self.products_stay(s, s) {
            return IdealClass::SubmoduleOnly;
        }
        match (self.products_stay(s, &units), self.products_stay(&units, s)) {
            (true, true) => IdealClass::TwoSidedIdeal,
            (true, false) => IdealClass::RightIdeal,
            _ => IdealClass::Subalgebra,
        }
    }

    /// Minimal number of generators of `Q/(S + N)`, that is of `K⟨X⟩/B`.
    pub fn corank(&self) -> usize {
        quotient_presentation(&self.marked_full).rank()
    }

    pub fn summary(&self) -> String {
        format!("{}, co-rank {}", self.classify().describe(), self.corank())
    }

    /// Smallest submodule containing `seed` and closed under the requested
    /// products.
    pub fn closure_submodule(&self, seed: &Submodule, mode: ClosureMode) -> Submodule {
        let units: Vec<Vec<Coeff>> = (0..self.rank).map(|i| unit_vec(self.ring, self.rank, i)).collect();
        let mut current = seed.clone();
        loop {
            let basis = current.basis().to_vec();
            let mut more = Vec::new();
            match mode {
                ClosureMode::LeftRightIdeal => {
                    for s in &basis {
                        for q in &units {
                            more.push(self.mul(s, q));
                            more.push(self.mul(q, s));
                        }
                    }
                }
                ClosureMode::Subalgebra => {
                    for a in &basis {
                        for b in &basis {
                            more.push(self.mul(a, b));
                        }
                    }
                }
            }
            let next = current.extend(more).expect("dims");
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Polynomials `P_i` with `π(P_i) ≡ q_i` modulo `N_Q`, found among
    /// combinations of the shortest words whose images generate `Q`.
    pub fn preimage_basis(&self) -> Result<Vec<Polynomial>> {
        let k = self.rank;
        let full = Submodule::full(self.ring, k);
        let mut words: Vec<Word> = Vec::new();
        let mut images: Vec<Vec<Coeff>> = Vec::new();
        let mut span = self.relations.clone();
        // a word is extended only when its image enlarges the span; images of
        // extensions of skipped words lie in the span of extensions of kept ones
        let mut queue: std::collections::VecDeque<(Word, Vec<Coeff>)> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, v)| (Word::letter(i as u32), v.clone()))
            .collect();
        while let Some((w, v)) = queue.pop_front() {
            if span.contains(&v)? {
                continue;
            }
            span = span.extend([v.clone()])?;
            for (x, img) in self.images.iter().enumerate() {
                let nv = self.relations.reduce(&self.mul(&v, img))?.0;
                let mut nw = w.0.clone();
                nw.push(x as u32);
                queue.push_back((Word(nw), nv));
            }
            words.push(w);
            images.push(v);
        }
        if span != full {
            return Err(Error::Hypothesis("π is not surjective".into()));
        }
        let map = Matrix::new(self.ring, k, images.iter().chain(self.relations.basis()).cloned().collect())?;
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let c = solve_linear(&map, &unit_vec(self.ring, k, i))?
                .ok_or_else(|| Error::Internal("unit vector outside the span of word images".into()))?;
            let terms = words.iter().cloned().zip(c.into_iter().take(words.len()));
            out.push(Polynomial::from_terms(self.ring, &self.alphabet, false, terms)?);
        }
        Ok(out)
    }

    /// The enclosed two-sided ideal of Lemma-style reduction: with
    /// `V₁ = {1} ∪ {q_i}`, `H' = { s ∈ S : u·s·v ∈ S for all u, v ∈ V₁ }`,
    /// `J` the two-sided closure of `H'`, the result presents `Q/J` with
    /// marked submodule `S/J`. `I = π⁻¹(J)` is a two-sided ideal inside `B`.
    pub fn reduce_to_ideal(&self) -> Result<ReducedIdeal> {
        if self.classify() == IdealClass::SubmoduleOnly {
            return Err(Error::Hypothesis("the marked submodule does not define a subalgebra".into()));
        }
        let k = self.rank;
        let ring = self.ring;
        let s = self.marked_full.basis().to_vec();
        let mut v1: Vec<Option<Vec<Coeff>>> = vec![None];
        v1.extend((0..k).map(|i| Some(unit_vec(ring, k, i))));
        let mut blocks = Vec::new();
        for u in &v1 {
            for v in &v1 {
                if u.is_none() && v.is_none() {
                    continue;
                }
                let col: Vec<Vec<Coeff>> = s
                    .iter()
                    .map(|si| {
                        let left = match u {
                            Some(u) => self.mul(u, si),
                            None => si.clone(),
                        };
                        match v {
                            Some(v) => self.mul(&left, v),
                            None => left,
                        }
                    })
                    .collect();
                blocks.push(col);
            }
        }
        let h_prime = if s.is_empty() {
            Submodule::zero(ring, k)
        } else {
            let width = blocks.len() * k;
            let rows: Vec<Vec<Coeff>> =
                (0..s.len()).map(|i| blocks.iter().flat_map(|b| b[i].iter().cloned()).collect()).collect();
            let modulus_gens: Vec<Vec<Coeff>> = (0..blocks.len())
                .flat_map(|bi| {
                    self.marked_full.basis().iter().map(move |g| {
                        let mut row = vec![ring.zero(); width];
                        row[bi * k..(bi + 1) * k].clone_from_slice(g);
                        row
                    })
                })
                .collect();
            let modulus = Submodule::new(ring, width, modulus_gens)?;
            let kern = kernel_modulo(&Matrix::new(ring, width, rows)?, &modulus)?;
            let gens = kern
                .basis()
                .iter()
                .map(|c| {
                    let mut v = vec![ring.zero(); k];
                    for (ci, si) in c.iter().zip(&s) {
                        axpy(&mut v, ci, si);
                    }
                    v
                })
                .collect();
            Submodule::new(ring, k, gens)?
        };
        let j = self.closure_submodule(&h_prime.sum(&self.relations)?, ClosureMode::LeftRightIdeal);
        let quotient = quotient_presentation(&j);
        let g = quotient.rank();
        let lifts = quotient.lift.rows().to_vec();
        let mut structure = vec![vec![vec![]; g]; g];
        for (a, la) in lifts.iter().enumerate() {
            for (b, lb) in lifts.iter().enumerate() {
                structure[a][b] = quotient.project(&self.mul(la, lb))?;
            }
        }
        let relations = quotient.presentation.relations.rows().to_vec();
        let images = self.images.iter().map(|v| quotient.project(v)).collect::<Result<Vec<_>>>()?;
        let marked = self.marked_full.basis().iter().map(|v| quotient.project(v)).collect::<Result<Vec<_>>>()?;
        let rep = AlgebraRep::new(ring, self.alphabet.clone(), g, relations, structure, images, marked)?;
        Ok(ReducedIdeal { rep, h_prime, j, quotient })
    }
}

/// Output of [`AlgebraRep::reduce_to_ideal`].
#[derive(Clone, Debug)]
pub struct ReducedIdeal {
    /// `Q/J` with marked submodule `S/J`; its zero submodule's preimage is `I`.
    pub rep: AlgebraRep,
    pub h_prime: Submodule,
    pub j: Submodule,
    pub quotient: QuotientModule,
}

impl ReducedIdeal {
    /// Membership in `I = π⁻¹(J)`.
    pub fn in_ideal(&self, p: &Polynomial) -> Result<bool> {
        if !p.constant_term().is_zero() {
            return Ok(false);
        }
        self.rep.relations().contains(&self.rep.eval(p)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    /// `Q = span(t, t²)`, `t·t = t²`, other products zero, `π(x) = t`.
    pub(crate) fn truncated(marked: Vec<Vec<i64>>) -> AlgebraRep {
        let q = Ring::Rationals;
        let v = |a: &[i64]| a.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        AlgebraRep::new(
            q,
            Alphabet::new(["x"]).unwrap(),
            2,
            vec![],
            vec![vec![v(&[0, 1]), v(&[0, 0])], vec![v(&[0, 0]), v(&[0, 0])]],
            vec![v(&[1, 0])],
            marked.iter().map(|m| v(m)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn closure_examples() {
        let rep = truncated(vec![vec![0, 1]]);
        let q = rep.ring();
        let seed = rep.marked().clone();
        assert_eq!(rep.closure_submodule(&seed, ClosureMode::LeftRightIdeal), seed);
        let zero = Submodule::zero(q, 2);
        assert_eq!(rep.closure_submodule(&zero, ClosureMode::LeftRightIdeal), zero);
        let full = Submodule::full(q, 2);
        assert_eq!(rep.closure_submodule(&full, ClosureMode::Subalgebra), full);
    }

    #[test]
    fn membership_and_class() {
        let rep = truncated(vec![vec![0, 1]]);
        let a = rep.alphabet().clone();
        let q = rep.ring();
        assert!(rep.is_member(&parse_poly("x^2 + 7*x^5", &a, q, false).unwrap()).unwrap());
        assert!(!rep.is_member(&parse_poly("x", &a, q, false).unwrap()).unwrap());
        assert_eq!(rep.classify(), IdealClass::TwoSidedIdeal);
    }

    #[test]
    fn reduction_of_an_ideal_is_itself() {
        let rep = truncated(vec![vec![0, 1]]);
        let red = rep.reduce_to_ideal().unwrap();
        assert_eq!(red.h_prime, *rep.marked());
        assert_eq!(red.j, *rep.marked());
        assert_eq!(red.rep.rank(), 1);
        assert!(red.rep.marked_full().is_zero());
        let a = rep.alphabet().clone();
        let q = rep.ring();
        let x2 = parse_poly("x^2", &a, q, false).unwrap();
        assert!(red.in_ideal(&x2).unwrap());
        assert!(!red.in_ideal(&parse_poly("x", &a, q, false).unwrap()).unwrap());
    }

    #[test]
    fn extreme_marked_submodules() {
        let none = truncated(vec![]).reduce_to_ideal().unwrap();
        assert!(none.j.is_zero());
        let all = truncated(vec![vec![1, 0], vec![0, 1]]).reduce_to_ideal().unwrap();
        assert_eq!(all.j, Submodule::full(Ring::Rationals, 2));
        assert_eq!(all.rep.rank(), 0);
    }

    #[test]
    fn preimages() {
        let rep = truncated(vec![vec![0, 1]]);
        let pre = rep.preimage_basis().unwrap();
        assert_eq!(pre[0].to_string(), "x");
        assert_eq!(pre[1].to_string(), "x^2");
    }

    #[test]
    fn non_closed_marked_submodule() {
        let rep = truncated(vec![vec![1, 0]]);
        assert_eq!(rep.classify(), IdealClass::SubmoduleOnly);
        assert!(rep.reduce_to_ideal().is_err());
    }
}
