//! Finite generating sets for subalgebras of finite co-rank in `K⟨X⟩`, and
//! rewriting of members as algebra combinations of those generators.
//!
//! With `Y ⊆ X` whose images generate `Q/S`, every `p` has a linear `γ(p)`
//! over `Y` with `p − γ(p) ∈ B`. The generators are `w − γ(w)` for words of
//! length one to three, plus a basis of `B ∩ span(Y)`. A word of length
//! `m ≥ 4` cut into blocks of length two (the last of length two or three)
//! is the leading term of the product of the corresponding generators, which
//! drives the rewriting by induction on the degree.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{enumerate_words, Alphabet, Polynomial, Word};
use crate::error::{Error, Result};
use crate::linalg::{kernel_modulo, quotient_presentation, solve_linear, unit_vec, Matrix, QuotientModule, Submodule};
use crate::quotient::{AlgebraRep, IdealClass};
use crate::ring::Coeff;

/// A subalgebra `B = π⁻¹(S + N)` together with the variables `Y` whose
/// images generate `Q/S`.
#[derive(Clone, Debug)]
pub struct GenerationSpec {
    rep: AlgebraRep,
    y: Vec<u32>,
    quotient: QuotientModule,
}

impl GenerationSpec {
    pub fn new(rep: AlgebraRep, y: Vec<u32>) -> Result<GenerationSpec> {
        if rep.classify() == IdealClass::SubmoduleOnly {
            return Err(Error::Hypothesis("the marked submodule is not closed under products".into()));
        }
        let mut sorted = y.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != y.len() || y.iter().any(|&i| i as usize >= rep.alphabet().len()) {
            return Err(Error::Hypothesis("Y must list distinct variables".into()));
        }
        let spanned = rep.marked_full().extend(y.iter().map(|&i| rep.images()[i as usize].clone()))?;
        if spanned != Submodule::full(rep.ring(), rep.rank()) {
            return Err(Error::Hypothesis(
                "the images of Y do not generate Q/S; add variables mapping to the missing generators \
                 (see GenerationSpec::with_extended_alphabet)"
                    .into(),
            ));
        }
        let quotient = quotient_presentation(rep.marked_full());
        Ok(GenerationSpec { rep, y, quotient })
    }

    /// Adds a fresh variable `w1, w2, …` for every basis vector of `Q` that
    /// the images of `X` and `S` do not already reach, and takes `Y` to be
    /// every variable.
    pub fn with_extended_alphabet(rep: &AlgebraRep) -> Result<GenerationSpec> {
        let ring = rep.ring();
        let k = rep.rank();
        let mut span = rep.marked_full().extend(rep.images().iter().cloned())?;
        let mut names: Vec<String> = rep.alphabet().names().to_vec();
        let mut images = rep.images().to_vec();
        for i in 0..k {
            let e = unit_vec(ring, k, i);
            if !span.contains(&e)? {
                names.push(format!("w{}", names.len() - rep.alphabet().len() + 1));
                images.push(e.clone());
                span = span.extend([e])?;
            }
        }
        let extended = AlgebraRep::new(
            ring,
            Alphabet::new(names)?,
            k,
            rep.relations().basis().to_vec(),
            rep.structure().to_vec(),
            images,
            rep.marked().basis().to_vec(),
        )?;
        let y = (0..extended.alphabet().len() as u32).collect();
        GenerationSpec::new(extended, y)
    }

    pub fn rep(&self) -> &AlgebraRep {
        &self.rep
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    /// Quotient coordinates of `π(p)` in `Q/(S + N)`.
    fn class(&self, p: &Polynomial) -> Result<Vec<Coeff>> {
        self.quotient.project(&self.rep.eval(p)?)
    }

    /// `γ(p)`: the canonical linear polynomial over `Y` with `p − γ(p) ∈ B`.
    /// It depends only on the coset `p + B`.
    pub fn gamma(&self, p: &Polynomial) -> Result<Polynomial> {
        let ring = self.rep.ring();
        let a = self.rep.alphabet();
        let target = self.class(&p.to_nonunital()?)?;
        let g = self.quotient.rank();
        let mut rows: Vec<Vec<Coeff>> = self
            .y
            .iter()
            .map(|&i| self.class(&Polynomial::var(ring, a, false, i)))
            .collect::<Result<_>>()?;
        for (i, d) in self.quotient.moduli.iter().enumerate() {
            if !d.is_zero() {
                let mut r = vec![ring.zero(); g];
                r[i] = d.clone();
                rows.push(r);
            }
        }
        let mut out = Polynomial::zero(ring, a, false);
        if g == 0 {
            return Ok(out);
        }
        let c = solve_linear(&Matrix::new(ring, g, rows)?, &target)?
            .ok_or_else(|| Error::Internal("γ has no solution although Y generates Q/S".into()))?;
        for (&yi, ci) in self.y.iter().zip(&c) {
            out.add_term(Word::letter(yi), ci);
        }
        Ok(out)
    }
}

/// Where a generator came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `w − γ(w)`.
    U(Word),
    /// A basis element of `B ∩ span(Y)`.
    Z(usize),
}

#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub u_part: Vec<Polynomial>,
    pub u_words: Vec<Word>,
    pub z_part: Vec<Polynomial>,
    /// Number of words `w` with `w − γ(w) = 0`.
    pub dropped: usize,
}

impl GeneratingSet {
    /// `V = U ∪ Z`, in that order.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.u_part.iter().chain(&self.z_part).cloned().collect()
    }

    pub fn provenance(&self) -> Vec<Provenance> {
        self.u_words
            .iter()
            .cloned()
            .map(Provenance::U)
            .chain((0..self.z_part.len()).map(Provenance::Z))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.u_part.len() + self.z_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `U = { w − γ(w) : 1 ≤ |w| ≤ 3 }` without zeros, and `Z` a canonical basis
/// of `B ∩ span(Y)`.
pub fn finite_generating_set(spec: &GenerationSpec) -> Result<GeneratingSet> {
    let ring = spec.rep.ring();
    let a = spec.rep.alphabet();
    let mut u_part = Vec::new();
    let mut u_words = Vec::new();
    let mut dropped = 0;
    for w in enumerate_words(a, 1, 3) {
        let p = Polynomial::monomial(ring, a, false, w.clone(), ring.one())?;
        let u = &p - &spec.gamma(&p)?;
        if u.is_zero() {
            dropped += 1;
        } else {
            u_part.push(u);
            u_words.push(w);
        }
    }
    let y_images = spec.y.iter().map(|&i| spec.rep.images()[i as usize].clone()).collect();
    let map = Matrix::new(ring, spec.rep.rank(), y_images)?;
    let z = kernel_modulo(&map, spec.rep.marked_full())?;
    let z_part = z
        .basis()
        .iter()
        .map(|c| {
            let mut p = Polynomial::zero(ring, a, false);
            for (&yi, ci) in spec.y.iter().zip(c) {
                p.add_term(Word::letter(yi), ci);
            }
            p
        })
        .collect();
    Ok(GeneratingSet { u_part, u_words, z_part, dropped })
}

/// An expression in the generators built from sums with scalars and
/// products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraCombination {
    Leaf(usize),
    Sum(Vec<(Coeff, AlgebraCombination)>),
    Product(Vec<AlgebraCombination>),
}

impl AlgebraCombination {
    pub fn zero() -> AlgebraCombination {
        AlgebraCombination::Sum(vec![])
    }

    pub fn evaluate(&self, gens: &[Polynomial], like: &Polynomial) -> Polynomial {
        match self {
            AlgebraCombination::Leaf(i) => gens[*i].clone(),
            AlgebraCombination::Sum(terms) => {
                let mut out = Polynomial::zero(like.ring(), like.alphabet(), like.is_unital());
                for (c, t) in terms {
                    out.add_scaled(c, &t.evaluate(gens, like));
                }
                out
            }
            AlgebraCombination::Product(factors) => {
                let mut it = factors.iter();
                let first = it.next().expect("products have factors").evaluate(gens, like);
                it.fold(first, |acc, f| &acc * &f.evaluate(gens, like))
            }
        }
    }

    /// Renders with each generator shown as its polynomial in parentheses.
    pub fn render(&self, gens: &[Polynomial]) -> String {
        Render(self, gens).to_string()
    }
}

struct Render<'a>(&'a AlgebraCombination, &'a [Polynomial]);

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            AlgebraCombination::Leaf(i) => write!(f, "({})", self.1[*i]),
            AlgebraCombination::Product(factors) => {
                for (i, c) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{}", Render(c, self.1))?;
                }
                Ok(())
            }
            AlgebraCombination::Sum(terms) => {
                if terms.is_empty() {
                    return f.write_str("0");
                }
                for (i, (c, t)) in terms.iter().enumerate() {
                    let inner = Render(t, self.1);
                    let wrap = matches!(t, AlgebraCombination::Sum(_));
                    let body = if wrap { format!("[{inner}]") } else { inner.to_string() };
                    let neg = c.is_negative();
                    let mag = c.abs();
                    match (i, neg) {
                        (0, false) => {}
                        (0, true) => f.write_str("-")?,
                        (_, false) => f.write_str(" + ")?,
                        (_, true) => f.write_str(" - ")?,
                    }
                    if mag.is_one() {
                        write!(f, "{body}")?;
                    } else {
                        write!(f, "{mag}*{body}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn sum(terms: Vec<(Coeff, AlgebraCombination)>) -> AlgebraCombination {
    let terms: Vec<_> = terms
        .into_iter()
        .filter(|(c, t)| !c.is_zero() && t != &AlgebraCombination::zero())
        .collect();
    if terms.len() == 1 && terms[0].0.is_one() {
        return terms.into_iter().next().unwrap().1;
    }
    AlgebraCombination::Sum(terms)
}

/// Writes a member `p` of `B` as an algebra combination of the generating
/// set, by induction on the degree.
pub fn rewrite_member(spec: &GenerationSpec, genset: &GeneratingSet, p: &Polynomial) -> Result<AlgebraCombination> {
    if !spec.rep.is_member(p)? {
        return Err(Error::NotMember(p.to_string()));
    }
    let gens = genset.generators();
    let index: HashMap<&Word, usize> = genset.u_words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let combo = rewrite(spec, genset, &gens, &index, p)?;
    if &combo.evaluate(&gens, p) != p {
        return Err(Error::Internal(format!("rewriting of `{p}` does not evaluate back")));
    }
    Ok(combo)
}

fn rewrite(
    spec: &GenerationSpec,
    genset: &GeneratingSet,
    gens: &[Polynomial],
    index: &HashMap<&Word, usize>,
    p: &Polynomial,
) -> Result<AlgebraCombination> {
    let ring = spec.rep.ring();
    let Some(m) = p.degree() else { return Ok(AlgebraCombination::zero()) };
    if let Some(i) = gens.iter().position(|g| g == p) {
        return Ok(AlgebraCombination::Leaf(i));
    }
    if m <= 3 {
        // p = Σ α_w (w − γ(w)) + Σ α_w γ(w); the second sum lies in B ∩ span(Y).
        let mut terms = Vec::new();
        let mut linear = p.clone();
        for (w, c) in p.terms() {
            if let Some(&i) = index.get(w) {
                terms.push((c.clone(), AlgebraCombination::Leaf(i)));
                linear.add_scaled(&-c, &gens[i]);
            }
        }
        if !linear.is_zero() {
            let nz = genset.z_part.len();
            if nz == 0 {
                return Err(Error::Internal(format!("`{linear}` is not spanned by Z")));
            }
            let coords = |q: &Polynomial| -> Vec<Coeff> {
                spec.y.iter().map(|&yi| q.coeff(&Word::letter(yi))).collect()
            };
            let map = Matrix::new(ring, spec.y.len(), genset.z_part.iter().map(coords).collect())?;
            let c = solve_linear(&map, &coords(&linear))?
                .ok_or_else(|| Error::Internal(format!("`{linear}` is not spanned by Z")))?;
            for (j, cj) in c.into_iter().enumerate() {
                terms.push((cj, AlgebraCombination::Leaf(genset.u_part.len() + j)));
            }
        }
        return Ok(sum(terms));
    }
    let mut terms = Vec::new();
    let mut rest = p.clone();
    for (w, c) in p.terms().iter().filter(|(w, _)| w.len() == m) {
        let letters = w.letters();
        let mut blocks: Vec<&[u32]> = letters.chunks(2).collect();
        if m % 2 == 1 {
            let last = blocks.pop().expect("odd length");
            let prev = blocks.pop().expect("length at least 5");
            blocks.push(&letters[letters.len() - 3..]);
            debug_assert_eq!(prev.len() + last.len(), 3);
        }
        let factors: Vec<usize> = blocks.iter().map(|b| index[&Word(b.to_vec())]).collect();
        let mut prod = gens[factors[0]].clone();
        for &f in &factors[1..] {
            prod = &prod * &gens[f];
        }
        rest.add_scaled(&-c, &prod);
        terms.push((c.clone(), AlgebraCombination::Product(factors.into_iter().map(AlgebraCombination::Leaf).collect())));
    }
    if rest.degree().is_some_and(|d| d >= m) {
        return Err(Error::Internal("rewriting step did not lower the degree".into()));
    }
    let tail = rewrite(spec, genset, gens, index, &rest)?;
    terms.push((ring.one(), tail));
    Ok(sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::fixtures::{f2_parity, sub2};

    fn spec() -> GenerationSpec {
        GenerationSpec::new(sub2(), vec![0]).unwrap()
    }

    fn p(s: &GenerationSpec, text: &str) -> Polynomial {
        parse_poly(text, s.rep().alphabet(), s.rep().ring(), false).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let s = spec();
        assert_eq!(s.gamma(&p(&s, "3*x + 5*x^2")).unwrap().to_string(), "3*x");
        assert!(s.gamma(&p(&s, "x^2")).unwrap().is_zero());
        assert!(s.gamma(&p(&s, "0")).unwrap().is_zero());
    }

    #[test]
    fn sub2_generators() {
        let s = spec();
        let g = finite_generating_set(&s).unwrap();
        let shown: Vec<String> = g.generators().iter().map(|q| q.to_string()).collect();
        assert_eq!(shown, ["x^2", "x^3"]);
        assert_eq!(g.dropped, 1);
        assert!(g.z_part.is_empty());
    }

    #[test]
    fn sub2_rewrites() {
        let s = spec();
        let g = finite_generating_set(&s).unwrap();
        let gens = g.generators();
        let x4 = rewrite_member(&s, &g, &p(&s, "x^4")).unwrap();
        assert_eq!(x4, AlgebraCombination::Product(vec![AlgebraCombination::Leaf(0), AlgebraCombination::Leaf(0)]));
        assert_eq!(x4.render(&gens), "(x^2)*(x^2)");
        let x5 = rewrite_member(&s, &g, &p(&s, "x^5")).unwrap();
        assert_eq!(x5.render(&gens), "(x^2)*(x^3)");
        assert_eq!(rewrite_member(&s, &g, &p(&s, "x^3")).unwrap(), AlgebraCombination::Leaf(1));
        let mixed = p(&s, "2*x^7 - x^6 + 3*x^2");
        assert_eq!(rewrite_member(&s, &g, &mixed).unwrap().evaluate(&gens, &mixed), mixed);
        assert!(matches!(rewrite_member(&s, &g, &p(&s, "x")), Err(Error::NotMember(_))));
    }

    #[test]
    fn f2_parity_generators() {
        let s = GenerationSpec::new(f2_parity(), vec![0]).unwrap();
        let q = p(&s, "x*y + y + x");
        assert_eq!(s.gamma(&q).unwrap().to_string(), "x");
        let g = finite_generating_set(&s).unwrap();
        assert!(g.u_part.len() <= 14);
        for v in g.generators() {
            assert!(s.rep().is_member(&v).unwrap());
        }
        let member = p(&s, "x*y*x*y*x + y^5 + x^2*y + y^3");
        let combo = rewrite_member(&s, &g, &member).unwrap();
        assert_eq!(combo.evaluate(&g.generators(), &member), member);
    }

    #[test]
    fn y_must_generate() {
        let r = sub2();
        assert!(matches!(GenerationSpec::new(r.clone(), vec![]), Err(Error::Hypothesis(_))));
        let s = GenerationSpec::with_extended_alphabet(&r).unwrap();
        assert_eq!(s.rep().alphabet().len(), 1);
    }
}
