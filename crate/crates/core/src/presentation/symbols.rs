use std::collections::BTreeMap;

use crate::algebra::{AlgebraHom, Alphabet, Polynomial, Word};
use crate::error::{Error, Result};
use crate::quotient::CyclicModuleRep;
use crate::ring::{Coeff, Ring};

/// The symbol sets `T = {t[a,x,b]}` and `V = {v[b]}` for a cyclic module
/// representation, with the homomorphism `ψ : K⟨T ∪ V⟩ → K⟨X⟩¹`.
///
/// Basis labels are indexed `0 ..= k` with `0` standing for the identity
/// (label `1`, representative the empty word).
#[derive(Clone, Debug)]
pub struct SymbolTables {
    ring: Ring,
    x: Alphabet,
    labels: Vec<String>,
    t: Alphabet,
    z: Alphabet,
    /// `reps[0] = 1`, `reps[b] = r_b`, all in `K⟨X⟩¹`.
    reps: Vec<Polynomial>,
    /// `cosets[b][x] = ⟨r_b · x⟩`, a vector over `b₁ … b_k`.
    cosets: Vec<Vec<Vec<Coeff>>>,
    /// `ψ(t)` for every `t ∈ T`, in `K⟨X⟩`.
    psi_t: Vec<Polynomial>,
}

impl SymbolTables {
    pub fn new(rep: &CyclicModuleRep) -> Result<SymbolTables> {
        let ring = rep.ring();
        let x = rep.alphabet().clone();
        let mut labels = vec!["1".to_string()];
        labels.extend(rep.labels().iter().cloned());
        let nb = labels.len();
        let nx = x.len();
        let mut t_names = Vec::with_capacity(nx * nb * nb);
        for a in &labels {
            for xn in x.names() {
                for b in &labels {
                    t_names.push(format!("t[{a},{xn},{b}]"));
                }
            }
        }
        let v_names: Vec<String> = labels.iter().map(|b| format!("v[{b}]")).collect();
        let t = Alphabet::new(t_names.clone())?;
        let z = Alphabet::new(t_names.into_iter().chain(v_names))?;

        let mut reps = vec![Polynomial::one(ring, &x)];
        reps.extend(rep.representatives().iter().map(Polynomial::embed_unital));
        let mut cosets = Vec::with_capacity(nb);
        let mut head = Vec::with_capacity(nb); // r_a x − Σ ⟨r_a x⟩_c r_c
        for r in &reps {
            let mut row = Vec::with_capacity(nx);
            let mut heads = Vec::with_capacity(nx);
            for xi in 0..nx as u32 {
                let rx = (r * &Polynomial::var(ring, &x, true, xi)).to_nonunital()?;
                let c = rep.coset_vector(&rx)?;
                let mut h = rx.embed_unital();
                for (cc, rc) in c.iter().zip(&reps[1..]) {
                    h.add_scaled(&-cc, rc);
                }
                row.push(c);
                heads.push(h);
            }
            cosets.push(row);
            head.push(heads);
        }
        let mut psi_t = Vec::with_capacity(t.len());
        for a in 0..nb {
            for xi in 0..nx {
                for rb in &reps {
                    psi_t.push((&head[a][xi] * rb).to_nonunital()?);
                }
            }
        }
        Ok(SymbolTables { ring, x, labels, t, z, reps, cosets, psi_t })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn x_alphabet(&self) -> &Alphabet {
        &self.x
    }

    /// `T` on its own.
    pub fn t_alphabet(&self) -> &Alphabet {
        &self.t
    }

    /// `Z = T ∪ V`, with `T` first.
    pub fn z_alphabet(&self) -> &Alphabet {
        &self.z
    }

    /// `1, b₁, …, b_k`.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn t_count(&self) -> usize {
        self.t.len()
    }

    pub fn v_count(&self) -> usize {
        self.labels.len()
    }

    pub fn t_index(&self, a: usize, x: usize, b: usize) -> u32 {
        let nb = self.labels.len();
        ((a * self.x.len() + x) * nb + b) as u32
    }

    /// `(a, x, b)` of a `T` symbol.
    pub fn decode_t(&self, i: u32) -> (usize, usize, usize) {
        let nb = self.labels.len();
        let i = i as usize;
        (i / (self.x.len() * nb), (i / nb) % self.x.len(), i % nb)
    }

    pub fn v_index(&self, b: usize) -> u32 {
        (self.t.len() + b) as u32
    }

    pub fn representative(&self, b: usize) -> &Polynomial {
        &self.reps[b]
    }

    /// `⟨r_b x⟩`.
    pub fn coset(&self, b: usize, x: usize) -> &[Coeff] {
        &self.cosets[b][x]
    }

    pub fn psi_t(&self, i: u32) -> &Polynomial {
        &self.psi_t[i as usize]
    }

    /// `ψ` as a homomorphism `K⟨Z⟩ → K⟨X⟩¹`.
    pub fn psi_hom(&self) -> AlgebraHom {
        let images = self
            .psi_t
            .iter()
            .map(Polynomial::embed_unital)
            .chain(self.reps.iter().cloned())
            .collect();
        AlgebraHom::new(self.ring, &self.z, &self.x, true, images).expect("well-formed ψ")
    }

    /// `ψ` restricted to `K⟨T⟩`, landing in `K⟨X⟩`.
    pub fn psi_t_hom(&self) -> AlgebraHom {
        AlgebraHom::new(self.ring, &self.t, &self.x, false, self.psi_t.clone()).expect("well-formed ψ")
    }

    /// Evaluates `ψ` on a mixed element.
    pub fn psi_eval(&self, s: &MixedElement) -> Polynomial {
        let mut out = self.psi_t_hom().apply(&s.t_part).expect("T-polynomial").embed_unital();
        for (c, r) in s.v_part.iter().zip(&self.reps) {
            out.add_scaled(c, r);
        }
        out
    }

    /// `s * x` for a single letter.
    pub fn star_letter(&self, s: &MixedElement, x: usize) -> MixedElement {
        let k = self.labels.len() - 1;
        let mut t_out = self.star_letter_t(&s.t_part, x);
        let mut v_out = vec![self.ring.zero(); k + 1];
        for (b, vb) in s.v_part.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            t_out.add_term(Word::letter(self.t_index(b, x, 0)), vb);
            for (c, cc) in self.cosets[b][x].iter().enumerate() {
                if !cc.is_zero() {
                    v_out[c + 1] += &(vb * cc);
                }
            }
        }
        MixedElement { t_part: t_out, v_part: v_out }
    }

    /// The `*` action of a letter on `K⟨T⟩`, which stays inside `K⟨T⟩`.
    pub fn star_letter_t(&self, p: &Polynomial, x: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.ring, &self.t, false);
        for (w, c) in p.terms() {
            let (&last, prefix) = w.letters().split_last().expect("T-polynomials have no constant term");
            let (a, y, b) = self.decode_t(last);
            let mut word = prefix.to_vec();
            word.push(self.t_index(a, y, 0));
            word.push(self.t_index(b, x, 0));
            out.add_term(Word(word), c);
            for (ci, cc) in self.cosets[b][x].iter().enumerate() {
                if cc.is_zero() {
                    continue;
                }
                let mut word = prefix.to_vec();
                word.push(self.t_index(a, y, ci + 1));
                out.add_term(Word(word), &(c * cc));
            }
        }
        out
    }

    /// `s * p` for `p ∈ K⟨X⟩¹`, extended multiplicatively and linearly.
    pub fn star(&self, s: &MixedElement, p: &Polynomial) -> Result<MixedElement> {
        if p.alphabet() != &self.x || p.ring() != self.ring {
            return Err(Error::AlphabetMismatch("acting polynomial is not over X".into()));
        }
        let terms: Vec<(&[u32], &Coeff)> = p.terms().iter().map(|(w, c)| (w.letters(), c)).collect();
        Ok(self.star_terms(s, terms))
    }

    fn star_terms(&self, s: &MixedElement, terms: Vec<(&[u32], &Coeff)>) -> MixedElement {
        let mut out = MixedElement::zero(self);
        let mut groups: BTreeMap<u32, Vec<(&[u32], &Coeff)>> = BTreeMap::new();
        for (w, c) in terms {
            match w.split_first() {
                None => out.add_scaled(c, s),
                Some((&x, rest)) => groups.entry(x).or_default().push((rest, c)),
            }
        }
        for (x, sub) in groups {
            let next = self.star_letter(s, x as usize);
            let v = self.star_terms(&next, sub);
            out.add_scaled(&self.ring.one(), &v);
        }
        out
    }

    /// `φ(p) = v[1] * p`.
    pub fn phi(&self, p: &Polynomial) -> Result<MixedElement> {
        self.star(&MixedElement::v(self, 0), p)
    }
}

/// An element of `K⟨T⟩ + span(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElement {
    pub t_part: Polynomial,
    pub v_part: Vec<Coeff>,
}

impl MixedElement {
    pub fn zero(tables: &SymbolTables) -> MixedElement {
        MixedElement {
            t_part: Polynomial::zero(tables.ring, &tables.t, false),
            v_part: vec![tables.ring.zero(); tables.labels.len()],
        }
    }

    /// The basis element `v[b]`.
    pub fn v(tables: &SymbolTables, b: usize) -> MixedElement {
        let mut m = MixedElement::zero(tables);
        m.v_part[b] = tables.ring.one();
        m
    }

    pub fn from_t(tables: &SymbolTables, t_part: Polynomial) -> MixedElement {
        MixedElement { t_part, ..MixedElement::zero(tables) }
    }

    pub fn is_zero(&self) -> bool {
        self.t_part.is_zero() && self.v_part.iter().all(Coeff::is_zero)
    }

    pub fn add_scaled(&mut self, c: &Coeff, other: &MixedElement) {
        self.t_part.add_scaled(c, &other.t_part);
        crate::linalg::axpy(&mut self.v_part, c, &other.v_part);
    }

    /// As a polynomial over `Z = T ∪ V`.
    pub fn to_z_poly(&self, tables: &SymbolTables) -> Polynomial {
        let map: Vec<u32> = (0..tables.t.len() as u32).collect();
        let mut out = self.t_part.relabel(&tables.z, &map);
        for (b, c) in self.v_part.iter().enumerate() {
            out.add_term(Word::letter(tables.v_index(b)), c);
        }
        out
    }

    pub fn render(&self, tables: &SymbolTables) -> String {
        self.to_z_poly(tables).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::linalg::Matrix;

    pub(crate) fn aug1() -> CyclicModuleRep {
        let q = Ring::Rationals;
        let x = Alphabet::new(["x"]).unwrap();
        CyclicModuleRep::new(
            q,
            x.clone(),
            vec!["x".into()],
            vec![parse_poly("x", &x, q, false).unwrap()],
            vec![],
            vec![Matrix::from_i64(q, &[&[0, 1], &[0, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn aug1_tables() {
        let rep = aug1();
        let tab = SymbolTables::new(&rep).unwrap();
        assert_eq!(tab.t_count(), 4);
        assert_eq!(tab.v_count(), 2);
        assert_eq!(tab.t_alphabet().names(), &["t[1,x,1]", "t[1,x,x]", "t[x,x,1]", "t[x,x,x]"]);
        assert!(tab.psi_t(tab.t_index(0, 0, 0)).is_zero());
        assert_eq!(tab.psi_t(tab.t_index(1, 0, 0)).to_string(), "x^2 - x");
        assert_eq!(tab.psi_t(tab.t_index(1, 0, 1)).to_string(), "x^3 - x^2");
        for i in 0..tab.t_count() as u32 {
            assert!(rep.is_member(tab.psi_t(i)).unwrap());
        }
    }

    #[test]
    fn aug1_actions() {
        let rep = aug1();
        let tab = SymbolTables::new(&rep).unwrap();
        let q = rep.ring();
        let p = |s: &str| parse_poly(s, rep.alphabet(), q, true).unwrap();
        let v1x = tab.star(&MixedElement::v(&tab, 0), &p("x")).unwrap();
        assert_eq!(v1x.render(&tab), "t[1,x,1] + v[x]");
        let vxx = tab.star(&MixedElement::v(&tab, 1), &p("x")).unwrap();
        assert_eq!(vxx.render(&tab), "t[x,x,1] + v[x]");
        let s = tab.star(&v1x, &p("1")).unwrap();
        assert_eq!(s, v1x);
        let f = tab.phi(&p("x^2 - x")).unwrap();
        let expected = parse_poly("t[1,x,1]^2 + t[1,x,x] + t[x,x,1] - t[1,x,1]", tab.z_alphabet(), q, false).unwrap();
        assert_eq!(f.to_z_poly(&tab), expected);
        assert_eq!(tab.psi_eval(&f), p("x^2 - x"));
        assert_eq!(tab.phi(&p("1")).unwrap(), MixedElement::v(&tab, 0));
        assert_eq!(tab.psi_eval(&MixedElement::v(&tab, 0)), p("1"));
    }
}
