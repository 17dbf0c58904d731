use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_words, AlgebraHom, Alphabet, ideal_membership_bounded, Polynomial, Side, Word};
use crate::error::{Error, Result};
use crate::linalg::{kernel_modulo, Matrix, Submodule};
use crate::presentation::symbols::{MixedElement, SymbolTables};
use crate::presentation::udata::{UData, YElement};
use crate::quotient::{CyclicModuleRep, IdealClass};
use crate::random::random_poly;
use crate::ring::{Coeff, Ring};

/// Where a relation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    /// Relations among the `U` symbols.
    #[serde(rename = "W_U")]
    WU,
    /// `y − φ̄ψ̄(y)`.
    #[serde(rename = "W_Y")]
    WY,
    /// `zy − z ⋆ ψ̄(y)`.
    #[serde(rename = "W_YY")]
    WYY,
    /// Generators of an ideal of the presented algebra being factored out.
    #[serde(rename = "G")]
    Restriction,
    /// Generators of a defining ideal in an extension.
    #[serde(rename = "I")]
    Defining,
    #[serde(rename = "other")]
    Other,
}

/// Generators with witnesses in `K⟨X⟩` and relations among the generators.
///
/// Substituting witnesses sends every relation into the ideal generated by
/// `modulo` (to zero when `modulo` is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: Ring,
    pub variables: Alphabet,
    pub generators: Alphabet,
    pub witnesses: Vec<Polynomial>,
    pub relations: Vec<Polynomial>,
    pub kinds: Vec<RelationKind>,
    pub modulo: Vec<Polynomial>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationStats {
    pub generators: usize,
    pub relations: usize,
    pub w_u: usize,
    pub w_y: usize,
    pub w_yy: usize,
    pub restriction: usize,
    pub defining: usize,
    pub max_relation_degree: usize,
}

impl Presentation {
    /// Substitution of witnesses, `K⟨generators⟩ → K⟨X⟩`.
    pub fn witness_hom(&self) -> AlgebraHom {
        AlgebraHom::new(self.ring, &self.generators, &self.variables, false, self.witnesses.clone())
            .expect("witnesses are non-unital polynomials over X")
    }

    pub fn stats(&self) -> PresentationStats {
        let count = |k: RelationKind| self.kinds.iter().filter(|&&x| x == k).count();
        PresentationStats {
            generators: self.generators.len(),
            relations: self.relations.len(),
            w_u: count(RelationKind::WU),
            w_y: count(RelationKind::WY),
            w_yy: count(RelationKind::WYY),
            restriction: count(RelationKind::Restriction),
            defining: count(RelationKind::Defining),
            max_relation_degree: self.relations.iter().filter_map(Polynomial::degree).max().unwrap_or(0),
        }
    }

    /// Relations whose witness image is not zero. Only meaningful when
    /// `modulo` is empty.
    pub fn nonvanishing_relations(&self) -> Vec<usize> {
        let h = self.witness_hom();
        (0..self.relations.len())
            .into_par_iter()
            .filter(|&i| !h.apply(&self.relations[i]).map(|p| p.is_zero()).unwrap_or(false))
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators ({}):", self.generators.len())?;
        for (name, w) in self.generators.names().iter().zip(&self.witnesses) {
            writeln!(f, "  {name} ↦ {w}")?;
        }
        writeln!(f, "relations ({}):", self.relations.len())?;
        for r in &self.relations {
            writeln!(f, "  {r}")?;
        }
        if !self.modulo.is_empty() {
            writeln!(f, "modulo:")?;
            for m in &self.modulo {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}

/// Symbol tables and `U` data for one right ideal, with the maps built
/// from them.
#[derive(Clone, Debug)]
pub struct Construction {
    rep: CyclicModuleRep,
    tables: SymbolTables,
    udata: UData,
    psibar: AlgebraHom,
}

impl Construction {
    pub fn new(rep: &CyclicModuleRep, explicit_u: Option<Vec<Vec<Coeff>>>) -> Result<Construction> {
        let tables = SymbolTables::new(rep)?;
        let udata = UData::new(rep, &tables, explicit_u)?;
        let psibar = udata.psibar_hom(&tables);
        Ok(Construction { rep: rep.clone(), tables, udata, psibar })
    }

    pub fn rep(&self) -> &CyclicModuleRep {
        &self.rep
    }

    pub fn tables(&self) -> &SymbolTables {
        &self.tables
    }

    pub fn udata(&self) -> &UData {
        &self.udata
    }

    pub fn y_alphabet(&self) -> &Alphabet {
        self.udata.y_alphabet()
    }

    /// The generator `y` as an element of `K⟨T⟩ + span(U)`.
    pub fn symbol(&self, y: u32) -> YElement {
        let ring = self.tables.ring();
        let nt = self.tables.t_count() as u32;
        let mut out = YElement::zero(&self.tables, &self.udata);
        if y < nt {
            out.t_part = Polynomial::var(ring, self.tables.t_alphabet(), false, y);
        } else {
            out.u_part[(y - nt) as usize] = ring.one();
        }
        out
    }

    pub fn phi(&self, p: &Polynomial) -> Result<MixedElement> {
        self.tables.phi(p)
    }

    /// `φ̄(p) = ρ(φ(p))` for `p ∈ R`.
    pub fn phibar(&self, p: &Polynomial) -> Result<YElement> {
        if !self.rep.is_member(p)? {
            return Err(Error::NotMember(p.to_string()));
        }
        self.udata.rho(&self.tables, &self.tables.phi(p)?)
    }

    /// `φ̄(p)` as a polynomial over `Y`.
    pub fn phibar_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.phibar(p)?.to_y_poly(&self.tables, &self.udata))
    }

    pub fn rho(&self, s: &MixedElement) -> Result<YElement> {
        self.udata.rho(&self.tables, s)
    }

    pub fn starbar(&self, r: &YElement, p: &Polynomial) -> Result<YElement> {
        if p.alphabet() != self.tables.x_alphabet() || p.ring() != self.tables.ring() {
            return Err(Error::AlphabetMismatch("acting polynomial is not over X".into()));
        }
        Ok(self.udata.starbar(&self.tables, r, p))
    }

    pub fn psibar_hom(&self) -> &AlgebraHom {
        &self.psibar
    }

    /// `ψ̄(q)` for `q` over `Y`.
    pub fn psibar(&self, q: &Polynomial) -> Result<Polynomial> {
        self.psibar.apply(q)
    }

    pub fn psibar_y(&self, y: &YElement) -> Polynomial {
        self.psibar
            .apply(&y.to_y_poly(&self.tables, &self.udata))
            .expect("Y-element over Y")
    }

    pub fn to_y_poly(&self, y: &YElement) -> Polynomial {
        y.to_y_poly(&self.tables, &self.udata)
    }

    /// Generators `Y` with witnesses `ψ̄(y)` and relations
    /// `W_U ∪ W_Y ∪ W_{Y,Y}`, in that order.
    pub fn present(&self) -> Result<Presentation> {
        let ring = self.tables.ring();
        let y = self.y_alphabet().clone();
        let ny = y.len() as u32;
        let nt = self.tables.t_count();
        let witnesses: Vec<Polynomial> = (0..ny).map(|i| self.psibar.image(i).to_nonunital().expect("ψ̄ lands in K⟨X⟩")).collect();
        let mut relations = Vec::new();
        let mut kinds = Vec::new();

        for m in self.udata.m_module().basis() {
            let mut rel = Polynomial::zero(ring, &y, false);
            for (i, c) in m.iter().enumerate() {
                rel.add_term(Word::letter((nt + i) as u32), c);
            }
            relations.push(rel);
            kinds.push(RelationKind::WU);
        }
        for i in 0..ny {
            let mut rel = Polynomial::var(ring, &y, false, i);
            let back = self.phibar_poly(&witnesses[i as usize])?;
            rel.add_scaled(&-ring.one(), &back);
            relations.push(rel);
            kinds.push(RelationKind::WY);
        }
        let pairs: Vec<(u32, u32)> = (0..ny).flat_map(|z| (0..ny).map(move |w| (z, w))).collect();
        let yy: Vec<Polynomial> = pairs
            .par_iter()
            .map(|&(z, w)| {
                let mut rel = Polynomial::monomial(ring, &y, false, Word(vec![z, w]), ring.one()).expect("degree 2");
                let act = self.udata.starbar(&self.tables, &self.symbol(z), &witnesses[w as usize]);
                rel.add_scaled(&-ring.one(), &self.to_y_poly(&act));
                rel
            })
            .collect();
        kinds.extend(std::iter::repeat_n(RelationKind::WYY, yy.len()));
        relations.extend(yy);

        let pres = Presentation {
            ring,
            variables: self.tables.x_alphabet().clone(),
            generators: y,
            witnesses,
            relations,
            kinds,
            modulo: vec![],
        };
        let bad = pres.nonvanishing_relations();
        if !bad.is_empty() {
            return Err(Error::Internal(format!("relation `{}` does not vanish under ψ̄", pres.relations[bad[0]])));
        }
        Ok(pres)
    }
}

/// Presents a right ideal given by a cyclic module representation.
pub fn present_right_ideal(rep: &CyclicModuleRep) -> Result<Presentation> {
    Construction::new(rep, None)?.present()
}

/// Drops every generator whose witness is zero and which is itself a
/// relation, substituting zero for it elsewhere. Zero and repeated relations
/// are removed afterwards.
pub fn simplify(pres: &Presentation) -> Result<Presentation> {
    let ring = pres.ring;
    let drop: Vec<bool> = (0..pres.generators.len() as u32)
        .map(|i| {
            let g = Polynomial::var(ring, &pres.generators, false, i);
            pres.witnesses[i as usize].is_zero() && pres.relations.iter().any(|r| r == &g || r == &-&g)
        })
        .collect();
    let mut map = vec![u32::MAX; drop.len()];
    let mut names = Vec::new();
    let mut witnesses = Vec::new();
    for (i, d) in drop.iter().enumerate() {
        if !d {
            map[i] = names.len() as u32;
            names.push(pres.generators.names()[i].clone());
            witnesses.push(pres.witnesses[i].clone());
        }
    }
    let generators = Alphabet::new(names)?;
    let mut relations: Vec<Polynomial> = Vec::new();
    let mut kinds = Vec::new();
    for (r, k) in pres.relations.iter().zip(&pres.kinds) {
        let mut out = Polynomial::zero(ring, &generators, false);
        for (w, c) in r.terms() {
            if w.letters().iter().all(|&l| !drop[l as usize]) {
                out.add_term(Word(w.letters().iter().map(|&l| map[l as usize]).collect()), c);
            }
        }
        if !out.is_zero() && !relations.contains(&out) {
            relations.push(out);
            kinds.push(*k);
        }
    }
    Ok(Presentation { generators, witnesses, relations, kinds, ..pres.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: usize,
    /// Rank of `{ p ∈ R : deg p ≤ degree }`.
    pub expected: usize,
    /// Rank of the span of generator words of witness degree `≤ degree`.
    pub achieved: usize,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub sound: bool,
    /// Indices of relations whose witness image is not (certified) zero.
    pub unsound_relations: Vec<usize>,
    pub identity_passed: usize,
    pub identity_failed: usize,
    pub completeness: Vec<DegreeCheck>,
    pub degree_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl VerificationReport {
    pub fn complete(&self) -> bool {
        self.completeness.iter().all(|c| c.matched)
    }

    pub fn passed(&self) -> bool {
        self.sound && self.identity_failed == 0 && self.complete()
    }
}

/// Checks a presentation of the right ideal `rep` describes:
/// relations vanish under the witnesses, `ψ̄φ̄` is the identity on random
/// members, and up to `deg_cap` the generator words span exactly the members.
pub fn verify_presentation(
    rep: &CyclicModuleRep,
    pres: &Presentation,
    deg_cap: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if pres.ring != rep.ring() {
        return Err(Error::RingMismatch(rep.ring().name(), pres.ring.name()));
    }
    if &pres.variables != rep.alphabet() {
        return Err(Error::AlphabetMismatch("presentation and representation use different variables".into()));
    }
    let unsound_relations = if pres.modulo.is_empty() {
        pres.nonvanishing_relations()
    } else {
        let h = pres.witness_hom();
        let mut bad = Vec::new();
        for (i, r) in pres.relations.iter().enumerate() {
            let img = h.apply(r)?;
            if ideal_membership_bounded(&pres.modulo, &img, Side::TwoSided, deg_cap)?.is_none() {
                bad.push(i);
            }
        }
        bad
    };

    let c = Construction::new(rep, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = Vec::with_capacity(samples);
    for _ in 0..samples {
        let p = random_poly(&mut rng, rep.ring(), rep.alphabet(), false, deg_cap.max(1), 4);
        members.push(rep.residual(&p)?);
    }
    let outcomes: Vec<bool> = members
        .par_iter()
        .map(|p| c.phibar(p).map(|y| &c.psibar_y(&y) == p).unwrap_or(false))
        .collect();
    let identity_passed = outcomes.iter().filter(|&&b| b).count();

    let completeness = completeness_checks(rep, pres, deg_cap)?;
    Ok(VerificationReport {
        sound: unsound_relations.is_empty(),
        unsound_relations,
        identity_passed,
        identity_failed: samples - identity_passed,
        completeness,
        degree_cap: deg_cap,
        samples,
        seed,
    })
}

fn completeness_checks(rep: &CyclicModuleRep, pres: &Presentation, cap: usize) -> Result<Vec<DegreeCheck>> {
    let ring = rep.ring();
    let monomials = enumerate_words(rep.alphabet(), 1, cap);
    let index: std::collections::HashMap<&Word, usize> = monomials.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = monomials.len();
    let coords = |p: &Polynomial| -> Vec<Coeff> {
        let mut v = vec![ring.zero(); n];
        for (w, c) in p.terms() {
            v[index[w]] = c.clone();
        }
        v
    };

    // Images of generator words grouped by witness degree.
    let weights: Vec<Option<usize>> = pres.witnesses.iter().map(Polynomial::degree).collect();
    let mut by_weight: Vec<Vec<Polynomial>> = vec![Vec::new(); cap + 1];
    let mut frontier: Vec<(usize, Polynomial)> = vec![];
    for (i, w) in weights.iter().enumerate() {
        if let Some(d) = *w {
            if d <= cap {
                frontier.push((d, pres.witnesses[i].clone()));
            }
        }
    }
    while let Some((d, img)) = frontier.pop() {
        for (i, w) in weights.iter().enumerate() {
            if let Some(e) = *w {
                if d + e <= cap {
                    frontier.push((d + e, &img * &pres.witnesses[i]));
                }
            }
        }
        by_weight[d].push(img);
    }

    let mut achieved = Submodule::zero(ring, n);
    let mut out = Vec::with_capacity(cap);
    for d in 1..=cap {
        let fresh: Vec<Vec<Coeff>> = by_weight[d]
            .iter()
            .map(&coords)
            .filter(|v| !achieved.contains(v).unwrap_or(false))
            .collect();
        if !fresh.is_empty() {
            achieved = achieved.extend(fresh)?;
        }
        let upto = monomials.iter().take_while(|w| w.len() <= d).count();
        let rows = monomials[..upto].iter().map(|w| {
            let p = Polynomial::monomial(ring, rep.alphabet(), false, w.clone(), ring.one()).expect("word");
            rep.class_vector(&p)
        });
        let map = Matrix::new(ring, rep.dim(), rows.collect())?;
        let kernel = kernel_modulo(&map, rep.relations())?;
        let expected = Submodule::new(
            ring,
            n,
            kernel.basis().iter().map(|c| c.iter().cloned().chain((upto..n).map(|_| ring.zero())).collect()).collect(),
        )?;
        out.push(DegreeCheck { degree: d, expected: expected.rank(), achieved: achieved.rank(), matched: expected == achieved });
    }
    Ok(out)
}

pub(crate) fn requires_two_sided(rep: &CyclicModuleRep) -> Result<()> {
    if rep.classify() != IdealClass::TwoSidedIdeal {
        return Err(Error::Hypothesis("the ideal is not two-sided".into()));
    }
    Ok(())
}
