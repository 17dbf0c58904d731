use crate::algebra::{
    enumerate_words, ideal_membership_bounded, membership_search, AlgebraHom, Alphabet, MembershipCertificate,
    Polynomial, Side,
};
use crate::error::{Error, Result};
use crate::presentation::engine::{requires_two_sided, Construction, Presentation, RelationKind};
use crate::quotient::CyclicModuleRep;
use crate::ring::Ring;

/// The rewriting witnesses `x·ȳ ≡ p̄_{x,y}` and `ȳ·x ≡ p̄_{y,x}` modulo `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub variable: u32,
    pub generator: u32,
    /// `p_{x,y}` over the generators of `R`.
    pub left: Polynomial,
    /// `p_{y,x}`.
    pub right: Polynomial,
}

#[derive(Clone, Debug)]
pub struct Extension {
    /// Generators of `I` as an ideal of `K⟨X⟩`.
    pub i_generators: Vec<Polynomial>,
    pub witnesses: Vec<ExtensionWitness>,
    /// `A = ⟨X | i_generators⟩`.
    pub presentation: Presentation,
}

/// Given generators `ȳ` of an ideal `R` of `K⟨X⟩` and relations `W` of
/// `B = R/I` in those generators, finds generators of `I` as an ideal of
/// `K⟨X⟩`, so that `A = K⟨X⟩/I` is finitely presented.
///
/// Each `p_{x,y}` is searched for as a combination of generator words of
/// length `≤ cap` such that `x·ȳ − p̄` lies in the ideal generated by `W̄`
/// and the `context` polynomials (known elements of `I`), with multipliers
/// of length `≤ cap`. `None` means some search ran out of room.
pub fn compose_extension(
    ring: Ring,
    xalpha: &Alphabet,
    r_gens: &[(String, Polynomial)],
    b_relations: &[Polynomial],
    context: &[Polynomial],
    cap: usize,
) -> Result<Option<Extension>> {
    let names = Alphabet::new(r_gens.iter().map(|(n, _)| n.clone()))?;
    let images: Vec<Polynomial> = r_gens.iter().map(|(_, w)| w.clone()).collect();
    for w in images.iter().chain(context) {
        if w.ring() != ring || w.alphabet() != xalpha {
            return Err(Error::AlphabetMismatch("witnesses and context must be over X".into()));
        }
    }
    let hom = AlgebraHom::new(ring, &names, xalpha, false, images.clone())?;
    let mut wbar = Vec::new();
    for r in b_relations {
        if r.alphabet() != &names {
            return Err(Error::AlphabetMismatch("relations must be over the generator names".into()));
        }
        let img = hom.apply(r)?;
        if !img.is_zero() && !wbar.contains(&img) {
            wbar.push(img);
        }
    }
    let search_gens: Vec<Polynomial> =
        wbar.iter().chain(context).filter(|p| !p.is_zero()).cloned().collect();

    let mut words = Vec::new();
    let mut extras = Vec::new();
    if !names.is_empty() {
        for w in enumerate_words(&names, 1, cap) {
            let p = Polynomial::monomial(ring, &names, false, w.clone(), ring.one())?;
            let img = hom.apply(&p)?;
            if !img.is_zero() {
                words.push(w);
                extras.push(img);
            }
        }
    }
    let solve = |target: Polynomial| -> Result<Option<Polynomial>> {
        let Some(cert) = membership_search(&search_gens, &extras, &target, Side::TwoSided, cap)? else {
            return Ok(None);
        };
        let mut p = Polynomial::zero(ring, &names, false);
        for (w, c) in words.iter().zip(&cert.free) {
            p.add_term(w.clone(), c);
        }
        Ok(Some(p))
    };

    let mut i_generators = wbar.clone();
    let mut witnesses = Vec::new();
    for x in 0..xalpha.len() as u32 {
        let xv = Polynomial::var(ring, xalpha, false, x);
        for (y, ybar) in images.iter().enumerate() {
            let Some(left) = solve(&xv * ybar)? else { return Ok(None) };
            let Some(right) = solve(ybar * &xv)? else { return Ok(None) };
            for (prod, p) in [(&xv * ybar, &left), (ybar * &xv, &right)] {
                let g = &prod - &hom.apply(p)?;
                if !g.is_zero() && !i_generators.contains(&g) {
                    i_generators.push(g);
                }
            }
            witnesses.push(ExtensionWitness { variable: x, generator: y as u32, left, right });
        }
    }
    let presentation = Presentation {
        ring,
        variables: xalpha.clone(),
        generators: xalpha.clone(),
        witnesses: (0..xalpha.len() as u32).map(|i| Polynomial::var(ring, xalpha, false, i)).collect(),
        kinds: vec![RelationKind::Defining; i_generators.len()],
        relations: i_generators.clone(),
        modulo: i_generators.clone(),
    };
    Ok(Some(Extension { i_generators, witnesses, presentation }))
}

/// Generators of `I = Id(i_gens)` as an ideal of `R`, written over the
/// generators `Y` of `R`.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// `G`, polynomials over `Y`.
    pub generators: Vec<Polynomial>,
    /// `Ḡ`, their images in `K⟨X⟩`.
    pub images: Vec<Polynomial>,
    /// Certificates for `Ḡ ⊆ Id(i_gens)`.
    pub certificates: Vec<MembershipCertificate>,
}

/// Rewrites generators of an ideal `I ⊆ R` of `K⟨X⟩` into generators of `I`
/// as an ideal of the algebra `R`.
///
/// Writing any `a ∈ K⟨X⟩¹` as a scalar plus a combination of coset
/// representatives plus an element of `R`, every `a·g·b` with `g` a generator
/// falls into `K·G₀ + R·G₀ + G₀·R + R·G₀·R` for
/// `G₀ = { r·g·r' : r, r' ∈ {1} ∪ representatives }`, provided `R` is
/// two-sided. The result is `φ̄(G₀)`; each element of `G₀` is certified to
/// lie in `Id(i_gens)` with multipliers of length `≤ cap`, and `None` is
/// returned when a certificate is not found.
pub fn restrict_ideal_generators(
    c: &Construction,
    i_gens: &[Polynomial],
    cap: usize,
) -> Result<Option<Restriction>> {
    let rep = c.rep();
    for g in i_gens {
        if !rep.is_member(g)? {
            return Err(Error::NotMember(g.to_string()));
        }
    }
    let ring = rep.ring();
    let mut sides = vec![Polynomial::one(ring, rep.alphabet())];
    sides.extend(rep.representatives().iter().map(Polynomial::embed_unital));
    let mut g0: Vec<Polynomial> = Vec::new();
    for g in i_gens {
        let g = g.embed_unital();
        for a in &sides {
            for b in &sides {
                let p = (&(a * &g) * b).to_nonunital()?;
                if !p.is_zero() && !g0.contains(&p) {
                    g0.push(p);
                }
            }
        }
    }
    let nonzero: Vec<Polynomial> = i_gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut certificates = Vec::with_capacity(g0.len());
    for p in &g0 {
        match ideal_membership_bounded(&nonzero, p, Side::TwoSided, cap)? {
            Some(cert) => certificates.push(cert),
            None => return Ok(None),
        }
    }
    let generators = g0.iter().map(|p| c.phibar_poly(p)).collect::<Result<Vec<_>>>()?;
    Ok(Some(Restriction { generators, images: g0, certificates }))
}

/// A presentation of `R / Id(i_gens)` for a two-sided ideal `R`: the
/// presentation of `R` with the restricted generators added as relations.
pub fn present_quotient_subalgebra(
    rep: &CyclicModuleRep,
    i_gens: &[Polynomial],
    cap: usize,
) -> Result<Option<Presentation>> {
    requires_two_sided(rep)?;
    let c = Construction::new(rep, None)?;
    let mut pres = c.present()?;
    let Some(restriction) = restrict_ideal_generators(&c, i_gens, cap)? else { return Ok(None) };
    for g in restriction.generators {
        if !pres.relations.contains(&g) {
            pres.relations.push(g);
            pres.kinds.push(RelationKind::Restriction);
        }
    }
    pres.modulo = i_gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    Ok(Some(pres))
}
