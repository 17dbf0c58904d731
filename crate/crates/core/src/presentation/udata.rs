use crate::algebra::{AlgebraHom, Alphabet, Polynomial, Word};
use crate::error::{Error, Result};
use crate::linalg::{axpy, format_vec, kernel_modulo, relations_among, solve_linear, Matrix, Submodule};
use crate::presentation::symbols::{MixedElement, SymbolTables};
use crate::quotient::CyclicModuleRep;
use crate::ring::Coeff;

/// The generating set `U` of `ψ⁻¹(R) ∩ span(V)` together with everything
/// needed to move between `K⟨T⟩ + span(V)` and `K⟨Y⟩`, `Y = T ∪ U`.
#[derive(Clone, Debug)]
pub struct UData {
    y: Alphabet,
    /// `π(u)` for each `u ∈ U`, as a vector over `V`.
    pi_images: Vec<Vec<Coeff>>,
    /// Relations among the `π(u)`.
    m: Submodule,
    /// `u ⋆ x = ρ(π(u) * x)`, indexed `[u][x]`.
    u_action: Vec<Vec<YElement>>,
}

/// An element of `K⟨T⟩ + span(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YElement {
    pub t_part: Polynomial,
    pub u_part: Vec<Coeff>,
}

impl YElement {
    pub fn zero(tables: &SymbolTables, u: &UData) -> YElement {
        YElement {
            t_part: Polynomial::zero(tables.ring(), tables.t_alphabet(), false),
            u_part: vec![tables.ring().zero(); u.u_count()],
        }
    }

    pub fn add_scaled(&mut self, c: &Coeff, other: &YElement) {
        self.t_part.add_scaled(c, &other.t_part);
        axpy(&mut self.u_part, c, &other.u_part);
    }

    pub fn to_y_poly(&self, tables: &SymbolTables, u: &UData) -> Polynomial {
        let map: Vec<u32> = (0..tables.t_count() as u32).collect();
        let mut out = self.t_part.relabel(&u.y, &map);
        for (i, c) in self.u_part.iter().enumerate() {
            out.add_term(Word::letter((tables.t_count() + i) as u32), c);
        }
        out
    }

    /// Splits a polynomial over `Y` that is linear in the `U` letters.
    pub fn from_y_poly(tables: &SymbolTables, u: &UData, p: &Polynomial) -> Result<YElement> {
        let nt = tables.t_count() as u32;
        let mut out = YElement::zero(tables, u);
        for (w, c) in p.terms() {
            let l = w.letters();
            if l.iter().all(|&i| i < nt) {
                out.t_part.add_term(w.clone(), c);
            } else if l.len() == 1 {
                out.u_part[(l[0] - nt) as usize] += c;
            } else {
                return Err(Error::OutsideSpan(format!(
                    "`{}` is not in K⟨T⟩ + span(U)",
                    w.render(p.alphabet())
                )));
            }
        }
        Ok(out)
    }
}

impl UData {
    /// Computes `U`. Without `explicit`, `U` is the canonical basis of
    /// `{ c ∈ K^V : c₁ = 0, Σ c_b r_b ∈ R }`; an explicit family must span
    /// exactly that module.
    pub fn new(rep: &CyclicModuleRep, tables: &SymbolTables, explicit: Option<Vec<Vec<Coeff>>>) -> Result<UData> {
        let ring = rep.ring();
        let k = rep.labels().len();
        let nv = k + 1;
        let classes = rep.representatives().iter().map(|r| rep.class_vector(r)).collect();
        let map = Matrix::new(ring, rep.dim(), classes)?;
        let kernel = kernel_modulo(&map, rep.relations())?;
        let canonical: Vec<Vec<Coeff>> = kernel
            .basis()
            .iter()
            .map(|c| std::iter::once(ring.zero()).chain(c.iter().cloned()).collect())
            .collect();
        let pi_images = match explicit {
            None => canonical,
            Some(family) => {
                for f in &family {
                    if f.len() != nv {
                        return Err(Error::DimensionMismatch { expected: nv, found: f.len() });
                    }
                    if f.iter().any(|c| c.ring() != ring) {
                        return Err(Error::RingMismatch(ring.name(), f[0].ring().name()));
                    }
                    if !f[0].is_zero() || !kernel.contains(&f[1..])? {
                        return Err(Error::Hypothesis(format!(
                            "{} does not lie in ψ⁻¹(R) ∩ span(V) with zero v[1] component",
                            format_vec(f)
                        )));
                    }
                }
                let spanned = Submodule::new(ring, k, family.iter().map(|f| f[1..].to_vec()).collect())?;
                if spanned != kernel {
                    return Err(Error::Hypothesis("explicit U does not span ψ⁻¹(R) ∩ span(V)".into()));
                }
                family
            }
        };
        let m = relations_among(ring, nv, &pi_images)?;
        let names = tables
            .t_alphabet()
            .names()
            .iter()
            .cloned()
            .chain((1..=pi_images.len()).map(|i| format!("u[{i}]")));
        let y = Alphabet::new(names)?;
        let mut data = UData { y, pi_images, m, u_action: vec![] };
        let mut table = Vec::with_capacity(data.pi_images.len());
        for pu in &data.pi_images {
            let s = MixedElement { v_part: pu.clone(), ..MixedElement::zero(tables) };
            let row = (0..tables.x_alphabet().len())
                .map(|x| data.rho(tables, &tables.star_letter(&s, x)))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        data.u_action = table;
        Ok(data)
    }

    /// `Y = T ∪ U`, with `T` first.
    pub fn y_alphabet(&self) -> &Alphabet {
        &self.y
    }

    pub fn u_count(&self) -> usize {
        self.pi_images.len()
    }

    pub fn pi_images(&self) -> &[Vec<Coeff>] {
        &self.pi_images
    }

    /// `M`, the relations among `π(U)`.
    pub fn m_module(&self) -> &Submodule {
        &self.m
    }

    /// The section `ρ` of `π`: the `T` part is kept, the `V` part is solved
    /// canonically over `π(U)`.
    pub fn rho(&self, tables: &SymbolTables, s: &MixedElement) -> Result<YElement> {
        let ring = tables.ring();
        let u_part = if self.pi_images.is_empty() {
            if s.v_part.iter().any(|c| !c.is_zero()) {
                return Err(Error::OutsideSpan(format!("{} is not in span π(U) = 0", format_vec(&s.v_part))));
            }
            vec![]
        } else {
            let map = Matrix::new(ring, s.v_part.len(), self.pi_images.clone())?;
            solve_linear(&map, &s.v_part)?
                .ok_or_else(|| Error::OutsideSpan(format!("{} is not in span π(U)", format_vec(&s.v_part))))?
        };
        Ok(YElement { t_part: s.t_part.clone(), u_part })
    }

    /// `π`, back into `K⟨T⟩ + span(V)`.
    pub fn pi(&self, tables: &SymbolTables, y: &YElement) -> MixedElement {
        let mut s = MixedElement::from_t(tables, y.t_part.clone());
        for (c, pu) in y.u_part.iter().zip(&self.pi_images) {
            axpy(&mut s.v_part, c, pu);
        }
        s
    }

    /// `r ⋆ x = ρ(π(r) * x)`.
    pub fn starbar_letter(&self, tables: &SymbolTables, r: &YElement, x: usize) -> YElement {
        let mut out = YElement { t_part: tables.star_letter_t(&r.t_part, x), u_part: vec![tables.ring().zero(); self.u_count()] };
        for (c, row) in r.u_part.iter().zip(&self.u_action) {
            if !c.is_zero() {
                out.add_scaled(c, &row[x]);
            }
        }
        out
    }

    /// `r ⋆ p` for `p ∈ K⟨X⟩¹`.
    pub fn starbar(&self, tables: &SymbolTables, r: &YElement, p: &Polynomial) -> YElement {
        let terms: Vec<(&[u32], &Coeff)> = p.terms().iter().map(|(w, c)| (w.letters(), c)).collect();
        self.starbar_terms(tables, r, terms)
    }

    fn starbar_terms(&self, tables: &SymbolTables, r: &YElement, terms: Vec<(&[u32], &Coeff)>) -> YElement {
        let mut out = YElement::zero(tables, self);
        let mut groups: std::collections::BTreeMap<u32, Vec<(&[u32], &Coeff)>> = Default::default();
        for (w, c) in terms {
            match w.split_first() {
                None => out.add_scaled(c, r),
                Some((&x, rest)) => groups.entry(x).or_default().push((rest, c)),
            }
        }
        for (x, sub) in groups {
            let next = self.starbar_letter(tables, r, x as usize);
            let v = self.starbar_terms(tables, &next, sub);
            out.add_scaled(&tables.ring().one(), &v);
        }
        out
    }

    /// `ψ̄ = ψπ` as a homomorphism `K⟨Y⟩ → K⟨X⟩`.
    pub fn psibar_hom(&self, tables: &SymbolTables) -> AlgebraHom {
        let mut images: Vec<Polynomial> = (0..tables.t_count() as u32).map(|i| tables.psi_t(i).clone()).collect();
        for pu in &self.pi_images {
            let mut img = Polynomial::zero(tables.ring(), tables.x_alphabet(), false);
            for (b, c) in pu.iter().enumerate().skip(1) {
                img.add_scaled(c, &tables.representative(b).to_nonunital().expect("r_b has no constant"));
            }
            images.push(img);
        }
        AlgebraHom::new(tables.ring(), &self.y, tables.x_alphabet(), false, images).expect("well-formed ψ̄")
    }
}
