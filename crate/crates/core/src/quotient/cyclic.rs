use std::collections::BTreeMap;

use crate::algebra::{Alphabet, Polynomial};
use crate::error::{Error, Result, Violation};
use crate::linalg::{axpy, format_vec, kernel_modulo, quotient_presentation, unit_vec, vec_mat, Matrix, Submodule};
use crate::quotient::IdealClass;
use crate::ring::{Coeff, Ring};

/// Finite data for a right ideal `R` of finite co-rank in `K⟨X⟩`: the cyclic
/// module `K⟨X⟩¹/R` on coordinates `(e, g₁, …, g_k)` modulo a relation
/// lattice `N`, with `x` acting by the matrix `ρ(x)` on row vectors.
///
/// `R = { p ∈ K⟨X⟩ : e·ρ(p) ∈ N }`. Each `g_b` has a representative
/// polynomial `r_b` whose class is `g_b`.
#[derive(Clone, Debug)]
pub struct CyclicModuleRep {
    ring: Ring,
    alphabet: Alphabet,
    labels: Vec<String>,
    representatives: Vec<Polynomial>,
    relations: Submodule,
    action: Vec<Matrix>,
}

impl CyclicModuleRep {
    /// Builds and validates a representation. All violated invariants are
    /// reported together.
    pub fn new(
        ring: Ring,
        alphabet: Alphabet,
        labels: Vec<String>,
        representatives: Vec<Polynomial>,
        relations: Vec<Vec<Coeff>>,
        action: Vec<Matrix>,
    ) -> Result<CyclicModuleRep> {
        let k = labels.len();
        let dim = k + 1;
        let mut bad = Vec::new();
        structural_checks(ring, &alphabet, &labels, &representatives, &relations, &action, &mut bad);
        if !bad.is_empty() {
            return Err(Error::InvalidRep(bad));
        }
        let relations = Submodule::new(ring, dim, relations)?;
        let rep = CyclicModuleRep { ring, alphabet, labels, representatives, relations, action };
        rep.check_invariants(&mut bad);
        if !bad.is_empty() {
            return Err(Error::InvalidRep(bad));
        }
        Ok(rep)
    }

    fn check_invariants(&self, bad: &mut Vec<Violation>) {
        let dim = self.dim();
        let names = self.alphabet.names();
        for (xi, m) in self.action.iter().enumerate() {
            for n in self.relations.basis() {
                if !self.relations.contains(&vec_mat(self.ring, n, m)).unwrap_or(false) {
                    bad.push(Violation::new(
                        "V2",
                        format!("relation {} is not mapped into the relations by {}", format_vec(n), names[xi]),
                    ));
                }
            }
        }
        let g_plus_n = self.relations.extend((1..dim).map(|i| unit_vec(self.ring, dim, i))).expect("dims");
        for (xi, m) in self.action.iter().enumerate() {
            if !g_plus_n.contains(m.row(0)).unwrap_or(false) {
                bad.push(Violation::new(
                    "V3",
                    format!("e·ρ({}) = {} has a nonzero e-component modulo N", names[xi], format_vec(m.row(0))),
                ));
            }
            for b in 1..dim {
                if !g_plus_n.contains(m.row(b)).unwrap_or(false) {
                    bad.push(Violation::new(
                        "V4",
                        format!(
                            "g[{}]·ρ({}) = {} has a nonzero e-component modulo N",
                            self.labels[b - 1],
                            names[xi],
                            format_vec(m.row(b))
                        ),
                    ));
                }
            }
        }
        for (b, r) in self.representatives.iter().enumerate() {
            let mut diff = self.class_vector(r);
            diff[b + 1] -= &self.ring.one();
            if !self.relations.contains(&diff).unwrap_or(false) {
                bad.push(Violation::new(
                    "V1",
                    format!("class of representative `{r}` is not g[{}] modulo N", self.labels[b]),
                ));
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Labels `b₁ … b_k` (the label of `e` is the implicit `1`).
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn representatives(&self) -> &[Polynomial] {
        &self.representatives
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// `k + 1`, the number of coordinates.
    pub fn dim(&self) -> usize {
        self.labels.len() + 1
    }

    /// `v · ρ(p)` reduced modulo `N`, for any `p` over `X` (unital or not).
    pub fn act(&self, v: &[Coeff], p: &Polynomial) -> Vec<Coeff> {
        let terms: Vec<(&[u32], &Coeff)> = p.terms().iter().map(|(w, c)| (w.letters(), c)).collect();
        let out = self.act_terms(v.to_vec(), terms);
        self.relations.reduce(&out).expect("dims").0
    }

    fn act_terms(&self, start: Vec<Coeff>, terms: Vec<(&[u32], &Coeff)>) -> Vec<Coeff> {
        let mut out = vec![self.ring.zero(); start.len()];
        let mut groups: BTreeMap<u32, Vec<(&[u32], &Coeff)>> = BTreeMap::new();
        for (w, c) in terms {
            match w.split_first() {
                None => axpy(&mut out, c, &start),
                Some((&x, rest)) => groups.entry(x).or_default().push((rest, c)),
            }
        }
        for (x, sub) in groups {
            let next = vec_mat(self.ring, &start, &self.action[x as usize]);
            let next = self.relations.reduce(&next).expect("dims").0;
            let v = self.act_terms(next, sub);
            axpy(&mut out, &self.ring.one(), &v);
        }
        out
    }

    /// `e · ρ(p)` modulo `N`.
    pub fn class_vector(&self, p: &Polynomial) -> Vec<Coeff> {
        self.act(&unit_vec(self.ring, self.dim(), 0), p)
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if p.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.name(), p.ring().name()));
        }
        if p.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch("polynomial is not over the representation's alphabet".into()));
        }
        Ok(())
    }

    /// `⟨p⟩`: canonical coordinates `c` over `b₁ … b_k` with
    /// `p − Σ c_b r_b ∈ R`.
    pub fn coset_vector(&self, p: &Polynomial) -> Result<Vec<Coeff>> {
        self.check_poly(p)?;
        if !p.constant_term().is_zero() {
            return Err(Error::UnitalMismatch("coset coordinates are defined on K⟨X⟩ only".into()));
        }
        let class = self.class_vector(p);
        if !class[0].is_zero() {
            return Err(Error::Internal("class of a polynomial has an e-component".into()));
        }
        Ok(class[1..].to_vec())
    }

    pub fn is_member(&self, p: &Polynomial) -> Result<bool> {
        self.check_poly(p)?;
        if !p.constant_term().is_zero() {
            return Ok(false);
        }
        self.relations.contains(&self.class_vector(p))
    }

    /// `p − Σ ⟨p⟩_b r_b`, which always lies in `R`.
    pub fn residual(&self, p: &Polynomial) -> Result<Polynomial> {
        let c = self.coset_vector(p)?;
        let mut out = p.to_nonunital()?;
        for (cb, r) in c.iter().zip(&self.representatives) {
            out.add_scaled(&-cb, r);
        }
        Ok(out)
    }

    /// Right ideal or two-sided ideal.
    pub fn classify(&self) -> IdealClass {
        if self.is_two_sided() {
            IdealClass::TwoSidedIdeal
        } else {
            IdealClass::RightIdeal
        }
    }

    /// Decides two-sidedness through the matrix algebra `A*` spanned by all
    /// products of the action matrices: with `H* = { m ∈ A* : e·m ∈ N }`, the
    /// ideal is two-sided iff `e·ρ(x)·m ∈ N` for every `x` and every
    /// generator `m` of `H*`.
    fn is_two_sided(&self) -> bool {
        let ring = self.ring;
        let d = self.dim();
        let flat = |m: &Matrix| -> Vec<Coeff> { m.rows().iter().flatten().cloned().collect() };
        let unflat = |v: &[Coeff]| -> Matrix {
            Matrix::new(ring, d, v.chunks(d).map(|r| r.to_vec()).collect()).expect("square")
        };
        let mut algebra = Submodule::new(ring, d * d, self.action.iter().map(flat).collect()).expect("dims");
        loop {
            let mut more = Vec::new();
            for b in algebra.basis() {
                let m = unflat(b);
                for x in &self.action {
                    more.push(flat(&m.mul(x).expect("square")));
                }
            }
            let next = algebra.extend(more).expect("dims");
            if next == algebra {
                break;
            }
            algebra = next;
        }
        let mats: Vec<Matrix> = algebra.basis().iter().map(|b| unflat(b)).collect();
        if mats.is_empty() {
            return true;
        }
        let e_rows = Matrix::new(ring, d, mats.iter().map(|m| m.row(0).to_vec()).collect()).expect("dims");
        let h = kernel_modulo(&e_rows, &self.relations).expect("dims");
        for c in h.basis() {
            let mut sum = vec![ring.zero(); d * d];
            for (ci, b) in c.iter().zip(algebra.basis()) {
                axpy(&mut sum, ci, b);
            }
            let m = unflat(&sum);
            for x in &self.action {
                let v = m.apply(x.row(0)).expect("dims");
                if !self.relations.contains(&v).unwrap_or(false) {
                    return false;
                }
            }
        }
        true
    }

    /// `K^k / L` with `L = { c : (0, c) ∈ N }`; isomorphic to `K⟨X⟩/R`.
    pub fn quotient_module(&self) -> crate::linalg::QuotientModule {
        let k = self.labels.len();
        let g_coords = self.relations.intersect(
            &Submodule::new(self.ring, self.dim(), (1..self.dim()).map(|i| unit_vec(self.ring, self.dim(), i)).collect())
                .expect("dims"),
        ).expect("dims");
        let l = Submodule::new(self.ring, k, g_coords.basis().iter().map(|v| v[1..].to_vec()).collect())
            .expect("dims");
        quotient_presentation(&l)
    }

    /// For example `two-sided ideal, co-rank 1`.
    pub fn summary(&self) -> String {
        format!("{}, co-rank {}", self.classify().describe(), self.corank())
    }

    /// Minimal number of generators of `K⟨X⟩/R` as a `K`-module.
    pub fn corank(&self) -> usize {
        self.quotient_module().rank()
    }
}

pub(crate) fn is_valid_label(s: &str) -> bool {
    !s.is_empty() && s != "1" && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn structural_checks(
    ring: Ring,
    alphabet: &Alphabet,
    labels: &[String],
    reps: &[Polynomial],
    relations: &[Vec<Coeff>],
    action: &[Matrix],
    bad: &mut Vec<Violation>,
) {
    let dim = labels.len() + 1;
    for (i, l) in labels.iter().enumerate() {
        if !is_valid_label(l) {
            bad.push(Violation::new("labels", format!("`{l}` is not a valid basis label")));
        }
        if labels[..i].contains(l) {
            bad.push(Violation::new("labels", format!("duplicate basis label `{l}`")));
        }
    }
    if reps.len() != labels.len() {
        bad.push(Violation::new(
            "representatives",
            format!("expected {} representatives, found {}", labels.len(), reps.len()),
        ));
    }
    for r in reps {
        if r.ring() != ring || r.alphabet() != alphabet {
            bad.push(Violation::new("representatives", format!("`{r}` is over the wrong ring or alphabet")));
        } else if !r.constant_term().is_zero() {
            bad.push(Violation::new("representatives", format!("`{r}` has a constant term")));
        }
    }
    for (i, n) in relations.iter().enumerate() {
        if n.len() != dim || n.iter().any(|c| c.ring() != ring) {
            bad.push(Violation::new("relations", format!("relation row {i} has the wrong shape or ring")));
        }
    }
    if action.len() != alphabet.len() {
        bad.push(Violation::new(
            "action",
            format!("expected {} action matrices, found {}", alphabet.len(), action.len()),
        ));
    }
    for (i, m) in action.iter().enumerate() {
        if m.nrows() != dim || m.ncols() != dim || m.ring() != ring {
            bad.push(Violation::new("action", format!("action matrix {i} is not {dim}×{dim} over {}", ring.name())));
        }
    }
}
