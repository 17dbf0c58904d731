use crate::error::{Error, Result};
use crate::linalg::echelon::{echelonize, inverse, kernel};
use crate::linalg::matrix::{axpy, check_ring, is_zero_vec, Matrix};
use crate::linalg::snf::snf;
use crate::ring::{Coeff, Ring};

/// A submodule of `K^n` given by generators, kept together with its
/// canonical echelon basis. Two submodules compare equal iff their canonical
/// bases agree.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Ring,
    ambient: usize,
    generators: Vec<Vec<Coeff>>,
    basis: Vec<Vec<Coeff>>,
    pivots: Vec<usize>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Submodule {}

impl Submodule {
    pub fn new(ring: Ring, ambient: usize, generators: Vec<Vec<Coeff>>) -> Result<Submodule> {
        for g in &generators {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
            }
            check_ring(ring, g)?;
        }
        Ok(Submodule::from_generators_unchecked(ring, ambient, generators))
    }

    pub(crate) fn from_generators_unchecked(
        ring: Ring,
        ambient: usize,
        generators: Vec<Vec<Coeff>>,
    ) -> Submodule {
        let mut basis = generators.clone();
        let pivots = echelonize(ring, ambient, &mut basis, None);
        basis.truncate(pivots.len());
        Submodule { ring, ambient, generators, basis, pivots }
    }

    pub fn zero(ring: Ring, ambient: usize) -> Submodule {
        Submodule { ring, ambient, generators: vec![], basis: vec![], pivots: vec![] }
    }

    pub fn full(ring: Ring, ambient: usize) -> Submodule {
        Submodule::from_generators_unchecked(ring, ambient, Matrix::identity(ring, ambient).into_rows())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<Coeff>] {
        &self.generators
    }

    /// Canonical basis rows (Hermite form over ℤ, reduced echelon over fields).
    pub fn basis(&self) -> &[Vec<Coeff>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows_unchecked(self.ring, self.ambient, self.basis.clone())
    }

    /// Canonical representative of `v` modulo this submodule and whether `v`
    /// lies in it.
    pub fn reduce(&self, v: &[Coeff]) -> Result<(Vec<Coeff>, bool)> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let mut r = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if r[c].is_zero() {
                continue;
            }
            let q = -self.ring.div_rem(&r[c], &row[c]).0;
            axpy(&mut r, &q, row);
        }
        let inside = is_zero_vec(&r);
        Ok((r, inside))
    }

    pub fn contains(&self, v: &[Coeff]) -> Result<bool> {
        Ok(self.reduce(v)?.1)
    }

    pub fn contains_submodule(&self, other: &Submodule) -> Result<bool> {
        self.check_compatible(other)?;
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Submodule::from_generators_unchecked(self.ring, self.ambient, gens))
    }

    /// Adds generators; returns the enlarged submodule.
    pub fn extend(&self, more: impl IntoIterator<Item = Vec<Coeff>>) -> Result<Submodule> {
        let mut gens = self.basis.clone();
        for g in more {
            if g.len() != self.ambient {
                return Err(Error::DimensionMismatch { expected: self.ambient, found: g.len() });
            }
            gens.push(g);
        }
        Ok(Submodule::from_generators_unchecked(self.ring, self.ambient, gens))
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Submodule::zero(self.ring, self.ambient));
        }
        let stacked = Matrix::from_rows_unchecked(
            self.ring,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned().collect(),
        );
        let k = kernel(&stacked);
        let n = self.basis.len();
        let gens = k
            .basis()
            .iter()
            .map(|c| {
                let mut out = vec![self.ring.zero(); self.ambient];
                for (ci, row) in c[..n].iter().zip(&self.basis) {
                    axpy(&mut out, ci, row);
                }
                out
            })
            .collect();
        Ok(Submodule::from_generators_unchecked(self.ring, self.ambient, gens))
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

/// A finite presentation: `generator_count` generators subject to the
/// relation rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub generator_count: usize,
    pub relations: Matrix,
}

/// The quotient `K^n / s` in Smith coordinates.
///
/// The quotient is `⊕ K/dᵢ` over the non-unit invariant factors followed by
/// free summands. `projection` maps ambient coordinates to quotient
/// coordinates (`x ↦ x · projection`, torsion coordinates not yet reduced),
/// and row `i` of `lift` is an ambient preimage of quotient generator `i`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub presentation: ModulePresentation,
    /// The modulus of each quotient coordinate; zero for free summands.
    pub moduli: Vec<Coeff>,
    pub projection: Matrix,
    pub lift: Matrix,
}

impl QuotientModule {
    /// Quotient coordinates of an ambient vector, torsion entries reduced
    /// into their canonical residue.
    pub fn project(&self, v: &[Coeff]) -> Result<Vec<Coeff>> {
        let ring = self.projection.ring();
        let mut out = self.projection.apply(v)?;
        for (x, d) in out.iter_mut().zip(&self.moduli) {
            if !d.is_zero() {
                *x = ring.div_rem(x, d).1;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.presentation.generator_count
    }
}

/// Presents `K^n / s` with canonical relations.
pub fn quotient_presentation(s: &Submodule) -> QuotientModule {
    let ring = s.ring();
    let n = s.ambient();
    let (d, _, v) = snf(&s.basis_matrix());
    let r = s.rank();
    let vinv = inverse(&v).expect("Smith column transform is unimodular");
    let mut keep = Vec::new();
    let mut moduli = Vec::new();
    for i in 0..n {
        if i < r {
            let di = d.get(i, i).clone();
            if ring.is_unit(&di) {
                continue;
            }
            moduli.push(di);
        } else {
            moduli.push(ring.zero());
        }
        keep.push(i);
    }
    let g = keep.len();
    let relations = moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut row = vec![ring.zero(); g];
            row[i] = m.clone();
            row
        })
        .collect();
    let projection = Matrix::from_rows_unchecked(
        ring,
        g,
        (0..n).map(|row| keep.iter().map(|&j| v.get(row, j).clone()).collect()).collect(),
    );
    let lift = Matrix::from_rows_unchecked(ring, n, keep.iter().map(|&j| vinv.row(j).to_vec()).collect());
    QuotientModule {
        presentation: ModulePresentation {
            generator_count: g,
            relations: Matrix::from_rows_unchecked(ring, g, relations),
        },
        moduli,
        projection,
        lift,
    }
}

/// Relations among a listed family of vectors: the kernel of the matrix whose
/// rows are the family.
pub fn relations_among(ring: Ring, ambient: usize, family: &[Vec<Coeff>]) -> Result<Submodule> {
    let m = Matrix::new(ring, ambient, family.to_vec())?;
    Ok(kernel(&m))
}
