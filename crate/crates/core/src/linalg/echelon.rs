//! Row Hermite normal form and everything built directly on it: kernels,
//! canonical particular solutions and transforms.
//!
//! Over a field the same elimination produces the reduced row echelon form
//! (pivots normalised to one, entries above pivots cleared).

use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, is_zero_vec, unit_vec, Matrix};
use crate::linalg::submodule::Submodule;
use crate::ring::{Coeff, Ring};

/// In-place row echelonization. Applies every row operation to `transform`
/// as well, when given. Returns the pivot column of each nonzero row; zero
/// rows end up at the bottom.
pub(crate) fn echelonize(
    ring: Ring,
    cols: usize,
    rows: &mut [Vec<Coeff>],
    mut transform: Option<&mut Vec<Vec<Coeff>>>,
) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..cols {
        if p == n {
            break;
        }
        loop {
            let best = if ring.is_field() {
                (p..n).find(|&i| !rows[i][col].is_zero())
            } else {
                (p..n)
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by_key(|&i| rows[i][col].size_key())
            };
            let Some(best) = best else { break };
            if best != p {
                rows.swap(best, p);
                if let Some(t) = transform.as_deref_mut() {
                    t.swap(best, p);
                }
            }
            let mut done = true;
            for i in p + 1..n {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = -ring.div_rem(&rows[i][col], &rows[p][col]).0;
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[p]);
                if let Some(t) = transform.as_deref_mut() {
                    let (head, tail) = t.split_at_mut(i);
                    axpy(&mut tail[0], &q, &head[p]);
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[p][col].is_zero() {
            continue;
        }
        let unit = ring.normalizing_unit(&rows[p][col]);
        if !unit.is_one() {
            scale_row(&mut rows[p], &unit);
            if let Some(t) = transform.as_deref_mut() {
                scale_row(&mut t[p], &unit);
            }
        }
        for r in 0..p {
            if rows[r][col].is_zero() {
                continue;
            }
            let q = -ring.div_rem(&rows[r][col], &rows[p][col]).0;
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(p);
            axpy(&mut head[r], &q, &tail[0]);
            if let Some(t) = transform.as_deref_mut() {
                let (head, tail) = t.split_at_mut(p);
                axpy(&mut head[r], &q, &tail[0]);
            }
        }
        pivots.push(col);
        p += 1;
    }
    pivots
}

fn scale_row(row: &mut [Coeff], unit: &Coeff) {
    for c in row.iter_mut() {
        if !c.is_zero() {
            *c = &*c * unit;
        }
    }
}

/// Row Hermite normal form `h` of `m` with a unimodular `u` such that
/// `u · m = h`.
///
/// Conventions: row echelon, pivots positive, entries above each pivot
/// reduced into `[0, pivot)`, zero rows last. Over a field the result is the
/// reduced row echelon form and `u` records the row operations.
pub fn hnf(m: &Matrix) -> (Matrix, Matrix) {
    let ring = m.ring();
    let mut rows = m.rows().to_vec();
    let mut u = Matrix::identity(ring, m.nrows()).into_rows();
    echelonize(ring, m.ncols(), &mut rows, Some(&mut u));
    (
        Matrix::from_rows_unchecked(ring, m.ncols(), rows),
        Matrix::from_rows_unchecked(ring, m.nrows(), u),
    )
}

/// The left kernel `{ c : c · map = 0 }`, canonicalised.
pub fn kernel(map: &Matrix) -> Submodule {
    let ring = map.ring();
    let mut rows = map.rows().to_vec();
    let mut u = Matrix::identity(ring, map.nrows()).into_rows();
    let pivots = echelonize(ring, map.ncols(), &mut rows, Some(&mut u));
    let gens = u.split_off(pivots.len());
    Submodule::from_generators_unchecked(ring, map.nrows(), gens)
}

/// `{ c : c · map ∈ modulus }` for a submodule `modulus` of the target.
pub fn kernel_modulo(map: &Matrix, modulus: &Submodule) -> Result<Submodule> {
    if modulus.ambient() != map.ncols() {
        return Err(Error::DimensionMismatch { expected: map.ncols(), found: modulus.ambient() });
    }
    let ring = map.ring();
    let stacked = Matrix::from_rows_unchecked(
        ring,
        map.ncols(),
        map.rows().iter().chain(modulus.basis()).cloned().collect(),
    );
    let k = kernel(&stacked);
    let n = map.nrows();
    let gens = k.basis().iter().map(|v| v[..n].to_vec()).collect();
    Ok(Submodule::from_generators_unchecked(ring, n, gens))
}

/// A canonical particular solution `x` of `x · map = target`, or `None` when
/// the system has no solution over the ring.
///
/// The solution is obtained by back-substitution through the Hermite form
/// and then reduced modulo the kernel, so it depends only on `map` and
/// `target`.
pub fn solve_linear(map: &Matrix, target: &[Coeff]) -> Result<Option<Vec<Coeff>>> {
    if target.len() != map.ncols() {
        return Err(Error::DimensionMismatch { expected: map.ncols(), found: target.len() });
    }
    let ring = map.ring();
    let mut rows = map.rows().to_vec();
    let mut u = Matrix::identity(ring, map.nrows()).into_rows();
    let pivots = echelonize(ring, map.ncols(), &mut rows, Some(&mut u));
    let mut residual = target.to_vec();
    let mut x = vec![ring.zero(); map.nrows()];
    for (i, &c) in pivots.iter().enumerate() {
        if residual[c].is_zero() {
            continue;
        }
        let (q, r) = ring.div_rem(&residual[c], &rows[i][c]);
        if !r.is_zero() {
            return Ok(None);
        }
        axpy(&mut residual, &-&q, &rows[i]);
        axpy(&mut x, &q, &u[i]);
    }
    if !is_zero_vec(&residual) {
        return Ok(None);
    }
    let kernel = Submodule::from_generators_unchecked(ring, map.nrows(), u.split_off(pivots.len()));
    Ok(Some(kernel.reduce(&x)?.0))
}

/// Inverse of a unimodular (over fields: invertible) square matrix.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
    }
    let (h, u) = hnf(m);
    if h != Matrix::identity(m.ring(), n) {
        return Err(Error::Hypothesis("matrix is not invertible over the ring".into()));
    }
    Ok(u)
}

/// The `i`-th standard basis row of `K^n`, exposed for callers building maps.
pub fn basis_row(ring: Ring, n: usize, i: usize) -> Vec<Coeff> {
    unit_vec(ring, n, i)
}
