use crate::linalg::matrix::Matrix;
use crate::ring::{Coeff, Ring};

/// Smith normal form: returns `(s, u, v)` with `u · m · v = s`, `u` and `v`
/// unimodular, `s` diagonal with nonnegative entries `d₁ | d₂ | …`.
pub fn snf(m: &Matrix) -> (Matrix, Matrix, Matrix) {
    let ring = m.ring();
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.rows().to_vec();
    let mut u = Matrix::identity(ring, r).into_rows();
    let mut v = Matrix::identity(ring, c).into_rows();

    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_in_block(ring, &a, t) else { break };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -ring.div_rem(&a[i][t], &a[t][t]).0;
                row_axpy(&mut a, i, &q, t);
                row_axpy(&mut u, i, &q, t);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -ring.div_rem(&a[t][j], &a[t][t]).0;
                col_axpy(&mut a, j, &q, t);
                col_axpy(&mut v, j, &q, t);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // bring the smallest entry of row t / column t to the corner
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a[i][t].is_zero() && a[i][t].size_key() < a[best.0][best.1].size_key() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a[t][j].is_zero() && a[t][j].size_key() < a[best.0][best.1].size_key() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, &mut u, t, best.0);
                swap_cols(&mut a, &mut v, t, best.1);
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !ring.divides(&a[t][t], &a[i][j])));
            match bad {
                Some(i) => {
                    let one = ring.one();
                    row_axpy(&mut a, t, &one, i);
                    row_axpy(&mut u, t, &one, i);
                }
                None => break,
            }
        }
        let unit = ring.normalizing_unit(&a[t][t]);
        if !unit.is_one() {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = &*x * &unit;
            }
        }
    }
    (
        Matrix::from_rows_unchecked(ring, c, a),
        Matrix::from_rows_unchecked(ring, r, u),
        Matrix::from_rows_unchecked(ring, c, v),
    )
}

/// Diagonal entries of the Smith form (length `min(rows, cols)`).
pub fn invariant_factors(m: &Matrix) -> Vec<Coeff> {
    let (s, _, _) = snf(m);
    (0..m.nrows().min(m.ncols())).map(|i| s.get(i, i).clone()).collect()
}

fn smallest_in_block(ring: Ring, a: &[Vec<Coeff>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if ring.is_field() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| x.size_key() < a[bi][bj].size_key()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows(a: &mut [Vec<Coeff>], u: &mut [Vec<Coeff>], i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        u.swap(i, j);
    }
}

fn swap_cols(a: &mut [Vec<Coeff>], v: &mut [Vec<Coeff>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
    }
}

fn row_axpy(a: &mut [Vec<Coeff>], dst: usize, q: &Coeff, src: usize) {
    if q.is_zero() {
        return;
    }
    let add: Vec<Coeff> = a[src].iter().map(|x| q * x).collect();
    for (d, s) in a[dst].iter_mut().zip(&add) {
        *d += s;
    }
}

fn col_axpy(a: &mut [Vec<Coeff>], dst: usize, q: &Coeff, src: usize) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let add = q * &row[src];
            row[dst] += &add;
        }
    }
}
