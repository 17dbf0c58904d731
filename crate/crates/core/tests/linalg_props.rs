use corank::linalg::{determinant, hnf, kernel, quotient_presentation, snf, Matrix, Submodule};
use corank::{Coeff, Ring};
use proptest::prelude::*;

fn matrix_over(ring: Ring, rows: Vec<Vec<i64>>) -> Matrix {
    let cols = rows[0].len();
    let rows = rows.into_iter().map(|r| r.into_iter().map(|e| ring.from_i64(e)).collect()).collect();
    Matrix::new(ring, cols, rows).unwrap()
}

fn entries(max_rows: usize, max_cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(lo..=hi, c), r))
}

fn is_unit(c: &Coeff) -> bool {
    matches!(c.to_i64(), Some(1) | Some(-1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_is_a_unimodular_canonical_form(rows in entries(6, 6, -100, 100)) {
        let m = matrix_over(Ring::Integers, rows);
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(is_unit(&determinant(&u).unwrap()));
        prop_assert_eq!(hnf(&h).0, h);
    }

    #[test]
    fn snf_is_diagonal_with_divisibility_chain(rows in entries(6, 6, -100, 100)) {
        let z = Ring::Integers;
        let m = matrix_over(z, rows);
        let (s, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s.clone());
        prop_assert!(is_unit(&determinant(&u).unwrap()) && is_unit(&determinant(&v).unwrap()));
        for i in 0..s.nrows() {
            for j in 0..s.ncols() {
                prop_assert!(i == j || s.get(i, j).is_zero());
            }
        }
        let k = s.nrows().min(s.ncols());
        for i in 1..k {
            prop_assert!(!s.get(i - 1, i - 1).is_negative());
            prop_assert!(z.divides(s.get(i - 1, i - 1), s.get(i, i)));
        }
    }

    #[test]
    fn kernel_matches_enumeration(p in prop::sample::select(vec![2u32, 3, 5]), rows in entries(4, 4, 0, 4)) {
        let f = Ring::PrimeField(p);
        let m = matrix_over(f, rows);
        let k = kernel(&m);
        let (r, c) = (m.nrows(), m.ncols());
        let mut size = 0u64;
        for code in 0..(p as u64).pow(r as u32) {
            let digits: Vec<i64> = (0..r).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as i64).collect();
            let zero = (0..c).all(|j| {
                (0..r).map(|i| digits[i] * m.get(i, j).to_i64().unwrap()).sum::<i64>() % p as i64 == 0
            });
            let v: Vec<Coeff> = digits.iter().map(|&d| f.from_i64(d)).collect();
            prop_assert_eq!(zero, k.contains(&v).unwrap());
            size += zero as u64;
        }
        prop_assert_eq!(size, (p as u64).pow(k.rank() as u32));
    }

    #[test]
    fn reduce_is_constant_on_cosets(
        gens in entries(4, 5, -9, 9),
        v in prop::collection::vec(-50i64..=50, 5),
        coeffs in prop::collection::vec(-5i64..=5, 4),
    ) {
        let z = Ring::Integers;
        let n = gens[0].len();
        let s = Submodule::new(z, n, matrix_over(z, gens.clone()).into_rows()).unwrap();
        let v: Vec<Coeff> = v[..n].iter().map(|&e| z.from_i64(e)).collect();
        let mut w = v.clone();
        for (g, &c) in gens.iter().zip(&coeffs) {
            for (wi, &gi) in w.iter_mut().zip(g) {
                *wi = &*wi + &z.from_i64(c * gi);
            }
        }
        prop_assert_eq!(s.reduce(&v).unwrap().0, s.reduce(&w).unwrap().0);
        let (zero, inside) = s.reduce(&vec![z.zero(); n]).unwrap();
        prop_assert!(inside && zero.iter().all(Coeff::is_zero));
    }

    #[test]
    fn quotient_presentation_ignores_the_generating_list(
        gens in entries(4, 4, -12, 12),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8),
    ) {
        let z = Ring::Integers;
        let n = gens[0].len();
        let first = matrix_over(z, gens).into_rows();
        // elementary row operations and a redundant sum leave the span unchanged
        let mut second = first.clone();
        for (i, j, c) in ops {
            let (i, j) = (i % second.len(), j % second.len());
            if i != j {
                let src = second[j].clone();
                for (a, b) in second[i].iter_mut().zip(&src) {
                    *a = &*a + &(&z.from_i64(c) * b);
                }
            }
        }
        second.reverse();
        let sum = second.iter().fold(vec![z.zero(); n], |acc, r| acc.iter().zip(r).map(|(a, b)| a + b).collect());
        second.push(sum);
        let a = quotient_presentation(&Submodule::new(z, n, first).unwrap());
        let b = quotient_presentation(&Submodule::new(z, n, second).unwrap());
        prop_assert_eq!(a.moduli, b.moduli);
    }
}
