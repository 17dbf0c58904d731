//! Small named representations plus seeded random ones, shared by the test
//! suites, the command line tool and the guide.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{parse_poly, Alphabet, Polynomial};
use crate::linalg::{solve_linear, unit_vec, vec_from_i64, Matrix, Submodule};
use crate::quotient::{AlgebraRep, ClosureMode, CyclicModuleRep};
use crate::random::random_coeff;
use crate::ring::{Coeff, Ring};

const VARIABLES: [&str; 3] = ["x", "y", "z"];

fn alphabet(n: usize) -> Alphabet {
    Alphabet::new(VARIABLES[..n].iter().copied()).expect("valid names")
}

fn var(ring: Ring, a: &Alphabet, name: &str) -> Polynomial {
    parse_poly(name, a, ring, false).expect("variable")
}

/// Polynomials with zero coefficient sum: `x ↦ e ↦ g`, `g ↦ g`, `N = 0`.
pub fn aug1() -> CyclicModuleRep {
    aug1_over(Ring::Rationals)
}

pub fn aug1_over(ring: Ring) -> CyclicModuleRep {
    let x = alphabet(1);
    CyclicModuleRep::new(
        ring,
        x.clone(),
        vec!["x".into()],
        vec![var(ring, &x, "x")],
        vec![],
        vec![Matrix::from_i64(ring, &[&[0, 1], &[0, 1]])],
    )
    .expect("valid")
}

/// Integer polynomials with even coefficient sum.
pub fn zeven() -> CyclicModuleRep {
    let z = Ring::Integers;
    let x = alphabet(1);
    CyclicModuleRep::new(
        z,
        x.clone(),
        vec!["x".into()],
        vec![var(z, &x, "x")],
        vec![vec_from_i64(z, &[0, 2])],
        vec![Matrix::from_i64(z, &[&[0, 1], &[0, 1]])],
    )
    .expect("valid")
}

/// A right ideal of `K⟨x, y⟩` that is not two-sided: `x` sends `e` and `g`
/// to `g`, `y` sends `e` to `0` and fixes `g`. Then `y ∈ R` but `x·y ∉ R`.
pub fn rnt() -> CyclicModuleRep {
    rnt_over(Ring::Rationals)
}

pub fn rnt_over(ring: Ring) -> CyclicModuleRep {
    let xy = alphabet(2);
    CyclicModuleRep::new(
        ring,
        xy.clone(),
        vec!["x".into()],
        vec![var(ring, &xy, "x")],
        vec![],
        vec![Matrix::from_i64(ring, &[&[0, 1], &[0, 1]]), Matrix::from_i64(ring, &[&[0, 0], &[0, 1]])],
    )
    .expect("valid")
}

/// The raw data `ρ(x): e ↦ g, g ↦ 0`, `ρ(y): e ↦ 0, g ↦ e`, which breaks
/// the requirement that `g·ρ(y)` have no `e` component.
pub fn rnt_unchecked_parts() -> (Ring, Alphabet, Vec<String>, Vec<Polynomial>, Vec<Matrix>) {
    let q = Ring::Rationals;
    let xy = alphabet(2);
    let reps = vec![var(q, &xy, "x")];
    let action = vec![Matrix::from_i64(q, &[&[0, 1], &[0, 0]]), Matrix::from_i64(q, &[&[0, 0], &[1, 0]])];
    (q, xy, vec!["x".into()], reps, action)
}

/// The named cyclic fixtures, with F₂ and F₅ variants.
pub fn named_cyclic() -> Vec<(String, CyclicModuleRep)> {
    vec![
        ("aug1".into(), aug1()),
        ("zeven".into(), zeven()),
        ("rnt".into(), rnt()),
        ("aug1_f2".into(), aug1_over(Ring::PrimeField(2))),
        ("rnt_f2".into(), rnt_over(Ring::PrimeField(2))),
        ("aug1_z".into(), aug1_over(Ring::Integers)),
        ("rnt_f5".into(), rnt_over(Ring::PrimeField(5))),
    ]
}

/// A random valid representation with `|X| ≤ 3` and co-rank `≤ 3`.
///
/// The first `k` variables are the representatives, so `e·ρ(x_b) = g_b`;
/// the remaining rows of every matrix are random with no `e` component.
/// Over `ℤ` the relations are `m·g` for a random `m ∈ {0, 2, 3}`, which every
/// integer matrix preserves.
pub fn random_cyclic<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> CyclicModuleRep {
    let nx = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=nx);
    let a = alphabet(nx);
    let dim = k + 1;
    let mut action = Vec::with_capacity(nx);
    for xi in 0..nx {
        let mut rows = Vec::with_capacity(dim);
        rows.push(if xi < k {
            unit_vec(ring, dim, xi + 1)
        } else {
            std::iter::once(ring.zero()).chain((0..k).map(|_| random_coeff(rng, ring))).collect()
        });
        for _ in 0..k {
            rows.push(std::iter::once(ring.zero()).chain((0..k).map(|_| random_coeff(rng, ring))).collect());
        }
        action.push(Matrix::new(ring, dim, rows).expect("square"));
    }
    let relations = match ring {
        Ring::Integers => {
            let m = [0, 2, 3][rng.gen_range(0..3)];
            if m == 0 {
                vec![]
            } else {
                (1..dim).map(|i| {
                    let mut v = vec![ring.zero(); dim];
                    v[i] = ring.from_i64(m);
                    v
                }).collect()
            }
        }
        _ => vec![],
    };
    let labels = VARIABLES[..k].iter().map(|s| s.to_string()).collect();
    let reps = VARIABLES[..k].iter().map(|s| var(ring, &a, s)).collect();
    CyclicModuleRep::new(ring, a, labels, reps, relations, action).expect("valid by construction")
}

/// Named fixtures followed by `per_ring` random representations over each
/// of `ℤ`, `ℚ`, `F₂`, `F₅`.
pub fn cyclic_corpus(per_ring: usize, seed: u64) -> Vec<(String, CyclicModuleRep)> {
    let mut out = named_cyclic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2), Ring::PrimeField(5)] {
        for i in 0..per_ring {
            out.push((format!("random_{}_{i}", ring.name()), random_cyclic(&mut rng, ring)));
        }
    }
    out
}

/// `Q = span(t, t²)` with `t·t = t²` and all other products zero, `π(x) = t`.
pub fn sub2_with(marked: &[&[i64]]) -> AlgebraRep {
    let q = Ring::Rationals;
    let v = |a: &[i64]| vec_from_i64(q, a);
    AlgebraRep::new(
        q,
        alphabet(1),
        2,
        vec![],
        vec![vec![v(&[0, 1]), v(&[0, 0])], vec![v(&[0, 0]), v(&[0, 0])]],
        vec![v(&[1, 0])],
        marked.iter().map(|m| v(m)).collect(),
    )
    .expect("valid")
}

/// The subalgebra `π⁻¹(span t²) = span{x², x³, …}`.
pub fn sub2() -> AlgebraRep {
    sub2_with(&[&[0, 1]])
}

/// `Q = F₂` with its own product, both variables mapping to `1`, `S = 0`:
/// polynomials over `F₂⟨x, y⟩` with even coefficient sum.
pub fn f2_parity() -> AlgebraRep {
    let f2 = Ring::PrimeField(2);
    let one = vec![f2.one()];
    AlgebraRep::new(f2, alphabet(2), 1, vec![], vec![vec![one.clone()]], vec![one.clone(), one], vec![])
        .expect("valid")
}

/// The algebra generated by random `n × n` matrices (one per variable),
/// in coordinates of a canonical basis, with a random marked subalgebra.
pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> AlgebraRep {
    let nx = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=2);
    let flat = |m: &Matrix| -> Vec<Coeff> { m.rows().iter().flatten().cloned().collect() };
    let unflat = |v: &[Coeff]| -> Matrix { Matrix::new(ring, n, v.chunks(n).map(|r| r.to_vec()).collect()).expect("square") };
    let gens: Vec<Matrix> = (0..nx)
        .map(|_| {
            let rows = (0..n).map(|_| (0..n).map(|_| random_coeff(rng, ring)).collect()).collect();
            Matrix::new(ring, n, rows).expect("square")
        })
        .collect();
    let mut span = Submodule::new(ring, n * n, gens.iter().map(flat).collect()).expect("dims");
    loop {
        let more: Vec<Vec<Coeff>> = span
            .basis()
            .iter()
            .flat_map(|b| gens.iter().map(move |g| (b, g)))
            .map(|(b, g)| flat(&unflat(b).mul(g).expect("square")))
            .collect();
        let next = span.extend(more).expect("dims");
        if next == span {
            break;
        }
        span = next;
    }
    let basis = span.basis().to_vec();
    let rank = basis.len();
    if rank == 0 {
        return random_algebra(rng, ring);
    }
    let coords = |v: &[Coeff]| -> Vec<Coeff> {
        let m = Matrix::new(ring, n * n, basis.clone()).expect("dims");
        solve_linear(&m, v).expect("dims").expect("closed under products")
    };
    let structure = basis
        .iter()
        .map(|a| basis.iter().map(|b| coords(&flat(&unflat(a).mul(&unflat(b)).expect("square")))).collect())
        .collect();
    let images = gens.iter().map(|g| coords(&flat(g))).collect();
    let marked = (0..rng.gen_range(0..=2).min(rank))
        .map(|_| (0..rank).map(|_| random_coeff(rng, ring)).collect())
        .collect();
    let seeded = AlgebraRep::new(ring, alphabet(nx), rank, vec![], structure, images, marked).expect("valid by construction");
    // close the marked submodule under products so it describes a subalgebra
    let closed = seeded.closure_submodule(seeded.marked(), ClosureMode::Subalgebra);
    AlgebraRep::new(
        ring,
        seeded.alphabet().clone(),
        rank,
        vec![],
        seeded.structure().to_vec(),
        seeded.images().to_vec(),
        closed.basis().to_vec(),
    )
    .expect("valid by construction")
}

/// The named algebra fixtures plus `count` random ones cycling through the
/// four rings.
pub fn algebra_corpus(count: usize, seed: u64) -> Vec<(String, AlgebraRep)> {
    let mut out = vec![
        ("sub2".to_string(), sub2()),
        ("sub2_zero".to_string(), sub2_with(&[])),
        ("sub2_full".to_string(), sub2_with(&[&[1, 0], &[0, 1]])),
        ("f2_parity".to_string(), f2_parity()),
    ];
    let rings = [Ring::Integers, Ring::Rationals, Ring::PrimeField(2), Ring::PrimeField(5)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let ring = rings[i % rings.len()];
        out.push((format!("random_{}_{i}", ring.name()), random_algebra(&mut rng, ring)));
    }
    out
}
