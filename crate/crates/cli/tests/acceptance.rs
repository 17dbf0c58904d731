//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the test fails if any criterion does.

mod common;

use std::time::Instant;

use corank::algebra::{
    ideal_membership_bounded, parse_poly, AlgebraHom, Alphabet, Polynomial, Side,
};
use corank::fixtures::{algebra_corpus, aug1, cyclic_corpus, named_cyclic, sub2, zeven};
use corank::generation::{finite_generating_set, rewrite_member, GenerationSpec};
use corank::linalg::{hnf, kernel, snf, vec_from_i64, Matrix};
use corank::presentation::{
    compose_extension, present_right_ideal, verify_presentation, Construction, MixedElement, YElement,
};
use corank::quotient::{CyclicModuleRep, IdealClass};
use corank::random::{random_coeff, random_poly};
use corank::{Coeff, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(String, CyclicModuleRep)> {
    cyclic_corpus(5, 2024)
}

fn random_mixed(rng: &mut ChaCha8Rng, c: &Construction) -> MixedElement {
    let tab = c.tables();
    let mut m = MixedElement::zero(tab);
    m.t_part = random_poly(rng, tab.ring(), tab.t_alphabet(), false, 2, 3);
    for v in m.v_part.iter_mut() {
        *v = random_coeff(rng, tab.ring());
    }
    m
}

fn random_y(rng: &mut ChaCha8Rng, c: &Construction) -> YElement {
    let tab = c.tables();
    let mut y = YElement::zero(tab, c.udata());
    y.t_part = random_poly(rng, tab.ring(), tab.t_alphabet(), false, 2, 3);
    for u in y.u_part.iter_mut() {
        *u = random_coeff(rng, tab.ring());
    }
    y
}

fn random_member(rng: &mut ChaCha8Rng, rep: &CyclicModuleRep, deg: usize) -> Polynomial {
    rep.residual(&random_poly(rng, rep.ring(), rep.alphabet(), false, deg, 4)).expect("residual")
}

/// `ψφ(p) = p` and `ψ(r * p) = ψ(r)·p` on random pairs of degree `≤ 8`.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let reps = corpus();
    let random = reps.iter().filter(|(n, _)| n.starts_with("random")).count();
    check(random >= 20, || format!("only {random} random representations"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = 0;
    for (name, rep) in &reps {
        let c = Construction::new(rep, None).map_err(|e| format!("{name}: {e}"))?;
        let tab = c.tables();
        for _ in 0..8 {
            let p = random_poly(&mut rng, rep.ring(), rep.alphabet(), true, 8, 3);
            let phi = tab.star(&MixedElement::v(tab, 0), &p).map_err(|e| e.to_string())?;
            check(tab.psi_eval(&phi) == p, || format!("{name}: ψφ({p}) differs"))?;
            let r = random_mixed(&mut rng, &c);
            let rp = tab.star(&r, &p).map_err(|e| e.to_string())?;
            let lhs = tab.psi_eval(&rp);
            let rhs = &tab.psi_eval(&r) * &p;
            check(lhs == rhs, || format!("{name}: ψ(r*p) ≠ ψ(r)p for p = {p}"))?;
            pairs += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(pairs >= 200, || format!("only {pairs} pairs"))?;
    check(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} representations ({random} random), {pairs} pairs under 60s", reps.len()))
}

/// `πρ = id`, `π(r⋆p) = π(r)*p`, `ψ̄φ̄ = id_R` and additivity of `φ̄`
/// modulo `M`.
fn criterion_2() -> Outcome {
    let mut reps = corpus();
    reps.push(("zeven_redundant_u".into(), zeven()));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checks = 0;
    for (i, (name, rep)) in reps.iter().enumerate() {
        let c = if name == "zeven_redundant_u" {
            let z = rep.ring();
            Construction::new(rep, Some(vec![vec_from_i64(z, &[0, 2]), vec_from_i64(z, &[0, 4])]))
        } else {
            Construction::new(rep, None)
        }
        .map_err(|e| format!("{name}: {e}"))?;
        let (tab, ud) = (c.tables(), c.udata());
        let m = ud.m_module();
        let in_m = |d: &YElement| d.t_part.is_zero() && m.contains(&d.u_part).unwrap_or(false);
        for _ in 0..6 {
            let y = random_y(&mut rng, &c);
            let s = ud.pi(tab, &y);
            let back = c.rho(&s).map_err(|e| format!("{name}: ρ failed: {e}"))?;
            check(ud.pi(tab, &back) == s, || format!("{name}: πρ ≠ id"))?;

            let p = random_poly(&mut rng, rep.ring(), rep.alphabet(), true, 4, 3);
            let lhs = ud.pi(tab, &c.starbar(&y, &p).map_err(|e| e.to_string())?);
            let rhs = tab.star(&s, &p).map_err(|e| e.to_string())?;
            check(lhs == rhs, || format!("{name}: π(r⋆p) ≠ π(r)*p for p = {p}"))?;

            let a = random_member(&mut rng, rep, 4);
            let b = random_member(&mut rng, rep, 4);
            let fa = c.phibar(&a).map_err(|e| e.to_string())?;
            check(c.psibar_y(&fa) == a, || format!("{name}: ψ̄φ̄({a}) ≠ {a}"))?;

            let mut sum = c.phibar(&(&a + &b)).map_err(|e| e.to_string())?;
            sum.add_scaled(&-rep.ring().one(), &fa);
            sum.add_scaled(&-rep.ring().one(), &c.phibar(&b).map_err(|e| e.to_string())?);
            check(in_m(&sum), || format!("{name}: φ̄ not additive modulo M"))?;

            let w = random_poly(&mut rng, rep.ring(), rep.alphabet(), true, 2, 2);
            let mut prod = c.phibar(&(&a.embed_unital() * &w).to_nonunital().unwrap()).map_err(|e| e.to_string())?;
            prod.add_scaled(&-rep.ring().one(), &c.starbar(&fa, &w).map_err(|e| e.to_string())?);
            check(in_m(&prod), || format!("{name}: φ̄(pm) ≢ φ̄(p)⋆m modulo M"))?;
            checks += 5;
        }
        if i == reps.len() - 1 {
            check(!m.is_zero(), || "redundant U should give a nonzero M".into())?;
        }
    }
    Ok(format!("{} representations, {checks} identity checks, 0 failures", reps.len()))
}

/// Every relation has zero witness image.
fn criterion_3() -> Outcome {
    let mut relations = 0;
    for (name, rep) in corpus() {
        let pres = present_right_ideal(&rep).map_err(|e| format!("{name}: {e}"))?;
        let bad = pres.nonvanishing_relations();
        check(bad.is_empty(), || format!("{name}: relations {bad:?} do not vanish"))?;
        relations += pres.relations.len();
    }
    Ok(format!("{relations} relations, all with zero image"))
}

/// Degree-`≤ 5` completeness on every fixture, plus the co-rank-one count
/// for the augmentation ideal.
fn criterion_4() -> Outcome {
    for (name, rep) in named_cyclic() {
        let pres = present_right_ideal(&rep).map_err(|e| e.to_string())?;
        let report = verify_presentation(&rep, &pres, 5, 10, 4).map_err(|e| e.to_string())?;
        check(report.complete(), || format!("{name}: {:?}", report.completeness))?;
    }
    let rep = aug1();
    let report = verify_presentation(&rep, &present_right_ideal(&rep).unwrap(), 5, 10, 4).unwrap();
    for d in &report.completeness {
        // one variable: d monomials of degree 1..=d, minus the co-rank
        let oracle = d.degree - 1;
        check(d.expected == oracle && d.achieved == oracle, || format!("degree {}: {:?}", d.degree, d))?;
    }
    check(report.completeness.len() == 5, || "missing degrees".into())?;
    Ok(format!("{} fixtures complete to degree 5; aug1 dims 0,1,2,3,4", named_cyclic().len()))
}

fn generation_specs() -> Vec<(String, GenerationSpec)> {
    let mut out = Vec::new();
    for (name, rep) in algebra_corpus(8, 5) {
        if rep.classify() == IdealClass::SubmoduleOnly {
            continue;
        }
        let all = (0..rep.alphabet().len() as u32).collect();
        let spec = match GenerationSpec::new(rep.clone(), all) {
            Ok(s) => s,
            Err(_) => GenerationSpec::with_extended_alphabet(&rep).expect("extension always generates"),
        };
        out.push((name, spec));
    }
    out
}

/// Generators are members and every member round-trips through rewriting.
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let specs = generation_specs();
    let mut rewrites = 0;
    for (name, spec) in &specs {
        let rep = spec.rep();
        let set = finite_generating_set(spec).map_err(|e| format!("{name}: {e}"))?;
        let gens = set.generators();
        for g in &gens {
            check(rep.is_member(g).unwrap(), || format!("{name}: generator {g} not a member"))?;
        }
        for _ in 0..100 {
            let q = random_poly(&mut rng, rep.ring(), rep.alphabet(), false, 6, 3);
            let p = &q - &spec.gamma(&q).map_err(|e| e.to_string())?;
            check(rep.is_member(&p).unwrap(), || format!("{name}: {p} should be a member"))?;
            let comb = rewrite_member(spec, &set, &p).map_err(|e| format!("{name}: rewriting {p}: {e}"))?;
            let value = comb.evaluate(&gens, &p).to_nonunital().map_err(|e| e.to_string())?;
            check(value == p, || format!("{name}: rewrite of {p} evaluates to {value}"))?;
            rewrites += 1;
        }
    }
    Ok(format!("{} specs, {rewrites} exact round trips", specs.len()))
}

/// The enclosed ideal lies in the subalgebra and absorbs products.
fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let corpus: Vec<_> =
        algebra_corpus(8, 6).into_iter().filter(|(_, r)| r.classify() != IdealClass::SubmoduleOnly).collect();
    check(corpus.len() >= 10, || format!("only {} algebra fixtures", corpus.len()))?;
    for (name, rep) in &corpus {
        let red = rep.reduce_to_ideal().map_err(|e| format!("{name}: {e}"))?;
        let lifts = red.rep.preimage_basis().map_err(|e| e.to_string())?;
        for _ in 0..20 {
            // project a random polynomial into I by subtracting lifts of its image in Q/J
            let p = random_poly(&mut rng, rep.ring(), rep.alphabet(), false, 3, 3);
            let mut i = p.clone();
            for (c, l) in red.rep.eval(&p).unwrap().iter().zip(&lifts) {
                i.add_scaled(&-c, l);
            }
            check(red.in_ideal(&i).unwrap(), || format!("{name}: {i} should lie in I"))?;
            check(rep.is_member(&i).unwrap(), || format!("{name}: I ⊄ B at {i}"))?;
            let a = random_poly(&mut rng, rep.ring(), rep.alphabet(), false, 3, 3);
            check(red.in_ideal(&(&a * &i)).unwrap() && red.in_ideal(&(&i * &a)).unwrap(), || {
                format!("{name}: I not closed under products with {a}")
            })?;
        }
    }
    let s = sub2();
    let red = s.reduce_to_ideal().unwrap();
    check(&red.j == s.marked_full() && red.rep.rank() == 1 && red.rep.marked().is_zero(), || {
        "sub2 should give I = B".into()
    })?;
    for w in 1..=6 {
        let p = parse_poly(&format!("x^{w}"), s.alphabet(), s.ring(), false).unwrap();
        check(red.in_ideal(&p).unwrap() == s.is_member(&p).unwrap(), || format!("sub2: I and B differ at x^{w}"))?;
    }
    Ok(format!("{} algebra fixtures; sub2 gives I = B", corpus.len()))
}

/// The worked extension example generates `Id(x³ − x²)`.
fn criterion_7() -> Outcome {
    let q = Ring::Rationals;
    let x = Alphabet::new(["x"]).unwrap();
    let t = Alphabet::new(["t"]).unwrap();
    let poly = |s: &str, a: &Alphabet| parse_poly(s, a, q, false).unwrap();
    let ext = compose_extension(
        q,
        &x,
        &[("t".into(), poly("x^2 - x", &x))],
        &[poly("t^2", &t)],
        &[poly("x^3 - x^2", &x)],
        3,
    )
    .map_err(|e| e.to_string())?
    .ok_or("no witnesses found")?;
    let target = poly("x^3 - x^2", &x);
    let forward = ideal_membership_bounded(&ext.i_generators, &target, Side::TwoSided, 6).map_err(|e| e.to_string())?;
    let cert = forward.ok_or("x³ − x² not certified in the computed ideal")?;
    check(cert.verify(&ext.i_generators, &[], &target), || "certificate does not expand".into())?;
    for g in &ext.i_generators {
        let back = ideal_membership_bounded(std::slice::from_ref(&target), g, Side::TwoSided, 6).map_err(|e| e.to_string())?;
        check(back.is_some_and(|c| c.verify(std::slice::from_ref(&target), &[], g)), || format!("{g} not in Id(x³ − x²)"))?;
    }
    let shown: Vec<String> = ext.i_generators.iter().map(|g| g.to_string()).collect();
    Ok(format!("I = Id({}) = Id(x^3 - x^2), cap 6 both ways", shown.join(", ")))
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// The semigroup relations and the iterated commutator.
fn criterion_8() -> Outcome {
    let z = Ring::Integers;
    let vw = Alphabet::new(["v", "w", "x", "y", "z"]).unwrap();
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let p = |s: &str, a: &Alphabet| parse_poly(s, a, z, false).unwrap();
    let rel = |n: u32| {
        let xs = if n == 0 { String::new() } else { format!("*x^{n}") };
        p(&format!("v{xs}*y - w{xs}*z"), &vw)
    };
    let images = ["b*a", "b*a^2", "a^3", "a^2*c", "a*c"].iter().map(|s| p(s, &abc)).collect();
    let h = AlgebraHom::new(z, &vw, &abc, false, images).unwrap();
    for n in 0..=10 {
        check(h.apply(&rel(n)).unwrap().is_zero(), || format!("(a) fails at n = {n}"))?;
    }
    for big_n in 0..=4u32 {
        let gens: Vec<_> = (0..=big_n).map(rel).collect();
        for cap in 0..=6 {
            let found = ideal_membership_bounded(&gens, &rel(big_n + 1), Side::TwoSided, cap).map_err(|e| e.to_string())?;
            check(found.is_none(), || format!("(b) certificate found for N = {big_n}, cap = {cap}"))?;
        }
    }
    let xy = Alphabet::new(["x", "y"]).unwrap();
    let xv = p("x", &xy);
    let mut bracket = p("y", &xy);
    for n in 1..=8u32 {
        bracket = &(&bracket * &xv) - &(&xv * &bracket);
        let mut expected = Polynomial::zero(z, &xy, false);
        for i in 0..=n {
            let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
            let mut parts = vec![];
            if n > i {
                parts.push(format!("x^{}", n - i));
            }
            parts.push("y".into());
            if i > 0 {
                parts.push(format!("x^{i}"));
            }
            expected.add_scaled(&z.from_i64(sign * binomial(n, i)), &p(&parts.join("*"), &xy));
        }
        check(bracket == expected, || format!("(c) fails at n = {n}"))?;
    }
    Ok("(a) n ≤ 10, (b) N ≤ 4 and caps ≤ 6, (c) n ≤ 8".into())
}

/// Leibniz expansion, independent of the library's elimination.
fn leibniz(m: &Matrix) -> Coeff {
    fn go(m: &Matrix, row: usize, used: &mut Vec<bool>, sign: i64) -> Coeff {
        let ring = m.ring();
        if row == m.nrows() {
            return ring.from_i64(sign);
        }
        let mut total = ring.zero();
        for j in 0..m.ncols() {
            if used[j] {
                continue;
            }
            // sign of placing column j: parity of unused columns before j
            let before = (0..j).filter(|&k| !used[k]).count();
            let s = if before % 2 == 0 { sign } else { -sign };
            if m.get(row, j).is_zero() {
                continue;
            }
            used[j] = true;
            total += &(m.get(row, j) * &go(m, row + 1, used, s));
            used[j] = false;
        }
        total
    }
    go(m, 0, &mut vec![false; m.ncols()], 1)
}

fn random_int_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    let z = Ring::Integers;
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    // sparse-ish so that ranks vary
                    if rng.gen_bool(0.25) {
                        z.zero()
                    } else {
                        z.from_i64(rng.gen_range(-100..=100))
                    }
                })
                .collect()
        })
        .collect();
    Matrix::new(z, c, rows).unwrap()
}

fn is_unit(c: &Coeff) -> bool {
    c.to_i64().is_some_and(|v| v == 1 || v == -1)
}

fn gcd_i(a: &Coeff, b: &Coeff) -> Coeff {
    Ring::Integers.ext_gcd(a, b).0
}

/// HNF and SNF on random integer matrices, kernels over F₂ and F₃ against
/// enumeration.
fn criterion_9() -> Outcome {
    let z = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..500 {
        let m = random_int_matrix(&mut rng);
        let (h, u) = hnf(&m);
        check(u.mul(&m).unwrap() == h, || format!("#{trial}: U·M ≠ H"))?;
        check(is_unit(&leibniz(&u)), || format!("#{trial}: HNF transform not unimodular"))?;
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.nrows() {
            match (0..h.ncols()).find(|&j| !h.get(i, j).is_zero()) {
                None => seen_zero = true,
                Some(j) => {
                    check(!seen_zero, || format!("#{trial}: zero row above a nonzero row"))?;
                    check(last_pivot.is_none_or(|l| j > l), || format!("#{trial}: pivots not increasing"))?;
                    let piv = h.get(i, j);
                    check(!piv.is_negative(), || format!("#{trial}: negative pivot"))?;
                    for k in 0..i {
                        let e = h.get(k, j);
                        check(!e.is_negative() && (e - piv).is_negative(), || format!("#{trial}: entry above pivot not reduced"))?;
                    }
                    last_pivot = Some(j);
                }
            }
        }

        let (s, u, v) = snf(&m);
        check(u.mul(&m).unwrap().mul(&v).unwrap() == s, || format!("#{trial}: U·M·V ≠ S"))?;
        check(is_unit(&leibniz(&u)) && is_unit(&leibniz(&v)), || format!("#{trial}: SNF transforms not unimodular"))?;
        let diag: Vec<Coeff> = (0..m.nrows().min(m.ncols())).map(|i| s.get(i, i).clone()).collect();
        for i in 0..s.nrows() {
            for j in 0..s.ncols() {
                check(i == j || s.get(i, j).is_zero(), || format!("#{trial}: S not diagonal"))?;
            }
        }
        for w in diag.windows(2) {
            check(!w[0].is_negative() && z.divides(&w[0], &w[1]), || format!("#{trial}: divisibility chain broken"))?;
        }
        // d₁ is the gcd of all entries; for square matrices the product is |det|
        let g = m.rows().iter().flatten().fold(z.zero(), |acc, e| gcd_i(&acc, e));
        check(diag[0] == g, || format!("#{trial}: d₁ = {} but gcd of entries = {g}", diag[0]))?;
        if m.nrows() == m.ncols() {
            let prod = diag.iter().fold(z.one(), |acc, d| &acc * d);
            check(prod == leibniz(&m).abs(), || format!("#{trial}: product of invariant factors ≠ |det|"))?;
        }
    }

    let mut maps = 0;
    for p in [2u32, 3] {
        let f = Ring::PrimeField(p);
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let rows =
                (0..r).map(|_| (0..c).map(|_| f.from_i64(rng.gen_range(0..p as i64))).collect()).collect::<Vec<Vec<_>>>();
            let m = Matrix::new(f, c, rows).unwrap();
            let k = kernel(&m);
            let mut count = 0u64;
            for code in 0..(p as u64).pow(r as u32) {
                let vec: Vec<Coeff> = (0..r).map(|i| f.from_i64(((code / (p as u64).pow(i as u32)) % p as u64) as i64)).collect();
                let zero = (0..c).all(|j| {
                    let dot = (0..r).fold(0i64, |acc, i| acc + vec[i].to_i64().unwrap() * m.get(i, j).to_i64().unwrap());
                    dot % p as i64 == 0
                });
                check(zero == k.contains(&vec).unwrap(), || format!("F{p}: kernel membership disagrees"))?;
                count += zero as u64;
            }
            check(count == (p as u64).pow(k.rank() as u32), || format!("F{p}: kernel size mismatch"))?;
            maps += 1;
        }
    }
    Ok(format!("500 integer matrices, {maps} maps over F2/F3 enumerated"))
}

/// Byte-identical command output against the golden files.
fn criterion_10() -> Outcome {
    let cases = common::cases();
    for c in &cases {
        let (code, out) = common::run(c);
        let path = common::golden_path(c);
        let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        check(code == c.exit, || format!("{}: exit {code}", path.display()))?;
        check(out == expected, || format!("{}: output differs", path.display()))?;
    }
    Ok(format!("{} golden files byte-identical", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("psi-phi identities", criterion_1),
        ("rho, star and phi-bar identities", criterion_2),
        ("presentation soundness", criterion_3),
        ("presentation completeness", criterion_4),
        ("finite generation", criterion_5),
        ("enclosed ideal", criterion_6),
        ("extension combiner", criterion_7),
        ("non-finitely presented regressions", criterion_8),
        ("exact linear algebra", criterion_9),
        ("cli determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
