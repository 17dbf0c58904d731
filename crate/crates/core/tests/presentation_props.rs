use std::sync::OnceLock;

use corank::fixtures::{cyclic_corpus, zeven};
use corank::linalg::vec_from_i64;
use corank::presentation::{Construction, MixedElement, YElement};
use corank::random::{random_coeff, random_poly};
use corank::Ring;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The corpus plus `zeven` with a redundant `U`, so that `M ≠ 0`.
fn constructions() -> &'static [(String, Construction)] {
    static ALL: OnceLock<Vec<(String, Construction)>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut out: Vec<_> = cyclic_corpus(3, 21)
            .into_iter()
            .map(|(n, rep)| (n, Construction::new(&rep, None).unwrap()))
            .collect();
        let z = Ring::Integers;
        let u = vec![vec_from_i64(z, &[0, 2]), vec_from_i64(z, &[0, 4])];
        out.push(("zeven_redundant".into(), Construction::new(&zeven(), Some(u)).unwrap()));
        out
    })
}

const COUNT: usize = 7 + 3 * 4 + 1;

fn mixed(rng: &mut ChaCha8Rng, c: &Construction) -> MixedElement {
    let tab = c.tables();
    let mut m = MixedElement::zero(tab);
    m.t_part = random_poly(rng, tab.ring(), tab.t_alphabet(), false, 2, 3);
    for v in m.v_part.iter_mut() {
        *v = random_coeff(rng, tab.ring());
    }
    m
}

fn y_element(rng: &mut ChaCha8Rng, c: &Construction) -> YElement {
    let mut y = YElement::zero(c.tables(), c.udata());
    y.t_part = random_poly(rng, c.tables().ring(), c.tables().t_alphabet(), false, 2, 3);
    for u in y.u_part.iter_mut() {
        *u = random_coeff(rng, c.tables().ring());
    }
    y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn psi_inverts_phi_and_is_a_module_map(idx in 0..COUNT, seed: u64) {
        let (name, c) = &constructions()[idx];
        let (rep, tab) = (c.rep(), c.tables());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, rep.ring(), rep.alphabet(), true, 5, 3);
        prop_assert_eq!(tab.psi_eval(&tab.phi(&p).unwrap()), p.clone(), "{}", name);
        let r = mixed(&mut rng, c);
        prop_assert_eq!(tab.psi_eval(&tab.star(&r, &p).unwrap()), &tab.psi_eval(&r) * &p, "{}", name);
    }

    #[test]
    fn pi_intertwines_the_actions(idx in 0..COUNT, seed: u64) {
        let (name, c) = &constructions()[idx];
        let (tab, ud) = (c.tables(), c.udata());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = y_element(&mut rng, c);
        let s = ud.pi(tab, &y);
        prop_assert_eq!(ud.pi(tab, &c.rho(&s).unwrap()), s.clone(), "{}: πρ ≠ id", name);
        let p = random_poly(&mut rng, tab.ring(), tab.x_alphabet(), true, 5, 3);
        prop_assert_eq!(ud.pi(tab, &c.starbar(&y, &p).unwrap()), tab.star(&s, &p).unwrap(), "{}", name);
    }

    #[test]
    fn phibar_is_additive_modulo_m(idx in 0..COUNT, seed: u64) {
        let (name, c) = &constructions()[idx];
        let rep = c.rep();
        let one = rep.ring().one();
        let m = c.udata().m_module();
        let in_m = |d: &YElement| d.t_part.is_zero() && m.contains(&d.u_part).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b] = [0, 1].map(|_| {
            rep.residual(&random_poly(&mut rng, rep.ring(), rep.alphabet(), false, 4, 4)).unwrap()
        });
        let fa = c.phibar(&a).unwrap();
        prop_assert_eq!(c.psibar_y(&fa), a.clone(), "{}: ψ̄φ̄ ≠ id", name);
        let mut sum = c.phibar(&(&a + &b)).unwrap();
        sum.add_scaled(&-one.clone(), &fa);
        sum.add_scaled(&-one.clone(), &c.phibar(&b).unwrap());
        prop_assert!(in_m(&sum), "{}: φ̄(a+b) ≢ φ̄(a)+φ̄(b)", name);
        let w = random_poly(&mut rng, rep.ring(), rep.alphabet(), true, 2, 2);
        let aw = (&a.embed_unital() * &w).to_nonunital().unwrap();
        let mut prod = c.phibar(&aw).unwrap();
        prod.add_scaled(&-one, &c.starbar(&fa, &w).unwrap());
        prop_assert!(in_m(&prod), "{}: φ̄(am) ≢ φ̄(a)⋆m", name);
    }
}

#[test]
fn every_relation_vanishes() {
    for (name, c) in constructions() {
        let pres = c.present().unwrap();
        assert!(pres.nonvanishing_relations().is_empty(), "{name}");
    }
}
