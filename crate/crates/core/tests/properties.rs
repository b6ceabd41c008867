mod oracles;

use fliftlab::fp_poly::{is_prime, parse_poly, Monomial, Poly};
use fliftlab::frobsplit::{delta1, frobenius_decompose, trace_u};
use fliftlab::groebner::{GroebnerBasis, MonomialOrder};
use proptest::prelude::*;

const PRIMES: [u32; 5] = [2, 3, 5, 7, 101];

fn terms(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<([u32; 3], u32)>> {
    prop::collection::vec(
        ([0..=max_exp, 0..=max_exp, 0..=max_exp], any::<u32>()),
        0..=max_terms,
    )
}

fn build(p: u32, t: &[([u32; 3], u32)]) -> Poly {
    let r = oracles::ring(p);
    Poly::from_terms(
        &r,
        t.iter().map(|(e, c)| (Monomial::from_exponents(e), c % p)),
    )
}

fn poly_pair(max_exp: u32, max_terms: usize) -> impl Strategy<Value = (Poly, Poly)> {
    (
        0..PRIMES.len(),
        terms(max_exp, max_terms),
        terms(max_exp, max_terms),
    )
        .prop_map(|(i, a, b)| (build(PRIMES[i], &a), build(PRIMES[i], &b)))
}

fn poly_triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (0..PRIMES.len(), terms(4, 5), terms(4, 5), terms(4, 5)).prop_map(|(i, a, b, c)| {
        (
            build(PRIMES[i], &a),
            build(PRIMES[i], &b),
            build(PRIMES[i], &c),
        )
    })
}

fn small_ideal() -> impl Strategy<Value = (Vec<Poly>, Poly, Poly)> {
    (
        0..4usize,
        prop::collection::vec(terms(3, 3), 1..=3),
        terms(4, 5),
        terms(4, 5),
    )
        .prop_map(|(i, gens, a, b)| {
            let p = PRIMES[i];
            (
                gens.iter().map(|g| build(p, g)).collect(),
                build(p, &a),
                build(p, &b),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_laws((f, g, h) in poly_triple()) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.mul(&Poly::one(f.ring())).unwrap(), f.clone());
    }

    #[test]
    fn frobenius_is_additive((f, g) in poly_pair(3, 4)) {
        let p = f.p() as u64;
        prop_assume!(p < 100);
        prop_assert_eq!(f.frobenius().unwrap(), f.pow(p).unwrap());
        prop_assert_eq!(
            f.add(&g).unwrap().frobenius().unwrap(),
            f.frobenius().unwrap().add(&g.frobenius().unwrap()).unwrap()
        );
    }

    #[test]
    fn print_then_parse((f, _) in poly_pair(9, 8)) {
        let back = parse_poly(&f.to_string(), f.ring()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn leibniz_rule((f, g) in poly_pair(5, 5), var in 0..3usize) {
        let lhs = f.mul(&g).unwrap().partial_derivative(var).unwrap();
        let rhs = f
            .partial_derivative(var).unwrap().mul(&g).unwrap()
            .add(&f.mul(&g.partial_derivative(var).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_frobenius_semilinear((f, g) in poly_pair(9, 6), a in terms(2, 2)) {
        let p = f.p();
        prop_assume!(p < 100);
        let a = build(p, &a);
        let lhs = trace_u(&a.frobenius().unwrap().mul(&f).unwrap().add(&g).unwrap());
        let rhs = a.mul(&trace_u(&f)).unwrap().add(&trace_u(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(trace_u(&f), frobenius_decompose(&f).component(&Monomial::from_exponents(&[p - 1; 3])));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_idempotent_and_linear((gens, f, g) in small_ideal(), c in 1u32..100) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let gb = GroebnerBasis::new(&gens, MonomialOrder::Degrevlex).unwrap();
        let c = c % f.p();
        let nf = |h: &Poly| gb.normal_form(h).unwrap();
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        let combo = f.scale(c).add(&g).unwrap();
        prop_assert_eq!(nf(&combo), nf(&f).scale(c).add(&nf(&g)).unwrap());
        prop_assert!(gb.contains(&f.sub(&nf(&f)).unwrap()).unwrap());
        for h in &gens {
            prop_assert!(nf(&h.mul(&f).unwrap()).is_zero());
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order((gens, f, _) in small_ideal(), order in 0..2usize) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let order = [MonomialOrder::Degrevlex, MonomialOrder::Lex][order];
        let gb = GroebnerBasis::new(&gens, order).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        rev.rotate_left(1);
        let other = GroebnerBasis::new(&rev, order).unwrap();
        prop_assert_eq!(gb.generators(), other.generators());
        prop_assert_eq!(gb.normal_form(&f).unwrap(), other.normal_form(&f).unwrap());
    }

    #[test]
    fn cofactors_reassemble((gens, f, _) in small_ideal()) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let gb = GroebnerBasis::with_cofactors(&gens, MonomialOrder::Degrevlex).unwrap();
        let target = f.mul(&gens[0]).unwrap();
        let cof = gb.membership_certificate(&target).unwrap().expect("multiple of a generator");
        let mut acc = Poly::zero(f.ring());
        for (c, g) in cof.iter().zip(&gens) {
            acc = acc.add(&c.mul(g).unwrap()).unwrap();
        }
        prop_assert_eq!(acc, target);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn delta1_matches_integer_lift((f, _) in poly_pair(3, 4)) {
        prop_assume!(f.p() < 100);
        prop_assert_eq!(delta1(&f).unwrap(), oracles::delta1_by_integer_lift(&f));
    }
}

#[test]
fn binomial_cross_terms_follow_wilson() {
    // Δ₁(x + y) = Σ_{0<j<p} (C(p,j)/p) x^j y^{p-j}, with C(p,j)/p computed in integers
    for p in (2u32..40).filter(|&p| is_prime(p as u64)) {
        let r = oracles::ring(p);
        let f = parse_poly("x+y", &r).unwrap();
        let d = delta1(&f).unwrap();
        let mut binom: u128 = 1;
        for j in 1..p {
            binom = binom * (p - j + 1) as u128 / j as u128;
            let want = ((binom / p as u128) % p as u128) as u32;
            let got = d.coeff(&Monomial::from_exponents(&[j, p - j, 0]));
            assert_eq!(got, want, "p = {p}, j = {j}");
        }
        assert_eq!(d.num_terms(), (p - 1) as usize);
    }
}

#[test]
fn wilson_congruence_singles_out_primes() {
    for n in 2u64..60 {
        let fact = (1..n).fold(1u64, |acc, k| acc * k % n);
        assert_eq!(fact == n - 1, is_prime(n), "n = {n}");
    }
}

#[test]
fn macaulay_oracle_fixed_cases() {
    let r = oracles::ring(3);
    let gens = vec![
        parse_poly("x^2", &r).unwrap(),
        parse_poly("y^2", &r).unwrap(),
    ];
    assert!(oracles::macaulay_member(
        &parse_poly("x^2*z+y^2*x", &r).unwrap(),
        &gens
    ));
    assert!(!oracles::macaulay_member(
        &parse_poly("x*y", &r).unwrap(),
        &gens
    ));
    assert!(!oracles::macaulay_member(
        &parse_poly("x*y*z", &r).unwrap(),
        &gens
    ));
}
