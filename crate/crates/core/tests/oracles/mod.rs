//! Reference computations that share no code with the library algorithms.
#![allow(dead_code)]

use std::collections::HashMap;

use fliftlab::fp_poly::{Monomial, Poly, Ring, RingRef};
use rand::Rng;

pub fn ring(p: u32) -> RingRef {
    Ring::new(&["x", "y", "z"], p as u64).unwrap()
}

/// Up to `max_terms` random terms with exponents below `max_exp`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    p: u32,
    nvars: usize,
    max_exp: u32,
    max_terms: usize,
) -> Poly {
    let names = ["x", "y", "z", "w"];
    let r = Ring::new(&names[..nvars], p as u64).unwrap();
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Monomial, u32)> = (0..n)
        .map(|_| {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..max_exp)).collect();
            (Monomial::from_exponents(&exps), rng.gen_range(0..p))
        })
        .collect();
    Poly::from_terms(&r, terms)
}

type IntPoly = HashMap<Vec<u32>, i128>;

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert(0) += ca * cb;
        }
    }
    out
}

/// `((Σ c_i M_i)^p - Σ c_i^p M_i^p) / p` over the integers with `c_i` lifted
/// to `[0, p)`, reduced mod p.
pub fn delta1_by_integer_lift(f: &Poly) -> Poly {
    let p = f.p();
    let lifted: IntPoly = f
        .terms()
        .map(|(m, c)| (m.exponents().to_vec(), c as i128))
        .collect();
    let mut power: IntPoly = [(vec![0; f.nvars()], 1)].into_iter().collect();
    for _ in 0..p {
        power = int_mul(&power, &lifted);
    }
    for (m, c) in &lifted {
        let mp: Vec<u32> = m.iter().map(|e| e * p).collect();
        *power.entry(mp).or_insert(0) -= c.pow(p);
    }
    let terms = power.into_iter().map(|(m, c)| {
        assert_eq!(c % p as i128, 0, "integer lift not divisible by p");
        let q = (c / p as i128).rem_euclid(p as i128) as u32;
        (Monomial::from_exponents(&m), q)
    });
    Poly::from_terms(f.ring(), terms)
}

/// Exponent vectors of total degree `d` in three variables.
pub fn monomials_of_degree(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn random_homogeneous<R: Rng>(rng: &mut R, r: &RingRef, d: u32, max_terms: usize) -> Poly {
    let monos = monomials_of_degree(d);
    let n = rng.gen_range(1..=max_terms);
    Poly::from_terms(
        r,
        (0..n).map(|_| {
            let m = monos[rng.gen_range(0..monos.len())];
            (Monomial::from_exponents(&m), rng.gen_range(1..r.p()))
        }),
    )
}

/// Random homogeneous generators in `x, y, z` and a homogeneous target.
/// Half the targets are built as combinations of the generators.
pub fn random_homogeneous_instance<R: Rng>(rng: &mut R, p: u32) -> (Vec<Poly>, Poly) {
    let r = ring(p);
    let k = rng.gen_range(1..=3);
    let gens: Vec<Poly> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_homogeneous(rng, &r, d, 4)
        })
        .filter(|g| !g.is_zero())
        .collect();
    let top = gens
        .iter()
        .filter_map(Poly::total_degree)
        .max()
        .unwrap_or(1) as u32;
    let d = top + rng.gen_range(0..=2);
    let f = if rng.gen_bool(0.5) {
        let mut acc = Poly::zero(&r);
        for g in &gens {
            let e = d - g.total_degree().unwrap() as u32;
            let c = random_homogeneous(rng, &r, e, 3);
            acc = acc.add(&c.mul(g).unwrap()).unwrap();
        }
        acc
    } else {
        random_homogeneous(rng, &r, d, 5)
    };
    (gens, f)
}

/// Exact membership of a homogeneous `f` of degree `d` in an ideal with
/// homogeneous generators: `f` lies in the span of `m * g` over monomials `m`
/// of complementary degree.
pub fn macaulay_member(f: &Poly, gens: &[Poly]) -> bool {
    let Some(d) = f.total_degree() else {
        return true;
    };
    let p = f.p() as u64;
    let cols: Vec<[u32; 3]> = monomials_of_degree(d as u32);
    let index: HashMap<[u32; 3], usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let dense = |g: &Poly, shift: [u32; 3]| -> Vec<u64> {
        let mut v = vec![0u64; cols.len()];
        for (m, c) in g.terms() {
            let e = m.exponents();
            let key = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]];
            v[index[&key]] = c as u64;
        }
        v
    };
    // row echelon form keyed by pivot column
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let reduce = |mut v: Vec<u64>, basis: &[(usize, Vec<u64>)]| -> Vec<u64> {
        for (piv, row) in basis {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        v
    };
    for g in gens {
        let e = g.total_degree().unwrap();
        if e > d {
            continue;
        }
        for shift in monomials_of_degree((d - e) as u32) {
            let v = reduce(dense(g, shift), &basis);
            if let Some(piv) = v.iter().position(|&x| x != 0) {
                let inv = pow_mod(v[piv], p - 2, p);
                let v: Vec<u64> = v.iter().map(|x| x * inv % p).collect();
                // keep earlier rows reduced against the new pivot
                for (_, row) in basis.iter_mut() {
                    let c = row[piv];
                    if c != 0 {
                        for (x, y) in row.iter_mut().zip(&v) {
                            *x = (*x + (p - c) * y) % p;
                        }
                    }
                }
                basis.push((piv, v));
            }
        }
    }
    reduce(dense(f, [0, 0, 0]), &basis).iter().all(|&x| x == 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}
