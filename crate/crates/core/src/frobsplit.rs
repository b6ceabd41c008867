//! Frobenius-specific operators: digit decomposition `f = Σ g_α^p x^α`, the
//! trace map `u`, the divided Frobenius defect Δ₁, bracket powers, Fedder's
//! F-purity test, and the splitting section `σ(F_* r) = u(F_*(h r))`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp_poly::{accumulate, degrevlex_cmp, Monomial, Poly, PrimeField, RingRef};

/// The unique expression `f = Σ_α g_α^p · x^α` over digit vectors `α ∈ [0, p)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    ring: RingRef,
    components: BTreeMap<Monomial, Poly>,
}

impl FrobeniusDecomposition {
    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn components(&self) -> &BTreeMap<Monomial, Poly> {
        &self.components
    }

    pub fn component(&self, digits: &Monomial) -> Poly {
        self.components
            .get(digits)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.ring))
    }

    /// `Σ g_α^p x^α`.
    pub fn reassemble(&self) -> Result<Poly> {
        let mut acc = Poly::zero(&self.ring);
        for (alpha, g) in &self.components {
            acc = acc.add(&g.frobenius()?.mul_term(alpha, 1)?)?;
        }
        Ok(acc)
    }
}

/// Splits each exponent as `β = p·q + α`; `c = c^p` on F_p, so `c·x^q` lands in `g_α`.
pub fn frobenius_decompose(f: &Poly) -> FrobeniusDecomposition {
    let p = f.p();
    let k = f.field();
    let mut parts: BTreeMap<Monomial, BTreeMap<Monomial, u32>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let digits: Monomial = m.exponents().iter().map(|e| e % p).collect();
        let quotient: Monomial = m.exponents().iter().map(|e| e / p).collect();
        accumulate(parts.entry(digits).or_default(), k, quotient, c);
    }
    let ring = f.ring().clone();
    let components = parts
        .into_iter()
        .filter(|(_, g)| !g.is_empty())
        .map(|(a, g)| (a, Poly::from_terms(&ring, g)))
        .collect();
    FrobeniusDecomposition { ring, components }
}

/// The trace `u`: the component of `f` at the top digit vector `(p-1, ..., p-1)`.
pub fn trace_u(f: &Poly) -> Poly {
    let p = f.p();
    let terms = f
        .terms()
        .filter(|(m, _)| m.exponents().iter().all(|e| e % p == p - 1))
        .map(|(m, c)| (m.exponents().iter().map(|e| e / p).collect::<Monomial>(), c));
    Poly::from_terms(f.ring(), terms)
}

/// `(k!)^{-1} mod p` for `k < p`.
fn inverse_factorials(k: PrimeField) -> Vec<u32> {
    let p = k.modulus();
    let mut fact = vec![1u32; p as usize];
    for i in 1..p as usize {
        fact[i] = k.mul(fact[i - 1], i as u32);
    }
    fact.iter().map(|&x| k.inv(x).unwrap()).collect()
}

/// Number of compositions of `p` into `m` parts below `p`, saturating.
fn composition_count(p: u64, m: u64) -> u64 {
    // C(p+m-1, m-1) - m bounds it from above; the binomial alone is enough here.
    let mut acc: u128 = 1;
    let (n, r) = (p + m - 1, (m - 1).min(p));
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

const COMPOSITION_LIMIT: u64 = 2_000_000;

/// Δ₁(f) = Σ_α (1/p)·multinomial(p; α) · Π (c_i M_i)^{α_i} over compositions
/// `α` of `p` with every part `≤ p-1`, where `f = Σ c_i M_i` is the term
/// decomposition. Each coefficient is `-(Π α_i!)^{-1}` mod p (Wilson).
pub fn delta1(f: &Poly) -> Result<Poly> {
    let p = f.p();
    if let Some(d) = f.total_degree() {
        f.ring().check_degree(d * p as u64, "Δ₁")?;
    }
    let terms: Vec<(Monomial, u32)> = f.terms().map(|(m, c)| (m.clone(), c)).collect();
    if terms.len() < 2 {
        return Ok(Poly::zero(f.ring()));
    }
    if composition_count(p as u64, terms.len() as u64) > COMPOSITION_LIMIT {
        return delta1_by_splitting(f, &terms);
    }
    let k = f.field();
    let inv_fact = inverse_factorials(k);
    let mut out = BTreeMap::new();
    let mut alpha = vec![0u32; terms.len()];
    compositions(&terms, k, &inv_fact, p, 0, p, &mut alpha, &mut out);
    Ok(Poly::from_terms(f.ring(), out))
}

#[allow(clippy::too_many_arguments)]
fn compositions(
    terms: &[(Monomial, u32)],
    k: PrimeField,
    inv_fact: &[u32],
    p: u32,
    i: usize,
    remaining: u32,
    alpha: &mut [u32],
    out: &mut BTreeMap<Monomial, u32>,
) {
    if i == terms.len() - 1 {
        if remaining > p - 1 {
            return;
        }
        alpha[i] = remaining;
        let mut coeff = k.neg(1);
        let mut mono = Monomial::one(terms[0].0.nvars());
        for ((m, c), &a) in terms.iter().zip(alpha.iter()) {
            if a == 0 {
                continue;
            }
            coeff = k.mul(coeff, k.mul(inv_fact[a as usize], k.pow(*c, a as u64)));
            mono = mono.mul(&m.scale(a));
        }
        accumulate(out, k, mono, coeff);
        return;
    }
    for a in 0..=remaining.min(p - 1) {
        alpha[i] = a;
        compositions(terms, k, inv_fact, p, i + 1, remaining - a, alpha, out);
    }
}

/// Same value via `Δ₁(a + b) = Δ₁(a) + Δ₁(b) + Σ_{0<j<p} (C(p,j)/p) a^j b^{p-j}`,
/// peeling one term at a time; used when the composition count explodes.
fn delta1_by_splitting(f: &Poly, terms: &[(Monomial, u32)]) -> Result<Poly> {
    let ring = f.ring();
    let k = f.field();
    let p = f.p();
    let inv_fact = inverse_factorials(k);
    let mut acc = Poly::zero(ring);
    let mut partial = Poly::zero(ring);
    for (m, c) in terms {
        let t = Poly::term(ring, m.clone(), *c as u64);
        if !partial.is_zero() {
            let mut cross = Poly::zero(ring);
            for j in 1..p {
                let coeff = k.neg(k.mul(inv_fact[j as usize], inv_fact[(p - j) as usize]));
                let piece = t.pow(j as u64)?.mul(&partial.pow((p - j) as u64)?)?;
                cross = cross.add(&piece.scale(coeff))?;
            }
            acc = acc.add(&cross)?;
        }
        partial = partial.add(&t)?;
    }
    Ok(acc)
}

/// Independent check of [`delta1`]: `((lift f)^p - Σ (lift M_i)^p) / p mod p`
/// over the integers, lifting coefficients to `[0, p)`.
pub fn delta1_integer_oracle(f: &Poly) -> Result<Poly> {
    let p = f.p() as i128;
    let lifted: Vec<(Monomial, i128)> = f.terms().map(|(m, c)| (m.clone(), c as i128)).collect();
    let mut power: BTreeMap<Monomial, i128> = BTreeMap::new();
    power.insert(Monomial::one(f.nvars()), 1);
    for _ in 0..p {
        let mut next: BTreeMap<Monomial, i128> = BTreeMap::new();
        for (a, ca) in &power {
            for (b, cb) in &lifted {
                let prod = ca.checked_mul(*cb).ok_or(Error::Overflow)?;
                let slot = next.entry(a.mul(b)).or_insert(0);
                *slot = slot.checked_add(prod).ok_or(Error::Overflow)?;
            }
        }
        power = next;
    }
    for (m, c) in &lifted {
        let cp = (0..p)
            .try_fold(1i128, |acc, _| acc.checked_mul(*c))
            .ok_or(Error::Overflow)?;
        let slot = power.entry(m.scale(p as u32)).or_insert(0);
        *slot = slot.checked_sub(cp).ok_or(Error::Overflow)?;
    }
    let k = f.field();
    let mut out = Vec::new();
    for (m, c) in power {
        if c % p != 0 {
            return Err(Error::Precondition(
                "integer lift is not divisible by p".into(),
            ));
        }
        out.push((m, k.reduce_i64(((c / p) % p) as i64)));
    }
    Ok(Poly::from_terms(f.ring(), out))
}

/// Generators of the Frobenius bracket power `I^[p]`.
pub fn bracket_power(gens: &[Poly]) -> Result<Vec<Poly>> {
    gens.iter().map(Poly::frobenius).collect()
}

fn check_generators(gens: &[Poly]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    if gens.iter().any(Poly::is_zero) {
        return Err(Error::InvalidInput("zero generator".into()));
    }
    for g in &gens[1..] {
        gens[0].check_ambient(g)?;
    }
    Ok(())
}

/// `(Π gens)^{p-1}`.
pub fn fedder_multiplier(gens: &[Poly]) -> Result<Poly> {
    check_generators(gens)?;
    let mut prod = Poly::one(gens[0].ring());
    for g in gens {
        prod = prod.mul(g)?;
    }
    prod.pow(gens[0].p() as u64 - 1)
}

fn survivors(h: &Poly) -> impl Iterator<Item = &Monomial> {
    let p = h.p();
    h.terms()
        .map(|(m, _)| m)
        .filter(move |m| m.exponents().iter().all(|&e| e < p))
}

/// Monomial of `(Π gens)^{p-1}` outside `(x_1^p, ..., x_n^p)`, preferring
/// `(x_1...x_n)^{p-1}` and otherwise the degrevlex-largest one.
fn choose_survivor(h: &Poly) -> Option<Monomial> {
    let top = Monomial::from_exponents(&vec![h.p() - 1; h.nvars()]);
    if h.coeff(&top) != 0 {
        return Some(top);
    }
    survivors(h).max_by(|a, b| degrevlex_cmp(a, b)).cloned()
}

/// Fedder: F-pure at the origin iff `(Π gens)^{p-1} ∉ (x_1^p, ..., x_n^p)`.
pub fn fedder_fpure_test(gens: &[Poly]) -> Result<bool> {
    Ok(survivors(&fedder_multiplier(gens)?).next().is_some())
}

/// Data of the splitting section `σ(F_* r) = u(F_*(h · r))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingData {
    /// `h = x^shift · (Π f_i)^{p-1}`.
    pub h: Poly,
    /// `s = σ(F_* 1) = u(F_* h)`.
    pub s: Poly,
    /// The Fedder witness in `(Π f_i)^{p-1}`, if any.
    pub survivor: Option<Monomial>,
    /// `(p-1, ..., p-1) - survivor`; zero when the top monomial survives.
    pub shift: Monomial,
    pub fpure_at_origin: bool,
}

impl SplittingData {
    pub fn sigma_trace_constant(&self) -> u32 {
        self.s.constant_term()
    }

    pub fn ring(&self) -> &RingRef {
        self.h.ring()
    }
}

/// Builds `σ` from `(Π gens)^{p-1}`, shifted by a monomial so that the Fedder
/// witness lands on the top digit and `σ(F_* 1)` is a unit at the origin.
pub fn build_splitting(gens: &[Poly]) -> Result<SplittingData> {
    let base = fedder_multiplier(gens)?;
    let p = base.p();
    let n = base.nvars();
    let survivor = choose_survivor(&base);
    let shift = match &survivor {
        Some(b) => b.exponents().iter().map(|e| p - 1 - e).collect(),
        None => Monomial::one(n),
    };
    let h = base.mul_term(&shift, 1)?;
    let s = trace_u(&h);
    let fpure_at_origin = survivor.is_some();
    debug_assert_eq!(fpure_at_origin, s.constant_term() != 0);
    Ok(SplittingData {
        h,
        s,
        survivor,
        shift,
        fpure_at_origin,
    })
}

/// `σ(F_* r) = u(F_*(h · r))`.
pub fn apply_sigma(split: &SplittingData, r: &Poly) -> Result<Poly> {
    Ok(trace_u(&split.h.mul(r)?))
}
