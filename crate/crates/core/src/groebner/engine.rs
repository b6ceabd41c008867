//! Buchberger's algorithm over free modules `R^s` with a term-over-position order.
//! Ideals are the rank-one case.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::order::{Key, MonomialOrder};
use crate::error::{Error, Result};
use crate::fp_poly::{Monomial, Poly, PrimeField, RingRef};

/// Sort key of a module term; larger is bigger in the term order.
/// Position 0 beats position 1 among equal monomials.
type TermKey = (Key, Reverse<u32>);

#[derive(Debug, Clone)]
pub(crate) struct Term {
    pub key: Key,
    pub mono: Monomial,
    pub pos: u32,
    pub coeff: u32,
}

impl Term {
    fn term_key(&self) -> TermKey {
        (self.key.clone(), Reverse(self.pos))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Element {
    /// Terms in descending order; `terms[0]` is the monic leading term.
    pub terms: Vec<Term>,
    /// Coordinates of this element over the original generators.
    pub repr: Option<Vec<Poly>>,
    max_degree: u64,
    /// All terms sit in one position.
    single_position: bool,
}

impl Element {
    fn new(terms: Vec<Term>, repr: Option<Vec<Poly>>) -> Self {
        let max_degree = terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0);
        let single_position = terms.iter().all(|t| t.pos == terms[0].pos);
        Element {
            terms,
            repr,
            max_degree,
            single_position,
        }
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }
}

/// Working polynomial during reduction, keyed by term order.
struct Work {
    map: BTreeMap<TermKey, (Monomial, u32)>,
}

impl Work {
    fn new() -> Self {
        Work {
            map: BTreeMap::new(),
        }
    }

    fn from_terms(terms: Vec<Term>) -> Self {
        Work {
            map: terms
                .into_iter()
                .map(|t| ((t.key, Reverse(t.pos)), (t.mono, t.coeff)))
                .collect(),
        }
    }

    #[inline]
    fn add(&mut self, k: PrimeField, key: TermKey, mono: Monomial, c: u32) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.map.entry(key) {
            Entry::Vacant(v) => {
                v.insert((mono, c));
            }
            Entry::Occupied(mut o) => {
                let s = k.add(o.get().1, c);
                if s == 0 {
                    o.remove();
                } else {
                    o.get_mut().1 = s;
                }
            }
        }
    }

    /// Adds `c * q * terms[skip..]`.
    fn add_multiple(
        &mut self,
        k: PrimeField,
        terms: &[Term],
        skip: usize,
        qkey: &Key,
        q: &Monomial,
        c: u32,
    ) {
        for t in &terms[skip..] {
            self.add(
                k,
                (qkey.add(&t.key), Reverse(t.pos)),
                q.mul(&t.mono),
                k.mul(c, t.coeff),
            );
        }
    }

    fn pop_max(&mut self) -> Option<Term> {
        self.map
            .pop_last()
            .map(|((key, Reverse(pos)), (mono, coeff))| Term {
                key,
                mono,
                pos,
                coeff,
            })
    }
}

pub(crate) struct Engine {
    pub ring: RingRef,
    pub order: MonomialOrder,
    pub rank: usize,
}

pub(crate) struct Reduction {
    pub remainder: Vec<Term>,
    /// Per basis element, the accumulated quotient (only when tracking).
    pub quotients: Option<Vec<BTreeMap<Monomial, u32>>>,
}

impl Engine {
    pub fn new(ring: &RingRef, order: MonomialOrder, rank: usize) -> Self {
        Engine {
            ring: ring.clone(),
            order,
            rank,
        }
    }

    fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn terms_of(&self, coords: &[Poly]) -> Vec<Term> {
        let mut out: Vec<Term> = coords
            .iter()
            .enumerate()
            .flat_map(|(pos, f)| {
                f.terms().map(move |(m, c)| Term {
                    key: self.order.key(m),
                    mono: m.clone(),
                    pos: pos as u32,
                    coeff: c,
                })
            })
            .collect();
        out.sort_by(|a, b| b.term_key().cmp(&a.term_key()));
        out
    }

    pub fn coords_of(&self, terms: &[Term]) -> Vec<Poly> {
        let mut maps = vec![BTreeMap::new(); self.rank];
        for t in terms {
            maps[t.pos as usize].insert(t.mono.clone(), t.coeff);
        }
        maps.into_iter()
            .map(|m| Poly::from_map(&self.ring, m))
            .collect()
    }

    fn find_divisor(&self, basis: &[Element], skip: Option<usize>, t: &Term) -> Option<usize> {
        basis.iter().enumerate().position(|(i, g)| {
            Some(i) != skip && g.lead().pos == t.pos && g.lead().mono.divides(&t.mono)
        })
    }

    fn reduce_work(
        &self,
        mut work: Work,
        basis: &[Element],
        skip: Option<usize>,
        track: bool,
    ) -> Result<Reduction> {
        let k = self.field();
        let mut remainder = Vec::new();
        let mut quotients = track.then(|| vec![BTreeMap::new(); basis.len()]);
        while let Some(t) = work.pop_max() {
            match self.find_divisor(basis, skip, &t) {
                Some(i) => {
                    let g = &basis[i];
                    let q = g.lead().mono.quotient_of(&t.mono);
                    self.ring
                        .check_degree(q.degree() + g.max_degree, "reduction step")?;
                    let qkey = self.order.key(&q);
                    work.add_multiple(k, &g.terms, 1, &qkey, &q, k.neg(t.coeff));
                    if let Some(qs) = quotients.as_mut() {
                        crate::fp_poly::accumulate(&mut qs[i], k, q, t.coeff);
                    }
                }
                None => remainder.push(t),
            }
        }
        Ok(Reduction {
            remainder,
            quotients,
        })
    }

    /// Full reduction of `terms` by `basis`.
    pub fn reduce(&self, terms: Vec<Term>, basis: &[Element], track: bool) -> Result<Reduction> {
        self.reduce_work(Work::from_terms(terms), basis, None, track)
    }

    /// `Σ quotient_i * repr_i`: the combination of original generators that was subtracted.
    pub fn combine_quotients(
        &self,
        quotients: &[BTreeMap<Monomial, u32>],
        basis: &[Element],
        ngens: usize,
    ) -> Result<Vec<Poly>> {
        let mut acc = vec![Poly::zero(&self.ring); ngens];
        for (q, g) in quotients.iter().zip(basis) {
            if q.is_empty() {
                continue;
            }
            let q = Poly::from_map(&self.ring, q.clone());
            let repr = g.repr.as_ref().expect("tracking enabled");
            for (a, r) in acc.iter_mut().zip(repr) {
                if !r.is_zero() {
                    *a = a.add(&q.mul(r)?)?;
                }
            }
        }
        Ok(acc)
    }

    fn make_monic(&self, mut terms: Vec<Term>, repr: Option<Vec<Poly>>) -> Element {
        let k = self.field();
        let inv = k.inv(terms[0].coeff).expect("nonzero leading coefficient");
        for t in &mut terms {
            t.coeff = k.mul(t.coeff, inv);
        }
        let repr = repr.map(|r| r.into_iter().map(|p| p.scale(inv)).collect());
        Element::new(terms, repr)
    }

    /// Runs Buchberger on `gens` and returns the reduced basis.
    pub fn buchberger(&self, gens: &[Vec<Term>], track: bool) -> Result<Vec<Element>> {
        let k = self.field();
        let ngens = gens.len();
        let mut basis: Vec<Element> = Vec::new();
        let mut queue: BTreeSet<(TermKey, usize, usize)> = BTreeSet::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        let push = |basis: &mut Vec<Element>,
                    queue: &mut BTreeSet<(TermKey, usize, usize)>,
                    pending: &mut HashSet<(usize, usize)>,
                    e: Element| {
            let j = basis.len();
            for (i, g) in basis.iter().enumerate() {
                if g.lead().pos != e.lead().pos {
                    continue;
                }
                // product criterion is only valid for scalar-like elements
                if g.single_position
                    && e.single_position
                    && g.lead().mono.is_coprime(&e.lead().mono)
                {
                    continue;
                }
                let lcm = g.lead().mono.lcm(&e.lead().mono);
                queue.insert(((self.order.key(&lcm), Reverse(e.lead().pos)), i, j));
                pending.insert((i, j));
            }
            basis.push(e);
        };

        for (i, g) in gens.iter().enumerate() {
            if g.is_empty() {
                continue;
            }
            let repr = track.then(|| {
                let mut r = vec![Poly::zero(&self.ring); ngens];
                r[i] = Poly::one(&self.ring);
                r
            });
            let e = self.make_monic(g.clone(), repr);
            push(&mut basis, &mut queue, &mut pending, e);
        }

        while let Some((_, i, j)) = queue.pop_first() {
            pending.remove(&(i, j));
            let (gi, gj) = (&basis[i], &basis[j]);
            let lcm = gi.lead().mono.lcm(&gj.lead().mono);
            let pos = gi.lead().pos;
            self.ring
                .check_degree(lcm.degree(), &format!("S-pair ({i}, {j})"))
                .map_err(|e| match e {
                    Error::DegreeGuard { degree, limit, .. } => Error::degree_guard(
                        degree,
                        limit,
                        format!(
                            "S-pair of basis elements {i} and {j} with leading terms {} and {}",
                            self.describe_term(gi.lead()),
                            self.describe_term(gj.lead())
                        ),
                    ),
                    other => other,
                })?;
            // chain criterion
            let chain = basis.iter().enumerate().any(|(l, g)| {
                l != i
                    && l != j
                    && g.lead().pos == pos
                    && g.lead().mono.divides(&lcm)
                    && !pending.contains(&(i.min(l), i.max(l)))
                    && !pending.contains(&(j.min(l), j.max(l)))
            });
            if chain {
                continue;
            }
            let ui = gi.lead().mono.quotient_of(&lcm);
            let uj = gj.lead().mono.quotient_of(&lcm);
            let mut work = Work::new();
            work.add_multiple(k, &gi.terms, 1, &self.order.key(&ui), &ui, 1);
            work.add_multiple(k, &gj.terms, 1, &self.order.key(&uj), &uj, k.neg(1));
            let red = self.reduce_work(work, &basis, None, track)?;
            if red.remainder.is_empty() {
                continue;
            }
            let repr = if track {
                let (ri, rj) = (
                    basis[i].repr.as_ref().unwrap(),
                    basis[j].repr.as_ref().unwrap(),
                );
                let sub = self.combine_quotients(red.quotients.as_ref().unwrap(), &basis, ngens)?;
                let mut out = Vec::with_capacity(ngens);
                for ((a, b), s) in ri.iter().zip(rj).zip(&sub) {
                    out.push(a.mul_term(&ui, 1)?.sub(&b.mul_term(&uj, 1)?)?.sub(s)?);
                }
                Some(out)
            } else {
                None
            };
            let e = self.make_monic(red.remainder, repr);
            push(&mut basis, &mut queue, &mut pending, e);
        }

        self.interreduce(basis, ngens)
    }

    fn interreduce(&self, basis: Vec<Element>, ngens: usize) -> Result<Vec<Element>> {
        let keep: Vec<usize> = (0..basis.len())
            .filter(|&i| {
                let li = basis[i].lead();
                !basis.iter().enumerate().any(|(j, g)| {
                    let lj = g.lead();
                    j != i
                        && lj.pos == li.pos
                        && lj.mono.divides(&li.mono)
                        && (lj.mono != li.mono || j < i)
                })
            })
            .collect();
        let kept: Vec<Element> = keep.iter().map(|&i| basis[i].clone()).collect();
        let track = kept.iter().all(|g| g.repr.is_some()) && !kept.is_empty();
        let mut out = Vec::with_capacity(kept.len());
        for (idx, g) in kept.iter().enumerate() {
            let red =
                self.reduce_work(Work::from_terms(g.terms.clone()), &kept, Some(idx), track)?;
            let repr = if track {
                let sub = self.combine_quotients(red.quotients.as_ref().unwrap(), &kept, ngens)?;
                Some(
                    g.repr
                        .as_ref()
                        .unwrap()
                        .iter()
                        .zip(&sub)
                        .map(|(a, s)| a.sub(s))
                        .collect::<Result<Vec<_>>>()?,
                )
            } else {
                None
            };
            out.push(self.make_monic(red.remainder, repr));
        }
        out.sort_by(|a, b| b.lead().term_key().cmp(&a.lead().term_key()));
        Ok(out)
    }

    pub fn describe_term(&self, t: &Term) -> String {
        let m = Poly::term(&self.ring, t.mono.clone(), 1);
        if self.rank == 1 {
            m.to_string()
        } else {
            format!("{m}*e{}", t.pos + 1)
        }
    }

    /// Number of standard monomials of the leading-term module, if finite.
    pub fn count_standard(&self, basis: &[Element]) -> Option<u64> {
        let n = self.ring.nvars();
        let mut total = 0u64;
        for pos in 0..self.rank as u32 {
            let leads: Vec<&[u32]> = basis
                .iter()
                .filter(|g| g.lead().pos == pos)
                .map(|g| g.lead().mono.exponents())
                .collect();
            total += count_standard_monomials(&leads, n)?;
        }
        Some(total)
    }
}

/// Counts monomials in `n` variables divisible by none of `leads`;
/// `None` if infinitely many.
pub(crate) fn count_standard_monomials(leads: &[&[u32]], n: usize) -> Option<u64> {
    if leads.iter().any(|l| l.iter().all(|&e| e == 0)) {
        return Some(0);
    }
    let mut bounds = vec![u32::MAX; n];
    for l in leads {
        let mono = Monomial::from_exponents(l);
        if let Some((i, e)) = mono.pure_power() {
            bounds[i] = bounds[i].min(e);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut prefix = vec![0u32; n];
    Some(count_rec(leads, &bounds, &mut prefix, 0))
}

fn count_rec(leads: &[&[u32]], bounds: &[u32], prefix: &mut [u32], var: usize) -> u64 {
    let n = bounds.len();
    if var == n - 1 {
        // standard exponents of the last variable form an initial segment
        let mut limit = bounds[var];
        for l in leads {
            if l[..var].iter().zip(&prefix[..var]).all(|(a, b)| a <= b) {
                limit = limit.min(l[var]);
            }
        }
        return limit as u64;
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        prefix[var] = e;
        let dead = leads.iter().any(|l| {
            l[var + 1..].iter().all(|&x| x == 0)
                && l[..=var].iter().zip(&prefix[..=var]).all(|(a, b)| a <= b)
        });
        if dead {
            break;
        }
        total += count_rec(leads, bounds, prefix, var + 1);
    }
    prefix[var] = 0;
    total
}
