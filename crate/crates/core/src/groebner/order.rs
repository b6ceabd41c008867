use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::Error;
use crate::fp_poly::Monomial;

/// Monomial order; variable priority follows the ambient variable list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Degrevlex,
    Lex,
}

/// Linear sort key of a monomial: comparing keys lexicographically compares
/// monomials in the chosen order, and `key(a*b) = key(a) + key(b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Key(pub(crate) SmallVec<[i32; 5]>);

impl Key {
    #[inline]
    pub(crate) fn add(&self, other: &Key) -> Key {
        Key(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl MonomialOrder {
    pub(crate) fn key(&self, m: &Monomial) -> Key {
        let e = m.exponents();
        match self {
            // (deg, -e_n, ..., -e_2); e_1 is implied by the degree
            MonomialOrder::Degrevlex => {
                let mut k = SmallVec::with_capacity(e.len());
                k.push(e.iter().map(|&x| x as i32).sum());
                k.extend(e.iter().skip(1).rev().map(|&x| -(x as i32)));
                Key(k)
            }
            MonomialOrder::Lex => Key(e.iter().map(|&x| x as i32).collect()),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Degrevlex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::Degrevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::InvalidInput(format!(
                "unknown monomial order `{other}`"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_poly::degrevlex_cmp;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn degrevlex_key_matches_direct_comparison(a in mono(), b in mono()) {
            prop_assert_eq!(MonomialOrder::Degrevlex.cmp(&a, &b), degrevlex_cmp(&a, &b));
        }

        #[test]
        fn orders_are_multiplicative(a in mono(), b in mono(), c in mono()) {
            for ord in [MonomialOrder::Degrevlex, MonomialOrder::Lex] {
                prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_eq!(ord.key(&a.mul(&c)), ord.key(&a).add(&ord.key(&c)));
                prop_assert_ne!(ord.cmp(&Monomial::one(3), &a), Ordering::Greater);
            }
        }
    }

    #[test]
    fn lex_prioritises_first_variable() {
        let m = |e: &[u32]| Monomial::from_exponents(e);
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Degrevlex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Less
        );
        assert_eq!(
            "grevlex".parse::<MonomialOrder>().unwrap(),
            MonomialOrder::Degrevlex
        );
    }
}
