//! Square classes of nonzero rationals, canonicalized as signed squarefree
//! integers. Stored as a sign plus the sorted set of primes with odd
//! exponent, so equality and hashing are structural.

use crate::arith::{factor_rational, Rational};
use crate::error::Result;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    negative: bool,
    primes: Vec<u64>, // ascending, distinct
}

impl SquareClass {
    pub fn one() -> SquareClass {
        SquareClass { negative: false, primes: Vec::new() }
    }

    pub fn minus_one() -> SquareClass {
        SquareClass { negative: true, primes: Vec::new() }
    }

    /// Class of a nonzero rational.
    pub fn of(x: &Rational) -> Result<SquareClass> {
        let (negative, factors) = factor_rational(x)?;
        let primes = factors
            .into_iter()
            .filter(|(_, e)| e % 2 != 0)
            .map(|(p, _)| p)
            .collect();
        Ok(SquareClass { negative, primes })
    }

    pub fn from_parts(negative: bool, mut primes: Vec<u64>) -> SquareClass {
        primes.sort_unstable();
        primes.dedup();
        SquareClass { negative, primes }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.primes.is_empty()
    }

    /// Group law: classes form an elementary abelian 2-group.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        let (mut i, mut j) = (0, 0);
        while i < self.primes.len() && j < other.primes.len() {
            match self.primes[i].cmp(&other.primes[j]) {
                std::cmp::Ordering::Less => {
                    primes.push(self.primes[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    primes.push(other.primes[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        primes.extend_from_slice(&self.primes[i..]);
        primes.extend_from_slice(&other.primes[j..]);
        SquareClass { negative: self.negative ^ other.negative, primes }
    }

    /// The signed squarefree integer representing the class.
    pub fn representative(&self) -> BigInt {
        let mut n = BigInt::one();
        for p in &self.primes {
            n *= BigInt::from(*p);
        }
        if self.negative {
            -n
        } else {
            n
        }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.representative())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.representative())
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<SquareClass, D::Error> {
        let raw = String::deserialize(d)?;
        let x: Rational = crate::arith::parse_rational(&raw).map_err(serde::de::Error::custom)?;
        SquareClass::of(&x).map_err(serde::de::Error::custom)
    }
}
