//! Places of the rational field: the archimedean place and one place per prime.

use crate::arith::primes::is_prime_u64;
use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl Place {
    /// Finite place attached to a verified prime. Primes at or above 2^63 are rejected.
    pub fn finite(p: u64) -> Result<Place> {
        if p >= 1 << 63 {
            return Err(Error::PlaceTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Place::Finite(p))
    }

    pub fn infinite() -> Place {
        Place::Infinite
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Place::Finite(_))
    }

    pub fn is_dyadic(self) -> bool {
        self == Place::Finite(2)
    }

    pub fn prime(self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinite => None,
        }
    }
}

// Finite places in ascending prime order, the archimedean place last.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinite) => Ordering::Less,
            (Place::Infinite, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        if s == "inf" || s == "oo" || s == "infinity" {
            return Ok(Place::Infinite);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("'{s}' is not a place ('inf' or a prime)")))?;
        Place::finite(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}
