//! Diagonal quadratic forms over the rationals and their classical
//! invariants: determinant, discriminant, signature, and the Hasse invariant
//! in its three common normalizations.
//!
//! Forms are stored as their diagonal entries. Arbitrary Gram matrices enter
//! only through `rediagonalize`, which applies a seeded unimodular change of
//! basis and rediagonalizes by exact symmetric elimination; it exists so that
//! invariance under change of basis is testable, not as an input format.

use crate::arith::rng::SplitMix64;
use crate::arith::{factor_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::hilbert::hilbert_symbol;
use crate::place::Place;
use crate::square_class::SquareClass;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A regular diagonal quadratic form `<a_1, ..., a_m>`, every entry nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    entries: Vec<Rational>,
}

impl DiagonalForm {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyForm);
        }
        if entries.iter().any(|a| a.is_zero()) {
            return Err(Error::ZeroInput);
        }
        Ok(Self { entries })
    }

    /// Integer-entry convenience constructor, mostly for tests.
    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&n| Rational::from(BigInt::from(n))).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> Rational {
        let mut d = Rational::one();
        for a in &self.entries {
            d *= a;
        }
        d
    }

    /// disc(q) = (-1)^(m(m-1)/2) det(q).
    pub fn disc(&self) -> Rational {
        let m = self.dim();
        if (m * (m - 1) / 2) % 2 == 1 {
            -self.det()
        } else {
            self.det()
        }
    }

    /// (number of positive entries, number of negative entries).
    pub fn signature(&self) -> (usize, usize) {
        let pos = self.entries.iter().filter(|a| a.is_positive()).count();
        (pos, self.dim() - pos)
    }

    /// q(x) = sum a_i x_i^2. Panics if the coordinate count is wrong.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim(), "coordinate count mismatch");
        let mut acc = Rational::zero();
        for (a, xi) in self.entries.iter().zip(x) {
            acc += a * xi * xi;
        }
        acc
    }

    /// c(q) = prod_{i<j} (a_i, a_j)_v, with the empty product 1 when m = 1.
    pub fn hasse(&self, v: Place) -> Result<i8> {
        let mut c: i8 = 1;
        for i in 0..self.entries.len() {
            for j in (i + 1)..self.entries.len() {
                c *= hilbert_symbol(&self.entries[i], &self.entries[j], v)?;
            }
        }
        Ok(c)
    }

    /// The fixed superset of places where any local invariant of this form
    /// can be nontrivial: infinity, 2, and the odd primes dividing an entry.
    pub fn support_places(&self) -> Result<BTreeSet<Place>> {
        let mut s = BTreeSet::new();
        s.insert(Place::Infinite);
        s.insert(Place::Finite(2));
        for a in &self.entries {
            for (p, _) in factor_rational(a)?.1 {
                s.insert(Place::finite(p)?);
            }
        }
        Ok(s)
    }

    /// Places where the Hasse invariant is -1. Finite and of even size by
    /// the product formula.
    pub fn hasse_minus_places(&self) -> Result<BTreeSet<Place>> {
        let mut out = BTreeSet::new();
        for v in self.support_places()? {
            if self.hasse(v)? == -1 {
                out.insert(v);
            }
        }
        debug_assert!(out.len() % 2 == 0, "Hasse product formula violated");
        Ok(out)
    }

    pub fn invariants(&self) -> Result<InvariantProfile> {
        Ok(InvariantProfile {
            dim: self.dim(),
            det: SquareClass::of(&self.det())?,
            disc: SquareClass::of(&self.disc())?,
            signature: self.signature(),
            hasse_minus: self.hasse_minus_places()?,
        })
    }

    pub fn scale(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Self { entries: self.entries.iter().map(|a| a * lambda).collect() })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self { entries }
    }

    /// Remove the entries at the given positions (0-based).
    pub fn delete_entries(&self, idx: &[usize]) -> Result<Self> {
        let drop: BTreeSet<usize> = idx.iter().copied().collect();
        if let Some(&bad) = drop.iter().find(|&&i| i >= self.dim()) {
            return Err(Error::InvalidIndex(bad));
        }
        let entries: Vec<Rational> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, a)| a.clone())
            .collect();
        if entries.is_empty() {
            return Err(Error::EmptyResult);
        }
        Ok(Self { entries })
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ">")
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    /// Comma-separated rationals, e.g. "1,1,-5" or "1/2,3".
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('<').trim_end_matches('>');
        let entries = trimmed
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl Serialize for DiagonalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Int(i64),
            Str(String),
        }
        let raw = Vec::<Entry>::deserialize(d)?;
        let entries = raw
            .into_iter()
            .map(|e| match e {
                Entry::Int(n) => Ok(Rational::from(BigInt::from(n))),
                Entry::Str(s) => parse_rational(&s).map_err(D::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        DiagonalForm::new(entries).map_err(D::Error::custom)
    }
}

/// Everything that determines a rational form up to isometry: dimension,
/// determinant class, signature, and the places with Hasse invariant -1.
/// The discriminant is redundant but kept because half the statements in the
/// even-dimensional theory are phrased through it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub dim: usize,
    pub det: SquareClass,
    pub disc: SquareClass,
    pub signature: (usize, usize),
    pub hasse_minus: BTreeSet<Place>,
}

impl InvariantProfile {
    pub fn hasse_at(&self, v: Place) -> i8 {
        if self.hasse_minus.contains(&v) {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HasseVariants {
    pub c: i8,
    pub c_om: i8,
    pub eps_hw: Option<i8>,
}

/// The three normalizations in circulation: c = prod_{i<j}, c_OM = prod_{i<=j},
/// and eps_HW fixed so the split form has invariant +1. The last is only
/// defined for dim >= 4.
pub fn hasse_variants(q: &DiagonalForm, v: Place) -> Result<HasseVariants> {
    let c = q.hasse(v)?;
    let minus_one = -Rational::one();
    let det = q.det();
    let c_om = c * hilbert_symbol(&minus_one, &det, v)?;
    let eps_hw = if q.dim() >= 4 { Some(eps_hw(q, v)?) } else { None };
    Ok(HasseVariants { c, c_om, eps_hw })
}

/// eps_HW(q) for dim q >= 4: for m = 2n it is c(q)(-1,-1)^(n(n-1)/2), and for
/// m = 2n+1 it is c(q)(-1,-1)^(n(n-3)/2)(-1,det q)^n. Exponents only matter
/// mod 2; n(n-3)/2 is negative for n = 2, hence the rem_euclid.
pub fn eps_hw(q: &DiagonalForm, v: Place) -> Result<i8> {
    let m = q.dim();
    if m < 4 {
        return Err(Error::DimensionTooSmall { needed: 4, got: m });
    }
    let minus_one = -Rational::one();
    let mm = hilbert_symbol(&minus_one, &minus_one, v)?;
    let mut e = q.hasse(v)?;
    if m % 2 == 0 {
        let n = (m / 2) as i64;
        if (n * (n - 1) / 2).rem_euclid(2) == 1 {
            e *= mm;
        }
    } else {
        let n = ((m - 1) / 2) as i64;
        if (n * (n - 3) / 2).rem_euclid(2) == 1 {
            e *= mm;
        }
        if n % 2 == 1 {
            e *= hilbert_symbol(&minus_one, &q.det(), v)?;
        }
    }
    Ok(e)
}

/// Scale q by +1 or -1 so that the positive index is at least the negative
/// one. Ties keep +1.
pub fn order_form(q: &DiagonalForm) -> (i8, DiagonalForm) {
    let (pos, neg) = q.signature();
    if pos >= neg {
        (1, q.clone())
    } else {
        (-1, q.scale(&-Rational::one()).expect("unit scalar"))
    }
}

/// Apply a seeded unimodular change of basis to the Gram matrix of q
/// and rediagonalize exactly. The result is isometric to q over the
/// rationals, so every invariant must survive a round trip through it.
pub fn rediagonalize(q: &DiagonalForm, seed: u64) -> DiagonalForm {
    let m = q.dim();
    let mut g: Vec<Vec<Rational>> = vec![vec![Rational::zero(); m]; m];
    for (i, a) in q.entries().iter().enumerate() {
        g[i][i] = a.clone();
    }

    // Random shear congruences G -> E^T G E keep the form's isometry class.
    let mut rng = SplitMix64::new(seed);
    if m > 1 {
        for _ in 0..(3 * m) {
            let i = rng.below(m as u64) as usize;
            let mut j = rng.below(m as u64) as usize;
            if i == j {
                j = (j + 1) % m;
            }
            let k = Rational::from(BigInt::from(rng.sign() * (1 + rng.below(2) as i64)));
            for col in 0..m {
                let t = &g[j][col] * &k;
                g[i][col] += t;
            }
            for row in 0..m {
                let t = &g[row][j] * &k;
                g[row][i] += t;
            }
        }
    }

    // Symmetric elimination. A zero pivot is repaired by a diagonal swap or,
    // when the whole remaining diagonal vanishes, by the u+v trick; one of
    // the two must succeed because the form is regular.
    let mut entries = Vec::with_capacity(m);
    for k in 0..m {
        if g[k][k].is_zero() {
            if let Some(j) = ((k + 1)..m).find(|&j| !g[j][j].is_zero()) {
                g.swap(k, j);
                for row in g.iter_mut() {
                    row.swap(k, j);
                }
            } else {
                let j = ((k + 1)..m)
                    .find(|&j| !g[k][j].is_zero())
                    .expect("regular form has no zero row");
                for col in 0..m {
                    let t = g[j][col].clone();
                    g[k][col] += t;
                }
                for row in 0..m {
                    let t = g[row][j].clone();
                    g[row][k] += t;
                }
            }
        }
        let pivot = g[k][k].clone();
        debug_assert!(!pivot.is_zero());
        for j in (k + 1)..m {
            if g[j][k].is_zero() {
                continue;
            }
            let f = &g[j][k] / &pivot;
            for col in 0..m {
                let t = &g[k][col] * &f;
                g[j][col] -= t;
            }
            for row in 0..m {
                let t = &g[row][k] * &f;
                g[row][j] -= t;
            }
        }
        entries.push(pivot);
    }
    DiagonalForm { entries }
}
