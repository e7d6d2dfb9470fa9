//! Parameter multi-indices and phase exponents.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::Scalar;

/// Exponent vector `mu` of a parameter monomial `a^mu`, one entry per parameter.
///
/// Ordered by level first, then lexicographically with larger leading
/// exponents first (`[1,1,0] < [1,0,1] < [0,2,0]` within level 2), which is the
/// order reports are printed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(ell: usize) -> Self {
        Self(vec![0; ell])
    }

    /// `e_q`, the exponent of the single parameter `q` (0-based).
    pub fn unit(ell: usize, q: usize) -> Self {
        let mut v = vec![0; ell];
        v[q] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `a^self` divides `a^other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Drops coordinate `q`.
    pub fn without(&self, q: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(q);
        MultiIndex(v)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level()
            .cmp(&other.level())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Phase-space exponent `L(mu)`. Entries are `>= -1` for anything produced
/// from a valid system, with at most one `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExponent(Vec<i64>);

impl PhaseExponent {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m|`, the entry sum.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &PhaseExponent) -> PhaseExponent {
        PhaseExponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_scaled(&mut self, other: &PhaseExponent, k: u32) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * k as i64;
        }
    }

    /// `<self, v>` for a vector of scalars.
    pub fn dot(&self, v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (&e, c) in self.0.iter().zip(v) {
            if e != 0 && !c.is_zero() {
                acc += &c.scale_int(e);
            }
        }
        acc
    }

    /// Positions equal to `-1`.
    pub fn negative_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e < 0).map(|(k, _)| k)
    }
}

impl fmt::Display for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
