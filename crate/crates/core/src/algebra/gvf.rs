//! Generalized vector fields: sparse maps `mu -> theta_mu in F^n`.
//!
//! A field `sum_mu theta_mu a^mu` stands for the polynomial vector field
//! `sum_mu (theta_mu . x) a^mu x^{L(mu)}` (`.` is the Hadamard product).
//! Zero coefficient vectors are never stored.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{MultiIndex, Scalar, SystemSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVector(Vec<Scalar>);

impl CoeffVector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Scalar::zero(); n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![Scalar::one(); n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[k] = Scalar::one();
        v
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add_assign(&mut self, other: &CoeffVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn add_scaled(&mut self, other: &CoeffVector, k: &Scalar) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &(b * k);
            }
        }
    }

    pub fn scale(&self, k: &Scalar) -> CoeffVector {
        CoeffVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn hadamard(&self, other: &CoeffVector) -> CoeffVector {
        CoeffVector(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gvf {
    n: usize,
    ell: usize,
    terms: BTreeMap<MultiIndex, CoeffVector>,
}

impl Gvf {
    pub fn zero(n: usize, ell: usize) -> Self {
        Self {
            n,
            ell,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_for(spec: &SystemSpec) -> Self {
        Self::zero(spec.n(), spec.ell())
    }

    /// Builds a field from `(mu, theta)` pairs, summing repeated indices.
    pub fn from_terms<I>(n: usize, ell: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, CoeffVector)>,
    {
        let mut g = Self::zero(n, ell);
        for (mu, c) in terms {
            g.add_term(mu, &c);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, mu: &MultiIndex) -> Option<&CoeffVector> {
        self.terms.get(mu)
    }

    /// Coefficient at `mu`, zero if absent.
    pub fn coeff(&self, mu: &MultiIndex) -> CoeffVector {
        self.terms
            .get(mu)
            .cloned()
            .unwrap_or_else(|| CoeffVector::zero(self.n))
    }

    pub fn iter(&self) -> btree_map::Iter<'_, MultiIndex, CoeffVector> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, CoeffVector> {
        self.terms
    }

    /// Adds `c` at `mu`, dropping the entry if it cancels.
    pub fn add_term(&mut self, mu: MultiIndex, c: &CoeffVector) {
        debug_assert_eq!(mu.len(), self.ell);
        debug_assert_eq!(c.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled_term(&mut self, mu: &MultiIndex, c: &CoeffVector, k: &Scalar) {
        if k.is_zero() || c.is_zero() {
            return;
        }
        match self.terms.entry(mu.clone()) {
            Entry::Vacant(e) => {
                e.insert(c.scale(k));
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(c, k);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Replaces the coefficient at `mu`; a zero vector removes it.
    pub fn set(&mut self, mu: MultiIndex, c: CoeffVector) {
        if c.is_zero() {
            self.terms.remove(&mu);
        } else {
            self.terms.insert(mu, c);
        }
    }

    pub fn remove(&mut self, mu: &MultiIndex) -> Option<CoeffVector> {
        self.terms.remove(mu)
    }

    fn check_dims(&self, other: &Gvf) -> Result<()> {
        if self.n != other.n || self.ell != other.ell {
            return Err(Error::DimensionMismatch(format!(
                "(n={}, l={}) vs (n={}, l={})",
                self.n, self.ell, other.n, other.ell
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Gvf) -> Result<Gvf> {
        self.check_dims(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Gvf) -> Result<Gvf> {
        self.check_dims(other)?;
        let mut out = self.clone();
        let minus = -Scalar::one();
        for (mu, c) in &other.terms {
            out.add_scaled_term(mu, c, &minus);
        }
        Ok(out)
    }

    /// In-place sum; dimensions are asserted in debug builds only.
    pub fn add_assign(&mut self, other: &Gvf) {
        debug_assert!(self.check_dims(other).is_ok());
        for (mu, c) in &other.terms {
            self.add_term(mu.clone(), c);
        }
    }

    pub fn scale(&self, k: &Scalar) -> Gvf {
        let mut out = Gvf::zero(self.n, self.ell);
        if k.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(mu, c)| (mu.clone(), c.scale(k)))
            .collect();
        out
    }

    /// Term-wise Hadamard product with a fixed vector of `F^n`.
    pub fn hadamard(&self, v: &CoeffVector) -> Result<Gvf> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for n = {}",
                v.len(),
                self.n
            )));
        }
        let mut out = Gvf::zero(self.n, self.ell);
        for (mu, c) in &self.terms {
            out.set(mu.clone(), c.hadamard(v));
        }
        Ok(out)
    }

    /// Terms with `|mu| == s`.
    pub fn level_slice(&self, s: usize) -> Gvf {
        self.filter(|mu, _| mu.level() == s)
    }

    /// Terms with `|mu| <= m`.
    pub fn truncate(&self, m: usize) -> Gvf {
        self.filter(|mu, _| mu.level() <= m)
    }

    pub fn filter<F>(&self, mut keep: F) -> Gvf
    where
        F: FnMut(&MultiIndex, &CoeffVector) -> bool,
    {
        Gvf {
            n: self.n,
            ell: self.ell,
            terms: self
                .terms
                .iter()
                .filter(|(mu, c)| keep(mu, c))
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn retain<F>(&mut self, mut keep: F)
    where
        F: FnMut(&MultiIndex, &CoeffVector) -> bool,
    {
        self.terms.retain(|mu, c| keep(mu, c));
    }

    /// Distinct levels present, ascending.
    pub fn levels(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(MultiIndex::level).collect();
        v.dedup();
        v
    }

    pub fn max_level(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::level).max()
    }

    /// `Some(s)` if all terms sit at level `s`; `None` for the zero field.
    /// Errors when levels are mixed.
    pub fn pure_level(&self) -> Result<Option<usize>> {
        let levels = self.levels();
        match levels.as_slice() {
            [] => Ok(None),
            [s] => Ok(Some(*s)),
            [s, t, ..] => Err(Error::NotPureLevel {
                expected: *s,
                found: *t,
            }),
        }
    }

    /// Checks that every term obeys the support rule: where `L_j(mu) = -1`
    /// the coefficient lives on component `j` alone.
    pub fn check_support(&self, spec: &SystemSpec) -> Result<()> {
        if self.n != spec.n() || self.ell != spec.ell() {
            return Err(Error::DimensionMismatch(format!(
                "field (n={}, l={}) vs system (n={}, l={})",
                self.n,
                self.ell,
                spec.n(),
                spec.ell()
            )));
        }
        for (mu, c) in &self.terms {
            let l = spec.exponent_map(mu);
            for (j, &e) in l.entries().iter().enumerate() {
                if e < -1 || (e == -1 && c.support().any(|k| k != j)) {
                    return Err(Error::NegativeExponent {
                        index: mu.clone(),
                        component: j,
                    });
                }
            }
        }
        Ok(())
    }
}

/// The system's right-hand side as a field: `0 -> lambda` and `e_q -> e_k`
/// for each parameter `q` of equation `k`.
pub fn initial_field(spec: &SystemSpec) -> Gvf {
    let (n, ell) = (spec.n(), spec.ell());
    let mut g = Gvf::zero(n, ell);
    g.set(MultiIndex::zero(ell), CoeffVector::new(spec.lambda().to_vec()));
    for (q, p) in spec.params().iter().enumerate() {
        g.add_term(MultiIndex::unit(ell, q), &CoeffVector::unit(n, p.equation));
    }
    g
}

impl<'a> IntoIterator for &'a Gvf {
    type Item = (&'a MultiIndex, &'a CoeffVector);
    type IntoIter = btree_map::Iter<'a, MultiIndex, CoeffVector>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
