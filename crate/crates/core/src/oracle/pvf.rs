//! Plain polynomial vector fields with numeric coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// `sum c * e_i x^alpha`, keyed by `(i, alpha)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pvf {
    n: usize,
    terms: BTreeMap<(usize, Vec<u32>), Scalar>,
}

impl Pvf {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `diag(lambda) x`.
    pub fn linear(lambda: &[Scalar]) -> Self {
        let n = lambda.len();
        let mut v = Self::zero(n);
        for (i, l) in lambda.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            v.add_term(i, e, l);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, component: usize, exponent: &[u32]) -> Scalar {
        self.terms
            .get(&(component, exponent.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u32], &Scalar)> {
        self.terms.iter().map(|((i, a), c)| (*i, a.as_slice(), c))
    }

    pub fn add_term(&mut self, component: usize, exponent: Vec<u32>, c: &Scalar) {
        debug_assert!(component < self.n && exponent.len() == self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry((component, exponent)) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Pvf) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "fields of dimension {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Pvf) -> Result<Pvf> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for ((i, a), c) in &other.terms {
            out.add_term(*i, a.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Pvf) -> Result<Pvf> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, k: &Scalar) -> Pvf {
        let mut out = Pvf::zero(self.n);
        for ((i, a), c) in &self.terms {
            out.add_term(*i, a.clone(), &(c * k));
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn degree_slice(&self, d: usize) -> Pvf {
        self.filter(|_, a| degree(a) == d)
    }

    /// Terms of total degree at most `d`.
    pub fn truncate(&self, d: usize) -> Pvf {
        self.filter(|_, a| degree(a) <= d)
    }

    pub fn filter<F: Fn(usize, &[u32]) -> bool>(&self, keep: F) -> Pvf {
        Pvf {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((i, a), _)| keep(*i, a))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(_, a)| degree(a)).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(_, a)| degree(a)).min()
    }

    /// First term, in key order, where `self` and `other` differ.
    pub fn first_difference(&self, other: &Pvf) -> Option<(usize, Vec<u32>, Scalar, Scalar)> {
        let diff = self.sub(other).ok()?;
        let ((i, a), _) = diff.terms.iter().next()?;
        Some((*i, a.clone(), self.coeff(*i, a), other.coeff(*i, a)))
    }
}

pub fn degree(alpha: &[u32]) -> usize {
    alpha.iter().map(|&e| e as usize).sum()
}

/// `D(v) w - D(w) v`, i.e. `[w, v]` with the convention `[w, v] = D(v)w - D(w)v`.
pub fn pvf_bracket(v: &Pvf, w: &Pvf) -> Result<Pvf> {
    v.check_dim(w)?;
    let mut out = Pvf::zero(v.n);
    jacobian_apply(v, w, &Scalar::one(), &mut out);
    jacobian_apply(w, v, &-Scalar::one(), &mut out);
    Ok(out)
}

/// Same as [`pvf_bracket`] but drops output terms above degree `max_deg`.
pub fn pvf_bracket_truncated(v: &Pvf, w: &Pvf, max_deg: usize) -> Result<Pvf> {
    let mut out = pvf_bracket(v, w)?;
    out.terms.retain(|(_, a), _| degree(a) <= max_deg);
    Ok(out)
}

/// `out += sign * D(f) g`.
fn jacobian_apply(f: &Pvf, g: &Pvf, sign: &Scalar, out: &mut Pvf) {
    for ((i, alpha), c) in &f.terms {
        for (j, &e) in alpha.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let dc = &c.scale_int(e as i64) * sign;
            for ((gj, beta), d) in &g.terms {
                if *gj != j {
                    continue;
                }
                let mut exp: Vec<u32> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
                exp[j] -= 1;
                out.add_term(*i, exp, &(&dc * d));
            }
        }
    }
}

impl fmt::Display for Pvf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, a), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) e{} x^{:?}", i + 1, a)?;
        }
        Ok(())
    }
}
