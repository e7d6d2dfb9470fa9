//! Independent checks on instantiated systems.
//!
//! Parameters are replaced by numbers and everything is redone with ordinary
//! polynomial vector fields: Jacobian brackets, the degree-graded homological
//! equation and Lie transforms. None of this shares code with the
//! level-graded engine beyond the scalar type.

mod pvf;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{Gvf, Scalar, SystemSpec};
use crate::error::{Error, Result};
use crate::normalizer::NormalFormResult;

pub use pvf::{degree, pvf_bracket, pvf_bracket_truncated, Pvf};

/// Numeric values for every parameter of a system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, Scalar>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: Scalar) {
        self.0.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.0.get(name)
    }

    /// Every parameter set to `value`.
    pub fn constant(spec: &SystemSpec, value: Scalar) -> Self {
        let mut a = Self::new();
        for p in spec.params() {
            a.set(p.name.clone(), value.clone());
        }
        a
    }

    /// Random nonzero `p/q` with `|p| <= 9`, `1 <= q <= 9`.
    pub fn random<R: Rng + ?Sized>(spec: &SystemSpec, rng: &mut R) -> Self {
        let mut a = Self::new();
        for p in spec.params() {
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-9..=9);
            }
            let den = rng.gen_range(1..=9);
            a.set(p.name.clone(), Scalar::ratio(num, den));
        }
        a
    }

    fn values(&self, spec: &SystemSpec) -> Result<Vec<Scalar>> {
        spec.params()
            .iter()
            .map(|p| {
                self.get(&p.name)
                    .cloned()
                    .ok_or_else(|| Error::MissingAssignment(p.name.clone()))
            })
            .collect()
    }
}

/// `Ax + F(sigma, x)`: parameter `q` of equation `k` with exponent `i`
/// contributes `sigma(q) x_k x^i`.
pub fn instantiate(spec: &SystemSpec, sigma: &Assignment) -> Result<Pvf> {
    let values = sigma.values(spec)?;
    let mut v = Pvf::linear(spec.lambda());
    for (p, val) in spec.params().iter().zip(&values) {
        let mut exp: Vec<u32> = Vec::with_capacity(spec.n());
        for (j, &e) in p.exponent.entries().iter().enumerate() {
            let e = e + i64::from(j == p.equation);
            exp.push(e as u32);
        }
        v.add_term(p.equation, exp, val);
    }
    Ok(v)
}

/// Expands `sum theta_mu a^mu` into `sum (theta_mu . x) sigma^mu x^{L(mu)}`.
pub fn evaluate(spec: &SystemSpec, f: &Gvf, sigma: &Assignment) -> Result<Pvf> {
    let values = sigma.values(spec)?;
    let n = spec.n();
    let mut out = Pvf::zero(n);
    for (mu, theta) in f {
        let l = spec.exponent_map(mu);
        let mut weight = Scalar::one();
        for (v, &k) in values.iter().zip(mu.entries()) {
            if k > 0 {
                weight *= &v.pow(k);
            }
        }
        if weight.is_zero() {
            continue;
        }
        for j in theta.support() {
            let mut exp = Vec::with_capacity(n);
            for (i, &e) in l.entries().iter().enumerate() {
                let e = e + i64::from(i == j);
                if e < 0 {
                    return Err(Error::NegativeExponent {
                        index: mu.clone(),
                        component: i,
                    });
                }
                exp.push(e as u32);
            }
            out.add_term(j, exp, &(&theta.entries()[j] * &weight));
        }
    }
    Ok(out)
}

/// `exp(ad h) f = f + [h, f] + 1/2 [h, [h, f]] + ...` through degree `max_deg`.
/// Every term of `h` must have degree `>= 2`.
pub fn lie_transform(h: &Pvf, f: &Pvf, max_deg: usize) -> Result<Pvf> {
    if let Some(d) = h.min_degree() {
        if d < 2 {
            return Err(Error::InvalidSystem(format!(
                "generator has a term of degree {d}; Lie transform needs degree >= 2"
            )));
        }
    }
    let mut result = f.truncate(max_deg);
    if h.is_empty() {
        return Ok(result);
    }
    let mut term = result.clone();
    let mut i = 1;
    while !term.is_empty() {
        // ad h f = [h, f] = D(f) h - D(h) f
        term = pvf_bracket_truncated(&term, h, max_deg)?.scale(&Scalar::ratio(1, i));
        result = result.add(&term)?;
        i += 1;
    }
    Ok(result)
}

/// Diagonal of the linear part; errors on off-diagonal or constant terms.
fn diagonal_part(v: &Pvf) -> Result<Vec<Scalar>> {
    let n = v.n();
    let mut lambda = vec![Scalar::zero(); n];
    for (i, a, c) in v.iter() {
        match degree(a) {
            0 => return Err(Error::NonDiagonal(format!("constant term in component {}", i + 1))),
            1 => {
                let j = a.iter().position(|&e| e == 1).unwrap_or(0);
                if j != i {
                    return Err(Error::NonDiagonal(format!(
                        "x{} appears in component {}",
                        j + 1,
                        i + 1
                    )));
                }
                lambda[i] = c.clone();
            }
            _ => {}
        }
    }
    Ok(lambda)
}

/// Degree-by-degree normalization with Lie transforms. Generators carry only
/// non-resonant terms. Returns the generators `h_2..h_m` and the normal form
/// truncated at degree `m`.
pub fn classical_normalize(v: &Pvf, m: usize) -> Result<(Vec<Pvf>, Pvf)> {
    let lambda = diagonal_part(v)?;
    let mut current = v.truncate(m);
    let mut generators = Vec::new();
    for j in 2..=m {
        let mut h = Pvf::zero(v.n());
        for (i, a, c) in current.degree_slice(j).iter() {
            let mut beta = -lambda[i].clone();
            for (k, &e) in a.iter().enumerate() {
                if e > 0 {
                    beta += &lambda[k].scale_int(e as i64);
                }
            }
            if let Some(inv) = beta.inv() {
                h.add_term(i, a.to_vec(), &(c * &inv));
            }
        }
        if !h.is_empty() {
            current = lie_transform(&h, &current, m)?;
        }
        generators.push(h);
    }
    Ok((generators, current))
}

/// Whether a term `c e_i x^alpha` is resonant for eigenvalues `lambda`.
pub fn is_resonant_monomial(lambda: &[Scalar], component: usize, alpha: &[u32]) -> bool {
    let mut beta = -lambda[component].clone();
    for (k, &e) in alpha.iter().enumerate() {
        beta += &lambda[k].scale_int(e as i64);
    }
    beta.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub component: usize,
    pub exponent: Vec<u32>,
    /// Value from the independent route.
    pub expected: Scalar,
    /// Value claimed by the normal form.
    pub actual: Scalar,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {} monomial x^{:?}: expected {}, normal form has {}",
            self.component + 1,
            self.exponent,
            self.expected,
            self.actual
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    /// Phase degree the comparison was carried through.
    pub degree: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    fn compare(expected: &Pvf, actual: &Pvf, degree: usize) -> Self {
        let mismatch = expected
            .first_difference(actual)
            .map(|(component, exponent, expected, actual)| Mismatch {
                component,
                exponent,
                expected,
                actual,
            });
        Self { degree, mismatch }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "pass through degree {}", self.degree),
            Some(m) => write!(f, "FAIL through degree {}: {m}", self.degree),
        }
    }
}

/// `Ax + sum_k g_k` for the complete orders of `result`, instantiated.
pub fn evaluate_normal_form(spec: &SystemSpec, result: &NormalFormResult, sigma: &Assignment) -> Result<Pvf> {
    let mut nf = Pvf::linear(spec.lambda());
    for (_, g) in result.complete_orders() {
        nf = nf.add(&evaluate(spec, g, sigma)?)?;
    }
    Ok(nf)
}

/// Instantiates the original system, applies `exp(ad eta_s)` for
/// `s = 1..=m` at the numeric point, and compares with the reconstructed
/// normal form through phase degree `m + 1`.
pub fn conjugacy_check(
    spec: &SystemSpec,
    result: &NormalFormResult,
    sigma: &Assignment,
    m: usize,
) -> Result<CheckReport> {
    let top = m + 1;
    let mut field = instantiate(spec, sigma)?.truncate(top);
    for eta in result.generators.iter().take(m) {
        let h = evaluate(spec, eta, sigma)?.truncate(top);
        field = lie_transform(&h, &field, top)?;
    }
    let claimed = evaluate_normal_form(spec, result, sigma)?.truncate(top);
    Ok(CheckReport::compare(&field, &claimed, top))
}

/// Classical degree-graded normal form of the instantiated system against the
/// instantiated level-graded one, through phase degree `degree`.
pub fn classical_agreement(
    spec: &SystemSpec,
    result: &NormalFormResult,
    sigma: &Assignment,
    degree: usize,
) -> Result<CheckReport> {
    let degree = degree.min(result.complete_order());
    let v = instantiate(spec, sigma)?;
    let (_, nf) = classical_normalize(&v, degree.max(1))?;
    let claimed = evaluate_normal_form(spec, result, sigma)?.truncate(degree);
    Ok(CheckReport::compare(&nf.truncate(degree), &claimed, degree))
}
