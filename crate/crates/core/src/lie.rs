//! Lie bracket on generalized vector fields, the homological operator and the
//! truncated Lie transform `exp(ad eta)`.
//!
//! For single terms `theta a^mu` and `phi a^nu` the bracket is
//!
//! ```text
//! [theta a^mu, phi a^nu] = (<L(nu), theta> phi - <L(mu), phi> theta) a^(mu+nu)
//! ```
//!
//! which is the bracket `D(Phi) Theta - D(Theta) Phi` of the corresponding
//! polynomial vector fields, read back through `L`.

use num_traits::{One, Zero};

use crate::algebra::{Gvf, MultiIndex, PhaseExponent, Scalar, SystemSpec};
use crate::error::{Error, Result};

fn check_bound(spec: &SystemSpec, f: &Gvf) -> Result<()> {
    if f.n() != spec.n() || f.ell() != spec.ell() {
        return Err(Error::DimensionMismatch(format!(
            "field (n={}, l={}) is not bound to system (n={}, l={})",
            f.n(),
            f.ell(),
            spec.n(),
            spec.ell()
        )));
    }
    Ok(())
}

fn with_exponents<'a>(
    spec: &SystemSpec,
    f: &'a Gvf,
) -> Vec<(&'a MultiIndex, PhaseExponent, &'a crate::algebra::CoeffVector)> {
    f.iter()
        .map(|(mu, c)| (mu, spec.exponent_map(mu), c))
        .collect()
}

/// `[theta, phi]`.
pub fn bracket(spec: &SystemSpec, theta: &Gvf, phi: &Gvf) -> Result<Gvf> {
    check_bound(spec, theta)?;
    check_bound(spec, phi)?;
    Ok(bracket_unchecked(spec, theta, phi, usize::MAX))
}

/// Bracket that skips output levels above `max_level`.
pub(crate) fn bracket_unchecked(spec: &SystemSpec, theta: &Gvf, phi: &Gvf, max_level: usize) -> Gvf {
    let mut out = Gvf::zero_for(spec);
    if theta.is_empty() || phi.is_empty() {
        return out;
    }
    let lhs = with_exponents(spec, theta);
    let rhs = with_exponents(spec, phi);
    let minus_one = -Scalar::one();
    for (mu, l_mu, th) in &lhs {
        for (nu, l_nu, ph) in &rhs {
            if mu.level() + nu.level() > max_level {
                continue;
            }
            let a = l_nu.dot(th.entries());
            let b = l_mu.dot(ph.entries());
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let key = mu.add(nu);
            out.add_scaled_term(&key, ph, &a);
            out.add_scaled_term(&key, th, &(&b * &minus_one));
        }
    }
    out
}

/// `ad eta` restricted to indices accepted by `keep`; used by the
/// per-coefficient driver to stay inside a divisor set.
pub(crate) fn bracket_filtered<F>(
    spec: &SystemSpec,
    theta: &Gvf,
    phi: &Gvf,
    max_level: usize,
    keep: &F,
) -> Gvf
where
    F: Fn(&MultiIndex) -> bool,
{
    let mut out = bracket_unchecked(spec, theta, phi, max_level);
    out.retain(|mu, _| keep(mu));
    out
}

/// The homological operator: every term is multiplied by its resonance
/// weight `<L(mu), lambda>`. Resonant terms vanish.
pub fn homological_apply(spec: &SystemSpec, f: &Gvf) -> Result<Gvf> {
    check_bound(spec, f)?;
    let mut out = Gvf::zero_for(spec);
    for (mu, c) in f {
        let w = spec.resonance_weight(mu);
        if !w.is_zero() {
            out.set(mu.clone(), c.scale(&w));
        }
    }
    Ok(out)
}

/// `exp(ad eta) f` truncated at level `m`: the sum over `i >= 0` of
/// `(1/i!) (ad eta)^i f`, keeping only terms of level `<= m`.
///
/// `eta` must be of a single level `s >= 1`. Because `ad eta` raises level by
/// `s`, levels below `s` of the output coincide with those of `f`.
pub fn apply_exp_ad(spec: &SystemSpec, eta: &Gvf, f: &Gvf, m: usize) -> Result<Gvf> {
    check_bound(spec, eta)?;
    check_bound(spec, f)?;
    let s = match eta.pure_level()? {
        None => return Ok(f.truncate(m)),
        Some(0) => {
            return Err(Error::NotPureLevel {
                expected: 1,
                found: 0,
            })
        }
        Some(s) => s,
    };
    Ok(exp_ad_series(spec, eta, s, f, m, &|_| true))
}

pub(crate) fn exp_ad_series<F>(
    spec: &SystemSpec,
    eta: &Gvf,
    s: usize,
    f: &Gvf,
    m: usize,
    keep: &F,
) -> Gvf
where
    F: Fn(&MultiIndex) -> bool,
{
    let mut result = f.truncate(m);
    result.retain(|mu, _| keep(mu));
    let mut term = result.clone();
    let mut i: i64 = 1;
    loop {
        // only terms that can still land at level <= m
        term.retain(|mu, _| mu.level() + s <= m);
        if term.is_empty() {
            break;
        }
        term = bracket_filtered(spec, eta, &term, m, keep).scale(&Scalar::ratio(1, i));
        result.add_assign(&term);
        i += 1;
    }
    result
}
