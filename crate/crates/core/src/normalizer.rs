//! Level-by-level normalization of a generalized vector field.
//!
//! Step `s` splits the level-`s` slice into a generator `eta_s` (non-resonant
//! terms divided by their weight) and the resonant remainder `zeta_s`, applies
//! `exp(ad eta_s)` truncated at the target level, and pins level `s` to
//! `zeta_s`. After step `m` every term of level `1..=m` is resonant.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{initial_field, Gvf, MultiIndex, SystemSpec};
use crate::error::{Error, Result};
use crate::lie;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    /// Target level `m`.
    pub level: usize,
    /// `lambda + zeta_1 + ... + zeta_m`.
    pub alpha: Gvf,
    /// `eta_1, ..., eta_m`; `generators[s - 1]` is pure level `s` or zero.
    pub generators: Vec<Gvf>,
    /// Resonant terms keyed by phase order `|L(mu)| + 1`.
    pub orders: BTreeMap<usize, Gvf>,
}

impl NormalFormResult {
    /// Highest phase order whose terms are final: `m + 1`.
    pub fn complete_order(&self) -> usize {
        self.level + 1
    }

    /// Order slices that are complete at this level.
    pub fn complete_orders(&self) -> impl Iterator<Item = (&usize, &Gvf)> {
        let top = self.complete_order();
        self.orders.iter().filter(move |(k, _)| **k <= top)
    }
}

/// Splits a pure level-`s` slice into `(eta_s, zeta_s)` with
/// `homological_apply(eta_s) + zeta_s == alpha_s`.
pub fn homological_split(spec: &SystemSpec, alpha_s: &Gvf) -> Result<(Gvf, Gvf)> {
    if alpha_s.n() != spec.n() || alpha_s.ell() != spec.ell() {
        return Err(Error::DimensionMismatch("slice is not bound to the system".into()));
    }
    if let Some(0) = alpha_s.pure_level()? {
        return Err(Error::NotPureLevel {
            expected: 1,
            found: 0,
        });
    }
    let mut eta = Gvf::zero_for(spec);
    let mut zeta = Gvf::zero_for(spec);
    for (mu, c) in alpha_s {
        let w = spec.resonance_weight(mu);
        match w.inv() {
            None => zeta.set(mu.clone(), c.clone()),
            Some(inv) => eta.set(mu.clone(), c.scale(&inv)),
        }
    }
    Ok((eta, zeta))
}

/// Normal form of the system up to level `m`.
pub fn normalize(spec: &SystemSpec, m: usize) -> Result<NormalFormResult> {
    normalize_field(spec, &initial_field(spec), m)
}

/// Runs the normalization on an arbitrary starting field. The field's level-0
/// part is kept as is; it should be `lambda`.
pub fn normalize_field(spec: &SystemSpec, field: &Gvf, m: usize) -> Result<NormalFormResult> {
    if m == 0 {
        return Err(Error::InvalidLevel(m));
    }
    field.check_support(spec)?;
    let (alpha, generators) = run_levels(spec, field, m, &|_| true);
    let orders = reconstruct(spec, &alpha, m)?;
    Ok(NormalFormResult {
        level: m,
        alpha,
        generators,
        orders,
    })
}

/// The `s`-loop. Every intermediate field is restricted to indices accepted
/// by `keep` (plus level 0, which `keep` must accept).
pub(crate) fn run_levels<F>(spec: &SystemSpec, field: &Gvf, m: usize, keep: &F) -> (Gvf, Vec<Gvf>)
where
    F: Fn(&MultiIndex) -> bool,
{
    let mut alpha = field.truncate(m);
    alpha.retain(|mu, _| keep(mu));
    let mut generators = Vec::with_capacity(m);
    for s in 1..=m {
        let slice = alpha.level_slice(s);
        let (eta, zeta) =
            homological_split(spec, &slice).expect("level slice of a bound field is pure");
        if !eta.is_empty() {
            let mut next = lie::exp_ad_series(spec, &eta, s, &alpha, m, keep);
            debug_assert_eq!(next.level_slice(s), zeta, "level {s} did not normalize");
            next.retain(|mu, _| mu.level() != s);
            next.add_assign(&zeta);
            alpha = next;
        }
        generators.push(eta);
    }
    (alpha, generators)
}

/// Phase order `|L(mu)| + 1` of the terms carried by `mu`.
pub fn term_order(spec: &SystemSpec, mu: &MultiIndex) -> Result<usize> {
    if mu.is_zero() {
        return Err(Error::ZeroIndex);
    }
    let total = spec.exponent_map(mu).total();
    debug_assert!(total >= mu.level() as i64);
    Ok(total as usize + 1)
}

/// Buckets the resonant terms of levels `1..=m` by phase order.
pub fn reconstruct(spec: &SystemSpec, alpha: &Gvf, m: usize) -> Result<BTreeMap<usize, Gvf>> {
    let mut out: BTreeMap<usize, Gvf> = BTreeMap::new();
    for (mu, c) in alpha {
        let level = mu.level();
        if level == 0 || level > m {
            continue;
        }
        if !spec.resonance_weight(mu).is_zero() {
            return Err(Error::NonResonant(mu.clone()));
        }
        out.entry(term_order(spec, mu)?)
            .or_insert_with(|| Gvf::zero_for(spec))
            .set(mu.clone(), c.clone());
    }
    Ok(out)
}
