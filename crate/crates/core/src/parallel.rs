//! Single coefficients of the normal form, computed independently.
//!
//! The coefficient at a resonant `kappa` only depends on terms `a^mu` that
//! divide `a^kappa`: a bracket sends `(mu, nu)` to `mu + nu`, so anything
//! outside the divisor set can never flow back into `kappa`. Running the
//! normalization with every field clipped to that set gives the exact
//! coefficient at a fraction of the cost, and targets are independent tasks.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{initial_field, CoeffVector, Gvf, MultiIndex, SystemSpec};
use crate::error::{Error, Result};
use crate::normalizer;

/// All `mu` with `0 <= mu <= kappa` componentwise and `|mu| >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClosure {
    target: MultiIndex,
    /// Members grouped by level `1..=|kappa|`.
    by_level: BTreeMap<usize, Vec<MultiIndex>>,
}

impl DivisorClosure {
    pub fn target(&self) -> &MultiIndex {
        &self.target
    }

    pub fn levels(&self) -> &BTreeMap<usize, Vec<MultiIndex>> {
        &self.by_level
    }

    pub fn len(&self) -> usize {
        self.by_level.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_level.is_empty()
    }

    pub fn contains(&self, mu: &MultiIndex) -> bool {
        !mu.is_zero() && mu.divides(&self.target)
    }

    pub fn members(&self) -> impl Iterator<Item = &MultiIndex> {
        self.by_level.values().flatten()
    }
}

pub fn divisor_closure(kappa: &MultiIndex) -> Result<DivisorClosure> {
    if kappa.is_zero() {
        return Err(Error::ZeroIndex);
    }
    let mut by_level: BTreeMap<usize, Vec<MultiIndex>> = BTreeMap::new();
    let bounds = kappa.entries();
    let mut cur = vec![0u32; bounds.len()];
    // odometer over the box [0, kappa]
    loop {
        let mu = MultiIndex::new(cur.clone());
        if !mu.is_zero() {
            by_level.entry(mu.level()).or_default().push(mu);
        }
        let mut k = 0;
        while k < cur.len() && cur[k] == bounds[k] {
            cur[k] = 0;
            k += 1;
        }
        if k == cur.len() {
            break;
        }
        cur[k] += 1;
    }
    for v in by_level.values_mut() {
        v.sort();
    }
    Ok(DivisorClosure {
        target: kappa.clone(),
        by_level,
    })
}

/// Coefficient `alpha_kappa` of the normal form, computed inside the divisor
/// set of `kappa`. Equals the coefficient from a full `normalize(spec, |kappa|)`.
pub fn coefficient_at(spec: &SystemSpec, kappa: &MultiIndex) -> Result<CoeffVector> {
    coefficient_at_field(spec, &initial_field(spec), kappa)
}

pub fn coefficient_at_field(spec: &SystemSpec, field: &Gvf, kappa: &MultiIndex) -> Result<CoeffVector> {
    if kappa.len() != spec.ell() {
        return Err(Error::DimensionMismatch(format!(
            "multi-index of length {} for {} parameters",
            kappa.len(),
            spec.ell()
        )));
    }
    if kappa.is_zero() {
        return Err(Error::ZeroIndex);
    }
    if !spec.is_resonant(kappa) {
        return Err(Error::NonResonant(kappa.clone()));
    }
    field.check_support(spec)?;
    let keep = |mu: &MultiIndex| mu.divides(kappa);
    let (alpha, _) = normalizer::run_levels(spec, field, kappa.level(), &keep);
    Ok(alpha.coeff(kappa))
}

/// Every resonant `mu` with `1 <= |mu| <= m`, in report order.
pub fn resonant_targets(spec: &SystemSpec, m: usize) -> Vec<MultiIndex> {
    let ell = spec.ell();
    let mut out = Vec::new();
    if ell == 0 {
        return out;
    }
    let mut cur = vec![0u32; ell];
    fn walk(spec: &SystemSpec, cur: &mut Vec<u32>, pos: usize, left: usize, out: &mut Vec<MultiIndex>) {
        if pos == cur.len() {
            let mu = MultiIndex::new(cur.clone());
            if !mu.is_zero() && spec.is_resonant(&mu) {
                out.push(mu);
            }
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u32;
            walk(spec, cur, pos + 1, left - e, out);
        }
        cur[pos] = 0;
    }
    walk(spec, &mut cur, 0, m, &mut out);
    out.sort();
    out
}

/// Per-target results, keyed by target. One failing target does not stop
/// the others.
pub type TargetResults = BTreeMap<MultiIndex, Result<CoeffVector>>;

/// Runs [`coefficient_at`] for each distinct target on `workers` threads.
/// The map is identical for every worker count.
pub fn normalize_targets(spec: &SystemSpec, targets: &[MultiIndex], workers: usize) -> TargetResults {
    let mut unique: Vec<MultiIndex> = targets.to_vec();
    unique.sort();
    unique.dedup();
    if unique.is_empty() {
        return TargetResults::new();
    }
    let workers = workers.max(1);
    let compute = |k: &MultiIndex| (k.clone(), coefficient_at(spec, k));
    if workers == 1 {
        return unique.iter().map(compute).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| unique.par_iter().map(compute).collect::<Vec<_>>())
            .into_iter()
            .collect(),
        // no threads available: same answer, serially
        Err(_) => unique.iter().map(compute).collect(),
    }
}

/// Assembles a resonant field from per-target coefficients (`lambda` at 0).
pub fn assemble(spec: &SystemSpec, results: &TargetResults) -> Result<Gvf> {
    let mut g = initial_field(spec).level_slice(0);
    for (k, r) in results {
        g.set(k.clone(), r.clone()?);
    }
    Ok(g)
}
