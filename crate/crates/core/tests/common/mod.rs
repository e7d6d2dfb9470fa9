#![allow(dead_code)]

use levelnf::algebra::{CoeffVector, Gvf, MultiIndex, Parameter, PhaseExponent, Scalar, SystemSpec};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SADDLE: &str = include_str!("../../systems/saddle.nf");
pub const QUADRATIC: &str = include_str!("../../systems/quadratic.nf");

pub fn saddle() -> SystemSpec {
    SystemSpec::parse(SADDLE).unwrap()
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

pub fn cv(v: &[(i64, i64)]) -> CoeffVector {
    CoeffVector::new(v.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect())
}

pub fn small_scalar<R: Rng>(rng: &mut R, complex: bool) -> Scalar {
    let re = Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=5));
    if complex && rng.gen_bool(0.3) {
        let im = Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=5));
        &re + &(&im * &Scalar::i())
    } else {
        re
    }
}

fn random_lambda<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    const POOL: [i64; 7] = [-3, -2, -1, 1, 2, 3, 1];
    (0..n)
        .map(|_| {
            let re = Scalar::from_int(*POOL.choose(rng).unwrap());
            if rng.gen_bool(0.15) {
                &re * &Scalar::i()
            } else {
                re
            }
        })
        .collect()
}

/// A valid row: entries in `0..=2`, `-1` only at the owning equation,
/// total at least 1.
fn random_row<R: Rng>(rng: &mut R, n: usize, eq: usize) -> Vec<i64> {
    loop {
        let mut row: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if n > 1 && rng.gen_bool(0.25) {
            row[eq] = -1;
        }
        if row.iter().sum::<i64>() >= 1 {
            return row;
        }
    }
}

pub fn random_spec<R: Rng>(rng: &mut R, n: usize, ell: usize) -> SystemSpec {
    let lambda = random_lambda(rng, n);
    spec_with_lambda(rng, lambda, ell)
}

pub fn spec_with_lambda<R: Rng>(rng: &mut R, lambda: Vec<Scalar>, ell: usize) -> SystemSpec {
    let n = lambda.len();
    let params = (0..ell)
        .map(|q| {
            let eq = rng.gen_range(0..n);
            Parameter {
                name: format!("p{q}"),
                equation: eq,
                exponent: PhaseExponent::new(random_row(rng, n, eq)),
            }
        })
        .collect();
    SystemSpec::new(lambda, params).unwrap()
}

pub fn random_index<R: Rng>(rng: &mut R, ell: usize, level: usize) -> MultiIndex {
    let mut e = vec![0u32; ell];
    for _ in 0..level {
        e[rng.gen_range(0..ell)] += 1;
    }
    MultiIndex::new(e)
}

/// A single term `theta a^mu` of the given level whose expansion as a
/// polynomial field has no negative exponents. Zero if none was found; some
/// specs have no such index at higher levels.
pub fn random_term<R: Rng>(rng: &mut R, spec: &SystemSpec, level: usize) -> Gvf {
    for _ in 0..64 {
        let mu = random_index(rng, spec.ell(), level);
        let l = spec.exponent_map(&mu);
        let mut theta = vec![Scalar::from_int(0); spec.n()];
        for (j, slot) in theta.iter_mut().enumerate() {
            let ok = l.entries().iter().enumerate().all(|(i, &e)| e + i64::from(i == j) >= 0);
            if ok && rng.gen_bool(0.7) {
                *slot = small_scalar(rng, true);
            }
        }
        let theta = CoeffVector::new(theta);
        if !theta.is_zero() {
            let mut g = Gvf::zero_for(spec);
            g.set(mu, theta);
            return g;
        }
    }
    Gvf::zero_for(spec)
}

/// Sum of `count` random terms, all at `level`.
pub fn random_level_field<R: Rng>(rng: &mut R, spec: &SystemSpec, level: usize, count: usize) -> Gvf {
    let mut g = Gvf::zero_for(spec);
    for _ in 0..count {
        g.add_assign(&random_term(rng, spec, level));
    }
    g
}

/// Terms at mixed levels `0..=max_level`, coefficients arbitrary.
pub fn random_field<R: Rng>(rng: &mut R, spec: &SystemSpec, max_level: usize, count: usize) -> Gvf {
    let mut g = Gvf::zero_for(spec);
    for _ in 0..count {
        let level = rng.gen_range(0..=max_level);
        let mu = random_index(rng, spec.ell(), level);
        let c = CoeffVector::new((0..spec.n()).map(|_| small_scalar(rng, true)).collect());
        g.add_term(mu, &c);
    }
    g
}
