mod common;

use common::*;
use levelnf::algebra::{initial_field, Gvf, Scalar, SystemSpec};
use levelnf::error::Error;
use levelnf::lie::{apply_exp_ad, homological_apply};
use levelnf::normalizer::{homological_split, normalize, reconstruct, term_order};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (ChaCha8Rng, SystemSpec, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let ell = rng.gen_range(1..=4);
    let spec = random_spec(&mut rng, n, ell);
    let m = rng.gen_range(1..=3);
    (rng, spec, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn result_is_resonant(seed in any::<u64>()) {
        let (_, spec, m) = setup(seed);
        let r = normalize(&spec, m).unwrap();
        for (mu, _) in &r.alpha {
            prop_assert!(mu.is_zero() || spec.is_resonant(mu), "{mu}");
            prop_assert!(mu.level() <= m);
        }
    }

    #[test]
    fn generators_and_levels_respect_order(seed in any::<u64>()) {
        let (_, spec, m) = setup(seed);
        let r = normalize(&spec, m).unwrap();
        prop_assert_eq!(r.generators.len(), m);
        for (i, eta) in r.generators.iter().enumerate() {
            let s = i + 1;
            for (mu, _) in eta {
                prop_assert_eq!(mu.level(), s);
                prop_assert!(term_order(&spec, mu).unwrap() > s);
            }
            for (mu, _) in &r.alpha.level_slice(s) {
                prop_assert!(term_order(&spec, mu).unwrap() > s);
            }
        }
    }

    /// Replays the level loop with the public pieces and checks each step.
    #[test]
    fn replay_matches(seed in any::<u64>()) {
        let (_, spec, m) = setup(seed);
        let r = normalize(&spec, m).unwrap();
        let mut f = initial_field(&spec);
        for s in 1..=m {
            let slice = f.level_slice(s);
            let (eta, zeta) = homological_split(&spec, &slice).unwrap();
            prop_assert_eq!(&eta, &r.generators[s - 1]);
            prop_assert_eq!(homological_apply(&spec, &eta).unwrap().add(&zeta).unwrap(), slice);

            let (again, rest) = homological_split(&spec, &zeta).unwrap();
            prop_assert!(again.is_empty());
            prop_assert_eq!(rest, zeta.clone());

            let next = apply_exp_ad(&spec, &eta, &f, m).unwrap();
            prop_assert_eq!(next.truncate(s - 1), f.truncate(s - 1));
            prop_assert_eq!(next.level_slice(s), zeta);
            f = next;
        }
        prop_assert_eq!(f, r.alpha);
    }

    #[test]
    fn orders_partition_levels(seed in any::<u64>()) {
        let (_, spec, m) = setup(seed);
        let r = normalize(&spec, m).unwrap();
        let mut joined = Gvf::zero_for(&spec);
        for (k, g) in &r.orders {
            for (mu, _) in g {
                prop_assert_eq!(term_order(&spec, mu).unwrap(), *k);
            }
            joined.add_assign(g);
        }
        let nonlinear = r.alpha.filter(|mu, _| !mu.is_zero());
        prop_assert_eq!(joined, nonlinear);
    }
}

#[test]
fn saddle_first_generator() {
    let spec = saddle();
    let r = normalize(&spec, 1).unwrap();
    let eta = &r.generators[0];
    let expect = [(0, (1, 1)), (1, (-1, 1)), (2, (-1, 4)), (3, (-1, 2)), (4, (1, 1)), (5, (-1, 1))];
    for (q, (p, d)) in expect {
        let mu = levelnf::algebra::MultiIndex::unit(6, q);
        let c = eta.coeff(&mu);
        let k = spec.params()[q].equation;
        assert_eq!(c.entries()[k], Scalar::ratio(p, d), "e{}", q + 1);
        assert_eq!(c.support().count(), 1);
    }
    assert!(r.alpha.level_slice(1).is_empty());
}

#[test]
fn saddle_orders() {
    let spec = saddle();
    let r = normalize(&spec, 4).unwrap();
    let keys: Vec<usize> = r.orders.keys().copied().collect();
    assert_eq!(keys, vec![3, 5]);
    assert_eq!(r.orders[&3].len(), 3);
    assert_eq!(r.orders[&5].len(), 6);
    assert_eq!(r.orders[&3].coeff(&mi(&[0, 0, 0, 0, 1, 1])), cv(&[(0, 1), (1, 1)]));
}

#[test]
fn rejects_level_zero_and_impure_input() {
    let spec = saddle();
    assert_eq!(normalize(&spec, 0).unwrap_err(), Error::InvalidLevel(0));
    let mut bad = Gvf::zero_for(&spec);
    bad.set(mi(&[1, 0, 0, 0, 0, 0]), cv(&[(1, 1), (0, 1)]));
    bad.set(mi(&[0, 1, 0, 0, 0, 0]), cv(&[(1, 1), (0, 1)]));
    bad.set(mi(&[1, 1, 0, 0, 0, 0]), cv(&[(1, 1), (0, 1)]));
    assert!(matches!(homological_split(&spec, &bad), Err(Error::NotPureLevel { .. })));

    let mut non_res = Gvf::zero_for(&spec);
    non_res.set(mi(&[1, 0, 0, 0, 0, 0]), cv(&[(1, 1), (0, 1)]));
    assert!(matches!(reconstruct(&spec, &non_res, 2), Err(Error::NonResonant(_))));
    assert_eq!(term_order(&spec, &mi(&[0; 6])), Err(Error::ZeroIndex));
}
