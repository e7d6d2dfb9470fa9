mod common;

use common::*;
use levelnf::algebra::{CoeffVector, Gvf, Scalar, SystemSpec};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (ChaCha8Rng, SystemSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let ell = rng.gen_range(1..=6);
    let spec = random_spec(&mut rng, n, ell);
    (rng, spec)
}

fn canonical(g: &Gvf) -> bool {
    g.iter().all(|(_, c)| !c.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exponent_map_is_additive(seed in any::<u64>()) {
        let (mut rng, spec) = setup(seed);
        let a = rng.gen_range(0..=4);
        let b = rng.gen_range(0..=4);
        let mu = random_index(&mut rng, spec.ell(), a);
        let nu = random_index(&mut rng, spec.ell(), b);
        prop_assert_eq!(
            spec.exponent_map(&mu.add(&nu)),
            spec.exponent_map(&mu).add(&spec.exponent_map(&nu))
        );
    }

    #[test]
    fn phase_degree_dominates_level(seed in any::<u64>()) {
        let (mut rng, spec) = setup(seed);
        let level = rng.gen_range(1..=5);
        let mu = random_index(&mut rng, spec.ell(), level);
        prop_assert!(spec.exponent_map(&mu).total() >= level as i64);
    }

    #[test]
    fn addition_laws(seed in any::<u64>()) {
        let (mut rng, spec) = setup(seed);
        let f = random_field(&mut rng, &spec, 3, 6);
        let g = random_field(&mut rng, &spec, 3, 6);
        let h = random_field(&mut rng, &spec, 3, 6);
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(
            f.add(&g).unwrap().add(&h).unwrap(),
            f.add(&g.add(&h).unwrap()).unwrap()
        );
        let zero = f.sub(&f).unwrap();
        prop_assert!(zero.is_empty());
        prop_assert!(canonical(&f.add(&g).unwrap()));
        prop_assert!(canonical(&f.sub(&g).unwrap()));
    }

    #[test]
    fn hadamard_laws(seed in any::<u64>()) {
        let (mut rng, spec) = setup(seed);
        let f = random_field(&mut rng, &spec, 3, 6);
        let g = random_field(&mut rng, &spec, 3, 6);
        let v = CoeffVector::new((0..spec.n()).map(|_| small_scalar(&mut rng, true)).collect());
        let w = CoeffVector::new((0..spec.n()).map(|_| small_scalar(&mut rng, true)).collect());
        prop_assert_eq!(f.hadamard(&CoeffVector::ones(spec.n())).unwrap(), f.clone());
        prop_assert_eq!(
            f.add(&g).unwrap().hadamard(&v).unwrap(),
            f.hadamard(&v).unwrap().add(&g.hadamard(&v).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.hadamard(&v).unwrap().hadamard(&w).unwrap(),
            f.hadamard(&w).unwrap().hadamard(&v).unwrap()
        );
        prop_assert!(canonical(&f.hadamard(&v).unwrap()));
        prop_assert!(f.scale(&Scalar::zero()).is_empty());
    }

    #[test]
    fn spec_text_roundtrip(seed in any::<u64>()) {
        let (_, spec) = setup(seed);
        prop_assert_eq!(SystemSpec::parse(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn scalar_text_roundtrip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = small_scalar(&mut rng, true);
        prop_assert_eq!(s.to_string().parse::<Scalar>().unwrap(), s);
    }
}

#[test]
fn saddle_exponent_matrix() {
    let spec = saddle();
    assert_eq!(
        spec.exponent_matrix(),
        vec![vec![1, 0], vec![0, 1], vec![-1, 3], vec![0, 2], vec![1, 0], vec![0, 1]]
    );
    assert_eq!(spec.exponent_map(&mi(&[0, 0, 1, 0, 1, 0])).entries(), &[0, 3]);
    assert!(spec.is_resonant(&mi(&[1, 1, 0, 0, 0, 0])));
}

#[test]
fn hadamard_rejects_wrong_length() {
    let spec = saddle();
    let f = levelnf::algebra::initial_field(&spec);
    assert!(f.hadamard(&CoeffVector::ones(3)).is_err());
}

#[test]
fn add_rejects_mismatched_fields() {
    let a = Gvf::zero(2, 3);
    let b = Gvf::zero(2, 4);
    assert!(a.add(&b).is_err());
}
