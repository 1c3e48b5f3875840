mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curvesing::ideal::dual_values_symmetry;
use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_ideals_satisfy_the_value_set_axioms(seed in any::<u64>(), pick in 0usize..15) {
        let cs = curves();
        let (name, curve) = &cs[pick % cs.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(curve, &mut rng);
        let s = ideal.values().unwrap();
        let d = dual_values_symmetry(&ideal).unwrap();
        for set in [s, &d] {
            prop_assert!(inf_closure(set).is_ok(), "{name}: {:?}", inf_closure(set));
            prop_assert!(valquimonte(set).is_ok(), "{name}: {:?}", valquimonte(set));
            let paths = path_independence(set, &mut rng);
            prop_assert!(paths.is_ok(), "{name}: {paths:?}");
        }
        let lam = lambda_equivalence(s, &d, curve.gamma());
        prop_assert!(lam.is_ok(), "{name}: {lam:?}");
    }

    #[test]
    fn random_ideals_dualize(seed in any::<u64>(), pick in 0usize..15) {
        let cs = curves();
        let (name, curve) = &cs[pick % cs.len()];
        let ideal = random_ideal(curve, &mut ChaCha8Rng::seed_from_u64(seed));
        let dual = duality(&ideal);
        prop_assert!(dual.is_ok(), "{name}: {dual:?}");
        let poincare = poincare_duality(&ideal);
        prop_assert!(poincare.is_ok(), "{name}: {poincare:?}");
        let fast = fast_algorithms(&ideal);
        prop_assert!(fast.is_ok(), "{name}: {fast:?}");
    }

    #[test]
    fn sqh_curves_have_consistent_tjurina_numbers(seed in any::<u64>()) {
        let f = random_sqh(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = sqh_curve(&f);
        let via = curvesing::logres::tjurina_via_values(&c).unwrap();
        prop_assert_eq!(via, curvesing::logres::tjurina_direct(&f, None).unwrap(), "{}", f);
        prop_assert_eq!(c.mu(), curvesing::logres::milnor_direct(&f, None).unwrap(), "{}", f);
    }
}
