mod common;

use alliance_core::{
    attacker_payoff, classify_region, optimize_attack, regime_analysis, q, ActionProfile, AttackLevels, AttackerParameters,
    GameParameters, Regime, RegionLabel, Scalar,
};
use common::{nonneg, params, unit};
use proptest::prelude::*;

#[test]
fn regime_consistency_over_sigma() {
    let params = GameParameters::worked_example(8);
    let analysis = regime_analysis(&params, &Scalar::one(), &Scalar::one());
    let mut seen = std::collections::BTreeSet::new();
    for k in 0..50 {
        // sigma from 1/8 to 99/8; breakpoints sit at 19/4 and 9
        let sigma = q(2 * k + 1, 8);
        let ap = AttackerParameters::new(sigma.clone(), Scalar::one(), Scalar::one()).unwrap();
        let d = &params.l - &sigma;
        let plan = optimize_attack(&params, &ap, &q(1, 1000)).unwrap();
        assert_eq!(plan.regime, analysis.regime_at(&d), "sigma = {sigma}");
        seen.insert(plan.regime);
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn backoff_lands_in_selected_region() {
    let params = GameParameters::worked_example(5);
    let ap = AttackerParameters::new(Scalar::int(3), Scalar::one(), Scalar::one()).unwrap();
    for delta in [q(1, 10), q(1, 100), q(1, 1000)] {
        let plan = optimize_attack(&params, &ap, &delta).unwrap();
        assert_eq!(plan.regime, Regime::SplitAlliance);
        let at = plan.backoff_point.clone().expect("backoff point");
        assert_eq!(classify_region(&params, &at), RegionLabel::FF);
        assert_eq!(plan.induced_profile, ActionProfile::FF);
        assert!(plan.backoff_value < plan.supremum_value);
    }
}

proptest! {
    #[test]
    fn payoff_is_affine_along_lines(
        g in params(),
        (sigma, ea, ei) in (nonneg(), nonneg(), nonneg()),
        (a1, a2, b1, b2) in (unit(), unit(), unit(), unit()),
        t in 0i64..=10,
    ) {
        let ap = AttackerParameters::new(sigma, ea, ei).unwrap();
        let t = q(t, 10);
        let one_minus = &Scalar::one() - &t;
        let a = AttackLevels::new(a1, a2).unwrap();
        let b = AttackLevels::new(b1, b2).unwrap();
        let mid = AttackLevels::new(&(&one_minus * &a.q1) + &(&t * &b.q1), &(&one_minus * &a.q2) + &(&t * &b.q2)).unwrap();
        for profile in ActionProfile::ALL {
            let fa = attacker_payoff(&ap, &g, &a, profile);
            let fb = attacker_payoff(&ap, &g, &b, profile);
            let fm = attacker_payoff(&ap, &g, &mid, profile);
            prop_assert_eq!(fm, &(&one_minus * &fa) + &(&t * &fb));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_plans_dominate_played_points(
        g in params(),
        (sigma, ea, ei) in (nonneg(), nonneg(), nonneg()),
        probes in proptest::collection::vec((unit(), unit()), 40),
    ) {
        let ap = AttackerParameters::new(sigma, ea, ei).unwrap();
        let plan = match optimize_attack(&g, &ap, &q(1, 1000)) {
            Ok(plan) => plan,
            Err(alliance_core::AttackerError::DegenerateObjective(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for (q1, q2) in probes {
            let a = AttackLevels::new(q1, q2).unwrap();
            if let Ok((_, value)) = alliance_core::played_attacker_payoff(&ap, &g, &a) {
                prop_assert!(value <= plan.supremum_value.clone().max(Scalar::zero()));
            }
        }
        match plan.regime {
            Regime::NoAttack => prop_assert!(!plan.supremum_value.is_positive()),
            _ if plan.attained => {
                let at = plan.optimum_point.clone().expect("attained point");
                let (profile, value) = alliance_core::played_attacker_payoff(&ap, &g, &at).unwrap();
                prop_assert_eq!(profile, plan.induced_profile);
                prop_assert_eq!(value, plan.supremum_value.clone());
            }
            _ => {
                let at = plan.backoff_point.clone().expect("backoff point");
                let (profile, value) = alliance_core::played_attacker_payoff(&ap, &g, &at).unwrap();
                prop_assert_eq!(profile, plan.induced_profile);
                prop_assert_eq!(&value, &plan.backoff_value);
                prop_assert!(value < plan.supremum_value);
            }
        }
    }
}
