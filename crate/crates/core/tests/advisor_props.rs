mod common;

use alliance_core::{
    advise, classify_region, commitment_interval, pressured_bimatrix, pure_equilibria, q, region_boundaries, thresholds,
    ActionProfile, AttackLevels, GameParameters, Player, RecommendationKind, RegionLabel, Scalar,
};
use common::{params, unit};
use proptest::prelude::*;

fn aa_is_equilibrium(g: &GameParameters, q_self: &Scalar, q_opp: &Scalar) -> bool {
    let a = AttackLevels::new(q_self.clone(), q_opp.clone()).unwrap();
    pure_equilibria(&pressured_bimatrix(g, &a).unwrap()).contains(&ActionProfile::AA)
}

#[test]
fn worked_example_thresholds() {
    let t = thresholds(&GameParameters::worked_example(8));
    assert_eq!((t.t_low, t.t_high), (q(3, 7), q(3, 5)));
}

proptest! {
    #[test]
    fn threshold_identities(g in params()) {
        let t = thresholds(&g);
        let b = region_boundaries(&g);
        prop_assert_eq!(&t.t_low, &(&(&g.v - &g.x) / &(&g.v + &g.y)));
        prop_assert_eq!(&t.t_high, &(&Scalar::one() - &(&g.f / &g.v)));
        prop_assert_eq!(&t.t_high, &b.ff_threshold);
        // both AA lines pass through (t_low, t_low)
        prop_assert_eq!(b.aa_lower_bound(&t.t_low), t.t_low);
    }

    #[test]
    fn commitment_interval_sound_and_tight(g in params(), q_opp in unit(), probe in 0i64..=20) {
        let t = thresholds(&g);
        let Some(interval) = commitment_interval(&g, &q_opp) else {
            prop_assert!(q_opp < t.t_low);
            return Ok(());
        };
        prop_assert!(q_opp >= t.t_low);
        let s = q(probe, 20);
        let inside = &(&(&Scalar::one() - &s) * &interval.lo) + &(&s * &interval.hi);
        prop_assert!(aa_is_equilibrium(&g, &inside, &q_opp));
        let a = AttackLevels::new(inside, q_opp.clone()).unwrap();
        prop_assert!(matches!(classify_region(&g, &a), RegionLabel::AA | RegionLabel::Multi | RegionLabel::Boundary));
        // overshoot: just above the upper end the AA conditions fail
        let above = &interval.hi + &q(1, 1000);
        if above <= Scalar::one() {
            prop_assert!(!aa_is_equilibrium(&g, &above, &q_opp));
        }
        let below = &interval.lo - &q(1, 1000);
        if !below.is_negative() {
            prop_assert!(!aa_is_equilibrium(&g, &below, &q_opp));
        }
    }

    #[test]
    fn already_stable_wins_over_bands(g in params(), q1 in unit(), q2 in unit()) {
        let a = AttackLevels::new(q1.clone(), q2.clone()).unwrap();
        let rec = advise(&g, &a, Player::One, &Scalar::zero()).unwrap();
        if aa_is_equilibrium(&g, &q1, &q2) {
            prop_assert_eq!(rec.kind, RecommendationKind::AllianceAlreadyStable);
        } else {
            prop_assert_ne!(rec.kind, RecommendationKind::AllianceAlreadyStable);
        }
    }

    #[test]
    fn focal_player_two_mirrors_player_one(g in params(), q1 in unit(), q2 in unit()) {
        let a = AttackLevels::new(q1, q2).unwrap();
        let one = advise(&g, &a.swapped(), Player::One, &Scalar::zero()).unwrap();
        let two = advise(&g, &a, Player::Two, &Scalar::zero()).unwrap();
        prop_assert_eq!(one.kind, two.kind);
        prop_assert_eq!(one.target_interval, two.target_interval);
    }
}
