//! Alliance management advice for one firm.
//!
//! A firm can raise its own pressure level through unilateral commitments.
//! Whether that helps depends only on the opponent's pressure band:
//!
//! * `q_opp <= (v - x)/(v + y)`: no own level makes Ally/Ally an
//!   equilibrium; committing only exposes the firm to being fought.
//! * up to `1 - f/v`: the firms fight, but an interval of own levels turns
//!   Ally/Ally into an equilibrium. Overshooting the interval hands the
//!   opponent a profitable attack.
//! * above `1 - f/v`: the opponent is pressed hard enough to ally; the firm
//!   commits to stay above the Ally/Ally lower bound.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equilibrium::region_boundaries;
use crate::game::{AttackLevels, GameError, GameParameters, Player};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdvisorError {
    #[error("margin {margin} empties the commitment interval {interval}")]
    MarginTooLarge { margin: Scalar, interval: Interval },
    #[error("margin must be >= 0 (got {0})")]
    NegativeMargin(Scalar),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A nonempty interval of pressure levels. Empty intervals are `None` at
/// the call sites, never `lo > hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub lo_strict: bool,
    pub hi_strict: bool,
}

impl Interval {
    pub fn closed(lo: Scalar, hi: Scalar) -> Option<Self> {
        (lo <= hi).then_some(Interval { lo, hi, lo_strict: false, hi_strict: false })
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        let above = if self.lo_strict { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_strict { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Moves `lo` up by `lo_by` and `hi` down by `hi_by`.
    fn shrunk(&self, lo_by: &Scalar, hi_by: &Scalar) -> Option<Interval> {
        let lo = &self.lo + lo_by;
        let hi = &self.hi - hi_by;
        (lo <= hi).then_some(Interval { lo, hi, ..self.clone() })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_strict { '(' } else { '[' };
        let close = if self.hi_strict { ')' } else { ']' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecommendationKind {
    FightNoCommitment,
    CommitToFormAlliance,
    CommitToStabilize,
    AllianceAlreadyStable,
}

impl fmt::Display for RecommendationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecommendationKind::FightNoCommitment => "FightNoCommitment",
            RecommendationKind::CommitToFormAlliance => "CommitToFormAlliance",
            RecommendationKind::CommitToStabilize => "CommitToStabilize",
            RecommendationKind::AllianceAlreadyStable => "AllianceAlreadyStable",
        };
        f.write_str(s)
    }
}

/// Opponent-pressure bands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `(v - x)/(v + y)`: the AA lines cross on the diagonal here.
    pub t_low: Scalar,
    /// `1 - f/v`: the Fight/Fight threshold.
    pub t_high: Scalar,
    /// `t_low < t_high`; otherwise the commitment band is empty.
    pub ordered: bool,
}

pub fn thresholds(params: &GameParameters) -> Thresholds {
    let bounds = region_boundaries(params);
    let t_low = bounds.aa_diagonal_crossing();
    let t_high = bounds.ff_threshold;
    let ordered = t_low < t_high;
    Thresholds { t_low, t_high, ordered }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recommendation {
    pub kind: RecommendationKind,
    pub focal_player: Player,
    /// Recommended own pressure, after the margin is applied.
    pub target_interval: Option<Interval>,
    /// The commitment interval before the margin, when nonempty.
    pub unshrunk_interval: Option<Interval>,
    pub thresholds: Thresholds,
    pub margin: Scalar,
}

/// Own pressure levels at which both Ally/Ally conditions hold, given the
/// opponent's pressure. `None` when no such level exists.
pub fn commitment_interval(params: &GameParameters, q_opponent: &Scalar) -> Option<Interval> {
    commitment_bounds(params, q_opponent).map(|(interval, _)| interval)
}

/// The interval plus whether its upper end comes from the opponent's Ally
/// condition (rather than from the edge of the unit square).
fn commitment_bounds(params: &GameParameters, q_opponent: &Scalar) -> Option<(Interval, bool)> {
    let bounds = region_boundaries(params);
    let lo = bounds.aa_lower_bound(q_opponent).max(Scalar::zero());
    // opponent's condition: D·q_opp - c·q_self >= 2v - 2x
    let c = &params.c;
    let opp_room = &(bounds.slope_denominator() * q_opponent) - &bounds.aa_line_1.r;
    let (hi, from_condition) = if c.is_zero() {
        if opp_room.is_negative() {
            return None;
        }
        (Scalar::one(), false)
    } else {
        let cap = &opp_room / c;
        if cap < Scalar::one() {
            (cap, true)
        } else {
            (Scalar::one(), false)
        }
    };
    Interval::closed(lo, hi).map(|i| (i, from_condition))
}

/// Advice for `focal` given the current pressures.
pub fn advise(params: &GameParameters, attack: &AttackLevels, focal: Player, margin: &Scalar) -> Result<Recommendation, AdvisorError> {
    let attack = attack.clone().validated()?;
    if margin.is_negative() {
        return Err(AdvisorError::NegativeMargin(margin.clone()));
    }
    let q_self = attack.on(focal);
    let q_opp = attack.on(focal.other());
    let thresholds = thresholds(params);
    let found = commitment_bounds(params, q_opp);
    let unshrunk = found.as_ref().map(|(i, _)| i.clone());

    let recommend = |kind, target_interval| Recommendation {
        kind,
        focal_player: focal,
        target_interval,
        unshrunk_interval: unshrunk.clone(),
        thresholds: thresholds.clone(),
        margin: margin.clone(),
    };

    let both_ends = found.as_ref().and_then(|(i, _)| i.shrunk(margin, margin));
    if both_ends.as_ref().is_some_and(|i| i.contains(q_self)) {
        return Ok(recommend(RecommendationKind::AllianceAlreadyStable, both_ends));
    }
    if q_opp <= &thresholds.t_low {
        return Ok(recommend(RecommendationKind::FightNoCommitment, None));
    }
    let (interval, hi_from_condition) = found.expect("interval is nonempty above t_low");
    if q_opp <= &thresholds.t_high {
        return match both_ends {
            Some(target) => Ok(recommend(RecommendationKind::CommitToFormAlliance, Some(target))),
            None => Err(AdvisorError::MarginTooLarge { margin: margin.clone(), interval }),
        };
    }
    // the square's edge q = 1 is not a hazard; only an Ally/Ally edge is
    let hi_by = if hi_from_condition { margin.clone() } else { Scalar::zero() };
    match interval.shrunk(margin, &hi_by) {
        Some(target) => Ok(recommend(RecommendationKind::CommitToStabilize, Some(target))),
        None => Err(AdvisorError::MarginTooLarge { margin: margin.clone(), interval }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{classify_region, RegionLabel};
    use crate::scalar::q;

    fn example() -> GameParameters {
        GameParameters::worked_example(8)
    }

    fn at(q1: Scalar, q2: Scalar) -> AttackLevels {
        AttackLevels::new(q1, q2).unwrap()
    }

    /// Ally/Ally conditions with q_self = q1: q1 >= (3 q2 + 6)/17 and
    /// q1 <= (17 q2 - 6)/3 for the worked example.
    fn oracle_interval(q_opp: &Scalar) -> (Scalar, Scalar) {
        let lo = &(Scalar::int(3) * q_opp + Scalar::int(6)) / &Scalar::int(17);
        let hi = &(Scalar::int(17) * q_opp - Scalar::int(6)) / &Scalar::int(3);
        (lo, hi.min(Scalar::one()))
    }

    #[test]
    fn interval_at_half_pressure() {
        let i = commitment_interval(&example(), &q(1, 2)).unwrap();
        assert_eq!((i.lo.clone(), i.hi.clone()), oracle_interval(&q(1, 2)));
        assert_eq!((i.lo.clone(), i.hi.clone()), (q(15, 34), q(5, 6)));
        for k in 0..=10 {
            let q1 = &i.lo + &(&(&i.hi - &i.lo) * &q(k, 10));
            let label = classify_region(&example(), &at(q1, q(1, 2)));
            assert!(matches!(label, RegionLabel::AA | RegionLabel::Multi | RegionLabel::Boundary), "{label}");
        }
    }

    #[test]
    fn interval_collapses_at_diagonal_crossing() {
        let i = commitment_interval(&example(), &q(3, 7)).unwrap();
        assert!(i.is_point());
        assert_eq!(i.lo, q(3, 7));
    }

    #[test]
    fn interval_empty_at_low_pressure() {
        assert_eq!(commitment_interval(&example(), &q(3, 10)), None);
    }

    #[test]
    fn no_attack_cost_means_no_upper_bound() {
        let p = GameParameters { c: Scalar::zero(), ..example() };
        // lower bound is (v - x)/(v + y) = 3/7 regardless of q_opp
        let i = commitment_interval(&p, &q(1, 2)).unwrap();
        assert_eq!((i.lo, i.hi), (q(3, 7), Scalar::one()));
        assert_eq!(commitment_interval(&p, &q(2, 5)), None);
    }

    #[test]
    fn worked_example_bands() {
        let p = example();
        let zero = Scalar::zero();
        let r = advise(&p, &at(q(1, 5), q(1, 5)), Player::One, &zero).unwrap();
        assert_eq!(r.kind, RecommendationKind::FightNoCommitment);
        assert_eq!(r.target_interval, None);

        let r = advise(&p, &at(q(1, 5), q(1, 2)), Player::One, &zero).unwrap();
        assert_eq!(r.kind, RecommendationKind::CommitToFormAlliance);
        assert_eq!(r.target_interval, Interval::closed(q(15, 34), q(5, 6)));

        let r = advise(&p, &at(q(1, 5), q(7, 10)), Player::One, &zero).unwrap();
        assert_eq!(r.kind, RecommendationKind::CommitToStabilize);
        assert_eq!(r.target_interval, Interval::closed(q(81, 170), Scalar::one()));

        assert_eq!((r.thresholds.t_low, r.thresholds.t_high, r.thresholds.ordered), (q(3, 7), q(3, 5), true));
    }

    #[test]
    fn focal_player_two_mirrors_player_one() {
        let p = example();
        let r1 = advise(&p, &at(q(1, 5), q(1, 2)), Player::One, &Scalar::zero()).unwrap();
        let r2 = advise(&p, &at(q(1, 2), q(1, 5)), Player::Two, &Scalar::zero()).unwrap();
        assert_eq!(r1.kind, r2.kind);
        assert_eq!(r1.target_interval, r2.target_interval);
        assert_eq!(r2.focal_player, Player::Two);
    }

    #[test]
    fn band_edges() {
        let p = example();
        let r = advise(&p, &at(q(1, 5), q(3, 7)), Player::One, &Scalar::zero()).unwrap();
        assert_eq!(r.kind, RecommendationKind::FightNoCommitment);
        let r = advise(&p, &at(q(1, 5), q(3, 5)), Player::One, &Scalar::zero()).unwrap();
        assert_eq!(r.kind, RecommendationKind::CommitToFormAlliance);
    }

    #[test]
    fn stable_alliance_is_recognized() {
        let r = advise(&example(), &at(q(1, 2), q(1, 2)), Player::One, &Scalar::zero()).unwrap();
        assert_eq!(r.kind, RecommendationKind::AllianceAlreadyStable);
        let r = advise(&example(), &at(Scalar::one(), Scalar::one()), Player::Two, &Scalar::zero()).unwrap();
        assert_eq!(r.kind, RecommendationKind::AllianceAlreadyStable);
    }

    #[test]
    fn margin_shrinks_and_can_empty_the_interval() {
        let p = example();
        let r = advise(&p, &at(q(1, 5), q(1, 2)), Player::One, &q(1, 10)).unwrap();
        assert_eq!(r.target_interval, Interval::closed(q(15, 34) + q(1, 10), q(5, 6) - q(1, 10)));
        let err = advise(&p, &at(q(1, 5), q(1, 2)), Player::One, &q(1, 4)).unwrap_err();
        match err {
            AdvisorError::MarginTooLarge { interval, .. } => assert_eq!(interval, Interval::closed(q(15, 34), q(5, 6)).unwrap()),
            other => panic!("{other:?}"),
        }
        // the upper end at q = 1 is not shrunk when stabilizing
        let r = advise(&p, &at(q(1, 5), q(7, 10)), Player::One, &q(1, 10)).unwrap();
        assert_eq!(r.target_interval, Interval::closed(q(81, 170) + q(1, 10), Scalar::one()));
        assert!(advise(&p, &AttackLevels::zero(), Player::One, &q(-1, 10)).is_err());
    }

    #[test]
    fn overshoot_breaks_the_alliance_conditions() {
        let p = example();
        let i = commitment_interval(&p, &q(1, 2)).unwrap();
        let beyond = &i.hi + &q(1, 100);
        let label = classify_region(&p, &at(beyond, q(1, 2)));
        assert_eq!(label, RegionLabel::AF);
    }
}
