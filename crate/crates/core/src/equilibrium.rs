//! Nash equilibria of the pressured game.
//!
//! Two independent routes are provided: a brute-force best-response scan of
//! any 2×2 bimatrix ([`pure_equilibria`]) and a closed-form classification of
//! the pressure square by four linear conditions ([`classify_region`]). The
//! acceptance suite checks that they agree point by point.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::game::{pressured_unchecked, ActionProfile, AttackLevels, Bimatrix, GameError, GameParameters, Player};
use crate::geometry::{dedup_lines, safe_step, Direction, unit_square_sides, vertices_in_unit_square, Line, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error("indifference system is degenerate: a continuum of mixed equilibria exists")]
    Degenerate,
    #[error("game at {0} is non-generic (a best-response condition binds with equality); no equilibrium is selected")]
    DegenerateGame(AttackLevels),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Which equilibria the closed-form conditions admit at a pressure pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    AA,
    FF,
    AF,
    FA,
    /// `AA`, `FF` and a mixed equilibrium coexist.
    #[serde(rename = "MULTI")]
    Multi,
    /// `AF`, `FA` and a mixed equilibrium coexist. Only occurs when
    /// `1 - f/v < (v - x)/(v + y)`.
    #[serde(rename = "MULTI_ASYM")]
    MultiAsym,
    /// Some binding condition holds with equality.
    #[serde(rename = "BOUNDARY")]
    Boundary,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 7] = [
        RegionLabel::AA,
        RegionLabel::FF,
        RegionLabel::AF,
        RegionLabel::FA,
        RegionLabel::Multi,
        RegionLabel::MultiAsym,
        RegionLabel::Boundary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::AA => "AA",
            RegionLabel::FF => "FF",
            RegionLabel::AF => "AF",
            RegionLabel::FA => "FA",
            RegionLabel::Multi => "MULTI",
            RegionLabel::MultiAsym => "MULTI_ASYM",
            RegionLabel::Boundary => "BOUNDARY",
        }
    }

    /// Pure equilibria implied by a non-boundary label.
    pub fn pure_profiles(self) -> Option<Vec<ActionProfile>> {
        use ActionProfile::*;
        match self {
            RegionLabel::AA => Some(vec![AA]),
            RegionLabel::FF => Some(vec![FF]),
            RegionLabel::AF => Some(vec![AF]),
            RegionLabel::FA => Some(vec![FA]),
            RegionLabel::Multi => Some(vec![AA, FF]),
            RegionLabel::MultiAsym => Some(vec![AF, FA]),
            RegionLabel::Boundary => None,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            RegionLabel::AF => RegionLabel::FA,
            RegionLabel::FA => RegionLabel::AF,
            other => other,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RegionLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown region label `{s}`"))
    }
}

/// Each player's probability of choosing Ally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedEquilibrium {
    pub p1_ally: Scalar,
    pub p2_ally: Scalar,
}

impl MixedEquilibrium {
    /// Expected payoff to `player` when both mix.
    pub fn expected_payoff(&self, m: &Bimatrix, player: Player) -> Scalar {
        let one = Scalar::one();
        let p1 = [&self.p1_ally, &(&one - &self.p1_ally)].map(Clone::clone);
        let p2 = [&self.p2_ally, &(&one - &self.p2_ally)].map(Clone::clone);
        let profiles = [[ActionProfile::AA, ActionProfile::AF], [ActionProfile::FA, ActionProfile::FF]];
        let mut total = Scalar::zero();
        for (i, row) in profiles.iter().enumerate() {
            for (j, profile) in row.iter().enumerate() {
                total += &(&(&p1[i] * &p2[j]) * m.payoff(*profile, player));
            }
        }
        total
    }

    /// Expected payoff to `player` from each pure action against the
    /// opponent's mix, `(ally, fight)`.
    pub fn action_values(&self, m: &Bimatrix, player: Player) -> (Scalar, Scalar) {
        use ActionProfile::*;
        let one = Scalar::one();
        let (opp, vs_ally, vs_fight) = match player {
            Player::One => (&self.p2_ally, [AA, AF], [FA, FF]),
            Player::Two => (&self.p1_ally, [AA, FA], [AF, FF]),
        };
        let rest = &one - opp;
        let value = |pair: [ActionProfile; 2]| {
            &(opp * m.payoff(pair[0], player)) + &(&rest * m.payoff(pair[1], player))
        };
        (value(vs_ally), value(vs_fight))
    }
}

/// Result of solving one bimatrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumSet {
    pub pure: Vec<ActionProfile>,
    pub mixed: Option<MixedEquilibrium>,
    /// A continuum of equilibria exists.
    pub degenerate: bool,
}

/// Every profile where neither player gains by deviating (weak inequality).
pub fn pure_equilibria(m: &Bimatrix) -> Vec<ActionProfile> {
    best_response_scan(m, |stay, dev| stay >= dev)
}

/// Profiles where every deviation strictly loses.
pub fn strict_pure_equilibria(m: &Bimatrix) -> Vec<ActionProfile> {
    best_response_scan(m, |stay, dev| stay > dev)
}

fn best_response_scan(m: &Bimatrix, keeps: impl Fn(&Scalar, &Scalar) -> bool) -> Vec<ActionProfile> {
    ActionProfile::ALL
        .into_iter()
        .filter(|&profile| {
            [Player::One, Player::Two].into_iter().all(|player| {
                keeps(m.payoff(profile, player), m.payoff(profile.deviate(player), player))
            })
        })
        .collect()
}

/// Fully mixed equilibrium from the two indifference equations, if one
/// exists with both probabilities strictly inside `(0, 1)`.
pub fn mixed_equilibrium(m: &Bimatrix) -> Result<Option<MixedEquilibrium>, EquilibriumError> {
    use ActionProfile::*;
    // player 1's mix makes player 2 indifferent, and vice versa
    let p1 = indifference_probability(
        m.payoff(AA, Player::Two),
        m.payoff(FA, Player::Two),
        m.payoff(AF, Player::Two),
        m.payoff(FF, Player::Two),
    )?;
    let p2 = indifference_probability(
        m.payoff(AA, Player::One),
        m.payoff(AF, Player::One),
        m.payoff(FA, Player::One),
        m.payoff(FF, Player::One),
    )?;
    let interior = |p: &Scalar| p.is_positive() && p < &Scalar::one();
    Ok(match (p1, p2) {
        (Some(p1), Some(p2)) if interior(&p1) && interior(&p2) => Some(MixedEquilibrium { p1_ally: p1, p2_ally: p2 }),
        _ => None,
    })
}

/// Probability `p` on the mixer's Ally that equalizes the responder's
/// Ally value `p·ally_vs_ally + (1-p)·ally_vs_fight` and Fight value
/// `p·fight_vs_ally + (1-p)·fight_vs_fight`.
fn indifference_probability(
    ally_vs_ally: &Scalar,
    ally_vs_fight: &Scalar,
    fight_vs_ally: &Scalar,
    fight_vs_fight: &Scalar,
) -> Result<Option<Scalar>, EquilibriumError> {
    let numer = fight_vs_fight - ally_vs_fight;
    let denom = &(&(ally_vs_ally - ally_vs_fight) - fight_vs_ally) + fight_vs_fight;
    if denom.is_zero() {
        return if numer.is_zero() { Err(EquilibriumError::Degenerate) } else { Ok(None) };
    }
    Ok(Some(&numer / &denom))
}

/// Pure and mixed equilibria of `m`.
pub fn equilibrium_set(m: &Bimatrix) -> EquilibriumSet {
    let pure = pure_equilibria(m);
    let weak_only = strict_pure_equilibria(m).len() != pure.len();
    let (mixed, mixed_degenerate) = match mixed_equilibrium(m) {
        Ok(mixed) => (mixed, false),
        Err(_) => (None, true),
    };
    EquilibriumSet { pure, mixed, degenerate: weak_only || mixed_degenerate }
}

/// The four closed-form conditions, stored exactly.
///
/// `aa_line_1` is `(2v+2y+c)·q1 - c·q2 = 2v-2x`; player 1 prefers Ally
/// against Ally on its positive side. `aa_line_2` is the mirror image.
/// Player `i` prefers Fight against Fight iff `q_i <= ff_threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionBoundaries {
    pub aa_line_1: Line,
    pub aa_line_2: Line,
    pub ff_threshold: Scalar,
}

impl RegionBoundaries {
    /// `2v + 2y + c`, the coefficient of the own pressure in the AA lines.
    pub fn slope_denominator(&self) -> &Scalar {
        &self.aa_line_1.a
    }

    /// Minimum own pressure for Ally to answer Ally, given the opponent's.
    pub fn aa_lower_bound(&self, q_opponent: &Scalar) -> Scalar {
        &(&self.aa_line_1.r + &(&-&self.aa_line_1.b * q_opponent)) / &self.aa_line_1.a
    }

    /// `(v - x)/(v + y)`: where the two AA lines cross on the diagonal.
    pub fn aa_diagonal_crossing(&self) -> Scalar {
        let c = -&self.aa_line_1.b;
        &self.aa_line_1.r / &(&self.aa_line_1.a - &c)
    }

    pub fn ff_line_1(&self) -> Line {
        Line::vertical(self.ff_threshold.clone())
    }

    pub fn ff_line_2(&self) -> Line {
        Line::horizontal(self.ff_threshold.clone())
    }

    /// The four boundary lines in the order AA1, AA2, q1 = t, q2 = t.
    pub fn lines(&self) -> [Line; 4] {
        [self.aa_line_1.clone(), self.aa_line_2.clone(), self.ff_line_1(), self.ff_line_2()]
    }

    /// Signs of the four conditions at `p`.
    pub fn signs(&self, p: &Point) -> ConditionSigns {
        ConditionSigns {
            ally_1: self.aa_line_1.eval(p).sign(),
            ally_2: self.aa_line_2.eval(p).sign(),
            fight_1: (&self.ff_threshold - &p.q1).sign(),
            fight_2: (&self.ff_threshold - &p.q2).sign(),
        }
    }
}

/// `ally_i`: sign of player i's gain from Ally over Fight when the opponent
/// allies. `fight_i`: sign of its gain from Fight over Ally when the
/// opponent fights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionSigns {
    pub ally_1: Ordering,
    pub ally_2: Ordering,
    pub fight_1: Ordering,
    pub fight_2: Ordering,
}

impl ConditionSigns {
    /// Profiles admitted by the conditions, weakly or strictly.
    pub fn profiles(&self, strict: bool) -> Vec<ActionProfile> {
        let pos = |o: Ordering| if strict { o == Ordering::Greater } else { o != Ordering::Less };
        let neg = |o: Ordering| if strict { o == Ordering::Less } else { o != Ordering::Greater };
        let mut out = Vec::with_capacity(2);
        if pos(self.ally_1) && pos(self.ally_2) {
            out.push(ActionProfile::AA);
        }
        // player 1 allies against a fighter, player 2 fights against an ally
        if neg(self.fight_1) && neg(self.ally_2) {
            out.push(ActionProfile::AF);
        }
        if neg(self.ally_1) && neg(self.fight_2) {
            out.push(ActionProfile::FA);
        }
        if pos(self.fight_1) && pos(self.fight_2) {
            out.push(ActionProfile::FF);
        }
        out
    }
}

pub fn region_boundaries(params: &GameParameters) -> RegionBoundaries {
    let two = Scalar::int(2);
    let GameParameters { v, x, f, c, y, .. } = params;
    let denom = &(&two * v) + &(&(&two * y) + c);
    let offset = &two * &(v - x);
    RegionBoundaries {
        aa_line_1: Line::new(denom.clone(), -c, offset.clone()),
        aa_line_2: Line::new(-c, denom, offset),
        ff_threshold: Scalar::one() - (f / v),
    }
}

/// Pure profiles admitted by the closed-form conditions (weak inequalities).
pub fn closed_form_equilibria(params: &GameParameters, attack: &AttackLevels) -> Vec<ActionProfile> {
    region_boundaries(params).signs(&Point::from(attack)).profiles(false)
}

fn label_from_signs(signs: &ConditionSigns) -> RegionLabel {
    let strict = signs.profiles(true);
    if signs.profiles(false) != strict {
        return RegionLabel::Boundary;
    }
    use ActionProfile::*;
    match strict.as_slice() {
        [AA] => RegionLabel::AA,
        [FF] => RegionLabel::FF,
        [AF] => RegionLabel::AF,
        [FA] => RegionLabel::FA,
        [AA, FF] => RegionLabel::Multi,
        [AF, FA] => RegionLabel::MultiAsym,
        // other strict combinations contradict each other; an empty set
        // would mean a best-response cycle, impossible for these payoffs
        _ => RegionLabel::Boundary,
    }
}

/// Closed-form region of `attack`.
pub fn classify_region(params: &GameParameters, attack: &AttackLevels) -> RegionLabel {
    classify_with(&region_boundaries(params), &Point::from(attack))
}

pub(crate) fn classify_with(bounds: &RegionBoundaries, p: &Point) -> RegionLabel {
    label_from_signs(&bounds.signs(p))
}

/// The equilibrium the two firms are taken to play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Played {
    Pure(ActionProfile),
    Mixed(MixedEquilibrium),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayedEquilibrium {
    /// `None` when no equilibrium Pareto-dominates all the others.
    pub selection: Option<Played>,
    pub set: EquilibriumSet,
    pub multiple: bool,
}

impl PlayedEquilibrium {
    pub fn pure_profile(&self) -> Option<ActionProfile> {
        match &self.selection {
            Some(Played::Pure(p)) => Some(*p),
            _ => None,
        }
    }
}

/// `a` weakly Pareto-dominates `b`: no player worse, someone strictly better.
fn pareto_dominates(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> bool {
    a.0 >= b.0 && a.1 >= b.1 && (a.0 > b.0 || a.1 > b.1)
}

/// Finds the equilibria at `attack` and selects the Pareto-dominant one.
pub fn played_equilibrium(params: &GameParameters, attack: &AttackLevels) -> Result<PlayedEquilibrium, EquilibriumError> {
    let attack = attack.clone().validated()?;
    if classify_region(params, &attack) == RegionLabel::Boundary {
        return Err(EquilibriumError::DegenerateGame(attack));
    }
    Ok(select_played(&pressured_unchecked(params, &attack)))
}

pub(crate) fn select_played(m: &Bimatrix) -> PlayedEquilibrium {
    let set = equilibrium_set(m);
    let mut candidates: Vec<(Played, (Scalar, Scalar))> = set
        .pure
        .iter()
        .map(|&p| {
            let (a, b) = m.pair(p);
            (Played::Pure(p), (a.clone(), b.clone()))
        })
        .collect();
    if let Some(mixed) = &set.mixed {
        let payoffs = (mixed.expected_payoff(m, Player::One), mixed.expected_payoff(m, Player::Two));
        candidates.push((Played::Mixed(mixed.clone()), payoffs));
    }
    let multiple = candidates.len() > 1;
    let selection = if candidates.len() == 1 {
        Some(candidates[0].0.clone())
    } else {
        candidates
            .iter()
            .enumerate()
            .find(|(i, (_, pay))| {
                candidates.iter().enumerate().all(|(j, (_, other))| *i == j || pareto_dominates(pay, other))
            })
            .map(|(_, (played, _))| played.clone())
    };
    PlayedEquilibrium { selection, set, multiple }
}

/// Pure profile played at `p`, if `p` is non-generic-free and the
/// selection is pure.
pub(crate) fn played_profile_at(params: &GameParameters, bounds: &RegionBoundaries, p: &Point) -> Option<ActionProfile> {
    let attack = p.to_attack()?;
    if classify_with(bounds, p) == RegionLabel::Boundary {
        return None;
    }
    select_played(&pressured_unchecked(params, &attack)).pure_profile()
}

/// A boundary segment drawn on the region diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDiagram {
    pub resolution: usize,
    /// `cells[row][col]`: row indexes q2 upward, col indexes q1.
    pub cells: Vec<Vec<RegionLabel>>,
    pub boundary_curves: Vec<Segment>,
}

impl RegionDiagram {
    pub fn label_at(&self, col: usize, row: usize) -> RegionLabel {
        self.cells[row][col]
    }

    pub fn labels(&self) -> std::collections::BTreeSet<RegionLabel> {
        self.cells.iter().flatten().copied().collect()
    }
}

/// Center of grid cell `index` out of `resolution`: `(2·index + 1)/(2n)`.
pub fn cell_center(index: usize, resolution: usize) -> Scalar {
    Scalar::new(2 * index as i64 + 1, 2 * resolution as i64)
}

/// Where cell `(col, row)` is sampled: its center, or when the center lies
/// exactly on a condition line, a point just up and to the right of it
/// inside the same cell and off every line.
pub fn sample_point(bounds: &RegionBoundaries, col: usize, row: usize, resolution: usize) -> Point {
    let center = Point::new(cell_center(col, resolution), cell_center(row, resolution));
    let lines = bounds.lines();
    if !lines.iter().any(|l| l.contains(&center)) {
        return center;
    }
    let step = safe_step(&center, lines.iter()).min(Scalar::new(1, 4 * resolution as i64));
    center.offset(&Direction::new(Scalar::one(), Scalar::one()), &step)
}

/// Grid of region labels at the cell sample points plus the boundary
/// segments that actually separate different labels.
pub fn region_diagram(params: &GameParameters, resolution: usize) -> RegionDiagram {
    region_diagram_with(params, resolution, Execution::default())
}

pub fn region_diagram_with(params: &GameParameters, resolution: usize, exec: Execution) -> RegionDiagram {
    assert!(resolution >= 2, "resolution must be at least 2");
    let bounds = region_boundaries(params);
    let flat = exec.map_range(resolution * resolution, |k| {
        let (row, col) = (k / resolution, k % resolution);
        classify_with(&bounds, &sample_point(&bounds, col, row, resolution))
    });
    let cells = flat.chunks(resolution).map(<[RegionLabel]>::to_vec).collect();
    RegionDiagram { resolution, cells, boundary_curves: boundary_curves(&bounds) }
}

/// Portions of the four condition lines across which the region label
/// changes, merged into maximal segments.
pub fn boundary_curves(bounds: &RegionBoundaries) -> Vec<Segment> {
    let boundary_lines = dedup_lines(bounds.lines().to_vec());
    let mut all_lines = boundary_lines.clone();
    all_lines.extend(unit_square_sides());
    let all_lines = dedup_lines(all_lines);

    let mut curves = Vec::new();
    for line in &boundary_lines {
        let mut stops: Vec<Point> = vertices_in_unit_square(&all_lines).into_iter().filter(|p| line.contains(p)).collect();
        stops.sort();
        let mut open: Option<Segment> = None;
        for pair in stops.windows(2) {
            let mid = Point::new(
                &(&pair[0].q1 + &pair[1].q1) / &Scalar::int(2),
                &(&pair[0].q2 + &pair[1].q2) / &Scalar::int(2),
            );
            let step = safe_step(&mid, all_lines.iter().filter(|l| !l.same_as(line)));
            let normal = line.normal();
            let plus = mid.offset(&normal, &step);
            let minus = mid.offset(&normal.reversed(), &step);
            let separates = classify_with(bounds, &plus) != classify_with(bounds, &minus);
            match (&mut open, separates) {
                (Some(seg), true) => seg.to = pair[1].clone(),
                (None, true) => open = Some(Segment { from: pair[0].clone(), to: pair[1].clone() }),
                (Some(_), false) => curves.push(open.take().expect("open segment")),
                (None, false) => {}
            }
        }
        curves.extend(open);
    }
    curves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::pressured_bimatrix;
    use crate::scalar::q;
    use ActionProfile::*;

    fn example() -> GameParameters {
        GameParameters::worked_example(8)
    }

    fn at(q1: Scalar, q2: Scalar) -> AttackLevels {
        AttackLevels::new(q1, q2).unwrap()
    }

    fn matrix(a: AttackLevels) -> Bimatrix {
        pressured_bimatrix(&example(), &a).unwrap()
    }

    #[test]
    fn pure_equilibria_by_brute_force() {
        assert_eq!(pure_equilibria(&matrix(AttackLevels::zero())), vec![FF]);
        assert_eq!(pure_equilibria(&matrix(at(Scalar::one(), Scalar::one()))), vec![AA]);
        assert_eq!(pure_equilibria(&matrix(at(q(1, 2), q(1, 2)))), vec![AA, FF]);
    }

    /// The closed forms for the worked example: Ally probabilities
    /// (6 - 10 q2)/(7 q2 - 3 q1) and (6 - 10 q1)/(7 q1 - 3 q2).
    fn closed_form_mix(a: &AttackLevels) -> (Scalar, Scalar) {
        let (q1, q2) = (&a.q1, &a.q2);
        let p1 = &(Scalar::int(6) - Scalar::int(10) * q2) / &(Scalar::int(7) * q2 - Scalar::int(3) * q1);
        let p2 = &(Scalar::int(6) - Scalar::int(10) * q1) / &(Scalar::int(7) * q1 - Scalar::int(3) * q2);
        (p1, p2)
    }

    #[test]
    fn mixed_equilibrium_matches_closed_forms() {
        for a in [at(q(1, 2), q(1, 2)), at(q(1, 2), q(11, 20))] {
            let m = matrix(a.clone());
            let mixed = mixed_equilibrium(&m).unwrap().expect("interior mix");
            let (p1, p2) = closed_form_mix(&a);
            assert_eq!((&mixed.p1_ally, &mixed.p2_ally), (&p1, &p2));
            for player in [Player::One, Player::Two] {
                let (ally, fight) = mixed.action_values(&m, player);
                assert_eq!(ally, fight, "residual for {player:?}");
            }
        }
        let m = mixed_equilibrium(&matrix(at(q(1, 2), q(1, 2)))).unwrap().unwrap();
        assert_eq!((m.p1_ally, m.p2_ally), (q(1, 2), q(1, 2)));
        let m = mixed_equilibrium(&matrix(at(q(1, 2), q(11, 20)))).unwrap().unwrap();
        assert_eq!((m.p1_ally, m.p2_ally), (q(10, 47), q(20, 37)));
    }

    #[test]
    fn centers_on_condition_lines_are_nudged() {
        let params = GameParameters::worked_example(8);
        let bounds = region_boundaries(&params);
        // 17·(87/202) − 3·(89/202) = 6 exactly
        let p = sample_point(&bounds, 43, 44, 101);
        assert!(p > Point::new(q(87, 202), q(89, 202)));
        assert!(p.q1 < q(88, 202) && p.q2 < q(90, 202));
        assert!(bounds.lines().iter().all(|l| !l.contains(&p)));
        assert_eq!(sample_point(&bounds, 50, 50, 101), Point::new(q(1, 2), q(1, 2)));
        assert!(!region_diagram(&params, 101).labels().contains(&RegionLabel::Boundary));
    }

    #[test]
    fn no_mixing_when_ally_dominates() {
        assert_eq!(mixed_equilibrium(&matrix(at(Scalar::one(), Scalar::one()))).unwrap(), None);
    }

    #[test]
    fn fully_indifferent_player_is_degenerate() {
        let zero = || Scalar::zero();
        let m = Bimatrix::from_cells([
            [Scalar::one(), zero()],
            [zero(), Scalar::one()],
            [Scalar::one(), zero()],
            [zero(), Scalar::one()],
        ]);
        assert_eq!(mixed_equilibrium(&m), Err(EquilibriumError::Degenerate));
        assert!(equilibrium_set(&m).degenerate);
    }

    #[test]
    fn boundaries_of_worked_example() {
        let b = region_boundaries(&example());
        assert_eq!(b.aa_line_1.normalized(), Line::new(Scalar::one(), q(-3, 17), q(6, 17)));
        assert_eq!(b.aa_lower_bound(&q(1, 2)), q(15, 34));
        assert_eq!(b.ff_threshold, q(3, 5));
        assert_eq!(b.aa_diagonal_crossing(), q(3, 7));
    }

    #[test]
    fn boundaries_near_degenerate_parameters() {
        let k = q(1, 1000);
        let p = GameParameters { x: Scalar::int(5) - &k, ..example() };
        let b = region_boundaries(&p);
        // offset 2v - 2x collapses to 2k
        assert_eq!(b.aa_line_1.r, Scalar::int(2) * &k);
        let p = GameParameters { f: Scalar::int(5) - &k, ..example() };
        assert_eq!(region_boundaries(&p).ff_threshold, &k / &Scalar::int(5));
    }

    #[test]
    fn classification_examples() {
        let p = example();
        assert_eq!(classify_region(&p, &at(q(1, 5), q(7, 10))), RegionLabel::FA);
        assert_eq!(classify_region(&p, &at(q(1, 2), q(1, 2))), RegionLabel::Multi);
        assert_eq!(classify_region(&p, &at(q(3, 5), q(39, 85))), RegionLabel::Boundary);
        assert_eq!(classify_region(&p, &at(q(7, 10), q(1, 5))), RegionLabel::AF);
        assert_eq!(classify_region(&p, &AttackLevels::zero()), RegionLabel::FF);
        // equality on a non-binding condition is not a boundary
        assert_eq!(classify_region(&p, &at(q(3, 5), q(19, 20))), RegionLabel::AA);
    }

    #[test]
    fn asymmetric_multiplicity_when_fight_box_is_small() {
        // t = 1 - 9/10 = 1/10 lies below (v - x)/(v + y) = 1/2
        let p = GameParameters::new(Scalar::int(8), Scalar::int(10), Scalar::int(5), Scalar::int(9), Scalar::int(2), Scalar::int(0)).unwrap();
        let a = at(q(1, 5), q(1, 5));
        assert_eq!(classify_region(&p, &a), RegionLabel::MultiAsym);
        let m = pressured_bimatrix(&p, &a).unwrap();
        assert_eq!(pure_equilibria(&m), vec![AF, FA]);
        let played = played_equilibrium(&p, &a).unwrap();
        assert_eq!(played.selection, None);
        assert!(played.multiple);
    }

    #[test]
    fn pareto_selection() {
        let p = example();
        let played = played_equilibrium(&p, &at(q(1, 2), q(1, 2))).unwrap();
        assert_eq!(played.selection, Some(Played::Pure(AA)));
        assert_eq!(played.set.pure, vec![AA, FF]);
        assert!(played.set.mixed.is_some());
        assert!(played.multiple);

        let played = played_equilibrium(&p, &AttackLevels::zero()).unwrap();
        assert_eq!(played.selection, Some(Played::Pure(FF)));
        assert!(!played.multiple);

        assert!(matches!(
            played_equilibrium(&p, &at(q(3, 5), q(39, 85))),
            Err(EquilibriumError::DegenerateGame(_))
        ));
    }

    #[test]
    fn diagram_examples() {
        let p = example();
        let d = region_diagram(&p, 11);
        assert_eq!(d.label_at(10, 10), RegionLabel::AA);
        let d = region_diagram(&p, 2);
        assert_eq!(d.label_at(0, 0), RegionLabel::FF);
        assert_eq!(d.label_at(1, 1), RegionLabel::AA);
        assert_eq!(d.label_at(1, 0), RegionLabel::AF);
        assert_eq!(d.label_at(0, 1), RegionLabel::FA);
    }

    #[test]
    fn boundary_curves_of_worked_example() {
        let curves = boundary_curves(&region_boundaries(&example()));
        let pt = |a: Scalar, b: Scalar| Point::new(a, b);
        let expected = vec![
            Segment { from: pt(q(3, 7), q(3, 7)), to: pt(q(9, 17), Scalar::one()) },
            Segment { from: pt(q(3, 7), q(3, 7)), to: pt(Scalar::one(), q(9, 17)) },
            Segment { from: pt(q(3, 5), Scalar::zero()), to: pt(q(3, 5), q(3, 5)) },
            Segment { from: pt(Scalar::zero(), q(3, 5)), to: pt(q(3, 5), q(3, 5)) },
        ];
        assert_eq!(curves, expected);
    }

    #[test]
    fn label_round_trips_through_text() {
        for label in RegionLabel::ALL {
            assert_eq!(label.as_str().parse::<RegionLabel>().unwrap(), label);
        }
    }
}
