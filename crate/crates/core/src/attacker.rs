//! The third party: its payoff, optimal attack levels and regime thresholds.
//!
//! The firms' played equilibrium depends only on the four boundary lines, so
//! the square is cut into faces by those lines and the square's sides. On
//! each face the played profile is constant and the attacker's payoff is
//! affine, so suprema are found among arrangement vertices. A vertex value
//! counts as attained only if the profile is actually played at the vertex
//! (or along a face where the payoff is flat); otherwise it is a supremum
//! approached from inside the face.
//!
//! All payoffs depend on the market value `l` and the attack cost `sigma`
//! only through `d = l - sigma`, which makes the regime analysis a question
//! about finitely many affine functions of `d`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::envelope::{upper_envelope, Affine, PiecewiseAffine};
use crate::equilibrium::{
    played_equilibrium, played_profile_at, region_boundaries, EquilibriumError, Played, RegionBoundaries,
    RegionLabel,
};
use crate::exec::Execution;
use crate::game::{ActionProfile, AttackLevels, GameError, GameParameters};
use crate::geometry::{dedup_lines, local_probes, unit_square_sides, vertices_in_unit_square, Direction, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttackerError {
    #[error("attacker parameter {name} must be >= 0 (got {value})")]
    NegativeParameter { name: &'static str, value: Scalar },
    #[error("backoff delta must lie strictly between 0 and 1 (got {0})")]
    InvalidDelta(Scalar),
    #[error("objective is degenerate: {0}")]
    DegenerateObjective(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
}

/// Cost structure of the attack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackerParameters {
    /// Per-unit attack cost.
    pub sigma: Scalar,
    /// Surcharge for attacking an alliance.
    pub eps_alliance: Scalar,
    /// Discount when the targets are fighting each other.
    pub eps_infight: Scalar,
}

impl AttackerParameters {
    pub fn new(sigma: Scalar, eps_alliance: Scalar, eps_infight: Scalar) -> Result<Self, AttackerError> {
        AttackerParameters { sigma, eps_alliance, eps_infight }.validated()
    }

    pub fn validated(self) -> Result<Self, AttackerError> {
        for (name, value) in [("sigma", &self.sigma), ("eps_alliance", &self.eps_alliance), ("eps_infight", &self.eps_infight)] {
            if value.is_negative() {
                return Err(AttackerError::NegativeParameter { name, value: value.clone() });
            }
        }
        Ok(self)
    }
}

/// Margin `d = l - sigma` and the constants the attacker payoff needs.
#[derive(Debug, Clone)]
struct PayoffTerms {
    v: Scalar,
    eps_alliance: Scalar,
    eps_infight: Scalar,
}

impl PayoffTerms {
    fn new(params: &GameParameters, eps_alliance: &Scalar, eps_infight: &Scalar) -> Self {
        PayoffTerms { v: params.v.clone(), eps_alliance: eps_alliance.clone(), eps_infight: eps_infight.clone() }
    }

    /// Payoff at `p` under `profile` as an affine function of `d`.
    fn affine(&self, profile: ActionProfile, p: &Point) -> Affine {
        let total = &p.q1 + &p.q2;
        let intercept = match profile {
            ActionProfile::AA => -(&self.eps_alliance * &total),
            ActionProfile::FF => &self.eps_infight * &total,
            ActionProfile::AF => &self.v * &(&p.q2 - &p.q1),
            ActionProfile::FA => &self.v * &(&p.q1 - &p.q2),
        };
        Affine::new(total, intercept)
    }

    fn value(&self, profile: ActionProfile, p: &Point, margin: &Scalar) -> Scalar {
        self.affine(profile, p).eval(margin)
    }
}

/// Payoff to the attacker when the firms play `profile` at `attack`.
pub fn attacker_payoff(ap: &AttackerParameters, params: &GameParameters, attack: &AttackLevels, profile: ActionProfile) -> Scalar {
    let margin = &params.l - &ap.sigma;
    PayoffTerms::new(params, &ap.eps_alliance, &ap.eps_infight).value(profile, &Point::from(attack), &margin)
}

/// Coefficients `(a1, a2)` of the attacker payoff `a1·q1 + a2·q2` under
/// `profile`.
pub fn payoff_coefficients(ap: &AttackerParameters, params: &GameParameters, profile: ActionProfile) -> (Scalar, Scalar) {
    let margin = &params.l - &ap.sigma;
    match profile {
        ActionProfile::AA => {
            let a = &margin - &ap.eps_alliance;
            (a.clone(), a)
        }
        ActionProfile::FF => {
            let a = &margin + &ap.eps_infight;
            (a.clone(), a)
        }
        ActionProfile::AF => (&margin - &params.v, &margin + &params.v),
        ActionProfile::FA => (&margin + &params.v, &margin - &params.v),
    }
}

/// Payoff to the attacker at `attack` given the equilibrium the firms play.
pub fn played_attacker_payoff(
    ap: &AttackerParameters,
    params: &GameParameters,
    attack: &AttackLevels,
) -> Result<(ActionProfile, Scalar), AttackerError> {
    let played = played_equilibrium(params, attack)?;
    match played.selection {
        Some(Played::Pure(profile)) => Ok((profile, attacker_payoff(ap, params, attack, profile))),
        Some(Played::Mixed(_)) => Err(AttackerError::DegenerateObjective(format!(
            "the firms mix at {attack}; the attacker's payoff is undefined"
        ))),
        None => Err(AttackerError::DegenerateObjective(format!(
            "no equilibrium is selected at {attack}; the attacker's payoff is undefined"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Regime {
    NoAttack,
    SplitAlliance,
    ForceAlliance,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::NoAttack => "NoAttack",
            Regime::SplitAlliance => "SplitAlliance",
            Regime::ForceAlliance => "ForceAlliance",
        })
    }
}

/// A vertex in the closure of the region where `profile` is played.
#[derive(Debug, Clone)]
struct Candidate {
    profile: ActionProfile,
    vertex: Point,
    vertex_played: bool,
    /// Played points of `profile` next to the vertex, with the direction
    /// they lie in.
    nearby: Vec<(Direction, Point)>,
}

/// Played-profile structure of the pressure square for one game.
#[derive(Debug, Clone)]
pub struct AttackGeometry {
    params: GameParameters,
    bounds: RegionBoundaries,
    candidates: Vec<Candidate>,
}

impl AttackGeometry {
    pub fn new(params: &GameParameters) -> Self {
        Self::with_execution(params, Execution::default())
    }

    pub fn with_execution(params: &GameParameters, exec: Execution) -> Self {
        let bounds = region_boundaries(params);
        let mut lines = bounds.lines().to_vec();
        lines.extend(unit_square_sides());
        let lines = dedup_lines(lines);
        let vertices = vertices_in_unit_square(&lines);
        let per_vertex = exec.map_slice(&vertices, |vertex| {
            let probes: Vec<(Option<Direction>, Point, Option<ActionProfile>)> = local_probes(vertex, &lines)
                .into_iter()
                .map(|(dir, p)| {
                    let played = played_profile_at(params, &bounds, &p);
                    (dir, p, played)
                })
                .collect();
            let played_at_vertex = probes.iter().find(|(dir, _, _)| dir.is_none()).and_then(|(_, _, played)| *played);
            let mut out = Vec::new();
            for profile in ActionProfile::ALL {
                let nearby: Vec<(Direction, Point)> = probes
                    .iter()
                    .filter(|(_, _, played)| *played == Some(profile))
                    .filter_map(|(dir, p, _)| Some((dir.clone()?, p.clone())))
                    .collect();
                let vertex_played = played_at_vertex == Some(profile);
                if vertex_played || !nearby.is_empty() {
                    out.push(Candidate { profile, vertex: vertex.clone(), vertex_played, nearby });
                }
            }
            out
        });
        AttackGeometry { params: params.clone(), bounds, candidates: per_vertex.into_iter().flatten().collect() }
    }

    pub fn params(&self) -> &GameParameters {
        &self.params
    }

    fn played_at(&self, p: &Point) -> Option<ActionProfile> {
        played_profile_at(&self.params, &self.bounds, p)
    }

    fn profiles(&self) -> BTreeSet<ActionProfile> {
        self.candidates.iter().map(|c| c.profile).collect()
    }
}

/// Supremum of the attacker payoff over the region where one profile is
/// played.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionOptimum {
    pub region: RegionLabel,
    pub profile: ActionProfile,
    pub value: Scalar,
    /// Closure points reaching `value`, sorted.
    pub argmax_points: Vec<AttackLevels>,
    pub attained_in_played_region: bool,
    /// A played point reaching `value`, if any.
    pub attained_at: Option<AttackLevels>,
}

fn region_of(profile: ActionProfile) -> RegionLabel {
    match profile {
        ActionProfile::AA => RegionLabel::AA,
        ActionProfile::AF => RegionLabel::AF,
        ActionProfile::FA => RegionLabel::FA,
        ActionProfile::FF => RegionLabel::FF,
    }
}

fn attack_of(p: &Point) -> AttackLevels {
    p.to_attack().expect("candidate points lie in the unit square")
}

fn region_optima_at(geom: &AttackGeometry, terms: &PayoffTerms, margin: &Scalar) -> Vec<RegionOptimum> {
    let mut out = Vec::new();
    for profile in geom.profiles() {
        let cands: Vec<&Candidate> = geom.candidates.iter().filter(|c| c.profile == profile).collect();
        let value = cands.iter().map(|c| terms.value(profile, &c.vertex, margin)).max().expect("nonempty");
        let top: Vec<&&Candidate> = cands.iter().filter(|c| terms.value(profile, &c.vertex, margin) == value).collect();
        let argmax: BTreeSet<Point> = top.iter().map(|c| c.vertex.clone()).collect();
        let mut attained: BTreeSet<Point> = BTreeSet::new();
        for c in &top {
            if c.vertex_played {
                attained.insert(c.vertex.clone());
            }
            // flat direction: the payoff along the face equals the vertex value
            for (_, p) in &c.nearby {
                if terms.value(profile, p, margin) == value {
                    attained.insert(p.clone());
                }
            }
        }
        out.push(RegionOptimum {
            region: region_of(profile),
            profile,
            value,
            argmax_points: argmax.iter().map(attack_of).collect(),
            attained_in_played_region: !attained.is_empty(),
            attained_at: attained.iter().next().map(attack_of),
        });
    }
    out
}

/// Per-region suprema (one entry per profile that is played somewhere).
pub fn region_optima(params: &GameParameters, ap: &AttackerParameters) -> Vec<RegionOptimum> {
    let geom = AttackGeometry::new(params);
    region_optima_with(&geom, ap)
}

pub fn region_optima_with(geom: &AttackGeometry, ap: &AttackerParameters) -> Vec<RegionOptimum> {
    let terms = PayoffTerms::new(&geom.params, &ap.eps_alliance, &ap.eps_infight);
    region_optima_at(geom, &terms, &(&geom.params.l - &ap.sigma))
}

/// The attacker's chosen pressure and what it earns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackPlan {
    pub regime: Regime,
    pub supremum_value: Scalar,
    pub attained: bool,
    pub optimum_point: Option<AttackLevels>,
    pub backoff_point: Option<AttackLevels>,
    /// Payoff at the backoff point, or at the optimum when attained.
    pub backoff_value: Scalar,
    pub induced_profile: ActionProfile,
    pub backoff_delta: Scalar,
    /// Every closure point of the chosen region reaching `supremum_value`.
    pub optimal_points: Vec<AttackLevels>,
    pub region_optima: Vec<RegionOptimum>,
}

enum Decision<'a> {
    NoAttack,
    Attained { profile: ActionProfile, point: Point },
    Supremum { optimum: &'a RegionOptimum },
}

fn decide(optima: &[RegionOptimum]) -> (Regime, Result<Decision<'_>, AttackerError>) {
    let best = optima.iter().map(|o| o.value.clone()).max();
    let best = match best {
        Some(b) if b.is_positive() => b,
        _ => return (Regime::NoAttack, Ok(Decision::NoAttack)),
    };
    let top: Vec<&RegionOptimum> = optima.iter().filter(|o| o.value == best).collect();
    let attained: Vec<&RegionOptimum> = top.iter().copied().filter(|o| o.attained_in_played_region).collect();
    if !attained.is_empty() {
        let regime = if attained.iter().all(|o| o.profile == ActionProfile::AA) {
            Regime::ForceAlliance
        } else {
            Regime::SplitAlliance
        };
        if attained.len() > 1 {
            let names: Vec<&str> = attained.iter().map(|o| o.profile.as_str()).collect();
            return (regime, Err(AttackerError::DegenerateObjective(format!(
                "profiles {} attain the same optimum {best}",
                names.join(", ")
            ))));
        }
        let o = attained[0];
        let point = Point::from(o.attained_at.as_ref().expect("attained"));
        return (regime, Ok(Decision::Attained { profile: o.profile, point }));
    }
    if top.len() > 1 {
        let names: Vec<&str> = top.iter().map(|o| o.profile.as_str()).collect();
        return (Regime::SplitAlliance, Err(AttackerError::DegenerateObjective(format!(
            "profiles {} share the unattained supremum {best}",
            names.join(", ")
        ))));
    }
    (Regime::SplitAlliance, Ok(Decision::Supremum { optimum: top[0] }))
}

/// Default inward step for unattained optima.
pub fn default_backoff_delta() -> Scalar {
    Scalar::new(1, 1000)
}

const MAX_HALVINGS: u32 = 128;

fn sign_steps() -> Vec<Direction> {
    let mut out = Vec::new();
    for s1 in [-1i64, 0, 1] {
        for s2 in [-1i64, 0, 1] {
            if s1 != 0 || s2 != 0 {
                out.push(Direction::new(Scalar::int(s1), Scalar::int(s2)));
            }
        }
    }
    out
}

/// Steps inward from a supremum point until `profile` is played, starting
/// at `delta` and halving as needed. Coordinate steps of `±delta` are tried
/// first; face directions are the fallback for narrow faces.
fn backoff(
    geom: &AttackGeometry,
    terms: &PayoffTerms,
    margin: &Scalar,
    profile: ActionProfile,
    vertex: &Point,
    delta: &Scalar,
) -> Result<(Point, Scalar, Scalar), AttackerError> {
    let face_dirs: Vec<Direction> = geom
        .candidates
        .iter()
        .filter(|c| c.profile == profile && &c.vertex == vertex)
        .flat_map(|c| c.nearby.iter().map(|(d, _)| d.clone()))
        .collect();
    let grid_dirs = sign_steps();
    let mut step = delta.clone();
    for _ in 0..=MAX_HALVINGS {
        for dirs in [&grid_dirs, &face_dirs] {
            let best = dirs
                .iter()
                .map(|d| vertex.offset(d, &step))
                .filter(|p| geom.played_at(p) == Some(profile))
                .map(|p| {
                    let value = terms.value(profile, &p, margin);
                    (p, value)
                })
                .fold(None::<(Point, Scalar)>, |acc, (p, value)| match acc {
                    Some((_, ref v)) if v >= &value => acc,
                    _ => Some((p, value)),
                });
            if let Some((p, value)) = best {
                return Ok((p, value, step));
            }
        }
        step = &step / &Scalar::int(2);
    }
    Err(AttackerError::DegenerateObjective(format!("no interior point of the {profile} region found near {}", attack_of(vertex))))
}

/// Optimal attack levels for the attacker.
pub fn optimize_attack(params: &GameParameters, ap: &AttackerParameters, backoff_delta: &Scalar) -> Result<AttackPlan, AttackerError> {
    let geom = AttackGeometry::new(params);
    optimize_attack_with(&geom, ap, backoff_delta)
}

pub fn optimize_attack_with(geom: &AttackGeometry, ap: &AttackerParameters, backoff_delta: &Scalar) -> Result<AttackPlan, AttackerError> {
    let ap = ap.clone().validated()?;
    if !backoff_delta.is_positive() || backoff_delta >= &Scalar::one() {
        return Err(AttackerError::InvalidDelta(backoff_delta.clone()));
    }
    let params = &geom.params;
    let terms = PayoffTerms::new(params, &ap.eps_alliance, &ap.eps_infight);
    let margin = &params.l - &ap.sigma;
    let optima = region_optima_at(geom, &terms, &margin);
    let (regime, decision) = decide(&optima);
    let plan = match decision? {
        Decision::NoAttack => {
            let origin = Point::new(Scalar::zero(), Scalar::zero());
            AttackPlan {
                regime,
                supremum_value: Scalar::zero(),
                attained: true,
                optimum_point: Some(AttackLevels::zero()),
                backoff_point: None,
                backoff_value: Scalar::zero(),
                induced_profile: geom.played_at(&origin).unwrap_or(ActionProfile::FF),
                backoff_delta: backoff_delta.clone(),
                optimal_points: vec![AttackLevels::zero()],
                region_optima: optima.clone(),
            }
        }
        Decision::Attained { profile, point } => {
            let value = terms.value(profile, &point, &margin);
            AttackPlan {
                regime,
                supremum_value: value.clone(),
                attained: true,
                optimum_point: Some(attack_of(&point)),
                backoff_point: None,
                backoff_value: value,
                induced_profile: profile,
                backoff_delta: backoff_delta.clone(),
                optimal_points: vec![attack_of(&point)],
                region_optima: optima.clone(),
            }
        }
        Decision::Supremum { optimum } => {
            let vertex = Point::from(&optimum.argmax_points[0]);
            let (point, value, used) = backoff(geom, &terms, &margin, optimum.profile, &vertex, backoff_delta)?;
            AttackPlan {
                regime,
                supremum_value: optimum.value.clone(),
                attained: false,
                optimum_point: None,
                backoff_point: Some(attack_of(&point)),
                backoff_value: value,
                induced_profile: optimum.profile,
                backoff_delta: used,
                optimal_points: optimum.argmax_points.clone(),
                region_optima: optima.clone(),
            }
        }
    };
    Ok(plan)
}

/// Regimes of the attacker as the margin `d = l - sigma` varies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeAnalysis {
    /// Strictly increasing values of `d` where the regime changes.
    pub breakpoints: Vec<Scalar>,
    /// `regimes[i]` holds between `breakpoints[i-1]` and `breakpoints[i]`.
    pub regimes: Vec<Regime>,
    /// Per profile region: supremum of the attacker payoff as a function of `d`.
    pub per_region_value_functions: Vec<(RegionLabel, PiecewiseAffine)>,
}

impl RegimeAnalysis {
    pub fn regime_at(&self, margin: &Scalar) -> Regime {
        self.regimes[self.breakpoints.partition_point(|b| b < margin)]
    }
}

/// Labels every interval of `d = l - sigma` with the attacker's regime.
pub fn regime_analysis(params: &GameParameters, eps_alliance: &Scalar, eps_infight: &Scalar) -> RegimeAnalysis {
    let geom = AttackGeometry::new(params);
    regime_analysis_with(&geom, eps_alliance, eps_infight)
}

pub fn regime_analysis_with(geom: &AttackGeometry, eps_alliance: &Scalar, eps_infight: &Scalar) -> RegimeAnalysis {
    let terms = PayoffTerms::new(&geom.params, eps_alliance, eps_infight);

    let per_region_value_functions = geom
        .profiles()
        .into_iter()
        .map(|profile| {
            let lines: Vec<Affine> =
                geom.candidates.iter().filter(|c| c.profile == profile).map(|c| terms.affine(profile, &c.vertex)).collect();
            (region_of(profile), upper_envelope(&lines).expect("profile has candidates"))
        })
        .collect();

    // The order of all candidate values, their signs and the flat-face
    // equalities can only change at these values of d.
    let mut functions: Vec<Affine> = Vec::new();
    let mut critical: BTreeSet<Scalar> = BTreeSet::new();
    for c in &geom.candidates {
        let at_vertex = terms.affine(c.profile, &c.vertex);
        for (_, p) in &c.nearby {
            let near = terms.affine(c.profile, p);
            let diff = Affine::new(&near.slope - &at_vertex.slope, &near.intercept - &at_vertex.intercept);
            critical.extend(diff.root());
        }
        functions.push(at_vertex);
    }
    for (i, f) in functions.iter().enumerate() {
        critical.extend(f.root());
        for g in &functions[i + 1..] {
            critical.extend(f.crossing(g));
        }
    }
    let critical: Vec<Scalar> = critical.into_iter().collect();

    let mut samples: Vec<Scalar> = Vec::with_capacity(critical.len() + 1);
    match (critical.first(), critical.last()) {
        (Some(lo), Some(hi)) => {
            samples.push(lo - &Scalar::one());
            samples.extend(critical.windows(2).map(|w| &(&w[0] + &w[1]) / &Scalar::int(2)));
            samples.push(hi + &Scalar::one());
        }
        _ => samples.push(Scalar::zero()),
    }
    let labels: Vec<Regime> = samples.iter().map(|d| decide(&region_optima_at(geom, &terms, d)).0).collect();

    let mut breakpoints = Vec::new();
    let mut regimes = vec![labels[0]];
    for (i, label) in labels.iter().enumerate().skip(1) {
        if *label != *regimes.last().expect("nonempty") {
            breakpoints.push(critical[i - 1].clone());
            regimes.push(*label);
        }
    }
    RegimeAnalysis { breakpoints, regimes, per_region_value_functions }
}
