//! Reports over scenarios: analysis, attack plans, advice and regimes, each
//! with a machine (JSON, exact fractions as strings) and a human rendering.

pub mod scenario;
pub mod svg;
pub mod sweep;

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::advisor::{advise, AdvisorError, Recommendation};
use crate::attacker::{optimize_attack, played_attacker_payoff, regime_analysis, AttackPlan, AttackerError, AttackerParameters, RegimeAnalysis};
use crate::equilibrium::{classify_region, played_equilibrium, EquilibriumError, Played, RegionLabel};
use crate::game::{pressured_bimatrix, AttackLevels, GameParameters, Player};
use crate::scalar::Scalar;

pub use scenario::{Scenario, ScenarioError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    /// The request hits a non-generic game or objective.
    #[error("{0}")]
    Degenerate(String),
    #[error(transparent)]
    Advisor(#[from] AdvisorError),
}

impl From<AttackerError> for ReportError {
    fn from(e: AttackerError) -> Self {
        match e {
            AttackerError::DegenerateObjective(_) | AttackerError::Equilibrium(EquilibriumError::DegenerateGame(_)) => {
                ReportError::Degenerate(e.to_string())
            }
            AttackerError::Game(g) => ReportError::Scenario(g.into()),
            other => ReportError::Scenario(other.into()),
        }
    }
}

impl From<EquilibriumError> for ReportError {
    fn from(e: EquilibriumError) -> Self {
        match e {
            EquilibriumError::Game(g) => ReportError::Scenario(g.into()),
            other => ReportError::Degenerate(other.to_string()),
        }
    }
}

/// Machine and human renderings.
pub trait Render: Serialize + DeserializeOwned {
    fn human(&self) -> String;

    fn machine(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    fn from_machine(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn pair(a: &Scalar, b: &Scalar) -> String {
    format!("({a}, {b})")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumEntry {
    pub equilibrium: Played,
    pub p1_payoff: Scalar,
    pub p2_payoff: Scalar,
}

fn describe(played: &Played) -> String {
    match played {
        Played::Pure(p) => p.to_string(),
        Played::Mixed(m) => format!("mixed (P1 allies w.p. {}, P2 allies w.p. {})", m.p1_ally, m.p2_ally),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub game: GameParameters,
    pub attack: AttackLevels,
    pub attacker: Option<AttackerParameters>,
    pub region: RegionLabel,
    pub equilibria: Vec<EquilibriumEntry>,
    pub degenerate: bool,
    pub multiple: bool,
    pub played: Option<Played>,
    pub attacker_payoff: Option<Scalar>,
}

/// Region, equilibria, selection and attacker payoff at the scenario's
/// attack levels. Boundary points are refused.
pub fn analyze(scenario: &Scenario) -> Result<AnalysisReport, ReportError> {
    let attack = scenario.require_attack()?.clone();
    let game = &scenario.game;
    let region = classify_region(game, &attack);
    if region == RegionLabel::Boundary {
        return Err(ReportError::Degenerate(EquilibriumError::DegenerateGame(attack).to_string()));
    }
    let matrix = pressured_bimatrix(game, &attack).map_err(ScenarioError::from)?;
    let played = played_equilibrium(game, &attack)?;
    let mut equilibria: Vec<EquilibriumEntry> = played
        .set
        .pure
        .iter()
        .map(|&p| {
            let (a, b) = matrix.pair(p);
            EquilibriumEntry { equilibrium: Played::Pure(p), p1_payoff: a.clone(), p2_payoff: b.clone() }
        })
        .collect();
    if let Some(mixed) = &played.set.mixed {
        equilibria.push(EquilibriumEntry {
            equilibrium: Played::Mixed(mixed.clone()),
            p1_payoff: mixed.expected_payoff(&matrix, Player::One),
            p2_payoff: mixed.expected_payoff(&matrix, Player::Two),
        });
    }
    let attacker_payoff = match &scenario.attacker {
        Some(ap) => match played_attacker_payoff(ap, game, &attack) {
            Ok((_, value)) => Some(value),
            Err(AttackerError::DegenerateObjective(_)) => None,
            Err(other) => return Err(other.into()),
        },
        None => None,
    };
    Ok(AnalysisReport {
        game: game.clone(),
        attack,
        attacker: scenario.attacker.clone(),
        region,
        equilibria,
        degenerate: played.set.degenerate,
        multiple: played.multiple,
        played: played.selection,
        attacker_payoff,
    })
}

fn game_line(g: &GameParameters) -> String {
    format!("game: l={} v={} x={} f={} c={} y={}", g.l, g.v, g.x, g.f, g.c, g.y)
}

fn attacker_line(ap: &AttackerParameters) -> String {
    format!("attacker: sigma={} eps_alliance={} eps_infight={}", ap.sigma, ap.eps_alliance, ap.eps_infight)
}

impl Render for AnalysisReport {
    fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", game_line(&self.game));
        let _ = writeln!(s, "attack: q1={} q2={}", self.attack.q1, self.attack.q2);
        if let Some(ap) = &self.attacker {
            let _ = writeln!(s, "{}", attacker_line(ap));
        }
        let _ = writeln!(s, "region: {}", self.region);
        let _ = writeln!(s, "equilibria:");
        for e in &self.equilibria {
            let _ = writeln!(s, "  {} payoffs {}", describe(&e.equilibrium), pair(&e.p1_payoff, &e.p2_payoff));
        }
        match &self.played {
            Some(p) => {
                let _ = writeln!(s, "played: {}", describe(p));
            }
            None => {
                let _ = writeln!(s, "played: none selected (no Pareto-dominant equilibrium)");
            }
        }
        if self.attacker.is_some() {
            match &self.attacker_payoff {
                Some(v) => {
                    let _ = writeln!(s, "attacker payoff: {v}");
                }
                None => {
                    let _ = writeln!(s, "attacker payoff: undefined (no pure equilibrium selected)");
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReport {
    pub game: GameParameters,
    pub attacker: AttackerParameters,
    pub plan: AttackPlan,
}

pub fn attack(scenario: &Scenario, delta: Option<&Scalar>) -> Result<AttackReport, ReportError> {
    let ap = scenario.require_attacker()?.clone();
    let delta = match delta {
        Some(d) => {
            scenario::check_delta(d)?;
            d.clone()
        }
        None => scenario.backoff_delta(),
    };
    let plan = optimize_attack(&scenario.game, &ap, &delta)?;
    Ok(AttackReport { game: scenario.game.clone(), attacker: ap, plan })
}

impl Render for AttackReport {
    fn human(&self) -> String {
        let p = &self.plan;
        let mut s = String::new();
        let _ = writeln!(s, "{}", game_line(&self.game));
        let _ = writeln!(s, "{}", attacker_line(&self.attacker));
        let _ = writeln!(s, "regions:");
        for o in &p.region_optima {
            let points: Vec<String> = o.argmax_points.iter().map(ToString::to_string).collect();
            let status = if o.attained_in_played_region { "attained" } else { "supremum" };
            let _ = writeln!(s, "  {} max {} at {} ({status})", o.region, o.value, points.join(" and "));
        }
        let _ = writeln!(s, "regime: {}", p.regime);
        let _ = writeln!(s, "induced profile: {}", p.induced_profile);
        if p.attained {
            let at = p.optimum_point.as_ref().map(ToString::to_string).unwrap_or_default();
            let _ = writeln!(s, "optimum: {} at {at} (attained)", p.supremum_value);
        } else {
            let points: Vec<String> = p.optimal_points.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "supremum: {} near {} (not attained)", p.supremum_value, points.join(" and "));
            if let Some(b) = &p.backoff_point {
                let _ = writeln!(s, "backoff: {b} with delta {} earns {}", p.backoff_delta, p.backoff_value);
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdviceReport {
    pub game: GameParameters,
    pub attack: AttackLevels,
    pub recommendation: Recommendation,
}

pub fn advice(scenario: &Scenario, focal: Player, margin: Option<&Scalar>) -> Result<AdviceReport, ReportError> {
    let attack = scenario.require_attack()?.clone();
    let margin = match margin {
        Some(m) => {
            scenario::check_margin(m)?;
            m.clone()
        }
        None => scenario.margin(),
    };
    let recommendation = advise(&scenario.game, &attack, focal, &margin)?;
    Ok(AdviceReport { game: scenario.game.clone(), attack, recommendation })
}

impl Render for AdviceReport {
    fn human(&self) -> String {
        let r = &self.recommendation;
        let mut s = String::new();
        let _ = writeln!(s, "{}", game_line(&self.game));
        let _ = writeln!(s, "attack: q1={} q2={}", self.attack.q1, self.attack.q2);
        let focal = match r.focal_player {
            Player::One => 1,
            Player::Two => 2,
        };
        let _ = writeln!(s, "focal player: {focal}");
        let _ = writeln!(s, "thresholds: t_low={} t_high={}", r.thresholds.t_low, r.thresholds.t_high);
        if !r.thresholds.ordered {
            let _ = writeln!(s, "warning: t_low >= t_high, the commitment band is empty");
        }
        let _ = writeln!(s, "recommendation: {}", r.kind);
        if let Some(i) = &r.target_interval {
            let _ = writeln!(s, "target q{focal}: {i} (margin {})", r.margin);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub game: GameParameters,
    pub eps_alliance: Scalar,
    pub eps_infight: Scalar,
    pub analysis: RegimeAnalysis,
}

pub fn regimes(scenario: &Scenario) -> Result<RegimeReport, ReportError> {
    let ap = scenario.require_attacker()?;
    let analysis = regime_analysis(&scenario.game, &ap.eps_alliance, &ap.eps_infight);
    Ok(RegimeReport {
        game: scenario.game.clone(),
        eps_alliance: ap.eps_alliance.clone(),
        eps_infight: ap.eps_infight.clone(),
        analysis,
    })
}

impl Render for RegimeReport {
    fn human(&self) -> String {
        let a = &self.analysis;
        let mut s = String::new();
        let _ = writeln!(s, "{}", game_line(&self.game));
        let _ = writeln!(s, "eps_alliance={} eps_infight={}", self.eps_alliance, self.eps_infight);
        let _ = writeln!(s, "regimes in d = l - sigma:");
        for (i, regime) in a.regimes.iter().enumerate() {
            let lo = if i == 0 { "-inf".to_string() } else { a.breakpoints[i - 1].to_string() };
            let hi = a.breakpoints.get(i).map_or("+inf".to_string(), ToString::to_string);
            let _ = writeln!(s, "  ({lo}, {hi}): {regime}");
        }
        s
    }
}
