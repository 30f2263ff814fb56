//! Scenario parameters and the two payoff bimatrices.
//!
//! The base game is a symmetric prisoners' dilemma between two firms that
//! may `Ally` or `Fight`. The pressured game adds a third party attacking
//! player `i` with normalized intensity `q_i`.
//!
//! The Ally/Fight cell of the pressured matrix uses the base-consistent
//! terms: the allying player keeps `l - v - x`, the fighting player keeps
//! `l + v - x`. This is the only form from which the Fight/Fight threshold
//! `q_i <= 1 - f/v` follows; see `docs/derivation.md`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("not a prisoners' dilemma: {constraint} must hold")]
    NotPrisonersDilemma { constraint: &'static str },
    #[error("negative cost: {name} must be >= 0 (got {value})")]
    NegativeCost { name: &'static str, value: Scalar },
    #[error("attack level {name} = {value} outside [0, 1]")]
    AttackOutOfRange { name: &'static str, value: Scalar },
}

/// The six economic constants of the two-firm game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameParameters {
    /// Half the market value; the market is worth `2l`.
    pub l: Scalar,
    /// Share transferred by a successful attack between the two firms.
    pub v: Scalar,
    /// Extra running cost outside the alliance.
    pub x: Scalar,
    /// Cost of fighting.
    pub f: Scalar,
    /// Per-unit cost of being attacked by the third party.
    pub c: Scalar,
    /// Extra per-unit attack cost when not allied.
    pub y: Scalar,
}

impl GameParameters {
    /// Builds and validates.
    pub fn new(l: Scalar, v: Scalar, x: Scalar, f: Scalar, c: Scalar, y: Scalar) -> Result<Self, GameError> {
        validate_parameters(GameParameters { l, v, x, f, c, y })
    }

    /// `v=5, x=2, f=2, c=3, y=2` with the given `l`.
    pub fn worked_example(l: i64) -> Self {
        GameParameters {
            l: Scalar::int(l),
            v: Scalar::int(5),
            x: Scalar::int(2),
            f: Scalar::int(2),
            c: Scalar::int(3),
            y: Scalar::int(2),
        }
    }

    pub fn with_l(&self, l: Scalar) -> Self {
        GameParameters { l, ..self.clone() }
    }
}

/// Checks the prisoners' dilemma structure and cost signs.
pub fn validate_parameters(raw: GameParameters) -> Result<GameParameters, GameError> {
    if raw.v <= raw.x {
        return Err(GameError::NotPrisonersDilemma { constraint: "v > x" });
    }
    if raw.v <= raw.f {
        return Err(GameError::NotPrisonersDilemma { constraint: "v > f" });
    }
    for (name, value) in [("x", &raw.x), ("f", &raw.f), ("c", &raw.c), ("y", &raw.y)] {
        if value.is_negative() {
            return Err(GameError::NegativeCost { name, value: value.clone() });
        }
    }
    Ok(raw)
}

/// Pressure applied by the third party to each firm, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackLevels {
    pub q1: Scalar,
    pub q2: Scalar,
}

impl AttackLevels {
    pub fn new(q1: Scalar, q2: Scalar) -> Result<Self, GameError> {
        AttackLevels { q1, q2 }.validated()
    }

    pub fn zero() -> Self {
        AttackLevels { q1: Scalar::zero(), q2: Scalar::zero() }
    }

    pub fn validated(self) -> Result<Self, GameError> {
        if !self.q1.in_unit_interval() {
            return Err(GameError::AttackOutOfRange { name: "q1", value: self.q1 });
        }
        if !self.q2.in_unit_interval() {
            return Err(GameError::AttackOutOfRange { name: "q2", value: self.q2 });
        }
        Ok(self)
    }

    pub fn swapped(&self) -> Self {
        AttackLevels { q1: self.q2.clone(), q2: self.q1.clone() }
    }

    /// Pressure on `player`.
    pub fn on(&self, player: Player) -> &Scalar {
        match player {
            Player::One => &self.q1,
            Player::Two => &self.q2,
        }
    }
}

impl fmt::Display for AttackLevels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q1, self.q2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Action {
    Ally,
    Fight,
}

impl Action {
    pub fn other(self) -> Action {
        match self {
            Action::Ally => Action::Fight,
            Action::Fight => Action::Ally,
        }
    }
}

/// A pure action profile; the first letter is player 1's action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ActionProfile {
    AA,
    AF,
    FA,
    FF,
}

impl ActionProfile {
    pub const ALL: [ActionProfile; 4] = [ActionProfile::AA, ActionProfile::AF, ActionProfile::FA, ActionProfile::FF];

    pub fn from_actions(p1: Action, p2: Action) -> Self {
        match (p1, p2) {
            (Action::Ally, Action::Ally) => ActionProfile::AA,
            (Action::Ally, Action::Fight) => ActionProfile::AF,
            (Action::Fight, Action::Ally) => ActionProfile::FA,
            (Action::Fight, Action::Fight) => ActionProfile::FF,
        }
    }

    pub fn action(self, player: Player) -> Action {
        let (a1, a2) = match self {
            ActionProfile::AA => (Action::Ally, Action::Ally),
            ActionProfile::AF => (Action::Ally, Action::Fight),
            ActionProfile::FA => (Action::Fight, Action::Ally),
            ActionProfile::FF => (Action::Fight, Action::Fight),
        };
        match player {
            Player::One => a1,
            Player::Two => a2,
        }
    }

    /// The profile reached when `player` switches action.
    pub fn deviate(self, player: Player) -> Self {
        let mut a1 = self.action(Player::One);
        let mut a2 = self.action(Player::Two);
        match player {
            Player::One => a1 = a1.other(),
            Player::Two => a2 = a2.other(),
        }
        ActionProfile::from_actions(a1, a2)
    }

    /// Same profile with the players' roles exchanged.
    pub fn mirrored(self) -> Self {
        ActionProfile::from_actions(self.action(Player::Two), self.action(Player::One))
    }

    fn index(self) -> usize {
        match self {
            ActionProfile::AA => 0,
            ActionProfile::AF => 1,
            ActionProfile::FA => 2,
            ActionProfile::FF => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ActionProfile::AA => "AA",
            ActionProfile::AF => "AF",
            ActionProfile::FA => "FA",
            ActionProfile::FF => "FF",
        }
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Payoff pair for each of the four profiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bimatrix {
    cells: [[Scalar; 2]; 4],
}

impl Bimatrix {
    /// Cells in `AA, AF, FA, FF` order, each `[player 1, player 2]`.
    pub fn from_cells(cells: [[Scalar; 2]; 4]) -> Self {
        Bimatrix { cells }
    }

    pub fn payoff(&self, profile: ActionProfile, player: Player) -> &Scalar {
        &self.cells[profile.index()][player.index()]
    }

    pub fn pair(&self, profile: ActionProfile) -> (&Scalar, &Scalar) {
        let cell = &self.cells[profile.index()];
        (&cell[0], &cell[1])
    }

    /// The game seen with player labels exchanged.
    pub fn with_players_swapped(&self) -> Self {
        let mut cells: [[Scalar; 2]; 4] = Default::default();
        for profile in ActionProfile::ALL {
            let src = &self.cells[profile.mirrored().index()];
            cells[profile.index()] = [src[1].clone(), src[0].clone()];
        }
        Bimatrix { cells }
    }
}

/// The unpressured prisoners' dilemma.
pub fn base_bimatrix(params: &GameParameters) -> Bimatrix {
    let GameParameters { l, v, x, f, .. } = params;
    let ally_vs_fight = l - v - x;
    let fight_vs_ally = l + v - x;
    let both_fight = l - x - f;
    Bimatrix::from_cells([
        [l.clone(), l.clone()],
        [ally_vs_fight.clone(), fight_vs_ally.clone()],
        [fight_vs_ally, ally_vs_fight],
        [both_fight.clone(), both_fight],
    ])
}

/// The game under attack levels `attack`.
pub fn pressured_bimatrix(params: &GameParameters, attack: &AttackLevels) -> Result<Bimatrix, GameError> {
    let attack = attack.clone().validated()?;
    Ok(pressured_unchecked(params, &attack))
}

pub(crate) fn pressured_unchecked(params: &GameParameters, attack: &AttackLevels) -> Bimatrix {
    let GameParameters { l, v, x, f, c, y } = params;
    let AttackLevels { q1, q2 } = attack;
    let half_c = c / Scalar::int(2);
    let shared = &half_c * (q1 + q2);
    // per-unit losses outside the alliance
    let ally_loss = &(l - v) + &(c + y);
    let fight_loss = &(l + v) + &(c + y);
    let both_loss = l + &(c + y);
    let base_ally = l - v - x;
    let base_fight = l + v - x;
    let base_both = l - x - f;
    Bimatrix::from_cells([
        [l - &(l * q1) - &shared, l - &(l * q2) - &shared],
        [&base_ally - &(q1 * &ally_loss), &base_fight - &(q2 * &fight_loss)],
        [&base_fight - &(q1 * &fight_loss), &base_ally - &(q2 * &ally_loss)],
        [&base_both - &(q1 * &both_loss), &base_both - &(q2 * &both_loss)],
    ])
}
