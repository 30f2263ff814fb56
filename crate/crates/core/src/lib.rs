//! Exact analysis of a two-firm alliance game under external attack pressure.
//!
//! All arithmetic is over rationals. Grid and arrangement work runs through
//! [`exec::Execution`], parallel by default with the `parallel` feature.

#![allow(clippy::result_large_err)]

pub mod advisor;
pub mod attacker;
pub mod envelope;
pub mod equilibrium;
pub mod exec;
pub mod game;
pub mod geometry;
pub mod report;
pub mod scalar;

pub use advisor::{advise, commitment_interval, thresholds, AdvisorError, Interval, Recommendation, RecommendationKind};
pub use attacker::{
    attacker_payoff, optimize_attack, played_attacker_payoff, regime_analysis, region_optima, AttackGeometry, AttackPlan,
    AttackerError, AttackerParameters, Regime, RegimeAnalysis, RegionOptimum,
};
pub use equilibrium::{
    classify_region, equilibrium_set, mixed_equilibrium, played_equilibrium, pure_equilibria, region_boundaries,
    region_diagram, EquilibriumError, EquilibriumSet, MixedEquilibrium, Played, RegionBoundaries, RegionDiagram, RegionLabel,
};
pub use exec::Execution;
pub use game::{
    base_bimatrix, pressured_bimatrix, validate_parameters, Action, ActionProfile, AttackLevels, Bimatrix, GameError,
    GameParameters, Player,
};
pub use scalar::{q, Scalar};
