//! Grid sweeps exported as CSV.

use std::fmt::Write as _;

use crate::attacker::{attacker_payoff, AttackerParameters};
use crate::equilibrium::{classify_region, played_equilibrium, region_boundaries, sample_point, Played, RegionLabel};
use crate::exec::Execution;
use crate::game::{pressured_bimatrix, AttackLevels, GameParameters, Player};
use crate::scalar::Scalar;

pub const HEADER: &str = "q1,q2,region,p1_payoff,p2_payoff,attacker_payoff";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub q1: Scalar,
    pub q2: Scalar,
    pub region: RegionLabel,
    pub payoffs: Option<(Scalar, Scalar)>,
    pub attacker_payoff: Option<Scalar>,
}

fn opt(s: Option<&Scalar>) -> String {
    s.map(ToString::to_string).unwrap_or_default()
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.q1,
            self.q2,
            self.region,
            opt(self.payoffs.as_ref().map(|p| &p.0)),
            opt(self.payoffs.as_ref().map(|p| &p.1)),
            opt(self.attacker_payoff.as_ref())
        )
    }
}

fn sweep_row(params: &GameParameters, ap: Option<&AttackerParameters>, attack: AttackLevels) -> SweepRow {
    let region = classify_region(params, &attack);
    let (payoffs, attacker) = match played_equilibrium(params, &attack) {
        Ok(played) => {
            let m = pressured_bimatrix(params, &attack).expect("validated inputs");
            match played.selection {
                Some(Played::Pure(p)) => {
                    let (a, b) = m.pair(p);
                    (Some((a.clone(), b.clone())), ap.map(|ap| attacker_payoff(ap, params, &attack, p)))
                }
                Some(Played::Mixed(mixed)) => {
                    let pay = (mixed.expected_payoff(&m, Player::One), mixed.expected_payoff(&m, Player::Two));
                    (Some(pay), None)
                }
                None => (None, None),
            }
        }
        Err(_) => (None, None),
    };
    SweepRow { q1: attack.q1, q2: attack.q2, region, payoffs, attacker_payoff: attacker }
}

/// One row per cell at the same sample points as the region diagram, q2
/// outer and q1 inner.
pub fn sweep_rows(params: &GameParameters, ap: Option<&AttackerParameters>, resolution: usize, exec: Execution) -> Vec<SweepRow> {
    assert!(resolution >= 2, "resolution must be at least 2");
    let bounds = region_boundaries(params);
    exec.map_range(resolution * resolution, |k| {
        let p = sample_point(&bounds, k % resolution, k / resolution, resolution);
        sweep_row(params, ap, AttackLevels { q1: p.q1, q2: p.q2 })
    })
}

pub fn export_sweep_csv(params: &GameParameters, ap: Option<&AttackerParameters>, resolution: usize) -> String {
    export_sweep_csv_with(params, ap, resolution, Execution::default())
}

pub fn export_sweep_csv_with(params: &GameParameters, ap: Option<&AttackerParameters>, resolution: usize, exec: Execution) -> String {
    let mut out = String::with_capacity(64 * resolution * resolution);
    let _ = writeln!(out, "{HEADER}");
    for row in sweep_rows(params, ap, resolution, exec) {
        let _ = writeln!(out, "{}", row.to_csv());
    }
    out
}
