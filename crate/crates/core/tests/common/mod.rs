#![allow(dead_code)]

use alliance_core::{q, validate_parameters, AttackLevels, GameParameters, Scalar};
use proptest::prelude::*;

pub fn frac() -> impl Strategy<Value = Scalar> {
    (-40i64..=80, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonneg() -> impl Strategy<Value = Scalar> {
    (0i64..=40, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Valid parameter sets, built so that v exceeds both x and f.
pub fn params() -> impl Strategy<Value = GameParameters> {
    (frac(), nonneg(), nonneg(), nonneg(), nonneg(), 1i64..=40, 1i64..=4).prop_map(|(l, x, f, c, y, extra, d)| {
        let v = &x.clone().max(f.clone()) + &q(extra, d);
        validate_parameters(GameParameters { l, v, x, f, c, y }).expect("valid by construction")
    })
}

pub fn unit() -> impl Strategy<Value = Scalar> {
    (0i64..=120).prop_map(|n| q(n, 120))
}

pub fn attack() -> impl Strategy<Value = AttackLevels> {
    (unit(), unit()).prop_map(|(q1, q2)| AttackLevels::new(q1, q2).unwrap())
}
