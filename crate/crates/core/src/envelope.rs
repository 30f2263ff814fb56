//! Upper envelopes of affine functions of one variable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// `slope·d + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub slope: Scalar,
    pub intercept: Scalar,
}

impl Affine {
    pub fn new(slope: Scalar, intercept: Scalar) -> Self {
        Affine { slope, intercept }
    }

    pub fn eval(&self, d: &Scalar) -> Scalar {
        &(&self.slope * d) + &self.intercept
    }

    /// Where `self` and `other` cross, if not parallel.
    pub fn crossing(&self, other: &Affine) -> Option<Scalar> {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            None
        } else {
            Some(&(&other.intercept - &self.intercept) / &ds)
        }
    }

    pub fn root(&self) -> Option<Scalar> {
        self.crossing(&Affine::new(Scalar::zero(), Scalar::zero()))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·d + {}", self.slope, self.intercept)
    }
}

/// A continuous piecewise-affine function: `pieces[i]` applies between
/// `breakpoints[i-1]` and `breakpoints[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseAffine {
    pub breakpoints: Vec<Scalar>,
    pub pieces: Vec<Affine>,
}

impl PiecewiseAffine {
    pub fn eval(&self, d: &Scalar) -> Scalar {
        let idx = self.breakpoints.partition_point(|b| b < d);
        self.pieces[idx].eval(d)
    }
}

/// Pointwise maximum of `lines` over the whole real line. `None` when
/// `lines` is empty.
pub fn upper_envelope(lines: &[Affine]) -> Option<PiecewiseAffine> {
    if lines.is_empty() {
        return None;
    }
    let mut sorted: Vec<&Affine> = lines.iter().collect();
    sorted.sort_by(|a, b| a.slope.cmp(&b.slope).then_with(|| b.intercept.cmp(&a.intercept)));
    sorted.dedup_by(|later, kept| later.slope == kept.slope);

    // hull of lines in increasing slope; the envelope uses them left to right
    let mut hull: Vec<&Affine> = Vec::new();
    for line in sorted {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // b is useless if `line` overtakes a no later than b does
            let ab = a.crossing(b).expect("distinct slopes");
            let al = a.crossing(line).expect("distinct slopes");
            if al <= ab {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }
    let breakpoints = hull.windows(2).map(|w| w[0].crossing(w[1]).expect("distinct slopes")).collect();
    Some(PiecewiseAffine { breakpoints, pieces: hull.into_iter().cloned().collect() })
}
