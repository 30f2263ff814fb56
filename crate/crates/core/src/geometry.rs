//! Exact planar helpers for line arrangements in the `(q1, q2)` square.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::game::AttackLevels;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub q1: Scalar,
    pub q2: Scalar,
}

impl Point {
    pub fn new(q1: Scalar, q2: Scalar) -> Self {
        Point { q1, q2 }
    }

    pub fn in_unit_square(&self) -> bool {
        self.q1.in_unit_interval() && self.q2.in_unit_interval()
    }

    pub fn offset(&self, dir: &Direction, step: &Scalar) -> Point {
        Point { q1: &self.q1 + &(step * &dir.d1), q2: &self.q2 + &(step * &dir.d2) }
    }

    /// The corresponding attack levels, if inside the unit square.
    pub fn to_attack(&self) -> Option<AttackLevels> {
        AttackLevels::new(self.q1.clone(), self.q2.clone()).ok()
    }
}

impl From<&AttackLevels> for Point {
    fn from(a: &AttackLevels) -> Self {
        Point { q1: a.q1.clone(), q2: a.q2.clone() }
    }
}

/// The line `a·q1 + b·q2 = r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub a: Scalar,
    pub b: Scalar,
    pub r: Scalar,
}

impl Line {
    pub fn new(a: Scalar, b: Scalar, r: Scalar) -> Self {
        assert!(!(a.is_zero() && b.is_zero()), "degenerate line");
        Line { a, b, r }
    }

    pub fn vertical(q1: Scalar) -> Self {
        Line::new(Scalar::one(), Scalar::zero(), q1)
    }

    pub fn horizontal(q2: Scalar) -> Self {
        Line::new(Scalar::zero(), Scalar::one(), q2)
    }

    /// `a·q1 + b·q2 - r`.
    pub fn eval(&self, p: &Point) -> Scalar {
        &(&(&self.a * &p.q1) + &(&self.b * &p.q2)) - &self.r
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// Scaled so the first nonzero coefficient is one.
    pub fn normalized(&self) -> Line {
        let lead = if self.a.is_zero() { &self.b } else { &self.a };
        Line { a: &self.a / lead, b: &self.b / lead, r: &self.r / lead }
    }

    pub fn same_as(&self, other: &Line) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn intersection(&self, other: &Line) -> Option<Point> {
        let det = &(&self.a * &other.b) - &(&self.b * &other.a);
        if det.is_zero() {
            return None;
        }
        let q1 = &(&(&self.r * &other.b) - &(&self.b * &other.r)) / &det;
        let q2 = &(&(&self.a * &other.r) - &(&self.r * &other.a)) / &det;
        Some(Point { q1, q2 })
    }

    /// Both directions along the line, max-norm one.
    pub fn directions(&self) -> [Direction; 2] {
        let d = Direction::new(self.b.clone(), -&self.a);
        [d.clone(), d.reversed()]
    }

    /// Unit (max-norm) normal pointing to the side where `eval > 0`.
    pub fn normal(&self) -> Direction {
        Direction::new(self.a.clone(), self.b.clone())
    }

    fn l1_norm(&self) -> Scalar {
        &self.a.abs() + &self.b.abs()
    }
}

/// A nonzero direction scaled to max-norm one, so `p + t·d` moves each
/// coordinate by at most `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Direction {
    pub d1: Scalar,
    pub d2: Scalar,
}

impl Direction {
    pub fn new(d1: Scalar, d2: Scalar) -> Self {
        let scale = d1.abs().max(d2.abs());
        assert!(!scale.is_zero(), "zero direction");
        Direction { d1: &d1 / &scale, d2: &d2 / &scale }
    }

    pub fn reversed(&self) -> Self {
        Direction { d1: -&self.d1, d2: -&self.d2 }
    }

    fn half_plane(&self) -> u8 {
        // 0 for angles in [0, pi), 1 for [pi, 2pi)
        if self.d2.is_positive() || (self.d2.is_zero() && self.d1.is_positive()) {
            0
        } else {
            1
        }
    }

    fn cross(&self, other: &Direction) -> Scalar {
        &(&self.d1 * &other.d2) - &(&self.d2 * &other.d1)
    }

    /// Counter-clockwise angular order starting at the positive q1 axis.
    pub fn angle_cmp(&self, other: &Direction) -> Ordering {
        self.half_plane()
            .cmp(&other.half_plane())
            .then_with(|| Scalar::zero().cmp(&self.cross(other)))
    }

    /// Direction strictly inside the counter-clockwise sector from `self`
    /// to `next` (angle in `(0, 2pi)`).
    pub fn bisect_towards(&self, next: &Direction) -> Direction {
        let cross = self.cross(next);
        if cross.is_positive() {
            Direction::new(&self.d1 + &next.d1, &self.d2 + &next.d2)
        } else {
            // reflex or straight sector: the left normal of `self` lies inside
            let left = Direction::new(-&self.d2, self.d1.clone());
            if cross.is_zero() {
                left
            } else {
                // reflex: go opposite to the (short-side) bisector
                Direction::new(-(&self.d1 + &next.d1), -(&self.d2 + &next.d2))
            }
        }
    }
}

/// Largest step that keeps `p + t·d` (`|d|∞ <= 1`) on the same strict side
/// of every line not passing through `p`; half of the exact bound.
pub fn safe_step<'a>(p: &Point, lines: impl IntoIterator<Item = &'a Line>) -> Scalar {
    let mut step = Scalar::new(1, 2);
    for line in lines {
        let value = line.eval(p).abs();
        if value.is_zero() {
            continue;
        }
        let bound = &value / &(Scalar::int(2) * line.l1_norm());
        step = step.min(bound);
    }
    step
}

/// Removes coincident lines, keeping first occurrences.
pub fn dedup_lines(lines: Vec<Line>) -> Vec<Line> {
    let mut out: Vec<Line> = Vec::with_capacity(lines.len());
    for line in lines {
        if !out.iter().any(|l| l.same_as(&line)) {
            out.push(line);
        }
    }
    out
}

/// The four sides of the unit square.
pub fn unit_square_sides() -> Vec<Line> {
    vec![
        Line::vertical(Scalar::zero()),
        Line::vertical(Scalar::one()),
        Line::horizontal(Scalar::zero()),
        Line::horizontal(Scalar::one()),
    ]
}

/// Pairwise intersections of `lines` that fall in the closed unit square,
/// sorted and without duplicates.
pub fn vertices_in_unit_square(lines: &[Line]) -> Vec<Point> {
    let mut points: Vec<Point> = lines
        .iter()
        .enumerate()
        .flat_map(|(i, a)| lines[i + 1..].iter().filter_map(move |b| a.intersection(b)))
        .filter(Point::in_unit_square)
        .collect();
    points.sort();
    points.dedup();
    points
}

/// Points probing every face of the arrangement incident to `vertex`: the
/// vertex itself, one point on each incident edge and one inside each
/// incident sector. Points outside the unit square are dropped. Each probe
/// carries the direction it was taken in (`None` for the vertex).
pub fn local_probes(vertex: &Point, lines: &[Line]) -> Vec<(Option<Direction>, Point)> {
    let incident: Vec<&Line> = lines.iter().filter(|l| l.contains(vertex)).collect();
    let step = safe_step(vertex, lines.iter());
    let mut dirs: Vec<Direction> = incident.iter().flat_map(|l| l.directions()).collect();
    dirs.sort_by(|a, b| a.angle_cmp(b));
    dirs.dedup_by(|a, b| a.angle_cmp(b) == Ordering::Equal);

    let mut probes = vec![(None, vertex.clone())];
    let n = dirs.len();
    for i in 0..n {
        probes.push((Some(dirs[i].clone()), vertex.offset(&dirs[i], &step)));
        if n > 1 {
            let inner = dirs[i].bisect_towards(&dirs[(i + 1) % n]);
            probes.push((Some(inner.clone()), vertex.offset(&inner, &step)));
        } else {
            let rev = dirs[i].reversed();
            probes.push((Some(rev.clone()), vertex.offset(&rev, &step)));
        }
    }
    probes.retain(|(_, p)| p.in_unit_square());
    probes
}
