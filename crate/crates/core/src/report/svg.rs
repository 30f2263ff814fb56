//! SVG rendering of region diagrams.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::attacker::{payoff_coefficients, AttackerParameters};
use crate::equilibrium::{cell_center, RegionDiagram, RegionLabel};
use crate::game::{ActionProfile, GameParameters};
use crate::scalar::Scalar;

const SIZE: f64 = 1000.0;
const LEFT: f64 = 100.0;
const SPAN: f64 = 800.0;

pub fn label_color(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::AA => "#8fbce6",
        RegionLabel::FF => "#f4a6a6",
        RegionLabel::AF => "#f8cf8c",
        RegionLabel::FA => "#c9e3a5",
        RegionLabel::Multi => "#c8b3e0",
        RegionLabel::MultiAsym => "#e6c8a0",
        RegionLabel::Boundary => "#bbbbbb",
    }
}

fn x_of(q1: f64) -> f64 {
    LEFT + SPAN * q1
}

fn y_of(q2: f64) -> f64 {
    LEFT + SPAN * (1.0 - q2)
}

fn coefficient(c: &Scalar, var: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let mag = c.abs();
    let body = if mag == Scalar::one() {
        String::new()
    } else if mag.is_integer() {
        mag.to_string()
    } else {
        format!("({mag})")
    };
    format!("{sign}{body}{var}")
}

/// `a·q1 + b·q2` in compact form, e.g. `4q1+4q2`, `10q2`, `-3q1+7q2`.
pub fn linear_expression(a: &Scalar, b: &Scalar) -> String {
    let mut out = String::new();
    if !a.is_zero() {
        out.push_str(&coefficient(a, "q1", true));
    }
    if !b.is_zero() {
        out.push_str(&coefficient(b, "q2", out.is_empty()));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Attacker payoff per region as a linear expression in the attack levels.
/// Regions without a single pure played profile get no annotation.
pub fn payoff_annotations(params: &GameParameters, ap: &AttackerParameters) -> BTreeMap<RegionLabel, String> {
    let mut out = BTreeMap::new();
    for (label, profile) in [
        (RegionLabel::AA, ActionProfile::AA),
        (RegionLabel::FF, ActionProfile::FF),
        (RegionLabel::AF, ActionProfile::AF),
        (RegionLabel::FA, ActionProfile::FA),
        (RegionLabel::Multi, ActionProfile::AA),
    ] {
        let (a, b) = payoff_coefficients(ap, params, profile);
        out.insert(label, linear_expression(&a, &b));
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_region_svg(diagram: &RegionDiagram, annotations: Option<&BTreeMap<RegionLabel, String>>) -> String {
    let n = diagram.resolution;
    let cell = SPAN / n as f64;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE:.0} {SIZE:.0}" width="{SIZE:.0}" height="{SIZE:.0}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE:.0}" height="{SIZE:.0}" fill="white"/>"#);

    let _ = writeln!(s, r#"<g id="cells" shape-rendering="crispEdges">"#);
    for (row, labels) in diagram.cells.iter().enumerate() {
        for (col, label) in labels.iter().enumerate() {
            let x = LEFT + cell * col as f64;
            let y = LEFT + SPAN - cell * (row + 1) as f64;
            let _ = writeln!(
                s,
                r#"<rect class="cell" data-label="{}" x="{x:.3}" y="{y:.3}" width="{cell:.3}" height="{cell:.3}" fill="{}"/>"#,
                label,
                label_color(*label)
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="boundaries" stroke="black" stroke-width="3">"#);
    for seg in &diagram.boundary_curves {
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            x_of(seg.from.q1.to_f64()),
            y_of(seg.from.q2.to_f64()),
            x_of(seg.to.q1.to_f64()),
            y_of(seg.to.q2.to_f64())
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="axes" stroke="black" stroke-width="2" fill="none">"#);
    let _ = writeln!(s, r#"<rect x="{LEFT:.0}" y="{LEFT:.0}" width="{SPAN:.0}" height="{SPAN:.0}"/>"#);
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="ticks" font-family="sans-serif" font-size="24" fill="black">"#);
    for k in 0..=5 {
        let t = f64::from(k) / 5.0;
        let label = format!("{t:.1}");
        let (x, y) = (x_of(t), y_of(t));
        let _ = writeln!(s, r#"<line x1="{x:.3}" y1="900" x2="{x:.3}" y2="912" stroke="black" stroke-width="2"/>"#);
        let _ = writeln!(s, r#"<text x="{x:.3}" y="940" text-anchor="middle">{label}</text>"#);
        let _ = writeln!(s, r#"<line x1="88" y1="{y:.3}" x2="100" y2="{y:.3}" stroke="black" stroke-width="2"/>"#);
        let _ = writeln!(s, r#"<text x="80" y="{:.3}" text-anchor="end">{label}</text>"#, y + 8.0);
    }
    let _ = writeln!(s, r#"<text x="500" y="980" text-anchor="middle" font-size="30">q1</text>"#);
    let _ = writeln!(s, r#"<text x="30" y="500" text-anchor="middle" font-size="30">q2</text>"#);
    let _ = writeln!(s, "</g>");

    let centers: Vec<f64> = (0..n).map(|i| cell_center(i, n).to_f64()).collect();
    let mut sums: BTreeMap<RegionLabel, (f64, f64, usize)> = BTreeMap::new();
    for (row, labels) in diagram.cells.iter().enumerate() {
        for (col, label) in labels.iter().enumerate() {
            let e = sums.entry(*label).or_insert((0.0, 0.0, 0));
            e.0 += centers[col];
            e.1 += centers[row];
            e.2 += 1;
        }
    }
    let _ = writeln!(s, r#"<g id="labels" font-family="sans-serif" font-size="28" text-anchor="middle" fill="black">"#);
    for (label, (sx, sy, count)) in &sums {
        if *label == RegionLabel::Boundary {
            continue;
        }
        let (cx, cy) = (x_of(sx / *count as f64), y_of(sy / *count as f64));
        let _ = writeln!(s, r#"<text class="region" x="{cx:.3}" y="{cy:.3}">{label}</text>"#);
        if let Some(text) = annotations.and_then(|a| a.get(label)) {
            let _ = writeln!(s, r#"<text class="annotation" x="{cx:.3}" y="{:.3}" font-size="24">{}</text>"#, cy + 30.0, escape(text));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
