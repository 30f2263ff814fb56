mod common;

use alliance_core::equilibrium::region_diagram_with;
use alliance_core::report::scenario::Scenario;
use alliance_core::report::svg::{payoff_annotations, render_region_svg};
use alliance_core::report::sweep::{export_sweep_csv, export_sweep_csv_with, HEADER};
use alliance_core::report::{analyze, AnalysisReport, Render};
use alliance_core::{region_diagram, AttackerParameters, Execution, GameParameters, Scalar};
use common::{attack, params};
use proptest::prelude::*;

#[test]
fn sweep_regions_match_diagram_cells() {
    for l in [8, 5] {
        let g = GameParameters::worked_example(l);
        for n in [2, 7, 40, 101] {
            let d = region_diagram(&g, n);
            let csv = export_sweep_csv(&g, None, n);
            let mut lines = csv.lines();
            assert_eq!(lines.next(), Some(HEADER));
            let rows: Vec<&str> = lines.collect();
            assert_eq!(rows.len(), n * n);
            for (k, row) in rows.iter().enumerate() {
                let region = row.split(',').nth(2).unwrap();
                assert_eq!(region, d.label_at(k % n, k / n).as_str(), "n={n} row {k}: {row}");
            }
        }
    }
}

#[test]
fn outputs_are_deterministic_across_execution_modes() {
    let g = GameParameters::worked_example(8);
    let ap = AttackerParameters::new(Scalar::int(3), Scalar::one(), Scalar::one()).unwrap();
    let seq = region_diagram_with(&g, 61, Execution::Sequential);
    let par = region_diagram_with(&g, 61, Execution::Parallel);
    assert_eq!(seq, par);
    let notes = payoff_annotations(&g, &ap);
    assert_eq!(render_region_svg(&seq, Some(&notes)), render_region_svg(&par, Some(&notes)));
    assert_eq!(
        export_sweep_csv_with(&g, Some(&ap), 33, Execution::Sequential),
        export_sweep_csv_with(&g, Some(&ap), 33, Execution::Parallel)
    );
}

#[test]
fn csv_fractions_reparse_exactly() {
    let g = GameParameters::worked_example(5);
    let ap = AttackerParameters::new(Scalar::int(3), Scalar::one(), Scalar::one()).unwrap();
    for row in export_sweep_csv(&g, Some(&ap), 9).lines().skip(1) {
        for field in row.split(',').filter(|f| !f.is_empty() && f.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-')) {
            let value: Scalar = field.parse().unwrap();
            assert_eq!(value.to_string(), field);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn analysis_round_trips(g in params(), a in attack()) {
        let scenario = Scenario {
            game: g,
            attack: Some(a),
            attacker: Some(AttackerParameters::new(Scalar::int(1), Scalar::one(), Scalar::int(2)).unwrap()),
            options: Default::default(),
        };
        let reparsed = Scenario::parse(&scenario.to_toml()).unwrap();
        prop_assert_eq!(&reparsed, &scenario);
        if let Ok(report) = analyze(&scenario) {
            let text = report.machine();
            prop_assert_eq!(AnalysisReport::from_machine(&text).unwrap(), report.clone());
            prop_assert_eq!(analyze(&reparsed).unwrap().machine(), text);
        }
    }
}
