//! Solver results against the exact oracle on seeded random and TU programs.

use shadow_simplex::harness::{run_experiments, ExperimentConfig, GeneratorKind, TrialRecord, TuKind};

fn failures(records: &[TrialRecord]) -> Vec<String> {
    records
        .iter()
        .filter(|r| r.oracle_agrees != Some(true))
        .map(|r| format!("{} {}", r.instance_id, r.outcome))
        .collect()
}

#[test]
fn random_integer_programs_match_the_oracle() {
    let cfg = ExperimentConfig {
        generator: GeneratorKind::RandomInteger { range: 3 },
        sizes: vec![(4, 2), (6, 3), (8, 4), (10, 5)],
        trials: 40,
        seed: 101,
        analyze: false,
        ..ExperimentConfig::default()
    };
    let records = run_experiments(&cfg).unwrap();
    let bad = failures(&records);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn tu_programs_match_the_oracle() {
    for (kind, sizes) in [
        (TuKind::Incidence, vec![(5, 3), (9, 6)]),
        (TuKind::Interval, vec![(6, 4), (10, 6)]),
        (TuKind::Network, vec![(8, 4)]),
    ] {
        let cfg = ExperimentConfig { generator: GeneratorKind::Tu(kind), sizes, trials: 15, seed: 7, ..ExperimentConfig::default() };
        let records = run_experiments(&cfg).unwrap();
        let bad = failures(&records);
        assert!(bad.is_empty(), "{kind:?}: {bad:?}");
    }
}
