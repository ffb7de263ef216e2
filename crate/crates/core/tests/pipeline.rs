//! End to end behavior of the preprocessing, phase 1 and driver stages.

use num_traits::Signed;
use shadow_simplex::delta::{combinations, delta_matrix, delta_of_rows_f64};
use shadow_simplex::driver::{find_start, reduce_dimension, solve, BitsPolicy, Randomness, ReductionStack, SolveOutcome, SolverConfig};
use shadow_simplex::harness::{agrees_with_oracle, derive_seed, generate_random_integer, generate_tu_instance, TuKind};
use shadow_simplex::lp_model::{normalize, parse_lp, to_lp_string, LinearProgram};
use shadow_simplex::num::{frac, int};
use shadow_simplex::oracle::{brute_force_optimum, OracleOutcome};
use shadow_simplex::phase1::Phase1Result;

#[test]
fn text_format_round_trips_generated_programs() {
    for seed in 0..20 {
        let lp = generate_random_integer(6, 3, 3, seed).unwrap();
        assert_eq!(parse_lp(&to_lp_string(&lp)).unwrap(), lp);
        let tu = generate_tu_instance(TuKind::Interval, 6, 3, seed).unwrap();
        assert_eq!(parse_lp(&to_lp_string(&tu)).unwrap(), tu);
    }
}

#[test]
fn phase1_round_trip_reaches_a_vertex_and_the_oracle_optimum() {
    let cfg = SolverConfig::default();
    let mut feasible = 0;
    for t in 0..60 {
        let lp = generate_random_integer(7, 3, 3, derive_seed(&[11, t])).unwrap();
        if lp.rank() < lp.num_vars() {
            continue;
        }
        let oracle = brute_force_optimum(&lp).unwrap();
        match find_start(&lp, &cfg).unwrap().0 {
            Phase1Result::Feasible(v) => {
                feasible += 1;
                v.verify(&lp).unwrap();
                assert_ne!(oracle, OracleOutcome::Infeasible, "trial {t}");
            }
            Phase1Result::Infeasible { value } => {
                assert!(value.is_positive());
                assert_eq!(oracle, OracleOutcome::Infeasible, "trial {t}");
            }
        }
        let out = solve(&lp, &cfg).unwrap();
        assert!(agrees_with_oracle(&lp, &out).unwrap(), "trial {t}: {out:?}");
    }
    assert!(feasible > 5);
}

#[test]
fn rank_deficient_programs() {
    let cfg = SolverConfig::default();
    // max x1 s.t. x1 <= 1 in three variables: bounded along x1 only
    let lp = LinearProgram::from_integers(&[vec![1, 0, 0]], &[1], &[1, 0, 0]).unwrap();
    match solve(&lp, &cfg).unwrap() {
        SolveOutcome::Optimal { value, solution, .. } => {
            assert_eq!(value, int(1));
            assert!(lp.is_feasible(&solution.point));
        }
        other => panic!("{other:?}"),
    }
    // the objective has a component outside the row space
    let lp = LinearProgram::from_integers(&[vec![1, 0, 0]], &[1], &[1, 1, 0]).unwrap();
    match solve(&lp, &cfg).unwrap() {
        SolveOutcome::Unbounded { ray, .. } => assert_eq!(ray, vec![int(0), int(1), int(0)]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn fractional_data_is_solved_exactly() {
    let lp = parse_lp("maximize 1/3 1/2\nst\n1/2 1 <= 3/4\n1 0 <= 1/5\n-1 0 <= 0\n0 -1 <= 0\n").unwrap();
    match solve(&lp, &SolverConfig::default()).unwrap() {
        SolveOutcome::Optimal { value, solution, .. } => {
            assert_eq!(solution.point, vec![frac(1, 5), frac(13, 20)]);
            assert_eq!(value, frac(1, 15) + frac(13, 40));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn few_random_bits_still_give_certified_answers() {
    for t in 0..30 {
        let lp = generate_random_integer(6, 3, 3, derive_seed(&[12, t])).unwrap();
        let cfg = SolverConfig { seed: t, randomness: Randomness::Dyadic(BitsPolicy::Fixed(6)), ..SolverConfig::default() };
        let out = solve(&lp, &cfg).unwrap();
        assert!(agrees_with_oracle(&lp, &out).unwrap(), "trial {t}: {out:?}");
    }
}

#[test]
fn explicit_reduction_does_not_shrink_delta() {
    for t in 0..40 {
        let lp = generate_random_integer(7, 3, 3, derive_seed(&[13, t])).unwrap();
        let Ok(report) = delta_matrix(lp.rows()) else { continue };
        let norm = normalize(&lp).unwrap();
        let (reduced, _) = reduce_dimension(&norm, report.witness_rows[0], &ReductionStack::new(3)).unwrap();
        // the reduced rows come from floating point rotations, so δ is taken
        // over the bases that are numerically independent
        let rows: Vec<Vec<f64>> = (0..reduced.num_rows()).map(|i| reduced.float_row(i)).collect();
        let reduced_delta = combinations(rows.len(), 2)
            .iter()
            .filter_map(|s| delta_of_rows_f64(&[rows[s[0]].clone(), rows[s[1]].clone()]).ok())
            .fold(f64::INFINITY, f64::min);
        assert!(reduced_delta >= report.delta - 1e-9, "trial {t}: {reduced_delta} < {}", report.delta);
    }
}
