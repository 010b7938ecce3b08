mod common;

use rasum_core::optimizer::{check, complete_assignment, lp_format, solve_greedy, solve_ilp, IlpModel, SolveStatus};

#[test]
fn branch_and_bound_matches_enumeration() {
    let mut rng = common::seeded(20_240_601);
    let (mut branched, mut nonempty) = (0, 0);
    for case in 0..200 {
        let inst = common::random_instance(&mut rng, 15);
        let model = IlpModel::from_instance(&inst);
        let sol = solve_ilp(&model, None).unwrap();
        let (oracle, _) = common::brute_force(&inst);
        assert_eq!(sol.status, SolveStatus::Optimal, "case {case}");
        assert!((sol.objective_value - oracle).abs() < 1e-9, "case {case}: {} vs {oracle}", sol.objective_value);
        assert!((model.objective_value(&sol.assignment) - sol.objective_value).abs() < 1e-12);
        common::solution_invariants(&model, &sol).unwrap_or_else(|e| panic!("case {case}: {e}"));
        branched += (sol.nodes_explored > 1) as usize;
        nonempty += (oracle > 0.0) as usize;
    }
    println!("{branched} of 200 branched, {nonempty} non-empty optima");
    assert!(branched >= 40 && nonempty >= 120);
}

#[test]
fn oracle_selection_is_feasible_in_the_model() {
    let mut rng = common::seeded(7);
    for _ in 0..100 {
        let inst = common::random_instance(&mut rng, 12);
        let model = IlpModel::from_instance(&inst);
        let (value, selected) = common::brute_force(&inst);
        // The lowest-index full form is not always the shortest, so only
        // check selections the completion can realize.
        let full = complete_assignment(&model, &selected);
        if check::is_feasible(&model, &full) {
            assert!((model.objective_value(&full) - value).abs() < 1e-12);
        }
    }
}

#[test]
fn larger_budget_never_lowers_the_optimum() {
    let mut rng = common::seeded(99);
    for _ in 0..40 {
        let mut inst = common::random_instance(&mut rng, 12);
        let mut last = f64::NEG_INFINITY;
        for budget in [0, 5, 10, 20, 40] {
            inst.budget = budget;
            let v = solve_ilp(&IlpModel::from_instance(&inst), None).unwrap().objective_value;
            assert!(v >= last - 1e-12);
            last = v;
        }
    }
}

#[test]
fn greedy_is_feasible_and_never_beats_the_optimum() {
    let mut rng = common::seeded(3);
    for _ in 0..50 {
        let inst = common::random_instance(&mut rng, 15);
        let model = IlpModel::from_instance(&inst);
        let g = solve_greedy(&model);
        assert!(check::is_feasible(&model, &g.assignment));
        assert!(g.objective_value <= solve_ilp(&model, None).unwrap().objective_value + 1e-12);
    }
}

#[test]
fn lp_dump_lists_every_row_and_variable() {
    let mut rng = common::seeded(11);
    let inst = common::random_instance(&mut rng, 10);
    let model = IlpModel::from_instance(&inst);
    let text = lp_format::to_lp_string(&model);
    let rows = text.lines().filter(|l| l.starts_with(" c")).count();
    assert_eq!(rows, model.constraints.len());
    assert!(text.lines().skip_while(|l| *l != "Binary").count() == model.num_vars() + 2);
}
