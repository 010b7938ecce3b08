//! Depth-first branch-and-bound with best-bound backtracking.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::simplex::{self, Lp, LpOutcome, LpRow};
use super::{check, IlpModel, IlpSolution, OptimizerError, Sense, SolveStatus};

const INT_TOL: f64 = 1e-6;
const IMPROVE_TOL: f64 = 1e-9;

struct Node {
    fixed: Vec<Option<bool>>,
    bound: f64,
    seq: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then_with(|| other.seq.cmp(&self.seq))
    }
}

enum Relaxation {
    Infeasible,
    Solved { x: Vec<f64>, bound: f64 },
}

/// LP relaxation with fixed variables substituted out.
fn relax(model: &IlpModel, fixed: &[Option<bool>]) -> Result<Relaxation, OptimizerError> {
    let free: Vec<usize> = (0..model.num_vars()).filter(|&j| fixed[j].is_none()).collect();
    let mut column = vec![usize::MAX; model.num_vars()];
    for (c, &j) in free.iter().enumerate() {
        column[j] = c;
    }
    let fixed_value = |j: usize| if fixed[j] == Some(true) { 1.0 } else { 0.0 };

    let mut rows = Vec::new();
    for c in &model.constraints {
        let mut rhs = c.rhs;
        let mut terms = Vec::new();
        for &(j, a) in &c.terms {
            if fixed[j].is_some() {
                rhs -= a * fixed_value(j);
            } else {
                terms.push((column[j], a));
            }
        }
        if terms.is_empty() {
            let ok = match c.sense {
                Sense::Le => 0.0 <= rhs + 1e-9,
                Sense::Ge => 0.0 >= rhs - 1e-9,
                Sense::Eq => rhs.abs() <= 1e-9,
            };
            if !ok {
                return Ok(Relaxation::Infeasible);
            }
            continue;
        }
        rows.push(LpRow { terms, sense: c.sense, rhs });
    }
    let offset: f64 = (0..model.num_vars()).filter(|&j| fixed[j] == Some(true)).map(|j| model.objective[j]).sum();
    let lp = Lp { objective: free.iter().map(|&j| model.objective[j]).collect(), upper: vec![1.0; free.len()], rows };
    Ok(match simplex::solve(&lp)? {
        LpOutcome::Infeasible => Relaxation::Infeasible,
        LpOutcome::Unbounded => unreachable!("binary relaxation is bounded"),
        LpOutcome::Optimal { x: xf, value } => {
            let mut x: Vec<f64> = (0..model.num_vars()).map(fixed_value).collect();
            for (c, &j) in free.iter().enumerate() {
                x[j] = xf[c];
            }
            Relaxation::Solved { x, bound: value + offset }
        }
    })
}

/// Variables pinned by single-variable equality rows.
fn presolve_fixings(model: &IlpModel) -> Vec<Option<bool>> {
    let mut fixed = vec![None; model.num_vars()];
    for c in &model.constraints {
        if let (Sense::Eq, [(j, a)]) = (c.sense, c.terms.as_slice()) {
            let v = c.rhs / a;
            if v.abs() < 1e-12 {
                fixed[*j] = Some(false);
            } else if (v - 1.0).abs() < 1e-12 {
                fixed[*j] = Some(true);
            }
        }
    }
    fixed
}

fn most_fractional(x: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &v) in x.iter().enumerate() {
        let frac = v.min(1.0 - v);
        if frac > INT_TOL && best.is_none_or(|(_, f)| frac > f + 1e-12) {
            best = Some((j, frac));
        }
    }
    best.map(|(j, _)| j)
}

/// Solves the program exactly, or stops at the time limit with the best
/// assignment found so far and the remaining bound gap.
pub fn solve_ilp(model: &IlpModel, time_limit: Option<std::time::Duration>) -> Result<IlpSolution, OptimizerError> {
    let start = Instant::now();
    let n = model.num_vars();
    let zero = vec![false; n];
    let mut incumbent: Option<(Vec<bool>, f64)> = check::is_feasible(model, &zero).then_some((zero, 0.0));
    let mut nodes_explored = 0;
    let mut seq = 0;
    let mut open: BinaryHeap<Node> = BinaryHeap::new();
    let mut dive = Some(Node { fixed: presolve_fixings(model), bound: f64::INFINITY, seq });

    let threshold = |inc: &Option<(Vec<bool>, f64)>| inc.as_ref().map_or(f64::NEG_INFINITY, |(_, v)| *v + IMPROVE_TOL);

    loop {
        let node = match dive.take() {
            Some(node) => node,
            None => match open.pop() {
                Some(node) => node,
                None => break,
            },
        };
        if node.bound <= threshold(&incumbent) {
            continue;
        }
        if nodes_explored > 0 && time_limit.is_some_and(|limit| start.elapsed() >= limit) {
            open.push(node);
            break;
        }
        nodes_explored += 1;
        let (x, bound) = match relax(model, &node.fixed)? {
            Relaxation::Infeasible => continue,
            Relaxation::Solved { x, bound } => (x, bound),
        };
        if bound <= threshold(&incumbent) {
            continue;
        }
        match most_fractional(&x) {
            None => {
                let assignment: Vec<bool> = x.iter().map(|&v| v > 0.5).collect();
                if check::is_feasible(model, &assignment) {
                    let value = model.objective_value(&assignment);
                    if value > threshold(&incumbent) {
                        incumbent = Some((assignment, value));
                    }
                }
            }
            Some(j) => {
                let mut down = node.fixed.clone();
                down[j] = Some(false);
                let mut up = node.fixed;
                up[j] = Some(true);
                seq += 1;
                open.push(Node { fixed: down, bound, seq });
                seq += 1;
                dive = Some(Node { fixed: up, bound, seq });
            }
        }
    }

    let best_open = open
        .iter()
        .map(|n| n.bound)
        .filter(|&b| b > threshold(&incumbent))
        .fold(f64::NEG_INFINITY, f64::max);
    let Some((assignment, objective_value)) = incumbent else {
        return Ok(IlpSolution { assignment: vec![false; n], objective_value: 0.0, status: SolveStatus::Infeasible, nodes_explored });
    };
    let status = if best_open > f64::NEG_INFINITY {
        SolveStatus::FeasibleWithGap(best_open - objective_value)
    } else {
        SolveStatus::Optimal
    };
    Ok(IlpSolution { assignment, objective_value, status, nodes_explored })
}
