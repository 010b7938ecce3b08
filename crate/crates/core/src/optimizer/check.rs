//! Constraint evaluation on a 0-1 assignment, independent of the solver.

use super::{Family, IlpModel};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub row: usize,
    pub family: Family,
    pub lhs: f64,
    pub rhs: f64,
}

pub fn violations(model: &IlpModel, assignment: &[bool]) -> Vec<Violation> {
    assert_eq!(assignment.len(), model.num_vars(), "assignment length");
    let x: Vec<f64> = assignment.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    model
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.holds(&x, TOL))
        .map(|(row, c)| Violation { row, family: c.family, lhs: c.lhs(&x), rhs: c.rhs })
        .collect()
}

pub fn is_feasible(model: &IlpModel, assignment: &[bool]) -> bool {
    violations(model, assignment).is_empty()
}
