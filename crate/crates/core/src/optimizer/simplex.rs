//! Dense two-phase primal simplex for `max cᵀx` subject to linear rows and
//! `0 ≤ x ≤ u`. Upper bounds are handled by bound flipping rather than
//! extra rows. Pricing is Dantzig's rule until a run of degenerate pivots,
//! after which Bland's rule is used for the rest of the solve.

use super::{OptimizerError, Sense};

const FEAS_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-10;
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone)]
pub(crate) struct LpRow {
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct Lp {
    pub objective: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<LpRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    m: usize,
    cols: usize,
    tab: Vec<f64>,
    /// Reduced costs of the phase-1 and phase-2 objectives.
    d1: Vec<f64>,
    d2: Vec<f64>,
    beta: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    at_upper: Vec<bool>,
    upper: Vec<f64>,
    artificial_from: usize,
    bland: bool,
    degenerate_run: usize,
    iterations: usize,
    max_iterations: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn row(&self, i: usize) -> &[f64] {
        &self.tab[i * self.cols..(i + 1) * self.cols]
    }

    fn price(&self, phase1: bool) -> Option<usize> {
        let d = if phase1 { &self.d1 } else { &self.d2 };
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.artificial_from {
            if self.in_basis[j] || self.upper[j] <= 0.0 {
                continue;
            }
            let gain = if self.at_upper[j] { -d[j] } else { d[j] };
            if gain <= COST_TOL {
                continue;
            }
            if self.bland {
                return Some(j);
            }
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((j, gain));
            }
        }
        best.map(|(j, _)| j)
    }

    fn step(&mut self, phase1: bool) -> Result<Step, OptimizerError> {
        self.iterations += 1;
        if self.iterations > self.max_iterations {
            return Err(OptimizerError::IterationLimit(self.max_iterations));
        }
        let Some(q) = self.price(phase1) else {
            return Ok(Step::Optimal);
        };
        let dir = if self.at_upper[q] { -1.0 } else { 1.0 };

        let mut t_best = self.upper[q];
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..self.m {
            let a = dir * self.tab[i * self.cols + q];
            let lim = if a > PIVOT_TOL {
                self.beta[i] / a
            } else if a < -PIVOT_TOL {
                let ub = self.upper[self.basis[i]];
                if !ub.is_finite() {
                    continue;
                }
                (ub - self.beta[i]) / -a
            } else {
                continue;
            }
            .max(0.0);
            let better = match leave {
                _ if lim < t_best - 1e-12 => true,
                Some((r, ar)) if lim <= t_best + 1e-12 => {
                    if self.bland {
                        self.basis[i] < self.basis[r]
                    } else {
                        a.abs() > ar.abs()
                    }
                }
                _ => false,
            };
            if better {
                t_best = lim;
                leave = Some((i, a));
            }
        }
        if !t_best.is_finite() {
            return Ok(Step::Unbounded);
        }

        if t_best <= 1e-12 {
            self.degenerate_run += 1;
            if self.degenerate_run >= DEGENERATE_RUN {
                self.bland = true;
            }
        } else {
            self.degenerate_run = 0;
        }

        for i in 0..self.m {
            let a = self.tab[i * self.cols + q];
            if a != 0.0 {
                self.beta[i] -= t_best * dir * a;
            }
        }
        match leave {
            None => {
                self.at_upper[q] = !self.at_upper[q];
            }
            Some((r, a)) => {
                let out = self.basis[r];
                self.in_basis[out] = false;
                self.at_upper[out] = a < 0.0;
                let value = if dir > 0.0 { t_best } else { self.upper[q] - t_best };
                self.pivot(r, q);
                self.beta[r] = value;
                self.basis[r] = q;
                self.in_basis[q] = true;
                self.at_upper[q] = false;
            }
        }
        Ok(Step::Moved)
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let cols = self.cols;
        let p = self.tab[r * cols + q];
        for v in &mut self.tab[r * cols..(r + 1) * cols] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.row(r).to_vec();
        let nz: Vec<usize> = (0..cols).filter(|&j| pivot_row[j] != 0.0).collect();
        let eliminate = |row: &mut [f64]| {
            let f = row[q];
            if f == 0.0 {
                return;
            }
            for &j in &nz {
                let v = row[j] - f * pivot_row[j];
                row[j] = if v.abs() < 1e-14 { 0.0 } else { v };
            }
            row[q] = 0.0;
        };
        for i in 0..self.m {
            if i != r {
                eliminate(&mut self.tab[i * cols..(i + 1) * cols]);
            }
        }
        eliminate(&mut self.d1);
        eliminate(&mut self.d2);
    }

    fn run(&mut self, phase1: bool) -> Result<bool, OptimizerError> {
        loop {
            match self.step(phase1)? {
                Step::Optimal => return Ok(true),
                Step::Unbounded => return Ok(false),
                Step::Moved => {}
            }
        }
    }

    fn value(&self, j: usize) -> f64 {
        if self.in_basis[j] {
            0.0
        } else if self.at_upper[j] {
            self.upper[j]
        } else {
            0.0
        }
    }
}

pub(crate) fn solve(lp: &Lp) -> Result<LpOutcome, OptimizerError> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    let rows: Vec<LpRow> = lp
        .rows
        .iter()
        .map(|r| {
            if r.rhs < 0.0 {
                let sense = match r.sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                LpRow { terms: r.terms.iter().map(|&(j, a)| (j, -a)).collect(), sense, rhs: -r.rhs }
            } else {
                r.clone()
            }
        })
        .collect();
    let slacks = rows.iter().filter(|r| r.sense != Sense::Eq).count();
    let artificials = rows.iter().filter(|r| r.sense != Sense::Le).count();
    let artificial_from = n + slacks;
    let cols = artificial_from + artificials;

    let mut tab = vec![0.0; m * cols];
    let mut basis = vec![0; m];
    let mut upper = lp.upper.clone();
    upper.resize(cols, f64::INFINITY);
    let (mut next_slack, mut next_art) = (n, artificial_from);
    for (i, r) in rows.iter().enumerate() {
        let row = &mut tab[i * cols..(i + 1) * cols];
        for &(j, a) in &r.terms {
            row[j] += a;
        }
        match r.sense {
            Sense::Le => {
                row[next_slack] = 1.0;
                basis[i] = next_slack;
                next_slack += 1;
            }
            Sense::Ge => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
            Sense::Eq => {
                row[next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
        }
    }
    let mut in_basis = vec![false; cols];
    for &b in &basis {
        in_basis[b] = true;
    }
    let mut d1 = vec![0.0; cols];
    for (i, &b) in basis.iter().enumerate() {
        if b >= artificial_from {
            for (j, v) in tab[i * cols..(i + 1) * cols].iter().enumerate() {
                d1[j] += v;
            }
        }
    }
    for j in artificial_from..cols {
        d1[j] = 0.0;
    }
    let mut d2 = vec![0.0; cols];
    d2[..n].copy_from_slice(&lp.objective);

    let mut t = Tableau {
        m,
        cols,
        tab,
        d1,
        d2,
        beta: rows.iter().map(|r| r.rhs).collect(),
        basis,
        in_basis,
        at_upper: vec![false; cols],
        upper,
        artificial_from,
        bland: false,
        degenerate_run: 0,
        iterations: 0,
        max_iterations: 50 * (m + cols) + 1000,
    };

    if artificials > 0 {
        t.run(true)?;
        let infeasibility: f64 = (0..m).filter(|&i| t.basis[i] >= artificial_from).map(|i| t.beta[i]).sum();
        if infeasibility > FEAS_TOL * (1.0 + m as f64) {
            return Ok(LpOutcome::Infeasible);
        }
        for j in artificial_from..cols {
            t.upper[j] = 0.0;
        }
        t.bland = false;
        t.degenerate_run = 0;
    }
    if !t.run(false)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x: Vec<f64> = (0..n).map(|j| t.value(j)).collect();
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.beta[i].clamp(0.0, t.upper[b]);
        }
    }
    let value = x.iter().zip(&lp.objective).map(|(v, c)| v * c).sum();
    Ok(LpOutcome::Optimal { x, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(terms: &[(usize, f64)], sense: Sense, rhs: f64) -> LpRow {
        LpRow { terms: terms.to_vec(), sense, rhs }
    }

    fn optimum(lp: &Lp) -> (Vec<f64>, f64) {
        match solve(lp).unwrap() {
            LpOutcome::Optimal { x, value } => (x, value),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36.
        let lp = Lp {
            objective: vec![3.0, 5.0],
            upper: vec![f64::INFINITY; 2],
            rows: vec![row(&[(0, 1.0)], Sense::Le, 4.0), row(&[(1, 2.0)], Sense::Le, 12.0), row(&[(0, 3.0), (1, 2.0)], Sense::Le, 18.0)],
        };
        let (x, v) = optimum(&lp);
        assert!((v - 36.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn upper_bounds_and_fractional_knapsack() {
        // max 5a + 4b + 3c, 2a + 3b + 4c ≤ 4, all in [0, 1] → a = 1, b = 2/3.
        let lp = Lp {
            objective: vec![5.0, 4.0, 3.0],
            upper: vec![1.0; 3],
            rows: vec![row(&[(0, 2.0), (1, 3.0), (2, 4.0)], Sense::Le, 4.0)],
        };
        let (x, v) = optimum(&lp);
        assert!((v - (5.0 + 8.0 / 3.0)).abs() < 1e-9, "{v}");
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 2.0 / 3.0).abs() < 1e-9 && x[2].abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x − y, x + y = 1, y ≥ 0.25, x, y ≤ 1.
        let lp = Lp {
            objective: vec![1.0, -1.0],
            upper: vec![1.0; 2],
            rows: vec![row(&[(0, 1.0), (1, 1.0)], Sense::Eq, 1.0), row(&[(1, 1.0)], Sense::Ge, 0.25)],
        };
        let (x, v) = optimum(&lp);
        assert!((v - 0.5).abs() < 1e-9);
        assert!((x[1] - 0.25).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = Lp {
            objective: vec![1.0],
            upper: vec![1.0],
            rows: vec![row(&[(0, 1.0)], Sense::Ge, 2.0)],
        };
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Infeasible);
        let lp = Lp { objective: vec![1.0], upper: vec![f64::INFINITY], rows: vec![row(&[(0, -1.0)], Sense::Le, 1.0)] };
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // max −x, −x ≤ −0.5 → x = 0.5.
        let lp = Lp { objective: vec![-1.0], upper: vec![1.0], rows: vec![row(&[(0, -1.0)], Sense::Le, -0.5)] };
        let (x, _) = optimum(&lp);
        assert!((x[0] - 0.5).abs() < 1e-9);
    }
}
