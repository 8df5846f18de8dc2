//! Exact two-phase rational simplex with Bland's anticycling rule.
//!
//! Solves max cᵀx subject to Ax = b, x ≥ 0 entirely over ℚ. Problem sizes
//! in this crate are small (at most a few hundred variables), so a dense
//! tableau with Bland pivoting is both simple and fast enough; exactness is
//! the point — the optimum is the certified bound.

use crate::exact::Rational;
use num::{One, Signed, Zero};

/// An equality-form linear program: maximize objective·x with
/// constraints·x = rhs and x ≥ 0.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// m rows × (n_total) columns of constraint coefficients.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Basic variable per row.
    basis: Vec<usize>,
    /// Reduced objective row (c_j − z_j): positive entry ⇒ improving column.
    reduced: Vec<Rational>,
    /// Objective value of the current basic solution.
    value: Rational,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rational::one() / self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x *= &inv;
        }
        self.rhs[row] *= &inv;
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.rows[i].len() {
                let delta = &self.rows[row][j] * &factor;
                self.rows[i][j] -= delta;
            }
            let delta = &self.rhs[row] * &factor;
            self.rhs[i] -= delta;
        }
        let factor = self.reduced[col].clone();
        if !factor.is_zero() {
            for j in 0..self.reduced.len() {
                let delta = &self.rows[row][j] * &factor;
                self.reduced[j] -= delta;
            }
            let delta = &self.rhs[row] * &factor;
            self.value += delta;
        }
        self.basis[row] = col;
    }

    /// Runs Bland-rule simplex iterations until optimal or unbounded.
    /// `allowed` restricts the entering columns (used to freeze artificials
    /// out of phase 2). Returns false on unboundedness.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // Bland: entering column = smallest index with positive reduced cost.
            let Some(col) =
                (0..self.reduced.len()).find(|&j| allowed(j) && self.reduced[j].is_positive())
            else {
                return true;
            };
            // Ratio test; Bland tie-break on smallest basic variable index.
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][col];
                let better = match &leaving {
                    None => true,
                    Some((best_row, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best_row])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

/// Solves the LP by the two-phase method. Phase 1 minimizes the sum of
/// artificial variables to find a basic feasible point; phase 2 maximizes
/// the real objective over the original columns.
pub fn solve(lp: &StandardLp) -> LpOutcome {
    let m = lp.constraints.len();
    let n = lp.objective.len();
    for row in &lp.constraints {
        assert_eq!(row.len(), n, "constraint row length mismatch");
    }
    assert_eq!(lp.rhs.len(), m, "rhs length mismatch");

    if m == 0 {
        // No constraints: any positive objective coefficient is a ray.
        return if lp.objective.iter().any(|c| c.is_positive()) {
            LpOutcome::Unbounded
        } else {
            LpOutcome::Optimal {
                value: Rational::zero(),
                solution: vec![Rational::zero(); n],
            }
        };
    }

    // Assemble rows with nonnegative rhs and one artificial per row.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = lp.rhs[i].is_negative();
        let mut row: Vec<Rational> = lp.constraints[i]
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        rows.push(row);
        rhs.push(if flip {
            -lp.rhs[i].clone()
        } else {
            lp.rhs[i].clone()
        });
    }

    // Phase 1: maximize −Σ artificials (optimum 0 ⇔ feasible). The reduced
    // row starts as the negated column sums after pricing out the basis.
    let total = n + m;
    let mut reduced = vec![Rational::zero(); total];
    let mut value = Rational::zero();
    for i in 0..m {
        for (j, red) in reduced.iter_mut().enumerate().take(n) {
            *red += &rows[i][j];
        }
        value -= &rhs[i];
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis: (n..total).collect(),
        reduced,
        value,
    };
    if !tab.optimize(&|_| true) {
        unreachable!("phase-1 objective is bounded above by 0");
    }
    if tab.value.is_negative() {
        return LpOutcome::Infeasible;
    }
    // Drive any artificial still basic (at value 0) out of the basis, or
    // drop its row if it is redundant.
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, col);
            }
        }
    }
    let keep: Vec<usize> = (0..m).filter(|&i| tab.basis[i] < n).collect();
    tab.rows = keep.iter().map(|&i| tab.rows[i].clone()).collect();
    tab.rhs = keep.iter().map(|&i| tab.rhs[i].clone()).collect();
    tab.basis = keep.iter().map(|&i| tab.basis[i]).collect();
    for row in tab.rows.iter_mut() {
        row.truncate(n);
    }

    // Phase 2: price out the real objective over the current basis.
    tab.reduced = lp.objective.clone();
    tab.value = Rational::zero();
    for i in 0..tab.rows.len() {
        let c_b = lp.objective[tab.basis[i]].clone();
        if c_b.is_zero() {
            continue;
        }
        for j in 0..n {
            let delta = &tab.rows[i][j] * &c_b;
            tab.reduced[j] -= delta;
        }
        let delta = &tab.rhs[i] * &c_b;
        tab.value += delta;
    }
    if !tab.optimize(&|_| true) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        solution[b] = tab.rhs[i].clone();
    }
    LpOutcome::Optimal {
        value: tab.value,
        solution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn lp(
        constraints: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        objective: Vec<Rational>,
    ) -> StandardLp {
        StandardLp {
            constraints,
            rhs,
            objective,
        }
    }

    #[test]
    fn simplex_on_a_budget_constraint() {
        // max 2x + 3y  s.t.  x + y + s = 1  ->  optimum 3 at y = 1.
        let out = solve(&lp(
            vec![vec![int(1), int(1), int(1)]],
            vec![int(1)],
            vec![int(2), int(3), int(0)],
        ));
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, int(3));
                assert_eq!(solution[1], int(1));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn simplex_with_two_constraints() {
        // max x + y  s.t.  x + 2y + s1 = 4, 3x + y + s2 = 6.
        // Optimum at the intersection x = 8/5, y = 6/5: value 14/5.
        let out = solve(&lp(
            vec![
                vec![int(1), int(2), int(1), int(0)],
                vec![int(3), int(1), int(0), int(1)],
            ],
            vec![int(4), int(6)],
            vec![int(1), int(1), int(0), int(0)],
        ));
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(solution[0], rat(8, 5));
                assert_eq!(solution[1], rat(6, 5));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = -1 with x, y >= 0 is infeasible.
        let out = solve(&lp(
            vec![vec![int(1), int(1)]],
            vec![int(-1)],
            vec![int(1), int(0)],
        ));
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // max x  s.t.  x - y = 0: the ray x = y -> infinity.
        let out = solve(&lp(
            vec![vec![int(1), int(-1)]],
            vec![int(0)],
            vec![int(1), int(0)],
        ));
        assert_eq!(out, LpOutcome::Unbounded);
        // And the degenerate no-constraint cases.
        assert_eq!(
            solve(&lp(vec![], vec![], vec![int(1)])),
            LpOutcome::Unbounded
        );
        assert_eq!(
            solve(&lp(vec![], vec![], vec![int(-1)])),
            LpOutcome::Optimal {
                value: int(0),
                solution: vec![int(0)]
            }
        );
    }

    #[test]
    fn redundant_rows_are_harmless() {
        // Same constraint twice; optimum unchanged.
        let out = solve(&lp(
            vec![
                vec![int(1), int(1), int(1), int(0)],
                vec![int(2), int(2), int(2), int(0)],
            ],
            vec![int(1), int(2)],
            vec![int(5), int(4), int(0), int(0)],
        ));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(5)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn exact_rational_optimum() {
        // max (1/6)a - (1/4)b  s.t.  a + b + s = 1  ->  a = 1, value 1/6.
        let out = solve(&lp(
            vec![vec![int(1), int(1), int(1)]],
            vec![int(1)],
            vec![rat(1, 6), rat(-1, 4), int(0)],
        ));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 6)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
