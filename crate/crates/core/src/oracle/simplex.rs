//! Dense two-phase simplex over exact rationals with Bland's rule.

use num_traits::{Signed, Zero};

use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpResult {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over columns marked `allowed`. Returns false if
    /// unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.cols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    rc -= &cost[b] * &row[j];
                }
                rc.is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &cost[b] * &row[self.cols])
            .sum()
    }
}

/// Maximizes `objective . x` subject to `constraints` and `x >= 0`.
pub(crate) fn maximize(objective: &[Rational], constraints: &[Constraint]) -> LpResult {
    let n = objective.len();
    let m = constraints.len();
    let slacks = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let cols = n + slacks + m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial = vec![false; cols];
    let mut slack_col = n;
    for (i, con) in constraints.iter().enumerate() {
        assert_eq!(con.coeffs.len(), n);
        let flip = con.rhs.is_negative();
        let sign = if flip { int(-1) } else { int(1) };
        let mut row = vec![int(0); cols + 1];
        for (x, c) in row.iter_mut().zip(&con.coeffs) {
            *x = &sign * c;
        }
        row[cols] = &sign * &con.rhs;
        let relation = match (con.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        match relation {
            Relation::Le => {
                row[slack_col] = int(1);
                basis.push(slack_col);
            }
            Relation::Ge | Relation::Eq => {
                if relation == Relation::Ge {
                    row[slack_col] = int(-1);
                }
                let a = n + slacks + i;
                row[a] = int(1);
                artificial[a] = true;
                basis.push(a);
            }
        }
        if con.relation != Relation::Eq {
            slack_col += 1;
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, cols };

    let phase_one: Vec<Rational> = (0..cols)
        .map(|j| if artificial[j] { int(-1) } else { int(0) })
        .collect();
    let all = vec![true; cols];
    t.optimize(&phase_one, &all);
    if t.value(&phase_one).is_negative() {
        return LpResult::Infeasible;
    }
    // drive zero-valued artificials out of the basis where possible
    for r in 0..m {
        if !artificial[t.basis[r]] {
            continue;
        }
        if let Some(c) = (0..cols).find(|&j| !artificial[j] && !t.rows[r][j].is_zero()) {
            t.pivot(r, c);
        }
    }

    let mut phase_two = vec![int(0); cols];
    phase_two[..n].clone_from_slice(objective);
    let allowed: Vec<bool> = artificial.iter().map(|a| !a).collect();
    if !t.optimize(&phase_two, &allowed) {
        return LpResult::Unbounded;
    }
    let mut x = vec![int(0); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < n {
            x[b] = row[cols].clone();
        }
    }
    LpResult::Optimal {
        value: t.value(&phase_two),
        x,
    }
}
