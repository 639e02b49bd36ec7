//! Exact linear programming: two-phase simplex with Bland's rule over `Q`.

use num_traits::{Signed, Zero};

use crate::rational::{one, zero, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Q, Vec<Q>)> {
        match self {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

struct Tableau {
    /// rows of `[coefficients | rhs]`
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = j;
    }

    fn reduced_cost(&self, cost: &[Q], j: usize) -> Q {
        let mut r = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                r -= &cost[b] * &self.rows[i][j];
            }
        }
        r
    }

    /// One Bland step maximizing `cost` over columns `< allowed`.
    fn step(&mut self, cost: &[Q], allowed: usize) -> Step {
        let entering = (0..allowed)
            .filter(|j| !self.basis.contains(j))
            .find(|&j| self.reduced_cost(cost, j).is_positive());
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][j];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(i) / a;
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        match leave {
            None => Step::Unbounded,
            Some((i, _)) => {
                self.pivot(i, j);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            match self.step(cost, allowed) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Q> {
        let mut x = vec![zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Phase 1 on `Ax = b, x ≥ 0`; returns a tableau whose basis uses only
/// original columns and whose redundant rows are removed.
fn phase_one(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Tableau> {
    let m = a.len();
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "constraint row has wrong length");
        let flip = rhs.is_negative();
        let mut t: Vec<Q> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        t.extend((0..m).map(|k| if k == i { one() } else { zero() }));
        t.push(if flip { -rhs } else { rhs.clone() });
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..cols).collect(),
        cols,
    };
    let mut cost = vec![zero(); cols];
    for c in cost.iter_mut().skip(n) {
        *c = -one();
    }
    tab.run(&cost, cols);
    let infeasibility: Q = (0..m)
        .filter(|&i| tab.basis[i] >= n)
        .map(|i| tab.rhs(i).clone())
        .sum();
    if infeasibility.is_positive() {
        return None;
    }
    // drive artificial variables out of the basis
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in tab.rows.iter_mut() {
        row.drain(n..cols);
    }
    tab.cols = n;
    Some(tab)
}

/// Maximizes `c·x` subject to `Ax = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let n = c.len();
    let Some(mut tab) = phase_one(a, b, n) else {
        return LpOutcome::Infeasible;
    };
    if !tab.run(c, n) {
        return LpOutcome::Unbounded;
    }
    let x = tab.solution(n);
    let value = c.iter().zip(&x).map(|(c, x)| c * x).sum();
    LpOutcome::Optimal { value, x }
}

/// Some point of `{x ≥ 0 : Ax = b}`.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Vec<Q>> {
    phase_one(a, b, n).map(|t| t.solution(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_program() {
        // max x + y, x + 2y + s = 4, 3x + y + t = 6
        let a = vec![q(&[1, 2, 1, 0]), q(&[3, 1, 0, 1])];
        let b = q(&[4, 6]);
        let (v, x) = maximize(&a, &b, &q(&[1, 1, 0, 0])).optimal().unwrap();
        assert_eq!(v, frac(14, 5));
        assert_eq!(&x[..2], &[frac(8, 5), frac(6, 5)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![q(&[1, 1]), q(&[1, 1])];
        assert_eq!(maximize(&a, &q(&[1, 2]), &q(&[0, 0])), LpOutcome::Infeasible);
        let a = vec![q(&[1, -1])];
        assert_eq!(maximize(&a, &q(&[1]), &q(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_and_negative_rows() {
        let a = vec![q(&[1, 1, 0]), q(&[2, 2, 0]), q(&[-1, 0, -1])];
        let b = q(&[1, 2, -1]);
        let (v, x) = maximize(&a, &b, &q(&[0, 1, 1])).optimal().unwrap();
        assert_eq!(v, int(2));
        assert_eq!(x, q(&[0, 1, 1]));
        assert!(feasible_point(&a, &b, 3).is_some());
    }
}
