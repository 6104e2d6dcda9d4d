//! Dense bounded-variable primal simplex.
//!
//! Solves `max c·x  s.t.  A x <= b,  0 <= x <= u` with `b >= 0`, so the
//! all-slack basis is feasible and no phase one is needed. Columns and rows
//! can be appended to an existing (optimal) tableau, which keeps the current
//! basis primal feasible: this is what makes path generation cheap, since a
//! new path constraint of the covering LP is a new column of its dual.
//!
//! Entering variables follow Dantzig's rule; after a run of degenerate
//! pivots the solver falls back to Bland's rule, which cannot cycle.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Consecutive degenerate pivots tolerated before switching to Bland.
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct BoundedSimplex {
    eps: f64,
    /// Tableau columns `B^-1 a_j`, one `Vec` of length `rows` per variable.
    /// Slack of row `i` is variable `slack[i]`.
    cols: Vec<Vec<f64>>,
    /// Reduced costs `c_B B^-1 a_j - c_j`.
    reduced: Vec<f64>,
    cost: Vec<f64>,
    upper: Vec<f64>,
    at_upper: Vec<bool>,
    /// Row -> basic variable.
    basis: Vec<usize>,
    /// Variable -> basic row.
    basic_row: Vec<Option<usize>>,
    /// Values of the basic variables.
    beta: Vec<f64>,
    slack: Vec<usize>,
    objective: f64,
    pivots: usize,
}

impl BoundedSimplex {
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            cols: Vec::new(),
            reduced: Vec::new(),
            cost: Vec::new(),
            upper: Vec::new(),
            at_upper: Vec::new(),
            basis: Vec::new(),
            basic_row: Vec::new(),
            beta: Vec::new(),
            slack: Vec::new(),
            objective: 0.0,
            pivots: 0,
        }
    }

    pub fn rows(&self) -> usize {
        self.basis.len()
    }

    /// Number of variables, slacks included.
    pub fn vars(&self) -> usize {
        self.cols.len()
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Appends a row `0 <= rhs` (zero on all existing columns); returns its
    /// index. The row's slack enters the basis.
    pub fn add_row(&mut self, rhs: f64) -> Result<usize> {
        if !(rhs >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "row bound {rhs} must be >= 0"
            )));
        }
        let r = self.basis.len();
        for col in &mut self.cols {
            col.push(0.0);
        }
        let s = self.cols.len();
        let mut col = vec![0.0; r + 1];
        col[r] = 1.0;
        self.cols.push(col);
        self.reduced.push(0.0);
        self.cost.push(0.0);
        self.upper.push(f64::INFINITY);
        self.at_upper.push(false);
        self.basic_row.push(Some(r));
        self.basis.push(s);
        self.beta.push(rhs);
        self.slack.push(s);
        Ok(r)
    }

    /// Appends a structural column with objective coefficient `cost`, upper
    /// bound `upper` (may be infinite) and sparse entries `(row, coef)`.
    /// The new variable starts nonbasic at zero.
    pub fn add_column(&mut self, cost: f64, upper: f64, entries: &[(usize, f64)]) -> usize {
        let m = self.rows();
        let mut col = vec![0.0; m];
        let mut reduced = -cost;
        for &(row, a) in entries {
            let s = self.slack[row];
            for (c, b) in col.iter_mut().zip(&self.cols[s]) {
                *c += a * b;
            }
            reduced += a * self.reduced[s];
        }
        self.cols.push(col);
        self.reduced.push(reduced);
        self.cost.push(cost);
        self.upper.push(upper);
        self.at_upper.push(false);
        self.basic_row.push(None);
        self.cols.len() - 1
    }

    /// Current value of variable `j`.
    pub fn value(&self, j: usize) -> f64 {
        match self.basic_row[j] {
            Some(r) => self.beta[r],
            None if self.at_upper[j] => self.upper[j],
            None => 0.0,
        }
    }

    /// Dual value of row `i` (`c_B B^-1 e_i`).
    pub fn dual(&self, row: usize) -> f64 {
        self.reduced[self.slack[row]]
    }

    fn improving(&self, j: usize) -> bool {
        if self.basic_row[j].is_some() {
            return false;
        }
        let d = self.reduced[j];
        if self.at_upper[j] {
            d > self.eps
        } else {
            d < -self.eps && self.upper[j] > 0.0
        }
    }

    fn choose_entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.vars() {
            if !self.improving(j) {
                continue;
            }
            if bland {
                return Some(j);
            }
            let score = self.reduced[j].abs();
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((j, score));
            }
        }
        best.map(|(j, _)| j)
    }

    /// Runs primal simplex to optimality from the current (feasible) basis.
    pub fn solve(&mut self, max_pivots: usize) -> Result<LpStatus> {
        let mut degenerate = 0usize;
        let mut spent = 0usize;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let Some(q) = self.choose_entering(bland) else {
                return Ok(LpStatus::Optimal);
            };
            if spent >= max_pivots {
                return Err(Error::SolverStall(format!(
                    "simplex exceeded {max_pivots} pivots"
                )));
            }
            spent += 1;
            // The entering variable increases from its lower bound or
            // decreases from its upper bound.
            let dir = if self.at_upper[q] { -1.0 } else { 1.0 };
            let (step, leave) = self.ratio_test(q, dir, bland);
            if step.is_infinite() {
                return Ok(LpStatus::Unbounded);
            }
            if step <= self.eps {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivots += 1;
            for (r, &a) in self.cols[q].iter().enumerate() {
                self.beta[r] -= a * dir * step;
            }
            self.objective -= self.reduced[q] * dir * step;
            match leave {
                None => self.at_upper[q] = !self.at_upper[q],
                Some((r, to_upper)) => {
                    let entering = if self.at_upper[q] {
                        self.upper[q] - step
                    } else {
                        step
                    };
                    let left = self.pivot(r, q);
                    self.beta[r] = entering;
                    self.at_upper[q] = false;
                    self.at_upper[left] = to_upper;
                }
            }
        }
    }

    /// Step length for entering `q` and the blocking row, if any (`None`
    /// means the entering variable flips to its other bound). The flag says
    /// whether the leaving variable exits at its upper bound.
    fn ratio_test(&self, q: usize, dir: f64, bland: bool) -> (f64, Option<(usize, bool)>) {
        let mut step = self.upper[q];
        let mut leave: Option<(usize, bool)> = None;
        let mut leave_mag = 0.0f64;
        for (r, &a) in self.cols[q].iter().enumerate() {
            let delta = a * dir;
            let var = self.basis[r];
            let (ratio, to_upper) = if delta > self.eps {
                (self.beta[r].max(0.0) / delta, false)
            } else if delta < -self.eps && self.upper[var].is_finite() {
                ((self.upper[var] - self.beta[r]).max(0.0) / -delta, true)
            } else {
                continue;
            };
            let better = if ratio < step - self.eps {
                true
            } else if ratio <= step + self.eps {
                match leave {
                    // Prefer a real pivot over a bound flip on ties.
                    None => true,
                    Some((lr, _)) if bland => var < self.basis[lr],
                    Some(_) => delta.abs() > leave_mag,
                }
            } else {
                false
            };
            if better {
                step = ratio.min(step);
                leave = Some((r, to_upper));
                leave_mag = delta.abs();
            }
        }
        (step, leave)
    }

    /// Pivots `q` into row `r`; returns the variable that left.
    fn pivot(&mut self, r: usize, q: usize) -> usize {
        let piv = self.cols[q][r];
        let pcol = core::mem::take(&mut self.cols[q]);
        let dq = self.reduced[q];
        for (j, col) in self.cols.iter_mut().enumerate() {
            if j == q {
                continue;
            }
            let a = col[r];
            if a == 0.0 {
                continue;
            }
            let f = a / piv;
            for (c, p) in col.iter_mut().zip(&pcol) {
                *c -= f * p;
            }
            col[r] = f;
            self.reduced[j] -= f * dq;
        }
        let mut unit = pcol;
        unit.iter_mut().for_each(|c| *c = 0.0);
        unit[r] = 1.0;
        self.cols[q] = unit;
        self.reduced[q] = 0.0;
        let old = self.basis[r];
        self.basic_row[old] = None;
        self.basis[r] = q;
        self.basic_row[q] = Some(r);
        old
    }
}

impl BoundedSimplex {
    /// `Σ c_j x_j` recomputed from the variable values.
    pub fn primal_objective(&self) -> f64 {
        (0..self.vars()).map(|j| self.cost[j] * self.value(j)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Builds `max c x, A x <= b, 0 <= x <= u` and solves it.
    fn solve(c: &[f64], a: &[Vec<f64>], b: &[f64], u: &[f64]) -> (LpStatus, f64, Vec<f64>) {
        let mut lp = BoundedSimplex::new(1e-9);
        for &bi in b {
            lp.add_row(bi).unwrap();
        }
        let vars: Vec<usize> = (0..c.len())
            .map(|j| {
                let entries: Vec<(usize, f64)> =
                    a.iter().enumerate().map(|(i, row)| (i, row[j])).collect();
                lp.add_column(c[j], u[j], &entries)
            })
            .collect();
        let status = lp.solve(10_000).unwrap();
        let x = vars.iter().map(|&j| lp.value(j)).collect();
        (status, lp.objective(), x)
    }

    /// Brute-force vertex enumeration: every choice of `k` tight
    /// constraints among rows and bounds, solved by Gaussian elimination.
    fn brute_force(c: &[f64], a: &[Vec<f64>], b: &[f64], u: &[f64]) -> f64 {
        let k = c.len();
        // constraints as (coefs, rhs) meaning coefs·x = rhs when tight
        let mut cons: Vec<(Vec<f64>, f64)> = a.iter().cloned().zip(b.iter().copied()).collect();
        for j in 0..k {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            cons.push((e.clone(), 0.0));
            if u[j].is_finite() {
                cons.push((e, u[j]));
            }
        }
        let feasible = |x: &[f64]| {
            x.iter()
                .zip(u)
                .all(|(&xi, &ui)| xi >= -1e-7 && xi <= ui + 1e-7)
                && a.iter().zip(b).all(|(row, &bi)| {
                    row.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-7
                })
        };
        let mut best = f64::NEG_INFINITY;
        let total = cons.len();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            // solve the k x k system
            let mut m: Vec<Vec<f64>> = idx
                .iter()
                .map(|&i| {
                    let mut r = cons[i].0.clone();
                    r.push(cons[i].1);
                    r
                })
                .collect();
            let mut ok = true;
            for col in 0..k {
                let p = (col..k)
                    .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
                    .unwrap();
                if m[p][col].abs() < 1e-10 {
                    ok = false;
                    break;
                }
                m.swap(col, p);
                for r in 0..k {
                    if r != col {
                        let f = m[r][col] / m[col][col];
                        for cc in col..=k {
                            m[r][cc] -= f * m[col][cc];
                        }
                    }
                }
            }
            if ok {
                let x: Vec<f64> = (0..k).map(|i| m[i][k] / m[i][i]).collect();
                if feasible(&x) {
                    let v: f64 = c.iter().zip(&x).map(|(p, q)| p * q).sum();
                    best = best.max(v);
                }
            }
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] < total - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn small_textbook_problem() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let (status, obj, x) = solve(
            &[3.0, 2.0],
            &[vec![1.0, 1.0], vec![1.0, 3.0]],
            &[4.0, 6.0],
            &[3.0, f64::INFINITY],
        );
        assert_eq!(status, LpStatus::Optimal);
        assert!((obj - 11.0).abs() < 1e-9);
        assert!((x[0] - 3.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_unbounded() {
        let (status, _, _) = solve(&[1.0, 1.0], &[vec![1.0, -1.0]], &[1.0], &[f64::INFINITY; 2]);
        assert_eq!(status, LpStatus::Unbounded);
    }

    #[test]
    fn columns_added_after_solving_warm_start() {
        let mut lp = BoundedSimplex::new(1e-9);
        lp.add_row(1.0).unwrap();
        lp.add_row(1.0).unwrap();
        lp.add_column(1.0, f64::INFINITY, &[(0, 1.0)]);
        lp.solve(100).unwrap();
        assert!((lp.objective() - 1.0).abs() < 1e-12);
        assert!((lp.dual(0) - 1.0).abs() < 1e-12);
        assert_eq!(lp.dual(1), 0.0);
        lp.add_column(1.0, f64::INFINITY, &[(1, 1.0)]);
        lp.solve(100).unwrap();
        assert!((lp.objective() - 2.0).abs() < 1e-12);
        let r = lp.add_row(0.5).unwrap();
        lp.add_column(1.0, f64::INFINITY, &[(r, 1.0)]);
        lp.solve(100).unwrap();
        assert!((lp.objective() - 2.5).abs() < 1e-12);
        assert!((lp.primal_objective() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_rhs() {
        let mut lp = BoundedSimplex::new(1e-9);
        assert!(lp.add_row(-1.0).is_err());
    }

    #[test]
    fn stall_cap_is_reported() {
        let mut lp = BoundedSimplex::new(1e-9);
        lp.add_row(1.0).unwrap();
        lp.add_column(1.0, f64::INFINITY, &[(0, 1.0)]);
        assert!(matches!(lp.solve(0), Err(Error::SolverStall(_))));
    }

    fn arb_lp() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>, Vec<f64>)> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(k, m)| {
            (
                proptest::collection::vec(-3i32..=5, k),
                proptest::collection::vec(proptest::collection::vec(-2i32..=4, k), m),
                proptest::collection::vec(0i32..=6, m),
                proptest::collection::vec(prop_oneof![Just(None), (1i32..=4).prop_map(Some)], k),
            )
                .prop_map(|(c, a, b, u)| {
                    (
                        c.into_iter().map(f64::from).collect(),
                        a.into_iter()
                            .map(|r| r.into_iter().map(f64::from).collect())
                            .collect(),
                        b.into_iter().map(f64::from).collect(),
                        u.into_iter()
                            .map(|x| x.map_or(f64::INFINITY, f64::from))
                            .collect(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn matches_vertex_enumeration((c, a, b, u) in arb_lp()) {
            let (status, obj, x) = solve(&c, &a, &b, &u);
            if status == LpStatus::Optimal {
                let best = brute_force(&c, &a, &b, &u);
                prop_assert!((obj - best).abs() < 1e-6, "simplex {} brute {}", obj, best);
                let direct: f64 = c.iter().zip(&x).map(|(p, q)| p * q).sum();
                prop_assert!((direct - obj).abs() < 1e-6);
                for (row, bi) in a.iter().zip(&b) {
                    let lhs: f64 = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                    prop_assert!(lhs <= bi + 1e-7);
                }
            } else {
                // some improving ray exists: an unbounded variable with a
                // positive objective coefficient must be present
                prop_assert!(u.iter().zip(&c).any(|(ui, ci)| ui.is_infinite() && *ci > 0.0));
            }
        }
    }
}
