//! Exact dual simplex for `min 1·x  s.t.  A x ≥ 1, x ≥ 0` with small integer
//! `A`, in condensed (Tucker) form so rows can be appended with a warm start.
//!
//! Every basic variable is kept as `b = β - Σ a·n` over the nonbasic ones.
//! The all-slack start is dual feasible because the costs are all one, and
//! appending a row never breaks dual feasibility.

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    X(usize),
    Slack(usize),
}

#[derive(Clone, Debug)]
struct Row {
    var: Var,
    beta: Rational,
    a: Vec<Rational>,
}

/// Outcome of a solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// A point with every active row at least one.
    Feasible(Vec<Rational>),
    /// The active rows admit no nonnegative solution.
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct DualSimplex {
    n: usize,
    rows: Vec<Row>,
    /// Nonbasic variable of each column.
    cols: Vec<Var>,
    /// Reduced costs, stored as the objective row in the same `β - Σ a·n` form.
    obj: Row,
    added: usize,
    pivots: usize,
}

impl DualSimplex {
    pub fn new(n: usize) -> Self {
        DualSimplex {
            n,
            rows: Vec::new(),
            cols: (0..n).map(Var::X).collect(),
            obj: Row { var: Var::X(usize::MAX), beta: Rational::zero(), a: vec![-Rational::one(); n] },
            added: 0,
            pivots: 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.added
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Appends the constraint `Σ coeffs[j]·x_j ≥ 1`.
    pub fn add_row(&mut self, coeffs: &[i64]) {
        assert_eq!(coeffs.len(), self.n, "row width");
        let mut beta = -Rational::one();
        let mut a = vec![Rational::zero(); self.n];
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = Rational::from_integer(c.into());
            if let Some(k) = self.cols.iter().position(|&v| v == Var::X(j)) {
                a[k] -= &c;
            } else {
                let r = self.rows.iter().find(|r| r.var == Var::X(j)).expect("every variable is basic or not");
                beta += &c * &r.beta;
                for (ak, rk) in a.iter_mut().zip(&r.a) {
                    if !rk.is_zero() {
                        *ak += &c * rk;
                    }
                }
            }
        }
        self.rows.push(Row { var: Var::Slack(self.added), beta, a });
        self.added += 1;
    }

    fn pivot(&mut self, r: usize, k: usize) {
        self.pivots += 1;
        let piv = self.rows[r].a[k].clone();
        let leaving = self.rows[r].var;
        let entering = self.cols[k];
        {
            let row = &mut self.rows[r];
            row.beta = &row.beta / &piv;
            for (j, v) in row.a.iter_mut().enumerate() {
                if j == k {
                    *v = Rational::one() / &piv;
                } else if !v.is_zero() {
                    *v = &*v / &piv;
                }
            }
            row.var = entering;
        }
        self.cols[k] = leaving;
        let pr = self.rows[r].clone();
        let update = |row: &mut Row| {
            let f = row.a[k].clone();
            if f.is_zero() {
                return;
            }
            row.beta -= &f * &pr.beta;
            for (j, v) in row.a.iter_mut().enumerate() {
                if j == k {
                    *v = -(&f * &pr.a[k]);
                } else if !pr.a[j].is_zero() {
                    *v -= &f * &pr.a[j];
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update(row);
            }
        }
        update(&mut self.obj);
    }

    /// Runs dual simplex iterations with Bland's rule until the active rows are
    /// satisfied or one of them is shown infeasible.
    pub fn solve(&mut self) -> LpOutcome {
        loop {
            let leave = self
                .rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.beta.is_negative())
                .min_by_key(|(_, r)| r.var)
                .map(|(i, _)| i);
            let Some(r) = leave else {
                let mut x = vec![Rational::zero(); self.n];
                for row in &self.rows {
                    if let Var::X(j) = row.var {
                        x[j] = row.beta.clone();
                    }
                }
                return LpOutcome::Feasible(x);
            };
            // entering: a[r][k] < 0, minimizing d_k / -a[r][k] with d_k = -obj.a[k]
            let mut best: Option<(usize, Rational)> = None;
            for (k, ark) in self.rows[r].a.iter().enumerate() {
                if !ark.is_negative() {
                    continue;
                }
                let ratio = &self.obj.a[k] / ark;
                let better = match &best {
                    None => true,
                    Some((bk, br)) => ratio < *br || (ratio == *br && self.cols[k] < self.cols[*bk]),
                };
                if better {
                    best = Some((k, ratio));
                }
            }
            match best {
                None => return LpOutcome::Infeasible,
                Some((k, _)) => self.pivot(r, k),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn simple_feasible() {
        let mut s = DualSimplex::new(2);
        s.add_row(&[1, 1]);
        s.add_row(&[1, -1]);
        match s.solve() {
            LpOutcome::Feasible(x) => {
                assert!(&x[0] + &x[1] >= q(1, 1));
                assert!(&x[0] - &x[1] >= q(1, 1));
                assert_eq!(x, vec![q(1, 1), q(0, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_order_is_infeasible() {
        // x0 > x1 > x2 > x0
        let mut s = DualSimplex::new(3);
        s.add_row(&[1, -1, 0]);
        s.add_row(&[0, 1, -1]);
        assert!(matches!(s.solve(), LpOutcome::Feasible(_)));
        s.add_row(&[-1, 0, 1]);
        assert!(matches!(s.solve(), LpOutcome::Infeasible));
    }

    #[test]
    fn row_without_positive_entry() {
        let mut s = DualSimplex::new(2);
        s.add_row(&[-1, 0]);
        assert_eq!(s.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn warm_rows_after_pivots() {
        let mut s = DualSimplex::new(3);
        s.add_row(&[2, 0, 1]);
        let LpOutcome::Feasible(_) = s.solve() else { panic!() };
        s.add_row(&[0, 1, -1]);
        s.add_row(&[1, 0, -1]);
        let LpOutcome::Feasible(x) = s.solve() else { panic!() };
        assert!(q(2, 1) * &x[0] + &x[2] >= q(1, 1));
        assert!(&x[1] - &x[2] >= q(1, 1));
        assert!(&x[0] - &x[2] >= q(1, 1));
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
