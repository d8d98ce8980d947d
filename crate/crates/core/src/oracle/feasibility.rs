//! Strict feasibility of the realization inequalities on a fixed split set.
//!
//! On a fixed set of compatible splits the condition for `(x, x')` is the
//! homogeneous linear form `Σ_U ([U ∈ [{x},M]] - [U ∈ [{x'},M)])·t(U) > 0`.
//! By homogeneity, strict feasibility is equivalent to feasibility with every
//! form at least one, which the exact simplex decides.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

use super::simplex::{DualSimplex, LpOutcome};
use crate::error::Result;
use crate::realization::check_realization;
use crate::scalar::Rational;
use crate::structure::MidpointsStructure;
use crate::tree::{is_compatible, Split, TreeMetric};

/// Rows added to the active set per round of constraint generation.
const BATCH: usize = 48;

/// Outcome of [`strict_feasible`].
#[derive(Clone, Debug)]
pub enum Feasibility {
    /// A verified realization supported on the given splits.
    Feasible(TreeMetric<Rational>),
    Infeasible(InfeasibleReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// The splits are not pairwise compatible.
    Incompatible,
    /// Some midpoint of the structure is not among the splits.
    MissingMidpoint,
    /// The linear system has no solution.
    Linear,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&TreeMetric<Rational>> {
        match self {
            Feasibility::Feasible(t) => Some(t),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// The distinct constraint rows for `m` over `splits`, one coefficient per split.
pub fn constraint_rows(m: &MidpointsStructure, splits: &[Split]) -> Vec<Vec<i64>> {
    let n = m.len();
    let sides: Vec<_> = splits.iter().map(Split::sides).collect();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let mid = m.mid(x, y);
            let mid_x = if mid.contains(x) { mid.clone() } else { mid.complement() };
            let mid_y = mid_x.complement();
            let row: Vec<i64> = sides
                .iter()
                .map(|s| {
                    let in_x = s[0].contains(x);
                    if in_x == s[0].contains(y) {
                        return 0;
                    }
                    let (ux, uy) = if in_x { (&s[0], &s[1]) } else { (&s[1], &s[0]) };
                    let lhs = i64::from(ux.is_subset(&mid_x));
                    let rhs = i64::from(uy.is_subset(&mid_y) && *ux != mid_x);
                    lhs - rhs
                })
                .collect();
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    rows
}

fn dot(row: &[i64], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (c, v) in row.iter().zip(x) {
        if *c != 0 {
            acc += v * Rational::from_integer((*c).into());
        }
    }
    acc
}

/// Decides whether `m` has a realization supported on (a subset of) `splits`.
/// Leaf edges missing from `splits` are held at length zero. A returned
/// witness has been re-verified with the realization checker.
pub fn strict_feasible(m: &MidpointsStructure, splits: &[Split]) -> Result<Feasibility> {
    let compatible = splits.iter().enumerate().all(|(i, a)| splits[i + 1..].iter().all(|b| is_compatible(a, b)));
    if !compatible {
        return Ok(Feasibility::Infeasible(InfeasibleReason::Incompatible));
    }
    let present: HashSet<&Split> = splits.iter().collect();
    for (_, _, mid) in m.pairs() {
        if !present.contains(&Split::new(mid)?) {
            return Ok(Feasibility::Infeasible(InfeasibleReason::MissingMidpoint));
        }
    }
    let rows = constraint_rows(m, splits);
    if rows.iter().any(|r| r.iter().all(|&c| c <= 0)) {
        return Ok(Feasibility::Infeasible(InfeasibleReason::Linear));
    }
    let mut lp = DualSimplex::new(splits.len());
    let mut active = vec![false; rows.len()];
    let mut x = vec![Rational::zero(); splits.len()];
    loop {
        // most violated rows first, ties by position
        let mut violated: Vec<(Rational, usize)> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| !active[*i])
            .filter_map(|(i, r)| {
                let v = dot(r, &x);
                (v < Rational::from_integer(1.into())).then_some((v, i))
            })
            .collect();
        if violated.is_empty() {
            break;
        }
        violated.sort();
        for &(_, i) in violated.iter().take(BATCH) {
            active[i] = true;
            lp.add_row(&rows[i]);
        }
        match lp.solve() {
            LpOutcome::Feasible(sol) => x = sol,
            LpOutcome::Infeasible => return Ok(Feasibility::Infeasible(InfeasibleReason::Linear)),
        }
    }
    let t =
        TreeMetric::from_lengths(Arc::clone(m.ground()), splits.iter().cloned().zip(x).filter(|(_, v)| !v.is_zero()))?;
    let report = check_realization(m, &t)?;
    assert!(report.is_ok(), "simplex witness failed verification");
    Ok(Feasibility::Feasible(t))
}
