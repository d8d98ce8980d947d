//! Reading a truth assignment off a realization of `m_P`.
//!
//! Around variable vertex `v` the four blocks `A[v,s]`, `A[v,-s]`, `A[>v]`,
//! `A[<v]` partition the ground set. The alternating sum `τ[v,s]` of the open
//! path sums between cyclically consecutive blocks equals
//! `4·t(A[v,s] ∪ A[<v]) - 4·t(A[>v] ∪ A[<v])`, so its sign tells which way
//! the vertex was resolved.

use crate::error::Result;
use crate::reduction::{Encoding, NamedSplits};
use crate::sat::Assignment;
use crate::scalar::Scalar;
use crate::tree::{EdgeInterval, Split, TreeMetric};

/// `τ[v,s] = t(A[v,s],A[v,-s]) - t(A[v,-s],A[>v]) + t(A[>v],A[<v]) - t(A[<v],A[v,s])`
/// with open intervals.
pub fn tau<T: Scalar>(t: &TreeMetric<T>, v: usize, s: i8, ns: &NamedSplits) -> Result<T> {
    let blocks = [ns.a(v, s), ns.a(v, -s), ns.above(v), ns.below(v)];
    let splits = blocks.iter().map(|b| Split::new(b)).collect::<Result<Vec<_>>>()?;
    let mut total = T::zero();
    for j in 0..4 {
        let term = t.path_sum(&EdgeInterval::open(splits[j].clone(), splits[(j + 1) % 4].clone()))?;
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    Ok(total)
}

/// `h_t(v) = s` when `τ[v,s] > 0`; `+1` when neither value is positive.
pub fn extract_assignment<T: Scalar>(t: &TreeMetric<T>, enc: &Encoding) -> Result<Assignment> {
    let ns = enc.named_splits();
    let mut values = Vec::with_capacity(ns.num_vars());
    for v in 1..=ns.num_vars() {
        let value = if tau(t, v, -1, &ns)?.is_positive_strict() { -1 } else { 1 };
        values.push(value);
    }
    Assignment::new(values)
}

/// The three values `τ[ν(c,a), σ(c,a)]` of clause `c` and their sum.
#[derive(Clone, Debug, PartialEq)]
pub struct ClauseAudit<T: Scalar> {
    pub clause: usize,
    pub addends: [T; 3],
    pub sum: T,
}

impl<T: Scalar> ClauseAudit<T> {
    /// Positive sum with at least one positive addend.
    pub fn passes(&self) -> bool {
        self.sum.is_positive_strict() && self.addends.iter().any(Scalar::is_positive_strict)
    }
}

pub fn audit_clause<T: Scalar>(t: &TreeMetric<T>, enc: &Encoding, c: usize) -> Result<ClauseAudit<T>> {
    let ns = enc.named_splits();
    let case = enc.case();
    let mut addends: [T; 3] = [T::zero(), T::zero(), T::zero()];
    for (a, slot) in addends.iter_mut().enumerate() {
        *slot = tau(t, case.nu(c, a), case.sigma(c, a), &ns)?;
    }
    let sum = addends.iter().cloned().fold(T::zero(), |acc, x| acc + x);
    Ok(ClauseAudit { clause: c, addends, sum })
}
