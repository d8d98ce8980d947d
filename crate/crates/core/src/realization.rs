//! The realization checker: given a midpoints structure `m` and a tree metric
//! `t`, evaluate for every ordered pair `(x, x')` the strict inequality
//!
//! ```text
//! t_[{x}, m{x,x'}]  >  t_[{x'}, m{x,x'})
//! ```
//!
//! i.e. the midpoint of the path from `x` to `x'` lies in the interior of the
//! edge `m{x,x'}`. This is the polynomial-time certificate check.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, from_usize, Scalar};
use crate::structure::MidpointsStructure;
use crate::tree::{is_compatible, IncompatiblePair, Split, SumConvention, TreeMetric};

/// Why an ordered pair failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairIssue {
    /// `lhs <= rhs`.
    NotStrict,
    /// The midpoint edge or a leaf edge crosses a positive edge of the tree.
    UnalignedEdge,
}

/// Verdict for one ordered pair `(x, x')`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairVerdict<T: Scalar> {
    pub x: usize,
    pub x_prime: usize,
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
    pub issue: Option<PairIssue>,
}

impl<T: Scalar> PairVerdict<T> {
    pub fn ok(&self) -> bool {
        self.issue.is_none()
    }
}

/// Per-ordered-pair verdicts, in index order of `(x, x')`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationReport<T: Scalar> {
    pub verdicts: Vec<PairVerdict<T>>,
    /// Incompatible positive edges in the tree; non-empty means the tree is
    /// not a tree metric and the report is not ok.
    pub incompatible: Vec<IncompatiblePair>,
}

impl<T: Scalar> RealizationReport<T> {
    pub fn is_ok(&self) -> bool {
        self.incompatible.is_empty() && self.verdicts.iter().all(PairVerdict::ok)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairVerdict<T>> {
        self.verdicts.iter().filter(|v| !v.ok())
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    pub fn checked(&self) -> usize {
        self.verdicts.len()
    }

    /// Line-oriented text rendering: one record per pair and a summary line.
    pub fn render(&self, m: &MidpointsStructure, all_pairs: bool) -> String {
        let g = m.ground();
        let mut out = String::from("ordertree-report v1\n");
        for IncompatiblePair(a, b) in &self.incompatible {
            let _ = writeln!(out, "incompatible {} {}", a.render(g), b.render(g));
        }
        for v in &self.verdicts {
            if !all_pairs && v.ok() {
                continue;
            }
            let status = match &v.issue {
                None => "ok",
                Some(PairIssue::NotStrict) => "FAIL",
                Some(PairIssue::UnalignedEdge) => "UNALIGNED_EDGE",
            };
            let _ = writeln!(
                out,
                "pair {} {} lhs {} rhs {} slack {} {}",
                g.get(v.x),
                g.get(v.x_prime),
                format_scalar(&v.lhs),
                format_scalar(&v.rhs),
                format_scalar(&v.slack),
                status
            );
        }
        let _ = writeln!(
            out,
            "summary checked {} violations {} verdict {}",
            self.checked(),
            self.violation_count() + self.incompatible.len(),
            if self.is_ok() { "realized" } else { "not-realized" }
        );
        out
    }
}

/// Checks every ordered pair with the default convention.
pub fn check_realization<T: Scalar>(m: &MidpointsStructure, t: &TreeMetric<T>) -> Result<RealizationReport<T>> {
    check_realization_with(m, t, SumConvention::BothOrientations)
}

/// Checks every ordered pair. Interval membership uses the identity that,
/// for an edge `M` separating `x` from `x'`, `U ∈ [{x}, M]` iff the side of
/// `U` containing `x` is contained in the side of `M` containing `x`.
pub fn check_realization_with<T: Scalar>(
    m: &MidpointsStructure,
    t: &TreeMetric<T>,
    conv: SumConvention,
) -> Result<RealizationReport<T>> {
    if !std::sync::Arc::ptr_eq(m.ground(), t.ground()) && **m.ground() != **t.ground() {
        return Err(Error::InvalidInput("structure and tree use different ground sets".into()));
    }
    m.ensure_valid()?;
    let n = m.len();
    let incompatible = t.validate();
    let support: Vec<([ElementSet; 2], T)> = t.support().map(|(s, l)| (s.sides(), l.clone())).collect();
    let factor = from_usize::<T>(conv.factor());

    let aligned = |s: &Split, cache: &mut HashMap<Split, bool>| -> bool {
        if let Some(&a) = cache.get(s) {
            return a;
        }
        let a = t.support().all(|(u, _)| is_compatible(s, u));
        cache.insert(s.clone(), a);
        a
    };
    let leaf_aligned: Vec<bool> = {
        let mut cache = HashMap::new();
        (0..n).map(|x| aligned(&Split::leaf(n, x), &mut cache)).collect()
    };
    let mut mid_aligned = HashMap::new();
    for (_, _, s) in m.pairs() {
        let sp = Split::new(s).expect("valid midpoint set is a proper subset");
        aligned(&sp, &mut mid_aligned);
    }

    let rows: Vec<Vec<PairVerdict<T>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .filter(|&y| y != x)
                .map(|y| {
                    let mid = m.mid(x, y);
                    let mid_split = Split::new(mid).expect("valid midpoint set");
                    let mid_x = if mid.contains(x) { mid.clone() } else { mid.complement() };
                    let mid_y = mid_x.complement();
                    let mut lhs = T::zero();
                    let mut rhs = T::zero();
                    for (sides, len) in &support {
                        let in_x = sides[0].contains(x);
                        if in_x == sides[0].contains(y) {
                            continue;
                        }
                        let (ux, uy) = if in_x { (&sides[0], &sides[1]) } else { (&sides[1], &sides[0]) };
                        if ux.is_subset(&mid_x) {
                            lhs = lhs + len.clone();
                        }
                        if uy.is_subset(&mid_y) && sides[0] != *mid_split.side() {
                            rhs = rhs + len.clone();
                        }
                    }
                    lhs = lhs * factor.clone();
                    rhs = rhs * factor.clone();
                    let slack = lhs.clone() - rhs.clone();
                    let issue = if !mid_aligned[&mid_split] || !leaf_aligned[x] || !leaf_aligned[y] {
                        Some(PairIssue::UnalignedEdge)
                    } else if slack.is_positive_strict() {
                        None
                    } else {
                        Some(PairIssue::NotStrict)
                    };
                    PairVerdict { x, x_prime: y, lhs, rhs, slack, issue }
                })
                .collect()
        })
        .collect();
    Ok(RealizationReport { verdicts: rows.into_iter().flatten().collect(), incompatible })
}
