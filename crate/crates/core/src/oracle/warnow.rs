//! A one-clause case whose structure is realizable but not on its own
//! midpoints geometry: each realization needs extra splitting edges, and
//! different satisfying assignments give different supports.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::feasibility::{strict_feasible, Feasibility};
use super::sat_bruteforce;
use crate::error::{Error, Result};
use crate::realize::build_realization;
use crate::reduction::encode;
use crate::sat::{Assignment, SatCase};
use crate::scalar::Rational;
use crate::tree::{midpoints_geometry, Split};

#[derive(Clone, Debug)]
pub struct WarnowAttempt {
    pub assignment: Assignment,
    /// Positive edges of `t_h` together with every leaf edge (some leaf edges
    /// have length zero, which leaves the tree shape unchanged).
    pub support: BTreeSet<Split>,
    /// `t_h` passed the realization checker.
    pub verified: bool,
    /// The simplex also finds a realization on `support`.
    pub oracle_feasible: bool,
}

#[derive(Clone, Debug)]
pub struct WarnowReport {
    pub elements: usize,
    pub geometry: BTreeSet<Split>,
    pub geometry_feasible: bool,
    pub attempts: Vec<WarnowAttempt>,
}

impl WarnowReport {
    pub fn distinct_supports(&self) -> usize {
        self.attempts.iter().filter(|a| a.verified).map(|a| &a.support).collect::<BTreeSet<_>>().len()
    }

    /// Infeasible on the geometry, while at least two verified realizations
    /// have distinct supports that strictly contain it.
    pub fn holds(&self) -> bool {
        !self.geometry_feasible
            && self.distinct_supports() >= 2
            && self.attempts.iter().filter(|a| a.verified).all(|a| {
                a.oracle_feasible && a.support.is_superset(&self.geometry) && a.support.len() > self.geometry.len()
            })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "structure has {} elements", self.elements);
        let _ = writeln!(
            out,
            "midpoints geometry has {} edges; strict feasibility on it: {}",
            self.geometry.len(),
            if self.geometry_feasible { "FEASIBLE" } else { "INFEASIBLE" }
        );
        for a in &self.attempts {
            let extra = a.support.difference(&self.geometry).count();
            let _ = writeln!(
                out,
                "h = {}: t_h {} with {} edges ({} beyond the geometry); simplex on that support: {}",
                a.assignment,
                if a.verified { "verified" } else { "NOT verified" },
                a.support.len(),
                extra,
                if a.oracle_feasible { "feasible" } else { "infeasible" }
            );
        }
        let _ = writeln!(out, "distinct supports: {}", self.distinct_supports());
        let _ = writeln!(
            out,
            "conclusion: {}",
            if self.holds() {
                "realizable, but no realization has the midpoints geometry"
            } else {
                "the expected pattern did NOT occur"
            }
        );
        out
    }
}

/// Runs the probe on a one-clause case.
pub fn warnow_probe(case: &SatCase) -> Result<WarnowReport> {
    if case.num_clauses() != 1 {
        return Err(Error::InvalidInput(format!("the probe takes exactly one clause, got {}", case.num_clauses())));
    }
    let enc = encode(case)?;
    let m = enc.structure();
    let geometry = midpoints_geometry(m);
    let geo: Vec<Split> = geometry.iter().cloned().collect();
    let geometry_feasible = strict_feasible(m, &geo)?.is_feasible();
    let mut attempts = Vec::new();
    for h in sat_bruteforce(case)? {
        let (t, report) = build_realization::<Rational>(&enc, &h)?;
        let mut support = t.support_set();
        support.extend((0..enc.len()).map(|x| Split::leaf(enc.len(), x)));
        let splits: Vec<Split> = support.iter().cloned().collect();
        let oracle_feasible = matches!(strict_feasible(m, &splits)?, Feasibility::Feasible(_));
        attempts.push(WarnowAttempt { assignment: h, support, verified: report.is_ok(), oracle_feasible });
    }
    Ok(WarnowReport { elements: enc.len(), geometry, geometry_feasible, attempts })
}
