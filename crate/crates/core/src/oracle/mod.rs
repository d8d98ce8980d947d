//! Exhaustive ground truth for small instances.

mod census;
mod feasibility;
mod simplex;
mod topology;
mod warnow;

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

pub use census::{census, census_sampled, CensusRow};
pub use feasibility::{constraint_rows, strict_feasible, Feasibility, InfeasibleReason};
pub use simplex::{DualSimplex, LpOutcome};
pub use topology::{
    enumerate_topologies, is_tree_system, random_topology, topology_count, Topology, DEFAULT_TOPOLOGY_CAP,
};
pub use warnow::{warnow_probe, WarnowReport};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::sat::{Assignment, SatCase};
use crate::scalar::Rational;
use crate::structure::MidpointsStructure;
use crate::tree::{derive_from_tree, midpoints_geometry, Split, TreeMetric};

/// Largest variable count accepted by [`sat_bruteforce`].
pub const SAT_CAP: usize = 24;

/// Searches every binary topology for a realization of `m`. Returns the
/// witness from the first feasible topology in enumeration order.
///
/// Binary topologies suffice: any realization pads to one with zero-length
/// edges, which changes no interval sum.
pub fn brute_realizable(m: &MidpointsStructure, cap: usize) -> Result<Option<TreeMetric<Rational>>> {
    let n = m.len();
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    if n < 3 {
        let splits: Vec<Split> = (0..n).map(|x| Split::leaf(n, x)).collect();
        return Ok(strict_feasible(m, &splits)?.witness().cloned());
    }
    let geometry = midpoints_geometry(m);
    let topologies = enumerate_topologies(n, cap)?;
    let found = topologies
        .par_iter()
        .filter(|t| geometry.iter().all(|s| t.splits().contains(s)))
        .map(|t| strict_feasible(m, t.splits()))
        .find_first(|r| r.as_ref().map_or(true, Feasibility::is_feasible));
    match found {
        None => Ok(None),
        Some(r) => Ok(r?.witness().cloned()),
    }
}

/// Every satisfying assignment, in [`Assignment::from_code`] order.
pub fn sat_bruteforce(case: &SatCase) -> Result<Vec<Assignment>> {
    let v = case.num_vars();
    if v > SAT_CAP {
        return Err(Error::CapExceeded { requested: v, cap: SAT_CAP });
    }
    let out: Vec<Assignment> = (0..1u64 << v)
        .into_par_iter()
        .map(|code| Assignment::from_code(v, code))
        .filter(|h| case.is_satisfied(h))
        .collect();
    Ok(out)
}

/// A random tree on `n ≥ 3` numbered leaves with integer lengths in
/// `1..=max_len`, redrawn until every midpoint is unambiguous. Returns the
/// tree and the structure it induces.
pub fn random_generic_tree<R: Rng + ?Sized>(
    n: usize,
    max_len: i64,
    rng: &mut R,
) -> Result<(TreeMetric<Rational>, MidpointsStructure)> {
    let ground = Arc::new(GroundSet::numbered(n)?);
    loop {
        let topo = random_topology(n, rng)?;
        let t = TreeMetric::from_lengths(
            ground.clone(),
            topo.into_splits().into_iter().map(|s| (s, Rational::from_integer(rng.gen_range(1..=max_len).into()))),
        )?;
        match derive_from_tree(&t) {
            Ok(m) => return Ok((t, m)),
            Err(Error::GenericTie { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::check_realization;
    use crate::reduction::build_m0;
    use rand::SeedableRng;

    #[test]
    fn derived_structures_are_realizable() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 3..=6 {
            for _ in 0..4 {
                let (_, m) = random_generic_tree(n, 50, &mut rng).unwrap();
                let w = brute_realizable(&m, DEFAULT_TOPOLOGY_CAP).unwrap().expect("realizable");
                assert!(check_realization(&m, &w).unwrap().is_ok());
            }
        }
    }

    #[test]
    fn m0_on_its_geometry() {
        let m = build_m0(1).unwrap();
        let w = brute_realizable(&m, DEFAULT_TOPOLOGY_CAP).unwrap().expect("m0 realizable");
        assert!(check_realization(&m, &w).unwrap().is_ok());
    }

    #[test]
    fn sat_examples() {
        let p = SatCase::parse_dimacs("p cnf 4 2\n2 -3 4 0\n1 2 3 0\n").unwrap();
        let sols = sat_bruteforce(&p).unwrap();
        assert!(sols.contains(&Assignment::new(vec![1, -1, -1, 1]).unwrap()));
        assert_eq!(sols.len(), 12);
        let mut all = Vec::new();
        for bits in 0..8u8 {
            let lit = |v: usize| (v, if bits >> (v - 1) & 1 == 1 { 1i8 } else { -1 });
            all.push([lit(1), lit(2), lit(3)]);
        }
        let unsat = SatCase::new(3, all).unwrap();
        assert!(sat_bruteforce(&unsat).unwrap().is_empty());
        let big = SatCase::new(25, vec![]).unwrap();
        assert_eq!(sat_bruteforce(&big).unwrap_err().code(), "CAP_EXCEEDED");
    }
}
