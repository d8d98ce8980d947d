//! Realizability counts over all (or sampled) structures of a given size.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use super::brute_realizable;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::realization::check_realization;
use crate::structure::MidpointsStructure;

/// Exhaustive census is limited to this many leaves (4096 structures at 4).
pub const EXHAUSTIVE_CAP: usize = 4;

#[derive(Clone, Debug)]
pub struct CensusRow {
    pub n: usize,
    pub examined: usize,
    pub realizable: usize,
    /// Witnesses that failed re-verification; always zero unless a bug.
    pub witness_failures: usize,
    pub sampled: bool,
    pub elapsed: Duration,
}

impl CensusRow {
    pub fn render(&self) -> String {
        format!(
            "n {} structures {} realizable {} witness_failures {} mode {} seconds {:.3}",
            self.n,
            self.examined,
            self.realizable,
            self.witness_failures,
            if self.sampled { "sampled" } else { "exhaustive" },
            self.elapsed.as_secs_f64()
        )
    }
}

fn tally(
    n: usize,
    structures: Vec<MidpointsStructure>,
    cap: usize,
    sampled: bool,
    start: Instant,
) -> Result<CensusRow> {
    let results: Vec<Result<(bool, bool)>> = structures
        .par_iter()
        .map(|m| {
            Ok(match brute_realizable(m, cap)? {
                Some(w) => (true, check_realization(m, &w)?.is_ok()),
                None => (false, true),
            })
        })
        .collect();
    let mut row = CensusRow {
        n,
        examined: structures.len(),
        realizable: 0,
        witness_failures: 0,
        sampled,
        elapsed: Duration::ZERO,
    };
    for r in results {
        let (ok, verified) = r?;
        row.realizable += usize::from(ok);
        row.witness_failures += usize::from(!verified);
    }
    row.elapsed = start.elapsed();
    Ok(row)
}

/// Every legal structure on `n` numbered elements, `n ≤ 4`.
pub fn census(n: usize, cap: usize) -> Result<CensusRow> {
    if n > EXHAUSTIVE_CAP.min(cap) {
        return Err(Error::CapExceeded { requested: n, cap: EXHAUSTIVE_CAP.min(cap) });
    }
    let start = Instant::now();
    let ground = Arc::new(GroundSet::numbered(n)?);
    let all: Vec<_> = MidpointsStructure::enumerate_all(ground).collect();
    tally(n, all, cap, false, start)
}

/// `samples` structures drawn uniformly at random on `n` elements.
pub fn census_sampled<R: Rng + ?Sized>(n: usize, samples: usize, cap: usize, rng: &mut R) -> Result<CensusRow> {
    let start = Instant::now();
    let ground = Arc::new(GroundSet::numbered(n)?);
    let drawn: Vec<_> = (0..samples).map(|_| MidpointsStructure::random(ground.clone(), rng)).collect();
    tally(n, drawn, cap, true, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_TOPOLOGY_CAP;

    #[test]
    fn three_elements() {
        let row = census(3, DEFAULT_TOPOLOGY_CAP).unwrap();
        assert_eq!((row.examined, row.realizable, row.witness_failures), (8, 6, 0));
    }

    #[test]
    fn cap() {
        assert_eq!(census(5, DEFAULT_TOPOLOGY_CAP).unwrap_err().code(), "CAP_EXCEEDED");
    }
}
