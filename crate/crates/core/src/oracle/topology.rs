//! Labeled binary tree topologies as split systems.

use rand::Rng;

use crate::error::{Error, Result};
use crate::tree::Split;

/// Default cap on the number of leaves for exhaustive enumeration.
pub const DEFAULT_TOPOLOGY_CAP: usize = 8;

/// A binary topology on `n` leaves: `n` leaf splits and `n - 3` internal ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Topology {
    splits: Vec<Split>,
}

impl Topology {
    /// The star on three leaves.
    pub fn star3() -> Self {
        Topology { splits: (0..3).map(|x| Split::leaf(3, x)).collect() }
    }

    pub fn leaves(&self) -> usize {
        self.splits[0].universe()
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn into_splits(self) -> Vec<Split> {
        self.splits
    }

    /// Attaches a new leaf `k = leaves()` in the middle of edge `at`.
    pub fn insert_leaf(&self, at: usize) -> Self {
        let k = self.leaves();
        let n = k + 1;
        let u = &self.splits[at];
        let (u_side, u_comp) = (u.side().clone(), u.side().complement());
        let mut out = Vec::with_capacity(self.splits.len() + 2);
        for (i, w) in self.splits.iter().enumerate() {
            if i == at {
                continue;
            }
            let side = w.side();
            let mut wide = side.widen(n);
            // the new leaf joins whichever side of w holds edge u
            if u_side.is_subset(side) || u_comp.is_subset(side) {
                wide.insert(k);
            }
            out.push(Split::new(&wide).expect("nontrivial"));
        }
        let mut with_k = u_side.widen(n);
        out.push(Split::new(&u_side.widen(n)).expect("nontrivial"));
        with_k.insert(k);
        out.push(Split::new(&with_k).expect("nontrivial"));
        out.push(Split::leaf(n, k));
        out.sort();
        Topology { splits: out }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    if n < 3 {
        return Err(Error::Range(format!("topologies need at least 3 leaves, got {n}")));
    }
    Ok(())
}

/// `(2n - 5)!!`
pub fn topology_count(n: usize) -> u64 {
    (1..=n.saturating_sub(2) as u64).map(|i| 2 * i - 1).product()
}

/// Every labeled binary topology on `n` leaves, each once, in a fixed order.
pub fn enumerate_topologies(n: usize, cap: usize) -> Result<Vec<Topology>> {
    check_cap(n, cap)?;
    let mut level = vec![Topology::star3()];
    for _ in 3..n {
        level = level.iter().flat_map(|t| (0..t.splits.len()).map(move |e| t.insert_leaf(e))).collect();
    }
    Ok(level)
}

/// A uniformly random binary topology on `n ≥ 3` leaves.
pub fn random_topology<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Topology> {
    check_cap(n, usize::MAX)?;
    let mut t = Topology::star3();
    for _ in 3..n {
        let e = rng.gen_range(0..t.splits.len());
        t = t.insert_leaf(e);
    }
    Ok(t)
}

/// Whether `splits` is pairwise compatible and contains every leaf split.
pub fn is_tree_system(n: usize, splits: &[Split]) -> bool {
    (0..n).all(|x| splits.contains(&Split::leaf(n, x)))
        && splits.iter().enumerate().all(|(i, a)| splits[i + 1..].iter().all(|b| crate::tree::is_compatible(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        for (n, want) in [(3, 1), (4, 3), (5, 15), (6, 105), (7, 945)] {
            let all = enumerate_topologies(n, DEFAULT_TOPOLOGY_CAP).unwrap();
            assert_eq!(all.len(), want);
            assert_eq!(topology_count(n), want as u64);
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), want);
            for t in &all {
                assert_eq!(t.splits().len(), 2 * n - 3);
                assert!(is_tree_system(n, t.splits()));
            }
        }
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(enumerate_topologies(9, 8).unwrap_err().code(), "CAP_EXCEEDED");
        assert!(enumerate_topologies(2, 8).is_err());
    }

    #[test]
    fn random_is_binary() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 3..12 {
            let t = random_topology(n, &mut rng).unwrap();
            assert_eq!(t.splits().len(), 2 * n - 3);
            assert!(is_tree_system(n, t.splits()));
        }
    }
}
