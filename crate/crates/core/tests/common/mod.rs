//! Randomized trial helpers shared by the property and acceptance targets.
#![allow(dead_code)]

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use ordertree::oracle::random_generic_tree;
use ordertree::tree::{EdgeInterval, Split};
use ordertree::{check_realization, ElementSet, GroundSet, MidpointsStructure, Rational, TreeMetric, TriplesStructure};

pub type Tree = TreeMetric<Rational>;

pub fn two() -> Rational {
    Rational::from_integer(2.into())
}

/// A generic random tree on 4 to 10 leaves.
pub fn random_tree<R: Rng>(rng: &mut R) -> (Tree, MidpointsStructure) {
    let n = rng.gen_range(4..=10);
    random_generic_tree(n, 1000, rng).expect("random tree")
}

/// Picks support edges `S`, `U` and a positive edge `T` strictly between
/// them, then compares `t_(S,U)` with `t_(S,T) + 2t(T) + t_(T,U)`. `None`
/// when the chosen pair has nothing between it.
pub fn path_additivity_trial<R: Rng>(rng: &mut R) -> Option<bool> {
    let (t, _) = random_tree(rng);
    let edges: Vec<Split> = t.support_set().into_iter().collect();
    let s = edges.choose(rng)?.clone();
    let u = edges.choose(rng)?.clone();
    if s == u {
        return None;
    }
    let between = t.interval_members(&EdgeInterval::open(s.clone(), u.clone())).ok()?;
    let mid = between.choose(rng)?.clone();
    let whole = t.path_sum(&EdgeInterval::open(s.clone(), u.clone())).ok()?;
    let left = t.path_sum(&EdgeInterval::open(s, mid.clone())).ok()?;
    let right = t.path_sum(&EdgeInterval::open(mid.clone(), u)).ok()?;
    Some(whole == left + two() * t.length(&mid) + right)
}

/// Four positive edges whose far sides partition the leaves: the subtrees
/// hanging off both ends of a random internal edge, in random order.
pub fn four_blocks<R: Rng>(t: &Tree, rng: &mut R) -> Option<[ElementSet; 4]> {
    let internal: Vec<Split> = t.support().filter(|(s, _)| !s.is_leaf()).map(|(s, _)| s.clone()).collect();
    let e = internal.choose(rng)?;
    let oriented: Vec<ElementSet> = t.support().flat_map(|(s, _)| s.sides()).collect();
    let mut blocks = Vec::new();
    for side in e.sides() {
        let inside: Vec<&ElementSet> = oriented.iter().filter(|a| a.is_subset(&side) && **a != side).collect();
        let maximal: Vec<ElementSet> = inside
            .iter()
            .filter(|a| !inside.iter().any(|b| *b != **a && a.is_subset(b)))
            .map(|a| (*a).clone())
            .collect();
        if maximal.len() != 2 {
            return None;
        }
        blocks.extend(maximal);
    }
    blocks.shuffle(rng);
    blocks.try_into().ok()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PartitionOutcome {
    /// At most one `j < 3` has `t(U_j ∪ U_3) > 0`.
    pub exclusive: bool,
    /// `t_(U_j,U_k) = 2t(U_j ∪ U_k)` for every `j ≠ k`.
    pub literal: bool,
    /// `t_(U_j,U_k) = 2 Σ_{i ∉ {j,k}} t(U_i ∪ U_j)` for every `j ≠ k`.
    pub corrected: bool,
    /// The alternating sum equals `4t(U_0 ∪ U_3) - 4t(U_2 ∪ U_3)`.
    pub alternating: bool,
}

pub fn partition_trial<R: Rng>(rng: &mut R) -> Option<PartitionOutcome> {
    let (t, _) = random_tree(rng);
    let u = four_blocks(&t, rng)?;
    let pair = |a: usize, b: usize| t.length_of_set(&u[a].union(&u[b]));
    let split = |a: usize| Split::new(&u[a]).expect("proper block");
    let open = |a: usize, b: usize| t.path_sum(&EdgeInterval::open(split(a), split(b))).expect("aligned");
    let positive = (0..3).filter(|&j| pair(j, 3).is_positive()).count();
    let mut out = PartitionOutcome { exclusive: positive <= 1, literal: true, corrected: true, alternating: true };
    for j in 0..4 {
        for k in (0..4).filter(|&k| k != j) {
            let lhs = open(j, k);
            out.literal &= lhs == two() * pair(j, k);
            let rest = (0..4).filter(|&i| i != j && i != k).fold(Rational::zero(), |acc, i| acc + pair(i, j));
            out.corrected &= lhs == two() * rest;
        }
    }
    let four = two() * two();
    let alt = open(0, 1) - open(1, 2) + open(2, 3) - open(3, 0);
    out.alternating = alt == four.clone() * pair(0, 3) - four * pair(2, 3);
    Some(out)
}

/// Every midpoint edge of `m` has positive length in `t`.
pub fn midpoints_positive(m: &MidpointsStructure, t: &Tree) -> bool {
    m.pairs().all(|(_, _, s)| t.length_of_set(s).is_positive())
}

/// A random generic tree that verifies against its derived structure and
/// gives every midpoint edge positive length.
pub fn derived_positivity_trial<R: Rng>(rng: &mut R) -> bool {
    let (t, m) = random_tree(rng);
    check_realization(&m, &t).expect("check").is_ok() && midpoints_positive(&m, &t)
}

/// Uniform random valid triples structure: every anchor orders every pair
/// of other elements independently.
pub fn random_triples<R: Rng>(ground: Arc<GroundSet>, rng: &mut R) -> TriplesStructure {
    let n = ground.len();
    let mut rel = Vec::new();
    for z in 0..n {
        for x in (0..n).filter(|&x| x != z) {
            rel.push((z, z, x));
        }
        for x in (0..n).filter(|&x| x != z) {
            for y in (x + 1..n).filter(|&y| y != z) {
                rel.push(if rng.gen_bool(0.5) { (z, x, y) } else { (z, y, x) });
            }
        }
    }
    TriplesStructure::from_relations(ground, rel)
}

/// Midpoints to triples to midpoints, and triples to midpoints to triples,
/// on random structures with `2 ≤ n ≤ 12`.
pub fn round_trip_trial<R: Rng>(rng: &mut R) -> bool {
    let n = rng.gen_range(2..=12);
    let ground = Arc::new(GroundSet::numbered(n).expect("ground"));
    let m = MidpointsStructure::random(ground.clone(), rng);
    let forward = m.to_triples().and_then(|t| t.to_midpoints()).map(|back| back == m).unwrap_or(false);
    let tr = random_triples(ground, rng);
    let backward = tr.to_midpoints().and_then(|m| m.to_triples()).map(|back| back == tr).unwrap_or(false);
    forward && backward
}
