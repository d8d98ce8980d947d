//! Splits, tree metrics, edge intervals and interval path sums.
//!
//! A tree metric assigns a length to each unoriented edge, where an edge is
//! identified with the bipartition of the leaves it induces. Interval
//! membership follows the chain condition: `U ∈ [S, T]` iff for some choice
//! of sides `S^e ⊆ U^g ⊆ T^f`. Because both orientations `U` and `U^c` of a
//! member edge satisfy the chain, path sums count every member edge twice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::scalar::{from_usize, Scalar};
use crate::structure::MidpointsStructure;

/// An unoriented bipartition of the ground set, stored as the side that does
/// not contain element 0. The trivial split is not representable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    side: ElementSet,
}

impl Split {
    /// Split with `subset` as one of its sides. Fails for `∅` and the whole
    /// ground set.
    pub fn new(subset: &ElementSet) -> Result<Self> {
        if subset.is_empty() || subset.is_full() {
            return Err(Error::InvalidInput("trivial split".into()));
        }
        let side = if subset.contains(0) { subset.complement() } else { subset.clone() };
        Ok(Split { side })
    }

    /// Leaf edge `{x}`.
    pub fn leaf(universe: usize, x: usize) -> Self {
        Split::new(&ElementSet::singleton(universe, x)).expect("ground set has >= 2 elements")
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Result<Self> {
        Split::new(&ElementSet::from_indices(universe, it))
    }

    /// The canonical side (never contains element 0).
    pub fn side(&self) -> &ElementSet {
        &self.side
    }

    pub fn universe(&self) -> usize {
        self.side.universe()
    }

    /// The side containing `x`.
    pub fn side_containing(&self, x: usize) -> ElementSet {
        if self.side.contains(x) {
            self.side.clone()
        } else {
            self.side.complement()
        }
    }

    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.side.contains(x) != self.side.contains(y)
    }

    /// Both sides, canonical first.
    pub fn sides(&self) -> [ElementSet; 2] {
        [self.side.clone(), self.side.complement()]
    }

    /// `true` for a leaf edge.
    pub fn is_leaf(&self) -> bool {
        let k = self.side.len();
        k == 1 || k + 1 == self.universe()
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        let names: Vec<String> = self.side.iter().map(|i| ground.get(i).to_string()).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Split{:?}", self.side)
    }
}

/// Two splits are compatible when some pair of their sides is disjoint.
pub fn is_compatible(s: &Split, t: &Split) -> bool {
    let (a, ac) = (s.side(), s.side().complement());
    let (b, bc) = (t.side(), t.side().complement());
    a.is_disjoint(b) || a.is_disjoint(&bc) || ac.is_disjoint(b) || ac.is_disjoint(&bc)
}

/// The chain condition `S^e ⊆ U^g ⊆ T^f` for some sides.
pub fn in_closed_interval(s: &Split, t: &Split, u: &Split) -> bool {
    let ss = s.sides();
    let ts = t.sides();
    let us = u.sides();
    us.iter().any(|ug| ss.iter().any(|se| se.is_subset(ug)) && ts.iter().any(|tf| ug.is_subset(tf)))
}

/// The relation `S:U:T`, i.e. `U ∈ [S, T]`.
pub fn betweenness(s: &Split, u: &Split, t: &Split) -> bool {
    in_closed_interval(s, t, u)
}

/// An interval of edges between `start` and `end`, each end open or closed.
/// Excluding an end removes that edge in both orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInterval {
    pub start: Split,
    pub end: Split,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl EdgeInterval {
    /// `[S, T]`
    pub fn closed(start: Split, end: Split) -> Self {
        EdgeInterval { start, end, start_closed: true, end_closed: true }
    }

    /// `[S, T)`
    pub fn half_open(start: Split, end: Split) -> Self {
        EdgeInterval { start, end, start_closed: true, end_closed: false }
    }

    /// `(S, T)`
    pub fn open(start: Split, end: Split) -> Self {
        EdgeInterval { start, end, start_closed: false, end_closed: false }
    }

    pub fn contains(&self, u: &Split) -> bool {
        if !self.start_closed && *u == self.start {
            return false;
        }
        if !self.end_closed && *u == self.end {
            return false;
        }
        in_closed_interval(&self.start, &self.end, u)
    }
}

/// Whether interval sums count each member edge once per subset orientation
/// (the default, matching the identities used throughout) or once per edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SumConvention {
    #[default]
    BothOrientations,
    SingleOrientation,
}

impl SumConvention {
    pub fn factor(self) -> usize {
        match self {
            SumConvention::BothOrientations => 2,
            SumConvention::SingleOrientation => 1,
        }
    }
}

/// A sparse assignment of nonnegative lengths to splits.
///
/// Entries with length zero are kept: they belong to the topology without
/// contributing to any sum. The support is the set of positive entries.
#[derive(Clone, PartialEq)]
pub struct TreeMetric<T: Scalar> {
    ground: Arc<GroundSet>,
    lengths: BTreeMap<Split, T>,
}

/// An incompatible pair of positive-length edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompatiblePair(pub Split, pub Split);

impl<T: Scalar> TreeMetric<T> {
    pub fn new(ground: Arc<GroundSet>) -> Self {
        TreeMetric { ground, lengths: BTreeMap::new() }
    }

    /// Builds from `(split, length)` entries; negative lengths are rejected
    /// and repeated splits are summed.
    pub fn from_lengths<I>(ground: Arc<GroundSet>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Split, T)>,
    {
        let mut t = TreeMetric::new(ground);
        for (s, len) in entries {
            t.add_length(s, len)?;
        }
        Ok(t)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn universe(&self) -> usize {
        self.ground.len()
    }

    /// Sets the length of `s`, replacing any previous value.
    pub fn set_length(&mut self, s: Split, len: T) -> Result<()> {
        if len < T::zero() {
            return Err(Error::Nonnegativity(s.render(&self.ground)));
        }
        assert_eq!(s.universe(), self.universe(), "split over the wrong ground set");
        self.lengths.insert(s, len);
        Ok(())
    }

    /// Adds `len` to the length of `s`.
    pub fn add_length(&mut self, s: Split, len: T) -> Result<()> {
        let cur = self.lengths.get(&s).cloned().unwrap_or_else(T::zero);
        self.set_length(s, cur + len)
    }

    /// `t(S)`; zero for splits not in the topology.
    pub fn length(&self, s: &Split) -> T {
        self.lengths.get(s).cloned().unwrap_or_else(T::zero)
    }

    /// Length of the edge with `subset` as one side (zero for trivial sets).
    pub fn length_of_set(&self, subset: &ElementSet) -> T {
        Split::new(subset).map(|s| self.length(&s)).unwrap_or_else(|_| T::zero())
    }

    /// All topology entries, including zero-length ones.
    pub fn entries(&self) -> impl Iterator<Item = (&Split, &T)> {
        self.lengths.iter()
    }

    /// Positive-length edges.
    pub fn support(&self) -> impl Iterator<Item = (&Split, &T)> {
        self.lengths.iter().filter(|(_, l)| l.is_positive_strict())
    }

    pub fn support_set(&self) -> BTreeSet<Split> {
        self.support().map(|(s, _)| s.clone()).collect()
    }

    /// Reports every incompatible pair of positive-length edges.
    pub fn validate(&self) -> Vec<IncompatiblePair> {
        let sup: Vec<&Split> = self.support().map(|(s, _)| s).collect();
        let mut bad = Vec::new();
        for (i, a) in sup.iter().enumerate() {
            for b in &sup[i + 1..] {
                if !is_compatible(a, b) {
                    bad.push(IncompatiblePair((*a).clone(), (*b).clone()));
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Whether `s` could be an edge (possibly of length zero) of this tree.
    pub fn is_aligned(&self, s: &Split) -> bool {
        self.support().all(|(u, _)| is_compatible(s, u))
    }

    /// Edges of the interval drawn from the topology plus its two endpoints.
    pub fn interval_members(&self, interval: &EdgeInterval) -> Result<Vec<Split>> {
        for end in [&interval.start, &interval.end] {
            if !self.is_aligned(end) {
                return Err(Error::Disconnected(end.render(&self.ground)));
            }
        }
        let mut candidates: BTreeSet<&Split> = self.lengths.keys().collect();
        candidates.insert(&interval.start);
        candidates.insert(&interval.end);
        Ok(candidates.into_iter().filter(|u| interval.contains(u)).cloned().collect())
    }

    /// `t_W` over the interval, counting both orientations of each edge.
    pub fn path_sum(&self, interval: &EdgeInterval) -> Result<T> {
        self.path_sum_with(interval, SumConvention::BothOrientations)
    }

    pub fn path_sum_with(&self, interval: &EdgeInterval, conv: SumConvention) -> Result<T> {
        let members = self.interval_members(interval)?;
        let total = members.iter().fold(T::zero(), |acc, u| acc + self.length(u));
        Ok(total * from_usize::<T>(conv.factor()))
    }

    /// Distance between leaves `x` and `y`.
    pub fn leaf_distance(&self, x: usize, y: usize) -> Result<T> {
        if x == y {
            return Ok(T::zero());
        }
        let n = self.universe();
        let sum = self.path_sum_with(
            &EdgeInterval::closed(Split::leaf(n, x), Split::leaf(n, y)),
            SumConvention::SingleOrientation,
        )?;
        Ok(sum)
    }

    /// All leaf distances, computed as the total length of separating edges.
    /// Agrees with [`Self::leaf_distance`] on valid trees.
    pub fn distance_matrix(&self) -> Vec<Vec<T>> {
        let n = self.universe();
        let mut d = vec![vec![T::zero(); n]; n];
        for (s, len) in self.support() {
            let side = s.side();
            for x in side.iter() {
                for y in (0..n).filter(|&y| !side.contains(y)) {
                    d[x][y] = d[x][y].clone() + len.clone();
                    d[y][x] = d[y][x].clone() + len.clone();
                }
            }
        }
        d
    }

    /// Same ground set, lengths mapped through `f`.
    pub fn map_lengths<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> TreeMetric<U> {
        TreeMetric {
            ground: self.ground.clone(),
            lengths: self.lengths.iter().map(|(s, l)| (s.clone(), f(l))).collect(),
        }
    }
}

impl<T: Scalar> fmt::Debug for TreeMetric<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for (s, l) in &self.lengths {
            d.entry(&s.render(&self.ground), &l.to_string());
        }
        d.finish()
    }
}

/// The edges every realization of `m` must contain with positive length (the
/// midpoint edges) together with all leaf edges.
pub fn midpoints_geometry(m: &MidpointsStructure) -> BTreeSet<Split> {
    let n = m.len();
    let mut out: BTreeSet<Split> = (0..n).map(|x| Split::leaf(n, x)).collect();
    out.extend(midpoint_edges(m));
    out
}

/// The image of `m` as unoriented splits.
pub fn midpoint_edges(m: &MidpointsStructure) -> BTreeSet<Split> {
    m.pairs().filter_map(|(_, _, s)| Split::new(s).ok()).collect()
}

/// The structure a generic tree induces: `m{x,y}` is the set of elements
/// strictly closer to `max{x,y}` than to `min{x,y}`.
pub fn derive_from_tree<T: Scalar>(t: &TreeMetric<T>) -> Result<MidpointsStructure> {
    let bad = t.validate();
    if let Some(IncompatiblePair(a, b)) = bad.first() {
        return Err(Error::InvalidInput(format!(
            "incompatible edges {} and {}",
            a.render(t.ground()),
            b.render(t.ground())
        )));
    }
    let n = t.universe();
    let d = t.distance_matrix();
    let ground = t.ground().clone();
    let mut tie = None;
    let m = MidpointsStructure::from_fn(ground.clone(), |x, y| {
        let mut s = ElementSet::empty(n);
        for z in 0..n {
            if d[z][y] < d[z][x] {
                s.insert(z);
            } else if d[z][y] == d[z][x] && tie.is_none() {
                tie = Some((z, x, y));
            }
        }
        s
    });
    if let Some((z, x, y)) = tie {
        return Err(Error::GenericTie {
            z: ground.get(z).to_string(),
            x: ground.get(x).to_string(),
            y: ground.get(y).to_string(),
        });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn split(n: usize, idx: &[usize]) -> Split {
        Split::from_indices(n, idx.iter().copied()).unwrap()
    }

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn caterpillar() -> TreeMetric<Rational> {
        // 0|123, 01|23, 012|3 and the two middle leaf edges, all length 1
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        TreeMetric::from_lengths(
            g,
            [
                (split(4, &[0]), r(1)),
                (split(4, &[1]), r(1)),
                (split(4, &[2]), r(1)),
                (split(4, &[3]), r(1)),
                (split(4, &[0, 1]), r(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(split(4, &[0]), split(4, &[1, 2, 3]));
        assert!(Split::from_indices(4, []).is_err());
        assert!(Split::from_indices(4, 0..4).is_err());
        assert!(split(4, &[0]).is_leaf());
        assert!(!split(4, &[0, 1]).is_leaf());
    }

    #[test]
    fn compatibility_examples() {
        assert!(is_compatible(&split(4, &[1]), &split(4, &[1, 2])));
        assert!(!is_compatible(&split(4, &[1, 2]), &split(4, &[2, 3])));
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        let bad = TreeMetric::from_lengths(
            g,
            [(split(4, &[1, 2]), r(1)), (split(4, &[2, 3]), r(1)), (split(4, &[1, 3]), r(0))],
        )
        .unwrap();
        assert_eq!(bad.validate().len(), 1);
    }

    #[test]
    fn betweenness_examples() {
        assert!(betweenness(&split(4, &[1]), &split(4, &[1, 2]), &split(4, &[1, 2, 3])));
        assert!(!betweenness(&split(4, &[1]), &split(4, &[2, 3]), &split(4, &[1, 2])));
    }

    #[test]
    fn caterpillar_intervals() {
        let t = caterpillar();
        // {0|123} and {012|3} are the end leaf edges; {01|23} is the spine
        let all = t.interval_members(&EdgeInterval::closed(split(4, &[0]), split(4, &[3]))).unwrap();
        let mut want = vec![split(4, &[0]), split(4, &[0, 1]), split(4, &[3])];
        want.sort();
        assert_eq!(all, want);
        let half = t.interval_members(&EdgeInterval::half_open(split(4, &[0]), split(4, &[0, 1, 2]))).unwrap();
        assert!(!half.contains(&split(4, &[3])));
        assert!(half.contains(&split(4, &[0])));
    }

    #[test]
    fn path_sum_counts_both_orientations() {
        let t = caterpillar();
        // open interval between the adjacent leaf edges {0} and {3} crosses one
        // unit spine edge
        assert_eq!(t.path_sum(&EdgeInterval::open(split(4, &[0]), split(4, &[3]))).unwrap(), r(2));
        let leaf = split(4, &[2]);
        assert_eq!(t.path_sum(&EdgeInterval::closed(leaf.clone(), leaf)).unwrap(), r(2));
    }

    #[test]
    fn star_distances() {
        let g = Arc::new(GroundSet::named(&["a", "b", "c"]).unwrap());
        let t = TreeMetric::from_lengths(g, [(split(3, &[0]), r(1)), (split(3, &[1]), r(2)), (split(3, &[2]), r(3))])
            .unwrap();
        assert_eq!(t.leaf_distance(0, 1).unwrap(), r(3));
        assert_eq!(t.leaf_distance(1, 1).unwrap(), r(0));
        let d = t.distance_matrix();
        assert_eq!(d[1][2], r(5));
        let m = derive_from_tree(&t).unwrap();
        assert_eq!(m.mid(0, 1), &ElementSet::from_indices(3, [1]));
        assert_eq!(m.mid(0, 2), &ElementSet::from_indices(3, [2]));
        assert_eq!(m.mid(1, 2), &ElementSet::from_indices(3, [2]));
    }

    #[test]
    fn ties_are_rejected() {
        let g = Arc::new(GroundSet::named(&["a", "b", "c"]).unwrap());
        let t = TreeMetric::from_lengths(g, [(split(3, &[0]), r(1)), (split(3, &[1]), r(2)), (split(3, &[2]), r(2))])
            .unwrap();
        assert_eq!(derive_from_tree(&t).unwrap_err().code(), "GENERIC_TIE");
    }

    #[test]
    fn disconnected_interval() {
        let t = caterpillar();
        let err = t.path_sum(&EdgeInterval::closed(split(4, &[0, 2]), split(4, &[3]))).unwrap_err();
        assert_eq!(err.code(), "DISCONNECTED");
    }

    #[test]
    fn negative_lengths_rejected() {
        let g = Arc::new(GroundSet::numbered(3).unwrap());
        let mut t = TreeMetric::<Rational>::new(g);
        assert_eq!(t.set_length(split(3, &[1]), r(-1)).unwrap_err().code(), "NONNEGATIVITY");
    }
}
