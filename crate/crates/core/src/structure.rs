//! Midpoints and triples structures, their axioms, the conversions between
//! them, and the combining operator `m ∪_f n`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ground::GroundSet;

#[inline]
fn pair_slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// A map from unordered pairs `{x, y}` to subsets of the ground set.
///
/// The axiom is `{max{x,y}} = {x,y} ∩ m{x,y}`: the midpoint set is the side of
/// the midpoint edge containing the larger element. Instances built with
/// [`MidpointsStructure::from_fn`] are not checked; call
/// [`MidpointsStructure::validate`] or use [`MidpointsStructure::new`].
#[derive(Clone, PartialEq, Eq)]
pub struct MidpointsStructure {
    ground: Arc<GroundSet>,
    mids: Vec<ElementSet>,
}

/// One failed axiom clause of a midpoints structure, for the pair `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MidpointViolation {
    MaxMissing { lo: usize, hi: usize },
    MinPresent { lo: usize, hi: usize },
}

/// One failed axiom of a triples structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriplesViolation {
    /// `x <_z x` is set.
    Reflexive { anchor: usize, x: usize },
    /// `x <_x y` is missing.
    NotSelfClosest { x: usize, y: usize },
    /// Both `x <_z y` and `y <_z x`.
    BothDirections { anchor: usize, x: usize, y: usize },
    /// Neither `x <_z y` nor `y <_z x`.
    Incomparable { anchor: usize, x: usize, y: usize },
}

/// Result of an axiom check: empty means valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl MidpointsStructure {
    /// Builds the structure from `mid(i, j)` for every `i < j`, without
    /// validating it.
    pub fn from_fn<F>(ground: Arc<GroundSet>, mut mid: F) -> Self
    where
        F: FnMut(usize, usize) -> ElementSet,
    {
        let n = ground.len();
        let mut mids = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let s = mid(i, j);
                assert_eq!(s.universe(), n, "midpoint set over the wrong universe");
                mids.push(s);
            }
        }
        MidpointsStructure { ground, mids }
    }

    /// Like [`Self::from_fn`] but rejects structures violating the axiom.
    pub fn new<F>(ground: Arc<GroundSet>, mid: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> ElementSet,
    {
        let m = Self::from_fn(ground, mid);
        m.ensure_valid()?;
        Ok(m)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// `m{x, y}`; order of the arguments does not matter.
    pub fn mid(&self, x: usize, y: usize) -> &ElementSet {
        assert_ne!(x, y, "midpoint of an element with itself");
        let (i, j) = if x < y { (x, y) } else { (y, x) };
        &self.mids[pair_slot(self.len(), i, j)]
    }

    /// All `(i, j, m{i,j})` with `i < j`, in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &ElementSet)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.mid(i, j))))
    }

    pub fn validate(&self) -> ValidationReport<MidpointViolation> {
        let mut violations = Vec::new();
        for (lo, hi, s) in self.pairs() {
            if !s.contains(hi) {
                violations.push(MidpointViolation::MaxMissing { lo, hi });
            }
            if s.contains(lo) {
                violations.push(MidpointViolation::MinPresent { lo, hi });
            }
        }
        ValidationReport { violations }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidInput(format!("midpoints axiom fails: {v:?}"))),
        }
    }

    /// Per-anchor closer-than relations carrying the same information.
    pub fn to_triples(&self) -> Result<TriplesStructure> {
        self.ensure_valid()?;
        let n = self.len();
        let mut closer = vec![ElementSet::empty(n); n * n];
        for (lo, hi, s) in self.pairs() {
            for z in 0..n {
                if s.contains(z) {
                    closer[z * n + hi].insert(lo);
                } else {
                    closer[z * n + lo].insert(hi);
                }
            }
        }
        Ok(TriplesStructure { ground: self.ground.clone(), closer })
    }

    /// Uniform random valid structure: each pair independently takes one of
    /// the `2^(n-2)` legal midpoint sets.
    pub fn random<R: Rng + ?Sized>(ground: Arc<GroundSet>, rng: &mut R) -> Self {
        let n = ground.len();
        Self::from_fn(ground, |i, j| {
            let mut s = ElementSet::singleton(n, j);
            for z in (0..n).filter(|&z| z != i && z != j) {
                if rng.gen_bool(0.5) {
                    s.insert(z);
                }
            }
            s
        })
    }

    /// Every valid structure on `ground`, in a fixed order. Only sensible for
    /// very small ground sets: there are `2^((n-2)·n(n-1)/2)` of them.
    pub fn enumerate_all(ground: Arc<GroundSet>) -> impl Iterator<Item = MidpointsStructure> {
        let n = ground.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let bits_per_pair = n - 2;
        let total_bits = bits_per_pair * pairs.len();
        assert!(total_bits < 63, "too many structures to enumerate");
        (0u64..1 << total_bits).map(move |code| {
            let mut k = 0;
            Self::from_fn(ground.clone(), |i, j| {
                let mut s = ElementSet::singleton(n, j);
                let others = (0..n).filter(|&z| z != i && z != j);
                for z in others {
                    if code >> k & 1 == 1 {
                        s.insert(z);
                    }
                    k += 1;
                }
                s
            })
        })
    }
}

impl fmt::Debug for MidpointsStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for (i, j, s) in self.pairs() {
            d.entry(&(i, j), s);
        }
        d.finish()
    }
}

/// For each anchor `z`, a relation `<_z` saying which of two elements is
/// closer to `z`. Transitivity is not part of the axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriplesStructure {
    ground: Arc<GroundSet>,
    /// `closer[z * n + x]` holds every `y` with `x <_z y`.
    closer: Vec<ElementSet>,
}

impl TriplesStructure {
    /// Builds from an explicit relation list `(z, x, y)` meaning `x <_z y`,
    /// without validating it.
    pub fn from_relations<I>(ground: Arc<GroundSet>, rel: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let n = ground.len();
        let mut closer = vec![ElementSet::empty(n); n * n];
        for (z, x, y) in rel {
            closer[z * n + x].insert(y);
        }
        TriplesStructure { ground, closer }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// `x <_z y`.
    pub fn closer(&self, z: usize, x: usize, y: usize) -> bool {
        self.closer[z * self.len() + x].contains(y)
    }

    pub fn set(&mut self, z: usize, x: usize, y: usize, value: bool) {
        let n = self.len();
        if value {
            self.closer[z * n + x].insert(y);
        } else {
            self.closer[z * n + x].remove(y);
        }
    }

    /// Every `(z, x, y)` with `x <_z y`, in index order.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |z| (0..n).flat_map(move |x| self.closer[z * n + x].iter().map(move |y| (z, x, y))))
    }

    pub fn validate(&self) -> ValidationReport<TriplesViolation> {
        let n = self.len();
        let mut violations = Vec::new();
        for z in 0..n {
            for x in 0..n {
                if self.closer(z, x, x) {
                    violations.push(TriplesViolation::Reflexive { anchor: z, x });
                }
                for y in x + 1..n {
                    match (self.closer(z, x, y), self.closer(z, y, x)) {
                        (true, true) => violations.push(TriplesViolation::BothDirections { anchor: z, x, y }),
                        (false, false) => violations.push(TriplesViolation::Incomparable { anchor: z, x, y }),
                        _ => {}
                    }
                }
            }
        }
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                if !self.closer(x, x, y) {
                    violations.push(TriplesViolation::NotSelfClosest { x, y });
                }
            }
        }
        ValidationReport { violations }
    }

    /// `m{x,y} = {z : y <_z x}` for `x < y`.
    pub fn to_midpoints(&self) -> Result<MidpointsStructure> {
        let report = self.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidInput(format!("triples axiom fails: {v:?}")));
        }
        let n = self.len();
        Ok(MidpointsStructure::from_fn(self.ground.clone(), |x, y| {
            ElementSet::from_indices(n, (0..n).filter(|&z| self.closer(z, y, x)))
        }))
    }
}

/// An assignment `f: Y → X` used to attach the structure on `Y` to the one on
/// `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombineMap {
    source: Arc<GroundSet>,
    target: Arc<GroundSet>,
    image: Vec<usize>,
}

impl CombineMap {
    pub fn new(source: Arc<GroundSet>, target: Arc<GroundSet>, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.len() {
            return Err(Error::InvalidInput(format!(
                "map defined on {} of {} source elements",
                image.len(),
                source.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&x| x >= target.len()) {
            return Err(Error::Range(format!("image index {bad} outside target")));
        }
        Ok(CombineMap { source, target, image })
    }

    pub fn source(&self) -> &Arc<GroundSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GroundSet> {
        &self.target
    }

    pub fn apply(&self, y: usize) -> usize {
        self.image[y]
    }

    /// `f⁻¹(set)` as a subset of the source.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.source.len(),
            self.image.iter().enumerate().filter(|(_, &x)| set.contains(x)).map(|(y, _)| y),
        )
    }
}

/// `m ∪_f n` on `X ∪ Y`, with every element of `X` below every element of `Y`:
///
/// * `{x, x'}` ↦ `m{x,x'} ∪ f⁻¹ m{x,x'}`
/// * `{x, y}` ↦ `{y}`
/// * `{y, y'}` ↦ `n{y,y'}`
pub fn combine(m: &MidpointsStructure, n: &MidpointsStructure, f: &CombineMap) -> Result<MidpointsStructure> {
    m.ensure_valid()?;
    n.ensure_valid()?;
    if **f.source() != **n.ground() || **f.target() != **m.ground() {
        return Err(Error::InvalidInput("combine map does not match the structures".into()));
    }
    let ground = Arc::new(m.ground().concat(n.ground())?);
    let nx = m.len();
    let total = ground.len();
    let shift = |s: &ElementSet| {
        let mut out = ElementSet::empty(total);
        for y in s.iter() {
            out.insert(nx + y);
        }
        out
    };
    Ok(MidpointsStructure::from_fn(ground, |i, j| {
        if j < nx {
            let base = m.mid(i, j);
            let mut s = base.widen(total);
            s.union_with(&shift(&f.preimage(base)));
            s
        } else if i < nx {
            ElementSet::singleton(total, j)
        } else {
            shift(n.mid(i - nx, j - nx))
        }
    }))
}

/// Sequentially combines `parts` onto `base`; an empty list returns `base`.
pub fn combine_all(
    base: &MidpointsStructure,
    parts: &[(MidpointsStructure, CombineMap)],
) -> Result<MidpointsStructure> {
    let mut acc = base.clone();
    for (n, f) in parts {
        // Each map targets the base; lift it onto the accumulated ground set,
        // whose prefix is the base.
        let lifted =
            CombineMap::new(n.ground().clone(), acc.ground().clone(), (0..n.len()).map(|y| f.apply(y)).collect())?;
        if **f.target() != **base.ground() {
            return Err(Error::InvalidInput("combine map must target the base structure".into()));
        }
        acc = combine(&acc, n, &lifted)?;
    }
    Ok(acc)
}
