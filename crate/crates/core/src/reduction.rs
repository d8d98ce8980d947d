//! The encoding of a 3-SAT case as a midpoints structure `m_P`.
//!
//! `m_P` is built from the variable caterpillar `m₀` on
//! `X₀ = {x[v,s] : v ∈ [0,V+1], s = ±1}` and one 48-element clause gadget
//! per clause, attached with the combining operator through a map
//! `f: X_c → X₀`.

use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ground::{ElementId, GroundSet};
use crate::sat::SatCase;
use crate::structure::{combine_all, CombineMap, MidpointsStructure};

/// The order on `[0,3] × [-1,1]` of block `p = 0`. Block `p` uses the same
/// table on the relabeled pair `((q+p) mod 4, e)`, which is what the leaf
/// lengths of the explicit realization (and the `μ`-symmetry of its doubleton
/// edges) require.
pub const QE_ORDER: [(u8, i8); 12] =
    [(0, 0), (1, 0), (0, 1), (1, -1), (2, 0), (1, 1), (2, -1), (3, 0), (3, 1), (0, -1), (2, 1), (3, -1)];

/// Position of `(q, e)` in [`QE_ORDER`].
pub fn qe_rank(q: u8, e: i8) -> usize {
    QE_ORDER.iter().position(|&k| k == (q, e)).expect("q in 0..4 and e in -1..=1")
}

/// An element `(c, p, q, e)` of a clause gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GadgetIndex {
    pub c: u32,
    pub p: u8,
    pub q: u8,
    pub e: i8,
}

impl GadgetIndex {
    pub fn new(c: u32, p: u8, q: u8, e: i8) -> Result<Self> {
        if c == 0 || p > 3 || q > 3 || !(-1..=1).contains(&e) {
            return Err(Error::Range(format!("gadget index ({c},{p},{q},{e})")));
        }
        Ok(GadgetIndex { c, p, q, e })
    }

    /// `μ(p,q,e) = ((p+e) mod 4, (q+e) mod 4, -e)`, an involution.
    pub fn mu(self) -> Self {
        let m4 = |v: i8| v.rem_euclid(4) as u8;
        GadgetIndex { c: self.c, p: m4(self.p as i8 + self.e), q: m4(self.q as i8 + self.e), e: -self.e }
    }

    /// Position inside the 12-element block `p`.
    pub fn block_rank(self) -> usize {
        qe_rank((self.q + self.p) % 4, self.e)
    }

    /// Rank within the clause's 48 elements: by `p`, then [`Self::block_rank`].
    pub fn rank(self) -> usize {
        12 * self.p as usize + self.block_rank()
    }

    /// Inverse of [`Self::rank`].
    pub fn from_rank(c: u32, rank: usize) -> Self {
        let (q, e) = QE_ORDER[rank % 12];
        let p = (rank / 12) as u8;
        GadgetIndex { c, p, q: (q + 4 - p) % 4, e }
    }

    pub fn id(self) -> ElementId {
        ElementId::gadget(self.c, self.p, self.q, self.e)
    }

    /// Every index of clause `c` in gadget order.
    pub fn all(c: u32) -> impl Iterator<Item = GadgetIndex> {
        (0..48).map(move |r| GadgetIndex::from_rank(c, r))
    }
}

impl PartialOrd for GadgetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GadgetIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.c, self.rank()).cmp(&(other.c, other.rank()))
    }
}

/// Position of `x[v,s]` in `X₀`.
pub fn var_slot(v: usize, s: i8) -> usize {
    2 * v + usize::from(s == 1)
}

/// The variable caterpillar `m₀` on `2V + 4` elements.
///
/// For `x[v',s'] < x[v,s]` the midpoint is the tail `{x[u,r] : u ≥ v}` when
/// the two are consecutive across a vertex (`v' = v-1, s' = 1, s = -1`), and
/// the singleton `{x[v,s]}` otherwise.
pub fn build_m0(vars: usize) -> Result<MidpointsStructure> {
    if vars == 0 {
        return Err(Error::Range("V must be at least 1".into()));
    }
    let ids: Vec<ElementId> = (0..=vars + 1).flat_map(|v| [-1i8, 1].map(|s| ElementId::var(v as u32, s))).collect();
    let n = ids.len();
    let ground = Arc::new(GroundSet::new(ids)?);
    MidpointsStructure::new(ground, |lo, hi| {
        let (v_lo, s_lo) = (lo / 2, if lo % 2 == 1 { 1 } else { -1 });
        let (v_hi, s_hi) = (hi / 2, if hi % 2 == 1 { 1 } else { -1 });
        if v_lo + 1 == v_hi && s_lo == 1 && s_hi == -1 {
            ElementSet::from_indices(n, 2 * v_hi..n)
        } else {
            ElementSet::singleton(n, hi)
        }
    })
}

/// Whether `m{lower, upper}` is the singleton `{upper}` for `lower < upper`
/// in the clause gadget; otherwise it is the doubleton `{upper, μ upper}`.
fn gadget_singleton(lower: GadgetIndex, upper: GadgetIndex) -> bool {
    lower.p < upper.p
        || (lower.p == upper.p && lower.block_rank() < GadgetIndex { e: 0, ..upper }.block_rank())
        || (lower.p == upper.p && lower.q == upper.q && lower.e == 0 && upper.e == 1)
}

/// The 48-element clause gadget for clause `c`, elements `x[c,p,q,e]` in
/// gadget order.
pub fn clause_gadget_for(c: u32) -> Result<MidpointsStructure> {
    if c == 0 {
        return Err(Error::Range("clause indices start at 1".into()));
    }
    let idx: Vec<GadgetIndex> = GadgetIndex::all(c).collect();
    let ground = Arc::new(GroundSet::new(idx.iter().map(|g| g.id()).collect())?);
    MidpointsStructure::new(ground, |i, j| {
        if gadget_singleton(idx[i], idx[j]) {
            ElementSet::singleton(48, j)
        } else {
            ElementSet::from_indices(48, [j, idx[j].mu().rank()])
        }
    })
}

/// The clause gadget on `Y = [0,3] × [0,3] × [-1,1]`, labelled as clause 1.
pub fn clause_gadget() -> MidpointsStructure {
    clause_gadget_for(1).expect("clause 1 is in range")
}

/// `f(x[c,p,q,e])` as an element `(v, s)` of `X₀`.
pub fn f_target(case: &SatCase, g: GadgetIndex) -> (usize, i8) {
    let c = g.c as usize;
    let lit = |a: usize| (case.nu(c, a), case.sigma(c, a));
    let neg = |a: usize| (case.nu(c, a), -case.sigma(c, a));
    match (g.q, g.e) {
        (0, 0) => neg(0),
        (1, 0) => neg(1),
        (2, 0) => neg(2),
        (3, 0) => (0, 1),
        (0, -1) | (3, 1) => lit(0),
        (1, -1) | (0, 1) => lit(1),
        (2, -1) | (1, 1) => lit(2),
        (3, -1) | (2, 1) => (case.num_vars() + 1, 1),
        _ => unreachable!("q in 0..4, e in -1..=1"),
    }
}

/// `f` restricted to `X_c`, as a combine map into `X₀`.
pub fn build_f(case: &SatCase, c: usize, m0: &MidpointsStructure, gadget: &MidpointsStructure) -> Result<CombineMap> {
    if c == 0 || c > case.num_clauses() {
        return Err(Error::Range(format!("clause {c}")));
    }
    let image = GadgetIndex::all(c as u32)
        .map(|g| {
            let (v, s) = f_target(case, g);
            var_slot(v, s)
        })
        .collect();
    CombineMap::new(gadget.ground().clone(), m0.ground().clone(), image)
}

/// `m_P` together with the bookkeeping needed to address its elements.
#[derive(Clone, Debug)]
pub struct Encoding {
    case: SatCase,
    structure: MidpointsStructure,
    /// `f: X → X₀` as indices, identity on `X₀`.
    to_base: Vec<usize>,
}

/// Encodes `case` as `m_P := m₀ ∪_f m_1 ∪_f … ∪_f m_C` on
/// `2V + 4 + 48C` elements.
pub fn encode(case: &SatCase) -> Result<Encoding> {
    let m0 = build_m0(case.num_vars())?;
    let mut parts = Vec::with_capacity(case.num_clauses());
    let mut to_base: Vec<usize> = (0..m0.len()).collect();
    for c in 1..=case.num_clauses() {
        let gadget = clause_gadget_for(c as u32)?;
        let f = build_f(case, c, &m0, &gadget)?;
        to_base.extend((0..48).map(|y| f.apply(y)));
        parts.push((gadget, f));
    }
    let structure = combine_all(&m0, &parts)?;
    Ok(Encoding { case: case.clone(), structure, to_base })
}

impl Encoding {
    pub fn case(&self) -> &SatCase {
        &self.case
    }

    pub fn structure(&self) -> &MidpointsStructure {
        &self.structure
    }

    pub fn into_structure(self) -> MidpointsStructure {
        self.structure
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn base_len(&self) -> usize {
        2 * self.case.num_vars() + 4
    }

    /// Index of `x[v,s]`.
    pub fn var_index(&self, v: usize, s: i8) -> usize {
        var_slot(v, s)
    }

    /// Index of `x[c,p,q,e]`.
    pub fn gadget_index(&self, g: GadgetIndex) -> usize {
        self.base_len() + 48 * (g.c as usize - 1) + g.rank()
    }

    /// `f(x)` as an index into `X₀`.
    pub fn f(&self, x: usize) -> usize {
        self.to_base[x]
    }

    /// `f⁻¹(S)` for `S ⊆ X₀` given by base indices.
    pub fn preimage<I: IntoIterator<Item = usize>>(&self, base: I) -> ElementSet {
        let target = ElementSet::from_indices(self.len(), base);
        ElementSet::from_indices(self.len(), (0..self.len()).filter(|&x| target.contains(self.to_base[x])))
    }

    pub fn named_splits(&self) -> NamedSplits {
        NamedSplits::new(self)
    }
}

/// The sets `A[v,s] = f⁻¹{x[v,s]}`, `A[>v]` and `A[<v]` (preimages of the
/// variable elements above and below `v`).
#[derive(Clone, Debug)]
pub struct NamedSplits {
    vars: usize,
    a_vs: Vec<[ElementSet; 2]>,
    above: Vec<ElementSet>,
    below: Vec<ElementSet>,
}

impl NamedSplits {
    fn new(enc: &Encoding) -> Self {
        let vars = enc.case.num_vars();
        let a_vs = (0..=vars + 1).map(|v| [enc.preimage([var_slot(v, -1)]), enc.preimage([var_slot(v, 1)])]).collect();
        let above = (0..=vars + 1)
            .map(|v| enc.preimage((v + 1..=vars + 1).flat_map(|u| [var_slot(u, -1), var_slot(u, 1)])))
            .collect();
        let below =
            (0..=vars + 1).map(|v| enc.preimage((0..v).flat_map(|u| [var_slot(u, -1), var_slot(u, 1)]))).collect();
        NamedSplits { vars, a_vs, above, below }
    }

    pub fn num_vars(&self) -> usize {
        self.vars
    }

    /// `A[v,s]` for `v ∈ [0, V+1]`.
    pub fn a(&self, v: usize, s: i8) -> &ElementSet {
        &self.a_vs[v][usize::from(s == 1)]
    }

    /// `A[>v]`
    pub fn above(&self, v: usize) -> &ElementSet {
        &self.above[v]
    }

    /// `A[<v]`
    pub fn below(&self, v: usize) -> &ElementSet {
        &self.below[v]
    }

    /// The edge that resolves vertex `v` for truth value `s`: it joins
    /// `A[v,s]` with `A[<v]`.
    pub fn splitting_edge(&self, v: usize, s: i8) -> ElementSet {
        self.a(v, s).union(self.below(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::midpoints_geometry;

    fn example() -> SatCase {
        SatCase::parse_dimacs("p cnf 4 2\n2 -3 4 0\n1 2 3 0\n").unwrap()
    }

    fn names(m: &MidpointsStructure, s: &ElementSet) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|i| m.ground().get(i).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn mu_examples_and_involution() {
        let g = GadgetIndex::new(1, 0, 0, 1).unwrap();
        assert_eq!(g.mu(), GadgetIndex::new(1, 1, 1, -1).unwrap());
        let g = GadgetIndex::new(1, 3, 2, -1).unwrap();
        assert_eq!(g.mu(), GadgetIndex::new(1, 2, 1, 1).unwrap());
        for g in GadgetIndex::all(1) {
            assert_eq!(g.mu().mu(), g);
            if g.e != 0 {
                assert_ne!(g.mu().p, g.p);
            }
        }
        assert!(GadgetIndex::new(1, 4, 0, 0).is_err());
        assert!(GadgetIndex::new(0, 0, 0, 0).is_err());
    }

    #[test]
    fn qe_order_examples() {
        assert!(qe_rank(1, -1) < qe_rank(2, 0));
        assert!(qe_rank(2, 0) < qe_rank(1, 1));
        assert_eq!(qe_rank(0, 0), 0);
        assert_eq!(qe_rank(3, -1), 11);
    }

    #[test]
    fn m0_examples() {
        let m0 = build_m0(4).unwrap();
        assert_eq!(m0.len(), 12);
        assert!(m0.validate().is_ok());
        let s = m0.mid(var_slot(0, 1), var_slot(2, 1));
        assert_eq!(names(&m0, s), vec!["x[2,1]"]);
        let s = m0.mid(var_slot(3, 1), var_slot(4, -1));
        assert_eq!(names(&m0, s), vec!["x[4,-1]", "x[4,1]", "x[5,-1]", "x[5,1]"]);
        assert!(build_m0(0).is_err());
    }

    #[test]
    fn gadget_pairs() {
        let m = clause_gadget();
        assert!(m.validate().is_ok());
        let at = |p, q, e| GadgetIndex::new(1, p, q, e).unwrap().rank();
        assert_eq!(names(&m, m.mid(at(0, 0, 0), at(0, 0, 1))), vec!["x[1,0,0,1]"]);
        assert_eq!(names(&m, m.mid(at(0, 0, 1), at(0, 1, -1))), vec!["x[1,0,1,-1]", "x[1,3,0,1]"]);
        let doubletons: std::collections::BTreeSet<_> =
            m.pairs().filter(|(_, _, s)| s.len() == 2).map(|(_, _, s)| s.clone()).collect();
        assert_eq!(doubletons.len(), 16);
        assert!(m.pairs().all(|(_, _, s)| s.len() <= 2));
    }

    #[test]
    fn gadget_geometry_is_star_plus_sixteen() {
        let m = clause_gadget();
        let geo = midpoints_geometry(&m);
        assert_eq!(geo.len(), 48 + 16);
    }

    #[test]
    fn f_is_mu_invariant() {
        let p = example();
        for c in 1..=2 {
            for g in GadgetIndex::all(c) {
                assert_eq!(f_target(&p, g), f_target(&p, g.mu()));
            }
        }
    }

    #[test]
    fn example_preimages() {
        let p = example();
        let enc = encode(&p).unwrap();
        let m = enc.structure();
        assert_eq!(enc.len(), 108);
        let pre = |v, s| names(m, &enc.preimage([var_slot(v, s)]));
        let mut want01: Vec<String> = vec!["x[0,1]".into()];
        for c in 1..=2 {
            for p in 0..4 {
                want01.push(format!("x[{c},{p},3,0]"));
            }
        }
        want01.sort();
        assert_eq!(pre(0, 1), want01);
        let mut want11: Vec<String> = vec!["x[1,1]".into()];
        for p in 0..4 {
            want11.push(format!("x[2,{p},0,-1]"));
            want11.push(format!("x[2,{p},3,1]"));
        }
        want11.sort();
        assert_eq!(pre(1, 1), want11);
        let mut want1m: Vec<String> = vec!["x[1,-1]".into()];
        for p in 0..4 {
            want1m.push(format!("x[2,{p},0,0]"));
        }
        want1m.sort();
        assert_eq!(pre(1, -1), want1m);
    }

    #[test]
    fn encoding_structure_rules() {
        let p = example();
        let enc = encode(&p).unwrap();
        let m = enc.structure();
        assert!(m.validate().is_ok());
        let m0 = build_m0(4).unwrap();
        // X₀ pairs: m₀ value plus its preimage
        for (i, j, s0) in m0.pairs() {
            let want = enc.preimage(s0.iter());
            assert_eq!(m.mid(i, j), &want);
        }
        // cross pairs: the gadget element
        let y = enc.gadget_index(GadgetIndex::new(2, 1, 3, -1).unwrap());
        assert_eq!(m.mid(3, y), &ElementSet::singleton(108, y));
        // pairs from different clauses: the larger element
        let y1 = enc.gadget_index(GadgetIndex::new(1, 3, 3, 1).unwrap());
        assert_eq!(m.mid(y1, y), &ElementSet::singleton(108, y));
    }

    #[test]
    fn empty_case_is_m0() {
        let p = SatCase::new(1, vec![]).unwrap();
        let enc = encode(&p).unwrap();
        assert_eq!(enc.structure(), &build_m0(1).unwrap());
        assert_eq!(enc.len(), 6);
    }

    #[test]
    fn named_splits_partition() {
        let p = example();
        let enc = encode(&p).unwrap();
        let ns = enc.named_splits();
        for v in 1..=4 {
            for s in [-1i8, 1] {
                let blocks = [ns.a(v, s), ns.a(v, -s), ns.above(v), ns.below(v)];
                let total: usize = blocks.iter().map(|b| b.len()).sum();
                assert_eq!(total, 108);
                let mut u = ElementSet::empty(108);
                for b in blocks {
                    u.union_with(b);
                }
                assert!(u.is_full());
            }
            // A[>v] is the complement of A[<v+1]
            assert_eq!(ns.above(v), &ns.below(v + 1).complement());
        }
        // A[v,s] and A[>v] are midpoint sets of m_P
        let m = enc.structure();
        for v in 1..=4 {
            assert_eq!(m.mid(var_slot(v, 1), var_slot(v - 1, 1)), ns.a(v, 1));
            assert_eq!(m.mid(var_slot(v, 1), var_slot(v + 1, -1)), ns.above(v));
        }
    }
}
