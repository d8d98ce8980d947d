//! Explicit realization of `m_P` from a satisfying assignment.
//!
//! A base vector assigns scale-separated powers of ten to the edges of the
//! midpoints geometry plus one length-6 splitting edge per variable. It
//! realizes every pair except lexicographically adjacent elements within a
//! 12-element gadget block; a correction on the gadget leaf edges fixes those,
//! and succeeds exactly when every clause has at least one true literal.

use std::collections::BTreeMap;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::realization::{check_realization, RealizationReport};
use crate::reduction::{Encoding, GadgetIndex, NamedSplits};
use crate::sat::Assignment;
use crate::scalar::{from_usize, Scalar};
use crate::tree::{Split, TreeMetric};

/// Readings of the construction that differ from the default one. Only used
/// to demonstrate that the alternatives fail verification.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstructionOptions {
    /// Attach `A[v,h(v)]` to `A[>v]` instead of `A[<v]`.
    pub splitting_toward_above: bool,
    /// Use twice the leaf distance as the correction offset.
    pub doubled_offset: bool,
}

/// The three pieces of the construction.
#[derive(Clone, Debug)]
pub struct RealizationPlan<T: Scalar> {
    pub base: TreeMetric<T>,
    /// Leaf-edge adjustments, keyed by gadget element index.
    pub correction: BTreeMap<usize, T>,
    pub result: TreeMetric<T>,
}

fn check_assignment(enc: &Encoding, h: &Assignment) -> Result<()> {
    if h.num_vars() != enc.case().num_vars() {
        return Err(Error::Range(format!(
            "assignment has {} variables, case has {}",
            h.num_vars(),
            enc.case().num_vars()
        )));
    }
    Ok(())
}

fn splitting_edge(ns: &NamedSplits, v: usize, s: i8, opts: ConstructionOptions) -> ElementSet {
    if opts.splitting_toward_above {
        ns.a(v, s).union(ns.above(v))
    } else {
        ns.splitting_edge(v, s)
    }
}

/// The base vector `t` for assignment `h` (satisfying or not).
pub fn base_vector<T: Scalar>(enc: &Encoding, h: &Assignment) -> Result<TreeMetric<T>> {
    base_vector_with(enc, h, ConstructionOptions::default())
}

pub fn base_vector_with<T: Scalar>(enc: &Encoding, h: &Assignment, opts: ConstructionOptions) -> Result<TreeMetric<T>> {
    check_assignment(enc, h)?;
    let vars = enc.case().num_vars() as u32;
    let clauses = enc.case().num_clauses() as u32;
    let n = enc.len();
    let ns = enc.named_splits();
    let mut entries: BTreeMap<Split, T> = BTreeMap::new();
    let mut put = |set: &ElementSet, len: T| -> Result<()> {
        let s = Split::new(set)?;
        if let Some(prev) = entries.insert(s.clone(), len.clone()) {
            if prev != len {
                return Err(Error::InvalidInput(format!("edge assigned two different lengths {prev} and {len}")));
            }
        }
        Ok(())
    };
    for v in 1..=vars as usize {
        put(&splitting_edge(&ns, v, h.value(v), opts), T::from_int(6))?;
    }
    for v in 0..=vars as usize {
        put(ns.above(v), T::pow10(vars))?;
    }
    for v in 0..=vars as usize + 1 {
        for s in [-1i8, 1] {
            let exp = vars + v as u32 + u32::from(s == 1);
            put(ns.a(v, s), T::pow10(exp))?;
        }
    }
    for c in 1..=clauses {
        for g in GadgetIndex::all(c) {
            let x = enc.gadget_index(g);
            let cyc = |k: i32| (k.rem_euclid(4)) as u32;
            let k = 2 * vars + 4 * c;
            let p = g.p as i32;
            let q = g.q as i32;
            let e = g.e as i32;
            if g.e != 0 {
                let y = enc.gadget_index(g.mu());
                put(&ElementSet::from_indices(n, [x, y]), T::pow10(k + cyc(p + q + e)))?;
            }
            let mut leaf =
                T::pow10(2 * vars + 4 * clauses + 4 + 4 * c + g.p as u32) + T::from_int(2) * T::pow10(k + cyc(p + q));
            if g.e != 0 {
                leaf = leaf + T::pow10(k + cyc(p + q + e));
            }
            put(&ElementSet::singleton(n, x), leaf)?;
        }
    }
    TreeMetric::from_lengths(enc.structure().ground().clone(), entries)
}

/// The closed-form realization of `m₀` alone: every tail `{x[u,r] : u ≥ v}`
/// has length 1 and leaf `x[v,s]` has length `10^(v + (s+1)/2)`, except
/// `x[0,-1]` which has length 0.
pub fn m0_tree<T: Scalar>(m0: &crate::structure::MidpointsStructure) -> Result<TreeMetric<T>> {
    let n = m0.len();
    if n < 6 || n % 2 == 1 {
        return Err(Error::Range(format!("{n} elements is not the size of a variable caterpillar")));
    }
    let mut entries = Vec::new();
    for v in 1..n / 2 {
        entries.push((Split::new(&ElementSet::from_indices(n, 2 * v..n))?, T::one()));
    }
    for x in 1..n {
        let (v, s) = (x / 2, x % 2);
        entries.push((Split::leaf(n, x), T::pow10((v + s) as u32)));
    }
    TreeMetric::from_lengths(m0.ground().clone(), entries)
}

/// Lexicographic `(q, e)` chain used by the correction.
fn lex_chain() -> impl Iterator<Item = (u8, i8)> {
    (0u8..4).flat_map(|q| [-1i8, 0, 1].map(move |e| (q, e)))
}

/// The leaf-edge correction `t'` for `h`, computed against `base`.
///
/// For each clause `c` and block `p`, walking the 12 elements in
/// lexicographic `(q, e)` order from `t'(q=0,e=-1) = 0`:
///
/// * `t'(q,0)  = t'(q,-1) - d(f x[q,-1], f x[q,0]) + n_h(c)`
/// * `t'(q,1)  = t'(q,0)  + d(f x[q,0],  f x[q,1]) + n_h(c)`
/// * `t'(q,-1) = t'(q-1,1) + n_h(c)` for `q > 0`
///
/// where `d` is the leaf distance in `base` and `n_h(c)` counts the true
/// literals of clause `c`.
pub fn correction<T: Scalar>(enc: &Encoding, h: &Assignment, base: &TreeMetric<T>) -> Result<BTreeMap<usize, T>> {
    correction_with(enc, h, base, ConstructionOptions::default())
}

pub fn correction_with<T: Scalar>(
    enc: &Encoding,
    h: &Assignment,
    base: &TreeMetric<T>,
    opts: ConstructionOptions,
) -> Result<BTreeMap<usize, T>> {
    check_assignment(enc, h)?;
    let case = enc.case();
    let mut dist_cache: BTreeMap<(usize, usize), T> = BTreeMap::new();
    let mut offset = |a: usize, b: usize| -> Result<T> {
        let key = (a.min(b), a.max(b));
        if let Some(d) = dist_cache.get(&key) {
            return Ok(d.clone());
        }
        let mut d = base.leaf_distance(a, b)?;
        if opts.doubled_offset {
            d = d * T::from_int(2);
        }
        dist_cache.insert(key, d.clone());
        Ok(d)
    };
    let mut out = BTreeMap::new();
    for c in 1..=case.num_clauses() {
        let n_h: T = from_usize(case.agreements(h, c));
        for p in 0..4u8 {
            let at = |q: u8, e: i8| enc.gadget_index(GadgetIndex { c: c as u32, p, q, e });
            let mut prev: Option<T> = None;
            for (q, e) in lex_chain() {
                let x = at(q, e);
                let value = match (q, e, prev.take()) {
                    (0, -1, _) => T::zero(),
                    (_, 0, Some(before)) => before - offset(enc.f(at(q, -1)), enc.f(x))? + n_h.clone(),
                    (_, 1, Some(before)) => before + offset(enc.f(at(q, 0)), enc.f(x))? + n_h.clone(),
                    (_, -1, Some(before)) => before + n_h.clone(),
                    _ => unreachable!("chain starts at (0,-1)"),
                };
                out.insert(x, value.clone());
                prev = Some(value);
            }
        }
    }
    Ok(out)
}

/// Assembles `t_h = t + t'`. Fails with `NONNEGATIVITY` if any length would
/// become negative.
pub fn assemble<T: Scalar>(base: &TreeMetric<T>, corr: &BTreeMap<usize, T>) -> Result<TreeMetric<T>> {
    let n = base.universe();
    let mut t = base.clone();
    for (&x, delta) in corr {
        let leaf = Split::leaf(n, x);
        let total = t.length(&leaf) + delta.clone();
        t.set_length(leaf, total)?;
    }
    Ok(t)
}

pub fn plan<T: Scalar>(enc: &Encoding, h: &Assignment) -> Result<RealizationPlan<T>> {
    plan_with(enc, h, ConstructionOptions::default())
}

pub fn plan_with<T: Scalar>(enc: &Encoding, h: &Assignment, opts: ConstructionOptions) -> Result<RealizationPlan<T>> {
    let base = base_vector_with(enc, h, opts)?;
    let corr = correction_with(enc, h, &base, opts)?;
    let result = assemble(&base, &corr)?;
    Ok(RealizationPlan { base, correction: corr, result })
}

/// Builds `t_h` and always verifies it against `m_P`. The report is ok for
/// satisfying `h`; for a non-satisfying `h` it carries violations.
pub fn build_realization<T: Scalar>(enc: &Encoding, h: &Assignment) -> Result<(TreeMetric<T>, RealizationReport<T>)> {
    let plan = plan::<T>(enc, h)?;
    let report = check_realization(enc.structure(), &plan.result)?;
    Ok((plan.result, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::encode;
    use crate::sat::SatCase;
    use crate::scalar::Rational;

    fn example() -> Encoding {
        encode(&SatCase::parse_dimacs("p cnf 4 2\n2 -3 4 0\n1 2 3 0\n").unwrap()).unwrap()
    }

    fn h0() -> Assignment {
        Assignment::new(vec![1, -1, -1, 1]).unwrap()
    }

    #[test]
    fn m0_closed_form() {
        for vars in 1..=5 {
            let m0 = crate::reduction::build_m0(vars).unwrap();
            let t: TreeMetric<Rational> = m0_tree(&m0).unwrap();
            assert!(check_realization(&m0, &t).unwrap().is_ok());
        }
    }

    #[test]
    fn base_lengths() {
        let enc = example();
        let t: TreeMetric<Rational> = base_vector(&enc, &h0()).unwrap();
        assert!(t.is_valid());
        let n = enc.len();
        let g = |p, q, e| enc.gadget_index(GadgetIndex::new(1, p, q, e).unwrap());
        let dbl = Split::from_indices(n, [g(0, 0, 1), g(1, 1, -1)]).unwrap();
        assert_eq!(t.length(&dbl), Rational::pow10(13));
        let leaf = Split::leaf(n, g(0, 0, 0));
        assert_eq!(t.length(&leaf), Rational::pow10(24) + Rational::from_int(2) * Rational::pow10(12));
        let ns = enc.named_splits();
        for v in 1..=4 {
            let s = Split::new(&ns.splitting_edge(v, h0().value(v))).unwrap();
            assert_eq!(t.length(&s), Rational::from_int(6));
        }
    }

    #[test]
    fn correction_chain_steps() {
        let enc = example();
        let h = h0();
        let base: TreeMetric<Rational> = base_vector(&enc, &h).unwrap();
        let corr = correction(&enc, &h, &base).unwrap();
        for c in 1..=2u32 {
            for p in 0..4 {
                let at = |q, e| enc.gadget_index(GadgetIndex::new(c, p, q, e).unwrap());
                assert_eq!(corr[&at(0, -1)], Rational::from_int(0));
                if c == 1 {
                    assert_eq!(corr[&at(1, -1)], corr[&at(0, 1)].clone() + Rational::from_int(2));
                }
            }
        }
    }

    #[test]
    fn satisfying_example_verifies() {
        let enc = example();
        let (t, rep) = build_realization::<Rational>(&enc, &h0()).unwrap();
        assert!(t.is_valid());
        assert_eq!(rep.checked(), 108 * 107);
        assert!(rep.is_ok(), "{} violations", rep.violation_count());
    }

    #[test]
    fn non_satisfying_assignments_fail() {
        let enc = example();
        for code in 0..16 {
            let h = Assignment::from_code(4, code);
            let (_, rep) = build_realization::<Rational>(&enc, &h).unwrap();
            assert_eq!(rep.is_ok(), enc.case().is_satisfied(&h), "{h}");
        }
    }

    #[test]
    fn alternative_readings_fail() {
        let enc = example();
        for opts in [
            ConstructionOptions { splitting_toward_above: true, doubled_offset: false },
            ConstructionOptions { splitting_toward_above: false, doubled_offset: true },
        ] {
            let plan = plan_with::<Rational>(&enc, &h0(), opts);
            let failed = match plan {
                Ok(p) => !check_realization(enc.structure(), &p.result).unwrap().is_ok(),
                Err(e) => e.code() == "NONNEGATIVITY",
            };
            assert!(failed, "{opts:?}");
        }
    }

    #[test]
    fn float_lengths_lose_unit_slacks() {
        // slacks of a few units sit under leaf edges of order 10^24
        let enc = example();
        let (_, rep) = build_realization::<f64>(&enc, &h0()).unwrap();
        assert!(!rep.is_ok());
    }
}
