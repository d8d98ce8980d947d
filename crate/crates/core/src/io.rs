//! Line-oriented text formats. Each file opens with a header naming format
//! and version; `#` starts a comment; element names contain no whitespace.
//!
//! ```text
//! ordertree-midpoints v1
//! ground a b c
//! mid a b : b
//! mid a c : c b
//! mid b c : c
//! ```
//!
//! ```text
//! ordertree-triples v1
//! ground a b c
//! closer a b c        # b is closer to a than c is
//! ```
//!
//! ```text
//! ordertree-tree v1
//! ground a b c
//! edge 3/2 : a
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Zero;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ground::{ElementId, GroundSet};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::structure::{MidpointsStructure, TriplesStructure};
use crate::tree::{Split, TreeMetric};

pub const MIDPOINTS_HEADER: &str = "ordertree-midpoints v1";
pub const TRIPLES_HEADER: &str = "ordertree-triples v1";
pub const TREE_HEADER: &str = "ordertree-tree v1";

/// Which structure format a text uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Midpoints,
    Triples,
    Tree,
}

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { inner }
    }
}

pub fn detect_format(text: &str) -> Result<Format> {
    let first = Lines::new(text).inner.first().map(|&(_, l)| l).unwrap_or("");
    match first {
        MIDPOINTS_HEADER => Ok(Format::Midpoints),
        TRIPLES_HEADER => Ok(Format::Triples),
        TREE_HEADER => Ok(Format::Tree),
        other => Err(Error::parse(1, format!("unknown header {other:?}"))),
    }
}

/// Checks the header and reads the `ground` line; returns the remaining lines.
fn preamble<'a>(text: &'a str, header: &str) -> Result<(Arc<GroundSet>, Vec<(usize, &'a str)>)> {
    let lines = Lines::new(text).inner;
    let mut it = lines.into_iter();
    match it.next() {
        Some((_, l)) if l == header => {}
        Some((ln, l)) => return Err(Error::parse(ln, format!("expected header {header:?}, found {l:?}"))),
        None => return Err(Error::parse(1, "empty file")),
    }
    let (ln, ground_line) = it.next().ok_or_else(|| Error::parse(2, "missing ground line"))?;
    let names = ground_line
        .strip_prefix("ground")
        .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::parse(ln, "expected `ground <elements>`"))?;
    let ids = names
        .split_whitespace()
        .map(|s| s.parse::<ElementId>())
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::parse(ln, e))?;
    let ground = GroundSet::new(ids).map_err(|e| Error::parse(ln, e))?;
    Ok((Arc::new(ground), it.collect()))
}

fn lookup(g: &GroundSet, name: &str, ln: usize) -> Result<usize> {
    let id: ElementId = name.parse().map_err(|e| Error::parse(ln, e))?;
    g.index_of(&id).ok_or_else(|| Error::parse(ln, format!("unknown element {name}")))
}

fn ground_line(g: &GroundSet) -> String {
    let names: Vec<String> = g.elements().iter().map(ToString::to_string).collect();
    format!("ground {}\n", names.join(" "))
}

fn set_names(g: &GroundSet, s: &ElementSet) -> String {
    s.iter().map(|i| g.get(i).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_midpoints(m: &MidpointsStructure) -> String {
    let g = m.ground();
    let mut out = format!("{MIDPOINTS_HEADER}\n{}", ground_line(g));
    for (x, y, s) in m.pairs() {
        let _ = writeln!(out, "mid {} {} : {}", g.get(x), g.get(y), set_names(g, s));
    }
    out
}

/// Reads a midpoints file. Every unordered pair must appear exactly once
/// and the result must satisfy the midpoints axioms.
pub fn read_midpoints(text: &str) -> Result<MidpointsStructure> {
    let (g, lines) = preamble(text, MIDPOINTS_HEADER)?;
    let n = g.len();
    let mut table: Vec<Option<ElementSet>> = vec![None; n * n];
    for (ln, line) in lines {
        let rest = line.strip_prefix("mid ").ok_or_else(|| Error::parse(ln, "expected `mid <x> <y> : <elements>`"))?;
        let (pair, set) = rest.split_once(':').ok_or_else(|| Error::parse(ln, "missing `:`"))?;
        let pair: Vec<&str> = pair.split_whitespace().collect();
        let [a, b] = pair.as_slice() else {
            return Err(Error::parse(ln, "a midpoint record names exactly two elements"));
        };
        let (a, b) = (lookup(&g, a, ln)?, lookup(&g, b, ln)?);
        if a == b {
            return Err(Error::parse(ln, "pair of identical elements"));
        }
        let mut s = ElementSet::empty(n);
        for name in set.split_whitespace() {
            s.insert(lookup(&g, name, ln)?);
        }
        let slot = a.min(b) * n + a.max(b);
        if table[slot].replace(s).is_some() {
            return Err(Error::parse(ln, "pair listed twice"));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if table[i * n + j].is_none() {
                return Err(Error::InvalidInput(format!("no midpoint for {} {}", g.get(i), g.get(j))));
            }
        }
    }
    MidpointsStructure::new(g, |i, j| table[i * n + j].take().expect("checked above"))
}

pub fn write_triples(t: &TriplesStructure) -> String {
    let g = t.ground();
    let mut out = format!("{TRIPLES_HEADER}\n{}", ground_line(g));
    for (z, x, y) in t.relations() {
        let _ = writeln!(out, "closer {} {} {}", g.get(z), g.get(x), g.get(y));
    }
    out
}

/// Reads a triples file: `closer z x y` records `x <_z y`. The result is
/// validated.
pub fn read_triples(text: &str) -> Result<TriplesStructure> {
    let (g, lines) = preamble(text, TRIPLES_HEADER)?;
    let mut rel = Vec::new();
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let ["closer", z, x, y] = parts.as_slice() else {
            return Err(Error::parse(ln, "expected `closer <z> <x> <y>`"));
        };
        rel.push((lookup(&g, z, ln)?, lookup(&g, x, ln)?, lookup(&g, y, ln)?));
    }
    let t = TriplesStructure::from_relations(g, rel);
    let report = t.validate();
    if !report.is_ok() {
        return Err(Error::InvalidInput(format!("triples axioms fail: {:?}", report.violations[0])));
    }
    Ok(t)
}

pub fn write_tree(t: &TreeMetric<Rational>) -> String {
    let g = t.ground();
    let mut out = format!("{TREE_HEADER}\n{}", ground_line(g));
    for (s, len) in t.entries() {
        if len.is_zero() {
            continue;
        }
        let _ = writeln!(out, "edge {} : {}", format_rational(len), set_names(g, s.side()));
    }
    out
}

/// Reads a tree file. Repeated edges add up; lengths must be nonnegative.
/// Compatibility is not enforced here (the checker reports it).
pub fn read_tree(text: &str) -> Result<TreeMetric<Rational>> {
    let (g, lines) = preamble(text, TREE_HEADER)?;
    let n = g.len();
    let mut t = TreeMetric::new(g.clone());
    for (ln, line) in lines {
        let rest =
            line.strip_prefix("edge ").ok_or_else(|| Error::parse(ln, "expected `edge <length> : <elements>`"))?;
        let (len, set) = rest.split_once(':').ok_or_else(|| Error::parse(ln, "missing `:`"))?;
        let len = parse_rational(len).ok_or_else(|| Error::parse(ln, format!("bad length {:?}", len.trim())))?;
        let mut s = ElementSet::empty(n);
        for name in set.split_whitespace() {
            s.insert(lookup(&g, name, ln)?);
        }
        let split = Split::new(&s).map_err(|e| Error::parse(ln, e))?;
        t.add_length(split, len).map_err(|e| Error::parse(ln, e))?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::build_m0;

    #[test]
    fn midpoints_round_trip() {
        let m = build_m0(2).unwrap();
        let text = write_midpoints(&m);
        assert!(text.starts_with(MIDPOINTS_HEADER));
        let back = read_midpoints(&text).unwrap();
        assert_eq!(write_midpoints(&back), text);
        assert_eq!(detect_format(&text).unwrap(), Format::Midpoints);
    }

    #[test]
    fn triples_round_trip() {
        let m = build_m0(1).unwrap();
        let t = m.to_triples().unwrap();
        let text = write_triples(&t);
        let back = read_triples(&text).unwrap();
        assert_eq!(back.to_midpoints().unwrap(), m);
    }

    #[test]
    fn tree_lengths() {
        let text = "ordertree-tree v1\nground a b c\nedge 3/2 : a\nedge 1.25 : b # comment\nedge 2 : a c\n";
        let t = read_tree(text).unwrap();
        assert_eq!(t.length(&Split::leaf(3, 0)), Rational::new(3.into(), 2.into()));
        // `a c` is the same edge as `b`
        assert_eq!(t.length(&Split::leaf(3, 1)), Rational::new(13.into(), 4.into()));
        let again = read_tree(&write_tree(&t)).unwrap();
        assert_eq!(again.length(&Split::leaf(3, 1)), t.length(&Split::leaf(3, 1)));
    }

    #[test]
    fn errors_carry_lines() {
        let e = read_tree("ordertree-tree v1\nground a b\nedge x : a\n").unwrap_err();
        assert_eq!(e, Error::parse(3, "bad length \"x\""));
        let e = read_tree("ordertree-tree v1\nground a b\nedge -1 : a\n").unwrap_err();
        assert_eq!(e.code(), "PARSE");
        assert!(read_midpoints("ordertree-midpoints v1\nground a b\n").is_err());
        assert!(detect_format("hello").is_err());
        let e = read_midpoints("ordertree-midpoints v1\nground a b\nmid a b : a\n").unwrap_err();
        assert_eq!(e.code(), "INVALID_INPUT");
    }
}
