//! Ordered ground sets and structured element identifiers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Element identifier. Variable-gadget elements `x[v,s]` and clause-gadget
/// elements `x[c,p,q,e]` render canonically; anything else is a free name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementId {
    Var { v: u32, s: i8 },
    Gadget { c: u32, p: u8, q: u8, e: i8 },
    Named(String),
}

impl ElementId {
    pub fn var(v: u32, s: i8) -> Self {
        ElementId::Var { v, s }
    }

    pub fn gadget(c: u32, p: u8, q: u8, e: i8) -> Self {
        ElementId::Gadget { c, p, q, e }
    }

    pub fn named(s: impl Into<String>) -> Self {
        ElementId::Named(s.into())
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Var { v, s } => write!(f, "x[{v},{s}]"),
            ElementId::Gadget { c, p, q, e } => write!(f, "x[{c},{p},{q},{e}]"),
            ElementId::Named(s) => f.write_str(s),
        }
    }
}

impl FromStr for ElementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::InvalidInput(format!("bad element name {s:?}")));
        }
        if let Some(body) = s.strip_prefix("x[").and_then(|b| b.strip_suffix(']')) {
            let parts: Vec<i64> = body
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidInput(format!("bad element name {s:?}")))?;
            let bad = || Error::Range(format!("element {s}"));
            return match *parts.as_slice() {
                [v, sg] if v >= 0 && (sg == 1 || sg == -1) => {
                    Ok(ElementId::var(u32::try_from(v).map_err(|_| bad())?, sg as i8))
                }
                [c, p, q, e] if c >= 1 && (0..4).contains(&p) && (0..4).contains(&q) && (-1..=1).contains(&e) => {
                    Ok(ElementId::gadget(u32::try_from(c).map_err(|_| bad())?, p as u8, q as u8, e as i8))
                }
                _ => Err(bad()),
            };
        }
        Ok(ElementId::Named(s.to_string()))
    }
}

/// A totally ordered finite set of elements; index 0 is the least element.
#[derive(Clone, Debug)]
pub struct GroundSet {
    elements: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for GroundSet {}

impl GroundSet {
    /// Builds a ground set; identifiers must be unique and there must be at
    /// least two of them.
    pub fn new(elements: Vec<ElementId>) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::InvalidInput(format!("ground set needs at least 2 elements, got {}", elements.len())));
        }
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate element {e}")));
            }
        }
        Ok(GroundSet { elements, index })
    }

    /// Ground set of free names, in the given order.
    pub fn named<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|s| ElementId::named(s.as_ref())).collect())
    }

    /// Ground set `0, 1, .., n-1` rendered as decimal names.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| ElementId::Named(i.to_string())).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &ElementId {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &ElementId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Index lookup that reports the missing identifier.
    pub fn require(&self, id: &ElementId) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::InvalidInput(format!("unknown element {id}")))
    }

    /// Concatenation `self` then `other`; every element of `other` is larger.
    pub fn concat(&self, other: &GroundSet) -> Result<GroundSet> {
        if let Some(dup) = other.elements.iter().find(|e| self.index.contains_key(e)) {
            return Err(Error::Disjointness(dup.to_string()));
        }
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        GroundSet::new(elements)
    }
}
