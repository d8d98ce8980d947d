//! 3-SAT cases in normalized form and a restricted DIMACS reader.

use std::fmt;

use crate::error::{Error, Result};

/// A 3-SAT case `(V, C, ν, σ)`. Clause `c` (0-based here) holds three
/// literals `(ν(c,a), σ(c,a))` with strictly increasing variables in `1..=V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatCase {
    vars: usize,
    clauses: Vec<[(usize, i8); 3]>,
}

impl SatCase {
    /// Builds a case from literal triples. Literals are sorted by variable.
    pub fn new(vars: usize, clauses: Vec<[(usize, i8); 3]>) -> Result<Self> {
        if vars == 0 {
            return Err(Error::Range("a case needs at least one variable".into()));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (ci, mut cl) in clauses.into_iter().enumerate() {
            for &(v, s) in &cl {
                if v == 0 || v > vars {
                    return Err(Error::Range(format!("variable {v} in clause {} outside 1..={vars}", ci + 1)));
                }
                if s != 1 && s != -1 {
                    return Err(Error::Range(format!("sign {s} in clause {}", ci + 1)));
                }
            }
            cl.sort_by_key(|&(v, _)| v);
            if let Some(w) = cl.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateVariable { clause: ci + 1, var: w[0].0 });
            }
            out.push(cl);
        }
        Ok(SatCase { vars, clauses: out })
    }

    /// `V`
    pub fn num_vars(&self) -> usize {
        self.vars
    }

    /// `C`
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// `ν(c, a)` with `c` in `1..=C`, `a` in `0..3`.
    pub fn nu(&self, c: usize, a: usize) -> usize {
        self.clauses[c - 1][a].0
    }

    /// `σ(c, a)` with `c` in `1..=C`, `a` in `0..3`.
    pub fn sigma(&self, c: usize, a: usize) -> i8 {
        self.clauses[c - 1][a].1
    }

    pub fn clauses(&self) -> &[[(usize, i8); 3]] {
        &self.clauses
    }

    /// Number of literals of clause `c` (1-based) that `h` makes true.
    pub fn agreements(&self, h: &Assignment, c: usize) -> usize {
        self.clauses[c - 1].iter().filter(|&&(v, s)| h.value(v) == s).count()
    }

    pub fn is_satisfied(&self, h: &Assignment) -> bool {
        (1..=self.num_clauses()).all(|c| self.agreements(h, c) >= 1)
    }

    /// Reads the DIMACS subset: a `p cnf V C` header, `c` comment lines, and
    /// clauses of exactly three distinct variables terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i64> = Vec::new();
        let mut last_line = 0;
        for (ln, line) in text.lines().enumerate() {
            let ln = ln + 1;
            last_line = ln;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if header.is_some() {
                    return Err(Error::parse(ln, "duplicate header"));
                }
                match parts.as_slice() {
                    ["cnf", v, c] => {
                        let v = v.parse().map_err(|_| Error::parse(ln, "bad variable count"))?;
                        let c = c.parse().map_err(|_| Error::parse(ln, "bad clause count"))?;
                        header = Some((v, c));
                    }
                    _ => return Err(Error::parse(ln, "expected `p cnf <vars> <clauses>`")),
                }
                continue;
            }
            if header.is_none() {
                return Err(Error::parse(ln, "clause before header"));
            }
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| Error::parse(ln, format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        if !current.is_empty() {
            return Err(Error::parse(last_line, "last clause is not terminated by 0"));
        }
        let (vars, declared) = header.ok_or_else(|| Error::parse(last_line, "missing header"))?;
        if declared != clauses.len() {
            return Err(Error::parse(
                last_line,
                format!("header declares {declared} clauses, found {}", clauses.len()),
            ));
        }
        let mut triples = Vec::with_capacity(clauses.len());
        for (ci, cl) in clauses.iter().enumerate() {
            if cl.len() != 3 {
                return Err(Error::ClauseArity { clause: ci + 1, found: cl.len() });
            }
            let mut t = [(0usize, 0i8); 3];
            for (k, &lit) in cl.iter().enumerate() {
                let v = lit.unsigned_abs() as usize;
                t[k] = (v, if lit > 0 { 1 } else { -1 });
            }
            triples.push(t);
        }
        SatCase::new(vars, triples)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for cl in &self.clauses {
            for &(v, sg) in cl {
                s.push_str(&format!("{} ", v as i64 * sg as i64));
            }
            s.push_str("0\n");
        }
        s
    }
}

/// A total truth assignment `h: [1,V] → {-1,+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<i8>,
}

impl Assignment {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::Range(format!("assignment value {bad}")));
        }
        Ok(Assignment { values })
    }

    /// Assignment number `code` in the enumeration order: bit `v-1` set means
    /// `h(v) = +1`.
    pub fn from_code(vars: usize, code: u64) -> Self {
        Assignment { values: (0..vars).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect() }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    /// `h(v)` for `v` in `1..=V`.
    pub fn value(&self, v: usize) -> i8 {
        self.values[v - 1]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Parses a signed variable list such as `1 -2 -3 4`, in any order,
    /// covering every variable exactly once.
    pub fn parse(text: &str, vars: usize) -> Result<Self> {
        let mut values = vec![0i8; vars];
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() || tok == "0" {
                continue;
            }
            let lit: i64 = tok.parse().map_err(|_| Error::parse(1, format!("bad literal {tok:?}")))?;
            let v = lit.unsigned_abs() as usize;
            if v == 0 || v > vars {
                return Err(Error::Range(format!("variable {v} outside 1..={vars}")));
            }
            if values[v - 1] != 0 {
                return Err(Error::InvalidInput(format!("variable {v} assigned twice")));
            }
            values[v - 1] = if lit > 0 { 1 } else { -1 };
        }
        if let Some(i) = values.iter().position(|&s| s == 0) {
            return Err(Error::InvalidInput(format!("variable {} unassigned", i + 1)));
        }
        Ok(Assignment { values })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.values.iter().enumerate().map(|(i, &s)| format!("{}", (i as i64 + 1) * s as i64)).collect();
        f.write_str(&parts.join(" "))
    }
}
