//! Rational streams of integers as lassos: a finite prefix followed by a
//! cycle repeated forever.
//!
//! Lassos are kept in canonical form (primitive cycle, minimal prefix), so
//! structural equality coincides with equality of the denoted streams.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    prefix: Vec<i64>,
    cycle: Vec<i64>,
}

/// Length of the shortest period of `word` that divides its length.
fn primitive_root_len(word: &[i64]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&k| n.is_multiple_of(k) && (k..n).all(|i| word[i] == word[i - k]))
        .unwrap_or(n)
}

impl Lasso {
    /// Builds the canonical lasso for `prefix · cycle^ω`.
    pub fn canonicalize(prefix: Vec<i64>, cycle: Vec<i64>) -> Result<Lasso> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut prefix = prefix;
        let mut cycle = cycle;
        cycle.truncate(primitive_root_len(&cycle));
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Ok(Lasso { prefix, cycle })
    }

    /// The constant stream `d : d : d : ...`.
    pub fn repeat(d: i64) -> Lasso {
        Lasso {
            prefix: Vec::new(),
            cycle: vec![d],
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[i64] {
        &self.cycle
    }

    pub fn head(&self) -> i64 {
        self.prefix.first().copied().unwrap_or(self.cycle[0])
    }

    pub fn tail(&self) -> Lasso {
        if self.prefix.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            Lasso {
                prefix: Vec::new(),
                cycle,
            }
        } else {
            // dropping the first element keeps the prefix minimal unless it
            // was the only one, and then the cycle is untouched anyway
            Lasso {
                prefix: self.prefix[1..].to_vec(),
                cycle: self.cycle.clone(),
            }
        }
    }

    /// `x : self`.
    pub fn cons(&self, x: i64) -> Lasso {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(x);
        prefix.extend_from_slice(&self.prefix);
        Lasso::canonicalize(prefix, self.cycle.clone()).expect("cycle is non-empty")
    }

    /// All iterated tails, including the stream itself.
    pub fn substreams(&self) -> BTreeSet<Lasso> {
        let mut out = BTreeSet::new();
        let mut s = self.clone();
        while out.insert(s.clone()) {
            s = s.tail();
        }
        out
    }

    /// Every integer occurring in the stream.
    pub fn elements(&self) -> BTreeSet<i64> {
        self.prefix.iter().chain(&self.cycle).copied().collect()
    }

    pub fn minimum(&self) -> i64 {
        *self.elements().first().expect("streams are non-empty")
    }

    /// The first `n` elements of the stream.
    pub fn unfold_values(&self, n: usize) -> Vec<i64> {
        self.prefix
            .iter()
            .chain(self.cycle.iter().cycle())
            .take(n)
            .copied()
            .collect()
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", join(&self.prefix), join(&self.cycle))
    }
}

/// Parses `p1,p2,...|c1,c2,...`; the prefix may be empty.
impl FromStr for Lasso {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lasso> {
        let err = || Error::Parse {
            what: "lasso",
            input: s.to_string(),
        };
        let (prefix, cycle) = s.trim().split_once('|').ok_or_else(err)?;
        let list = |part: &str| -> Result<Vec<i64>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| err()))
                .collect()
        };
        let cycle = list(cycle)?;
        if cycle.is_empty() {
            return Err(err());
        }
        Lasso::canonicalize(list(prefix)?, cycle)
    }
}
