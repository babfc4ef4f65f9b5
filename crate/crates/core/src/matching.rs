//! Facing-step matching on words over `U`, `D` and `H`.
//!
//! A `U` and a later `D` face each other when their midpoints are at the same
//! height and the horizontal segment joining them stays below the path. Read
//! as parentheses (`U` opens, `D` closes, `H` ignored) this is the usual
//! bracket matching, computed here with a single stack scan. Positions are
//! 1-based throughout.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::paths::{LatticePath, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriStep {
    U,
    D,
    H,
}

impl TriStep {
    pub fn delta(self) -> i64 {
        match self {
            TriStep::U => 1,
            TriStep::D => -1,
            TriStep::H => 0,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            TriStep::U => 'U',
            TriStep::D => 'D',
            TriStep::H => 'H',
        }
    }
}

impl From<Step> for TriStep {
    fn from(s: Step) -> Self {
        match s {
            Step::U => TriStep::U,
            Step::D => TriStep::D,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TriPath {
    steps: Vec<TriStep>,
}

impl TriPath {
    pub fn new(steps: Vec<TriStep>) -> Self {
        TriPath { steps }
    }

    pub fn steps(&self) -> &[TriStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `h_0 = 0, h_1, ..., h_n`.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut h = 0;
        out.push(h);
        for s in &self.steps {
            h += s.delta();
            out.push(h);
        }
        out
    }

    pub fn end_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn min_height(&self) -> i64 {
        self.heights().into_iter().min().unwrap_or(0)
    }

    pub fn max_height(&self) -> i64 {
        self.heights().into_iter().max().unwrap_or(0)
    }
}

impl From<&LatticePath> for TriPath {
    fn from(p: &LatticePath) -> Self {
        TriPath::new(p.steps().iter().map(|&s| s.into()).collect())
    }
}

impl fmt::Display for TriPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for TriPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' => Ok(TriStep::U),
                'D' => Ok(TriStep::D),
                'H' => Ok(TriStep::H),
                _ => Err(Error::Parse {
                    what: "tri-path",
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(TriPath::new)
    }
}

/// Result of [`match_faces`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Matching {
    /// Matched `(U, D)` position pairs, listed in the order their `D` occurs.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_d: Vec<usize>,
    pub unmatched_u: Vec<usize>,
}

impl Matching {
    pub fn pair_set(&self) -> std::collections::BTreeSet<(usize, usize)> {
        self.pairs.iter().copied().collect()
    }
}

/// Facing-step matching of a word over `U`, `D`, `H`.
pub fn match_faces(path: &TriPath) -> Matching {
    match_steps(path.steps().iter().copied())
}

/// Same as [`match_faces`] for a plain `U`/`D` path.
pub fn match_path(path: &LatticePath) -> Matching {
    match_steps(path.steps().iter().map(|&s| TriStep::from(s)))
}

pub(crate) fn match_steps(steps: impl Iterator<Item = TriStep>) -> Matching {
    let mut open = Vec::new();
    let mut m = Matching::default();
    for (idx, step) in steps.enumerate() {
        let pos = idx + 1;
        match step {
            TriStep::U => open.push(pos),
            TriStep::D => match open.pop() {
                Some(u) => m.pairs.push((u, pos)),
                None => m.unmatched_d.push(pos),
            },
            TriStep::H => {}
        }
    }
    m.unmatched_u = open;
    m
}
