//! Lattice paths over `U = (1,1)` and `D = (1,-1)`, the nesting order, and
//! exhaustive enumerators for the path families.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    U,
    D,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
        }
    }

    pub fn flipped(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::U),
            'D' => Some(Step::D),
            _ => None,
        }
    }
}

/// A path from the origin with steps `U` and `D`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

/// Membership of a single path in the Dyck, Grand Dyck and prefix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathClass {
    pub is_dyck: bool,
    pub is_grand: bool,
    pub is_prefix: bool,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn empty() -> Self {
        LatticePath::default()
    }

    /// Decodes `n` steps from the low bits of `key`; bit `n-1-l` set means
    /// step `l` (0-based) is `D`. Keys in increasing order list paths in
    /// lexicographic order with `U < D`.
    pub fn from_key(key: u64, n: usize) -> Self {
        let steps = (0..n)
            .map(|l| {
                if key >> (n - 1 - l) & 1 == 1 {
                    Step::D
                } else {
                    Step::U
                }
            })
            .collect();
        LatticePath { steps }
    }

    /// All `2^n` paths of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = LatticePath> {
        assert!(n < 64, "path length {n} too large for exhaustive listing");
        (0..1u64 << n).map(move |key| LatticePath::from_key(key, n))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Heights `h_1, ..., h_n` after each step (the origin is not included).
    pub fn height_profile(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.delta();
                Some(*h)
            })
            .collect()
    }

    /// Heights `h_0, ..., h_n`, starting with `h_0 = 0`.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(0);
        out.extend(self.height_profile());
        out
    }

    pub fn end_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    /// Lowest height reached, counting the origin.
    pub fn min_height(&self) -> i64 {
        self.height_profile().into_iter().fold(0, i64::min)
    }

    /// Reflection along the x-axis.
    pub fn negate(&self) -> LatticePath {
        LatticePath::new(self.steps.iter().map(|s| s.flipped()).collect())
    }

    /// Flips the steps at the given 1-based positions.
    pub fn flip_at(&self, positions: &[usize]) -> LatticePath {
        let mut steps = self.steps.clone();
        for &pos in positions {
            steps[pos - 1] = steps[pos - 1].flipped();
        }
        LatticePath::new(steps)
    }

    /// `true` iff `self` is weakly below `other` at every abscissa.
    pub fn is_weakly_below(&self, other: &LatticePath) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mut lo = 0i64;
        let mut hi = 0i64;
        for (a, b) in self.steps.iter().zip(&other.steps) {
            lo += a.delta();
            hi += b.delta();
            if lo > hi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_prefix(&self) -> bool {
        self.min_height() >= 0
    }

    pub fn is_grand(&self) -> bool {
        self.end_height() == (self.len() % 2) as i64
    }

    pub fn is_dyck(&self) -> bool {
        self.is_prefix() && self.end_height() == 0
    }

    pub fn classify(&self) -> PathClass {
        PathClass {
            is_dyck: self.is_dyck(),
            is_grand: self.is_grand(),
            is_prefix: self.is_prefix(),
        }
    }

    /// Sort key consistent with the canonical enumeration order; inverse of
    /// [`LatticePath::from_key`].
    pub fn lex_key(&self) -> u64 {
        let n = self.len();
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::D)
            .fold(0u64, |k, (l, _)| k | 1 << (n - 1 - l))
    }
}

impl From<Vec<Step>> for LatticePath {
    fn from(steps: Vec<Step>) -> Self {
        LatticePath::new(steps)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Step::from_char(c).ok_or_else(|| Error::Parse {
                    what: "lattice path",
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

/// A tuple `(P_1, ..., P_k)` of equal-length paths with `P_{t+1}` weakly below `P_t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedTuple {
    paths: Vec<LatticePath>,
}

impl NestedTuple {
    pub fn new(paths: Vec<LatticePath>) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::params("a nested tuple needs at least one path"));
        }
        for w in paths.windows(2) {
            if !w[1].is_weakly_below(&w[0])? {
                return Err(Error::domain(
                    "nested tuples",
                    format!("{} is not weakly below {}", w[1], w[0]),
                ));
            }
        }
        Ok(NestedTuple { paths })
    }

    pub fn single(path: LatticePath) -> Self {
        NestedTuple { paths: vec![path] }
    }

    pub fn paths(&self) -> &[LatticePath] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<LatticePath> {
        self.paths
    }

    pub fn k(&self) -> usize {
        self.paths.len()
    }

    pub fn path_len(&self) -> usize {
        self.paths[0].len()
    }
}

impl fmt::Display for NestedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, p) in self.paths.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for NestedTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let paths = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<LatticePath>>>()?;
        NestedTuple::new(paths)
    }
}

/// A family of paths or nested tuples, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilySpec {
    /// All paths of length `n`.
    A { n: usize },
    /// Dyck paths.
    D { n: usize },
    /// Grand Dyck paths.
    G { n: usize },
    /// Dyck path prefixes.
    P { n: usize },
    /// Nested `k`-tuples of arbitrary paths.
    Ak { n: usize, k: usize },
    /// Nested `k`-tuples of prefixes.
    Pk { n: usize, k: usize },
    /// Nested `k`-tuples of Grand Dyck paths.
    Gk { n: usize, k: usize },
    /// Nested prefix pairs with `i-j <= h(Q) <= i+j <= h(P)`.
    P2ij { n: usize, i: usize, j: usize },
    /// Pairs with `-P <= Q <= P`, `h(P) = i+j`, `h(Q) = i-j`.
    M2ij { n: usize, i: usize, j: usize },
    /// Nested pairs with lowest agreement height `-floor(i/2)` and
    /// end heights `j + i%2`, `-j + i%2`.
    G2ij { n: usize, i: usize, j: usize },
    /// Nested `k`-tuples with every path ending at height `s`.
    EndingAt { n: usize, k: usize, s: i64 },
}

impl FamilySpec {
    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::A { n }
            | FamilySpec::D { n }
            | FamilySpec::G { n }
            | FamilySpec::P { n }
            | FamilySpec::Ak { n, .. }
            | FamilySpec::Pk { n, .. }
            | FamilySpec::Gk { n, .. }
            | FamilySpec::P2ij { n, .. }
            | FamilySpec::M2ij { n, .. }
            | FamilySpec::G2ij { n, .. }
            | FamilySpec::EndingAt { n, .. } => n,
        }
    }

    /// Number of paths in each member.
    pub fn arity(&self) -> usize {
        match *self {
            FamilySpec::A { .. } | FamilySpec::D { .. } | FamilySpec::G { .. } | FamilySpec::P { .. } => 1,
            FamilySpec::Ak { k, .. } | FamilySpec::Pk { k, .. } | FamilySpec::Gk { k, .. } => k,
            FamilySpec::EndingAt { k, .. } => k,
            FamilySpec::P2ij { .. } | FamilySpec::M2ij { .. } | FamilySpec::G2ij { .. } => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Ak { k, .. }
            | FamilySpec::Pk { k, .. }
            | FamilySpec::Gk { k, .. }
            | FamilySpec::EndingAt { k, .. }
                if k == 0 =>
            {
                Err(Error::params("k must be at least 1"))
            }
            FamilySpec::P2ij { n, i, j } | FamilySpec::M2ij { n, i, j } | FamilySpec::G2ij { n, i, j } => {
                check_ij(n, i, j)
            }
            _ => Ok(()),
        }
    }

    /// Membership predicate, evaluated directly from the set definition.
    pub fn contains(&self, tuple: &NestedTuple) -> bool {
        let paths = tuple.paths();
        if paths.len() != self.arity() || paths.iter().any(|p| p.len() != self.n()) {
            return false;
        }
        let nested = paths
            .windows(2)
            .all(|w| w[1].is_weakly_below(&w[0]).unwrap_or(false));
        if !nested {
            return false;
        }
        match *self {
            FamilySpec::A { .. } | FamilySpec::Ak { .. } => true,
            FamilySpec::D { .. } => paths[0].is_dyck(),
            FamilySpec::G { .. } | FamilySpec::Gk { .. } => paths.iter().all(LatticePath::is_grand),
            FamilySpec::P { .. } | FamilySpec::Pk { .. } => paths.iter().all(LatticePath::is_prefix),
            FamilySpec::EndingAt { s, .. } => paths.iter().all(|p| p.end_height() == s),
            FamilySpec::P2ij { i, j, .. } => {
                let (i, j) = (i as i64, j as i64);
                let (hp, hq) = (paths[0].end_height(), paths[1].end_height());
                paths.iter().all(LatticePath::is_prefix) && i - j <= hq && hq <= i + j && i + j <= hp
            }
            FamilySpec::M2ij { i, j, .. } => {
                let (i, j) = (i as i64, j as i64);
                paths[0].negate().is_weakly_below(&paths[1]).unwrap_or(false)
                    && paths[0].end_height() == i + j
                    && paths[1].end_height() == i - j
            }
            FamilySpec::G2ij { i, j, .. } => {
                let (j, half, delta) = (j as i64, (i / 2) as i64, (i % 2) as i64);
                let lowest = paths[0]
                    .heights()
                    .iter()
                    .zip(paths[1].heights())
                    .map(|(a, b)| (a + b) / 2)
                    .min()
                    .unwrap_or(0);
                lowest == -half
                    && paths[0].end_height() == j + delta
                    && paths[1].end_height() == -j + delta
            }
        }
    }

    /// Pruning data for the column-wise search. Every bound here is implied
    /// by [`FamilySpec::contains`], which still filters the final tuples.
    fn search_bounds(&self) -> SearchBounds {
        let n = self.n() as i64;
        let k = self.arity();
        let any = (i64::MIN / 4, i64::MAX / 4);
        let mut bounds = SearchBounds {
            n: self.n(),
            k,
            floor: None,
            sum_floor: false,
            ends: vec![any; k],
        };
        match *self {
            FamilySpec::A { .. } | FamilySpec::Ak { .. } => {}
            FamilySpec::D { .. } => {
                bounds.floor = Some(0);
                bounds.ends = vec![(0, 0)];
            }
            FamilySpec::G { .. } | FamilySpec::Gk { .. } => {
                let e = n % 2;
                bounds.ends = vec![(e, e); k];
            }
            FamilySpec::P { .. } | FamilySpec::Pk { .. } => bounds.floor = Some(0),
            FamilySpec::EndingAt { s, .. } => bounds.ends = vec![(s, s); k],
            FamilySpec::P2ij { i, j, .. } => {
                let (i, j) = (i as i64, j as i64);
                bounds.floor = Some(0);
                bounds.ends = vec![(i + j, any.1), (i - j, i + j)];
            }
            FamilySpec::M2ij { i, j, .. } => {
                let (i, j) = (i as i64, j as i64);
                bounds.sum_floor = true;
                bounds.ends = vec![(i + j, i + j), (i - j, i - j)];
            }
            FamilySpec::G2ij { i, j, .. } => {
                let (j, delta) = (j as i64, (i % 2) as i64);
                bounds.ends = vec![(j + delta, j + delta), (-j + delta, -j + delta)];
            }
        }
        bounds
    }
}

pub(crate) fn check_ij(n: usize, i: usize, j: usize) -> Result<()> {
    if j > i {
        return Err(Error::params(format!("need i >= j, got i={i}, j={j}")));
    }
    if i + j > n {
        return Err(Error::params(format!("need i+j <= n, got i+j={}, n={n}", i + j)));
    }
    if (i + j) % 2 != n % 2 {
        return Err(Error::params(format!(
            "need i+j and n of equal parity, got i+j={}, n={n}",
            i + j
        )));
    }
    Ok(())
}

struct SearchBounds {
    n: usize,
    k: usize,
    floor: Option<i64>,
    sum_floor: bool,
    ends: Vec<(i64, i64)>,
}

/// Partial tuple during the column-wise search: per-path keys and heights.
#[derive(Clone)]
struct Frame {
    depth: usize,
    keys: Vec<u64>,
    heights: Vec<i64>,
}

impl SearchBounds {
    fn root(&self) -> Frame {
        Frame {
            depth: 0,
            keys: vec![0; self.k],
            heights: vec![0; self.k],
        }
    }

    fn reachable(&self, h: i64, depth: usize, t: usize) -> bool {
        let rem = (self.n - depth) as i64;
        let (lo, hi) = self.ends[t];
        h + rem >= lo && h - rem <= hi
    }

    /// Children of `frame` one column deeper, in lexicographic step order.
    fn children(&self, frame: &Frame, out: &mut Vec<Frame>) {
        let mut next = frame.clone();
        next.depth += 1;
        self.fill_column(frame, 0, &mut next, out);
    }

    fn fill_column(&self, frame: &Frame, t: usize, next: &mut Frame, out: &mut Vec<Frame>) {
        if t == self.k {
            if self.sum_floor && self.k >= 2 && next.heights[0] + next.heights[1] < 0 {
                return;
            }
            out.push(next.clone());
            return;
        }
        let bit = 1u64 << (self.n - 1 - frame.depth);
        for step in [Step::U, Step::D] {
            let h = frame.heights[t] + step.delta();
            if self.floor.is_some_and(|f| h < f) {
                continue;
            }
            if t > 0 && h > next.heights[t - 1] {
                continue;
            }
            if !self.reachable(h, next.depth, t) {
                continue;
            }
            next.heights[t] = h;
            next.keys[t] = if step == Step::D {
                frame.keys[t] | bit
            } else {
                frame.keys[t]
            };
            self.fill_column(frame, t + 1, next, out);
        }
    }

    fn search(&self, frame: Frame, emit: &mut dyn FnMut(&[u64])) {
        if frame.depth == self.n {
            emit(&frame.keys);
            return;
        }
        let mut kids = Vec::new();
        self.children(&frame, &mut kids);
        for kid in kids {
            self.search(kid, emit);
        }
    }

    /// Frames at a shallow depth; the search below each is independent.
    fn split(&self, target_depth: usize) -> Vec<Frame> {
        let mut level = vec![self.root()];
        for _ in 0..target_depth.min(self.n) {
            let mut next = Vec::new();
            for f in &level {
                self.children(f, &mut next);
            }
            level = next;
        }
        level
    }
}

const SPLIT_DEPTH: usize = 4;

fn keys_to_tuple(keys: &[u64], n: usize) -> NestedTuple {
    NestedTuple {
        paths: keys.iter().map(|&k| LatticePath::from_key(k, n)).collect(),
    }
}

/// All members of `spec`, each exactly once, in lexicographic order of the
/// concatenated step words (`U < D`). Single-path families yield 1-tuples.
///
/// The search is partitioned on step prefixes and run in parallel; the
/// result does not depend on the number of workers.
pub fn enumerate_family(spec: &FamilySpec) -> Result<Vec<NestedTuple>> {
    spec.validate()?;
    let bounds = spec.search_bounds();
    let n = bounds.n;
    let mut keys: Vec<Vec<u64>> = bounds
        .split(SPLIT_DEPTH)
        .into_par_iter()
        .flat_map_iter(|frame| {
            let mut found = Vec::new();
            bounds.search(frame, &mut |ks| {
                if spec.contains(&keys_to_tuple(ks, n)) {
                    found.push(ks.to_vec());
                }
            });
            found
        })
        .collect();
    keys.sort_unstable();
    Ok(keys.iter().map(|ks| keys_to_tuple(ks, n)).collect())
}

/// Members of a single-path family, in lexicographic order.
pub fn enumerate_paths(spec: &FamilySpec) -> Result<Vec<LatticePath>> {
    if spec.arity() != 1 {
        return Err(Error::params(format!("{spec:?} is a family of tuples")));
    }
    Ok(enumerate_family(spec)?
        .into_iter()
        .map(|t| t.paths.into_iter().next().expect("1-tuple"))
        .collect())
}

/// Size of `spec` by exhaustive generation and predicate filtering.
pub fn count_family(spec: &FamilySpec) -> Result<u64> {
    spec.validate()?;
    let bounds = spec.search_bounds();
    let n = bounds.n;
    Ok(bounds
        .split(SPLIT_DEPTH)
        .into_par_iter()
        .map(|frame| {
            let mut count = 0u64;
            bounds.search(frame, &mut |ks| {
                if spec.contains(&keys_to_tuple(ks, n)) {
                    count += 1;
                }
            });
            count
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn height_profile_examples() {
        assert_eq!(p("UUDD").height_profile(), vec![1, 2, 1, 0]);
        assert!(p("").height_profile().is_empty());
        assert_eq!(p("DU").height_profile(), vec![-1, 0]);
    }

    #[test]
    fn negate_examples() {
        assert_eq!(p("UD").negate(), p("DU"));
        assert_eq!(p("").negate(), p(""));
        assert_eq!(p("UUDUD").negate().negate(), p("UUDUD"));
    }

    #[test]
    fn weakly_below_examples() {
        assert!(p("UD").is_weakly_below(&p("UU")).unwrap());
        assert!(p("UDUD").is_weakly_below(&p("UDUD")).unwrap());
        assert!(!p("UU").is_weakly_below(&p("UD")).unwrap());
        assert_eq!(
            p("U").is_weakly_below(&p("UD")),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn classify_examples() {
        let c = p("UD").classify();
        assert!(c.is_dyck && c.is_grand && c.is_prefix);
        let c = p("DU").classify();
        assert!(!c.is_dyck && c.is_grand && !c.is_prefix);
        let c = p("U").classify();
        assert!(!c.is_dyck && c.is_grand && c.is_prefix);
    }

    #[test]
    fn empty_path_is_in_every_base_family() {
        let e = NestedTuple::single(LatticePath::empty());
        for spec in [
            FamilySpec::A { n: 0 },
            FamilySpec::D { n: 0 },
            FamilySpec::G { n: 0 },
            FamilySpec::P { n: 0 },
        ] {
            assert!(spec.contains(&e));
            assert_eq!(enumerate_family(&spec).unwrap(), vec![e.clone()]);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!("UXD".parse::<LatticePath>(), Err(Error::Parse { .. })));
        assert!("UD,UU".parse::<NestedTuple>().is_err());
        assert_eq!("UD,DU".parse::<NestedTuple>().unwrap().to_string(), "UD,DU");
    }

    #[test]
    fn key_roundtrip() {
        for path in LatticePath::all(6) {
            assert_eq!(LatticePath::from_key(path.lex_key(), 6), path);
        }
    }

    #[test]
    fn dyck_four() {
        let got = enumerate_paths(&FamilySpec::D { n: 4 }).unwrap();
        assert_eq!(got, vec![p("UUDD"), p("UDUD")]);
    }

    #[test]
    fn m2_and_p2_small() {
        let m = enumerate_family(&FamilySpec::M2ij { n: 2, i: 0, j: 0 }).unwrap();
        let m: Vec<String> = m.iter().map(|t| t.to_string()).collect();
        assert_eq!(m, vec!["UD,UD", "UD,DU"]);
        let pp = enumerate_family(&FamilySpec::P2ij { n: 2, i: 0, j: 0 }).unwrap();
        let pp: Vec<String> = pp.iter().map(|t| t.to_string()).collect();
        assert_eq!(pp, vec!["UU,UD", "UD,UD"]);
    }

    #[test]
    fn invalid_parameters_rejected() {
        for spec in [
            FamilySpec::P2ij { n: 4, i: 1, j: 3 },
            FamilySpec::M2ij { n: 4, i: 3, j: 3 },
            FamilySpec::G2ij { n: 4, i: 1, j: 0 },
            FamilySpec::Pk { n: 4, k: 0 },
        ] {
            assert!(matches!(enumerate_family(&spec), Err(Error::InvalidParameters(_))));
        }
        assert!(enumerate_paths(&FamilySpec::Ak { n: 2, k: 2 }).is_err());
    }
}
