//! Naive oracles shared by the integration tests.
//!
//! Nothing here calls the library's enumerators or predicates: sets are built
//! by filtering every pair of words with height arrays computed on the spot.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lattice_nest::{LatticePath, PathPair, PlaneWalk, Step, WalkStep};

/// All `2^n` words, `U < D`, in lexicographic order.
pub fn all_paths(n: usize) -> Vec<LatticePath> {
    (0u64..1 << n)
        .map(|bits| {
            LatticePath::new(
                (0..n)
                    .map(|l| if bits >> (n - 1 - l) & 1 == 1 { Step::D } else { Step::U })
                    .collect(),
            )
        })
        .collect()
}

pub fn heights(p: &LatticePath) -> Vec<i64> {
    let mut h = vec![0];
    for s in p.steps() {
        let last = *h.last().unwrap();
        h.push(if *s == Step::U { last + 1 } else { last - 1 });
    }
    h
}

/// A path with its heights precomputed.
#[derive(Clone)]
pub struct Hp {
    pub path: LatticePath,
    pub h: Vec<i64>,
}

impl Hp {
    pub fn end(&self) -> i64 {
        *self.h.last().unwrap()
    }
    pub fn min(&self) -> i64 {
        *self.h.iter().min().unwrap()
    }
}

pub fn with_heights(n: usize) -> Vec<Hp> {
    all_paths(n)
        .into_iter()
        .map(|path| {
            let h = heights(&path);
            Hp { path, h }
        })
        .collect()
}

pub fn le(lower: &[i64], upper: &[i64]) -> bool {
    lower.iter().zip(upper).all(|(a, b)| a <= b)
}

pub fn neg_le(p: &[i64], q: &[i64]) -> bool {
    p.iter().zip(q).all(|(a, b)| -a <= *b)
}

pub fn valid_ij(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=i {
            if i + j <= n && (i + j) % 2 == n % 2 {
                out.push((i, j));
            }
        }
    }
    out
}

fn pair(a: &Hp, b: &Hp) -> PathPair {
    PathPair {
        upper: a.path.clone(),
        lower: b.path.clone(),
    }
}

/// The `(i, j)` families of nested pairs of length `n`, by definition.
#[derive(Default)]
pub struct PairSets {
    pub m2: BTreeMap<(usize, usize), Vec<PathPair>>,
    pub p2: BTreeMap<(usize, usize), Vec<PathPair>>,
    pub g2: BTreeMap<(usize, usize), Vec<PathPair>>,
    /// Nested pairs of prefixes.
    pub prefix_pairs: Vec<PathPair>,
    /// Nested pairs of Grand Dyck paths.
    pub grand_pairs: Vec<PathPair>,
    /// All nested pairs.
    pub nested: Vec<PathPair>,
}

pub fn pair_sets(n: usize) -> PairSets {
    let paths = with_heights(n);
    let grand_end = (n % 2) as i64;
    let mut sets = PairSets::default();
    for (i, j) in valid_ij(n) {
        sets.m2.insert((i, j), Vec::new());
        sets.p2.insert((i, j), Vec::new());
        sets.g2.insert((i, j), Vec::new());
    }
    for a in &paths {
        for b in &paths {
            if !le(&b.h, &a.h) {
                continue;
            }
            let pr = pair(a, b);
            let (hp, hq) = (a.end(), b.end());
            sets.nested.push(pr.clone());
            let prefixes = a.min() >= 0 && b.min() >= 0;
            if prefixes {
                sets.prefix_pairs.push(pr.clone());
            }
            if hp == grand_end && hq == grand_end {
                sets.grand_pairs.push(pr.clone());
            }
            let lowest = a.h.iter().zip(&b.h).map(|(x, y)| (x + y) / 2).min().unwrap();
            for (i, j) in valid_ij(n) {
                let (ii, jj) = (i as i64, j as i64);
                if neg_le(&a.h, &b.h) && hp == ii + jj && hq == ii - jj {
                    sets.m2.get_mut(&(i, j)).unwrap().push(pr.clone());
                }
                if prefixes && ii - jj <= hq && hq <= ii + jj && ii + jj <= hp {
                    sets.p2.get_mut(&(i, j)).unwrap().push(pr.clone());
                }
                let delta = ii % 2;
                if lowest == -(ii / 2) && hp == jj + delta && hq == -jj + delta {
                    sets.g2.get_mut(&(i, j)).unwrap().push(pr.clone());
                }
            }
        }
    }
    sets
}

/// `omega` from its four-entry table.
pub fn omega_table(p: &LatticePath, q: &LatticePath) -> PlaneWalk {
    PlaneWalk::new(
        p.steps()
            .iter()
            .zip(q.steps())
            .map(|pair| match pair {
                (Step::U, Step::U) => WalkStep::E,
                (Step::U, Step::D) => WalkStep::N,
                (Step::D, Step::U) => WalkStep::S,
                (Step::D, Step::D) => WalkStep::W,
            })
            .collect(),
    )
}

pub fn walk_positions(w: &PlaneWalk) -> Vec<(i64, i64)> {
    let mut pos = vec![(0, 0)];
    for s in w.steps() {
        let (x, y) = *pos.last().unwrap();
        pos.push(match s {
            WalkStep::N => (x, y + 1),
            WalkStep::S => (x, y - 1),
            WalkStep::E => (x + 1, y),
            WalkStep::W => (x - 1, y),
        });
    }
    pos
}

/// Calls `visit` on every one of the `4^n` walks, with no pruning.
pub fn every_walk(n: usize, visit: &mut dyn FnMut(&[WalkStep])) {
    fn go(n: usize, buf: &mut Vec<WalkStep>, visit: &mut dyn FnMut(&[WalkStep])) {
        if buf.len() == n {
            visit(buf);
            return;
        }
        for s in [WalkStep::N, WalkStep::S, WalkStep::E, WalkStep::W] {
            buf.push(s);
            go(n, buf, visit);
            buf.pop();
        }
    }
    go(n, &mut Vec::with_capacity(n), visit);
}

/// Walks of length `n` whose every position satisfies `region`, kept if `keep` holds.
pub fn walks_where(
    n: usize,
    region: impl Fn((i64, i64)) -> bool,
    keep: impl Fn(&[(i64, i64)]) -> bool,
) -> Vec<PlaneWalk> {
    let mut out = Vec::new();
    every_walk(n, &mut |steps| {
        let w = PlaneWalk::new(steps.to_vec());
        let pos = walk_positions(&w);
        if pos.iter().all(|&p| region(p)) && keep(&pos) {
            out.push(w);
        }
    });
    out.sort();
    out
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

pub fn catalan(m: u64) -> u64 {
    binom(2 * m, m) / (m + 1)
}

/// Number of nested `k`-tuples drawn from `pool`, counted by direct recursion.
pub fn nested_tuples(pool: &[Hp], k: usize) -> u64 {
    fn go(pool: &[Hp], above: Option<&Hp>, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        pool.iter()
            .filter(|c| above.is_none_or(|a| le(&c.h, &a.h)))
            .map(|c| go(pool, Some(c), left - 1))
            .sum()
    }
    go(pool, None, k)
}
