//! Exact counting: closed formulas and brute-force censuses.
//!
//! Every formula is evaluated in exact arithmetic. Product and sum formulas
//! with rational factors are accumulated as rationals and must come out
//! integral; a fractional residue is an arithmetic bug and panics.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::paths::{count_family, FamilySpec};
use crate::walks::{PlaneWalk, ShadowRegion, WalkStep};

pub type BigCount = BigUint;

pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigCount::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigCount::one(), |acc, t| acc * t)
}

/// `C_m = binom(2m, m) / (m + 1)`.
pub fn catalan(m: u64) -> BigCount {
    binomial(2 * m, m as i64) / (m + 1)
}

fn into_count(value: BigRational, what: &str) -> BigCount {
    assert!(value.is_integer(), "{what} evaluated to the non-integer {value}");
    value
        .to_integer()
        .to_biguint()
        .unwrap_or_else(|| panic!("{what} evaluated to a negative value"))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for piv in 0..size - 1 {
        if m[piv][piv].is_zero() {
            match (piv + 1..size).find(|&r| !m[r][piv].is_zero()) {
                Some(r) => {
                    m.swap(piv, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in piv + 1..size {
            for c in piv + 1..size {
                let v = &m[r][c] * &m[piv][piv] - &m[r][piv] * &m[piv][c];
                m[r][c] = v / &prev;
            }
        }
        prev = m[piv][piv].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// Number of nested `k`-tuples of Grand Dyck paths of length `n`, as the
/// determinant of `binom(n, floor(n/2) - a + b)` over `a, b = 1..k`.
pub fn count_grand_tuples_det(n: u64, k: usize) -> BigCount {
    let half = (n / 2) as i64;
    let matrix = (1..=k as i64)
        .map(|a| {
            (1..=k as i64)
                .map(|b| BigInt::from(binomial(n, half - a + b)))
                .collect()
        })
        .collect();
    let det = bareiss_determinant(matrix);
    assert!(!det.is_negative(), "determinant for n={n}, k={k} is negative");
    det.to_biguint().expect("nonnegative")
}

/// Plane partitions in a `p x q x k` box:
/// `prod_{a<=p} prod_{b<=q} prod_{c<=k} (a+b+c-1)/(a+b+c-2)`.
pub fn count_macmahon(p: u64, q: u64, k: u64) -> BigCount {
    let mut acc = BigRational::one();
    for a in 1..=p {
        for b in 1..=q {
            for c in 1..=k {
                let s = BigInt::from(a + b + c);
                acc *= BigRational::new(&s - 1, &s - 2);
            }
        }
    }
    into_count(acc, "MacMahon product")
}

/// Nested pairs of Grand Dyck paths, summed over the split of a half-plane
/// walk into its vertical and horizontal subsequences:
/// `sum_l 1/(l+1) * n! / (l! l! (floor(n/2)-l)! (ceil(n/2)-l)!)`.
pub fn count_g2_sum(n: u64) -> BigCount {
    let (lo, hi) = (n / 2, n - n / 2);
    let numer = BigInt::from(factorial(n));
    let mut acc = BigRational::zero();
    for l in 0..=lo {
        let denom = factorial(l) * factorial(l) * factorial(lo - l) * factorial(hi - l) * (l + 1);
        acc += BigRational::new(numer.clone(), BigInt::from(denom));
    }
    into_count(acc, "multinomial sum")
}

/// Octant walks of length `n` ending on the x-axis:
/// `C_m C_{m+1}` for `n = 2m`, `C_{m+1}^2` for `n = 2m+1`.
pub fn count_octant_xaxis(n: u64) -> BigCount {
    let m = n / 2;
    if n.is_multiple_of(2) {
        catalan(m) * catalan(m + 1)
    } else {
        catalan(m + 1) * catalan(m + 1)
    }
}

/// Octant walks of length `2m` ending on the diagonal: `C_m C_{m+1}`.
pub fn count_octant_diag(m: u64) -> BigCount {
    catalan(m) * catalan(m + 1)
}

/// All octant walks of length `n`:
/// `(2m+1) C_m^2` for `n = 2m`, `(2m+1) C_m C_{m+1}` for `n = 2m+1`.
pub fn count_octant_total(n: u64) -> BigCount {
    let m = n / 2;
    let base = catalan(m) * (2 * m + 1);
    if n.is_multiple_of(2) {
        base * catalan(m)
    } else {
        base * catalan(m + 1)
    }
}

/// Region a walk must stay in at every position, origin included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    Plane,
    /// `y >= 0`.
    UpperHalf,
    /// `x, y >= 0`.
    Quadrant,
    /// `x >= y >= 0`.
    Octant,
}

impl Region {
    pub fn contains(self, (x, y): (i64, i64)) -> bool {
        match self {
            Region::Plane => true,
            Region::UpperHalf => y >= 0,
            Region::Quadrant => x >= 0 && y >= 0,
            Region::Octant => x >= y && y >= 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    Any,
    At(i64, i64),
    OnXAxis,
    /// On `y = x`.
    OnDiagonal,
    /// On `y = x - offset`.
    OnLine(i64),
    InShadow(ShadowRegion),
}

impl Endpoint {
    pub fn accepts(self, (x, y): (i64, i64)) -> bool {
        match self {
            Endpoint::Any => true,
            Endpoint::At(a, b) => (x, y) == (a, b),
            Endpoint::OnXAxis => y == 0,
            Endpoint::OnDiagonal => x == y,
            Endpoint::OnLine(offset) => y == x - offset,
            Endpoint::InShadow(sh) => sh.contains((x, y)),
        }
    }

    /// Cheap necessary condition for reaching an accepted endpoint in `rem` steps.
    fn reachable(self, (x, y): (i64, i64), rem: i64) -> bool {
        match self {
            Endpoint::At(a, b) => (x - a).abs() + (y - b).abs() <= rem,
            Endpoint::OnXAxis => y.abs() <= rem,
            Endpoint::OnDiagonal => (x - y).abs() <= rem,
            Endpoint::OnLine(offset) => (y - x + offset).abs() <= rem,
            Endpoint::Any | Endpoint::InShadow(_) => true,
        }
    }
}

/// A set of walks: confined to a region, with an endpoint condition and an
/// optional exact leftmost abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkFamily {
    pub n: usize,
    pub region: Region,
    pub endpoint: Endpoint,
    pub min_x: Option<i64>,
}

impl WalkFamily {
    pub fn new(n: usize, region: Region) -> Self {
        WalkFamily {
            n,
            region,
            endpoint: Endpoint::Any,
            min_x: None,
        }
    }

    pub fn ending(mut self, endpoint: Endpoint) -> Self {
        self.endpoint = endpoint;
        self
    }

    pub fn with_min_x(mut self, min_x: i64) -> Self {
        self.min_x = Some(min_x);
        self
    }

    pub fn contains(&self, w: &PlaneWalk) -> bool {
        let positions = w.positions();
        w.len() == self.n
            && positions.iter().all(|&p| self.region.contains(p))
            && self.endpoint.accepts(w.endpoint())
            && self
                .min_x
                .is_none_or(|m| positions.iter().map(|p| p.0).min() == Some(m))
    }

    fn search(&self, state: WalkState, emit: &mut dyn FnMut(&[WalkStep])) {
        let mut steps = state.steps.clone();
        self.search_from(state.pos, state.min_x, &mut steps, emit);
    }

    fn search_from(
        &self,
        pos: (i64, i64),
        min_x: i64,
        steps: &mut Vec<WalkStep>,
        emit: &mut dyn FnMut(&[WalkStep]),
    ) {
        if steps.len() == self.n {
            if self.endpoint.accepts(pos) && self.min_x.is_none_or(|m| m == min_x) {
                emit(steps);
            }
            return;
        }
        let rem = (self.n - steps.len() - 1) as i64;
        for step in WalkStep::ALL {
            let (dx, dy) = step.delta();
            let next = (pos.0 + dx, pos.1 + dy);
            let next_min_x = min_x.min(next.0);
            if !self.region.contains(next) || !self.endpoint.reachable(next, rem) {
                continue;
            }
            if self.min_x.is_some_and(|m| next_min_x < m) {
                continue;
            }
            steps.push(step);
            self.search_from(next, next_min_x, steps, emit);
            steps.pop();
        }
    }

    fn split(&self, depth: usize) -> Vec<WalkState> {
        let mut level = vec![WalkState {
            steps: Vec::new(),
            pos: (0, 0),
            min_x: 0,
        }];
        for _ in 0..depth.min(self.n) {
            level = level
                .into_iter()
                .flat_map(|s| {
                    WalkStep::ALL.into_iter().filter_map(move |step| {
                        let (dx, dy) = step.delta();
                        let pos = (s.pos.0 + dx, s.pos.1 + dy);
                        if !self.region.contains(pos) {
                            return None;
                        }
                        let mut steps = s.steps.clone();
                        steps.push(step);
                        Some(WalkState {
                            steps,
                            pos,
                            min_x: s.min_x.min(pos.0),
                        })
                    })
                })
                .collect();
        }
        level
    }
}

#[derive(Clone)]
struct WalkState {
    steps: Vec<WalkStep>,
    pos: (i64, i64),
    min_x: i64,
}

const WALK_SPLIT_DEPTH: usize = 3;

/// Every walk in `family`, sorted.
pub fn enumerate_walks(family: &WalkFamily) -> Vec<PlaneWalk> {
    let mut walks: Vec<PlaneWalk> = family
        .split(WALK_SPLIT_DEPTH)
        .into_par_iter()
        .flat_map_iter(|state| {
            let mut found = Vec::new();
            family.search(state, &mut |steps| found.push(PlaneWalk::new(steps.to_vec())));
            found
        })
        .collect();
    walks.sort_unstable();
    walks
}

fn count_walks(family: &WalkFamily) -> u64 {
    family
        .split(WALK_SPLIT_DEPTH)
        .into_par_iter()
        .map(|state| {
            let mut count = 0u64;
            family.search(state, &mut |_| count += 1);
            count
        })
        .sum()
}

/// What a brute-force census counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CensusTarget {
    Paths(FamilySpec),
    Walks(WalkFamily),
}

/// Largest length a census will run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_n: 12 }
    }
}

/// Cardinality by exhaustive generation and predicate filtering.
pub fn brute_count(target: &CensusTarget, budget: &Budget) -> Result<BigCount> {
    let n = match target {
        CensusTarget::Paths(spec) => spec.n(),
        CensusTarget::Walks(family) => family.n,
    };
    if n > budget.max_n {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget: budget.max_n,
        });
    }
    let count = match target {
        CensusTarget::Paths(spec) => count_family(spec)?,
        CensusTarget::Walks(family) => count_walks(family),
    };
    Ok(BigCount::from(count))
}

/// Convenience for tests and reports.
pub fn to_u64(c: &BigCount) -> Option<u64> {
    c.to_u64()
}
