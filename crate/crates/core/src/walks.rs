//! Walks in the plane with steps `N`, `S`, `E`, `W`, the step-wise
//! correspondence `omega` with pairs of paths, and the walk-level versions of
//! the pair bijections.
//!
//! Under `omega`, the position after `l` steps is
//! `((h_l(P) + h_l(Q)) / 2, (h_l(P) - h_l(Q)) / 2)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::PathPair;
use crate::paths::{check_ij, LatticePath, Step};
use crate::single;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WalkStep {
    N,
    S,
    E,
    W,
}

impl WalkStep {
    pub const ALL: [WalkStep; 4] = [WalkStep::N, WalkStep::S, WalkStep::E, WalkStep::W];

    pub fn delta(self) -> (i64, i64) {
        match self {
            WalkStep::N => (0, 1),
            WalkStep::S => (0, -1),
            WalkStep::E => (1, 0),
            WalkStep::W => (-1, 0),
        }
    }

    /// Reflection in a line of slope 1.
    pub fn transposed(self) -> WalkStep {
        match self {
            WalkStep::N => WalkStep::E,
            WalkStep::E => WalkStep::N,
            WalkStep::S => WalkStep::W,
            WalkStep::W => WalkStep::S,
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            WalkStep::N | WalkStep::S => Axis::Vertical,
            WalkStep::E | WalkStep::W => Axis::Horizontal,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            WalkStep::N => 'N',
            WalkStep::S => 'S',
            WalkStep::E => 'E',
            WalkStep::W => 'W',
        }
    }

    fn from_pair(p: Step, q: Step) -> WalkStep {
        match (p, q) {
            (Step::U, Step::U) => WalkStep::E,
            (Step::U, Step::D) => WalkStep::N,
            (Step::D, Step::U) => WalkStep::S,
            (Step::D, Step::D) => WalkStep::W,
        }
    }

    fn to_pair(self) -> (Step, Step) {
        match self {
            WalkStep::E => (Step::U, Step::U),
            WalkStep::N => (Step::U, Step::D),
            WalkStep::S => (Step::D, Step::U),
            WalkStep::W => (Step::D, Step::D),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PlaneWalk {
    steps: Vec<WalkStep>,
}

impl PlaneWalk {
    pub fn new(steps: Vec<WalkStep>) -> Self {
        PlaneWalk { steps }
    }

    pub fn steps(&self) -> &[WalkStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Positions `(0,0), w_1, w_1 + w_2, ...`, including the origin.
    pub fn positions(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let (mut x, mut y) = (0, 0);
        out.push((x, y));
        for s in &self.steps {
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
            out.push((x, y));
        }
        out
    }

    pub fn endpoint(&self) -> (i64, i64) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.delta();
            (x + dx, y + dy)
        })
    }

    pub fn geometry(&self) -> WalkGeometry {
        walk_geometry(self)
    }
}

impl fmt::Display for PlaneWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PlaneWalk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'N' => Ok(WalkStep::N),
                'S' => Ok(WalkStep::S),
                'E' => Ok(WalkStep::E),
                'W' => Ok(WalkStep::W),
                _ => Err(Error::Parse {
                    what: "walk",
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(PlaneWalk::new)
    }
}

/// Region `i-j <= x-y <= i+j <= x+y` of admissible octant endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShadowRegion {
    pub i: i64,
    pub j: i64,
}

impl ShadowRegion {
    pub fn new(i: i64, j: i64) -> Result<Self> {
        if !(i >= j && j >= 0) {
            return Err(Error::params(format!("shadow needs i >= j >= 0, got ({i}, {j})")));
        }
        Ok(ShadowRegion { i, j })
    }

    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        let (i, j) = (self.i, self.j);
        i - j <= x - y && x - y <= i + j && i + j <= x + y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkGeometry {
    pub endpoint: (i64, i64),
    pub min_x: i64,
    pub min_y: i64,
    /// `x >= y >= 0` at every position.
    pub stays_octant: bool,
    /// `x, y >= 0` at every position.
    pub stays_quadrant: bool,
    /// `y >= 0` at every position.
    pub stays_upper_half: bool,
    /// `y <= x` at every position.
    pub stays_below_diagonal: bool,
}

pub fn walk_geometry(w: &PlaneWalk) -> WalkGeometry {
    let positions = w.positions();
    let min_x = positions.iter().map(|p| p.0).min().unwrap_or(0);
    let min_y = positions.iter().map(|p| p.1).min().unwrap_or(0);
    let stays_below_diagonal = positions.iter().all(|&(x, y)| y <= x);
    WalkGeometry {
        endpoint: w.endpoint(),
        min_x,
        min_y,
        stays_octant: stays_below_diagonal && min_y >= 0,
        stays_quadrant: min_x >= 0 && min_y >= 0,
        stays_upper_half: min_y >= 0,
        stays_below_diagonal,
    }
}

/// Step-wise: `UU -> E`, `UD -> N`, `DU -> S`, `DD -> W`.
pub fn omega(p: &LatticePath, q: &LatticePath) -> Result<PlaneWalk> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(PlaneWalk::new(
        p.steps()
            .iter()
            .zip(q.steps())
            .map(|(&a, &b)| WalkStep::from_pair(a, b))
            .collect(),
    ))
}

pub fn omega_pair(pair: &PathPair) -> PlaneWalk {
    omega(&pair.upper, &pair.lower).expect("pair paths have equal length")
}

pub fn omega_inv(w: &PlaneWalk) -> PathPair {
    let (p, q): (Vec<Step>, Vec<Step>) = w.steps().iter().map(|s| s.to_pair()).unzip();
    PathPair {
        upper: LatticePath::new(p),
        lower: LatticePath::new(q),
    }
}

/// `(i, j)` for a quadrant walk ending at `(i, j)` with `i >= j`.
fn require_quadrant(w: &PlaneWalk) -> Result<(usize, usize)> {
    let g = walk_geometry(w);
    let domain = || format!("Q(n={}, i, j)", w.len());
    if !g.stays_quadrant {
        return Err(Error::domain(domain(), "walk leaves the first quadrant"));
    }
    let (x, y) = g.endpoint;
    if x < y {
        return Err(Error::domain(domain(), format!("endpoint ({x}, {y}) has y > x")));
    }
    Ok((x as usize, y as usize))
}

/// Direct walk-level form of `phi`, from `Q(n,i,j)` to `O(n,i,j)`.
///
/// 1. Every step of `w` ending strictly above the diagonal is reflected in
///    the diagonal (`N <-> E`, `S <-> W`).
/// 2. Every `S` step of the result that ends strictly lower than all earlier
///    positions becomes an `N` step.
pub fn phi_tilde(w: &PlaneWalk) -> Result<PlaneWalk> {
    require_quadrant(w)?;
    let positions = w.positions();
    let reflected: Vec<WalkStep> = w
        .steps()
        .iter()
        .zip(&positions[1..])
        .map(|(&s, &(x, y))| if y > x { s.transposed() } else { s })
        .collect();

    let mut lowest = 0;
    let mut y = 0;
    let steps = reflected
        .iter()
        .map(|&s| {
            y += s.delta().1;
            if y < lowest {
                lowest = y;
                if s == WalkStep::S {
                    return WalkStep::N;
                }
            }
            s
        })
        .collect();
    Ok(PlaneWalk::new(steps))
}

/// Inverse of [`phi_tilde`] on `O(n,i,j)`, computed on the walk directly.
pub fn phi_tilde_inv(w: &PlaneWalk, i: usize, j: usize) -> Result<PlaneWalk> {
    let n = w.len();
    check_ij(n, i, j)?;
    let g = walk_geometry(w);
    let shadow = ShadowRegion::new(i as i64, j as i64)?;
    if !g.stays_octant {
        return Err(Error::domain(
            format!("O(n={n}, i={i}, j={j})"),
            "walk leaves the octant x >= y >= 0",
        ));
    }
    if !shadow.contains(g.endpoint) {
        return Err(Error::domain(
            format!("O(n={n}, i={i}, j={j})"),
            format!("endpoint {:?} is outside the shadow of ({i}, {j})", g.endpoint),
        ));
    }
    let (x, y) = g.endpoint;
    let flips = ((x + y - (i + j) as i64) / 2) as usize;

    // The last N step leaving each of the levels 0, 1, ..., flips-1.
    let positions = w.positions();
    let mut steps = w.steps().to_vec();
    for level in 0..flips as i64 {
        let idx = (0..n)
            .rev()
            .find(|&l| steps[l] == WalkStep::N && positions[l].1 == level)
            .expect("a walk above y=0 leaves every level below its end");
        steps[idx] = WalkStep::S;
    }

    let unflipped = PlaneWalk::new(steps);
    let positions = unflipped.positions();
    let (x, y) = unflipped.endpoint();
    let r = (x - y - (i as i64 - j as i64)) / 2;
    let last_on = |diag: i64| {
        positions
            .iter()
            .rposition(|&(x, y)| x - y == diag)
            .expect("walk crosses every diagonal up to its end")
    };
    let mut steps = unflipped.steps().to_vec();
    for l in 0..r {
        let from = last_on(2 * l);
        let to = last_on(2 * l + 1);
        for s in &mut steps[from..to] {
            *s = s.transposed();
        }
    }
    Ok(PlaneWalk::new(steps))
}

/// Vertical and horizontal subsequences of a walk, with the interleaving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkSplit {
    pub vertical: Vec<WalkStep>,
    pub horizontal: Vec<WalkStep>,
    pub mask: Vec<Axis>,
}

impl WalkSplit {
    /// The horizontal subsequence read as a path (`E = U`, `W = D`).
    pub fn horizontal_path(&self) -> LatticePath {
        LatticePath::new(
            self.horizontal
                .iter()
                .map(|&s| if s == WalkStep::E { Step::U } else { Step::D })
                .collect(),
        )
    }

    /// The vertical subsequence read as a path (`N = U`, `S = D`).
    pub fn vertical_path(&self) -> LatticePath {
        LatticePath::new(
            self.vertical
                .iter()
                .map(|&s| if s == WalkStep::N { Step::U } else { Step::D })
                .collect(),
        )
    }

    fn with_horizontal_path(mut self, p: &LatticePath) -> Self {
        self.horizontal = p
            .steps()
            .iter()
            .map(|&s| if s == Step::U { WalkStep::E } else { WalkStep::W })
            .collect();
        self
    }

    pub fn interleave(&self) -> PlaneWalk {
        let mut v = self.vertical.iter();
        let mut h = self.horizontal.iter();
        PlaneWalk::new(
            self.mask
                .iter()
                .map(|axis| {
                    let next = match axis {
                        Axis::Vertical => v.next(),
                        Axis::Horizontal => h.next(),
                    };
                    *next.expect("mask agrees with subsequence lengths")
                })
                .collect(),
        )
    }
}

pub fn ns_ew_split(w: &PlaneWalk) -> WalkSplit {
    let mut split = WalkSplit {
        vertical: Vec::new(),
        horizontal: Vec::new(),
        mask: Vec::with_capacity(w.len()),
    };
    for &s in w.steps() {
        split.mask.push(s.axis());
        match s.axis() {
            Axis::Vertical => split.vertical.push(s),
            Axis::Horizontal => split.horizontal.push(s),
        }
    }
    split
}

/// Walk-level `psi`: `xi` applied to the horizontal subsequence.
pub fn psi_tilde(w: &PlaneWalk) -> Result<PlaneWalk> {
    require_quadrant(w)?;
    let split = ns_ew_split(w);
    let mapped = single::xi(&split.horizontal_path())?;
    Ok(split.with_horizontal_path(&mapped).interleave())
}

/// Inverse of [`psi_tilde`] on `H(n,i,j)`: walks in `y >= 0` ending at
/// `(i%2, j)` whose leftmost point lies on `x = -floor(i/2)`.
pub fn psi_tilde_inv(w: &PlaneWalk) -> Result<PlaneWalk> {
    let n = w.len();
    let g = walk_geometry(w);
    let domain = || format!("H(n={n}, i, j) for any i, j");
    if !g.stays_upper_half {
        return Err(Error::domain(domain(), "walk goes below the x-axis"));
    }
    let (x, y) = g.endpoint;
    if x != 0 && x != 1 {
        return Err(Error::domain(domain(), format!("endpoint ({x}, {y}) must have x in {{0, 1}}")));
    }
    let i = 2 * -g.min_x + x;
    check_ij(n, i as usize, y as usize).map_err(|e| Error::domain(domain(), e.to_string()))?;
    let split = ns_ew_split(w);
    let mapped = single::xi_inv(&split.horizontal_path())?;
    Ok(split.with_horizontal_path(&mapped).interleave())
}

/// Walk-level `psi_s`: `xi_s` applied to the horizontal subsequence. The
/// image ends at `(s, j)` with leftmost point on `x = -(i-s)/2`.
pub fn psi_tilde_s(w: &PlaneWalk, s: i64) -> Result<PlaneWalk> {
    require_quadrant(w)?;
    let split = ns_ew_split(w);
    let mapped = single::xi_s(&split.horizontal_path(), s)?;
    Ok(split.with_horizontal_path(&mapped).interleave())
}

/// Inverse of [`psi_tilde_s`] on walks in `y >= 0` ending at `x >= 0`.
pub fn psi_tilde_s_inv(w: &PlaneWalk) -> Result<PlaneWalk> {
    let g = walk_geometry(w);
    let domain = "walks in y >= 0 ending on x >= 0";
    if !g.stays_upper_half {
        return Err(Error::domain(domain, "walk goes below the x-axis"));
    }
    let split = ns_ew_split(w);
    let mapped = single::xi_s_inv(&split.horizontal_path())
        .map_err(|e| Error::domain(domain, e.to_string()))?;
    let out = split.with_horizontal_path(&mapped).interleave();
    require_quadrant(&out).map_err(|e| Error::domain(domain, e.to_string()))?;
    Ok(out)
}
