//! Bijections between sets of pairs of paths.
//!
//! Three families of pairs `(P, Q)` of length `n` are indexed by `i >= j >= 0`
//! with `i + j <= n` and `i + j = n (mod 2)`:
//!
//! * `M(n,i,j)`: `-P <= Q <= P`, `h(P) = i+j`, `h(Q) = i-j`;
//! * `P(n,i,j)`: `P >= Q >= 0`, `i-j <= h(Q) <= i+j <= h(P)`;
//! * `G(n,i,j)`: `Q <= P`, lowest agreement height `-floor(i/2)`,
//!   `h(P) = j + i%2`, `h(Q) = -j + i%2`.
//!
//! [`phi`] maps `M` onto `P` and [`psi`] maps `M` onto `G`. Both are built
//! from the facing-step matching of the disagreement path `(P-Q)/2` and the
//! agreement path `(P+Q)/2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{match_faces, TriPath, TriStep};
use crate::paths::{check_ij, LatticePath, NestedTuple, Step};

/// An ordered pair `(P, Q)` of paths of equal length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathPair {
    pub upper: LatticePath,
    pub lower: LatticePath,
}

impl PathPair {
    pub fn new(upper: LatticePath, lower: LatticePath) -> Result<Self> {
        if upper.len() != lower.len() {
            return Err(Error::LengthMismatch {
                left: upper.len(),
                right: lower.len(),
            });
        }
        Ok(PathPair { upper, lower })
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn end_heights(&self) -> (i64, i64) {
        (self.upper.end_height(), self.lower.end_height())
    }

    pub fn is_nested(&self) -> bool {
        self.lower.is_weakly_below(&self.upper).unwrap_or(false)
    }

    fn flip_both(&self, positions: &[usize]) -> PathPair {
        PathPair {
            upper: self.upper.flip_at(positions),
            lower: self.lower.flip_at(positions),
        }
    }
}

impl From<PathPair> for NestedTuple {
    fn from(pair: PathPair) -> Self {
        NestedTuple::new(vec![pair.upper, pair.lower]).expect("pair must be nested")
    }
}

impl TryFrom<&NestedTuple> for PathPair {
    type Error = Error;

    fn try_from(t: &NestedTuple) -> Result<Self> {
        match t.paths() {
            [p, q] => PathPair::new(p.clone(), q.clone()),
            other => Err(Error::params(format!("expected a pair, got {} paths", other.len()))),
        }
    }
}

impl fmt::Display for PathPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.upper, self.lower)
    }
}

impl FromStr for PathPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once(',').ok_or_else(|| Error::Parse {
            what: "path pair",
            input: s.to_string(),
            reason: "expected two paths separated by ','".into(),
        })?;
        PathPair::new(p.parse()?, q.parse()?)
    }
}

/// Bookkeeping of the flips performed by [`phi`] and [`phi_inv`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FlipRecord {
    /// Positions flipped in both paths in the second step.
    pub chi: Vec<usize>,
    /// Lower returns of `Q`: `U` steps ending on the x-axis.
    pub returns: Vec<usize>,
    pub r: usize,
}

fn check_len(p: &LatticePath, q: &LatticePath) -> Result<()> {
    if p.len() != q.len() {
        Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        })
    } else {
        Ok(())
    }
}

/// `(P-Q)/2`: `U` where `(P,Q)` has `(U,D)`, `D` where it has `(D,U)`, else `H`.
pub fn disagreement(p: &LatticePath, q: &LatticePath) -> Result<TriPath> {
    check_len(p, q)?;
    Ok(TriPath::new(
        p.steps()
            .iter()
            .zip(q.steps())
            .map(|pair| match pair {
                (Step::U, Step::D) => TriStep::U,
                (Step::D, Step::U) => TriStep::D,
                _ => TriStep::H,
            })
            .collect(),
    ))
}

/// `(P+Q)/2`: the common step where `P` and `Q` agree, else `H`.
pub fn agreement(p: &LatticePath, q: &LatticePath) -> Result<TriPath> {
    check_len(p, q)?;
    Ok(TriPath::new(
        p.steps()
            .iter()
            .zip(q.steps())
            .map(|(&a, &b)| if a == b { a.into() } else { TriStep::H })
            .collect(),
    ))
}

/// Lowest height of the agreement path, counting the start.
pub fn ell(p: &LatticePath, q: &LatticePath) -> Result<i64> {
    Ok(agreement(p, q)?.min_height())
}

/// Flips every step of `Q` that ends strictly below the x-axis.
///
/// Returns `Q'` and the lower returns of `Q` (the record has an empty `chi`).
pub fn flip_below(q: &LatticePath) -> Result<(LatticePath, FlipRecord)> {
    if q.end_height() < 0 {
        return Err(Error::domain(
            "paths ending at a nonnegative height",
            format!("{q} ends at height {}", q.end_height()),
        ));
    }
    let heights = q.height_profile();
    let mut steps = q.steps().to_vec();
    let mut returns = Vec::new();
    for (idx, &h) in heights.iter().enumerate() {
        if h < 0 {
            steps[idx] = steps[idx].flipped();
        } else if h == 0 && steps[idx] == Step::U {
            returns.push(idx + 1);
        }
    }
    let r = returns.len();
    Ok((
        LatticePath::new(steps),
        FlipRecord {
            chi: Vec::new(),
            returns,
            r,
        },
    ))
}

/// Undoes [`flip_below`] for a `Q'` produced with `r` lower returns: for each
/// `l < r`, the fragment between the last point at height `2l` and the last
/// point at height `2l+1` is flipped back.
pub fn flip_below_inv(q_prime: &LatticePath, r: usize) -> Result<LatticePath> {
    if !q_prime.is_prefix() {
        return Err(Error::domain(
            "Dyck path prefixes",
            format!("{q_prime} goes below the x-axis"),
        ));
    }
    let r_height = 2 * r as i64;
    if q_prime.end_height() < r_height {
        return Err(Error::domain(
            format!("prefixes ending at height >= {r_height}"),
            format!("{q_prime} ends at height {}", q_prime.end_height()),
        ));
    }
    let heights = q_prime.heights();
    let last_at = |target: i64| {
        heights
            .iter()
            .rposition(|&h| h == target)
            .expect("a prefix passes through every height up to its end")
    };
    let mut positions = Vec::new();
    for l in 0..r as i64 {
        let from = last_at(2 * l);
        let to = last_at(2 * l + 1);
        positions.extend(from + 1..=to);
    }
    Ok(q_prime.flip_at(&positions))
}

fn require_m2(pair: &PathPair, i: usize, j: usize) -> Result<()> {
    check_ij(pair.len(), i, j)?;
    let domain = || format!("M(n={}, i={i}, j={j})", pair.len());
    let (hp, hq) = pair.end_heights();
    if !pair.is_nested() {
        return Err(Error::domain(domain(), "Q <= P fails"));
    }
    if !pair.upper.negate().is_weakly_below(&pair.lower)? {
        return Err(Error::domain(domain(), "-P <= Q fails"));
    }
    if hp != (i + j) as i64 {
        return Err(Error::domain(domain(), format!("h(P) = {hp}, expected i+j = {}", i + j)));
    }
    if hq != i as i64 - j as i64 {
        return Err(Error::domain(
            domain(),
            format!("h(Q) = {hq}, expected i-j = {}", i as i64 - j as i64),
        ));
    }
    Ok(())
}

fn require_p2(pair: &PathPair, i: usize, j: usize) -> Result<()> {
    check_ij(pair.len(), i, j)?;
    let domain = || format!("P(n={}, i={i}, j={j})", pair.len());
    if !pair.upper.is_prefix() || !pair.lower.is_prefix() {
        return Err(Error::domain(domain(), "both paths must stay weakly above the x-axis"));
    }
    if !pair.is_nested() {
        return Err(Error::domain(domain(), "Q <= P fails"));
    }
    let (hp, hq) = pair.end_heights();
    let (i, j) = (i as i64, j as i64);
    if !(i - j <= hq && hq <= i + j && i + j <= hp) {
        return Err(Error::domain(
            domain(),
            format!("end heights h(P)={hp}, h(Q)={hq} violate i-j <= h(Q) <= i+j <= h(P)"),
        ));
    }
    Ok(())
}

/// Recovers `(i, j)` from the end heights of a pair in some `M(n,i,j)`.
pub fn infer_ij(pair: &PathPair) -> Result<(usize, usize)> {
    let (hp, hq) = pair.end_heights();
    if hp < hq || (hp + hq) < 0 || (hp + hq) % 2 != 0 {
        return Err(Error::domain(
            "pairs with h(P) >= h(Q), h(P) + h(Q) >= 0",
            format!("end heights {hp}, {hq}"),
        ));
    }
    Ok((((hp + hq) / 2) as usize, ((hp - hq) / 2) as usize))
}

/// Maps `M(n,i,j)` onto `P(n,i,j)`.
///
/// First `Q'` is obtained by flipping the steps of `Q` ending strictly below
/// the x-axis; then the unmatched `D` positions `chi` of `(P-Q')/2` are
/// flipped in both `P` and `Q'`.
pub fn phi(pair: &PathPair, i: usize, j: usize) -> Result<(PathPair, FlipRecord)> {
    require_m2(pair, i, j)?;
    let (q_prime, mut record) = flip_below(&pair.lower)?;
    let chi = match_faces(&disagreement(&pair.upper, &q_prime)?).unmatched_d;
    let image = PathPair {
        upper: pair.upper.flip_at(&chi),
        lower: q_prime.flip_at(&chi),
    };
    record.chi = chi;
    Ok((image, record))
}

/// [`phi`] with `(i, j)` read off the end heights.
pub fn phi_auto(pair: &PathPair) -> Result<(PathPair, FlipRecord)> {
    let (i, j) = infer_ij(pair)?;
    phi(pair, i, j)
}

/// Inverse of [`phi`] on `P(n,i,j)`.
pub fn phi_inv(pair: &PathPair, i: usize, j: usize) -> Result<(PathPair, FlipRecord)> {
    require_p2(pair, i, j)?;
    let flips = ((pair.upper.end_height() - (i + j) as i64) / 2) as usize;
    let unmatched_u = match_faces(&disagreement(&pair.upper, &pair.lower)?).unmatched_u;
    let chi = unmatched_u[..flips].to_vec();
    let upper = pair.upper.flip_at(&chi);
    let q_prime = pair.lower.flip_at(&chi);
    let r = ((q_prime.end_height() - i as i64 + j as i64) / 2) as usize;
    let lower = flip_below_inv(&q_prime, r)?;
    let returns = flip_below(&lower)?.1.returns;
    Ok((PathPair { upper, lower }, FlipRecord { chi, returns, r }))
}

fn require_g2(pair: &PathPair) -> Result<(usize, usize)> {
    let n = pair.len();
    let domain = || format!("G(n={n}, i, j) for any i, j");
    if !pair.is_nested() {
        return Err(Error::domain(domain(), "Q <= P fails"));
    }
    let (hp, hq) = pair.end_heights();
    // The agreement path must end at height 0 or 1.
    if hp + hq != 0 && hp + hq != 2 {
        return Err(Error::domain(domain(), format!("end heights {hp}, {hq}")));
    }
    let delta = (hp + hq) / 2;
    let j = (hp - hq) / 2;
    let i = 2 * -ell(&pair.upper, &pair.lower)? + delta;
    let (i, j) = (i as usize, j as usize);
    check_ij(n, i, j).map_err(|e| Error::domain(domain(), e.to_string()))?;
    Ok((i, j))
}

/// Maps `M(n,i,j)` onto `G(n,i,j)` by applying `xi` to the non-horizontal
/// steps of the agreement path and flipping those positions in both paths.
pub fn psi(pair: &PathPair) -> Result<PathPair> {
    let (_, positions) = psi_flips(pair)?;
    Ok(pair.flip_both(&positions))
}

/// `((i, j), positions)` for [`psi`]: the leftmost `floor(i/2)` unmatched `U`
/// steps of the agreement path.
pub fn psi_flips(pair: &PathPair) -> Result<((usize, usize), Vec<usize>)> {
    let (i, j) = infer_ij(pair)?;
    require_m2(pair, i, j)?;
    let m = match_faces(&agreement(&pair.upper, &pair.lower)?);
    Ok(((i, j), m.unmatched_u[..i / 2].to_vec()))
}

/// Inverse of [`psi`]; `i` is recovered from the lowest agreement height and
/// the parity of the agreement path's end.
pub fn psi_inv(pair: &PathPair) -> Result<PathPair> {
    require_g2(pair)?;
    let m = match_faces(&agreement(&pair.upper, &pair.lower)?);
    Ok(pair.flip_both(&m.unmatched_d))
}

/// Like [`psi`] but lands at common agreement end height `s`: the leftmost
/// `(i-s)/2` unmatched `U` steps of the agreement path are flipped.
pub fn psi_s(pair: &PathPair, s: i64) -> Result<PathPair> {
    let (i, j) = infer_ij(pair)?;
    require_m2(pair, i, j)?;
    let i = i as i64;
    if s < 0 || s > i || (i - s) % 2 != 0 {
        return Err(Error::params(format!(
            "s={s} must satisfy 0 <= s <= i={i} with s = i mod 2"
        )));
    }
    let m = match_faces(&agreement(&pair.upper, &pair.lower)?);
    Ok(pair.flip_both(&m.unmatched_u[..((i - s) / 2) as usize]))
}

/// Inverse of [`psi_s`]: flips every unmatched `D` of the agreement path.
pub fn psi_s_inv(pair: &PathPair) -> Result<PathPair> {
    if !pair.is_nested() {
        return Err(Error::domain("image of psi_s", "Q <= P fails"));
    }
    if pair.upper.end_height() + pair.lower.end_height() < 0 {
        return Err(Error::domain("image of psi_s", "agreement path ends below zero"));
    }
    let m = match_faces(&agreement(&pair.upper, &pair.lower)?);
    let out = pair.flip_both(&m.unmatched_d);
    let (i, j) = infer_ij(&out)?;
    require_m2(&out, i, j).map_err(|e| Error::domain("image of psi_s", e.to_string()))?;
    Ok(out)
}
