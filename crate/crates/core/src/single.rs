//! Bijections between single paths: prefixes to Grand Dyck paths by flipping
//! unmatched steps (`xi`, and `xi_s` with a target end height), and the
//! split-and-reflect bijection `nu`.

use crate::error::{Error, Result};
use crate::matching::match_path;
use crate::paths::{LatticePath, Step};

fn require_prefix(p: &LatticePath) -> Result<()> {
    if p.is_prefix() {
        Ok(())
    } else {
        Err(Error::domain(
            "Dyck path prefixes",
            format!("{p} goes below the x-axis (lowest height {})", p.min_height()),
        ))
    }
}

/// Flips the leftmost `count` unmatched `U` steps into `D` steps.
pub(crate) fn flip_leftmost_unmatched_u(p: &LatticePath, count: usize) -> LatticePath {
    let m = match_path(p);
    p.flip_at(&m.unmatched_u[..count])
}

/// Prefix to Grand Dyck path: the leftmost `floor(h/2)` unmatched `U` steps
/// become `D` steps, where `h` is the end height.
pub fn xi(p: &LatticePath) -> Result<LatticePath> {
    require_prefix(p)?;
    let flips = (p.end_height() / 2) as usize;
    Ok(flip_leftmost_unmatched_u(p, flips))
}

/// Grand Dyck path to prefix: every unmatched `D` becomes a `U`.
pub fn xi_inv(g: &LatticePath) -> Result<LatticePath> {
    if !g.is_grand() {
        return Err(Error::domain(
            "Grand Dyck paths",
            format!("{g} ends at height {}, not {}", g.end_height(), g.len() % 2),
        ));
    }
    Ok(flip_unmatched_d(g))
}

fn flip_unmatched_d(g: &LatticePath) -> LatticePath {
    g.flip_at(&match_path(g).unmatched_d)
}

/// Prefix ending at height `i` to a path ending at height `s`, flipping the
/// leftmost `(i-s)/2` unmatched `U` steps. The image has lowest height
/// `-(i-s)/2`.
pub fn xi_s(p: &LatticePath, s: i64) -> Result<LatticePath> {
    require_prefix(p)?;
    let i = p.end_height();
    if s < 0 || s > i || (i - s) % 2 != 0 {
        return Err(Error::params(format!(
            "target height s={s} must satisfy 0 <= s <= {i} with s = {i} mod 2"
        )));
    }
    Ok(flip_leftmost_unmatched_u(p, ((i - s) / 2) as usize))
}

/// Inverse of [`xi_s`]: a path ending at height `s >= 0` with lowest height
/// `-t` comes from the prefix obtained by flipping its `t` unmatched `D`s.
pub fn xi_s_inv(r: &LatticePath) -> Result<LatticePath> {
    if r.end_height() < 0 {
        return Err(Error::domain(
            "paths ending at a nonnegative height",
            format!("{r} ends at height {}", r.end_height()),
        ));
    }
    Ok(flip_unmatched_d(r))
}

/// Reverses the word and swaps `U` with `D`.
fn reflect(steps: &[Step]) -> impl Iterator<Item = Step> + '_ {
    steps.iter().rev().map(|s| s.flipped())
}

/// Splits the prefix at its last point of height `floor(h/2)`, reflects the
/// right piece and moves it in front of the left piece.
///
/// For odd length the image ends at height -1.
pub fn nu(p: &LatticePath) -> Result<LatticePath> {
    require_prefix(p)?;
    let heights = p.heights();
    let target = p.end_height() / 2;
    let split = heights
        .iter()
        .rposition(|&h| h == target)
        .expect("a prefix passes through every height up to its end");
    let (left, right) = p.steps().split_at(split);
    Ok(LatticePath::new(reflect(right).chain(left.iter().copied()).collect()))
}

/// Splits at the leftmost lowest point, reflects the left piece and moves it
/// to the right end.
pub fn nu_inv(g: &LatticePath) -> Result<LatticePath> {
    let expected = -((g.len() % 2) as i64);
    if g.end_height() != expected {
        return Err(Error::domain(
            "the image of nu",
            format!("{g} ends at height {}, expected {expected}", g.end_height()),
        ));
    }
    let heights = g.heights();
    let lowest = *heights.iter().min().expect("heights include the origin");
    let split = heights.iter().position(|&h| h == lowest).expect("minimum is attained");
    let (left, right) = g.steps().split_at(split);
    Ok(LatticePath::new(right.iter().copied().chain(reflect(left)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn xi_golden_example() {
        let src = p("UUDDUUDUUDDUUUDU");
        assert_eq!(match_path(&src).unmatched_u, vec![5, 12, 13, 16]);
        assert_eq!(xi(&src).unwrap(), p("UUDDDUDUUDDDUUDU"));
        assert_eq!(xi_inv(&p("UUDDDUDUUDDDUUDU")).unwrap(), src);
    }

    #[test]
    fn xi_small() {
        assert_eq!(xi(&p("UD")).unwrap(), p("UD"));
        assert_eq!(xi(&p("UU")).unwrap(), p("DU"));
        assert_eq!(xi_inv(&p("UD")).unwrap(), p("UD"));
        assert_eq!(xi_inv(&p("DU")).unwrap(), p("UU"));
    }

    #[test]
    fn xi_domain_errors() {
        assert!(matches!(xi(&p("DU")), Err(Error::Domain { .. })));
        assert!(matches!(xi_inv(&p("UU")), Err(Error::Domain { .. })));
    }

    #[test]
    fn xi_s_examples() {
        assert_eq!(xi_s(&p("UU"), 2).unwrap(), p("UU"));
        assert_eq!(xi_s(&p("UU"), 0).unwrap(), p("DU"));
        let r = xi_s(&p("UUUU"), 2).unwrap();
        assert_eq!(r, p("DUUU"));
        assert_eq!(r.min_height(), -1);
        assert_eq!(xi_s_inv(&r).unwrap(), p("UUUU"));
    }

    #[test]
    fn xi_s_parameter_errors() {
        assert!(xi_s(&p("UU"), 1).is_err());
        assert!(xi_s(&p("UU"), 4).is_err());
        assert!(xi_s(&p("UU"), -2).is_err());
        assert!(xi_s(&p("DU"), 0).is_err());
        assert!(xi_s_inv(&p("DD")).is_err());
    }

    #[test]
    fn nu_golden_example() {
        let src = p("UUDDUUDUUDDUUUDU");
        assert_eq!(nu(&src).unwrap(), p("DUDDUUDDUUDUUDDU"));
        assert_eq!(nu_inv(&p("DUDDUUDDUUDUUDDU")).unwrap(), src);
    }

    #[test]
    fn nu_small() {
        assert_eq!(nu(&p("")).unwrap(), p(""));
        assert_eq!(nu_inv(&p("")).unwrap(), p(""));
        assert_eq!(nu(&p("UUU")).unwrap(), p("DDU"));
        assert_eq!(nu_inv(&p("DDU")).unwrap(), p("UUU"));
        assert_eq!(nu(&p("U")).unwrap(), p("D"));
    }

    #[test]
    fn nu_domain_errors() {
        assert!(nu(&p("DU")).is_err());
        assert!(nu_inv(&p("U")).is_err());
        assert!(nu_inv(&p("UU")).is_err());
    }
}
