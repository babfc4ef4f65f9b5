//! Exhaustive verification of every bijection and counting identity.
//!
//! Each check enumerates its sets by brute force, runs the maps over them and
//! reports the first counterexample it meets. Counterexamples use the text
//! encodings of paths, pairs and walks.

use std::fmt;
use std::fmt::Display;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{
    binomial, brute_count, BigCount, catalan, count_g2_sum, count_grand_tuples_det, count_macmahon,
    count_octant_diag, count_octant_total, count_octant_xaxis, enumerate_walks, Budget,
    CensusTarget, Endpoint, Region, WalkFamily,
};
use crate::error::Result;
use crate::matching::match_path;
use crate::pairs::{self, PathPair};
use crate::paths::{count_family, enumerate_family, enumerate_paths, FamilySpec, LatticePath};
use crate::plane_partitions::{enumerate_pp, path_to_diagram, pp_to_tuple, tuple_to_pp};
use crate::single;
use crate::walks::{self, ShadowRegion};

/// Outcome of one identity over its range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub range: String,
    pub pass: bool,
    /// Number of objects or values examined.
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl CheckRecord {
    fn new(name: &str, range: String, outcome: std::result::Result<u64, String>) -> Self {
        let (pass, checked, counterexample) = match outcome {
            Ok(checked) => (true, checked, None),
            Err(ce) => (false, 0, Some(ce)),
        };
        CheckRecord {
            name: name.to_string(),
            range,
            pass,
            checked,
            counterexample,
        }
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{:<64} {:<22} {status}", self.name, self.range)?;
        match &self.counterexample {
            Some(ce) => write!(f, "  counterexample: {ce}"),
            None => write!(f, "  ({} checked)", self.checked),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} identities, {} passed, {failed} failed",
            self.records.len(),
            self.records.len() - failed
        )
    }
}

/// Budgets for [`verify_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Largest length for bijection and lemma checks.
    pub max_n_bijections: usize,
    /// Largest length for cardinality checks.
    pub max_n_counts: usize,
    /// Largest number of nested paths.
    pub max_k: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n_bijections: 10,
            max_n_counts: 12,
            max_k: 2,
        }
    }
}

impl SuiteConfig {
    /// Same length budget for bijections and counts.
    pub fn uniform(max_n: usize, max_k: usize) -> Self {
        SuiteConfig {
            max_n_bijections: max_n,
            max_n_counts: max_n,
            max_k,
        }
    }
}

pub fn verify_suite(cfg: &SuiteConfig) -> Report {
    let nb = cfg.max_n_bijections;
    let nc = cfg.max_n_counts;
    let mut records = vec![
        check_golden_examples(),
        check_single_path_counts(nc),
        check_xi_bijection(nc),
        check_xi_facing_pairs(nc),
        check_xi_s_bijection(nc),
        check_nu_bijection(nc),
        check_phi_bijection(nb),
        check_phi_image(nb),
        check_height_identity(nc),
        check_inequality_chain(nb),
        check_chi_bounds(nb),
        check_psi_bijection(nb),
        check_psi_composite(nb),
        check_fixed_end_bijection(nb),
        check_fixed_end_counts(nb),
        check_omega_bijection(nb.min(8)),
        check_omega_restrictions(nb),
        check_omega_dictionary(nb),
        check_shadow_membership(12),
        check_conjugation(nb),
        check_psi_tilde_s(nb.min(9)),
        check_phi_tilde_identity(nb),
        check_det_vs_macmahon(20, cfg.max_k.max(4)),
        check_sum_vs_det(20),
        check_octant_formulas(nc.min(11)),
        check_quadrant_excursions(nc / 2),
        check_phi_tilde_excursions(nb / 2),
    ];
    for k in 1..=cfg.max_k {
        let n = if k <= 2 { nc } else { nb.min(8) };
        records.push(check_prefix_vs_grand(n, k));
    }
    let pp_k = cfg.max_k.max(3);
    records.push(check_pp_roundtrip(3.min(nb), pp_k));
    records.push(check_watermelons(4.min(nb), pp_k));
    records.push(check_diagram_containment(nb.min(8)));
    Report {
        pass: records.iter().all(|r| r.pass),
        records,
    }
}

fn valid_ij(n: usize) -> Vec<(usize, usize)> {
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

fn pairs_of(spec: FamilySpec) -> Vec<PathPair> {
    let mut out: Vec<PathPair> = enumerate_family(&spec)
        .expect("family parameters are valid")
        .iter()
        .map(|t| PathPair::try_from(t).expect("family of pairs"))
        .collect();
    out.sort();
    out
}

fn paths_of(spec: FamilySpec) -> Vec<LatticePath> {
    enumerate_paths(&spec).expect("family parameters are valid")
}

/// First failure message over `items`, in input order.
fn scan<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> std::result::Result<u64, String> {
    match items.par_iter().find_map_first(f) {
        Some(ce) => Err(ce),
        None => Ok(items.len() as u64),
    }
}

/// Checks that `f` and `g` are mutually inverse bijections between two sorted sets.
fn bijection<A, B>(
    domain: &[A],
    codomain: &[B],
    f: impl Fn(&A) -> Result<B> + Sync + Send,
    g: impl Fn(&B) -> Result<A> + Sync + Send,
) -> std::result::Result<u64, String>
where
    A: Ord + Display + Sync,
    B: Ord + Display + Sync,
{
    if domain.len() != codomain.len() {
        return Err(format!(
            "domain has {} elements, codomain has {}",
            domain.len(),
            codomain.len()
        ));
    }
    let forward = scan(domain, |x| match f(x) {
        Err(e) => Some(format!("{x}: {e}")),
        Ok(y) if codomain.binary_search(&y).is_err() => Some(format!("{x} -> {y}, outside the codomain")),
        Ok(y) => match g(&y) {
            Err(e) => Some(format!("{x} -> {y}, inverse fails: {e}")),
            Ok(z) if z != *x => Some(format!("{x} -> {y} -> {z}")),
            Ok(_) => None,
        },
    })?;
    let backward = scan(codomain, |y| match g(y) {
        Err(e) => Some(format!("{y}: {e}")),
        Ok(x) if domain.binary_search(&x).is_err() => Some(format!("{y} -> {x}, outside the domain")),
        Ok(x) => match f(&x) {
            Err(e) => Some(format!("{y} -> {x}, forward fails: {e}")),
            Ok(z) if z != *y => Some(format!("{y} -> {x} -> {z}")),
            Ok(_) => None,
        },
    })?;
    Ok(forward + backward)
}

fn each_n(max_n: usize, mut f: impl FnMut(usize) -> std::result::Result<u64, String>) -> std::result::Result<u64, String> {
    let mut total = 0;
    for n in 0..=max_n {
        total += f(n).map_err(|e| format!("n={n}: {e}"))?;
    }
    Ok(total)
}

fn each_ij(
    max_n: usize,
    mut f: impl FnMut(usize, usize, usize) -> std::result::Result<u64, String>,
) -> std::result::Result<u64, String> {
    each_n(max_n, |n| {
        let mut total = 0;
        for (i, j) in valid_ij(n) {
            total += f(n, i, j).map_err(|e| format!("i={i}, j={j}: {e}"))?;
        }
        Ok(total)
    })
}

fn expect_eq<T: PartialEq + Display>(what: &str, got: T, want: T) -> std::result::Result<u64, String> {
    if got == want {
        Ok(1)
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn p(s: &str) -> LatticePath {
    s.parse().expect("literal path")
}

pub fn check_golden_examples() -> CheckRecord {
    let src = p("UUDDUUDUUDDUUUDU");
    let outcome = (|| {
        let xi = single::xi(&src).map_err(|e| e.to_string())?;
        let nu = single::nu(&src).map_err(|e| e.to_string())?;
        expect_eq("xi", xi, p("UUDDDUDUUDDDUUDU"))?;
        expect_eq("nu", nu, p("DUDDUUDDUUDUUDDU"))?;
        Ok(2)
    })();
    CheckRecord::new("golden examples for xi and nu", "n=16".into(), outcome)
}

pub fn check_single_path_counts(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let count = |spec| BigCount::from(count_family(&spec).expect("valid parameters"));
        let central = binomial(n as u64, (n / 2) as i64);
        expect_eq("|A_n|", count(FamilySpec::A { n }), BigCount::from(1u64) << n)?;
        expect_eq("|P_n|", count(FamilySpec::P { n }), central.clone())?;
        expect_eq("|G_n|", count(FamilySpec::G { n }), central)?;
        let dyck = if n % 2 == 0 { catalan((n / 2) as u64) } else { BigCount::from(0u8) };
        expect_eq("|D_n|", count(FamilySpec::D { n }), dyck)?;
        Ok(4)
    });
    CheckRecord::new("|A_n|, |P_n| = |G_n|, |D_2m| = C_m", format!("n<={max_n}"), outcome)
}

pub fn check_xi_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        bijection(
            &paths_of(FamilySpec::P { n }),
            &paths_of(FamilySpec::G { n }),
            single::xi,
            single::xi_inv,
        )
    });
    CheckRecord::new("xi bijects prefixes onto Grand Dyck paths", format!("n<={max_n}"), outcome)
}

pub fn check_xi_facing_pairs(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        scan(&paths_of(FamilySpec::P { n }), |x| {
            let image = single::xi(x).ok()?;
            let (a, b) = (match_path(x).pair_set(), match_path(&image).pair_set());
            (a != b).then(|| format!("{x} -> {image} changes the facing pairs"))
        })
    });
    CheckRecord::new("xi preserves facing pairs", format!("n<={max_n}"), outcome)
}

pub fn check_xi_s_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let prefixes = paths_of(FamilySpec::P { n });
        let all = paths_of(FamilySpec::A { n });
        let mut total = 0;
        for i in (n % 2..=n).step_by(2) {
            for s in (i % 2..=i).step_by(2) {
                let si = s as i64;
                let depth = -((i - s) as i64 / 2);
                let domain: Vec<_> = prefixes.iter().filter(|x| x.end_height() == i as i64).cloned().collect();
                let codomain: Vec<_> = all
                    .iter()
                    .filter(|r| r.end_height() == si && r.min_height() == depth)
                    .cloned()
                    .collect();
                total += bijection(&domain, &codomain, |x| single::xi_s(x, si), single::xi_s_inv)
                    .map_err(|e| format!("i={i}, s={s}: {e}"))?;
            }
        }
        Ok(total)
    });
    CheckRecord::new("xi_s bijection for every end height", format!("n<={max_n}"), outcome)
}

pub fn check_nu_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let end = -((n % 2) as i64);
        let codomain: Vec<_> = paths_of(FamilySpec::A { n })
            .into_iter()
            .filter(|g| g.end_height() == end)
            .collect();
        bijection(&paths_of(FamilySpec::P { n }), &codomain, single::nu, single::nu_inv)
    });
    CheckRecord::new("nu bijects prefixes onto paths ending at -(n mod 2)", format!("n<={max_n}"), outcome)
}

pub fn check_phi_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        bijection(
            &pairs_of(FamilySpec::M2ij { n, i, j }),
            &pairs_of(FamilySpec::P2ij { n, i, j }),
            |x| pairs::phi(x, i, j).map(|r| r.0),
            |y| pairs::phi_inv(y, i, j).map(|r| r.0),
        )
    });
    CheckRecord::new("phi bijects M(n,i,j) onto P(n,i,j)", format!("n<={max_n}, all i,j"), outcome)
}

pub fn check_phi_image(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        let (i, j) = (i as i64, j as i64);
        scan(&pairs_of(FamilySpec::M2ij { n, i: i as usize, j: j as usize }), |x| {
            let (y, _) = pairs::phi(x, i as usize, j as usize).ok()?;
            let (hp, hq) = y.end_heights();
            let ok = y.is_nested()
                && y.lower.is_prefix()
                && i - j <= hq
                && hq <= i + j
                && i + j <= hp;
            (!ok).then(|| format!("{x} -> {y}"))
        })
    });
    CheckRecord::new(
        "phi image: P >= Q >= 0, i-j <= h(Q) <= i+j <= h(P)",
        format!("n<={max_n}, all i,j"),
        outcome,
    )
}

fn count_upto(positions: &[usize], a: usize) -> i64 {
    positions.iter().filter(|&&x| x <= a).count() as i64
}

pub fn check_height_identity(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let qs: Vec<_> = paths_of(FamilySpec::A { n })
            .into_iter()
            .filter(|q| q.end_height() >= 0)
            .collect();
        scan(&qs, |q| {
            let (q_prime, rec) = pairs::flip_below(q).ok()?;
            let (hq, hq2) = (q.heights(), q_prime.heights());
            (0..=n)
                .find(|&a| hq2[a] != hq[a].abs() + 2 * count_upto(&rec.returns, a))
                .map(|a| format!("Q={q}, Q'={q_prime}, a={a}"))
        })
    });
    CheckRecord::new("h_a(Q') = h_a(|Q|) + 2|R<=a|", format!("n<={max_n}"), outcome)
}

pub fn check_inequality_chain(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        scan(&pairs_of(FamilySpec::M2ij { n, i, j }), |x| {
            let (q_prime, rec) = pairs::flip_below(&x.lower).ok()?;
            let (_, full) = pairs::phi(x, i, j).ok()?;
            let (hp, hq2) = (x.upper.heights(), q_prime.heights());
            let mut running = 0;
            for a in 0..=n {
                running = running.max(hq2[a] - hp[a]);
                let chi = 2 * count_upto(&full.chi, a);
                let ret = 2 * count_upto(&rec.returns, a);
                if chi != running || running > ret {
                    return Some(format!("{x}, a={a}: 2|chi|={chi}, max={running}, 2|R|={ret}"));
                }
            }
            None
        })
    });
    CheckRecord::new("2|chi<=a| = max(h_b(Q') - h_b(P)) <= 2|R<=a|", format!("n<={max_n}, all i,j"), outcome)
}

pub fn check_chi_bounds(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        scan(&pairs_of(FamilySpec::M2ij { n, i, j }), |x| {
            let (_, rec) = pairs::phi(x, i, j).ok()?;
            let (chi, r) = (rec.chi.len(), rec.r);
            (chi > r || chi + j < r).then(|| format!("{x}: |chi|={chi}, r={r}"))
        })
    });
    CheckRecord::new("r - j <= |chi| <= r", format!("n<={max_n}, all i,j"), outcome)
}

pub fn check_psi_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        let delta = (i % 2) as i64;
        let half = (i / 2) as i64;
        let post = |y: &PathPair| -> Result<()> {
            let (hp, hq) = y.end_heights();
            let lowest = pairs::ell(&y.upper, &y.lower)?;
            if hp == j as i64 + delta && hq == -(j as i64) + delta && lowest == -half {
                Ok(())
            } else {
                Err(crate::error::Error::domain(
                    "G postconditions",
                    format!("h(P)={hp}, h(Q)={hq}, lowest={lowest}"),
                ))
            }
        };
        bijection(
            &pairs_of(FamilySpec::M2ij { n, i, j }),
            &pairs_of(FamilySpec::G2ij { n, i, j }),
            |x| {
                let y = pairs::psi(x)?;
                post(&y)?;
                Ok(y)
            },
            pairs::psi_inv,
        )
    });
    CheckRecord::new("psi bijects M(n,i,j) onto G(n,i,j)", format!("n<={max_n}, all i,j"), outcome)
}

pub fn check_psi_composite(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        bijection(
            &pairs_of(FamilySpec::Pk { n, k: 2 }),
            &pairs_of(FamilySpec::Gk { n, k: 2 }),
            |x| {
                let i = x.lower.end_height() as usize;
                pairs::psi(&pairs::phi_inv(x, i, 0)?.0)
            },
            |y| Ok(pairs::phi_auto(&pairs::psi_inv(y)?)?.0),
        )
    });
    CheckRecord::new("psi . phi^-1 bijects nested prefix pairs onto Grand Dyck pairs", format!("n<={max_n}"), outcome)
}

fn valid_s(n: usize) -> impl Iterator<Item = usize> {
    (n % 2..=n).step_by(2)
}

pub fn check_fixed_end_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let prefixes = pairs_of(FamilySpec::Pk { n, k: 2 });
        let mut total = 0;
        for s in valid_s(n) {
            let si = s as i64;
            let domain: Vec<_> = prefixes.iter().filter(|x| x.lower.end_height() >= si).cloned().collect();
            let codomain = pairs_of(FamilySpec::EndingAt { n, k: 2, s: si });
            total += bijection(
                &domain,
                &codomain,
                |x| {
                    let i = x.lower.end_height() as usize;
                    pairs::psi_s(&pairs::phi_inv(x, i, 0)?.0, si)
                },
                |y| Ok(pairs::phi_auto(&pairs::psi_s_inv(y)?)?.0),
            )
            .map_err(|e| format!("s={s}: {e}"))?;
        }
        Ok(total)
    });
    CheckRecord::new("psi_s . phi^-1: {h(Q) >= s} onto pairs ending at s", format!("n<={max_n}, all s"), outcome)
}

pub fn check_fixed_end_counts(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let prefixes = pairs_of(FamilySpec::Pk { n, k: 2 });
        let mut total = 0;
        for s in valid_s(n) {
            let left = prefixes.iter().filter(|x| x.lower.end_height() >= s as i64).count() as u64;
            let target = CensusTarget::Paths(FamilySpec::EndingAt { n, k: 2, s: s as i64 });
            let right = brute_count(&target, &Budget { max_n: usize::MAX }).map_err(|e| e.to_string())?;
            total += expect_eq(&format!("s={s}"), left.into(), right)?;
        }
        Ok(total)
    });
    CheckRecord::new("#{h(Q) >= s} = #{h(P) = h(Q) = s}", format!("n<={max_n}, all s"), outcome)
}

pub fn check_omega_bijection(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let all = paths_of(FamilySpec::A { n });
        let mut domain = Vec::with_capacity(all.len() * all.len());
        for a in &all {
            for b in &all {
                domain.push(PathPair { upper: a.clone(), lower: b.clone() });
            }
        }
        let codomain = enumerate_walks(&WalkFamily::new(n, Region::Plane));
        bijection(&domain, &codomain, |x| Ok(walks::omega_pair(x)), |w| Ok(walks::omega_inv(w)))
    });
    CheckRecord::new("omega bijects pairs of paths onto walks", format!("n<={max_n}"), outcome)
}

pub fn check_omega_restrictions(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        let (ii, jj) = (i as i64, j as i64);
        let sh = ShadowRegion::new(ii, jj).map_err(|e| e.to_string())?;
        let cases = [
            (
                "P/O",
                FamilySpec::P2ij { n, i, j },
                WalkFamily::new(n, Region::Octant).ending(Endpoint::InShadow(sh)),
            ),
            (
                "M/Q",
                FamilySpec::M2ij { n, i, j },
                WalkFamily::new(n, Region::Quadrant).ending(Endpoint::At(ii, jj)),
            ),
            (
                "G/H",
                FamilySpec::G2ij { n, i, j },
                WalkFamily::new(n, Region::UpperHalf)
                    .ending(Endpoint::At(ii % 2, jj))
                    .with_min_x(-(ii / 2)),
            ),
        ];
        let mut total = 0;
        for (name, spec, family) in cases {
            let mut image: Vec<_> = pairs_of(spec).iter().map(walks::omega_pair).collect();
            image.sort();
            let walks = enumerate_walks(&family);
            if image != walks {
                let odd = image
                    .iter()
                    .find(|w| walks.binary_search(w).is_err())
                    .or_else(|| walks.iter().find(|w| image.binary_search(w).is_err()));
                return Err(match odd {
                    Some(w) => format!("{name}: {w} is in exactly one side"),
                    None => format!("{name}: images differ"),
                });
            }
            total += image.len() as u64;
        }
        Ok(total)
    });
    CheckRecord::new("omega maps P, M, G onto O, Q, H", format!("n<={max_n}, all i,j"), outcome)
}

pub fn check_omega_dictionary(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let all = paths_of(FamilySpec::A { n });
        let rows: Vec<usize> = (0..all.len()).collect();
        let checked = scan(&rows, |&a| {
            let pp = &all[a];
            all.iter().find_map(|q| dictionary_row(pp, q))
        })?;
        Ok(checked * all.len() as u64)
    });
    CheckRecord::new("path conditions match walk conditions under omega", format!("n<={max_n}"), outcome)
}

fn dictionary_row(p: &LatticePath, q: &LatticePath) -> Option<String> {
    let n = p.len() as i64;
    let w = walks::omega(p, q).ok()?;
    let pos = w.positions();
    let (x, y) = w.endpoint();
    let (hp, hq) = (p.end_height(), q.end_height());
    let fail = |what: &str| Some(format!("({p},{q}) -> {w}: {what}"));
    if q.is_weakly_below(p).ok()? != pos.iter().all(|c| c.1 >= 0) {
        return fail("P >= Q vs y >= 0");
    }
    if q.is_prefix() != pos.iter().all(|c| c.1 <= c.0) {
        return fail("Q >= 0 vs y <= x");
    }
    if p.negate().is_weakly_below(q).ok()? != pos.iter().all(|c| c.0 >= 0) {
        return fail("-P <= Q vs x >= 0");
    }
    if (hp == hq) != (y == 0) {
        return fail("h(P) = h(Q) vs y = 0 at the end");
    }
    for i in -n..=n {
        if (hq == i) != (y == x - i) {
            return fail(&format!("h(Q) = {i} vs y = x - {i}"));
        }
    }
    for i in 0..=n {
        for j in 0..=i {
            if (hp == i + j && hq == i - j) != ((x, y) == (i, j)) {
                return fail(&format!("end heights vs endpoint ({i}, {j})"));
            }
            let path_side = i - j <= hq && hq <= i + j && i + j <= hp;
            let sh = ShadowRegion::new(i, j).ok()?;
            if path_side != sh.contains((x, y)) {
                return fail(&format!("shadow of ({i}, {j})"));
            }
        }
    }
    None
}

pub fn check_shadow_membership(radius: i64) -> CheckRecord {
    let mut cells = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            cells.push((x, y));
        }
    }
    let outcome = (|| {
        let mut total = 0;
        for i in 0..=radius {
            for j in 0..=i {
                let sh = ShadowRegion::new(i, j).map_err(|e| e.to_string())?;
                total += scan(&cells, |&(x, y)| {
                    let d = x - y;
                    let s = x + y;
                    let want = i - j <= d && d <= i + j && i + j <= s;
                    (sh.contains((x, y)) != want).then(|| format!("({x}, {y}) in sh({i}, {j})"))
                })?;
            }
        }
        Ok(total)
    })();
    CheckRecord::new("shadow membership", format!("|x|,|y|<={radius}"), outcome)
}

pub fn check_conjugation(max_n: usize) -> CheckRecord {
    let outcome = each_ij(max_n, |n, i, j| {
        let m = scan(&pairs_of(FamilySpec::M2ij { n, i, j }), |x| {
            let w = walks::omega_pair(x);
            let via_paths = walks::omega_pair(&pairs::phi(x, i, j).ok()?.0);
            match walks::phi_tilde(&w) {
                Ok(v) if v == via_paths => {}
                other => return Some(format!("phi on {x}: walk {w} gives {other:?}, paths give {via_paths}")),
            }
            let via_paths = walks::omega_pair(&pairs::psi(x).ok()?);
            match walks::psi_tilde(&w) {
                Ok(v) if v == via_paths => None,
                other => Some(format!("psi on {x}: walk {w} gives {other:?}, paths give {via_paths}")),
            }
        })?;
        let p2 = scan(&pairs_of(FamilySpec::P2ij { n, i, j }), |x| {
            let w = walks::omega_pair(x);
            let via_paths = walks::omega_pair(&pairs::phi_inv(x, i, j).ok()?.0);
            match walks::phi_tilde_inv(&w, i, j) {
                Ok(v) if v == via_paths => None,
                other => Some(format!("phi^-1 on {x}: walk {w} gives {other:?}, paths give {via_paths}")),
            }
        })?;
        Ok(m + p2)
    });
    CheckRecord::new("walk maps equal omega-conjugated path maps", format!("n<={max_n}, all i,j"), outcome)
}

pub fn check_psi_tilde_s(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let mut total = 0;
        for (s, j) in valid_ij(n) {
            let (si, jj) = (s as i64, j as i64);
            let mut domain = Vec::new();
            for i in (s..=n - j).step_by(2) {
                let family = WalkFamily::new(n, Region::Quadrant).ending(Endpoint::At(i as i64, jj));
                domain.extend(enumerate_walks(&family));
            }
            domain.sort();
            let codomain = enumerate_walks(&WalkFamily::new(n, Region::UpperHalf).ending(Endpoint::At(si, jj)));
            total += bijection(&domain, &codomain, |w| walks::psi_tilde_s(w, si), walks::psi_tilde_s_inv)
                .map_err(|e| format!("s={s}, j={j}: {e}"))?;
        }
        Ok(total)
    });
    CheckRecord::new("psi~_s bijects quadrant walks onto half-plane walks", format!("n<={max_n}, all s,j"), outcome)
}

pub fn check_phi_tilde_identity(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let ws = enumerate_walks(&WalkFamily::new(n, Region::Octant).ending(Endpoint::OnXAxis));
        scan(&ws, |w| match walks::phi_tilde(w) {
            Ok(v) if v == *w => None,
            other => Some(format!("{w} -> {other:?}")),
        })
    });
    CheckRecord::new("phi~ fixes octant walks ending on the x-axis", format!("n<={max_n}"), outcome)
}

pub fn check_det_vs_macmahon(max_n: usize, max_k: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let (p, q) = ((n - n / 2) as u64, (n / 2) as u64);
        let mut total = 0;
        for k in 1..=max_k {
            let det = count_grand_tuples_det(n as u64, k);
            total += expect_eq(&format!("k={k}"), det, count_macmahon(p, q, k as u64))?;
        }
        Ok(total)
    });
    CheckRecord::new("determinant = MacMahon product", format!("n<={max_n}, k<={max_k}"), outcome)
}

pub fn check_sum_vs_det(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| expect_eq("sum", count_g2_sum(n as u64), count_grand_tuples_det(n as u64, 2)));
    CheckRecord::new("sum formula = determinant for pairs", format!("n<={max_n}"), outcome)
}

/// Nested `k`-tuples of prefixes and of Grand Dyck paths, both brute forced,
/// against the determinant and product formulas (and the sum for `k = 2`).
pub fn check_prefix_vs_grand(max_n: usize, k: usize) -> CheckRecord {
    let unlimited = Budget { max_n: usize::MAX };
    let outcome = each_n(max_n, |n| {
        let pk = brute_count(&CensusTarget::Paths(FamilySpec::Pk { n, k }), &unlimited).map_err(|e| e.to_string())?;
        let gk = brute_count(&CensusTarget::Paths(FamilySpec::Gk { n, k }), &unlimited).map_err(|e| e.to_string())?;
        let (p, q) = ((n - n / 2) as u64, (n / 2) as u64);
        expect_eq("|G^k| vs |P^k|", gk, pk.clone())?;
        expect_eq("determinant", count_grand_tuples_det(n as u64, k), pk.clone())?;
        expect_eq("MacMahon", count_macmahon(p, q, k as u64), pk.clone())?;
        if k == 2 {
            expect_eq("sum", count_g2_sum(n as u64), pk)?;
        }
        Ok(1)
    });
    CheckRecord::new(
        &format!("|P^{k}_n| = |G^{k}_n| = det = product"),
        format!("n<={max_n}, k={k}"),
        outcome,
    )
}

pub fn check_octant_formulas(max_n: usize) -> CheckRecord {
    let budget = Budget { max_n: usize::MAX };
    let census = |family: WalkFamily| brute_count(&CensusTarget::Walks(family), &budget).map_err(|e| e.to_string());
    let outcome = each_n(max_n, |n| {
        let octant = WalkFamily::new(n, Region::Octant);
        expect_eq("octant total", census(octant)?, count_octant_total(n as u64))?;
        expect_eq("octant x-axis", census(octant.ending(Endpoint::OnXAxis))?, count_octant_xaxis(n as u64))?;
        if n % 2 == 0 {
            let diag = census(octant.ending(Endpoint::OnDiagonal))?;
            expect_eq("octant diagonal", diag, count_octant_diag((n / 2) as u64))?;
        }
        Ok(3)
    });
    CheckRecord::new("octant walk formulas vs census", format!("n<={max_n}"), outcome)
}

pub fn check_quadrant_excursions(max_m: usize) -> CheckRecord {
    let budget = Budget { max_n: usize::MAX };
    let outcome = each_n(max_m, |m| {
        let family = WalkFamily::new(2 * m, Region::Quadrant).ending(Endpoint::At(0, 0));
        let got = brute_count(&CensusTarget::Walks(family), &budget).map_err(|e| e.to_string())?;
        expect_eq("quadrant excursions", got, catalan(m as u64) * catalan(m as u64 + 1))
    });
    CheckRecord::new("quadrant walks back to the origin = C_m C_(m+1)", format!("m<={max_m}"), outcome)
}

pub fn check_phi_tilde_excursions(max_m: usize) -> CheckRecord {
    let outcome = each_n(max_m, |m| {
        let n = 2 * m;
        let quadrant = enumerate_walks(&WalkFamily::new(n, Region::Quadrant).ending(Endpoint::At(0, 0)));
        let octant = enumerate_walks(&WalkFamily::new(n, Region::Octant).ending(Endpoint::OnDiagonal));
        bijection(&quadrant, &octant, walks::phi_tilde, |w| walks::phi_tilde_inv(w, 0, 0))
    });
    CheckRecord::new(
        "phi~ bijects quadrant excursions onto diagonal octant walks",
        format!("m<={max_m}"),
        outcome,
    )
}

pub fn check_pp_roundtrip(max_pq: usize, max_k: usize) -> CheckRecord {
    let outcome = (|| {
        let mut total = 0;
        for pw in 0..=max_pq {
            for qh in 0..=max_pq {
                for k in 1..=max_k {
                    let tag = |e: String| format!("p={pw}, q={qh}, k={k}: {e}");
                    let spec = FamilySpec::EndingAt { n: pw + qh, k, s: pw as i64 - qh as i64 };
                    let tuples = enumerate_family(&spec).map_err(|e| tag(e.to_string()))?;
                    let partitions = enumerate_pp(pw, qh, k);
                    total += bijection(&tuples, &partitions, |t| tuple_to_pp(t, pw, qh), |a| pp_to_tuple(a, k))
                        .map_err(tag)?;
                }
            }
        }
        Ok(total)
    })();
    CheckRecord::new("nested tuples <-> plane partitions", format!("p,q<={max_pq}, k<={max_k}"), outcome)
}

pub fn check_watermelons(max_pq: usize, max_k: usize) -> CheckRecord {
    let outcome = (|| {
        let mut total = 0;
        for pw in 0..=max_pq {
            for qh in 0..=max_pq {
                for k in 1..=max_k {
                    let spec = FamilySpec::EndingAt { n: pw + qh, k, s: pw as i64 - qh as i64 };
                    let got = count_family(&spec).map_err(|e| e.to_string())?;
                    let want = count_macmahon(pw as u64, qh as u64, k as u64);
                    total += expect_eq(&format!("p={pw}, q={qh}, k={k}"), got.into(), want)?;
                }
            }
        }
        Ok(total)
    })();
    CheckRecord::new("watermelons = MacMahon product", format!("p,q<={max_pq}, k<={max_k}"), outcome)
}

pub fn check_diagram_containment(max_n: usize) -> CheckRecord {
    let outcome = each_n(max_n, |n| {
        let mut total = 0;
        for pw in 0..=n {
            let qh = n - pw;
            let paths: Vec<_> = paths_of(FamilySpec::EndingAt { n, k: 1, s: pw as i64 - qh as i64 });
            total += scan(&paths, |upper| {
                let du = path_to_diagram(upper, pw, qh).ok()?;
                paths.iter().find_map(|lower| {
                    let dl = path_to_diagram(lower, pw, qh).ok()?;
                    let below = lower.is_weakly_below(upper).ok()?;
                    (below != du.is_subset_of(&dl)).then(|| format!("{upper} vs {lower}"))
                })
            })? * paths.len() as u64;
        }
        Ok(total)
    });
    CheckRecord::new("Q <= P iff diagram(P) within diagram(Q)", format!("p+q<={max_n}"), outcome)
}
