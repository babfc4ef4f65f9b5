//! Acceptance gate: eleven criteria, each with a pinned time budget.
//!
//! Run with `cargo test -p lattice-nest --test acceptance`. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use lattice_nest::enumeration::{
    brute_count, count_g2_sum, count_grand_tuples_det, count_macmahon, count_octant_diag,
    count_octant_total, count_octant_xaxis, Budget, CensusTarget, Endpoint, Region, WalkFamily,
};
use lattice_nest::paths::count_family;
use lattice_nest::plane_partitions::{enumerate_pp, pp_to_tuple, tuple_to_pp};
use lattice_nest::{pairs, single, walks, BigCount, FamilySpec, LatticePath, NestedTuple, PathPair, ShadowRegion};

type Outcome = Result<(), String>;

fn p(s: &str) -> LatticePath {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `f` maps `domain` into `codomain` injectively with `g . f = id`, and
/// `f . g = id` on `codomain`; equal sizes make it a bijection.
fn check_bijection<A, B>(
    domain: &[A],
    codomain: &[B],
    f: impl Fn(&A) -> lattice_nest::Result<B>,
    g: impl Fn(&B) -> lattice_nest::Result<A>,
) -> Outcome
where
    A: Ord + Clone + std::fmt::Display,
    B: Ord + Clone + std::fmt::Display,
{
    let cod: BTreeSet<&B> = codomain.iter().collect();
    ensure(domain.len() == codomain.len(), || {
        format!("sizes differ: {} vs {}", domain.len(), codomain.len())
    })?;
    let mut images = BTreeSet::new();
    for x in domain {
        let y = f(x).map_err(|e| format!("{x}: {e}"))?;
        ensure(cod.contains(&y), || format!("{x} -> {y} outside the codomain"))?;
        let back = g(&y).map_err(|e| format!("{y}: {e}"))?;
        ensure(back == *x, || format!("{x} -> {y} -> {back}"))?;
        ensure(images.insert(y.clone()), || format!("{y} hit twice"))?;
    }
    for y in codomain {
        let x = g(y).map_err(|e| format!("{y}: {e}"))?;
        let again = f(&x).map_err(|e| format!("{x}: {e}"))?;
        ensure(again == *y, || format!("{y} -> {x} -> {again}"))?;
    }
    Ok(())
}

fn sorted(mut v: Vec<PathPair>) -> Vec<PathPair> {
    v.sort();
    v
}

fn criterion_1() -> Outcome {
    let src = p("UUDDUUDUUDDUUUDU");
    let xi = single::xi(&src).map_err(|e| e.to_string())?;
    ensure(xi == p("UUDDDUDUUDDDUUDU"), || format!("xi gave {xi}"))?;
    let nu = single::nu(&src).map_err(|e| e.to_string())?;
    ensure(nu == p("DUDDUUDDUUDUUDDU"), || format!("nu gave {nu}"))
}

fn criterion_2() -> Outcome {
    for n in 0..=10 {
        let sets = pair_sets(n);
        for (i, j) in valid_ij(n) {
            let m = sorted(sets.m2[&(i, j)].clone());
            let t = sorted(sets.p2[&(i, j)].clone());
            check_bijection(&m, &t, |x| Ok(pairs::phi(x, i, j)?.0), |y| Ok(pairs::phi_inv(y, i, j)?.0))
                .map_err(|e| format!("n={n}, i={i}, j={j}: {e}"))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for n in 0..=10 {
        let sets = pair_sets(n);
        for (i, j) in valid_ij(n) {
            let m = sorted(sets.m2[&(i, j)].clone());
            let g = sorted(sets.g2[&(i, j)].clone());
            let (delta, half) = ((i % 2) as i64, (i / 2) as i64);
            for x in &m {
                let y = pairs::psi(x).map_err(|e| e.to_string())?;
                let (hp, hq) = (heights(&y.upper), heights(&y.lower));
                let lowest = hp.iter().zip(&hq).map(|(a, b)| (a + b) / 2).min().unwrap();
                ensure(
                    *hp.last().unwrap() == j as i64 + delta
                        && *hq.last().unwrap() == -(j as i64) + delta
                        && lowest == -half,
                    || format!("n={n}, i={i}, j={j}: {x} -> {y} violates the end/minimum conditions"),
                )?;
            }
            check_bijection(&m, &g, pairs::psi, pairs::psi_inv).map_err(|e| format!("n={n}, i={i}, j={j}: {e}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let budget = Budget { max_n: 12 };
    for n in 0..=12usize {
        let hp = with_heights(n);
        let prefixes: Vec<Hp> = hp.iter().filter(|x| x.min() >= 0).cloned().collect();
        let grand: Vec<Hp> = hp.iter().filter(|x| x.end() == (n % 2) as i64).cloned().collect();
        let naive_p = nested_tuples(&prefixes, 2);
        let naive_g = nested_tuples(&grand, 2);
        let lib_p = brute_count(&CensusTarget::Paths(FamilySpec::Pk { n, k: 2 }), &budget).map_err(|e| e.to_string())?;
        let lib_g = brute_count(&CensusTarget::Paths(FamilySpec::Gk { n, k: 2 }), &budget).map_err(|e| e.to_string())?;
        let nn = n as u64;
        let values = [
            BigCount::from(naive_p),
            BigCount::from(naive_g),
            lib_p,
            lib_g,
            count_grand_tuples_det(nn, 2),
            count_macmahon(nn - nn / 2, nn / 2, 2),
            count_g2_sum(nn),
        ];
        ensure(values.iter().all(|v| *v == values[0]), || format!("n={n}: {values:?}"))?;
        if n == 4 {
            ensure(values[0] == BigCount::from(20u32), || format!("n=4 gives {}", values[0]))?;
        }
    }
    Ok(())
}

fn count_upto(positions: &[usize], a: usize) -> i64 {
    positions.iter().filter(|&&x| x <= a).count() as i64
}

fn criterion_5() -> Outcome {
    for n in 0..=10 {
        let sets = pair_sets(n);
        for (&(i, j), members) in &sets.m2 {
            for x in members {
                let (q_prime, rec) = pairs::flip_below(&x.lower).map_err(|e| e.to_string())?;
                let (_, full) = pairs::phi(x, i, j).map_err(|e| e.to_string())?;
                let (hq, hq2, hp) = (heights(&x.lower), heights(&q_prime), heights(&x.upper));
                // Returns recomputed here: U steps of Q ending at height 0.
                let returns: Vec<usize> = (1..=n).filter(|&a| hq[a] == 0 && hq[a - 1] == -1).collect();
                ensure(returns == rec.returns, || format!("{x}: returns {:?}", rec.returns))?;
                let mut running = 0;
                for a in 0..=n {
                    ensure(hq2[a] == hq[a].abs() + 2 * count_upto(&returns, a), || {
                        format!("height identity fails for {x} at a={a}")
                    })?;
                    running = running.max(hq2[a] - hp[a]);
                    let chi = 2 * count_upto(&full.chi, a);
                    ensure(chi == running && running <= 2 * count_upto(&returns, a), || {
                        format!("inequality chain fails for {x} at a={a}")
                    })?;
                }
                let (c, r) = (full.chi.len(), returns.len());
                ensure(c <= r && r <= c + j, || format!("{x}: |chi|={c}, r={r}, j={j}"))?;
            }
        }
    }
    Ok(())
}

fn dictionary_entry(a: &LatticePath, b: &LatticePath) -> Outcome {
    let n = a.len() as i64;
    let w = omega_table(a, b);
    let pos = walk_positions(&w);
    let (x, y) = *pos.last().unwrap();
    let (ha, hb) = (heights(a), heights(b));
    let (hp, hq) = (*ha.last().unwrap(), *hb.last().unwrap());
    let tag = || format!("({a},{b}) -> {w}");
    ensure(le(&hb, &ha) == pos.iter().all(|c| c.1 >= 0), || format!("{}: row 1", tag()))?;
    ensure(hb.iter().all(|&h| h >= 0) == pos.iter().all(|c| c.1 <= c.0), || format!("{}: row 2", tag()))?;
    ensure(neg_le(&ha, &hb) == pos.iter().all(|c| c.0 >= 0), || format!("{}: row 3", tag()))?;
    ensure((hp == hq) == (y == 0), || format!("{}: row 4", tag()))?;
    for i in -n..=n {
        ensure((hq == i) == (y == x - i), || format!("{}: row 5, i={i}", tag()))?;
    }
    for i in 0..=n {
        for j in 0..=i {
            ensure((hp == i + j && hq == i - j) == ((x, y) == (i, j)), || format!("{}: row 6", tag()))?;
            let in_shadow = ShadowRegion::new(i, j).unwrap().contains((x, y));
            ensure((i - j <= hq && hq <= i + j && i + j <= hp) == in_shadow, || format!("{}: row 7", tag()))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for n in 0..=10 {
        let all = all_paths(n);
        for a in &all {
            for b in &all {
                dictionary_entry(a, b)?;
            }
        }
        let sets = pair_sets(n);
        for (&(i, j), members) in &sets.m2 {
            for x in members {
                let w = omega_table(&x.upper, &x.lower);
                ensure(walks::omega_pair(x) == w, || format!("omega({x}) differs from the table"))?;
                let (phi_x, _) = pairs::phi(x, i, j).map_err(|e| e.to_string())?;
                let lhs = walks::phi_tilde(&w).map_err(|e| format!("{w}: {e}"))?;
                ensure(lhs == omega_table(&phi_x.upper, &phi_x.lower), || format!("phi~ on {w}"))?;
                let psi_x = pairs::psi(x).map_err(|e| e.to_string())?;
                let lhs = walks::psi_tilde(&w).map_err(|e| format!("{w}: {e}"))?;
                ensure(lhs == omega_table(&psi_x.upper, &psi_x.lower), || format!("psi~ on {w}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let budget = Budget { max_n: 12 };
    for n in 0..=11usize {
        let (mut total, mut xaxis, mut diag) = (0u64, 0u64, 0u64);
        every_walk(n, &mut |steps| {
            let w = lattice_nest::PlaneWalk::new(steps.to_vec());
            let pos = walk_positions(&w);
            if pos.iter().all(|&(x, y)| x >= y && y >= 0) {
                let (x, y) = *pos.last().unwrap();
                total += 1;
                xaxis += (y == 0) as u64;
                diag += (x == y) as u64;
            }
        });
        let octant = WalkFamily::new(n, Region::Octant);
        let lib = |f: WalkFamily| brute_count(&CensusTarget::Walks(f), &budget).map_err(|e| e.to_string());
        let nn = n as u64;
        ensure(
            BigCount::from(total) == count_octant_total(nn) && lib(octant)? == count_octant_total(nn),
            || format!("n={n}: total {total}"),
        )?;
        ensure(
            BigCount::from(xaxis) == count_octant_xaxis(nn) && lib(octant.ending(Endpoint::OnXAxis))? == count_octant_xaxis(nn),
            || format!("n={n}: x-axis {xaxis}"),
        )?;
        if n % 2 == 0 {
            ensure(
                BigCount::from(diag) == count_octant_diag(nn / 2)
                    && lib(octant.ending(Endpoint::OnDiagonal))? == count_octant_diag(nn / 2),
                || format!("n={n}: diagonal {diag}"),
            )?;
        }
    }
    let spot = [
        (count_octant_total(2), 3u32),
        (count_octant_xaxis(4), 10),
        (count_octant_diag(2), 10),
        (count_octant_total(4), 20),
    ];
    ensure(spot.iter().all(|(a, b)| *a == BigCount::from(*b)), || format!("{spot:?}"))
}

fn criterion_8() -> Outcome {
    for n in 0..=10usize {
        let sets = pair_sets(n);
        for s in (n % 2..=n).step_by(2) {
            let si = s as i64;
            let domain = sorted(
                sets.prefix_pairs
                    .iter()
                    .filter(|x| x.lower.end_height() >= si)
                    .cloned()
                    .collect(),
            );
            let codomain = sorted(
                sets.nested
                    .iter()
                    .filter(|x| x.upper.end_height() == si && x.lower.end_height() == si)
                    .cloned()
                    .collect(),
            );
            check_bijection(
                &domain,
                &codomain,
                |x| {
                    let i = x.lower.end_height() as usize;
                    pairs::psi_s(&pairs::phi_inv(x, i, 0)?.0, si)
                },
                |y| Ok(pairs::phi_auto(&pairs::psi_s_inv(y)?)?.0),
            )
            .map_err(|e| format!("n={n}, s={s}: {e}"))?;
            let lib = count_family(&FamilySpec::EndingAt { n, k: 2, s: si }).map_err(|e| e.to_string())?;
            ensure(lib == domain.len() as u64, || format!("n={n}, s={s}: census {lib} vs {}", domain.len()))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let budget = Budget { max_n: 12 };
    for m in 0..=5usize {
        let n = 2 * m;
        let quadrant = walks_where(n, |(x, y)| x >= 0 && y >= 0, |pos| *pos.last().unwrap() == (0, 0));
        let octant = walks_where(n, |(x, y)| x >= y && y >= 0, |pos| {
            let (x, y) = *pos.last().unwrap();
            x == y
        });
        let want = catalan(m as u64) * catalan(m as u64 + 1);
        ensure(quadrant.len() as u64 == want, || format!("m={m}: {} excursions", quadrant.len()))?;
        let fam = WalkFamily::new(n, Region::Quadrant).ending(Endpoint::At(0, 0));
        let lib = brute_count(&CensusTarget::Walks(fam), &budget).map_err(|e| e.to_string())?;
        ensure(lib == BigCount::from(want), || format!("m={m}: library census {lib}"))?;
        check_bijection(&quadrant, &octant, walks::phi_tilde, |w| walks::phi_tilde_inv(w, 0, 0))
            .map_err(|e| format!("m={m}: {e}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for pw in 0..=4usize {
        for qh in 0..=4usize {
            let n = pw + qh;
            let pool: Vec<Hp> = with_heights(n)
                .into_iter()
                .filter(|x| x.end() == pw as i64 - qh as i64)
                .collect();
            for k in 1..=3usize {
                let naive = nested_tuples(&pool, k);
                let product = count_macmahon(pw as u64, qh as u64, k as u64);
                ensure(BigCount::from(naive) == product, || {
                    format!("p={pw}, q={qh}, k={k}: {naive} tuples vs product {product}")
                })?;
                if pw > 3 || qh > 3 {
                    continue;
                }
                let partitions = enumerate_pp(pw, qh, k);
                ensure(partitions.len() as u64 == naive, || format!("p={pw}, q={qh}, k={k}: partition count"))?;
                let mut tuples: Vec<NestedTuple> = Vec::new();
                collect_tuples(&pool, k, &mut Vec::new(), &mut tuples);
                tuples.sort();
                check_bijection(&tuples, &partitions, |t| tuple_to_pp(t, pw, qh), |a| pp_to_tuple(a, k))
                    .map_err(|e| format!("p={pw}, q={qh}, k={k}: {e}"))?;
            }
        }
    }
    Ok(())
}

fn collect_tuples(pool: &[Hp], k: usize, acc: &mut Vec<usize>, out: &mut Vec<NestedTuple>) {
    if acc.len() == k {
        let paths = acc.iter().map(|&t| pool[t].path.clone()).collect();
        out.push(NestedTuple::new(paths).unwrap());
        return;
    }
    for c in 0..pool.len() {
        if acc.last().is_none_or(|&a| le(&pool[c].h, &pool[a].h)) {
            acc.push(c);
            collect_tuples(pool, k, acc, out);
            acc.pop();
        }
    }
}

fn criterion_11() -> Outcome {
    let budget = Budget { max_n: 12 };
    for n in 0..=8usize {
        let hp = with_heights(n);
        let prefixes: Vec<Hp> = hp.iter().filter(|x| x.min() >= 0).cloned().collect();
        let grand: Vec<Hp> = hp.iter().filter(|x| x.end() == (n % 2) as i64).cloned().collect();
        let (np, ng) = (nested_tuples(&prefixes, 3), nested_tuples(&grand, 3));
        let lib_p = brute_count(&CensusTarget::Paths(FamilySpec::Pk { n, k: 3 }), &budget).map_err(|e| e.to_string())?;
        let lib_g = brute_count(&CensusTarget::Paths(FamilySpec::Gk { n, k: 3 }), &budget).map_err(|e| e.to_string())?;
        ensure(np == ng && lib_p == BigCount::from(np) && lib_g == BigCount::from(ng), || {
            format!("n={n}: naive {np} vs {ng}, library {lib_p} vs {lib_g}")
        })?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    what: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, what: "golden examples for xi and nu", budget: secs(1), run: criterion_1 },
        Criterion { id: 2, what: "phi bijects M(n,i,j) onto P(n,i,j), n <= 10", budget: secs(30), run: criterion_2 },
        Criterion { id: 3, what: "psi bijects M(n,i,j) onto G(n,i,j), n <= 10", budget: secs(30), run: criterion_3 },
        Criterion { id: 4, what: "|P2_n| = |G2_n| = det = product = sum, n <= 12", budget: secs(20), run: criterion_4 },
        Criterion { id: 5, what: "height identity, inequality chain, |chi| bounds", budget: secs(10), run: criterion_5 },
        Criterion { id: 6, what: "walk maps conjugate to path maps; omega dictionary", budget: secs(30), run: criterion_6 },
        Criterion { id: 7, what: "octant walk formulas vs census, n <= 11", budget: secs(30), run: criterion_7 },
        Criterion { id: 8, what: "psi_s . phi^-1 onto pairs ending at s, n <= 10", budget: secs(20), run: criterion_8 },
        Criterion { id: 9, what: "quadrant excursions and phi~ onto the diagonal, m <= 5", budget: secs(20), run: criterion_9 },
        Criterion { id: 10, what: "tuples <-> plane partitions; watermelons", budget: secs(10), run: criterion_10 },
        Criterion { id: 11, what: "|P3_n| = |G3_n|, n <= 8", budget: secs(20), run: criterion_11 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Err(e) => format!("FAIL  {e}"),
            Ok(()) if elapsed > c.budget => format!("FAIL  over budget of {}s", c.budget.as_secs()),
            Ok(()) => "PASS".to_string(),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2}: {:<56} {:>7.2}s  {verdict}", c.id, c.what, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
