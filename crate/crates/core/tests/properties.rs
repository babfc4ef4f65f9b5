use lattice_nest::plane_partitions::{pp_to_tuple, tuple_to_pp};
use lattice_nest::{pairs, single, walks, LatticePath, PathPair, PlanePartition, PlaneWalk, Step, WalkStep};
use proptest::prelude::*;

fn path_from(bits: &[bool]) -> LatticePath {
    LatticePath::new(bits.iter().map(|&d| if d { Step::D } else { Step::U }).collect())
}

fn from_heights(h: &[i64]) -> LatticePath {
    LatticePath::new(h.windows(2).map(|w| if w[1] > w[0] { Step::U } else { Step::D }).collect())
}

fn abs_heights(p: &LatticePath) -> Vec<i64> {
    p.heights().into_iter().map(i64::abs).collect()
}

fn any_path(max: usize) -> impl Strategy<Value = LatticePath> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(|b| path_from(&b))
}

fn prefix(max: usize) -> impl Strategy<Value = LatticePath> {
    any_path(max).prop_map(|p| from_heights(&abs_heights(&p)))
}

/// Nested prefix pair `(max(|A|,|B|), min(|A|,|B|))` of a common length.
fn prefix_pair(max: usize) -> impl Strategy<Value = PathPair> {
    (0..=max)
        .prop_flat_map(|n| (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n)))
        .prop_map(|(a, b)| {
            let (ha, hb) = (abs_heights(&path_from(&a)), abs_heights(&path_from(&b)));
            let hi: Vec<i64> = ha.iter().zip(&hb).map(|(x, y)| *x.max(y)).collect();
            let lo: Vec<i64> = ha.iter().zip(&hb).map(|(x, y)| *x.min(y)).collect();
            PathPair::new(from_heights(&hi), from_heights(&lo)).unwrap()
        })
}

/// A nested prefix pair with one admissible `(i, j)`.
fn p2_member(max: usize) -> impl Strategy<Value = (PathPair, usize, usize)> {
    prefix_pair(max)
        .prop_flat_map(|pair| {
            let (hp, hq) = pair.end_heights();
            let span = ((hp - hq) / 2) as usize;
            (Just(pair), 0..=span, 0..=(hq as usize / 2))
        })
        .prop_map(|(pair, up, down)| {
            let (_, hq) = pair.end_heights();
            let sum = hq as usize + 2 * up;
            let diff = hq as usize - 2 * down;
            let diff = diff.min(sum);
            ((pair), (sum + diff) / 2, (sum - diff) / 2)
        })
}

fn walk(max: usize) -> impl Strategy<Value = PlaneWalk> {
    prop::collection::vec(prop::sample::select(WalkStep::ALL.to_vec()), 0..=max).prop_map(PlaneWalk::new)
}

proptest! {
    #[test]
    fn xi_roundtrip(p in prefix(40)) {
        let g = single::xi(&p).unwrap();
        prop_assert!(g.is_grand());
        prop_assert_eq!(single::xi_inv(&g).unwrap(), p);
    }

    #[test]
    fn nu_roundtrip(p in prefix(40)) {
        let g = single::nu(&p).unwrap();
        prop_assert_eq!(single::nu_inv(&g).unwrap(), p);
    }

    #[test]
    fn xi_s_roundtrip(p in prefix(40), pick in 0usize..20) {
        let i = p.end_height();
        let s = i - 2 * (pick as i64 % (i / 2 + 1));
        let r = single::xi_s(&p, s).unwrap();
        prop_assert_eq!(r.end_height(), s);
        prop_assert_eq!(r.min_height(), -(i - s) / 2);
        prop_assert_eq!(single::xi_s_inv(&r).unwrap(), p);
    }

    #[test]
    fn phi_roundtrip_on_random_pairs((pair, i, j) in p2_member(30)) {
        let (m, _) = pairs::phi_inv(&pair, i, j).unwrap();
        prop_assert_eq!(m.end_heights(), ((i + j) as i64, i as i64 - j as i64));
        prop_assert!(m.is_nested());
        prop_assert!(m.upper.negate().is_weakly_below(&m.lower).unwrap());
        let (back, rec) = pairs::phi(&m, i, j).unwrap();
        prop_assert_eq!(&back, &pair);
        prop_assert!(rec.chi.len() <= rec.r && rec.r <= rec.chi.len() + j);
        let g = pairs::psi(&m).unwrap();
        prop_assert_eq!(pairs::psi_inv(&g).unwrap(), m.clone());
        let w = walks::omega_pair(&m);
        prop_assert_eq!(walks::phi_tilde(&w).unwrap(), walks::omega_pair(&back));
        prop_assert_eq!(walks::psi_tilde(&w).unwrap(), walks::omega_pair(&g));
        prop_assert_eq!(walks::phi_tilde_inv(&walks::omega_pair(&pair), i, j).unwrap(), w);
    }

    #[test]
    fn omega_roundtrip(w in walk(30)) {
        let pair = walks::omega_inv(&w);
        prop_assert_eq!(walks::omega_pair(&pair), w.clone());
        let (x, y) = w.endpoint();
        let (hp, hq) = pair.end_heights();
        prop_assert_eq!((x, y), ((hp + hq) / 2, (hp - hq) / 2));
    }

    #[test]
    fn split_reinterleaves(w in walk(30)) {
        prop_assert_eq!(walks::ns_ew_split(&w).interleave(), w);
    }

    #[test]
    fn plane_partition_roundtrip(rows in prop::collection::vec(prop::collection::vec(0usize..5, 4), 3)) {
        // Sorting rows and then columns gives a plane partition.
        let mut rows = rows;
        for r in &mut rows {
            r.sort_unstable_by(|a, b| b.cmp(a));
        }
        for c in 0..4 {
            let mut col: Vec<usize> = rows.iter().map(|r| r[c]).collect();
            col.sort_unstable_by(|a, b| b.cmp(a));
            for (r, v) in rows.iter_mut().zip(col) {
                r[c] = v;
            }
        }
        let a = PlanePartition::new(4, 3, rows).unwrap();
        let t = pp_to_tuple(&a, 4).unwrap();
        prop_assert_eq!(t.k(), 4);
        prop_assert_eq!(tuple_to_pp(&t, 4, 3).unwrap(), a.clone());
        prop_assert_eq!(a.to_string().parse::<PlanePartition>().unwrap(), a);
    }

    #[test]
    fn text_encodings_roundtrip(p in any_path(30), w in walk(30)) {
        prop_assert_eq!(p.to_string().parse::<LatticePath>().unwrap(), p);
        prop_assert_eq!(w.to_string().parse::<PlaneWalk>().unwrap(), w);
    }
}
