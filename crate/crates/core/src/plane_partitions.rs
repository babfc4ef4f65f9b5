//! Plane partitions in a box and nested tuples of paths with a common endpoint.
//!
//! A path with `p` up steps and `q` down steps is read as a Young diagram with
//! `q` rows: row `t` has as many cells as there are `U` steps after the `t`-th
//! `D`. Lower paths give larger diagrams. A nested `k`-tuple then stacks into
//! a plane partition whose entry at a cell counts the layers containing it,
//! the top path being the smallest layer.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::paths::{LatticePath, NestedTuple, Step};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(
                "Young diagrams",
                format!("parts {parts:?} are not weakly decreasing"),
            ));
        }
        Ok(YoungDiagram { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Cell in row `row`, column `col`, both 1-based.
    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.parts.get(row - 1).is_some_and(|&len| col <= len)
    }

    pub fn is_subset_of(&self, other: &YoungDiagram) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Boundary path with `p` up steps: `p - part_t` up steps precede the `t`-th down step.
    pub fn to_path(&self, p: usize) -> Result<LatticePath> {
        if let Some(&big) = self.parts.iter().find(|&&len| len > p) {
            return Err(Error::params(format!("part {big} exceeds width {p}")));
        }
        let mut steps = Vec::with_capacity(p + self.parts.len());
        let mut ups = 0;
        for &len in &self.parts {
            while ups < p - len {
                steps.push(Step::U);
                ups += 1;
            }
            steps.push(Step::D);
        }
        steps.extend(std::iter::repeat_n(Step::U, p - ups));
        Ok(LatticePath::new(steps))
    }
}

pub fn path_to_diagram(path: &LatticePath, p: usize, q: usize) -> Result<YoungDiagram> {
    let (ups, downs) = (path.count(Step::U), path.count(Step::D));
    if ups != p || downs != q {
        return Err(Error::domain(
            "paths with p up and q down steps",
            format!("{path} has {ups} up and {downs} down steps, expected {p} and {q}"),
        ));
    }
    let mut parts = Vec::with_capacity(q);
    let mut seen_u = 0;
    for s in path.steps() {
        match s {
            Step::U => seen_u += 1,
            Step::D => parts.push(p - seen_u),
        }
    }
    Ok(YoungDiagram { parts })
}

/// A `q x p` array, weakly decreasing along rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePartition {
    p: usize,
    q: usize,
    entries: Vec<Vec<usize>>,
}

impl PlanePartition {
    /// `entries` has `q` rows of length `p`.
    pub fn new(p: usize, q: usize, entries: Vec<Vec<usize>>) -> Result<Self> {
        if entries.len() != q || entries.iter().any(|r| r.len() != p) {
            return Err(Error::params(format!("expected {q} rows of length {p}")));
        }
        for r in 0..q {
            for c in 0..p {
                let v = entries[r][c];
                let row_bad = c + 1 < p && entries[r][c + 1] > v;
                let col_bad = r + 1 < q && entries[r + 1][c] > v;
                if row_bad || col_bad {
                    return Err(Error::domain(
                        "plane partitions",
                        format!("entries increase at row {}, column {}", r + 1, c + 1),
                    ));
                }
            }
        }
        Ok(PlanePartition { p, q, entries })
    }

    pub fn zero(p: usize, q: usize) -> Self {
        PlanePartition {
            p,
            q,
            entries: vec![vec![0; p]; q],
        }
    }

    pub fn width(&self) -> usize {
        self.p
    }

    pub fn height(&self) -> usize {
        self.q
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn fits(&self, k: usize) -> bool {
        self.max_entry() <= k
    }

    /// Level set `{a >= level}` as a diagram with `q` rows.
    pub fn level_set(&self, level: usize) -> YoungDiagram {
        let parts = self
            .entries
            .iter()
            .map(|row| row.iter().take_while(|&&v| v >= level).count())
            .collect();
        YoungDiagram { parts }
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.iter().enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for PlanePartition {
    type Err = Error;

    /// Rows of space-separated integers, one per line. `;` also separates rows.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            what: "plane partition",
            input: s.to_string(),
            reason,
        };
        let rows = s
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split_whitespace()
                    .map(|v| v.parse::<usize>().map_err(|e| parse_err(format!("{v:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let p = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != p) {
            return Err(parse_err("rows have different lengths".into()));
        }
        let q = rows.len();
        PlanePartition::new(p, q, rows)
    }
}

pub fn tuple_to_pp(tuple: &NestedTuple, p: usize, q: usize) -> Result<PlanePartition> {
    let target = p as i64 - q as i64;
    let diagrams = tuple
        .paths()
        .iter()
        .map(|path| {
            if path.len() != p + q || path.end_height() != target {
                return Err(Error::domain(
                    "tuples ending at (p+q, p-q)",
                    format!("{path} does not end at ({}, {target})", p + q),
                ));
            }
            path_to_diagram(path, p, q)
        })
        .collect::<Result<Vec<_>>>()?;
    let entries = (1..=q)
        .map(|r| {
            (1..=p)
                .map(|c| diagrams.iter().filter(|d| d.contains_cell(r, c)).count())
                .collect()
        })
        .collect();
    Ok(PlanePartition { p, q, entries })
}

/// Layer `l` (1-based, top first) is the boundary of `{a >= k+1-l}`.
pub fn pp_to_tuple(pp: &PlanePartition, k: usize) -> Result<NestedTuple> {
    if k == 0 {
        return Err(Error::params("k must be at least 1"));
    }
    if !pp.fits(k) {
        return Err(Error::domain(
            "plane partitions in the box",
            format!("entry {} exceeds k={k}", pp.max_entry()),
        ));
    }
    let layers = (1..=k)
        .map(|l| pp.level_set(k + 1 - l).to_path(pp.p))
        .collect::<Result<Vec<_>>>()?;
    NestedTuple::new(layers)
}

/// All plane partitions in a `p x q x k` box, in row-major lexicographic order.
pub fn enumerate_pp(p: usize, q: usize, k: usize) -> Vec<PlanePartition> {
    let mut out = Vec::new();
    let mut flat = vec![0usize; p * q];
    fill_cell(p, q, k, 0, &mut flat, &mut out);
    out
}

fn fill_cell(
    p: usize,
    q: usize,
    k: usize,
    idx: usize,
    flat: &mut [usize],
    out: &mut Vec<PlanePartition>,
) {
    if idx == p * q {
        let entries = flat.chunks(p.max(1)).take(q).map(<[usize]>::to_vec).collect();
        let entries = if p == 0 { vec![Vec::new(); q] } else { entries };
        out.push(PlanePartition { p, q, entries });
        return;
    }
    let (r, c) = (idx / p, idx % p);
    let mut cap = k;
    if c > 0 {
        cap = cap.min(flat[idx - 1]);
    }
    if r > 0 {
        cap = cap.min(flat[idx - p]);
    }
    for v in 0..=cap {
        flat[idx] = v;
        fill_cell(p, q, k, idx + 1, flat, out);
    }
}
