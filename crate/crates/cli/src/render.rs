//! Deterministic SVG drawings of paths, pairs, tri-paths and walks.
//!
//! One lattice unit is 20 pixels. All coordinates are integers, so the output
//! is byte-identical for identical inputs.

use std::fmt::Write;

use lattice_nest::matching::{match_faces, TriStep};
use lattice_nest::{LatticePath, PathPair, PlaneWalk, ShadowRegion, TriPath};

const UNIT: i64 = 20;
const MARGIN: i64 = 20;
const PATH_COLOR: &str = "#1f4e9c";
const LOWER_COLOR: &str = "#b03a2e";
const FLIP_COLOR: &str = "#e08a00";

/// Lattice-space bounding box with the y axis pointing up.
struct Canvas {
    min_x: i64,
    max_x: i64,
    min_y: i64,
    max_y: i64,
    body: String,
}

impl Canvas {
    fn new(min_x: i64, max_x: i64, min_y: i64, max_y: i64) -> Self {
        Canvas {
            min_x,
            max_x: max_x.max(min_x + 1),
            min_y,
            max_y: max_y.max(min_y + 1),
            body: String::new(),
        }
    }

    /// Pixel coordinates of a point given in half units.
    fn px(&self, hx: i64, hy: i64) -> (i64, i64) {
        let x = MARGIN + (hx - 2 * self.min_x) * UNIT / 2;
        let y = MARGIN + (2 * self.max_y - hy) * UNIT / 2;
        (x, y)
    }

    fn grid(&mut self) {
        let (left, top) = self.px(2 * self.min_x, 2 * self.max_y);
        let (right, bottom) = self.px(2 * self.max_x, 2 * self.min_y);
        for x in self.min_x..=self.max_x {
            let (px, _) = self.px(2 * x, 0);
            line(&mut self.body, (px, top), (px, bottom), "stroke=\"#e4e4e4\" stroke-width=\"1\"");
        }
        for y in self.min_y..=self.max_y {
            let (_, py) = self.px(0, 2 * y);
            line(&mut self.body, (left, py), (right, py), "stroke=\"#e4e4e4\" stroke-width=\"1\"");
        }
    }

    fn axis_line(&mut self, from: (i64, i64), to: (i64, i64), attrs: &str) {
        let a = self.px(2 * from.0, 2 * from.1);
        let b = self.px(2 * to.0, 2 * to.1);
        line(&mut self.body, a, b, attrs);
    }

    fn polyline(&mut self, points: &[(i64, i64)], color: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|&(x, y)| {
                let (px, py) = self.px(2 * x, 2 * y);
                format!("{px},{py}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
            pts.join(" ")
        );
    }

    /// Thick segment over a highlighted step, plus a marker at its midpoint.
    fn highlight(&mut self, from: (i64, i64), to: (i64, i64)) {
        self.axis_line(from, to, &format!("stroke=\"{FLIP_COLOR}\" stroke-width=\"5\""));
        let (cx, cy) = self.px(from.0 + to.0, from.1 + to.1);
        let _ = writeln!(self.body, "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"4\" fill=\"{FLIP_COLOR}\"/>");
    }

    /// Dotted tunnel between two step midpoints, given in half units.
    fn tunnel(&mut self, from: (i64, i64), to: (i64, i64)) {
        let a = self.px(from.0, from.1);
        let b = self.px(to.0, to.1);
        line(&mut self.body, a, b, "stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"2,3\"");
    }

    fn polygon(&mut self, corners: &[(i64, i64)], fill: &str) {
        let pts: Vec<String> = corners
            .iter()
            .map(|&(x, y)| {
                let (px, py) = self.px(2 * x, 2 * y);
                format!("{px},{py}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            "  <polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"0.45\" stroke=\"none\"/>",
            pts.join(" ")
        );
    }

    fn finish(self) -> String {
        let width = 2 * MARGIN + (self.max_x - self.min_x) * UNIT;
        let height = 2 * MARGIN + (self.max_y - self.min_y) * UNIT;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        );
        let _ = writeln!(out, "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn line(buf: &mut String, (x1, y1): (i64, i64), (x2, y2): (i64, i64), attrs: &str) {
    let _ = writeln!(buf, "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {attrs}/>");
}

fn points_of(heights: &[i64]) -> Vec<(i64, i64)> {
    heights.iter().enumerate().map(|(x, &h)| (x as i64, h)).collect()
}

fn step_canvas(len: usize, heights: &[&[i64]]) -> Canvas {
    let all = heights.iter().flat_map(|h| h.iter().copied());
    let (lo, hi) = all.fold((0, 0), |(lo, hi), h| (lo.min(h), hi.max(h)));
    let mut c = Canvas::new(0, len as i64, lo, hi);
    c.grid();
    c.axis_line((0, 0), (len as i64, 0), "stroke=\"black\" stroke-width=\"1\"");
    c
}

/// Dotted tunnels for every matched pair of a U/D/H word.
fn draw_tunnels(c: &mut Canvas, path: &TriPath) {
    let heights = path.heights();
    for (u, d) in match_faces(path).pairs {
        let level = 2 * heights[u - 1] + 1;
        c.tunnel((2 * u as i64 - 1, level), (2 * d as i64 - 1, level));
    }
}

fn highlight_steps(c: &mut Canvas, heights: &[i64], positions: &[usize]) {
    for &pos in positions {
        let a = (pos as i64 - 1, heights[pos - 1]);
        let b = (pos as i64, heights[pos]);
        c.highlight(a, b);
    }
}

/// A single path; `flips` lists 1-based steps to highlight.
pub fn render_path(path: &LatticePath, show_matching: bool, flips: &[usize]) -> String {
    let heights = path.heights();
    let mut c = step_canvas(path.len(), &[&heights]);
    if show_matching {
        draw_tunnels(&mut c, &TriPath::from(path));
    }
    c.polyline(&points_of(&heights), PATH_COLOR);
    highlight_steps(&mut c, &heights, flips);
    c.finish()
}

/// Both paths of a pair; `flips` lists highlighted steps of the upper and lower path.
pub fn render_pair(pair: &PathPair, show_matching: bool, flips: (&[usize], &[usize])) -> String {
    let (hp, hq) = (pair.upper.heights(), pair.lower.heights());
    let mut c = step_canvas(pair.len(), &[&hp, &hq]);
    if show_matching {
        draw_tunnels(&mut c, &TriPath::from(&pair.upper));
        draw_tunnels(&mut c, &TriPath::from(&pair.lower));
    }
    c.polyline(&points_of(&hp), PATH_COLOR);
    c.polyline(&points_of(&hq), LOWER_COLOR);
    highlight_steps(&mut c, &hp, flips.0);
    highlight_steps(&mut c, &hq, flips.1);
    c.finish()
}

pub fn render_tripath(path: &TriPath, show_matching: bool) -> String {
    let heights = path.heights();
    let mut c = step_canvas(path.len(), &[&heights]);
    if show_matching {
        draw_tunnels(&mut c, path);
    }
    c.polyline(&points_of(&heights), PATH_COLOR);
    for (idx, s) in path.steps().iter().enumerate() {
        if *s == TriStep::H {
            let (cx, cy) = c.px(2 * idx as i64 + 1, 2 * heights[idx]);
            let _ = writeln!(c.body, "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"2\" fill=\"{PATH_COLOR}\"/>");
        }
    }
    c.finish()
}

/// A plane walk, with the diagonal `y = x` dotted and an optional shaded shadow.
pub fn render_walk(walk: &PlaneWalk, shadow: Option<ShadowRegion>, flips: &[usize]) -> String {
    let positions = walk.positions();
    let n = walk.len() as i64;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = positions.iter().fold((0, 0, 0, 0), |b, &(x, y)| {
        (b.0.min(x), b.1.max(x), b.2.min(y), b.3.max(y))
    });
    if let Some(sh) = shadow {
        max_x = max_x.max(sh.i + sh.j);
        max_y = max_y.max(sh.j);
    }
    min_x -= 1;
    min_y -= 1;
    max_x += 1;
    max_y += 1;
    let mut c = Canvas::new(min_x, max_x, min_y, max_y);
    if let Some(sh) = shadow {
        let reach = n + sh.i + sh.j + 2;
        c.polygon(
            &[
                (sh.i, sh.j),
                (sh.i + sh.j, 0),
                (sh.i + sh.j + reach, reach),
                (sh.i + reach, sh.j + reach),
            ],
            "#f5b971",
        );
    }
    c.grid();
    c.axis_line((min_x, 0), (max_x, 0), "stroke=\"black\" stroke-width=\"1\"");
    c.axis_line((0, min_y), (0, max_y), "stroke=\"black\" stroke-width=\"1\"");
    let lo = min_x.max(min_y);
    let hi = max_x.min(max_y);
    if lo < hi {
        c.axis_line((lo, lo), (hi, hi), "stroke=\"#777777\" stroke-width=\"1\" stroke-dasharray=\"2,3\"");
    }
    c.polyline(&positions, PATH_COLOR);
    for &pos in flips {
        c.highlight(positions[pos - 1], positions[pos]);
    }
    let (ex, ey) = c.px(2 * positions[positions.len() - 1].0, 2 * positions[positions.len() - 1].1);
    let _ = writeln!(c.body, "  <circle cx=\"{ex}\" cy=\"{ey}\" r=\"3\" fill=\"{PATH_COLOR}\"/>");
    c.finish()
}
