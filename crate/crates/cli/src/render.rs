//! Deterministic SVG rendering of arrangements.
//!
//! Element `e` occupies the column `[margin + e·dx, margin + (e+1)·dx]` and
//! position `p` sits at height `margin + (p-1)·dy`. A tangency nest shares its
//! column between the pieces of its expansion.

use std::fmt::Write;

use braidwork_core::{validate, Arrangement, Element, Sign, Violation};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSpec {
    pub dx: f64,
    pub dy: f64,
    pub margin: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self { dx: 60.0, dy: 40.0, margin: 40.0 }
    }
}

#[derive(Debug, Error)]
#[error("invalid arrangement: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
pub struct RenderError(pub Vec<Violation>);

const PALETTE: [&str; 10] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
];

pub fn color(comp: usize) -> &'static str {
    PALETTE[comp % PALETTE.len()]
}

struct Canvas<'a> {
    spec: &'a RenderSpec,
    /// Strand id (initial 0-based position) at each position.
    row: Vec<usize>,
    paths: Vec<Vec<(f64, f64)>>,
    glyphs: String,
    comp: &'a [usize],
}

fn f(x: f64) -> String {
    let s = format!("{x:.1}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

impl Canvas<'_> {
    fn y(&self, pos: usize) -> f64 {
        self.spec.margin + (pos - 1) as f64 * self.spec.dy
    }

    fn step(&mut self, e: &Element, x0: f64, x1: f64) {
        let mid = (x0 + x1) / 2.0;
        let before = self.row.clone();
        e.permute(&mut self.row);
        match *e {
            Element::I { i, j } => {
                let (ya, yb) = (self.y(i), self.y(j));
                if j == i + 1 {
                    let _ = writeln!(self.glyphs, r#"<circle class="dot" cx="{}" cy="{}" r="4"/>"#, f(mid), f((ya + yb) / 2.0));
                } else {
                    let _ = writeln!(
                        self.glyphs,
                        r#"<rect class="spanning-dot" x="{}" y="{}" width="8" height="{}" rx="4"/>"#,
                        f(mid - 4.0),
                        f(ya - 4.0),
                        f(yb - ya + 8.0)
                    );
                }
            }
            Element::X { i, k, .. } => {
                let (ya, yb) = (self.y(i), self.y(k));
                let _ = writeln!(
                    self.glyphs,
                    r#"<rect class="grid" x="{}" y="{}" width="{}" height="{}"/>"#,
                    f(x0 + 4.0),
                    f(ya - 6.0),
                    f(x1 - x0 - 8.0),
                    f(yb - ya + 12.0)
                );
            }
            Element::T { i } => {
                let yc = (self.y(i) + self.y(i + 1)) / 2.0;
                for p in [i, i + 1] {
                    self.paths[before[p - 1]].push((mid, yc));
                }
                let _ = writeln!(
                    self.glyphs,
                    r#"<path class="cusp" d="M {} {} L {} {} L {} {}"/>"#,
                    f(mid - 5.0),
                    f(yc - 5.0),
                    f(mid),
                    f(yc),
                    f(mid - 5.0),
                    f(yc + 5.0)
                );
            }
            Element::S { i, sign } => {
                let (ya, yb) = (self.y(i), self.y(i + 1));
                let over = match sign {
                    Sign::Pos => before[i - 1],
                    Sign::Neg => before[i],
                };
                let (from, to) = if sign == Sign::Pos { (ya, yb) } else { (yb, ya) };
                let _ = writeln!(
                    self.glyphs,
                    r#"<g class="crossing"><circle cx="{}" cy="{}" r="5" fill="white"/><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/></g>"#,
                    f(mid),
                    f((ya + yb) / 2.0),
                    f(x0),
                    f(from),
                    f(x1),
                    f(to),
                    color(self.comp[over])
                );
            }
            Element::TN { .. } => unreachable!("nests are expanded before drawing"),
        }
        for (q, &s) in self.row.iter().enumerate() {
            let y = self.y(q + 1);
            self.paths[s].push((x1, y));
        }
    }
}

/// Renders a valid arrangement as SVG 1.1.
pub fn render(a: &Arrangement, spec: &RenderSpec) -> Result<String, RenderError> {
    let d = a.diagram();
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(RenderError(violations));
    }
    let n = d.strands();
    let comp = d.chart().comp_map();
    let mut c = Canvas {
        spec,
        row: (0..n).collect(),
        paths: (0..n).map(|p| vec![(spec.margin, spec.margin + p as f64 * spec.dy)]).collect(),
        glyphs: String::new(),
        comp,
    };
    for (idx, e) in d.elements().iter().enumerate() {
        let x0 = spec.margin + idx as f64 * spec.dx;
        let parts = match e {
            Element::TN { .. } => e.expand(),
            _ => vec![*e],
        };
        let w = spec.dx / parts.len() as f64;
        for (k, part) in parts.iter().enumerate() {
            c.step(part, x0 + k as f64 * w, x0 + (k + 1) as f64 * w);
        }
        if let Element::TN { a, b } = *e {
            let (ya, yb) = (c.y(a) - 10.0, c.y(b) + 10.0);
            let (l, r) = (x0 + 3.0, x0 + spec.dx - 3.0);
            let _ = writeln!(
                c.glyphs,
                r#"<path class="bracket" d="M {} {} H {} V {} H {} M {} {} H {} V {} H {}"/>"#,
                f(l + 5.0),
                f(ya),
                f(l),
                f(yb),
                f(l + 5.0),
                f(r - 5.0),
                f(ya),
                f(r),
                f(yb),
                f(r - 5.0)
            );
        }
    }
    let x_end = spec.margin + d.len() as f64 * spec.dx;
    let free_total: usize = a.free_points().iter().sum();
    let width = x_end + spec.margin + 14.0 * free_total as f64;
    let height = 2.0 * spec.margin + (n.max(1) - 1) as f64 * spec.dy;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = f(width),
        h = f(height)
    );
    out.push_str("<style>.strand{fill:none;stroke-width:2}.dot,.spanning-dot{fill:black}.grid{fill:none;stroke:black;stroke-dasharray:3 2}.cusp,.bracket{fill:none;stroke:black}.free-point{fill:white;stroke-width:2}.label{font:12px sans-serif}</style>\n");
    for (s, pts) in c.paths.iter().enumerate() {
        let mut dpath = String::new();
        for (k, (x, y)) in pts.iter().enumerate() {
            let _ = write!(dpath, "{}{} {}", if k == 0 { "M " } else { " L " }, f(*x), f(*y));
        }
        let _ = writeln!(out, r#"<path class="strand" data-strand="{}" stroke="{}" d="{dpath}"/>"#, s + 1, color(comp[s]));
    }
    out.push_str(&c.glyphs);
    let mut x = x_end + 14.0;
    for (k, &count) in a.free_points().iter().enumerate() {
        let Some(&last) = c.row.iter().find(|&&s| comp[s] == k) else { continue };
        let pos = c.row.iter().position(|&s| s == last).expect("strand is present") + 1;
        for _ in 0..count {
            let _ = writeln!(
                out,
                r#"<circle class="free-point" cx="{}" cy="{}" r="4" stroke="{}"/>"#,
                f(x),
                f(c.y(pos)),
                color(k)
            );
            x += 14.0;
        }
    }
    for (p, &k) in comp.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" text-anchor="end">{}</text>"#,
            f(spec.margin - 8.0),
            f(spec.margin + p as f64 * spec.dy + 4.0),
            escape(d.chart().name(k))
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
