//! SVG drawing of a fundamental domain.
//!
//! Vertices are placed by a periodic harmonic layout: each vertex sits at
//! the average of its neighbours in the universal cover, where an arrow's
//! head is shifted by the arrow's homology label. Faces then close up and the
//! unit square is a fundamental domain. Faces, arrows and vertices are drawn
//! once each and repeated in the eight neighbouring squares under a clip,
//! which draws the boundary identifications.

use std::collections::BTreeMap;
use std::fmt::Write;

use dimerlab::{DimerQuiver, Sign};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const RADIUS: f64 = 7.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Solid,
    Dotted,
    Dashed,
    Double,
}

#[derive(Default)]
pub struct Styles {
    by_arrow: BTreeMap<usize, Style>,
}

impl Styles {
    /// Reads `{"a1": "dotted", ...}`.
    pub fn from_json(d: &DimerQuiver, text: &str) -> Result<Styles, String> {
        let raw: BTreeMap<String, String> = serde_json::from_str(text).map_err(|e| format!("styles: {e}"))?;
        let mut by_arrow = BTreeMap::new();
        for (arrow, style) in raw {
            let a = d.arrow_id(&arrow).ok_or_else(|| format!("styles: unknown arrow `{arrow}`"))?;
            let s = match style.as_str() {
                "solid" => Style::Solid,
                "dotted" => Style::Dotted,
                "dashed" => Style::Dashed,
                "double" => Style::Double,
                other => return Err(format!("styles: unknown style `{other}`")),
            };
            by_arrow.insert(a, s);
        }
        Ok(Styles { by_arrow })
    }

    fn of(&self, a: usize) -> Style {
        self.by_arrow.get(&a).copied().unwrap_or(Style::Solid)
    }
}

/// Cover positions of the vertices; vertex 0 is pinned at the origin.
fn layout(d: &DimerQuiver, shift: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let n = d.vertex_count();
    let mut pos = vec![[0.0f64; 2]; n];
    // Gauss-Seidel on the periodic Laplacian.
    for _ in 0..4000 {
        for v in 1..n {
            let mut sum = [0.0; 2];
            let mut deg = 0.0;
            for (a, arr) in d.arrows().iter().enumerate() {
                if arr.tail == v {
                    for k in 0..2 {
                        sum[k] += pos[arr.head][k] + shift[a][k];
                    }
                    deg += 1.0;
                }
                if arr.head == v {
                    for k in 0..2 {
                        sum[k] += pos[arr.tail][k] - shift[a][k];
                    }
                    deg += 1.0;
                }
            }
            if deg > 0.0 {
                pos[v] = [sum[0] / deg, sum[1] / deg];
            }
        }
    }
    pos
}

fn screen(p: [f64; 2]) -> (f64, f64) {
    (MARGIN + SIZE * p[0], MARGIN + SIZE * (1.0 - p[1]))
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // Snap values that are 1 up to rounding back to 0.
    if f > 1.0 - 1e-9 {
        0.0
    } else {
        f
    }
}

pub fn render(d: &DimerQuiver, styles: &Styles) -> String {
    let h = d.homology_labels().expect("validated dimers have torus homology");
    let shift: Vec<[f64; 2]> = (0..d.arrow_count()).map(|a| h.label(a).map(|x| x as f64)).collect();
    let mut cover = layout(d, &shift);
    // Centre the vertices in the square so few of them sit on its edges.
    let n = cover.len() as f64;
    let mean = [0, 1].map(|k| cover.iter().map(|p| frac(p[k])).sum::<f64>() / n);
    for p in cover.iter_mut() {
        p[0] += 0.5 - mean[0];
        p[1] += 0.5 - mean[1];
    }
    let home: Vec<[f64; 2]> = cover.iter().map(|p| [frac(p[0]), frac(p[1])]).collect();
    let delta = |a: usize| {
        let arr = d.arrow(a);
        [cover[arr.head][0] + shift[a][0] - cover[arr.tail][0], cover[arr.head][1] + shift[a][1] - cover[arr.tail][1]]
    };

    let total = SIZE + 2.0 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#);
    svg.push_str("<defs>\n");
    svg.push_str(r##"<marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#222"/></marker>"##);
    svg.push('\n');
    let (x0, y0) = (MARGIN, MARGIN);
    let _ = writeln!(svg, r#"<clipPath id="domain"><rect x="{x0}" y="{y0}" width="{SIZE}" height="{SIZE}"/></clipPath>"#);
    svg.push_str("<g id=\"faces\">\n");
    for (f, face) in d.faces().iter().enumerate() {
        let mut p = home[d.tail(face.arrows[0])];
        let mut pts = Vec::new();
        for &a in &face.arrows {
            let (x, y) = screen(p);
            pts.push(format!("{x:.2},{y:.2}"));
            let dl = delta(a);
            p = [p[0] + dl[0], p[1] + dl[1]];
        }
        let (class, fill) = match face.sign {
            Sign::Plus => ("plus", "#f6d5cf"),
            Sign::Minus => ("minus", "#d3e2f2"),
        };
        let _ = writeln!(svg, r#"<polygon class="face {class}" data-face="{f}" points="{}" fill="{fill}" stroke="none"/>"#, pts.join(" "));
    }
    svg.push_str("</g>\n<g id=\"arrows\">\n");

    for (a, arr) in d.arrows().iter().enumerate() {
        let start = home[arr.tail];
        let dl = delta(a);
        let (sx, sy) = screen(start);
        let (ex, ey) = screen([start[0] + dl[0], start[1] + dl[1]]);
        let len = ((ex - sx).powi(2) + (ey - sy).powi(2)).sqrt().max(1e-9);
        let trim = (RADIUS + 1.0).min(len / 3.0);
        let (ux, uy) = ((ex - sx) / len, (ey - sy) / len);
        let (ax, ay, bx, by) = (sx + ux * trim, sy + uy * trim, ex - ux * trim, ey - uy * trim);
        let d_attr = format!("M{ax:.2},{ay:.2} L{bx:.2},{by:.2}");
        let style = styles.of(a);
        let dash = match style {
            Style::Dotted => r#" stroke-dasharray="2,4""#,
            Style::Dashed => r#" stroke-dasharray="8,5""#,
            _ => "",
        };
        let width = if style == Style::Double { 4.5 } else { 1.6 };
        let _ = writeln!(
            svg,
            r##"<path class="arrow" data-arrow="{}" d="{d_attr}" stroke="#222" stroke-width="{width}" fill="none"{dash} marker-end="url(#head)"/>"##,
            d.arrow_name(a)
        );
        if style == Style::Double {
            let _ = writeln!(svg, r##"<path class="arrow-gap" d="{d_attr}" stroke="#fff" stroke-width="1.6" fill="none"/>"##);
        }
        let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0);
        let _ = writeln!(svg, r##"<text class="arrow-label" x="{:.2}" y="{:.2}" font-size="11" fill="#555">{}</text>"##, mx + 3.0, my - 3.0, d.arrow_name(a));
    }

    svg.push_str("</g>\n<g id=\"vertices\">\n");
    for (v, p) in home.iter().enumerate() {
        let (x, y) = screen(*p);
        let _ = writeln!(svg, r##"<circle class="vertex" data-vertex="{}" cx="{x:.2}" cy="{y:.2}" r="{RADIUS}" fill="#fff" stroke="#222"/>"##, d.vertex_name(v));
        let _ = writeln!(svg, r##"<text class="vertex-label" x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"##, x, y - RADIUS - 3.0, d.vertex_name(v));
    }
    svg.push_str("</g>\n</defs>\n");
    svg.push_str("<g clip-path=\"url(#domain)\">\n");
    // Layer by layer, so no copy's faces cover another copy's arrows.
    for layer in ["faces", "arrows", "vertices"] {
        for i in -1i32..=1 {
            for j in -1i32..=1 {
                let (dx, dy) = (SIZE as i32 * i, -(SIZE as i32) * j);
                let _ = writeln!(svg, r##"<use href="#{layer}" transform="translate({dx},{dy})"/>"##);
            }
        }
    }
    svg.push_str("</g>\n");
    let _ = writeln!(svg, r##"<rect class="domain" x="{x0}" y="{y0}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#888" stroke-dasharray="6,4"/>"##);
    svg.push_str("</svg>\n");
    svg
}
