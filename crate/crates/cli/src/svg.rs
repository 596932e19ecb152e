//! Branch-point diagram as a fixed 800×800 SVG.

use std::fmt::Write;

use num_complex::Complex64;

use crate::report::{AnalysisReport, Location, Regularity};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 60.0;

struct Frame {
    half_width: f64,
}

impl Frame {
    fn x(&self, re: f64) -> f64 {
        SIZE / 2.0 + re / self.half_width * (SIZE / 2.0 - MARGIN)
    }

    fn y(&self, im: f64) -> f64 {
        SIZE / 2.0 - im / self.half_width * (SIZE / 2.0 - MARGIN)
    }

    fn len(&self, r: f64) -> f64 {
        r / self.half_width * (SIZE / 2.0 - MARGIN)
    }
}

fn cycles(c: &[usize]) -> String {
    c.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

/// Radii of the guide circles: `q^{-1/2}` for a regular graph, otherwise
/// `(deg − 1)^{-1/2}` for each distinct vertex degree above 1.
pub fn guide_radii(r: &AnalysisReport) -> Vec<f64> {
    match r.graph.q {
        Regularity::Regular(q) if q > 0 => vec![(q as f64).powf(-0.5)],
        Regularity::Regular(_) => Vec::new(),
        Regularity::NonRegular(_) => {
            let mut d: Vec<i64> = r.graph.degrees.iter().copied().filter(|&d| d > 1).collect();
            d.sort_unstable();
            d.dedup();
            d.into_iter().map(|d| ((d - 1) as f64).powf(-0.5)).collect()
        }
    }
}

pub fn render(r: &AnalysisReport) -> String {
    let pts: Vec<(Complex64, &[usize])> = r
        .surface
        .branch_points
        .iter()
        .filter_map(|b| b.location.finite().map(|z| (z, b.cycle_structure.as_slice())))
        .collect();
    let guides = guide_radii(r);
    let regular_q = match r.graph.q {
        Regularity::Regular(q) if q > 0 => Some(q as f64),
        _ => None,
    };
    let mut extent = pts.iter().map(|(z, _)| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    extent = guides.iter().copied().fold(extent, f64::max);
    if regular_q.is_some() {
        extent = extent.max(1.0);
    }
    let f = Frame {
        half_width: if extent > 0.0 { 1.1 * extent } else { 1.0 },
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="800" height="800" fill="white"/>"#);
    // axes
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="1"/>"##,
        f.x(-f.half_width),
        f.y(0.0),
        f.x(f.half_width),
        f.y(0.0)
    );
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="1"/>"##,
        f.x(0.0),
        f.y(-f.half_width),
        f.x(0.0),
        f.y(f.half_width)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{:.3}</text>"#,
        f.x(f.half_width) - 40.0,
        f.y(0.0) + 16.0,
        f.half_width
    );
    for radius in &guides {
        let _ = writeln!(
            s,
            r##"<circle class="guide" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#4a7" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            f.x(0.0),
            f.y(0.0),
            f.len(*radius)
        );
    }
    if let Some(q) = regular_q {
        for sign in [-1.0, 1.0] {
            let _ = writeln!(
                s,
                r##"<line class="guide" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#4a7" stroke-width="4" stroke-opacity="0.6"/>"##,
                f.x(sign / q),
                f.y(0.0),
                f.x(sign),
                f.y(0.0)
            );
        }
    }
    for (z, c) in &pts {
        let colour = if c.iter().all(|&k| k <= 2) && c.iter().filter(|&&k| k == 2).count() * 2 == c.iter().sum::<usize>() {
            "#c33"
        } else {
            "#36c"
        };
        let _ = writeln!(
            s,
            r#"<circle class="branch-point" cx="{:.2}" cy="{:.2}" r="5" fill="{colour}"><title>u = {:.6}{:+.6}i, cycles ({})</title></circle>"#,
            f.x(z.re),
            f.y(z.im),
            z.re + 0.0,
            z.im + 0.0,
            cycles(c)
        );
    }
    // legend
    let inf = r.surface.branch_points.iter().find(|b| matches!(b.location, Location::Infinity(_)));
    let mut legend = vec![format!(
        "d = {}, b = {}, genus = {}",
        r.surface.d, r.surface.b, r.surface.genus
    )];
    legend.push(match inf {
        Some(b) => format!("\u{221e} branched, cycles ({})", cycles(&b.cycle_structure)),
        None => "\u{221e} unbranched".to_string(),
    });
    match regular_q {
        Some(q) => legend.push(format!("guides: |u| = q^-1/2 and 1/q \u{2264} |u| \u{2264} 1 on the real axis, q = {q}")),
        None => legend.push(format!(
            "non-regular; guide circles of radius {}",
            guides.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>().join(", ")
        )),
    }
    for (i, line) in legend.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text class="legend" x="16" y="{}" font-size="14" font-family="sans-serif">{line}</text>"#,
            24 + 20 * i
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{analyze, AnalyzeOptions};
    use l2zeta::fixtures;

    fn marks(svg: &str) -> usize {
        svg.matches("class=\"branch-point\"").count()
    }

    #[test]
    fn graph1_marks() {
        let r = analyze(&fixtures::table1(1), &AnalyzeOptions { symbolic: true }).unwrap();
        let svg = render(&r);
        assert_eq!(marks(&svg), 4);
        assert!(svg.contains("\u{221e} unbranched"));
        assert_eq!(render(&r), svg);
    }

    #[test]
    fn non_regular_guides() {
        let r = analyze(&fixtures::table1(6), &AnalyzeOptions { symbolic: true }).unwrap();
        let g = guide_radii(&r);
        assert_eq!(g.len(), 2);
        assert!((g[0] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((g[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(render(&r).matches("class=\"guide\"").count(), 2);
    }
}
