//! Static SVG rendering of a configuration.

use std::fmt::Write as _;

use rotsym::Point;

pub const CANVAS: f64 = 600.0;
const MARGIN: f64 = 0.05;

#[derive(Clone, Debug, Default)]
pub struct PlotOptions {
    /// Index sets drawn as segments between their extreme points.
    pub lines: Vec<Vec<usize>>,
    /// Draw `s` dashed rays from the origin.
    pub guides: Option<usize>,
    pub labels: bool,
}

/// Deterministic SVG 1.1 document: fixed canvas, auto-scaled with a 5%
/// margin, y axis pointing up.
pub fn render_svg(points: &[Point<f64>], opts: &PlotOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{c}" height="{c}" fill="white"/>"#, c = CANVAS);
    if !points.is_empty() {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        if opts.guides.is_some() {
            x0 = x0.min(0.0);
            x1 = x1.max(0.0);
            y0 = y0.min(0.0);
            y1 = y1.max(0.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let scale = CANVAS * (1.0 - 2.0 * MARGIN) / span;
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let map = |p: &Point<f64>| (CANVAS / 2.0 + (p.x - cx) * scale, CANVAS / 2.0 - (p.y - cy) * scale);
        if let Some(s) = opts.guides {
            let o = map(&Point::new(0.0, 0.0));
            let r = CANVAS;
            for t in 0..s.max(1) {
                let a = 2.0 * std::f64::consts::PI * t as f64 / s.max(1) as f64 + std::f64::consts::FRAC_PI_2;
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-width="0.5" stroke-dasharray="4 4"/>"#,
                    o.0,
                    o.1,
                    o.0 + r * a.cos(),
                    o.1 - r * a.sin()
                );
            }
        }
        for line in &opts.lines {
            let Some((a, b)) = extremes(points, line) else { continue };
            let (p, q) = (map(&points[a]), map(&points[b]));
            let _ = writeln!(
                out,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="steelblue" stroke-width="1.5"/>"#,
                p.0, p.1, q.0, q.1
            );
        }
        for (i, p) in points.iter().enumerate() {
            let (x, y) = map(p);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
            if opts.labels {
                let _ = writeln!(
                    out,
                    r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{}</text>"#,
                    x + 6.0,
                    y - 6.0,
                    i + 1
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The two members of `line` farthest apart.
fn extremes(points: &[Point<f64>], line: &[usize]) -> Option<(usize, usize)> {
    let mut best: Option<(f64, usize, usize)> = None;
    for (x, &a) in line.iter().enumerate() {
        for &b in &line[x + 1..] {
            let (pa, pb) = (points.get(a)?, points.get(b)?);
            let d = (pa.x - pb.x).powi(2) + (pa.y - pb.y).powi(2);
            if best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, a, b));
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_valid() {
        let s = render_svg(&[], &PlotOptions::default());
        assert!(s.starts_with("<?xml") && s.trim_end().ends_with("</svg>"));
        assert!(!s.contains("<circle"));
    }

    #[test]
    fn circles_lines_and_margin() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0), Point::new(0.0, 2.0)];
        let opts = PlotOptions { lines: vec![vec![0, 1, 2]], ..Default::default() };
        let s = render_svg(&pts, &opts);
        assert_eq!(s.matches("<circle").count(), 4);
        assert_eq!(s.matches("<line").count(), 1);
        // extreme points of the line land on the margins
        assert!(s.contains(r#"x1="30.000" y1="570.000" x2="570.000" y2="30.000""#));
        assert_eq!(s, render_svg(&pts, &opts));
    }
}
