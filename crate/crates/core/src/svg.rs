//! SVG pictures of a matching: blue squares, red disks, edges as lines and
//! the active cut dashed. Display only.

use std::fmt::Write as _;

use crate::geom::{to_f64, CutLine};
use crate::matching::{BRMatching, Color, PointSet};

/// `v` with 9 significant digits and no trailing zeros.
pub fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn render(points: &PointSet, m: &BRMatching, cut: Option<&CutLine>, title: &str) -> String {
    let xy: Vec<(f64, f64)> = points.points().iter().map(|p| p.position.to_f64()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &xy {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let pad = span * 0.08;
    let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
    let r = span * 0.015;
    let stroke = span * 0.004;
    // Flip y so the picture has the usual orientation.
    let sy = |y: f64| -y;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        sig9(x0),
        sig9(sy(y1)),
        sig9(x1 - x0),
        sig9(y1 - y0)
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    if let Some(c) = cut {
        let (ax, ay) = c.anchor.to_f64();
        let (dx, dy) = (to_f64(&c.direction.x), to_f64(&c.direction.y));
        let len = (dx * dx + dy * dy).sqrt();
        let t = 4.0 * span / len;
        let _ = writeln!(
            s,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
            sig9(ax - t * dx),
            sig9(sy(ay - t * dy)),
            sig9(ax + t * dx),
            sig9(sy(ay + t * dy)),
            sig9(stroke),
            sig9(4.0 * stroke),
            sig9(3.0 * stroke)
        );
    }
    for &(a, b) in m.edges() {
        let (p, q) = (xy[a], xy[b]);
        let _ = writeln!(
            s,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="{}"/>"#,
            sig9(p.0),
            sig9(sy(p.1)),
            sig9(q.0),
            sig9(sy(q.1)),
            sig9(stroke)
        );
    }
    for (p, &(x, y)) in points.points().iter().zip(&xy) {
        match p.color {
            Color::Blue => {
                let _ = writeln!(
                    s,
                    r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="blue"/>"#,
                    sig9(x - r),
                    sig9(sy(y) - r),
                    sig9(2.0 * r),
                    sig9(2.0 * r)
                );
            }
            Color::Red => {
                let _ = writeln!(
                    s,
                    r#"  <circle cx="{}" cy="{}" r="{}" fill="red"/>"#,
                    sig9(x),
                    sig9(sy(y)),
                    sig9(r)
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;

    #[test]
    fn significant_digits() {
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(-0.5), "-0.5");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(123456.789012), "123456.789");
        assert_eq!(sig9(0.0), "0");
    }

    #[test]
    fn shapes_by_color() {
        let p = PointSet::new(vec![
            (Point2::from_ints(0, 0), Color::Blue),
            (Point2::from_ints(2, 1), Color::Red),
        ])
        .unwrap();
        let m = BRMatching::new(&p, vec![(0, 1)]).unwrap();
        let cut = CutLine::new(Point2::from_ints(1, 0), Point2::from_ints(0, 1));
        let svg = render(&p, &m, Some(&cut), "a < b");
        assert_eq!(svg.matches("<rect").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(svg.contains("a &lt; b"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
