//! Deterministic SVG figures of portraits and arrangements.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::arrangement::{build_dcel, ArrangementSpec, LocalVertex};
use crate::error::Result;
use crate::portrait::{classify, Portrait};

const SIZE: f64 = 480.0;
const INNER: f64 = 80.0;
const OUTER: f64 = 200.0;
const GAP: f64 = 0.06;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polar(theta: f64, r: f64) -> (f64, f64) {
    (SIZE / 2.0 + r * theta.cos(), SIZE / 2.0 - r * theta.sin())
}

fn header(out: &mut String) {
    let s = num(SIZE);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white"/>"#).unwrap();
}

/// Annulus picture: fiber position is the radius, sectors run counterclockwise.
pub fn render_portrait(p: &Portrait) -> Result<String> {
    let c = p.compile()?;
    let label = classify(p).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
    let m = c.sector_count();
    let radius = |pos: f64| INNER + (OUTER - INNER) * pos;
    let bound = |t: usize| TAU * t as f64 / m as f64;
    let mut out = String::new();
    header(&mut out);
    for r in [INNER, OUTER] {
        let (x, y) = (num(SIZE / 2.0), num(SIZE / 2.0));
        writeln!(
            out,
            r##"<circle cx="{x}" cy="{y}" r="{}" fill="none" stroke="#999" stroke-width="1"/>"##,
            num(r)
        )
        .unwrap();
    }
    for t in 0..m {
        let (x0, y0) = polar(bound(t), INNER);
        let (x1, y1) = polar(bound(t), OUTER);
        writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb" stroke-dasharray="4 3"/>"##,
            num(x0),
            num(y0),
            num(x1),
            num(y1)
        )
        .unwrap();
    }
    for t in 0..m {
        let (a, b) = (bound(t) + GAP, bound(t + 1) - GAP);
        for (i, pos) in c.pos[t].iter().enumerate() {
            let r = radius(pos.value().to_f64());
            let (x0, y0) = polar(a, r);
            let (x1, y1) = polar(b, r);
            let large = if b - a > TAU / 2.0 { 1 } else { 0 };
            writeln!(
                out,
                r#"<path d="M {} {} A {} {} 0 {large} 0 {} {}" fill="none" stroke="black" stroke-width="2"><title>{}</title></path>"#,
                num(x0),
                num(y0),
                num(r),
                num(r),
                num(x1),
                num(y1),
                esc(&c.ids[t][i])
            )
            .unwrap();
        }
    }
    for (t, bd) in c.boundaries.iter().enumerate() {
        let rs = c.right_of(t);
        let phi = bound(t + 1);
        for (l, img) in bd.fwd.iter().enumerate() {
            if let Some((r, _)) = img {
                let (x0, y0) = polar(phi - GAP, radius(c.pos[t][l].value().to_f64()));
                let (x1, y1) = polar(phi + GAP, radius(c.pos[rs][*r].value().to_f64()));
                writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
                    num(x0),
                    num(y0),
                    num(x1),
                    num(y1)
                )
                .unwrap();
            }
        }
        let caps = bd
            .births
            .iter()
            .map(|&(lo, hi)| (rs, lo, hi, phi + GAP))
            .chain(bd.deaths.iter().map(|&(lo, hi)| (t, lo, hi, phi - GAP)));
        for (s, lo, hi, at) in caps {
            let (rl, rh) = (c.pos[s][lo].value().to_f64(), c.pos[s][hi].value().to_f64());
            let (x0, y0) = polar(at, radius(rl));
            let (x1, y1) = polar(at, radius(rh));
            let mid = if rh >= rl {
                (rl + rh) / 2.0
            } else {
                (rl + rh + 1.0) / 2.0 % 1.0
            };
            let (qx, qy) = polar(phi, radius(mid));
            writeln!(
                out,
                r#"<path d="M {} {} Q {} {} {} {}" fill="none" stroke="crimson" stroke-width="2"/>"#,
                num(x0),
                num(y0),
                num(qx),
                num(qy),
                num(x1),
                num(y1)
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="monospace" font-size="16">{}</text>"#,
        num(SIZE / 2.0),
        num(SIZE / 2.0 + 5.0),
        esc(&label)
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

/// Fold circles with every vertex labelled by its descriptor and exact weight.
pub fn render_arrangement(spec: &ArrangementSpec) -> Result<String> {
    let dcel = build_dcel(spec)?;
    let vertices = LocalVertex::all(spec, &dcel)?;
    let circles: Vec<(f64, f64, f64)> = spec
        .pancakes
        .iter()
        .map(|p| (p.center.0.to_f64(), p.center.1.to_f64(), p.radius.to_f64()))
        .collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (-1.0f64, -1.0f64, 1.0f64, 1.0f64);
    for &(x, y, r) in &circles {
        lo_x = lo_x.min(x - r);
        lo_y = lo_y.min(y - r);
        hi_x = hi_x.max(x + r);
        hi_y = hi_y.max(y + r);
    }
    let pad = 40.0;
    let scale = (SIZE - 2.0 * pad) / (hi_x - lo_x).max(hi_y - lo_y);
    let map = |x: f64, y: f64| (pad + (x - lo_x) * scale, SIZE - pad - (y - lo_y) * scale);
    let mut out = String::new();
    header(&mut out);
    for (i, &(x, y, r)) in circles.iter().enumerate() {
        let (cx, cy) = map(x, y);
        writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#4a7bd0" fill-opacity="0.08" stroke="#2a4f9a" stroke-width="2"/>"##,
            num(cx),
            num(cy),
            num(r * scale)
        )
        .unwrap();
        let p = &spec.pancakes[i];
        writeln!(
            out,
            r##"<text x="{}" y="{}" text-anchor="middle" font-family="monospace" font-size="11" fill="#2a4f9a">p{i} h={}</text>"##,
            num(cx),
            num(cy),
            esc(&p.height.to_string())
        )
        .unwrap();
    }
    for v in &vertices {
        let (x, y) = dcel.vertices[v.vertex].point;
        let (px, py) = map(x, y);
        writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, num(px), num(py)).unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="11">{} {}</text>"#,
            num(px + 5.0),
            num(py - 5.0),
            esc(&v.descriptor.to_string()),
            esc(&v.weight.to_string())
        )
        .unwrap();
    }
    let sections: Vec<String> = spec.sections.iter().map(|s| s.height.to_string()).collect();
    writeln!(
        out,
        r#"<text x="10" y="20" font-family="monospace" font-size="12">sections: {}</text>"#,
        esc(&sections.join(", "))
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::type_i;

    #[test]
    fn portrait_svg_is_deterministic() {
        let p = type_i(2, 0).unwrap();
        let a = render_portrait(&p).unwrap();
        assert_eq!(a, render_portrait(&p).unwrap());
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert!(a.contains("I(2,0)"));
        assert_eq!(a.matches("crimson").count(), 4);
    }

    #[test]
    fn arrangement_labels_weights() {
        let spec = ArrangementSpec::from_json(
            r#"{"pancakes":[{"center":["0","0"],"radius":"1","height":"1/4","thickness":"1/100"},
                {"center":["1","0"],"radius":"1","height":"3/4","thickness":"1/100"}],
                "sections":[{"height":"1/2"}]}"#,
        )
        .unwrap();
        let svg = render_arrangement(&spec).unwrap();
        assert_eq!(svg.matches(r#"r="3""#).count(), 2);
        let dcel = build_dcel(&spec).unwrap();
        for v in LocalVertex::all(&spec, &dcel).unwrap() {
            assert!(svg.contains(&format!("{} {}", v.descriptor, v.weight)));
        }
        assert_eq!(svg, render_arrangement(&spec).unwrap());
    }
}
