//! Browser demo: branching to the curve, an exclusion grid and the HN
//! polygon of a point list. The string-producing functions are plain Rust
//! so they can be tested natively; the `#[wasm_bindgen]` wrappers only
//! translate errors.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use wasm_bindgen::prelude::*;

use torelli_core::arith::{format_ratio_compact, parse_ratio};
use torelli_core::exclusion;
use torelli_core::hn_slope::{self, GradedPoint};
use torelli_core::params::{HalfSpinPart, OrthogonalDatumParams, UnitaryDatumParams};
use torelli_core::weights::{self, SpinPart};

/// Largest grid side the page will draw.
pub const MAX_GRID: u32 = 40;

pub fn branch_text(kind: &str, a: u32, b: u32, part: &str) -> Result<String, String> {
    let dec = match kind {
        "su" => weights::branch_lambda_to_curve(a, b),
        "spin" => {
            let part = SpinPart::parse(part).ok_or_else(|| format!("unknown spin part '{part}'"))?;
            weights::branch_spin_to_curve(a, part)
        }
        other => return Err(format!("unknown representation type '{other}'")),
    }
    .map_err(|e| e.to_string())?;
    Ok(format!("{dec}  (dimension {})", dec.dimension()))
}

/// An HTML table over `1 ≤ d ≤ d_max`, `1 ≤ n ≤ n_max`; each cell shows
/// whether the datum is excluded. For `su` the exterior power is `m`
/// (cells with `m > n` are blank); for `so` the plus half-spin is used for
/// even `n`.
pub fn grid_html(kind: &str, d_max: u32, n_max: u32, m: u32, copies: u64) -> Result<String, String> {
    if d_max == 0 || n_max == 0 || d_max > MAX_GRID || n_max > MAX_GRID {
        return Err(format!("grid sides must lie in 1..={MAX_GRID}"));
    }
    let mut html = String::from("<table class=\"grid\"><tr><th>d \\ n</th>");
    for n in 1..=n_max {
        let _ = write!(html, "<th>{n}</th>");
    }
    html.push_str("</tr>");
    for d in 1..=d_max {
        let _ = write!(html, "<tr><th>{d}</th>");
        for n in 1..=n_max {
            let verdict = match kind {
                "su" if m > n => None,
                "su" => Some(exclusion::exclude_su(&UnitaryDatumParams { d, n, m, copies, dim_v0: 0 })),
                "so" => {
                    let half_spin_part = if n % 2 == 0 { HalfSpinPart::Plus } else { HalfSpinPart::NotApplicable };
                    Some(exclusion::exclude_so(&OrthogonalDatumParams { d, n, copies, half_spin_part, dim_v0: 0 }))
                }
                other => return Err(format!("unknown datum type '{other}'")),
            };
            match verdict {
                None => html.push_str("<td></td>"),
                Some(Ok(v)) => {
                    let _ = write!(
                        html,
                        "<td class=\"{}\" title=\"{} margin {}\">{}</td>",
                        if v.excluded { "yes" } else { "no" },
                        v.criterion.label(),
                        format_ratio_compact(&v.margin),
                        if v.excluded { "&#x2715;" } else { "&middot;" }
                    );
                }
                Some(Err(e)) => return Err(e.to_string()),
            }
        }
        html.push_str("</tr>");
    }
    html.push_str("</table>");
    Ok(html)
}

fn parse_points(text: &str) -> Result<Vec<GradedPoint>, String> {
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [r, deg] = fields[..] else {
            return Err(format!("line {}: expected 'rank degree'", i + 1));
        };
        let rank = r.parse().map_err(|_| format!("line {}: bad rank '{r}'", i + 1))?;
        let degree = parse_ratio(deg).ok_or_else(|| format!("line {}: bad degree '{deg}'", i + 1))?;
        pts.push(GradedPoint::new(rank, degree).map_err(|e| e.to_string())?);
    }
    Ok(pts)
}

/// Summary lines followed by an inline SVG of the polygon and the input
/// points, separated by a blank line.
pub fn hull_report(text: &str) -> Result<String, String> {
    let pts = parse_points(text)?;
    let poly = hn_slope::hn_hull(&pts, None).map_err(|e| e.to_string())?;
    let slopes: Vec<String> = poly.slopes().iter().map(format_ratio_compact).collect();
    let mut out = format!(
        "vertices: {poly}\nslopes: {}\nmu_f: {}\nsemistable: {}\n\n",
        slopes.join(" "),
        format_ratio_compact(&poly.final_slope()),
        poly.is_semistable()
    );

    let xy = |r: u64, d: &num_rational::BigRational| (r as f64, d.to_f64().unwrap_or(0.0));
    let all: Vec<(f64, f64)> = poly
        .vertices()
        .iter()
        .map(|(r, d)| xy(*r, d))
        .chain(pts.iter().map(|p| xy(p.rank(), p.degree())))
        .collect();
    let (xmax, ymin, ymax) = all.iter().fold((1.0f64, 0.0f64, 0.0f64), |(a, b, c), &(x, y)| {
        (a.max(x), b.min(y), c.max(y))
    });
    let (w, h, pad) = (360.0, 240.0, 20.0);
    let yspan = if ymax > ymin { ymax - ymin } else { 1.0 };
    let sx = |x: f64| pad + x / xmax * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - ymin) / yspan * (h - 2.0 * pad);
    let _ = write!(out, "<svg viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">");
    let _ = write!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" class=\"axis\"/>",
        sx(0.0),
        sy(0.0),
        sx(xmax),
        sy(0.0)
    );
    let path: Vec<String> = poly
        .vertices()
        .iter()
        .map(|(r, d)| {
            let (x, y) = xy(*r, d);
            format!("{:.1},{:.1}", sx(x), sy(y))
        })
        .collect();
    let _ = write!(out, "<polyline points=\"{}\" class=\"hull\"/>", path.join(" "));
    for p in &pts {
        let (x, y) = xy(p.rank(), p.degree());
        let _ = write!(out, "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\"/>", sx(x), sy(y));
    }
    out.push_str("</svg>");
    Ok(out)
}

#[wasm_bindgen]
pub fn branch(kind: &str, a: u32, b: u32, part: &str) -> Result<String, JsError> {
    branch_text(kind, a, b, part).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn exclusion_grid(kind: &str, d_max: u32, n_max: u32, m: u32, copies: u32) -> Result<String, JsError> {
    grid_html(kind, d_max, n_max, m, copies as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hn_hull(points: &str) -> Result<String, JsError> {
    hull_report(points).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branching() {
        assert_eq!(branch_text("su", 3, 2, "").unwrap(), "Std x2, Trivial x2  (dimension 6)");
        assert_eq!(branch_text("spin", 6, 0, "plus").unwrap(), "Std x2  (dimension 4)");
        assert!(branch_text("spin", 6, 0, "sideways").is_err());
        assert!(branch_text("su", 2, 3, "").is_err());
    }

    #[test]
    fn grid_marks() {
        let html = grid_html("so", 6, 1, 0, 1).unwrap();
        assert_eq!(html.matches("class=\"yes\"").count(), 1);
        assert_eq!(html.matches("class=\"no\"").count(), 5);
        let su = grid_html("su", 2, 3, 2, 1).unwrap();
        // n = 1 column is blank for m = 2
        assert_eq!(su.matches("<td></td>").count(), 2);
        assert!(grid_html("so", 0, 3, 0, 1).is_err());
    }

    #[test]
    fn hull() {
        let r = hull_report("1 3\n2 4\n3 4\n").unwrap();
        assert!(r.starts_with("vertices: (0,0) (1,3) (2,4) (3,4)\nslopes: 3 1 0\nmu_f: 0"));
        assert!(r.contains("<polyline"));
        assert!(hull_report("1 2 3").is_err());
    }
}
