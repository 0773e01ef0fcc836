//! SVG drawings of the moment image: fixed points as dots, edges as segments,
//! an arrow for the chosen circle and the moment value at each point.
//!
//! Output is SVG 1.1 with coordinates printed to two decimals, so identical
//! inputs give identical bytes.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::gkm::{restrict_to_circle, GkmGraph};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// A linear map to the plane, one row per screen axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl Projection {
    /// Parses `"a,b,..;c,d,..."`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Render(format!("bad projection {text:?}: {e}")))?;
        match <[Vec<i64>; 2]>::try_from(rows) {
            Ok([x, y]) if x.len() == y.len() => Ok(Self { x, y }),
            _ => Err(Error::Render(format!(
                "projection {text:?} needs two rows of equal length"
            ))),
        }
    }

    fn apply(&self, v: &[Rational]) -> (f64, f64) {
        let dot = |row: &[i64]| -> f64 {
            row.iter()
                .zip(v)
                .map(|(a, b)| {
                    (Rational::from_integer((*a).into()) * b)
                        .to_f64()
                        .unwrap_or(0.0)
                })
                .sum()
        };
        (dot(&self.x), dot(&self.y))
    }
}

fn default_projection(rank: usize) -> Result<Projection> {
    match rank {
        1 => Ok(Projection {
            x: vec![1],
            y: vec![0],
        }),
        2 => Ok(Projection {
            x: vec![1, 0],
            y: vec![0, 1],
        }),
        r => Err(Error::Render(format!(
            "rank {r} moment image needs a projection to the plane"
        ))),
    }
}

/// Renders `g`, annotating points with `mu_xi` and drawing `xi` when given.
pub fn render_svg(
    g: &GkmGraph,
    xi: Option<&[i64]>,
    projection: Option<&Projection>,
) -> Result<String> {
    let proj = match projection {
        Some(p) if p.x.len() == g.rank() => p.clone(),
        Some(p) => {
            return Err(Error::Render(format!(
                "projection has {} columns but the rank is {}",
                p.x.len(),
                g.rank()
            )))
        }
        None => default_projection(g.rank())?,
    };
    let profile = xi.map(|xi| restrict_to_circle(g, xi)).transpose()?;

    let raw: Vec<(f64, f64)> = g
        .vertices()
        .iter()
        .map(|v| proj.apply(&v.position))
        .collect();
    let (min_x, max_x) = bounds(raw.iter().map(|p| p.0));
    let (min_y, max_y) = bounds(raw.iter().map(|p| p.1));
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    let screen =
        |(x, y): (f64, f64)| (SIZE / 2.0 + (x - cx) * scale, SIZE / 2.0 - (y - cy) * scale);
    let pts: Vec<(f64, f64)> = raw.iter().copied().map(screen).collect();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>"#
    );
    let _ = writeln!(out, r#"<g stroke="gray" stroke-width="1.5">"#);
    for e in g.edges() {
        let (a, b) = (pts[e.v], pts[e.w]);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(out, "</g>");

    if let Some(xi) = xi {
        let dir = proj.apply(
            &xi.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect::<Vec<_>>(),
        );
        let len = (dir.0 * dir.0 + dir.1 * dir.1).sqrt();
        if len > 0.0 {
            let (ux, uy) = (dir.0 / len * 40.0, -dir.1 / len * 40.0);
            let (x0, y0) = (30.0, SIZE - 30.0);
            let _ = writeln!(
                out,
                r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="2" marker-end="url(#head)"/>"#,
                x0 + ux,
                y0 + uy
            );
            let xi_text = xi.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">xi = ({xi_text})</text>"#,
                x0 + 8.0,
                y0 + 16.0
            );
        }
    }

    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="12">"#);
    for (i, v) in g.vertices().iter().enumerate() {
        let (x, y) = pts[i];
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="black"/>"#
        );
        let mut label = escape(&v.id);
        if let Some(p) = &profile {
            let f = p.point(i);
            let _ = write!(label, " mu={} idx={}", format_rational(&f.moment), f.index);
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{label}</text>"#,
            x + 8.0,
            y - 8.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

fn bounds(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
