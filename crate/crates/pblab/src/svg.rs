//! Deterministic SVG 1.1 pictures of a table and an orbit.
//!
//! Solid edges, dashed transverse lines at evenly spaced points of each edge,
//! and the orbit as polylines. Orbit points at infinity are drawn as rays
//! clipped to the frame with a marker where they leave it.

use std::fmt::Write as _;

use pblab_core::{orbit, Orbit, ProjPoint, Table};

use crate::error::LabError;
use crate::scene::{prepare, NumericMode, Prepared, Scene};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    /// Length of the longer side of the picture, in pixels.
    pub size: f64,
    /// Dashed transverse lines drawn per edge.
    pub transverse_samples: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            size: 640.0,
            transverse_samples: 5,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    scale: f64,
}

impl Frame {
    fn around(points: &[(f64, f64)], extra: &[(f64, f64)], size: f64) -> Self {
        let bounds = |pts: &[(f64, f64)]| {
            pts.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
                |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
            )
        };
        let (mut xmin, mut xmax, mut ymin, mut ymax) = bounds(points);
        let extent = (xmax - xmin).max(ymax - ymin).max(1e-9);
        let (cx, cy) = ((xmin + xmax) / 2.0, (ymin + ymax) / 2.0);
        // far-away orbit points are clipped instead of zooming out
        for &(x, y) in extra {
            if (x - cx).abs() <= 2.0 * extent && (y - cy).abs() <= 2.0 * extent {
                xmin = xmin.min(x);
                xmax = xmax.max(x);
                ymin = ymin.min(y);
                ymax = ymax.max(y);
            }
        }
        let pad = 0.08 * (xmax - xmin).max(ymax - ymin).max(1e-9);
        let (xmin, xmax, ymin, ymax) = (xmin - pad, xmax + pad, ymin - pad, ymax + pad);
        Self {
            xmin,
            xmax,
            ymin,
            ymax,
            scale: size / (xmax - xmin).max(ymax - ymin),
        }
    }

    fn width(&self) -> f64 {
        (self.xmax - self.xmin) * self.scale
    }

    fn height(&self) -> f64 {
        (self.ymax - self.ymin) * self.scale
    }

    fn diagonal(&self) -> f64 {
        (self.xmax - self.xmin).hypot(self.ymax - self.ymin)
    }

    fn project(&self, (x, y): (f64, f64)) -> (String, String) {
        (num((x - self.xmin) * self.scale), num((self.ymax - y) * self.scale))
    }

    /// Liang–Barsky: parameter range of `p + t·d`, `t ∈ [lo, hi]`, inside the
    /// frame.
    fn clip(&self, p: (f64, f64), d: (f64, f64), lo: f64, hi: f64) -> Option<(f64, f64)> {
        let (mut t0, mut t1) = (lo, hi);
        for (q, r) in [
            (-d.0, p.0 - self.xmin),
            (d.0, self.xmax - p.0),
            (-d.1, p.1 - self.ymin),
            (d.1, self.ymax - p.1),
        ] {
            if q == 0.0 {
                if r < 0.0 {
                    return None;
                }
                continue;
            }
            let t = r / q;
            if q < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
        (t0 <= t1).then_some((t0, t1))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn along(p: (f64, f64), d: (f64, f64), t: f64) -> (f64, f64) {
    (p.0 + t * d.0, p.1 + t * d.1)
}

fn line_element(out: &mut String, class: &str, frame: &Frame, a: (f64, f64), b: (f64, f64)) {
    let ((x1, y1), (x2, y2)) = (frame.project(a), frame.project(b));
    writeln!(
        out,
        r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
    )
    .unwrap();
}

enum Piece {
    Segment((f64, f64), (f64, f64)),
    /// Ray leaving the frame; the second point is where it exits.
    Escape((f64, f64), (f64, f64)),
}

fn orbit_pieces(frame: &Frame, points: &[ProjPoint<f64>]) -> Vec<Piece> {
    let mut pieces = Vec::new();
    for pair in points.windows(2) {
        match (pair[0].to_affine(), pair[1].to_affine()) {
            (Some(a), Some(b)) => {
                let d = (b.0 - a.0, b.1 - a.1);
                if let Some((t0, t1)) = frame.clip(a, d, 0.0, 1.0) {
                    // unclipped ends stay bit-identical so runs can join
                    let start = if t0 == 0.0 { a } else { along(a, d, t0) };
                    let end = if t1 == 1.0 { b } else { along(a, d, t1) };
                    pieces.push(Piece::Segment(start, end));
                }
            }
            (Some(a), None) | (None, Some(a)) => {
                let ideal = if pair[0].is_finite() { &pair[1] } else { &pair[0] };
                let [dx, dy, _] = *ideal.coords();
                // either half-line reaches the same ideal point; draw one that
                // crosses the frame
                for d in [(dx, dy), (-dx, -dy)] {
                    if let Some((t0, t1)) = frame.clip(a, d, 0.0, f64::INFINITY) {
                        pieces.push(Piece::Escape(along(a, d, t0), along(a, d, t1)));
                        break;
                    }
                }
            }
            (None, None) => {}
        }
    }
    pieces
}

/// SVG document for `table` and the orbit `orbit`.
pub fn render_svg(table: &Table<f64>, orbit: &Orbit<f64>, options: &RenderOptions) -> String {
    let mut anchors: Vec<(f64, f64)> = Vec::new();
    for edge in table.edges() {
        let (a, b) = edge.endpoints();
        anchors.extend(a.to_affine());
        anchors.extend(b.to_affine());
    }
    let pivots: Vec<(f64, f64)> = {
        let mut v: Vec<(f64, f64)> = Vec::new();
        for edge in table.edges() {
            if let Some(p) = edge.field().pivot().to_affine() {
                if !v.contains(&p) {
                    v.push(p);
                }
            }
        }
        v
    };
    let mut extra = pivots.clone();
    extra.extend(orbit.points().iter().filter_map(|p| p.to_affine()));
    let frame = Frame::around(&anchors, &extra, options.size);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(frame.width()),
        h = num(frame.height())
    )
    .unwrap();
    out.push_str(concat!(
        "<style>\n",
        ".edge { stroke: #000; stroke-width: 2; }\n",
        ".transverse { stroke: #666; stroke-width: 1; stroke-dasharray: 5 4; }\n",
        ".orbit { fill: none; stroke: #c0392b; stroke-width: 1.5; }\n",
        ".escape { stroke: #c0392b; stroke-width: 1.5; stroke-dasharray: 2 2; }\n",
        ".pivot { fill: #2c3e50; }\n",
        ".infinite-marker { fill: none; stroke: #c0392b; stroke-width: 1.5; }\n",
        ".annotation { font: 12px sans-serif; fill: #c0392b; }\n",
        "</style>\n",
    ));

    out.push_str("<g id=\"transverse\">\n");
    let reach = 0.25 * frame.diagonal();
    for (i, edge) in table.edges().iter().enumerate() {
        for s in 1..=options.transverse_samples {
            let t = s as f64 / (options.transverse_samples + 1) as f64;
            let Some(m) = edge.point_at(&t).ok().and_then(|m| m.to_affine()) else {
                continue;
            };
            let pivot = edge.field().pivot();
            let dir = match pivot.to_affine() {
                Some(p) => (p.0 - m.0, p.1 - m.1),
                None => (pivot.coords()[0], pivot.coords()[1]),
            };
            let len = dir.0.hypot(dir.1);
            if len == 0.0 || table.transverse_line_at(i, &ProjPoint::affine(m.0, m.1)).is_err() {
                continue;
            }
            let u = (dir.0 / len, dir.1 / len);
            if let Some((t0, t1)) = frame.clip(m, u, -0.2 * reach, reach) {
                line_element(&mut out, "transverse", &frame, along(m, u, t0), along(m, u, t1));
            }
        }
    }
    out.push_str("</g>\n<g id=\"table\">\n");
    for edge in table.edges() {
        let (a, b) = edge.endpoints();
        if let (Some(a), Some(b)) = (a.to_affine(), b.to_affine()) {
            line_element(&mut out, "edge", &frame, a, b);
        }
    }
    for p in &pivots {
        if frame.clip(*p, (0.0, 0.0), 0.0, 0.0).is_some() {
            let (cx, cy) = frame.project(*p);
            writeln!(out, r#"<circle class="pivot" cx="{cx}" cy="{cy}" r="3"/>"#).unwrap();
        }
    }
    out.push_str("</g>\n<g id=\"orbit\">\n");

    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut escapes = Vec::new();
    for piece in orbit_pieces(&frame, orbit.points()) {
        match piece {
            Piece::Segment(a, b) => match runs.last_mut() {
                Some(run) if run.last() == Some(&a) => run.push(b),
                _ => runs.push(vec![a, b]),
            },
            Piece::Escape(a, b) => escapes.push((a, b)),
        }
    }
    for run in &runs {
        let pts: Vec<String> = run
            .iter()
            .map(|&p| {
                let (x, y) = frame.project(p);
                format!("{x},{y}")
            })
            .collect();
        writeln!(out, r#"<polyline class="orbit" points="{}"/>"#, pts.join(" ")).unwrap();
    }
    for (a, b) in escapes {
        line_element(&mut out, "escape", &frame, a, b);
        let (cx, cy) = frame.project(b);
        writeln!(out, r#"<circle class="infinite-marker" cx="{cx}" cy="{cy}" r="5"/>"#).unwrap();
        writeln!(
            out,
            r#"<text class="annotation" x="{cx}" y="{cy}" dx="6" dy="-6">to infinity</text>"#
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Renders the scene's orbit in float mode; `steps` defaults to the scene's
/// run steps, then to its period.
pub fn render_scene(scene: &Scene, steps: Option<usize>, options: &RenderOptions) -> Result<String, LabError> {
    let Prepared::F64(built) = prepare(scene, NumericMode::Float)? else {
        unreachable!("float mode always builds over f64");
    };
    let steps = steps.or(scene.run.steps).unwrap_or_else(|| scene.default_period());
    if steps == 0 {
        return Err(pblab_core::Error::InvalidSteps.into());
    }
    let orbit = orbit(&built.table, &built.chord, steps)?;
    Ok(render_svg(&built.table, &orbit, options))
}
