//! Deterministic SVG output. Positions are floats printed with 9
//! significant digits; exact values go into `<title>` tooltips as `p/q`.

use std::fmt::Write;

use crate::arrangements::{circle_cell_labels, ArrangementError, Eps};
use crate::geometry::Line2;
use crate::model::WiringDiagram;
use crate::rational::{format_rat, to_f64};
use crate::reductions::LineRealization;
use crate::Disk;

/// `x` with 9 significant digits, no exponent, trailing zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        fmt_num(w),
        fmt_num(h)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Wires as polylines, track 0 at the bottom, one column per swap.
pub fn render_wiring(w: &WiringDiagram) -> String {
    const DX: f64 = 40.0;
    const DY: f64 = 30.0;
    const PAD: f64 = 30.0;
    let slices = w.slices();
    let width = 2.0 * PAD + DX * (slices.len() as f64 + 1.0);
    let height = 2.0 * PAD + DY * (w.n.max(1) as f64 - 1.0);
    let y_of = |track: usize| PAD + DY * ((w.n - 1 - track) as f64);
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(out, "<title>wiring n={} swaps={:?}</title>", w.n, w.swaps);
    for wire in 0..w.n {
        let mut pts = Vec::new();
        for (k, slice) in slices.iter().enumerate() {
            let track = slice.iter().position(|&x| x == wire).expect("wire present");
            let x0 = PAD + DX * k as f64;
            pts.push((x0, y_of(track)));
            pts.push((x0 + DX, y_of(track)));
        }
        pts.dedup();
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_num(*x), fmt_num(*y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="wire" fill="none" stroke="{}" stroke-width="2" points="{}"><title>wire {}</title></polyline>"#,
            PALETTE[wire % PALETTE.len()],
            coords.join(" "),
            wire
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
            fmt_num(PAD - 6.0),
            fmt_num(y_of(wire) + 4.0),
            wire
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Maps a world box onto a square canvas with y pointing up.
struct View {
    x0: f64,
    y1: f64,
    scale: f64,
    size: f64,
}

impl View {
    const SIZE: f64 = 600.0;

    fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let cx = (x0 + x1) / 2.0;
        let cy = (y0 + y1) / 2.0;
        View {
            x0: cx - span / 2.0,
            y1: cy + span / 2.0,
            scale: Self::SIZE / span,
            size: Self::SIZE,
        }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        (self.y1 - y) * self.scale
    }

    fn world(&self) -> (f64, f64, f64, f64) {
        let span = self.size / self.scale;
        (self.x0, self.x0 + span, self.y1 - span, self.y1)
    }
}

/// Circles with the cell label (`+` = inside) written at one point of
/// every cell.
pub fn render_circles(circles: &[Disk]) -> Result<String, ArrangementError> {
    let labeling = circle_cell_labels(circles, Eps::Auto)?;
    let f = |d: &Disk| (to_f64(&d.cx), to_f64(&d.cy), to_f64(&d.r));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (cx, cy, r) in circles.iter().map(f) {
        x0 = x0.min(cx - r);
        x1 = x1.max(cx + r);
        y0 = y0.min(cy - r);
        y1 = y1.max(cy + r);
    }
    if circles.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad = 0.15 * (x1 - x0).max(y1 - y0);
    let view = View::new(x0 - pad, x1 + pad, y0 - pad, y1 + pad);
    let mut out = String::new();
    header(&mut out, view.size, view.size);
    for (i, d) in circles.iter().enumerate() {
        let (cx, cy, r) = f(d);
        let _ = writeln!(
            out,
            r#"<circle class="circle" cx="{}" cy="{}" r="{}" fill="none" stroke="{}" stroke-width="2"><title>c{}: center ({}, {}), r {}</title></circle>"#,
            fmt_num(view.px(cx)),
            fmt_num(view.py(cy)),
            fmt_num(r * view.scale),
            PALETTE[i % PALETTE.len()],
            i,
            format_rat(&d.cx),
            format_rat(&d.cy),
            format_rat(&d.r)
        );
    }
    let (wx0, wx1, wy0, wy1) = view.world();
    for (label, p) in &labeling.witnesses {
        // the far witness may sit off canvas; pin it to a corner
        let (mut x, mut y) = (to_f64(&p.x), to_f64(&p.y));
        if x < wx0 || x > wx1 || y < wy0 || y > wy1 {
            x = wx0 + 0.05 * (wx1 - wx0);
            y = wy1 - 0.05 * (wy1 - wy0);
        }
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" font-size="11" font-family="monospace" text-anchor="middle">{}<title>({}, {})</title></text>"#,
            fmt_num(view.px(x)),
            fmt_num(view.py(y)),
            label,
            format_rat(&p.x),
            format_rat(&p.y)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Clips `y = s x + t` to the box; `None` if it misses.
fn clip(
    s: f64,
    t: f64,
    (x0, x1, y0, y1): (f64, f64, f64, f64),
) -> Option<((f64, f64), (f64, f64))> {
    let (mut lo, mut hi) = (x0, x1);
    if s != 0.0 {
        let (a, b) = ((y0 - t) / s, (y1 - t) / s);
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    } else if t < y0 || t > y1 {
        return None;
    }
    (lo < hi).then(|| ((lo, s * lo + t), (hi, s * hi + t)))
}

/// The planar picture behind a line realization: `a` lines solid, `b`
/// lines dashed, flat points as dots where the transversals pierce the
/// plane.
pub fn render_line_realization(r: &LineRealization) -> String {
    let pts: Vec<(f64, f64)> = r
        .flat_points
        .iter()
        .map(|p| (to_f64(&p.x), to_f64(&p.y)))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = 0.25 * (x1 - x0).max(y1 - y0);
    let view = View::new(x0 - pad, x1 + pad, y0 - pad, y1 + pad);
    let world = view.world();
    let mut out = String::new();
    header(&mut out, view.size, view.size);
    let planar = r.planar_lines();
    let n = r.sheared_points.len();
    for (k, l) in planar.iter().enumerate() {
        let Line2::NonVertical { slope, intercept } = l else {
            continue;
        };
        let (kind, idx, dash) = if k < n {
            ("a", k, "")
        } else {
            ("b", k - n, r#" stroke-dasharray="6 4""#)
        };
        let Some(((ax, ay), (bx, by))) = clip(to_f64(slope), to_f64(intercept), world) else {
            continue;
        };
        let _ = writeln!(
            out,
            r#"<line class="{kind}-line" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"{dash}><title>{kind}{idx}: y = {} x + {}</title></line>"#,
            fmt_num(view.px(ax)),
            fmt_num(view.py(ay)),
            fmt_num(view.px(bx)),
            fmt_num(view.py(by)),
            PALETTE[idx % PALETTE.len()],
            format_rat(slope),
            format_rat(intercept)
        );
    }
    for (k, (p, &(x, y))) in r.flat_points.iter().zip(&pts).enumerate() {
        let (px, py) = (view.px(x), view.py(y));
        let _ = writeln!(
            out,
            r#"<circle class="flat-point" cx="{}" cy="{}" r="4" fill="black"><title>flat {k}: ({}, {})</title></circle>"#,
            fmt_num(px),
            fmt_num(py),
            format_rat(&p.x),
            format_rat(&p.y)
        );
        let _ = writeln!(
            out,
            r#"<rect class="transversal" x="{}" y="{}" width="12" height="12" fill="none" stroke="black"><title>v{k}: direction ({}, 1, 1)</title></rect>"#,
            fmt_num(px - 6.0),
            fmt_num(py - 6.0),
            format_rat(&r.transversal_slopes[k])
        );
    }
    out.push_str("</svg>\n");
    out
}
