//! Minimal SVG writer with equal axis scaling.
//!
//! The view box is the data bounding box (y flipped, 5% padding) and the
//! document is 800 user pixels wide, so one unit has the same length on
//! both axes.

use std::fmt::Write;

use droplet_core::Complex;

const WIDTH: f64 = 800.0;

/// An SVG drawing in data coordinates.
#[derive(Debug, Default, Clone)]
pub struct Figure {
    lo: Option<(f64, f64)>,
    hi: (f64, f64),
    body: String,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl Figure {
    /// An empty figure.
    pub fn new() -> Self {
        Self::default()
    }

    fn include(&mut self, x: f64, y: f64) {
        match self.lo {
            None => {
                self.lo = Some((x, y));
                self.hi = (x, y);
            }
            Some((lx, ly)) => {
                self.lo = Some((lx.min(x), ly.min(y)));
                self.hi = (self.hi.0.max(x), self.hi.1.max(y));
            }
        }
    }

    /// A closed polyline.
    pub fn polygon(&mut self, points: &[Complex], stroke: &str, class: &str) {
        let mut pts = String::new();
        for z in points {
            self.include(z.re, z.im);
            let _ = write!(pts, "{:.6},{:.6} ", z.re, -z.im);
        }
        let _ = writeln!(
            self.body,
            r#"<polygon class="{}" points="{}" fill="none" stroke="{}" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"#,
            esc(class),
            pts.trim_end(),
            esc(stroke)
        );
    }

    /// Dots of the given radius in data units.
    pub fn dots(&mut self, points: &[Complex], radius: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<g fill="{}">"#, esc(fill));
        for z in points {
            self.include(z.re, z.im);
            let _ = writeln!(
                self.body,
                r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#,
                z.re, -z.im, radius
            );
        }
        self.body.push_str("</g>\n");
    }

    /// An axis-aligned rectangle with corner `(x, y)` at the bottom left.
    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        self.include(x, y);
        self.include(x + w, y + h);
        let _ = writeln!(
            self.body,
            r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="{}"/>"#,
            x,
            -(y + h),
            w,
            h,
            esc(fill)
        );
    }

    /// The document, with `title` as its accessible name.
    pub fn finish(&self, title: &str) -> String {
        let (lo, hi) = match self.lo {
            Some(lo) => (lo, self.hi),
            None => ((-1.0, -1.0), (1.0, 1.0)),
        };
        let pad = 0.05 * (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let (x0, y0) = (lo.0 - pad, -(hi.1 + pad));
        let (w, h) = (hi.0 - lo.0 + 2.0 * pad, hi.1 - lo.1 + 2.0 * pad);
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}" preserveAspectRatio="xMidYMid meet">"#,
                "\n<title>{}</title>\n{}</svg>\n"
            ),
            WIDTH,
            WIDTH * h / w,
            x0,
            y0,
            w,
            h,
            esc(title),
            self.body
        )
    }
}
