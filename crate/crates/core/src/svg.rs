//! SVG rendering of barcodes: one horizontal segment per bar in canonical
//! order on a linear axis, infinite bars ending in an arrowhead.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::barcode::Barcode;
use crate::exactnum::{ExtRational, Rational};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 14.0;
const ARROW: f64 = 8.0;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Renders the barcode as a standalone SVG document.
pub fn barcode_svg(b: &Barcode, title: &str) -> String {
    let bars = b.expanded();
    let spectrum = b.spectrum();
    let (lo, hi) = match (spectrum.first(), spectrum.last()) {
        (Some(lo), Some(hi)) if lo < hi => (to_f64(lo), to_f64(hi)),
        (Some(v), _) => (to_f64(v) - 1.0, to_f64(v) + 1.0),
        _ => (0.0, 1.0),
    };
    // leave room to the right so infinite bars visibly continue past hi
    let span = (hi - lo) * 1.1;
    let x = |v: f64| MARGIN + (v - lo) / span * (WIDTH - 2.0 * MARGIN);
    let height = MARGIN * 2.0 + ROW * bars.len().max(1) as f64;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .unwrap();
    writeln!(s, r#"<title>{}</title>"#, escape(title)).unwrap();
    let axis_y = height - MARGIN / 2.0;
    writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="gray"/>"#,
        WIDTH - MARGIN
    )
    .unwrap();
    for v in &spectrum {
        let px = x(to_f64(v));
        writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" font-size="9" text-anchor="middle">{v}</text>"#,
            axis_y + 10.0
        )
        .unwrap();
    }
    for (k, bar) in bars.iter().enumerate() {
        let y = MARGIN + ROW * k as f64 + ROW / 2.0;
        let x0 = x(to_f64(&bar.birth));
        match &bar.death {
            ExtRational::Finite(d) => {
                writeln!(
                    s,
                    r#"<line class="bar" x1="{x0:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="3"/>"#,
                    x(to_f64(d))
                )
                .unwrap();
            }
            ExtRational::Infinite => {
                let x1 = WIDTH - MARGIN;
                writeln!(
                    s,
                    r#"<line class="bar infinite" x1="{x0:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="3"/>"#,
                    x1 - ARROW
                )
                .unwrap();
                writeln!(
                    s,
                    r#"<polygon class="arrow" points="{:.2},{:.2} {x1:.2},{y:.2} {:.2},{:.2}" fill="black"/>"#,
                    x1 - ARROW,
                    y - ARROW / 2.0,
                    x1 - ARROW,
                    y + ARROW / 2.0
                )
                .unwrap();
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
