//! Minimal SVG envelope plots: shaded acceptance band, observed curve,
//! dashed CSR reference and labelled axes. Purely string building, so the
//! output is deterministic byte for byte.

use std::fmt::Write as _;

use crate::montecarlo::TestReport;

use super::report::csr_reference;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 64.0;

struct Axes {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Axes {
    fn x(&self, v: f64) -> f64 {
        MARGIN_LEFT
            + (v - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        // SVG y grows downward.
        HEIGHT
            - MARGIN_BOTTOM
            - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn polyline_points(axes: &Axes, xs: &[f64], ys: &[f64]) -> String {
    let mut out = String::new();
    for (&x, &y) in xs.iter().zip(ys) {
        let _ = write!(out, "{:.2},{:.2} ", axes.x(x), axes.y(y));
    }
    out.trim_end().to_string()
}

/// Render the envelope plot for a test report.
pub fn envelope_svg(report: &TestReport) -> String {
    let env = &report.envelope;
    let ds = env.grid().distances();
    let reference: Vec<f64> = ds
        .iter()
        .map(|&d| csr_reference(report.statistic, d))
        .collect();

    let x_min = 0.0;
    let x_max = env.grid().max();
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for series in [env.observed(), env.lower(), env.upper(), &reference] {
        for &v in series {
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
    }
    if y_min == y_max {
        y_min -= 1.0;
        y_max += 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let axes = Axes {
        x_min,
        x_max,
        y_min: y_min - pad,
        y_max: y_max + pad,
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // Shaded acceptance band: upper path forward, lower path backward.
    let mut band = String::new();
    for (i, &d) in ds.iter().enumerate() {
        let _ = write!(band, "{:.2},{:.2} ", axes.x(d), axes.y(env.upper()[i]));
    }
    for (i, &d) in ds.iter().enumerate().rev() {
        let _ = write!(band, "{:.2},{:.2} ", axes.x(d), axes.y(env.lower()[i]));
    }
    let _ = writeln!(
        svg,
        r##"<polygon points="{}" fill="#c6dbef" stroke="none"/>"##,
        band.trim_end()
    );

    let _ = writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#d95f02" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        polyline_points(&axes, ds, &reference)
    );
    let _ = writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#08306b" stroke-width="2"/>"##,
        polyline_points(&axes, ds, env.observed())
    );

    // Axes.
    let x0 = axes.x(axes.x_min);
    let x1 = axes.x(axes.x_max);
    let y0 = axes.y(axes.y_min);
    let y1 = axes.y(axes.y_max);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black" stroke-width="1"/>"#
    );
    for i in 0..=4 {
        let fx = axes.x_min + (axes.x_max - axes.x_min) * i as f64 / 4.0;
        let px = axes.x(fx);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black" stroke-width="1"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{:.2}" font-size="13" text-anchor="middle">{fx:.4}</text>"#,
            y0 + 20.0
        );
        let fy = axes.y_min + (axes.y_max - axes.y_min) * i as f64 / 4.0;
        let py = axes.y(fy);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black" stroke-width="1"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="end">{fy:.4}</text>"#,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">d</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        18.0,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        report.statistic
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="14">{} envelope, {} sims, coverage {}, global p = {}</text>"#,
        MARGIN_LEFT,
        MARGIN_TOP - 10.0,
        report.statistic,
        env.n_sims(),
        env.coverage(),
        report.global_p
    );
    let _ = writeln!(svg, "</svg>");
    svg
}
