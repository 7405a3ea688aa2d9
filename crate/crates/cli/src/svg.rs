//! Small SVG charts: polylines, coloured scatter and heatmaps on linear axes.

use std::fmt::Write;

const WIDTH: f64 = 680.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 120.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
const VIRIDIS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        Self {
            x: padded_range(xs, 0.0),
            y: padded_range(ys, 0.05),
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn padded_range(values: impl Iterator<Item = f64>, pad: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * hi.abs().max(1e-300) {
        let d = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
        return (lo - d, hi + d);
    }
    let d = pad * (hi - lo);
    (lo - d, hi + d)
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * step {
        out.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    out
}

fn label(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".into()
    } else if !(1e-3..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (VIRIDIS.len() - 1) as f64;
    let k = (t.floor() as usize).min(VIRIDIS.len() - 2);
    let f = t - k as f64;
    let (a, b) = (VIRIDIS[k], VIRIDIS[k + 1]);
    let mix = |p: f64, q: f64| (p + (q - p) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn open(svg: &mut String, title: &str) {
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        escape(title)
    );
}

fn axes(svg: &mut String, frame: &Frame, xlabel: &str, ylabel: &str) {
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        r#"<rect x="{x0}" y="{y1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    for t in ticks(frame.x.0, frame.x.1) {
        let px = frame.px(t);
        let _ = writeln!(svg, r#"<line x1="{px:.1}" y1="{y0}" x2="{px:.1}" y2="{:.1}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(
            svg,
            r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            y0 + 19.0,
            label(t)
        );
    }
    for t in ticks(frame.y.0, frame.y.1) {
        let py = frame.py(t);
        let _ = writeln!(svg, r#"<line x1="{:.1}" y1="{py:.1}" x2="{x0}" y2="{py:.1}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            py + 4.0,
            label(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 18.0,
        escape(xlabel)
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(20 {:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
        (y0 + y1) / 2.0,
        escape(ylabel)
    );
}

fn colorbar(svg: &mut String, range: (f64, f64), title: &str) {
    let x = WIDTH - RIGHT + 30.0;
    let steps = 40;
    let h = (HEIGHT - TOP - BOTTOM) / steps as f64;
    for k in 0..steps {
        let y = TOP + h * k as f64;
        let t = 1.0 - (k as f64 + 0.5) / steps as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{x}" y="{y:.1}" width="16" height="{:.2}" fill="{}"/>"#,
            h + 0.5,
            color(t)
        );
    }
    for (v, y) in [(range.1, TOP + 4.0), (range.0, HEIGHT - BOTTOM)] {
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{y:.1}">{}</text>"#, x + 20.0, label(v));
    }
    let _ = writeln!(svg, r#"<text x="{x}" y="{:.1}">{}</text>"#, TOP - 8.0, escape(title));
}

/// One polyline per series with a legend.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter().copied());
    let frame = Frame::fit(all.clone().map(|p| p.0), all.map(|p| p.1));
    let mut svg = String::new();
    open(&mut svg, title);
    axes(&mut svg, &frame, xlabel, ylabel);
    for (k, s) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|p| format!("{:.1},{:.1}", frame.px(p.0), frame.py(p.1)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.8"/>"#,
            pts.join(" ")
        );
        for p in &pts {
            let (cx, cy) = p.split_once(',').unwrap_or(("0", "0"));
            let _ = writeln!(svg, r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="{colour}"/>"#);
        }
        let ly = TOP + 16.0 * (k as f64 + 1.0);
        let lx = WIDTH - RIGHT + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{colour}" stroke-width="2"/>"#,
            ly - 4.0,
            lx + 16.0,
            ly - 4.0
        );
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{ly:.1}">{}</text>"#, lx + 20.0, escape(&s.name));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Points `(x, y, value)` coloured by `value` over `range`.
pub fn scatter_plot(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    points: &[(f64, f64, f64)],
    range: (f64, f64),
    value_label: &str,
) -> String {
    let frame = Frame::fit(points.iter().map(|p| p.0), points.iter().map(|p| p.1));
    let mut svg = String::new();
    open(&mut svg, title);
    axes(&mut svg, &frame, xlabel, ylabel);
    for &(x, y, v) in points {
        let t = (v - range.0) / (range.1 - range.0);
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{}"/>"#,
            frame.px(x),
            frame.py(y),
            color(t)
        );
    }
    colorbar(&mut svg, range, value_label);
    svg.push_str("</svg>\n");
    svg
}

/// Cells of `values[i][j]` centred on `(xs[i], ys[j])`.
pub fn heatmap(title: &str, xlabel: &str, ylabel: &str, xs: &[f64], ys: &[f64], values: &[Vec<f64>]) -> String {
    let frame = Frame {
        x: padded_range(xs.iter().copied(), 0.0),
        y: padded_range(ys.iter().copied(), 0.0),
    };
    let max = values.iter().flatten().copied().fold(0.0, f64::max);
    let mut svg = String::new();
    open(&mut svg, title);
    let half = |v: &[f64], k: usize| -> (f64, f64) {
        let lo = if k == 0 { v[0] } else { 0.5 * (v[k - 1] + v[k]) };
        let hi = if k + 1 == v.len() { v[k] } else { 0.5 * (v[k] + v[k + 1]) };
        (lo, hi)
    };
    for (i, row) in values.iter().enumerate().take(xs.len()) {
        let (xa, xb) = half(xs, i);
        for (j, v) in row.iter().enumerate().take(ys.len()) {
            let (ya, yb) = half(ys, j);
            let t = if max > 0.0 { v / max } else { 0.0 };
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                frame.px(xa),
                frame.py(yb),
                frame.px(xb) - frame.px(xa) + 0.3,
                frame.py(ya) - frame.py(yb) + 0.3,
                color(t)
            );
        }
    }
    axes(&mut svg, &frame, xlabel, ylabel);
    colorbar(&mut svg, (0.0, max), "");
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round_and_inside() {
        let t = ticks(0.13, 0.97);
        assert_eq!(t, vec![0.2, 0.4, 0.6000000000000001, 0.8]);
        assert!(ticks(-90.0, 90.0).contains(&0.0));
    }

    #[test]
    fn charts_are_well_formed() {
        let s = Series {
            name: "a<b".into(),
            points: vec![(0.0, 1.0), (1.0, 2.0), (2.0, f64::NAN)],
        };
        let svg = line_plot("t", "x", "y", &[s]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains("a&lt;b"));
        let svg = heatmap("h", "x", "y", &[0.0, 1.0], &[0.0, 1.0], &[vec![0.0, 1.0], vec![0.5, 0.25]]);
        assert_eq!(svg.matches("<rect").count(), 2 + 4 + 40);
        let svg = scatter_plot("s", "x", "y", &[(0.0, 0.0, -90.0), (1.0, 1.0, 90.0)], (-90.0, 90.0), "deg");
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn colormap_ends() {
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
    }
}
