//! Minimal static SVG line and rectangle plots.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 48.0;

#[derive(Clone, Debug)]
pub struct Rect {
    pub x_left: f64,
    pub x_right: f64,
    pub height: f64,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD)
    }
}

fn frame_for(curves: &[Curve], rects: &[Rect], unit_box: bool) -> Frame {
    if unit_box {
        return Frame {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
        };
    }
    let pts = curves.iter().flat_map(|c| c.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    for r in rects {
        x0 = x0.min(r.x_left);
        x1 = x1.max(r.x_right);
        y0 = y0.min(0.0);
        y1 = y1.max(r.height);
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if !(y1 > y0) {
        y1 = y0 + 1.0;
    }
    let dy = 0.05 * (y1 - y0);
    Frame {
        x0,
        x1,
        y0: y0 - dy,
        y1: y1 + dy,
    }
}

/// Renders rectangles and curves; `unit_box` pins both axes to [0, 1].
pub fn render(
    title: &str,
    x_label: &str,
    rects: &[Rect],
    curves: &[Curve],
    unit_box: bool,
) -> String {
    let f = frame_for(curves, rects, unit_box);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        W / 2.0,
        H - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for (v, anchor) in [(f.x0, "start"), (f.x1, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="{anchor}" font-family="sans-serif" font-size="10">{v:.4}</text>"#,
            f.px(v),
            H - PAD + 14.0
        );
    }
    for v in [f.y0, f.y1] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="10">{v:.4}</text>"#,
            PAD - 4.0,
            f.py(v) + 4.0
        );
    }
    for r in rects {
        let (x, y) = (f.px(r.x_left), f.py(r.height));
        let _ = writeln!(
            s,
            r##"<rect x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="#9ecae1" fill-opacity="0.6" stroke="#3182bd" stroke-width="0.5"/>"##,
            f.px(r.x_right) - x,
            f.py(0.0_f64.max(f.y0)) - y
        );
    }
    for (i, c) in curves.iter().enumerate() {
        let path: Vec<String> = c
            .points
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", f.px(x), f.py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            path.join(" "),
            c.color
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{}">{}</text>"#,
            PAD + 8.0,
            PAD + 16.0 + 14.0 * i as f64,
            c.color,
            escape(&c.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
