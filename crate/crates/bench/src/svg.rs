//! Minimal SVG writer with linear axes.

use std::fmt::Write;

pub(crate) const WIDTH: f64 = 720.0;
pub(crate) const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

pub(crate) fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub(crate) struct Svg {
    body: String,
}

impl Svg {
    pub(crate) fn new(title: &str) -> Self {
        let mut body = String::new();
        let _ = write!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>
"#,
            WIDTH / 2.0,
            escape(title)
        );
        Svg { body }
    }

    pub(crate) fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}"/>"#
        );
    }

    pub(crate) fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, opacity: f64) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{fill}" fill-opacity="{opacity}" stroke="{fill}"/>"#,
            w.max(0.5),
            h.max(0.5)
        );
    }

    pub(crate) fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}" fill-opacity="0.6"/>"#);
    }

    pub(crate) fn text(&mut self, x: f64, y: f64, anchor: &str, s: &str) {
        let _ = writeln!(self.body, r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{}</text>"#, escape(s));
    }

    pub(crate) fn legend(&mut self, entries: &[(&str, &str)]) {
        for (k, (label, color)) in entries.iter().enumerate() {
            let y = TOP + 10.0 + 20.0 * k as f64;
            self.rect(WIDTH - RIGHT + 15.0, y - 9.0, 12.0, 12.0, color, 0.8);
            self.text(WIDTH - RIGHT + 33.0, y + 2.0, "start", label);
        }
    }

    pub(crate) fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Linear data-to-pixel mapping for the plot area.
pub(crate) struct Axes {
    x: (f64, f64),
    y: (f64, f64),
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        let d = if lo.abs() > 1e-12 { lo.abs() * 0.1 } else { 1.0 };
        return (lo - d, hi + d);
    }
    let d = (hi - lo) * 0.05;
    (lo - d, hi + d)
}

impl Axes {
    pub(crate) fn new(x: (f64, f64), y: (f64, f64)) -> Self {
        Axes { x: padded(x.0, x.1), y: padded(y.0, y.1) }
    }

    /// Axes whose ranges are exactly the given ones (histograms).
    pub(crate) fn exact(x: (f64, f64), y: (f64, f64)) -> Self {
        Axes { x, y }
    }

    pub(crate) fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    pub(crate) fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    pub(crate) fn py_bottom(&self) -> f64 {
        HEIGHT - BOTTOM
    }

    pub(crate) fn draw(&self, svg: &mut Svg, xlabel: &str, ylabel: &str, x_ticks: bool) {
        let (l, r, t, b) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
        svg.line(l, b, r, b, "black");
        svg.line(l, t, l, b, "black");
        for k in 0..=4 {
            let f = k as f64 / 4.0;
            let yv = self.y.0 + f * (self.y.1 - self.y.0);
            let y = self.py(yv);
            svg.line(l - 4.0, y, l, y, "black");
            svg.line(l, y, r, y, "#e0e0e0");
            svg.text(l - 6.0, y + 4.0, "end", &tick(yv));
            if x_ticks {
                let xv = self.x.0 + f * (self.x.1 - self.x.0);
                let x = self.px(xv);
                svg.line(x, b, x, b + 4.0, "black");
                svg.text(x, b + 18.0, "middle", &tick(xv));
            }
        }
        svg.text((l + r) / 2.0, HEIGHT - 15.0, "middle", xlabel);
        let _ = writeln!(
            svg.body,
            r#"<text transform="translate(18,{:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
            (t + b) / 2.0,
            escape(ylabel)
        );
    }
}

fn tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else if a >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escapes_and_maps() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
        let ax = Axes::exact((0.0, 10.0), (0.0, 1.0));
        assert_eq!(ax.px(0.0), LEFT);
        assert_eq!(ax.py(0.0), HEIGHT - BOTTOM);
        assert_eq!(ax.py(1.0), TOP);
        let degenerate = Axes::new((5.0, 5.0), (0.0, 0.0));
        assert!(degenerate.px(5.0).is_finite() && degenerate.py(0.0).is_finite());
    }

    #[test]
    fn document_is_closed() {
        let mut s = Svg::new("t");
        s.circle(1.0, 2.0, 3.0, "red");
        let doc = s.finish();
        assert!(doc.starts_with("<svg") && doc.ends_with("</svg>\n"));
    }
}
