//! Minimal SVG 1.1 writer with fixed six-decimal coordinates, so output is
//! byte-stable for identical input.

use std::fmt::Write;

use crate::geometry::Point2;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    // avoid "-0.000000"
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Draws world coordinates inside a box, y pointing up.
pub struct Svg {
    lo: Point2,
    hi: Point2,
    body: String,
}

impl Svg {
    pub fn new(lo: Point2, hi: Point2) -> Self {
        Self {
            lo,
            hi,
            body: String::new(),
        }
    }

    fn map(&self, p: Point2) -> (String, String) {
        (num(p.x), num(self.hi.y + self.lo.y - p.y))
    }

    pub fn circle(&mut self, center: Point2, r: f64, class: &str) {
        let (x, y) = self.map(center);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{x}" cy="{y}" r="{}"/>"#,
            num(r)
        );
    }

    pub fn polyline(&mut self, points: &[Point2], class: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline class="{class}" points="{}"/>"#,
            coords.join(" ")
        );
    }

    pub fn polygon(&mut self, points: &[Point2], class: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polygon class="{class}" points="{}"/>"#,
            coords.join(" ")
        );
    }

    pub fn line(&mut self, a: Point2, b: Point2, class: &str) {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
        );
    }

    pub fn text(&mut self, at: Point2, size: f64, content: &str) {
        let (x, y) = self.map(at);
        let escaped = content
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            r#"<text x="{x}" y="{y}" font-size="{}">{escaped}</text>"#,
            num(size)
        );
    }

    pub fn finish(self) -> String {
        let w = self.hi.x - self.lo.x;
        let h = self.hi.y - self.lo.y;
        let stroke = 0.004 * w.max(h);
        format!(
            concat!(
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
                "viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">\n",
                "<style>* {{ fill: none; stroke-width: {}; }} ",
                ".boundary {{ stroke: #888; }} .polygon {{ stroke: #000; }} ",
                ".support {{ stroke: #c33; }} .geodesic {{ stroke: #36c; }} ",
                ".profile-d {{ stroke: #393; }} .profile-h {{ stroke: #c33; }} ",
                ".axis {{ stroke: #888; }} text {{ fill: #000; stroke: none; }}</style>\n",
                "{}</svg>\n"
            ),
            num(self.lo.x),
            num(self.lo.y),
            num(w),
            num(h),
            (800.0 * h / w).round() as i64,
            num(stroke),
            self.body
        )
    }
}
