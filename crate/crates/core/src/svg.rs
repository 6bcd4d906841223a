//! Minimal SVG writer with fixed-precision coordinates so output is
//! byte-stable.

use std::fmt::Write;

use nalgebra::Point2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bounds {
    pub fn of(points: impl IntoIterator<Item = Point2<f64>>) -> Bounds {
        points.into_iter().fold(
            Bounds {
                min_x: f64::INFINITY,
                min_y: f64::INFINITY,
                max_x: f64::NEG_INFINITY,
                max_y: f64::NEG_INFINITY,
            },
            |b, p| Bounds {
                min_x: b.min_x.min(p.x),
                min_y: b.min_y.min(p.y),
                max_x: b.max_x.max(p.x),
                max_y: b.max_y.max(p.y),
            },
        )
    }

    /// Bounds of the same points with y negated.
    pub fn flip_y(self) -> Bounds {
        Bounds {
            min_y: -self.max_y,
            max_y: -self.min_y,
            ..self
        }
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    // avoid "-0.000000"
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".to_owned()
    } else {
        s
    }
}

fn points_attr(points: &[Point2<f64>]) -> String {
    points
        .iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn data_attrs(data: &[(&str, usize)]) -> String {
    data.iter()
        .map(|(k, v)| format!(" data-{k}=\"{v}\""))
        .collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub struct SvgWriter {
    out: String,
    stroke: f64,
}

impl SvgWriter {
    /// Starts a document showing `bounds` (plus a small margin), `width`
    /// pixels wide.
    pub fn new(bounds: Bounds, width: f64) -> SvgWriter {
        let span = bounds.width().max(bounds.height()).max(1e-9);
        let margin = 0.03 * span;
        let (w, h) = (
            bounds.width() + 2.0 * margin,
            bounds.height() + 2.0 * margin,
        );
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
            num(width),
            num(width * h / w),
            num(bounds.min_x - margin),
            num(bounds.min_y - margin),
            num(w),
            num(h)
        );
        SvgWriter {
            out,
            stroke: span / 400.0,
        }
    }

    pub fn title(&mut self, text: &str) {
        let _ = writeln!(self.out, "<title>{}</title>", escape(text));
    }

    /// Stroke width suited to the drawing's scale.
    pub fn stroke(&self) -> f64 {
        self.stroke
    }

    pub fn polygon(&mut self, points: &[Point2<f64>], style: &str, data: &[(&str, usize)]) {
        let _ = writeln!(
            self.out,
            "<polygon points=\"{}\" {style} stroke-width=\"{}\"{}/>",
            points_attr(points),
            num(self.stroke),
            data_attrs(data)
        );
    }

    pub fn polyline(&mut self, points: &[Point2<f64>], style: &str, width: f64) {
        let _ = writeln!(
            self.out,
            "<polyline points=\"{}\" fill=\"none\" {style} stroke-width=\"{}\"/>",
            points_attr(points),
            num(width)
        );
    }

    pub fn line(&mut self, a: Point2<f64>, b: Point2<f64>, style: &str, data: &[(&str, usize)]) {
        let _ = writeln!(
            self.out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style} stroke-width=\"{}\"{}/>",
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y),
            num(self.stroke),
            data_attrs(data)
        );
    }

    pub fn circle(&mut self, c: Point2<f64>, r: f64, style: &str, data: &[(&str, usize)]) {
        let _ = writeln!(
            self.out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}{}/>",
            num(c.x),
            num(c.y),
            num(r),
            data_attrs(data)
        );
    }

    pub fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(-0.5), "-0.500000");
    }

    #[test]
    fn polygon_with_data() {
        let b = Bounds::of([Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)]);
        let mut w = SvgWriter::new(b, 100.0);
        w.polygon(
            &[
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            ],
            "fill=\"red\"",
            &[("face", 3), ("step", 0)],
        );
        let svg = w.finish();
        assert!(svg.contains("points=\"0.000000,0.000000 1.000000,0.000000 0.000000,1.000000\""));
        assert!(svg.contains("data-face=\"3\" data-step=\"0\"/>"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
