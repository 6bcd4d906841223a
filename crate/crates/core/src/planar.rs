//! Tutte drawings of a solid's skeleton with a peel trace.
//!
//! The start face `F1` becomes the outer face, drawn with its true shape; all
//! other vertices sit at the average of their neighbors. The drawing is turned
//! so that the projected centroid of `F2` lies on the positive y axis.

use nalgebra::{DMatrix, DVector, Point2, Rotation2};

use crate::error::{Error, Result};
use crate::geometry::Polyhedron;
use crate::graph::{skeleton, SkeletonGraph};
use crate::peel::PeelSequence;
use crate::svg::{Bounds, SvgWriter};

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarEmbedding {
    pub positions: Vec<Point2<f64>>,
    /// Vertices of the outer face, counter-clockwise.
    pub outer: Vec<usize>,
    pub graph: SkeletonGraph,
    pub faces: Vec<Vec<usize>>,
    /// Peel order and the projected centroid of each face along it.
    pub order: Vec<usize>,
    pub trace: Vec<Point2<f64>>,
    pub remaining: Vec<usize>,
}

/// Embeds the skeleton of `p` with `seq`'s first face outside.
pub fn embed(p: &Polyhedron, seq: &PeelSequence) -> Result<PlanarEmbedding> {
    let order = seq.order();
    let (&f1, &f2) = match order.as_slice() {
        [a, b, ..] => (a, b),
        _ => return Err(Error::EmptySequence),
    };
    let mut e = tutte(p, f1)?;
    let anchor = face_center(&e.positions, p.face(f2));
    let turn = Rotation2::new(std::f64::consts::FRAC_PI_2 - anchor.y.atan2(anchor.x));
    for q in &mut e.positions {
        *q = turn * *q;
    }
    e.trace = order
        .iter()
        .map(|&f| face_center(&e.positions, p.face(f)))
        .collect();
    e.order = order;
    e.remaining = seq.remaining.clone();
    Ok(e)
}

/// Tutte embedding with face `outer` as the fixed boundary.
pub fn tutte(p: &Polyhedron, outer: usize) -> Result<PlanarEmbedding> {
    let top = p.rotate_to_top(outer)?;
    let graph = skeleton(p);
    let n = p.vertex_count();
    let boundary = p.face(outer).to_vec();
    let mut fixed: Vec<Option<Point2<f64>>> = vec![None; n];
    for &v in &boundary {
        let q = top.vertices()[v];
        fixed[v] = Some(Point2::new(q.x, q.y));
    }
    let interior: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in interior.iter().enumerate() {
        slot[v] = i;
    }

    let m = interior.len();
    let mut a = DMatrix::<f64>::zeros(m, m);
    let mut bx = DVector::<f64>::zeros(m);
    let mut by = DVector::<f64>::zeros(m);
    for (i, &v) in interior.iter().enumerate() {
        a[(i, i)] = graph.degree(v) as f64;
        for &w in graph.neighbors(v) {
            match fixed[w] {
                Some(q) => {
                    bx[i] += q.x;
                    by[i] += q.y;
                }
                None => a[(i, slot[w])] -= 1.0,
            }
        }
    }
    let lu = a.lu();
    let xs = lu.solve(&bx).ok_or(Error::SingularSystem)?;
    let ys = lu.solve(&by).ok_or(Error::SingularSystem)?;

    let positions = (0..n)
        .map(|v| fixed[v].unwrap_or_else(|| Point2::new(xs[slot[v]], ys[slot[v]])))
        .collect();
    Ok(PlanarEmbedding {
        positions,
        outer: boundary,
        graph,
        faces: p.faces().to_vec(),
        order: Vec::new(),
        trace: Vec::new(),
        remaining: Vec::new(),
    })
}

fn face_center(positions: &[Point2<f64>], face: &[usize]) -> Point2<f64> {
    let sum = face
        .iter()
        .fold(nalgebra::Vector2::zeros(), |s, &v| s + positions[v].coords);
    Point2::from(sum / face.len() as f64)
}

fn orient(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>) -> f64 {
    (b - a).perp(&(c - a))
}

/// Whether closed segments `ab` and `cd` meet, up to `tol` (scaled by the
/// segment lengths).
fn segments_cross(
    a: Point2<f64>,
    b: Point2<f64>,
    c: Point2<f64>,
    d: Point2<f64>,
    tol: f64,
) -> bool {
    let scale = (b - a).norm().max((d - c).norm()).max(1e-300);
    let eps = tol * scale * scale;
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
    {
        return true;
    }
    // touching or collinear cases
    let on = |p: Point2<f64>, q: Point2<f64>, r: Point2<f64>, o: f64| {
        o.abs() <= eps
            && r.x >= p.x.min(q.x) - tol * scale
            && r.x <= p.x.max(q.x) + tol * scale
            && r.y >= p.y.min(q.y) - tol * scale
            && r.y <= p.y.max(q.y) + tol * scale
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}

impl PlanarEmbedding {
    /// Pairs of edges without a common endpoint that meet, plus pairs with a
    /// common endpoint that overlap along a line.
    pub fn crossings(&self, tol: f64) -> Vec<((usize, usize), (usize, usize))> {
        let edges = self.graph.edges();
        let p = &self.positions;
        let mut out = Vec::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                let shared = [c, d].iter().find(|&&x| x == a || x == b).copied();
                let hit = match shared {
                    None => segments_cross(p[a], p[b], p[c], p[d], tol),
                    Some(s) => {
                        let u = if s == a { b } else { a };
                        let w = if s == c { d } else { c };
                        let (eu, ew) = (p[u] - p[s], p[w] - p[s]);
                        eu.perp(&ew).abs() <= tol * eu.norm() * ew.norm() && eu.dot(&ew) > 0.0
                    }
                };
                if hit {
                    out.push(((a, b), (c, d)));
                }
            }
        }
        out
    }

    /// Largest distance of an interior vertex from the mean of its neighbors.
    pub fn barycentric_residual(&self) -> f64 {
        (0..self.positions.len())
            .filter(|v| !self.outer.contains(v))
            .map(|v| {
                let nb = self.graph.neighbors(v);
                let mean = face_center(&self.positions, nb);
                (self.positions[v] - mean).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Whether every face boundary is a simple polygon.
    pub fn faces_simple(&self, tol: f64) -> bool {
        self.faces.iter().all(|face| {
            let k = face.len();
            let pt = |i: usize| self.positions[face[i % k]];
            (0..k).all(|i| {
                (i + 2..k)
                    .filter(|&j| (j + 1) % k != i)
                    .all(|j| !segments_cross(pt(i), pt(i + 1), pt(j), pt(j + 1), tol))
            })
        })
    }

    /// Edges, remaining faces in red and the peel trace.
    pub fn to_svg(&self) -> String {
        let flip = |q: Point2<f64>| Point2::new(q.x, -q.y);
        let bounds = Bounds::of(self.positions.iter().copied()).flip_y();
        let mut svg = SvgWriter::new(bounds, 400.0);
        svg.title("planar graph");
        for &f in &self.remaining {
            let pts: Vec<Point2<f64>> = self.faces[f]
                .iter()
                .map(|&v| flip(self.positions[v]))
                .collect();
            svg.polygon(
                &pts,
                "fill=\"#e03030\" fill-opacity=\"0.6\" stroke=\"none\"",
                &[("face", f)],
            );
        }
        for (a, b) in self.graph.edges() {
            svg.line(
                flip(self.positions[a]),
                flip(self.positions[b]),
                "stroke=\"black\"",
                &[("a", a), ("b", b)],
            );
        }
        let trace: Vec<Point2<f64>> = self.trace.iter().map(|&q| flip(q)).collect();
        let w = svg.stroke() * 2.0;
        svg.polyline(&trace, "stroke=\"#1060d0\" stroke-linejoin=\"round\"", w);
        for (step, (&f, &q)) in self.order.iter().zip(&trace).enumerate() {
            svg.circle(
                q,
                w * 1.5,
                "fill=\"#1060d0\"",
                &[("face", f), ("step", step)],
            );
        }
        svg.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::peel::{peel, PeelConfig};

    fn run(name: &str) -> (Polyhedron, PeelSequence) {
        let p = lookup(name).unwrap().polyhedron.clone();
        let f2 = p.adjacency().faces(0).next().unwrap();
        let seq = peel(&p, 0, f2, &PeelConfig::default()).unwrap();
        (p, seq)
    }

    #[test]
    fn tetrahedron_center_vertex() {
        let (p, seq) = run("tetrahedron");
        let e = embed(&p, &seq).unwrap();
        let inner = (0..4).find(|v| !e.outer.contains(v)).unwrap();
        let c = face_center(&e.positions, &e.outer);
        assert!((e.positions[inner] - c).norm() < 1e-12);
    }

    #[test]
    fn cube_is_planar_and_f2_up() {
        let (p, seq) = run("cube");
        let e = embed(&p, &seq).unwrap();
        assert_eq!(e.graph.edge_count(), 12);
        assert!(e.crossings(1e-9).is_empty());
        assert!(e.barycentric_residual() < 1e-9);
        assert!(e.faces_simple(1e-9));
        let f2 = e.trace[1];
        assert!(f2.x.abs() < 1e-9 && f2.y > 0.0);
    }

    #[test]
    fn crossing_detected() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(1.0, 1.0);
        let c = Point2::new(0.0, 1.0);
        let d = Point2::new(1.0, 0.0);
        assert!(segments_cross(a, b, c, d, 1e-9));
        assert!(!segments_cross(a, c, b, d, 1e-9));
        // T junction
        assert!(segments_cross(
            a,
            d,
            Point2::new(0.5, 0.0),
            Point2::new(0.5, 1.0),
            1e-9
        ));
    }

    #[test]
    fn remaining_faces_are_red() {
        let (p, seq) = run("cuboctahedron");
        assert!(!seq.remaining.is_empty());
        let svg = embed(&p, &seq).unwrap().to_svg();
        assert_eq!(svg.matches("#e03030").count(), seq.remaining.len());
    }
}
