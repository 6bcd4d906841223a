//! Flattening peel sequences into planar nets.
//!
//! Each face is placed by a rigid transform composed down the hinge chain: the
//! first face is laid on `z = 0` with its outward normal pointing to `-z` (so
//! the inside of the solid faces a viewer on `+z`), and every following face
//! is its predecessor's transform composed with the rotation about their
//! shared edge that makes the two faces coplanar.

use std::fmt::Write;

use nalgebra::{Isometry3, Point2, Translation3, Unit, UnitQuaternion};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{top_rotation, Point, Polyhedron, Vector};
use crate::peel::PeelSequence;
use crate::svg::{Bounds, SvgWriter};

/// Lightness of the first and last face in a rendered net.
pub const SHADE_START: f64 = 0.25;
pub const SHADE_END: f64 = 0.90;

/// Hinges shorter than this are treated as collapsed.
const MIN_HINGE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetFace {
    pub face: usize,
    pub step: usize,
    /// Original vertex indices, in the face's cycle order.
    pub vertices: Vec<usize>,
    pub polygon: Vec<Point2<f64>>,
    /// Vertices of the edge shared with the previous face.
    pub hinge: Option<(usize, usize)>,
    /// Lightness in `[SHADE_START, SHADE_END]`, darkest first.
    pub shade: f64,
}

impl NetFace {
    pub fn area(&self) -> f64 {
        polygon_area(&self.polygon).abs()
    }

    /// Position of original vertex `v` in the net.
    pub fn point_of(&self, v: usize) -> Option<Point2<f64>> {
        self.vertices
            .iter()
            .position(|&u| u == v)
            .map(|i| self.polygon[i])
    }
}

/// A flattened peel. Faces are in peel order; the inside of the solid faces
/// the viewer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Net {
    pub solid: Option<String>,
    pub faces: Vec<NetFace>,
}

impl Net {
    pub fn area(&self) -> f64 {
        self.faces.iter().map(NetFace::area).sum()
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::of(self.faces.iter().flat_map(|f| f.polygon.iter().copied()))
    }

    /// One `<polygon>` per face, shaded from dark (first) to light (last).
    pub fn to_svg(&self) -> String {
        let mut svg = SvgWriter::new(self.bounds().flip_y(), 400.0);
        if let Some(name) = &self.solid {
            svg.title(&format!("{name} net"));
        }
        for f in &self.faces {
            let grey = (f.shade * 255.0).round() as u8;
            let points: Vec<Point2<f64>> =
                f.polygon.iter().map(|p| Point2::new(p.x, -p.y)).collect();
            svg.polygon(
                &points,
                &format!("fill=\"rgb({grey},{grey},{grey})\" stroke=\"black\""),
                &[("face", f.face), ("step", f.step)],
            );
        }
        svg.finish()
    }
}

/// Signed area, positive for counter-clockwise polygons.
pub fn polygon_area(poly: &[Point2<f64>]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        / 2.0
}

fn check_chain(p: &Polyhedron, order: &[usize]) -> Result<()> {
    if order.is_empty() {
        return Err(Error::EmptySequence);
    }
    for &f in order {
        if f >= p.face_count() {
            return Err(Error::FaceOutOfRange {
                face: f,
                count: p.face_count(),
            });
        }
    }
    for w in order.windows(2) {
        if !p.adjacency().are_adjacent(w[0], w[1]) {
            return Err(Error::BrokenChain(w[0], w[1]));
        }
    }
    Ok(())
}

/// Rotation about the edge shared by `from` and `to` that maps the plane of
/// `from` onto the plane of `to`.
fn hinge_rotation(p: &Polyhedron, from: usize, to: usize) -> Result<Isometry3<f64>> {
    let (a, b) = p
        .shared_edge(from, to)
        .ok_or(Error::BrokenChain(from, to))?;
    let (pa, pb) = (p.vertices()[a], p.vertices()[b]);
    let axis = pb - pa;
    if axis.norm() <= MIN_HINGE {
        return Err(Error::CollapsedHinge(from, to));
    }
    let u = Unit::new_normalize(axis);
    let (n_from, n_to) = (p.face_normal(from), p.face_normal(to));
    let angle = u.dot(&n_from.cross(&n_to)).atan2(n_from.dot(&n_to));
    let rotation = UnitQuaternion::from_axis_angle(&u, angle);
    // rotate about the line through pa
    Ok(Translation3::from(pa.coords) * rotation * Translation3::from(-pa.coords))
}

fn renormalize(iso: Isometry3<f64>) -> Isometry3<f64> {
    Isometry3::from_parts(
        iso.translation,
        UnitQuaternion::new_normalize(iso.rotation.into_inner()),
    )
}

fn shade(step: usize, len: usize) -> f64 {
    if len <= 1 {
        SHADE_START
    } else {
        SHADE_START + (SHADE_END - SHADE_START) * step as f64 / (len - 1) as f64
    }
}

/// Lays the faces of a peel out in the plane. Incomplete runs give a net of
/// the selected faces only.
pub fn unfold(p: &Polyhedron, seq: &PeelSequence) -> Result<Net> {
    unfold_order(p, &seq.order())
}

/// [`unfold`] for an explicit face order; consecutive faces must be adjacent.
pub fn unfold_order(p: &Polyhedron, order: &[usize]) -> Result<Net> {
    check_chain(p, order)?;
    let f1 = order[0];
    let to_origin = Translation3::from(-p.centroid(f1).coords);
    let face_down = top_rotation(&-p.face_normal(f1));
    let mut transform = Isometry3::from_parts(Translation3::identity(), face_down) * to_origin;

    let mut faces = Vec::with_capacity(order.len());
    for (step, &f) in order.iter().enumerate() {
        let hinge = if step == 0 {
            None
        } else {
            let prev = order[step - 1];
            transform = renormalize(transform * hinge_rotation(p, f, prev)?);
            p.shared_edge(prev, f)
        };
        let polygon = p
            .face(f)
            .iter()
            .map(|&v| {
                let q = transform * p.vertices()[v];
                Point2::new(q.x, q.y)
            })
            .collect();
        faces.push(NetFace {
            face: f,
            step,
            vertices: p.face(f).to_vec(),
            polygon,
            hinge,
            shade: shade(step, order.len()),
        });
    }
    Ok(Net {
        solid: p.name().map(str::to_owned),
        faces,
    })
}

/// Pairs of net positions whose polygon interiors overlap by more than
/// `tolerance`. Touching along an edge or at a point is not an overlap.
pub fn check_overlap(net: &Net, tolerance: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..net.faces.len() {
        for j in i + 1..net.faces.len() {
            if convex_overlap(&net.faces[i].polygon, &net.faces[j].polygon, tolerance) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Separating-axis test for convex polygons.
fn convex_overlap(a: &[Point2<f64>], b: &[Point2<f64>], tolerance: f64) -> bool {
    for poly in [a, b] {
        let n = poly.len();
        for i in 0..n {
            let e = poly[(i + 1) % n] - poly[i];
            let len = e.norm();
            if len == 0.0 {
                continue;
            }
            let axis = nalgebra::Vector2::new(-e.y, e.x) / len;
            let project = |q: &[Point2<f64>]| {
                q.iter()
                    .map(|p| axis.dot(&p.coords))
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                        (lo.min(x), hi.max(x))
                    })
            };
            let (alo, ahi) = project(a);
            let (blo, bhi) = project(b);
            if ahi.min(bhi) - alo.max(blo) <= tolerance {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceRole {
    Unfolded,
    LastSelected,
    NotUnfolded,
}

impl FaceRole {
    pub fn as_str(self) -> &'static str {
        match self {
            FaceRole::Unfolded => "unfolded",
            FaceRole::LastSelected => "last-selected",
            FaceRole::NotUnfolded => "not-unfolded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialFace {
    pub face: usize,
    pub role: FaceRole,
    pub points: Vec<Point>,
}

/// The solid part-way through flattening: the first `step` faces of the peel
/// are folded hinge by hinge into the plane of face number `step` (0-based),
/// the rest stay where they are.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialUnfoldState {
    pub step: usize,
    /// Indexed by face.
    pub faces: Vec<PartialFace>,
}

impl PartialUnfoldState {
    pub fn count(&self, role: FaceRole) -> usize {
        self.faces.iter().filter(|f| f.role == role).count()
    }

    /// Wavefront OBJ; each face is fanned from its centroid. Roles are
    /// recorded as comments and group names.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# partial unfold at step {}", self.step);
        let mut next = 1usize;
        for f in &self.faces {
            let _ = writeln!(out, "# face {} role {}", f.face, f.role.as_str());
            let _ = writeln!(out, "g face{}_{}", f.face, f.role.as_str());
            let k = f.points.len();
            let c = f.points.iter().fold(Vector::zeros(), |s, p| s + p.coords) / k as f64;
            let _ = writeln!(out, "v {:?} {:?} {:?}", c.x, c.y, c.z);
            for p in &f.points {
                let _ = writeln!(out, "v {:?} {:?} {:?}", p.x, p.y, p.z);
            }
            for i in 0..k {
                let _ = writeln!(
                    out,
                    "f {} {} {}",
                    next,
                    next + 1 + i,
                    next + 1 + (i + 1) % k
                );
            }
            next += k + 1;
        }
        out
    }
}

/// Intermediate state after folding `step` faces; `1 <= step < seq.len()`.
pub fn partial_unfold(
    p: &Polyhedron,
    seq: &PeelSequence,
    step: usize,
) -> Result<PartialUnfoldState> {
    let order = seq.order();
    check_chain(p, &order)?;
    if step == 0 || step >= order.len() {
        return Err(Error::StepOutOfRange {
            step,
            len: order.len(),
        });
    }
    let mut transforms: Vec<Option<Isometry3<f64>>> = vec![None; p.face_count()];
    let mut acc = Isometry3::identity();
    for k in (0..step).rev() {
        acc = renormalize(acc * hinge_rotation(p, order[k], order[k + 1])?);
        transforms[order[k]] = Some(acc);
    }
    let faces = (0..p.face_count())
        .map(|f| {
            let role = match order.iter().position(|&g| g == f) {
                Some(k) if k < step => FaceRole::Unfolded,
                Some(k) if k == step => FaceRole::LastSelected,
                _ => FaceRole::NotUnfolded,
            };
            let points = p
                .face(f)
                .iter()
                .map(|&v| match &transforms[f] {
                    Some(t) => t * p.vertices()[v],
                    None => p.vertices()[v],
                })
                .collect();
            PartialFace {
                face: f,
                role,
                points,
            }
        })
        .collect();
    Ok(PartialUnfoldState { step, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::peel::{peel, PeelConfig};

    fn solid(name: &str) -> Polyhedron {
        lookup(name).unwrap().polyhedron.clone()
    }

    #[test]
    fn single_face_is_congruent() {
        let p = solid("dodecahedron");
        let net = unfold_order(&p, &[3]).unwrap();
        assert_eq!(net.faces.len(), 1);
        assert!((net.area() - p.face_area(3)).abs() < 1e-12);
        assert_eq!(net.faces[0].shade, SHADE_START);
    }

    #[test]
    fn cube_net_area_and_no_overlap() {
        let p = solid("cube");
        let seq = peel(&p, 0, 1, &PeelConfig::default()).unwrap();
        let net = unfold(&p, &seq).unwrap();
        assert_eq!(net.faces.len(), 6);
        assert!((net.area() - 6.0).abs() < 1e-9);
        assert!(check_overlap(&net, 1e-9).is_empty());
        assert_eq!(net.faces[5].shade, SHADE_END);
    }

    #[test]
    fn inside_faces_the_viewer() {
        // outward normals point to -z, so face cycles (counter-clockwise from
        // outside) run clockwise in the net
        let p = solid("truncated icosahedron");
        let seq = peel(
            &p,
            0,
            p.adjacency().faces(0).next().unwrap(),
            &PeelConfig::default(),
        )
        .unwrap();
        let net = unfold(&p, &seq).unwrap();
        assert!(net.faces.iter().all(|f| polygon_area(&f.polygon) < 0.0));
    }

    #[test]
    fn identical_squares_overlap() {
        let square = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let face = |face| NetFace {
            face,
            step: face,
            vertices: vec![0, 1, 2, 3],
            polygon: square.clone(),
            hinge: None,
            shade: 0.5,
        };
        let net = Net {
            solid: None,
            faces: vec![face(0), face(1)],
        };
        assert_eq!(check_overlap(&net, 1e-9), vec![(0, 1)]);
        let mut shifted = face(2);
        shifted.polygon.iter_mut().for_each(|p| p.x += 1.0);
        let net = Net {
            solid: None,
            faces: vec![face(0), shifted],
        };
        assert!(check_overlap(&net, 1e-9).is_empty());
    }

    #[test]
    fn broken_chain_rejected() {
        let p = solid("cube");
        let far = (1..6).find(|&g| !p.adjacency().are_adjacent(0, g)).unwrap();
        assert_eq!(unfold_order(&p, &[0, far]), Err(Error::BrokenChain(0, far)));
        assert_eq!(unfold_order(&p, &[]), Err(Error::EmptySequence));
    }

    #[test]
    fn partial_roles_and_range() {
        let p = solid("cube");
        let seq = peel(&p, 0, 1, &PeelConfig::default()).unwrap();
        let state = partial_unfold(&p, &seq, 2).unwrap();
        assert_eq!(state.count(FaceRole::Unfolded), 2);
        assert_eq!(state.count(FaceRole::LastSelected), 1);
        assert_eq!(state.count(FaceRole::NotUnfolded), 3);
        assert!(partial_unfold(&p, &seq, 0).is_err());
        assert!(partial_unfold(&p, &seq, 6).is_err());
        let obj = state.to_obj();
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 24);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 30);
    }
}
