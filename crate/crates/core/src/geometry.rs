//! Polyhedron data model: vertex coordinates, oriented face cycles and the
//! combinatorics derived from them (edges, face adjacency, face centroids).
//!
//! A [`Polyhedron`] is immutable once built. Construction centers the solid on
//! the mean of its vertices and re-orients every face cycle so that it runs
//! counter-clockwise when seen from outside.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::{Isometry3, Point3, Rotation3, Translation3, UnitQuaternion, Vector3};

use crate::error::{Error, Result};

pub type Point = Point3<f64>;
pub type Vector = Vector3<f64>;

/// Absolute tolerance used by geometric predicates unless configured otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// An undirected edge `a < b` and the two faces that share it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub faces: [usize; 2],
}

/// A neighboring face, tagged with the index of the shared edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub face: usize,
    pub edge: usize,
}

/// For each face, its neighbors in cycle order: entry `i` lies across the edge
/// `(f[i], f[i + 1])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceAdjacency {
    neighbors: Vec<Vec<Neighbor>>,
}

impl FaceAdjacency {
    pub fn neighbors(&self, face: usize) -> &[Neighbor] {
        &self.neighbors[face]
    }

    pub fn faces(&self, face: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[face].iter().map(|n| n.face)
    }

    /// Position of the edge shared with `other` inside `face`'s cycle.
    pub fn position(&self, face: usize, other: usize) -> Option<usize> {
        self.neighbors[face].iter().position(|n| n.face == other)
    }

    pub fn are_adjacent(&self, face: usize, other: usize) -> bool {
        self.position(face, other).is_some()
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    name: Option<String>,
    vertices: Vec<Point>,
    faces: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    adjacency: FaceAdjacency,
    centroids: Vec<Point>,
}

impl Polyhedron {
    /// Validates raw vertex and face arrays and derives the combinatorial
    /// structure. The result is translated so that the vertex mean sits at the
    /// origin.
    pub fn build(vertices: Vec<Point>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let count = vertices.len();
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::DegenerateFace {
                    face: f,
                    reason: "fewer than three vertices",
                });
            }
            for &index in face {
                if index >= count {
                    return Err(Error::VertexOutOfRange {
                        face: f,
                        index,
                        count,
                    });
                }
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != face.len() {
                return Err(Error::DegenerateFace {
                    face: f,
                    reason: "repeated vertex",
                });
            }
        }

        let vertices = center(vertices);
        let mut faces = faces;
        for (f, face) in faces.iter_mut().enumerate() {
            let normal = newell_normal(&vertices, face);
            if normal.norm() <= f64::EPSILON {
                return Err(Error::DegenerateFace {
                    face: f,
                    reason: "zero area",
                });
            }
            let centroid = mean(face.iter().map(|&v| &vertices[v]));
            if normal.dot(&centroid.coords) < 0.0 {
                reverse_cycle(face);
            }
        }

        let (edges, adjacency) = derive_topology(&faces)?;
        let euler = vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::Euler(euler));
        }
        if !is_connected(&adjacency) {
            return Err(Error::Disconnected);
        }

        let centroids = face_centroids(&vertices, &faces);
        let p = Polyhedron {
            name: None,
            vertices,
            faces,
            edges,
            adjacency,
            centroids,
        };
        if !p.is_convex_position(DEFAULT_TOLERANCE) {
            log::warn!("vertex set is not in convex position");
        }
        Ok(p)
    }

    pub fn from_arrays(vertices: &[[f64; 3]], faces: Vec<Vec<usize>>) -> Result<Self> {
        let vertices = vertices
            .iter()
            .map(|v| Point::new(v[0], v[1], v[2]))
            .collect();
        Self::build(vertices, faces)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn adjacency(&self) -> &FaceAdjacency {
        &self.adjacency
    }

    pub fn centroids(&self) -> &[Point] {
        &self.centroids
    }

    pub fn centroid(&self, f: usize) -> Point {
        self.centroids[f]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Number of sides of face `f`.
    pub fn gon(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Mean of all vertices. Zero for any freshly built solid.
    pub fn solid_centroid(&self) -> Point {
        mean(self.vertices.iter())
    }

    /// Unit outward normal of face `f`.
    pub fn face_normal(&self, f: usize) -> Vector {
        newell_normal(&self.vertices, &self.faces[f]).normalize()
    }

    pub fn face_area(&self, f: usize) -> f64 {
        0.5 * newell_normal(&self.vertices, &self.faces[f]).norm()
    }

    pub fn face_points(&self, f: usize) -> Vec<Point> {
        self.faces[f].iter().map(|&v| self.vertices[v]).collect()
    }

    /// Edge lengths of face `f` in cycle order.
    pub fn face_edge_lengths(&self, f: usize) -> Vec<f64> {
        cycle_pairs(&self.faces[f])
            .map(|(a, b)| (self.vertices[a] - self.vertices[b]).norm())
            .collect()
    }

    /// The edge shared by `f` and `g`, as the vertex pair in `f`'s orientation.
    pub fn shared_edge(&self, f: usize, g: usize) -> Option<(usize, usize)> {
        let i = self.adjacency.position(f, g)?;
        let face = &self.faces[f];
        Some((face[i], face[(i + 1) % face.len()]))
    }

    /// True when every vertex lies on or behind every face plane.
    pub fn is_convex_position(&self, tolerance: f64) -> bool {
        let scale = self
            .vertices
            .iter()
            .map(|v| v.coords.norm())
            .fold(1.0, f64::max);
        (0..self.faces.len()).all(|f| {
            let n = self.face_normal(f);
            let d = n.dot(&self.centroids[f].coords);
            self.vertices
                .iter()
                .all(|v| n.dot(&v.coords) - d <= tolerance * scale)
        })
    }

    /// Applies a rigid motion to every vertex. Topology is unchanged.
    pub fn transformed(&self, iso: &Isometry3<f64>) -> Polyhedron {
        let vertices: Vec<Point> = self.vertices.iter().map(|v| iso * v).collect();
        let centroids = face_centroids(&vertices, &self.faces);
        Polyhedron {
            vertices,
            centroids,
            ..self.clone()
        }
    }

    /// Reflection through the x–z plane. Face cycles are reversed so they stay
    /// counter-clockwise from outside; face and vertex indices are unchanged.
    pub fn mirror(&self) -> Polyhedron {
        let vertices: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| Point::new(v.x, -v.y, v.z))
            .collect();
        let mut faces = self.faces.clone();
        faces.iter_mut().for_each(|f| reverse_cycle(f));
        let (edges, adjacency) =
            derive_topology(&faces).expect("reflection preserves a manifold topology");
        let centroids = face_centroids(&vertices, &faces);
        Polyhedron {
            name: self.name.clone(),
            vertices,
            faces,
            edges,
            adjacency,
            centroids,
        }
    }

    /// Re-centers the solid and rotates it so that the centroid of `face`
    /// lies on the positive z axis.
    pub fn rotate_to_top(&self, face: usize) -> Result<Polyhedron> {
        if face >= self.faces.len() {
            return Err(Error::FaceOutOfRange {
                face,
                count: self.faces.len(),
            });
        }
        let shift = Translation3::from(-self.solid_centroid().coords);
        let c = self.centroids[face].coords + shift.vector;
        if c.norm() <= DEFAULT_TOLERANCE {
            return Err(Error::DegenerateAxis(face));
        }
        let rotation = top_rotation(&c);
        let iso = Isometry3::from_parts(Translation3::identity(), rotation) * shift;
        Ok(self.transformed(&iso))
    }
}

/// Rotation taking direction `c` onto +z. Antipodal input turns by π about x.
pub fn top_rotation(c: &Vector) -> UnitQuaternion<f64> {
    let z = Vector::z();
    match Rotation3::rotation_between(c, &z) {
        Some(r) => UnitQuaternion::from_rotation_matrix(&r),
        None => UnitQuaternion::from_axis_angle(&Vector::x_axis(), std::f64::consts::PI),
    }
}

pub(crate) fn cycle_pairs(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    face.iter()
        .zip(face.iter().cycle().skip(1))
        .map(|(&a, &b)| (a, b))
}

fn reverse_cycle(face: &mut [usize]) {
    face[1..].reverse();
}

fn mean<'a>(points: impl Iterator<Item = &'a Point>) -> Point {
    let mut sum = Vector::zeros();
    let mut n = 0usize;
    for p in points {
        sum += p.coords;
        n += 1;
    }
    Point::from(sum / n.max(1) as f64)
}

fn center(vertices: Vec<Point>) -> Vec<Point> {
    let c = mean(vertices.iter()).coords;
    vertices.into_iter().map(|v| v - c).collect()
}

fn face_centroids(vertices: &[Point], faces: &[Vec<usize>]) -> Vec<Point> {
    faces
        .iter()
        .map(|f| mean(f.iter().map(|&v| &vertices[v])))
        .collect()
}

fn newell_normal(vertices: &[Point], face: &[usize]) -> Vector {
    cycle_pairs(face).fold(Vector::zeros(), |n, (a, b)| {
        let (p, q) = (&vertices[a], &vertices[b]);
        n + Vector::new(
            (p.y - q.y) * (p.z + q.z),
            (p.z - q.z) * (p.x + q.x),
            (p.x - q.x) * (p.y + q.y),
        )
    })
}

/// Face, position in the face, and whether the face runs the edge from its
/// smaller vertex to its larger one.
type EdgeUse = (usize, usize, bool);

fn derive_topology(faces: &[Vec<usize>]) -> Result<(Vec<Edge>, FaceAdjacency)> {
    let mut uses: BTreeMap<(usize, usize), Vec<EdgeUse>> = BTreeMap::new();
    for (f, face) in faces.iter().enumerate() {
        for (i, (a, b)) in cycle_pairs(face).enumerate() {
            uses.entry((a.min(b), a.max(b)))
                .or_default()
                .push((f, i, a < b));
        }
    }

    let mut edges = Vec::with_capacity(uses.len());
    let mut neighbors: Vec<Vec<Neighbor>> = faces
        .iter()
        .map(|f| {
            vec![
                Neighbor {
                    face: usize::MAX,
                    edge: usize::MAX
                };
                f.len()
            ]
        })
        .collect();
    for (&(a, b), list) in &uses {
        if list.len() != 2 {
            return Err(Error::NonManifoldEdge {
                a,
                b,
                count: list.len(),
            });
        }
        let (f, i, fwd_f) = list[0];
        let (g, j, fwd_g) = list[1];
        if fwd_f == fwd_g {
            return Err(Error::InconsistentOrientation { a, b, f, g });
        }
        let e = edges.len();
        edges.push(Edge {
            a,
            b,
            faces: [f, g],
        });
        neighbors[f][i] = Neighbor { face: g, edge: e };
        neighbors[g][j] = Neighbor { face: f, edge: e };
    }
    Ok((edges, FaceAdjacency { neighbors }))
}

fn is_connected(adjacency: &FaceAdjacency) -> bool {
    if adjacency.is_empty() {
        return false;
    }
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for g in adjacency.faces(f) {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> Polyhedron {
        Polyhedron::from_arrays(
            &[
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ],
            vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
        )
        .unwrap()
    }

    fn cube_arrays() -> (Vec<[f64; 3]>, Vec<Vec<usize>>) {
        let v = vec![
            [-1.0, -1.0, -1.0],
            [1.0, -1.0, -1.0],
            [1.0, 1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
            [1.0, -1.0, 1.0],
            [1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0],
        ];
        let f = vec![
            vec![4, 5, 6, 7],
            vec![0, 3, 2, 1],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ];
        (v, f)
    }

    #[test]
    fn tetrahedron_counts() {
        let t = tetrahedron();
        assert_eq!(t.edge_count(), 6);
        assert_eq!(t.vertex_count() + t.face_count(), t.edge_count() + 2);
        for f in 0..4 {
            assert_eq!(t.adjacency().neighbors(f).len(), 3);
        }
    }

    #[test]
    fn open_cube_is_rejected() {
        let (v, mut f) = cube_arrays();
        f.pop();
        let err = Polyhedron::from_arrays(&v, f).unwrap_err();
        assert!(
            matches!(err, Error::NonManifoldEdge { count: 1, .. }),
            "{err}"
        );
    }

    #[test]
    fn out_of_range_and_degenerate_faces() {
        let (v, mut f) = cube_arrays();
        f[0][2] = 99;
        assert!(matches!(
            Polyhedron::from_arrays(&v, f).unwrap_err(),
            Error::VertexOutOfRange { index: 99, .. }
        ));
        let (v, mut f) = cube_arrays();
        f[0] = vec![4, 5];
        assert!(matches!(
            Polyhedron::from_arrays(&v, f).unwrap_err(),
            Error::DegenerateFace { face: 0, .. }
        ));
        let (v, mut f) = cube_arrays();
        f[0] = vec![4, 5, 5, 7];
        assert!(matches!(
            Polyhedron::from_arrays(&v, f).unwrap_err(),
            Error::DegenerateFace { face: 0, .. }
        ));
    }

    #[test]
    fn faces_are_reoriented_outward() {
        let (v, mut f) = cube_arrays();
        f.iter_mut().for_each(|face| face.reverse());
        let cube = Polyhedron::from_arrays(&v, f).unwrap();
        for face in 0..6 {
            let n = cube.face_normal(face);
            assert!(n.dot(&cube.centroid(face).coords) > 0.0);
        }
    }

    #[test]
    fn build_centers_the_solid() {
        let (v, f) = cube_arrays();
        let shifted: Vec<[f64; 3]> = v
            .iter()
            .map(|p| [p[0] + 3.0, p[1] - 2.0, p[2] + 0.5])
            .collect();
        let cube = Polyhedron::from_arrays(&shifted, f).unwrap();
        assert!(cube.solid_centroid().coords.norm() < 1e-12);
    }

    #[test]
    fn adjacency_is_symmetric_and_tagged() {
        let (v, f) = cube_arrays();
        let cube = Polyhedron::from_arrays(&v, f).unwrap();
        for f in 0..cube.face_count() {
            for n in cube.adjacency().neighbors(f) {
                assert!(cube.adjacency().are_adjacent(n.face, f));
                let e = cube.edges()[n.edge];
                assert!(e.faces.contains(&f) && e.faces.contains(&n.face));
            }
        }
    }

    #[test]
    fn rotate_to_top_cases() {
        let (v, f) = cube_arrays();
        let cube = Polyhedron::from_arrays(&v, f).unwrap();
        let same = cube.rotate_to_top(0).unwrap();
        for (a, b) in cube.vertices().iter().zip(same.vertices()) {
            assert!((a - b).norm() < 1e-12);
        }
        let flipped = cube.rotate_to_top(1).unwrap();
        let c = flipped.centroid(1);
        assert!(c.x.abs() < 1e-12 && c.y.abs() < 1e-12 && c.z > 0.0);
    }

    #[test]
    fn mirror_is_an_involution() {
        let t = tetrahedron();
        let back = t.mirror().mirror();
        assert_eq!(t.faces(), back.faces());
        for (a, b) in t.vertices().iter().zip(back.vertices()) {
            assert!((a - b).norm() < 1e-12);
        }
        let m = t.mirror();
        for f in 0..m.face_count() {
            assert!(m.face_normal(f).dot(&m.centroid(f).coords) > 0.0);
        }
    }
}
