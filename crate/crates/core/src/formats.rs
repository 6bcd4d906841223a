//! Polyhedron file formats.
//!
//! OFF (ASCII):
//!
//! ```text
//! OFF
//! <vertex count> <face count> <edge count>
//! x y z                 (one line per vertex)
//! k i_1 i_2 ... i_k     (one line per face)
//! ```
//!
//! `#` starts a comment, blank lines are skipped, and the `OFF` keyword may
//! share its line with the counts. Tokens after the `k` indices of a face line
//! (colors) are ignored. The edge count is read but not checked.
//!
//! JSON: `{"vertices": [[x, y, z], ...], "faces": [[i, ...], ...], "name": "..."}`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polyhedron};

/// Serialized form of a polyhedron; field names are part of the file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolyhedronJson {
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        PolyhedronJson {
            vertices: p.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(),
            faces: p.faces().to_vec(),
            name: p.name().map(str::to_owned),
        }
    }

    pub fn build(self) -> Result<Polyhedron> {
        let p = Polyhedron::from_arrays(&self.vertices, self.faces)?;
        Ok(match self.name {
            Some(n) => p.with_name(n),
            None => p,
        })
    }
}

pub fn read_json(text: &str) -> Result<Polyhedron> {
    serde_json::from_str::<PolyhedronJson>(text)
        .map_err(|e| Error::Json(e.to_string()))?
        .build()
}

pub fn write_json(p: &Polyhedron) -> String {
    serde_json::to_string(&PolyhedronJson::from_polyhedron(p)).expect("polyhedron serializes")
}

/// Parses OFF text into a validated polyhedron.
pub fn read_off(text: &str) -> Result<Polyhedron> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (mut line_no, mut line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input".into()))?;
    if let Some(rest) = line.strip_prefix("OFF") {
        if rest.trim().is_empty() {
            (line_no, line) = lines
                .next()
                .ok_or_else(|| parse_err(line_no, "missing counts line".into()))?;
        } else {
            line = rest.trim();
        }
    }
    let counts: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| parse_err(line_no, format!("bad counts line: {e}")))?;
    if counts.len() < 2 {
        return Err(parse_err(
            line_no,
            "counts line needs vertex and face counts".into(),
        ));
    }
    let (nv, nf) = (counts[0], counts[1]);

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (no, l) = lines.next().ok_or_else(|| {
            parse_err(
                line_no + 1,
                format!("expected {nv} vertices, found {}", vertices.len()),
            )
        })?;
        line_no = no;
        let xyz: Vec<f64> = l
            .split_whitespace()
            .take(3)
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(no, format!("bad vertex: {e}")))?;
        if xyz.len() != 3 {
            return Err(parse_err(no, "vertex needs three coordinates".into()));
        }
        vertices.push(Point::new(xyz[0], xyz[1], xyz[2]));
    }

    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (no, l) = lines.next().ok_or_else(|| {
            parse_err(
                line_no + 1,
                format!("expected {nf} faces, found {}", faces.len()),
            )
        })?;
        line_no = no;
        let mut tokens = l.split_whitespace();
        let k: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(no, "face line must start with a vertex count".into()))?;
        let face: Vec<usize> = tokens
            .take(k)
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(no, format!("bad face index: {e}")))?;
        if face.len() != k {
            return Err(parse_err(
                no,
                format!("face declares {k} vertices but lists {}", face.len()),
            ));
        }
        faces.push(face);
    }

    if let Some((no, _)) = lines.next() {
        return Err(parse_err(
            no,
            format!("unexpected content after {nv} vertices and {nf} faces"),
        ));
    }
    Polyhedron::build(vertices, faces)
}

pub fn write_off(p: &Polyhedron) -> String {
    let mut out = String::new();
    if let Some(name) = p.name() {
        let _ = writeln!(out, "# {name}");
    }
    let _ = writeln!(out, "OFF");
    let _ = writeln!(
        out,
        "{} {} {}",
        p.vertex_count(),
        p.face_count(),
        p.edge_count()
    );
    for v in p.vertices() {
        let _ = writeln!(out, "{:?} {:?} {:?}", v.x, v.y, v.z);
    }
    for f in p.faces() {
        let _ = write!(out, "{}", f.len());
        for i in f {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = "OFF\n# regular tetrahedron\n4 4 6\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";

    #[test]
    fn minimal_tetrahedron() {
        let t = read_off(TETRA).unwrap();
        assert_eq!(t.face_count(), 4);
        assert_eq!(t.edge_count(), 6);
    }

    #[test]
    fn counts_mismatch_names_the_line() {
        // declares 5 faces, body has 4
        let text = TETRA.replace("4 4 6", "4 5 6");
        match read_off(&text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 12);
                assert!(message.contains("expected 5 faces"), "{message}");
            }
            e => panic!("unexpected {e}"),
        }
        // declares 3 faces, body has 4: the extra face line is reported
        let text = TETRA.replace("4 4 6", "4 3 6");
        match read_off(&text).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 11),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn short_face_line() {
        let text = TETRA.replace("3 1 3 2", "3 1 3");
        assert!(matches!(
            read_off(&text).unwrap_err(),
            Error::Parse { line: 11, .. }
        ));
    }

    #[test]
    fn header_on_counts_line_and_colors() {
        let text = "OFF 4 4 6\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2 255 0 0\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
        assert_eq!(read_off(text).unwrap().face_count(), 4);
    }

    #[test]
    fn json_field_names() {
        let t = read_off(TETRA).unwrap().with_name("tetra");
        let text = write_json(&t);
        assert!(text.starts_with("{\"vertices\":[["));
        assert!(text.contains("\"faces\":[[") && text.contains("\"name\":\"tetra\""));
        let back = read_json(&text).unwrap();
        assert_eq!(back.faces(), t.faces());
        assert_eq!(back.name(), Some("tetra"));
    }

    #[test]
    fn bad_json() {
        assert!(matches!(
            read_json("{\"vertices\": 3}"),
            Err(Error::Json(_))
        ));
    }
}
