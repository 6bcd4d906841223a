//! The 5 Platonic, 13 Archimedean and 13 Catalan solids.
//!
//! Geometry is embedded from `data/*.json` (regenerate with
//! `tools/gen_catalog.py`). Platonic and Archimedean solids have unit edge
//! length; each Catalan solid is the polar reciprocal of its Archimedean
//! partner scaled to unit midradius.
//!
//! Solids are indexed by vertex configuration: `{3,4,3,4}` for an
//! Archimedean solid, `[3,4,3,4]` for its Catalan dual.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::read_json;
use crate::geometry::{Polyhedron, DEFAULT_TOLERANCE};
use crate::graph::{self, canonical_form, skeleton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Platonic,
    Archimedean,
    Catalan,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match normalize(s).as_str() {
            "platonic" => Some(Family::Platonic),
            "archimedean" => Some(Family::Archimedean),
            "catalan" => Some(Family::Catalan),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Platonic => "Platonic",
            Family::Archimedean => "Archimedean",
            Family::Catalan => "Catalan",
        })
    }
}

struct Entry {
    slug: &'static str,
    name: &'static str,
    family: Family,
    config: &'static [usize],
    aliases: &'static [&'static str],
    chiral: bool,
    /// Slug of the dual solid in the catalog.
    dual: &'static str,
    data: &'static str,
}

macro_rules! entry {
    ($slug:literal, $name:literal, $family:ident, [$($c:literal),*], [$($alias:literal),*], $chiral:literal, $dual:literal) => {
        Entry {
            slug: $slug,
            name: $name,
            family: Family::$family,
            config: &[$($c),*],
            aliases: &[$($alias),*],
            chiral: $chiral,
            dual: $dual,
            data: include_str!(concat!("../data/", $slug, ".json")),
        }
    };
}

const ENTRIES: &[Entry] = &[
    entry!(
        "tetrahedron",
        "Tetrahedron",
        Platonic,
        [3, 3, 3],
        [],
        false,
        "tetrahedron"
    ),
    entry!(
        "cube",
        "Cube",
        Platonic,
        [4, 4, 4],
        ["hexahedron"],
        false,
        "octahedron"
    ),
    entry!(
        "octahedron",
        "Octahedron",
        Platonic,
        [3, 3, 3, 3],
        [],
        false,
        "cube"
    ),
    entry!(
        "dodecahedron",
        "Dodecahedron",
        Platonic,
        [5, 5, 5],
        [],
        false,
        "icosahedron"
    ),
    entry!(
        "icosahedron",
        "Icosahedron",
        Platonic,
        [3, 3, 3, 3, 3],
        [],
        false,
        "dodecahedron"
    ),
    entry!(
        "cuboctahedron",
        "Cuboctahedron",
        Archimedean,
        [3, 4, 3, 4],
        [],
        false,
        "rhombic-dodecahedron"
    ),
    entry!(
        "truncated-icosidodecahedron",
        "Truncated Icosidodecahedron",
        Archimedean,
        [4, 6, 10],
        ["great rhombicosidodecahedron"],
        false,
        "disdyakis-triacontahedron"
    ),
    entry!(
        "truncated-cuboctahedron",
        "Truncated Cuboctahedron",
        Archimedean,
        [4, 6, 8],
        ["great rhombicuboctahedron"],
        false,
        "disdyakis-dodecahedron"
    ),
    entry!(
        "icosidodecahedron",
        "Icosidodecahedron",
        Archimedean,
        [3, 5, 3, 5],
        [],
        false,
        "rhombic-triacontahedron"
    ),
    entry!(
        "rhombicosidodecahedron",
        "Rhombicosidodecahedron",
        Archimedean,
        [3, 4, 5, 4],
        ["small rhombicosidodecahedron"],
        false,
        "deltoidal-hexecontahedron"
    ),
    entry!(
        "rhombicuboctahedron",
        "Rhombicuboctahedron",
        Archimedean,
        [3, 4, 4, 4],
        ["small rhombicuboctahedron"],
        false,
        "deltoidal-icositetrahedron"
    ),
    entry!(
        "snub-cube",
        "Snub Cube",
        Archimedean,
        [3, 3, 3, 3, 4],
        ["snub cuboctahedron"],
        true,
        "pentagonal-icositetrahedron"
    ),
    entry!(
        "snub-dodecahedron",
        "Snub Dodecahedron",
        Archimedean,
        [3, 3, 3, 3, 5],
        ["snub icosidodecahedron"],
        true,
        "pentagonal-hexecontahedron"
    ),
    entry!(
        "truncated-cube",
        "Truncated Cube",
        Archimedean,
        [3, 8, 8],
        [],
        false,
        "triakis-octahedron"
    ),
    entry!(
        "truncated-dodecahedron",
        "Truncated Dodecahedron",
        Archimedean,
        [3, 10, 10],
        [],
        false,
        "triakis-icosahedron"
    ),
    entry!(
        "truncated-icosahedron",
        "Truncated Icosahedron",
        Archimedean,
        [5, 6, 6],
        [],
        false,
        "pentakis-dodecahedron"
    ),
    entry!(
        "truncated-octahedron",
        "Truncated Octahedron",
        Archimedean,
        [4, 6, 6],
        [],
        false,
        "tetrakis-hexahedron"
    ),
    entry!(
        "truncated-tetrahedron",
        "Truncated Tetrahedron",
        Archimedean,
        [3, 6, 6],
        [],
        false,
        "triakis-tetrahedron"
    ),
    entry!(
        "rhombic-dodecahedron",
        "Rhombic Dodecahedron",
        Catalan,
        [3, 4, 3, 4],
        [],
        false,
        "cuboctahedron"
    ),
    entry!(
        "disdyakis-triacontahedron",
        "Disdyakis Triacontahedron",
        Catalan,
        [4, 6, 10],
        ["hexakis icosahedron"],
        false,
        "truncated-icosidodecahedron"
    ),
    entry!(
        "disdyakis-dodecahedron",
        "Disdyakis Dodecahedron",
        Catalan,
        [4, 6, 8],
        ["hexakis octahedron"],
        false,
        "truncated-cuboctahedron"
    ),
    entry!(
        "rhombic-triacontahedron",
        "Rhombic Triacontahedron",
        Catalan,
        [3, 5, 3, 5],
        [],
        false,
        "icosidodecahedron"
    ),
    entry!(
        "deltoidal-hexecontahedron",
        "Deltoidal Hexecontahedron",
        Catalan,
        [3, 4, 5, 4],
        [],
        false,
        "rhombicosidodecahedron"
    ),
    entry!(
        "deltoidal-icositetrahedron",
        "Deltoidal Icositetrahedron",
        Catalan,
        [3, 4, 4, 4],
        [],
        false,
        "rhombicuboctahedron"
    ),
    entry!(
        "pentagonal-icositetrahedron",
        "Pentagonal Icositetrahedron",
        Catalan,
        [3, 3, 3, 3, 4],
        [],
        true,
        "snub-cube"
    ),
    entry!(
        "pentagonal-hexecontahedron",
        "Pentagonal Hexecontahedron",
        Catalan,
        [3, 3, 3, 3, 5],
        [],
        true,
        "snub-dodecahedron"
    ),
    entry!(
        "triakis-octahedron",
        "Triakis Octahedron",
        Catalan,
        [3, 8, 8],
        ["small triakis octahedron"],
        false,
        "truncated-cube"
    ),
    entry!(
        "triakis-icosahedron",
        "Triakis Icosahedron",
        Catalan,
        [3, 10, 10],
        [],
        false,
        "truncated-dodecahedron"
    ),
    entry!(
        "pentakis-dodecahedron",
        "Pentakis Dodecahedron",
        Catalan,
        [5, 6, 6],
        [],
        false,
        "truncated-icosahedron"
    ),
    entry!(
        "tetrakis-hexahedron",
        "Tetrakis Hexahedron",
        Catalan,
        [4, 6, 6],
        [],
        false,
        "truncated-octahedron"
    ),
    entry!(
        "triakis-tetrahedron",
        "Triakis Tetrahedron",
        Catalan,
        [3, 6, 6],
        [],
        false,
        "truncated-tetrahedron"
    ),
];

/// One catalog solid. Chiral solids hold a fixed default enantiomorph; the
/// other one is available through [`SolidRecord::mirrored`].
#[derive(Debug, Clone)]
pub struct SolidRecord {
    pub slug: &'static str,
    pub name: &'static str,
    pub family: Family,
    pub index: String,
    pub chiral: bool,
    pub mirrored: bool,
    pub dual_slug: &'static str,
    pub polyhedron: Polyhedron,
}

impl SolidRecord {
    pub fn mirrored(&self) -> SolidRecord {
        SolidRecord {
            mirrored: !self.mirrored,
            polyhedron: self.polyhedron.mirror(),
            ..self.clone()
        }
    }

    /// The record's dual partner in the catalog (Platonic duals are Platonic).
    pub fn dual_record(&self) -> &'static SolidRecord {
        lookup(self.dual_slug).expect("catalog dual exists")
    }
}

fn index_string(family: Family, config: &[usize]) -> String {
    let inner = config
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    match family {
        Family::Catalan => format!("[{inner}]"),
        _ => format!("{{{inner}}}"),
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '-' && *c != '_')
        .flat_map(char::to_lowercase)
        .collect()
}

/// All 31 solids in catalog order: Platonic, Archimedean, Catalan.
pub fn all() -> &'static [SolidRecord] {
    static CATALOG: OnceLock<Vec<SolidRecord>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        ENTRIES
            .iter()
            .map(|e| SolidRecord {
                slug: e.slug,
                name: e.name,
                family: e.family,
                index: index_string(e.family, e.config),
                chiral: e.chiral,
                mirrored: false,
                dual_slug: e.dual,
                polyhedron: read_json(e.data)
                    .unwrap_or_else(|err| panic!("embedded solid {} is invalid: {err}", e.slug))
                    .with_name(e.name),
            })
            .collect()
    })
}

pub fn family(family: Family) -> impl Iterator<Item = &'static SolidRecord> {
    all().iter().filter(move |r| r.family == family)
}

/// Finds a solid by name, slug, alias or bracket index (`{5,6,6}`, `[5,6,6]`).
/// Case, spaces, hyphens and underscores are ignored.
pub fn lookup(query: &str) -> Result<&'static SolidRecord> {
    let q = normalize(query);
    all()
        .iter()
        .zip(ENTRIES)
        .find(|(r, e)| {
            normalize(r.slug) == q
                || normalize(r.name) == q
                || normalize(&r.index) == q
                || e.aliases.iter().any(|a| normalize(a) == q)
        })
        .map(|(r, _)| r)
        .ok_or_else(|| Error::UnknownSolid(query.to_owned()))
}

#[derive(Debug, Clone, Serialize)]
pub struct SolidCheck {
    pub name: String,
    pub index: String,
    pub family: Family,
    pub failures: Vec<String>,
}

impl SolidCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub solids: Vec<SolidCheck>,
}

impl CatalogReport {
    pub fn passed(&self) -> usize {
        self.solids.iter().filter(|s| s.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.solids.len()
    }
}

/// Relative tolerance for face regularity of Archimedean and Platonic entries.
const REGULARITY_TOLERANCE: f64 = 1e-6;

/// Checks every catalog solid: Euler relation, regular faces and a uniform
/// vertex configuration for Platonic/Archimedean entries, and combinatorial
/// duality between each pair of partners.
pub fn verify_catalog() -> CatalogReport {
    let solids = all()
        .iter()
        .zip(ENTRIES)
        .map(|(r, e)| {
            let p = &r.polyhedron;
            let mut failures = Vec::new();
            let euler = p.vertex_count() as i64 - p.edge_count() as i64 + p.face_count() as i64;
            if euler != 2 {
                failures.push(format!("Euler characteristic {euler}"));
            }
            if !p.is_convex_position(DEFAULT_TOLERANCE) {
                failures.push("not in convex position".into());
            }
            if r.family != Family::Catalan {
                check_uniform(p, e.config, &mut failures);
            } else {
                check_face_configuration(p, e.config, &mut failures);
            }
            let partner = &r.dual_record().polyhedron;
            if canonical_form(&skeleton(p)) != canonical_form(&skeleton(&graph::dual(partner))) {
                failures.push(format!("not combinatorially dual to {}", e.dual));
            }
            SolidCheck {
                name: r.name.to_owned(),
                index: r.index.clone(),
                family: r.family,
                failures,
            }
        })
        .collect();
    CatalogReport { solids }
}

fn check_uniform(p: &Polyhedron, config: &[usize], failures: &mut Vec<String>) {
    for f in 0..p.face_count() {
        let lengths = p.face_edge_lengths(f);
        let m = lengths.iter().sum::<f64>() / lengths.len() as f64;
        if lengths
            .iter()
            .any(|l| (l - m).abs() > REGULARITY_TOLERANCE * m)
        {
            failures.push(format!("face {f} has unequal edges"));
            return;
        }
        // regular polygons are also equiangular: all vertices on a circle
        let c = p.centroid(f);
        let radii: Vec<f64> = p.face_points(f).iter().map(|v| (v - c).norm()).collect();
        if radii
            .iter()
            .any(|r| (r - radii[0]).abs() > REGULARITY_TOLERANCE * m)
        {
            failures.push(format!("face {f} is not regular"));
            return;
        }
    }
    let expected = canonical_cycle(config);
    for v in 0..p.vertex_count() {
        if vertex_configuration(p, v) != expected {
            failures.push(format!("vertex {v} configuration differs from {config:?}"));
            return;
        }
    }
}

/// Catalan faces: the degrees of a face's vertices, in cycle order, match the
/// index up to rotation and reflection.
fn check_face_configuration(p: &Polyhedron, config: &[usize], failures: &mut Vec<String>) {
    let mut degree = vec![0usize; p.vertex_count()];
    for e in p.edges() {
        degree[e.a] += 1;
        degree[e.b] += 1;
    }
    let expected = canonical_cycle(config);
    for f in 0..p.face_count() {
        let degrees: Vec<usize> = p.face(f).iter().map(|&v| degree[v]).collect();
        if canonical_cycle(&degrees) != expected {
            failures.push(format!(
                "face {f} vertex degrees {degrees:?} differ from {config:?}"
            ));
            return;
        }
    }
}

/// Gon counts of the faces around vertex `v`, in cyclic order.
pub fn vertex_configuration(p: &Polyhedron, v: usize) -> Vec<usize> {
    let ring = graph::faces_around_vertex(p, v);
    canonical_cycle(&ring.iter().map(|&f| p.gon(f)).collect::<Vec<_>>())
}

/// Lexicographically smallest rotation of the sequence or of its reverse.
fn canonical_cycle(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut best: Option<Vec<usize>> = None;
    let mut rev = seq.to_vec();
    rev.reverse();
    for s in [seq.to_vec(), rev] {
        for k in 0..n {
            let cand: Vec<usize> = (0..n).map(|i| s[(i + k) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}
