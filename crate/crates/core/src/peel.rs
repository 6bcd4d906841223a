//! Greedy spiral face selection around an axis through a start face.
//!
//! The solid is centered and rotated so that the centroid of the start face
//! `f1` lies on +z. Starting from `f1, f2`, each step looks at the unselected
//! neighbors of the current face `F_k`:
//!
//! 1. a single unselected neighbor is taken directly;
//! 2. otherwise the neighbors whose centroids lie strictly on the left of the
//!    plane spanned by the axis and the centroid of `F_k` are candidates, and
//!    the highest one (largest z) is taken;
//! 3. if no neighbor is on the left, the lowest unselected neighbor is taken.
//!
//! The run stops when the current face has no unselected neighbor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polyhedron, Vector, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    #[default]
    Right,
    Left,
}

impl Handedness {
    fn sign(self) -> f64 {
        match self {
            Handedness::Right => 1.0,
            Handedness::Left => -1.0,
        }
    }

    pub fn parse(s: &str) -> Option<Handedness> {
        match s.to_ascii_lowercase().as_str() {
            "right" | "r" => Some(Handedness::Right),
            "left" | "l" => Some(Handedness::Left),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Handedness::Right => "right",
            Handedness::Left => "left",
        }
    }
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeelConfig {
    pub handedness: Handedness,
    /// Absolute tolerance for centroid z comparisons and for the side test
    /// (which acts on unit directions).
    pub tolerance: f64,
    /// Safety bound on the sequence length; `None` means the face count.
    pub max_steps: Option<usize>,
    /// Count candidates lying on the side plane (within tolerance) as left.
    /// Off by default; exists to study solids whose neighbors sit exactly on
    /// the plane.
    pub on_plane_is_left: bool,
}

impl Default for PeelConfig {
    fn default() -> Self {
        PeelConfig {
            handedness: Handedness::Right,
            tolerance: DEFAULT_TOLERANCE,
            max_steps: None,
            on_plane_is_left: false,
        }
    }
}

impl PeelConfig {
    pub fn with_handedness(handedness: Handedness) -> Self {
        PeelConfig {
            handedness,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_finite() && self.tolerance > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidTolerance(self.tolerance))
        }
    }
}

/// Plane through the peeling axis (direction of `c1`) and the centroid `ck`
/// of the current face. Its normal is `ck × c1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePlane {
    pub c1: Vector,
    pub ck: Vector,
    pub normal: Vector,
}

impl SidePlane {
    /// Builds the plane from unit directions of the two centroids. Fails when
    /// they are parallel (the current face is on the axis).
    pub fn new(c1: &Point, ck: &Point, tolerance: f64) -> Result<SidePlane> {
        let c1 = c1.coords.normalize();
        let ck = ck.coords.normalize();
        let normal = ck.cross(&c1);
        if normal.norm() <= tolerance {
            return Err(Error::DegeneratePlane);
        }
        Ok(SidePlane {
            c1,
            ck,
            normal: normal.normalize(),
        })
    }

    /// Signed distance of the direction of `p` from the plane; positive on the
    /// right-handed left side.
    pub fn side(&self, p: &Point) -> f64 {
        self.normal.dot(&p.coords.normalize())
    }
}

/// `(c_k × c_1) · OP > tolerance`. Points on the plane are not left.
pub fn is_left(plane: &SidePlane, p: &Point, tolerance: f64) -> bool {
    plane.side(p) > tolerance
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Complete,
    Terminated,
    Isolated,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Complete => "complete",
            Outcome::Terminated => "terminated",
            Outcome::Isolated => "isolated",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which rule selected a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepRule {
    Start,
    Given,
    OnlyNeighbor,
    HighestLeft,
    LowestRemaining,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub face: usize,
    pub rule: StepRule,
    /// Another candidate had the same z within tolerance; the smaller face
    /// index won.
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelSequence {
    pub solid: Option<String>,
    pub handedness: Handedness,
    pub face_count: usize,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    pub remaining: Vec<usize>,
}

impl PeelSequence {
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.face).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn f1(&self) -> usize {
        self.steps[0].face
    }

    pub fn f2(&self) -> usize {
        self.steps[1].face
    }

    pub fn is_complete(&self) -> bool {
        self.outcome == Outcome::Complete
    }

    pub fn has_ties(&self) -> bool {
        self.steps.iter().any(|s| s.tie)
    }

    pub fn report(&self) -> PeelReport {
        PeelReport {
            solid: self.solid.clone().unwrap_or_default(),
            f1: self.f1(),
            f2: self.f2(),
            handedness: self.handedness,
            order: self.order(),
            outcome: self.outcome,
            remaining: self.remaining.clone(),
        }
    }
}

/// Serialized form of a peel run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelReport {
    pub solid: String,
    pub f1: usize,
    pub f2: usize,
    pub handedness: Handedness,
    pub order: Vec<usize>,
    pub outcome: Outcome,
    pub remaining: Vec<usize>,
}

impl PeelReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Runs the peel from the ordered start pair `(f1, f2)`.
pub fn peel(p: &Polyhedron, f1: usize, f2: usize, cfg: &PeelConfig) -> Result<PeelSequence> {
    cfg.validate()?;
    let n = p.face_count();
    for f in [f1, f2] {
        if f >= n {
            return Err(Error::FaceOutOfRange { face: f, count: n });
        }
    }
    if !p.adjacency().are_adjacent(f1, f2) {
        return Err(Error::NotAdjacent { f1, f2 });
    }
    let oriented = p.rotate_to_top(f1)?;
    Ok(peel_oriented(&oriented, f1, f2, cfg))
}

/// Peel on a solid already centered with `f1` on +z.
fn peel_oriented(p: &Polyhedron, f1: usize, f2: usize, cfg: &PeelConfig) -> PeelSequence {
    let n = p.face_count();
    let tol = cfg.tolerance;
    let sign = cfg.handedness.sign();
    let c = p.centroids();
    let z: Vec<f64> = c.iter().map(|v| v.z).collect();
    let limit = cfg.max_steps.unwrap_or(n).min(n);

    let mut selected = vec![false; n];
    selected[f1] = true;
    selected[f2] = true;
    let mut steps = vec![
        Step {
            face: f1,
            rule: StepRule::Start,
            tie: false,
        },
        Step {
            face: f2,
            rule: StepRule::Given,
            tie: false,
        },
    ];
    let mut current = f2;

    while steps.len() < limit {
        let candidates: Vec<usize> = p
            .adjacency()
            .faces(current)
            .filter(|&g| !selected[g])
            .collect();
        let step = match candidates.as_slice() {
            [] => break,
            [only] => Step {
                face: *only,
                rule: StepRule::OnlyNeighbor,
                tie: false,
            },
            _ => {
                let left: Vec<usize> = match SidePlane::new(&c[f1], &c[current], tol) {
                    Ok(plane) => candidates
                        .iter()
                        .copied()
                        .filter(|&g| {
                            let s = sign * plane.side(&c[g]);
                            s > tol || (cfg.on_plane_is_left && s.abs() <= tol)
                        })
                        .collect(),
                    Err(_) => Vec::new(),
                };
                if left.is_empty() {
                    let (face, tie) = extreme(&candidates, |g| -z[g], tol);
                    Step {
                        face,
                        rule: StepRule::LowestRemaining,
                        tie,
                    }
                } else {
                    let (face, tie) = extreme(&left, |g| z[g], tol);
                    Step {
                        face,
                        rule: StepRule::HighestLeft,
                        tie,
                    }
                }
            }
        };
        if step.tie {
            log::debug!(
                "z tie after face {current}: picked face {} by index",
                step.face
            );
        }
        selected[step.face] = true;
        current = step.face;
        steps.push(step);
    }

    let remaining: Vec<usize> = (0..n).filter(|&f| !selected[f]).collect();
    let outcome = if remaining.is_empty() {
        Outcome::Complete
    } else if remaining
        .iter()
        .any(|&f| p.adjacency().faces(f).all(|g| selected[g]))
    {
        Outcome::Isolated
    } else {
        Outcome::Terminated
    };
    PeelSequence {
        solid: p.name().map(str::to_owned),
        handedness: cfg.handedness,
        face_count: n,
        steps,
        outcome,
        remaining,
    }
}

/// Face maximizing `key`; values within `tol` of the maximum tie and the
/// smallest index wins. Returns whether a tie occurred.
fn extreme(faces: &[usize], key: impl Fn(usize) -> f64, tol: f64) -> (usize, bool) {
    let best = faces
        .iter()
        .map(|&g| key(g))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut near = faces.iter().copied().filter(|&g| key(g) >= best - tol);
    let first = near.next().expect("nonempty candidate set");
    let mut winner = first;
    let mut tie = false;
    for g in near {
        tie = true;
        winner = winner.min(g);
    }
    (winner, tie)
}

/// All ordered adjacent start pairs `(f1, f2)`, sorted.
pub fn start_pairs(p: &Polyhedron) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..p.face_count())
        .flat_map(|f| p.adjacency().faces(f).map(move |g| (f, g)))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// One run per ordered adjacent pair, in [`start_pairs`] order.
pub fn peel_all_pairs(p: &Polyhedron, cfg: &PeelConfig) -> Result<Vec<PeelSequence>> {
    cfg.validate()?;
    let pairs = start_pairs(p);
    // one oriented copy per start face
    let oriented: Vec<Polyhedron> = (0..p.face_count())
        .map(|f| p.rotate_to_top(f))
        .collect::<Result<_>>()?;
    let run = |&(f1, f2): &(usize, usize)| peel_oriented(&oriented[f1], f1, f2, cfg);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(pairs.par_iter().map(run).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(pairs.iter().map(run).collect())
    }
}
