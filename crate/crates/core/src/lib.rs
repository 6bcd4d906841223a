//! Apple-peel unfolding of convex polyhedra.
//!
//! A peel picks faces one at a time in a spiral around the axis through the
//! start face, always preferring the highest neighbor on the left of the
//! current face. This crate runs that procedure on any convex polyhedron,
//! classifies the Platonic, Archimedean and Catalan solids by how many start
//! pairs peel completely, flattens peels into planar nets, draws Tutte
//! embeddings of the skeleton with the peel trace, and checks the relation
//! between complete peels and Hamiltonian paths of the face graph.
//!
//! ```
//! use peelkit::{catalog, peel::{peel, PeelConfig}};
//!
//! let cube = &catalog::lookup("cube").unwrap().polyhedron;
//! let run = peel(cube, 0, 1, &PeelConfig::default()).unwrap();
//! assert!(run.is_complete());
//! assert_eq!(run.len(), 6);
//! ```

pub mod catalog;
pub mod classify;
pub mod error;
pub mod formats;
pub mod geometry;
pub mod graph;
pub mod peel;
pub mod planar;
pub mod svg;
pub mod unfold;

pub use error::{Error, Result};
pub use geometry::{Point, Polyhedron, Vector, DEFAULT_TOLERANCE};
pub use peel::{peel, peel_all_pairs, Handedness, Outcome, PeelConfig, PeelSequence};
