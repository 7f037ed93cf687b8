//! Periodic directions and billiard trajectories on the regular pentagon.
//!
//! Everything is computed exactly in `Q[√5]` on the golden L translation
//! surface and its sheared double-pentagon chart; floats appear only when
//! coordinates are projected for rendering or lengths are reported.
//!
//! * [`golden`] — the scalar field and 2-D vectors and matrices over it.
//! * [`tree`] — the sector maps σ₀…σ₃ and the tree of saddle-connection vectors.
//! * [`itinerary`] — from a direction back to its tree word.
//! * [`cutting`] — decorated cutting sequences and the substitutions r₀…r₃.
//! * [`symmetry`] — the six-node Schreier graph and symmetry classification.
//! * [`flow`] — an exact straight-line flow used as an independent oracle.
//! * [`render`] — billiard folding, lengths and SVG output.
//! * [`polytope`] — the σ̂ cone contractions and their tetrahedral fractal.
//! * [`report`] — the combined per-word report and the even-period scan.

mod error;
pub mod cutting;
pub mod flow;
pub mod golden;
pub mod itinerary;
pub mod polytope;
pub mod render;
pub mod report;
pub mod symmetry;
pub mod tree;

pub use error::{Error, Result};
pub use golden::{GMat2, GVec2, GoldenNum};
pub use tree::{Cylinder, TreeNode, TreeWord};
