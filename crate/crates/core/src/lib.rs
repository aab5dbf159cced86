//! Exact algorithms for transforming one bichromatic plane perfect matching
//! into another through a short sequence of compatible matchings.

pub mod cli;
pub mod error;
pub mod geom;
pub mod hamsandwich;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod pgraph;
pub mod svg;
pub mod transform;

pub use error::{Error, Result};
pub use geom::{CutLine, Point2, Rational};
pub use matching::{BRMatching, Color, PointSet, TransformationSequence};
