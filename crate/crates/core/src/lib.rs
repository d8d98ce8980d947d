//! Tree reconstruction from order information on triples.
//!
//! * [`structure`]: midpoints and triples structures, conversions, combining.
//! * [`tree`] and [`realization`]: splits, tree metrics, interval sums and
//!   the realization checker.
//! * [`reduction`], [`realize`], [`extract`]: the encoding of 3-SAT as a
//!   midpoints structure, the explicit realization for a satisfying
//!   assignment, and the extraction of an assignment from a realization.
//! * [`oracle`]: exhaustive ground truth for small instances.
//! * [`io`]: the text file formats.
//!
//! Lengths are generic over [`Scalar`]; [`Rational`] is the exact default and
//! the only choice whose verdicts are certified.

pub mod bitset;
pub mod error;
pub mod extract;
pub mod ground;
pub mod io;
pub mod oracle;
pub mod realization;
pub mod realize;
pub mod reduction;
pub mod sat;
pub mod scalar;
pub mod structure;
pub mod tree;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use ground::{ElementId, GroundSet};
pub use realization::{check_realization, RealizationReport};
pub use sat::{Assignment, SatCase};
pub use scalar::{Rational, Scalar};
pub use structure::{CombineMap, MidpointsStructure, TriplesStructure};
pub use tree::{EdgeInterval, Split, TreeMetric};

/// Tree metric with exact rational lengths.
pub type ExactTree = TreeMetric<Rational>;
/// Tree metric with floating-point lengths (exploratory use only).
pub type FloatTree = TreeMetric<f64>;
/// Realization report with exact slacks.
pub type ExactReport = RealizationReport<Rational>;
