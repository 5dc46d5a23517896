//! Separating and splitting families of subsets of a finite ground set `[k]`.
//!
//! * [`ground`]: subsets, families, matrix/cube representations, text formats.
//! * [`separate`]: separation predicates, recognizers, constructions, the
//!   `(i, j)` lattice, and the Hamming-distance bridge.
//! * [`split`]: splitting predicates, the interval construction, splittability
//!   oracles, volume counting, and randomized 2-splitting builds.
//! * [`census`]: cube symmetry, canonical forms, and orbit counts.
//! * [`search`]: exact minimum family sizes by set-cover search.

pub mod census;
pub mod enumerate;
mod error;
pub mod ground;
mod limits;
mod report;
pub mod rng;
pub mod search;
pub mod separate;
pub mod split;

pub use error::{Error, Result};
pub use ground::{
    emit_family, family_to_matrix, matrix_to_family, parse_family, parse_family_auto, BinaryMatrix, CubePointSet,
    Format, SetCollection, SetFamily, SubsetMask,
};
pub use limits::Limits;
pub use report::{BoundReport, VerdictReport};
