//! Ground-set subsets, families, matrix and cube representations, and the
//! text formats shared by every other module.

mod cube;
mod family;
mod format;
mod mask;
mod matrix;

pub use cube::CubePointSet;
pub use family::{SetCollection, SetFamily};
pub use format::{emit_family, parse_family, parse_family_auto, Format};
pub use mask::SubsetMask;
pub use matrix::{family_to_matrix, matrix_to_family, BinaryMatrix};
