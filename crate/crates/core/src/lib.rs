//! Exact computation with subalgebras of the full matrix algebra `M_n(K)`.
//!
//! Arithmetic is over the rationals (or a prime field for replaying
//! field-independent constructions). Subspaces are stored in canonical
//! reduced-echelon form so that equality is structural, which lets every
//! classifier certify its answer by conjugating the input and comparing it
//! exactly against a canonical algebra.

pub mod algebra;
pub mod canonical;
pub mod conjugator;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod search;
pub mod structure;
pub mod subspace;

pub use algebra::{AffineFamily, CompressMode, Subalgebra, UnityStatus, UnitySummary};
pub use canonical::{canonical, canonical_algebra, CanonicalSpec, CanonicalTag};
pub use conjugator::Conjugator;
pub use error::{Error, Result};
pub use matrix::Mat;
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
