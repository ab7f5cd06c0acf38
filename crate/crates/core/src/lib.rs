//! Matroids as basis bitsets over Johnson graphs.
//!
//! The crate covers the finite machinery behind counting arguments for
//! matroids: colex-ranked Johnson graphs, a basis-bitset matroid type with
//! the usual operations, the two-phase container compression for regular
//! graphs, an encoder that compresses the non-bases of a matroid into a
//! fingerprint, flat cover and a stable transversal, evaluators for the
//! constants and bounds that go with it, and an exhaustive census of labeled
//! matroids for small ground sets.

pub mod binom;
pub mod bounds;
pub mod census;
pub mod encoder;
pub mod error;
pub mod format;
pub mod johnson;
pub mod kw;
pub mod matroid;
pub mod stable;
pub mod verify;

pub use error::{Error, InvalidBases, Result};
pub use johnson::{Johnson, RSet, VertexId, VertexSet};
pub use matroid::{ExtNat, Matroid};
