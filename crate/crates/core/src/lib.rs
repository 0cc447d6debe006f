//! Rook theory and integral cohomology rings of partition varieties.
//!
//! Partitions are weakly increasing. Rings are presented as
//! `ℤ[x₁..xₙ]/I` with a marked Gröbner basis, and every linear-algebra
//! step is exact.

pub mod classify;
pub mod cohomring;
pub mod error;
pub mod groebner;
mod json;
pub mod lattice;
pub mod partition;
pub mod polyring;
pub mod rookcomb;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{ComponentMultiset, Partition, Permutation};
