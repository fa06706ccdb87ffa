//! Desk-scale equivariant categorical combinatorics: finite groups and
//! G-sets, finite categories with strict G-actions, operads of G-categories
//! and their pairings, free permutative G-categories with fixed-point
//! decompositions, injection operads on a lazily materialized universe,
//! nerves and small integral homology, and the Burnside-ring bookkeeping
//! that ties the fixed-point counts together. Every law in scope is checked
//! by exhaustive enumeration or seeded sampling on bounded domains.

pub mod burnside;
pub mod error;
pub mod fincat;
pub mod free_perm;
pub mod group;
pub mod gset;
pub mod nerve;
pub mod operad;
pub mod perm;
pub mod pqr;
pub mod report;

pub use error::{Error, Result};
pub use report::{Check, Report, Status};
