//! Executable finite geometry around Kantor families.
//!
//! The crate builds finite groups as Cayley tables, searches and verifies
//! Kantor families, turns them into elation generalized quadrangles, and
//! studies the resulting geometry: regular points, symmetries, the affine
//! translation plane at a regular elation point, and the subquadrangles that
//! subplanes of that plane induce.

pub mod catalog;
pub mod group;
pub mod geometry;
pub mod io;
pub mod kantor;
pub mod par;
pub mod planes;
pub mod projective;
pub mod regularity;
pub mod subgq;
pub mod suite;

pub use group::{GroupError, GroupTable, Subgroup};
pub use par::Exec;
