//! Affine translation planes: derived planes at regular points, spread
//! planes, translation groups and subplanes.

mod affine;
mod derived;
mod spread;
mod subplane;
mod translation;

pub use affine::{desarguesian_plane, verify_affine_plane, AffinePlane, PlaneFailure};
pub use derived::{derived_plane, trace_key};
pub use spread::{find_spreads, plane_from_spread, Spread};
pub use subplane::{find_subplanes, Subplane, SubplaneSearch};
pub use translation::{group_from_maps, plane_translation_group, PlaneTranslationGroup};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("point {0} is not regular")]
    NotRegular(usize),
    #[error("not an affine plane: {0}")]
    NotPlane(PlaneFailure),
    #[error("kernel of the induced action differs from the given subgroup; element {witness} is in one but not the other")]
    KernelMismatch { witness: usize, kernel: Vec<usize> },
    #[error("invalid spread: {0}")]
    InvalidSpread(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
