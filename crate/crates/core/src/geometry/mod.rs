//! Incidence geometries, generalized quadrangles and the coset construction.

mod benson;
mod elation;
mod gq;
mod incidence;
mod iso;
mod symplectic;

pub use benson::{benson_check, benson_table, BensonReport, BensonRow};
pub use elation::{gq_from_kantor, kantor_from_egq, CosetLayout, ElationAction, KantorGq};
pub use gq::{verify_gq, Gq, GqFailure};
pub use incidence::{GeometryMap, IncidenceGeometry};
pub use iso::{automorphisms, gq_isomorphic, incidence_isomorphism, IsoError, IsoOptions};
pub use symplectic::symplectic_quadrangle;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("line {line} lists point {point} twice")]
    RepeatedIncidence { line: usize, point: usize },
    #[error("line {line} contains point {point} but there are only {num_points} points")]
    PointOutOfRange { line: usize, point: usize, num_points: usize },
    #[error("point {point} is incident with line {line}")]
    Incident { point: usize, line: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("not a generalized quadrangle: {0}")]
    NotGq(GqFailure),
    #[error("family does not verify: {0}")]
    FamilyNotVerified(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
