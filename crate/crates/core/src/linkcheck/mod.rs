//! Verification procedures for the Whitehead link and its odd twisted family.

mod certificate;
mod family;
mod geometric;
mod nongeometric;
mod smooth;
mod whitehead;

use thiserror::Error;

use crate::chebfam::ChebError;
use crate::groebner::GroebnerError;
use crate::mpoly::PolyError;

pub use certificate::{rational_rank, Evidence, MultiplicityCertificate};
pub use family::{expand_v, FamilyJson, FamilyPolys, V_EXPR};
pub use geometric::{equality_without_tn_plus_2, geometric_mult_check, GeometricData};
pub use nongeometric::{nongeometric_check, NongeometricReport};
pub use smooth::{
    geometric_singular_system, smoothness_check, smoothness_check_with, trace_singular_system, ParityBranch,
    SmoothFormulation, SmoothReport,
};
pub use whitehead::{
    diagonal_elimination_check, whitehead_divisor_check, DiagonalReport, DIAGONAL_D, DIAGONAL_EXPECTED, LINE_L,
    SQUARE_FACTOR,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkError {
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cheb(#[from] ChebError),
}
