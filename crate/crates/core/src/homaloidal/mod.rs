//! Cremona maps as triples of forms: homaloidal nets from assigned base
//! points, composition, quadratic transformations, factorization and
//! inverses, plus the bundled example maps.

mod factor;
pub mod fixtures;
mod map;
mod net;
pub mod sample;

pub use factor::{
    apply_quadratic, factor_quadratics, inverse, quadratic_map, Factorization, QuadraticStep,
};
pub use map::{compose, is_identity_up_to_factor, strip_gcd, verify_inverse_pair, CremonaMap};
pub use net::{build_net, interpolate, interpolate_detailed, AssignedBasePoints, Interpolation};

use thiserror::Error;

use crate::multiindex::MultiIndex;
use crate::polyring::{PolyError, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("components have different degrees: {0:?}")]
    DegreeMismatch([u32; 3]),
    #[error("all three components are zero")]
    AllZero,
    #[error("{0} is not an admissible H-type")]
    NotAdmissible(Box<MultiIndex>),
    #[error("expected {expected} points, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("base point {0} is listed twice")]
    DuplicatePoint(Box<ProjPoint>),
    #[error("base point {0} has multiplicity 0")]
    ZeroMultiplicity(Box<ProjPoint>),
    #[error("special position: {reason} (interpolation dimension {dimension})")]
    SpecialPosition { dimension: usize, reason: String },
    #[error("centers are collinear")]
    CollinearCenters,
    #[error("centers coincide")]
    CoincidentCenters,
    #[error("multiplicity at {point}: expected {expected}, found {found}")]
    MultiplicityMismatch {
        point: Box<ProjPoint>,
        expected: u32,
        found: u32,
    },
    #[error("infinitely near base points are not supported: {0}")]
    InfinitelyNearUnsupported(String),
    #[error("map is not pure (its components share a factor)")]
    NotPure,
    #[error("internal error: {0}")]
    Internal(String),
}
