//! Exact rational models for the cohomology of intersection spaces of
//! pseudomanifolds with one isolated singularity, and verification of their
//! generalized Poincaré duality.
//!
//! The pipeline: [`simplicial`] splits a triangulated `X` at its singular
//! vertex into an exterior manifold `M` and link `L`; [`cochain`] builds
//! simplicial cochains with cup products; [`cotrunc`] truncates the link
//! cochains; [`model`] forms the fiber-product model; [`duality`] evaluates
//! the pairings; [`oracle`] recomputes the Betti numbers from a mapping cone.

pub mod cochain;
pub mod cotrunc;
pub mod duality;
pub mod fixtures;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod pair;
pub mod report;
pub mod simplicial;

use thiserror::Error;

pub use linalg::{ComplementStrategy, Rational, RationalMatrix, SubspaceBasis};

/// Machine-readable error class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Parse,
    NotPseudomanifold,
    LinkDisconnected,
    NonOrientable,
    BadPerversity,
    NotComplementary,
    InternalExactness,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Parse => "PARSE",
            ErrorCode::NotPseudomanifold => "NOT_PSEUDOMANIFOLD",
            ErrorCode::LinkDisconnected => "LINK_DISCONNECTED",
            ErrorCode::NonOrientable => "NON_ORIENTABLE",
            ErrorCode::BadPerversity => "BAD_PERVERSITY",
            ErrorCode::NotComplementary => "NOT_COMPLEMENTARY",
            ErrorCode::InternalExactness => "INTERNAL_EXACTNESS",
        }
    }
}

impl std::fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Simplicial(#[from] simplicial::SimplicialError),
    #[error(transparent)]
    Cochain(#[from] cochain::CochainError),
    #[error(transparent)]
    Cotrunc(#[from] cotrunc::CotruncError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Duality(#[from] duality::DualityError),
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        use simplicial::SimplicialError as S;
        match self {
            Error::Simplicial(e) => match e {
                S::Malformed(_) | S::NotPure(..) | S::RepeatedVertex(_) | S::UnknownVertex(_) => {
                    ErrorCode::Parse
                }
                S::DimensionTooLow(_) | S::NotPseudomanifold(_) | S::NotSubcomplex(_) => {
                    ErrorCode::NotPseudomanifold
                }
                S::LinkDisconnected(..) => ErrorCode::LinkDisconnected,
                S::NonOrientable(_) => ErrorCode::NonOrientable,
            },
            Error::Cochain(_) | Error::Cotrunc(_) => ErrorCode::InternalExactness,
            Error::Model(e) => e.code(),
            Error::Duality(e) => e.code(),
            Error::Io(_) | Error::Config(_) => ErrorCode::Parse,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
