//! Finite projective planes, semiarcs and the blocking-set machinery around them.

pub mod field;
pub mod io;
pub mod analysis;
pub mod blocking;
pub mod constructions;
pub mod directions;
pub mod plane;
pub mod redei;
pub mod search;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] field::FieldError),
    #[error(transparent)]
    Plane(#[from] plane::PlaneError),
    #[error(transparent)]
    Analysis(#[from] analysis::AnalysisError),
    #[error(transparent)]
    Directions(#[from] directions::DirectionsError),
    #[error(transparent)]
    Blocking(#[from] blocking::BlockingError),
    #[error(transparent)]
    Redei(#[from] redei::RedeiError),
    #[error(transparent)]
    Constructions(#[from] constructions::ConstructionError),
    #[error(transparent)]
    Format(#[from] io::FormatError),
    #[error(transparent)]
    Search(#[from] search::SearchError),
}
