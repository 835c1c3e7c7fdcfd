use thiserror::Error;

/// Errors surfaced by arrangement construction and the spectral pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("hyperplane {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("hyperplanes {0} and {1} are parallel (each hyperplane must be listed once)")]
    DuplicateHyperplane(usize, usize),
    #[error("normals span a subspace of dimension {rank} < {dim}; use essentialize() first")]
    NotEssential { rank: usize, dim: usize },
    #[error("ambient dimension 0 is vacuous")]
    Vacuous,
    #[error("no flat with hyperplane set {0:?}")]
    FlatNotFound(Vec<usize>),
    #[error("orientation basis for flat {0} is degenerate")]
    DegenerateOrientation(usize),
    #[error("no face flag realizes the given flat flag and chamber")]
    EmptyFibre,
    #[error("weights are degenerate: {0}")]
    DegenerateWeights(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("face count {0} exceeds the subset-DP limit of {1}")]
    TooManyFaces(usize, usize),
    #[error("flat {flat}: eigenspace rank {got} != |mu| = {expected}")]
    MultiplicityMismatch {
        flat: usize,
        got: usize,
        expected: usize,
    },
    #[error("vector attached to flat {0} fails the exact eigen-equation")]
    NotAnEigenvector(usize),
    #[error("assembled eigenvector basis is linearly dependent")]
    BasisNotIndependent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("desk-scale limit exceeded: {0}")]
    DeskScaleExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
