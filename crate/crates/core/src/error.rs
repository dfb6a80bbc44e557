use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is not connected: vertex `{0}` is unreachable from `{1}`")]
    DisconnectedGraph(String, String),
    #[error("edge weights are not symmetric: b({0},{1}) = {2} but b({1},{0}) = {3}")]
    NonSymmetricWeights(String, String, f64, f64),
    #[error("vertex `{0}` has non-positive measure {1}")]
    NonPositiveMeasure(String, f64),
    #[error("edge {{{0},{1}}} has negative weight {2}")]
    NegativeEdgeWeight(String, String, f64),
    #[error("edge {{{0},{1}}} has non-positive weight {2}")]
    NonPositiveEdgeWeight(String, String, f64),
    #[error("vertex `{0}` has nonzero self-weight {1}")]
    NonzeroDiagonal(String, f64),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(String, String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set is the whole graph")]
    FullSet,
    #[error("no Voronoi centers given")]
    EmptyCenters,
    #[error("Dirichlet region is empty")]
    EmptyOmega,
    #[error("symmetric eigensolver did not converge within {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("interval maximum {max_i} is not below the Dirichlet eigenvalue {lambda_omega}")]
    PreconditionInterval { max_i: f64, lambda_omega: f64 },
    #[error("subset enumeration over {0} vertices exceeds the cap of {1}")]
    TooLarge(usize, usize),
    #[error("graph is not combinatorial (b in {{0,1}}, m = 1)")]
    NotCombinatorial,
    #[error("volume doubling with exponent {0} fails on the sampled grid")]
    DoublingUnverified(f64),
    #[error("ground state is not strictly positive")]
    NonPositiveGroundState,
    #[error("invalid centers spec: {0}")]
    InvalidCenters(String),
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}
