use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge list line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    #[error("invalid edge {u}-{v}: {msg}")]
    InvalidEdge { u: usize, v: usize, msg: String },

    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("unknown dataset '{0}'")]
    UnknownDataset(String),

    #[error("density undefined for a single-node graph")]
    UndefinedDensity,

    #[error("matrix is not symmetric (max |a - a^T| = {0:.3e})")]
    NotSymmetric(f64),

    #[error("Jacobi eigensolver did not converge in {0} sweeps")]
    NoConvergence(usize),

    #[error("scalar function undefined at eigenvalue {0}")]
    DomainError(f64),

    #[error("invalid coupling configuration: {0}")]
    InvalidCoupling(String),

    #[error("invalid mode: squared frequency {0} is negative")]
    InvalidMode(f64),

    #[error("free network requires zero total initial momentum, got {0:.3e}")]
    MomentumInconsistency(f64),

    #[error("sinusoidal drive requires a zero initial state (use the superposed solver for mixed conditions)")]
    DriveRequiresRest,

    #[error("initial state does not excite the dominant mode")]
    DominantModeUnexcited,

    #[error("nodes never settle within the trajectory horizon: {0:?}")]
    Unsettled(Vec<usize>),

    #[error("time {0} is not on the trajectory grid")]
    GridError(f64),

    #[error("power profile is unbalanced: sum = {0:.3e}")]
    UnbalancedPower(f64),

    #[error("steady-state solve failed: residual {0:.3e}")]
    SolveFailure(f64),

    #[error("trajectory has not settled by the final time")]
    NotSettled,

    #[error("no interior extremum found for node {0}")]
    NoPeak(usize),

    #[error("kick train resonates with the oscillator (sin(pi w0/w) = 0)")]
    ResonantKickSingularity,

    #[error("integration blew up at t = {0}")]
    NumericalBlowup(f64),

    #[error("trajectory grids do not match")]
    GridMismatch,

    #[error("node id {0} out of range 1..={1}")]
    NodeOutOfRange(usize, usize),

    #[error("mode index {0} out of range 1..={1}")]
    ModeOutOfRange(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
