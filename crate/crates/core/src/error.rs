use thiserror::Error;

/// Errors produced across the pipeline, from network parsing to simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("segment `{segment}` references unknown node `{node}`")]
    DanglingNode { segment: String, node: String },

    #[error("segment `{segment}` has nonpositive weight {weight}")]
    NonpositiveWeight { segment: String, weight: f64 },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("no path from `{origin}` to `{dest}`")]
    NoPath { origin: String, dest: String },

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("car {car}: requested {requested} routes but only {available} distinct routes exist")]
    InsufficientRoutes {
        car: usize,
        requested: usize,
        available: usize,
    },

    #[error("bitstring length {got} does not match variable count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{n_qubits} qubits exceeds the configured cap of {cap}")]
    QubitCapExceeded { n_qubits: usize, cap: usize },

    #[error("model has no nonzero coefficients")]
    AllZeroModel,

    #[error("degenerate spectrum: E_max equals E_min")]
    DegenerateSpectrum,

    #[error("layout is invalid: {0}")]
    InvalidLayout(String),

    #[error("coupling map is disconnected")]
    DisconnectedMap,

    #[error("objective evaluated to a non-finite value at {context}")]
    NonFiniteObjective { context: String },

    #[error("single-shot success probability {0} admits no finite shot bound")]
    UnboundedShots(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
