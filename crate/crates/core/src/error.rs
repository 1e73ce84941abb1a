//! Error taxonomy shared by the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` is a loop (loops are not allowed)")]
    LoopEdge(String),
    #[error("edge `{0}`: {1}")]
    BadEdge(String, String),
    #[error("coloring is not proper: {0}")]
    Improper(String),
    #[error("coloring is missing an assignment for edge `{0}`")]
    MissingAssignment(String),
    #[error("orientation is missing an entry for edge `{0}`")]
    MissingOrientation(String),
    #[error("orientation is not a valid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("orientation has neutral entries where a strict one is required")]
    NeutralInStrict(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("search budget exceeded after {visited} states")]
    BudgetExceeded { visited: u64 },
    #[error("gadget `{0}` not found")]
    UnknownGadget(String),
    #[error("gadget data: {0}")]
    GadgetData(String),
    #[error("gadget `{name}` failed verification: {reason}")]
    GadgetUnverified { name: String, reason: String },
    #[error("k = {k} is not supported for the {variant} variant (need k >= {min})")]
    BadK { k: u8, variant: String, min: u8 },
    #[error("color gadget would forbid all {0} colors at the attachment point")]
    ColorGadgetForbidsAll(u8),
    #[error("boundary projection hit an unexpected state: {0}")]
    ProjectionGap(String),
    #[error("witness translation failed: {0}")]
    WitnessGap(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
