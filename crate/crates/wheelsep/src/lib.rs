//! Weighted balanced separators with certified output.
//!
//! Given a graph and a nonnegative rational vertex weighting, the pipeline in
//! [`pipeline::separator`] produces either a balanced separator together with
//! machine-checkable evidence (a small dominating set or an explicit size
//! bound), or an induced-minor model of a wheel proving that the structural
//! hypothesis behind the separator construction fails for this input. Every
//! returned object is re-verified from scratch before it leaves the pipeline.
//!
//! The companion [`pipeline::fan_separator`] does the same for fans instead of
//! wheels. All arithmetic on weights is exact rational arithmetic; there is no
//! floating point and no tolerance anywhere in this crate.

pub mod batch;
pub mod cobweb;
pub mod document;
pub mod generate;
pub mod graph;
pub mod gyarfas;
pub mod minor;
pub mod pipeline;
pub mod weights;

pub use graph::{ContractionMap, Graph, Vertex, VertexSequence, VertexSet};
pub use minor::InducedMinorWitness;
pub use pipeline::PipelineResult;
pub use weights::{Rational, Route, SeparatorCertificate, Weighting};

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} not in graph")]
    VertexNotInGraph(Vertex),
    #[error("sequence repeats vertex {0}")]
    RepeatedVertex(Vertex),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cannot normalize trivial weighting")]
    TrivialWeighting,
    #[error("weighting is not normal")]
    NonNormalWeighting,
    #[error("negative weight on vertex {0}")]
    NegativeWeight(Vertex),
    #[error("weighting domain does not match graph vertices")]
    WeightDomainMismatch,
    #[error("host too large for exhaustive oracle ({vertices} vertices, cap {cap})")]
    OracleCapExceeded { vertices: usize, cap: usize },
    #[error("attempt budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a valid cobweb: {0}")]
    CobwebInvalid(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
