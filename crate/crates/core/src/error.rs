use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop ({u}, {v})")]
    SelfLoop { u: usize, v: usize },
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An exhaustive routine was asked to run past its size guard.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scale exceeded: {what} supports n <= {limit}, got n = {n}")]
pub struct ScaleExceeded {
    pub what: &'static str,
    pub n: usize,
    pub limit: usize,
}

impl ScaleExceeded {
    pub fn check(what: &'static str, n: usize, limit: usize) -> Result<(), ScaleExceeded> {
        if n > limit {
            Err(ScaleExceeded { what, n, limit })
        } else {
            Ok(())
        }
    }
}
