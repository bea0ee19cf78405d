use std::time::Duration;

use thiserror::Error;

use crate::graph::Graph;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input to an operation.
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The instance does not fit the compiled-in or configured capacity.
    #[error("capacity exceeded: {what} needs at least {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    /// A search ran out of its time budget before deciding the instance.
    #[error("time budget of {budget:?} exhausted in {stage}")]
    Budget { stage: &'static str, budget: Duration },

    /// An exact search completed and proved the requested object does not exist.
    #[error("infeasible: {reason}")]
    Infeasible {
        reason: String,
        residual: Option<Box<Graph>>,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn infeasible(reason: impl Into<String>) -> Self {
        Error::Infeasible {
            reason: reason.into(),
            residual: None,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
