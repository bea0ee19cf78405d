//! End-to-end embedding of partial designs and partial orthogonal families
//! into complete ones.

mod design;
mod mols;

pub use design::{embed_design, saturate_design, Saturation};
pub use mols::embed_mols;

use crate::certificate::Certificate;
use crate::graph::Graph;
use crate::search::Limits;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EmbedMode {
    /// Start from the construction's own (large) added-point count.
    PaperConstants,
    /// Try orders from the input order upwards; the first success is minimal
    /// unless an attempt ran out of time (recorded in the trace).
    #[default]
    MinimizeOrder,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmbedOptions {
    pub mode: EmbedMode,
    /// Largest number of added points tried; `None` picks a default that
    /// always covers the known existence bounds.
    pub max_extra: Option<usize>,
    /// Budget for each individual exact search.
    pub limits: Limits,
}

impl EmbedOptions {
    pub fn constants() -> Self {
        EmbedOptions {
            mode: EmbedMode::PaperConstants,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Bad vertices covered greedily, residual decomposed.
    Staged,
    /// Staged attempt failed; an exact search of the whole instance succeeded.
    Exact,
    /// Exact search proved no completion at this order.
    Infeasible,
    /// An exact search at this order ran out of time; nothing was proved.
    BudgetExhausted,
}

/// One tried target order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub order: usize,
    pub added: usize,
    /// Bad vertices handled before the residual decomposition (host labels).
    pub bad: Vec<usize>,
    /// Vertices selected by the clique-extension step (host labels).
    pub extension_q: Vec<usize>,
    pub covering_cliques: usize,
    pub residual_cliques: usize,
    /// Why the staged route was abandoned, if it was.
    pub staged_failure: Option<String>,
    pub outcome: Outcome,
}

impl Attempt {
    fn new(order: usize, added: usize) -> Self {
        Attempt {
            order,
            added,
            bad: Vec::new(),
            extension_q: Vec::new(),
            covering_cliques: 0,
            residual_cliques: 0,
            staged_failure: None,
            outcome: Outcome::Infeasible,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbedTrace {
    pub attempts: Vec<Attempt>,
}

impl EmbedTrace {
    /// Whether every attempt before the last completed its search.
    pub fn is_exhaustive(&self) -> bool {
        self.attempts
            .iter()
            .all(|a| a.outcome != Outcome::BudgetExhausted)
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingResult<T> {
    pub n: usize,
    pub order: usize,
    pub t: usize,
    pub completed: T,
    /// For designs `K_n` minus the input blocks, joined with `K_t`; for
    /// orthogonal families the complete multipartite graph of the final order.
    pub host: Graph,
    /// Decomposition of `host`.
    pub certificate: Certificate,
    pub trace: EmbedTrace,
}

/// Smallest `t >= t_lower` with `k | n+t` and `(k-1) | n+t-1`.
pub fn choose_target_order(n: usize, k: usize, t_lower: usize) -> usize {
    assert!(k >= 3, "block size must be at least 3");
    (t_lower..)
        .find(|&t| (n + t).is_multiple_of(k) && (n + t - 1).is_multiple_of(k - 1))
        .expect("a residue class always exists")
}
