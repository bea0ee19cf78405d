use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::certificate::Certificate;
use crate::designs::{
    design_admissible, design_to_graph, validate_complete_design, validate_partial_design,
    CompleteDesign, PartialDesign,
};
use crate::error::{Error, Result};
use crate::graph::{binom2, ceil_mul_sqrt, Graph};
use crate::search::Limits;
use crate::solvers::{find_kk_decomposition, near_factor_cover, RemovedEdgeSet};

use super::{choose_target_order, Attempt, EmbedMode, EmbedOptions, EmbedTrace, EmbeddingResult, Outcome};

/// Default cap on added points: covers both the `2n+1` bound for triple
/// systems and the construction's own `7k²⌈√r⌉ + k(k-1)`.
fn default_cap(n: usize, k: usize, r: usize) -> usize {
    let slack = k * (k - 1);
    (n + 1 + slack).max(7 * k * k * ceil_mul_sqrt(1, r.max(1)) + slack)
}

/// Embed `f` into a complete design on `n + t` points containing every block
/// of `f` verbatim.
pub fn embed_design(f: &PartialDesign, opts: &EmbedOptions) -> Result<EmbeddingResult<CompleteDesign>> {
    let n = f.order();
    let k = f.block_size();
    let r = f.len();
    let cap = opts.max_extra.unwrap_or_else(|| default_cap(n, k, r));
    let (g, _) = design_to_graph(f);
    let mut trace = EmbedTrace::default();
    let mut budget_hit = false;

    let mut t = match opts.mode {
        EmbedMode::PaperConstants => choose_target_order(n, k, ceil_mul_sqrt(6 * k * k, r)),
        EmbedMode::MinimizeOrder => next_admissible(n, k, 0),
    };
    while t <= cap {
        let order = n + t;
        if order > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "design embedding",
                needed: order,
                limit: MAX_VERTICES,
            });
        }
        let (attempt, found) = attempt_order(f, &g, t, &opts.limits)?;
        let outcome = attempt.outcome;
        trace.attempts.push(attempt);
        if let Some((host, certificate)) = found {
            let Certificate::Decomposition { cliques, .. } = &certificate else {
                unreachable!("decomposition solver returns decompositions")
            };
            let blocks = f.blocks().iter().chain(cliques).cloned().collect();
            let completed = validate_complete_design(order, k, blocks)?;
            return Ok(EmbeddingResult {
                n,
                order,
                t,
                completed,
                host,
                certificate,
                trace,
            });
        }
        budget_hit |= outcome == Outcome::BudgetExhausted;
        t = match opts.mode {
            EmbedMode::PaperConstants => choose_target_order(n, k, t + 1),
            EmbedMode::MinimizeOrder => next_admissible(n, k, t + 1),
        };
    }
    if budget_hit {
        return Err(Error::Budget {
            stage: "design embedding",
            budget: opts.limits.time_budget,
        });
    }
    Err(Error::Infeasible {
        reason: format!("no embedding with at most {cap} added points"),
        residual: None,
    })
}

fn next_admissible(n: usize, k: usize, from: usize) -> usize {
    (from..)
        .find(|&t| n + t >= k && design_admissible(n + t, k))
        .expect("admissible orders are unbounded")
}

type Found = Option<(Graph, Certificate)>;

fn attempt_order(f: &PartialDesign, g: &Graph, t: usize, limits: &Limits) -> Result<(Attempt, Found)> {
    let n = g.order();
    let k = f.block_size();
    let host = g.join(t)?;
    let mut attempt = Attempt::new(n + t, t);
    let staged_limits = Limits::with_time(limits.time_budget / 4);
    match staged(f, g, &host, &staged_limits, &mut attempt) {
        Ok(Some(cliques)) => {
            attempt.outcome = Outcome::Staged;
            let cert = Certificate::Decomposition { k, cliques };
            return Ok((attempt, Some((host, cert))));
        }
        Ok(None) => {}
        Err(Error::Infeasible { reason, .. }) => attempt.staged_failure = Some(reason),
        Err(e) if e.is_budget() => attempt.staged_failure = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    match find_kk_decomposition(&host, k, limits) {
        Ok(Some(cert)) => {
            attempt.outcome = Outcome::Exact;
            attempt.residual_cliques = match &cert {
                Certificate::Decomposition { cliques, .. } => cliques.len(),
                _ => 0,
            };
            Ok((attempt, Some((host, cert))))
        }
        Ok(None) => {
            attempt.outcome = Outcome::Infeasible;
            Ok((attempt, None))
        }
        Err(e) if e.is_budget() => {
            attempt.outcome = Outcome::BudgetExhausted;
            Ok((attempt, None))
        }
        Err(e) => Err(e),
    }
}

/// Cover every edge at the bad vertices by cliques through them, then
/// decompose what is left. `Ok(None)` means the residual has no
/// decomposition.
fn staged(
    f: &PartialDesign,
    g: &Graph,
    host: &Graph,
    limits: &Limits,
    attempt: &mut Attempt,
) -> Result<Option<Vec<Vec<usize>>>> {
    let n = g.order();
    let k = f.block_size();
    let r = f.len();
    let threshold = ceil_mul_sqrt(k * k, r).max(1);
    let mut bad: Vec<usize> = (0..n)
        .filter(|&v| n - 1 - g.degree(v) >= threshold)
        .collect();
    let want = ceil_mul_sqrt(1, r).min(n);
    let mut v = 0;
    while bad.len() < want {
        if !bad.contains(&v) {
            bad.push(v);
        }
        v += 1;
    }
    bad.sort_unstable();
    attempt.bad = bad.clone();

    let mut current = host.clone();
    let mut cover: Vec<Vec<usize>> = Vec::new();
    for &b in &bad {
        let nb: Vec<usize> = current.neighbors(b).iter().collect();
        if nb.is_empty() {
            continue;
        }
        // block edges inside the neighbourhood go back in, marked as removed
        let mut block_pairs = Vec::new();
        for (i, &u) in nb.iter().enumerate() {
            for (j, &w) in nb.iter().enumerate().skip(i + 1) {
                if w < n && !g.has_edge(u, w) {
                    block_pairs.push((i, j));
                }
            }
        }
        let removed = RemovedEdgeSet::new(nb.len(), block_pairs.iter().copied())?;
        let local = current.induced(&nb).with_edges(block_pairs)?;
        let s_set: VertexSet = (0..nb.len()).filter(|&i| nb[i] < n).collect();
        let t_set = local.vertices() - s_set;
        let found = near_factor_cover(&local, s_set, t_set, k - 1, &removed, limits)?;
        if !found.uncovered.is_empty() {
            return Err(Error::infeasible(format!(
                "neighbourhood of {b} leaves {} vertices uncovered",
                found.uncovered.len()
            )));
        }
        let mut used = Vec::new();
        for c in found.cliques {
            let mut clique: Vec<usize> = c.into_iter().map(|i| nb[i]).collect();
            clique.push(b);
            clique.sort_unstable();
            for (i, &x) in clique.iter().enumerate() {
                for &y in &clique[i + 1..] {
                    used.push((x, y));
                }
            }
            cover.push(clique);
        }
        current = current.without_edges(used);
    }
    attempt.covering_cliques = cover.len();
    let Some(Certificate::Decomposition { cliques, .. }) = find_kk_decomposition(&current, k, limits)? else {
        return Ok(None);
    };
    attempt.residual_cliques = cliques.len();
    cover.extend(cliques);
    cover.sort();
    Ok(Some(cover))
}

/// Result of [`saturate_design`].
#[derive(Clone, Debug)]
pub struct Saturation {
    pub design: PartialDesign,
    pub uncovered_pairs: usize,
    /// Blocks of the embedding dropped for meeting an added point.
    pub discarded: usize,
    pub embedding_order: usize,
}

/// Embed, then drop every block that meets an added point. The result lives
/// on the original points and contains `f`.
pub fn saturate_design(f: &PartialDesign, opts: &EmbedOptions) -> Result<Saturation> {
    let n = f.order();
    let k = f.block_size();
    let emb = embed_design(f, opts)?;
    let (kept, dropped): (Vec<_>, Vec<_>) = emb
        .completed
        .blocks()
        .iter()
        .cloned()
        .partition(|b| b.iter().all(|&p| p < n));
    let uncovered_pairs = binom2(n) - kept.len() * binom2(k);
    debug_assert_eq!(
        uncovered_pairs,
        dropped
            .iter()
            .map(|b| binom2(b.iter().filter(|&&p| p < n).count()))
            .sum::<usize>()
    );
    Ok(Saturation {
        design: validate_partial_design(n, k, kept)?,
        uncovered_pairs,
        discarded: dropped.len(),
        embedding_order: emb.order,
    })
}
