use std::collections::HashSet;

use crate::bitset::MAX_VERTICES;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::{ceil_mul_sqrt, Graph, MultipartiteGraph};
use crate::latin::{complete_mols, decomposition_to_mols, extend_cliques_traced, mols_to_cliques, CliqueFamily, MolsFamily};
use crate::search::Limits;
use crate::solvers::{find_kk_decomposition, multipartite_factor, RemovedEdgeSet};

use super::{Attempt, EmbedMode, EmbedOptions, EmbedTrace, EmbeddingResult, Outcome};

/// Embed a family of `r - 2` partial orthogonal squares into complete
/// orthogonal squares of some order `N >= n`, keeping every filled cell.
pub fn embed_mols(fam: &MolsFamily, r: usize, opts: &EmbedOptions) -> Result<EmbeddingResult<MolsFamily>> {
    let n = fam.order();
    let k = r;
    let cf = mols_to_cliques(fam, r)?;
    let m = cf.len();
    let e1_fixed = ceil_mul_sqrt(8 * k, m);
    let e2_fixed = ceil_mul_sqrt(11 * k, m);
    let cap = opts.max_extra.unwrap_or(if r == 3 { n.max(1) } else { (e1_fixed + e2_fixed).max(n) });
    let mut trace = EmbedTrace::default();
    let mut budget_hit = false;

    let (mut e1, mut e2) = match opts.mode {
        EmbedMode::PaperConstants => (e1_fixed, e2_fixed),
        EmbedMode::MinimizeOrder => (0, 0),
    };
    while e1 + e2 <= cap {
        let order = n + e1 + e2;
        if k * order > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "orthogonal family embedding",
                needed: k * order,
                limit: MAX_VERTICES,
            });
        }
        if order > 0 {
            let (attempt, found) = attempt_order(fam, &cf, k, e1, e2, &opts.limits)?;
            let outcome = attempt.outcome;
            trace.attempts.push(attempt);
            if let Some((completed, certificate)) = found {
                debug_assert!(fam.is_embedded_in(&completed));
                return Ok(EmbeddingResult {
                    n,
                    order,
                    t: order - n,
                    completed,
                    host: MultipartiteGraph::complete_balanced(k, order)?.graph().clone(),
                    certificate,
                    trace,
                });
            }
            budget_hit |= outcome == Outcome::BudgetExhausted;
        }
        match opts.mode {
            EmbedMode::PaperConstants => e2 += 1,
            EmbedMode::MinimizeOrder => e1 += 1,
        }
    }
    if budget_hit {
        return Err(Error::Budget {
            stage: "orthogonal family embedding",
            budget: opts.limits.time_budget,
        });
    }
    Err(Error::Infeasible {
        reason: format!("no embedding with at most {cap} added symbols"),
        residual: None,
    })
}

type Found = Option<(MolsFamily, Certificate)>;

fn attempt_order(
    fam: &MolsFamily,
    cf: &CliqueFamily,
    k: usize,
    e1: usize,
    e2: usize,
    limits: &Limits,
) -> Result<(Attempt, Found)> {
    let order = fam.order() + e1 + e2;
    let mut attempt = Attempt::new(order, e1 + e2);
    let staged_limits = Limits::with_time(limits.time_budget / 4);
    match staged(cf, k, e1, e2, &staged_limits, &mut attempt) {
        Ok(Some(cliques)) => {
            let cert = Certificate::Decomposition { k, cliques };
            let completed = decomposition_to_mols(&cert, k, order)?;
            attempt.outcome = Outcome::Staged;
            return Ok((attempt, Some((completed, cert))));
        }
        Ok(None) => {}
        Err(Error::Infeasible { reason, .. }) => attempt.staged_failure = Some(reason),
        Err(e) if e.is_budget() => attempt.staged_failure = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    match complete_mols(&fam.enlarged(order), limits) {
        Ok(Some(completed)) => {
            let mut cliques = mols_to_cliques(&completed, k)?.vertex_sets();
            cliques.sort();
            attempt.outcome = Outcome::Exact;
            attempt.residual_cliques = cliques.len();
            Ok((attempt, Some((completed, Certificate::Decomposition { k, cliques }))))
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

/// Extend the cell cliques with `e1` new labels per part, add `e2` more,
/// cover the edges at bad vertices by cliques through them, decompose the
/// rest. `Ok(None)` means the residual has no decomposition.
fn staged(
    cf: &CliqueFamily,
    k: usize,
    e1: usize,
    e2: usize,
    limits: &Limits,
    attempt: &mut Attempt,
) -> Result<Option<Vec<Vec<usize>>>> {
    let m = cf.len();
    let ext = extend_cliques_traced(cf, k, Some(e1))?;
    let n1 = ext.family.part_size();
    let size = n1 + e2;
    let id = |p: usize, x: usize| p * size + x;
    attempt.extension_q = ext.q.iter().map(|&(p, x)| id(p, x)).collect();

    let extended: Vec<Vec<usize>> = ext
        .family
        .cliques()
        .iter()
        .map(|c| c.iter().enumerate().map(|(p, x)| id(p, x.expect("extended"))).collect())
        .collect();
    let mut e_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut load = vec![0usize; k * size];
    for c in &extended {
        for (i, &u) in c.iter().enumerate() {
            load[u] += 1;
            for &v in &c[i + 1..] {
                e_edges.insert((u, v));
            }
        }
    }
    let host = MultipartiteGraph::complete_balanced(k, size)?;
    let mut current = host.graph().without_edges(e_edges.iter().copied());

    // bad vertices, padded so every part holds the same number
    let threshold = ceil_mul_sqrt(k, m);
    let mut per_part: Vec<Vec<usize>> = (0..k)
        .map(|p| (0..size).filter(|&x| load[id(p, x)] > threshold).collect())
        .collect();
    let quota = ceil_mul_sqrt(1, m)
        .div_ceil(k)
        .max(per_part.iter().map(Vec::len).max().unwrap_or(0))
        .min(size);
    for (p, list) in per_part.iter_mut().enumerate() {
        let mut x = 0;
        while list.len() < quota {
            if !list.contains(&x) {
                list.push(x);
            }
            x += 1;
        }
        list.sort_unstable();
        for x in list.iter_mut() {
            *x = id(p, *x);
        }
    }
    let mut bad: Vec<usize> = per_part.into_iter().flatten().collect();
    bad.sort_unstable();
    attempt.bad = bad.clone();

    let mut cliques = extended;
    let mut covering = 0;
    for &b in &bad {
        let own = b / size;
        let parts: Vec<Vec<usize>> = (0..k)
            .filter(|&p| p != own)
            .map(|p| (0..size).map(|x| id(p, x)).filter(|&v| current.has_edge(b, v)).collect())
            .collect();
        let width = parts[0].len();
        if parts.iter().any(|p| p.len() != width) {
            return Err(Error::infeasible(format!("neighbourhood of {b} is unbalanced")));
        }
        if width == 0 {
            continue;
        }
        let verts: Vec<usize> = parts.iter().flatten().copied().collect();
        let local_parts: Vec<Vec<usize>> = (0..k - 1).map(|i| (i * width..(i + 1) * width).collect()).collect();
        let mut removed_pairs = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if e_edges.contains(&(u, v)) {
                    removed_pairs.push((i, j));
                }
            }
        }
        let removed = RemovedEdgeSet::new(verts.len(), removed_pairs.iter().copied())?;
        let local = current.induced(&verts).with_edges(removed_pairs)?;
        let mg = MultipartiteGraph::new(local, local_parts.clone())?;
        let splits: Vec<(Vec<usize>, Vec<usize>)> = local_parts
            .iter()
            .map(|lp| lp.iter().copied().partition(|&i| verts[i] % size < n1))
            .collect();
        let cover = multipartite_factor(&mg, &splits, &removed, limits)?;
        let Certificate::Factor { cliques: factor, .. } = cover.certificate else {
            unreachable!("factor solver returns factors")
        };
        let mut used = Vec::new();
        for c in factor {
            let mut clique: Vec<usize> = c.into_iter().map(|i| verts[i]).collect();
            clique.push(b);
            clique.sort_unstable();
            for (i, &x) in clique.iter().enumerate() {
                for &y in &clique[i + 1..] {
                    used.push((x, y));
                }
            }
            cliques.push(clique);
            covering += 1;
        }
        current = current.without_edges(used);
    }
    attempt.covering_cliques = covering;
    let residual: Graph = current;
    let Some(Certificate::Decomposition { cliques: rest, .. }) = find_kk_decomposition(&residual, k, limits)? else {
        return Ok(None);
    };
    attempt.residual_cliques = rest.len();
    cliques.extend(rest);
    cliques.sort();
    Ok(Some(cliques))
}
