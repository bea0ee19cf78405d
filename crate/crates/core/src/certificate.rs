//! Witness objects returned by the solvers and their independent checker.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Edge-disjoint `k`-cliques partitioning every edge.
    Decomposition { k: usize, cliques: Vec<Vec<usize>> },
    /// Vertex-disjoint `k`-cliques covering every vertex.
    Factor { k: usize, cliques: Vec<Vec<usize>> },
    HamCycle(Vec<usize>),
    PathCover(Vec<Vec<usize>>),
}

/// Outcome of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&str> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(s) => Some(s),
        }
    }
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Decomposition { .. } => "decomposition",
            Certificate::Factor { .. } => "factor",
            Certificate::HamCycle(_) => "cycle",
            Certificate::PathCover(_) => "paths",
        }
    }

    fn labels(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match self {
            Certificate::Decomposition { cliques, .. } | Certificate::Factor { cliques, .. } => {
                Box::new(cliques.iter().flatten().copied())
            }
            Certificate::HamCycle(seq) => Box::new(seq.iter().copied()),
            Certificate::PathCover(paths) => Box::new(paths.iter().flatten().copied()),
        }
    }
}

macro_rules! reject {
    ($($arg:tt)*) => {
        return Ok(Verdict::Invalid(format!($($arg)*)))
    };
}

/// Check `c` against `g`. Out-of-range labels are an input error; any other
/// failed clause yields [`Verdict::Invalid`] naming the first violation.
pub fn verify(g: &Graph, c: &Certificate) -> Result<Verdict> {
    let n = g.order();
    if let Some(bad) = c.labels().find(|&v| v >= n) {
        return Err(Error::input(format!(
            "certificate label {bad} out of range for {n} vertices"
        )));
    }
    match c {
        Certificate::Decomposition { k, cliques } => verify_decomposition(g, *k, cliques),
        Certificate::Factor { k, cliques } => verify_factor(g, *k, cliques),
        Certificate::HamCycle(seq) => verify_cycle(g, seq),
        Certificate::PathCover(paths) => verify_paths(g, paths),
    }
}

fn check_clique(g: &Graph, k: usize, clique: &[usize], idx: usize) -> Option<String> {
    if clique.len() != k {
        return Some(format!(
            "clique {idx} has {} vertices, expected {k}",
            clique.len()
        ));
    }
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if u == v {
                return Some(format!("clique {idx} repeats vertex {u}"));
            }
            if !g.has_edge(u, v) {
                return Some(format!("clique {idx}: {u} and {v} are not adjacent"));
            }
        }
    }
    None
}

fn verify_decomposition(g: &Graph, k: usize, cliques: &[Vec<usize>]) -> Result<Verdict> {
    let n = g.order();
    let mut owner = vec![usize::MAX; n * n];
    let mut covered = 0usize;
    for (idx, c) in cliques.iter().enumerate() {
        if let Some(msg) = check_clique(g, k, c, idx) {
            reject!("{msg}");
        }
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                let (a, b) = (u.min(v), u.max(v));
                let slot = &mut owner[a * n + b];
                if *slot != usize::MAX {
                    reject!("edge ({a}, {b}) covered by cliques {} and {idx}", *slot);
                }
                *slot = idx;
                covered += 1;
            }
        }
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| owner[u * n + v] == usize::MAX) {
        reject!("edge ({u}, {v}) not covered");
    }
    debug_assert_eq!(covered, g.edge_count());
    Ok(Verdict::Valid)
}

fn verify_factor(g: &Graph, k: usize, cliques: &[Vec<usize>]) -> Result<Verdict> {
    let n = g.order();
    if k == 0 || !n.is_multiple_of(k) {
        reject!("{n} not divisible by {k}");
    }
    let mut seen = vec![usize::MAX; n];
    for (idx, c) in cliques.iter().enumerate() {
        if let Some(msg) = check_clique(g, k, c, idx) {
            reject!("{msg}");
        }
        for &v in c {
            if seen[v] != usize::MAX {
                reject!("vertex {v} in cliques {} and {idx}", seen[v]);
            }
            seen[v] = idx;
        }
    }
    if let Some(v) = seen.iter().position(|&s| s == usize::MAX) {
        reject!("vertex {v} not covered");
    }
    Ok(Verdict::Valid)
}

fn verify_cycle(g: &Graph, seq: &[usize]) -> Result<Verdict> {
    let n = g.order();
    if n < 3 {
        reject!("a Hamiltonian cycle needs at least 3 vertices, graph has {n}");
    }
    if seq.len() != n {
        reject!("cycle has {} vertices, graph has {n}", seq.len());
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if std::mem::replace(&mut seen[v], true) {
            reject!("vertex {v} visited twice");
        }
    }
    for i in 0..n {
        let (u, v) = (seq[i], seq[(i + 1) % n]);
        if !g.has_edge(u, v) {
            reject!("consecutive vertices {u} and {v} are not adjacent");
        }
    }
    Ok(Verdict::Valid)
}

fn verify_paths(g: &Graph, paths: &[Vec<usize>]) -> Result<Verdict> {
    let n = g.order();
    let mut seen = vec![false; n];
    for (idx, p) in paths.iter().enumerate() {
        if p.is_empty() {
            reject!("path {idx} is empty");
        }
        for &v in p {
            if std::mem::replace(&mut seen[v], true) {
                reject!("vertex {v} appears twice");
            }
        }
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                reject!("path {idx}: {} and {} are not adjacent", w[0], w[1]);
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        reject!("vertex {v} not covered");
    }
    Ok(Verdict::Valid)
}
