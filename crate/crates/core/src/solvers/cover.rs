use std::collections::BTreeSet;

use crate::bitset::VertexSet;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::{ceil_mul_sqrt, Graph, MultipartiteGraph};
use crate::search::{Deadline, ExactCover, Limits};

use super::cliques_within;

/// Edges deleted from a host graph, with per-vertex incidence counts `r_v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RemovedEdgeSet {
    pairs: BTreeSet<(usize, usize)>,
    counts: Vec<usize>,
}

impl RemovedEdgeSet {
    /// Pairs are normalised to `(min, max)`; repeats collapse.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = RemovedEdgeSet {
            pairs: BTreeSet::new(),
            counts: vec![0; n],
        };
        for (u, v) in pairs {
            if u == v || u >= n || v >= n {
                return Err(Error::input(format!("invalid removed pair ({u}, {v})")));
            }
            if set.pairs.insert((u.min(v), u.max(v))) {
                set.counts[u] += 1;
                set.counts[v] += 1;
            }
        }
        Ok(set)
    }

    pub fn empty(n: usize) -> Self {
        RemovedEdgeSet {
            pairs: BTreeSet::new(),
            counts: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// `r_v`; zero for vertices beyond the recorded range.
    pub fn count(&self, v: usize) -> usize {
        self.counts.get(v).copied().unwrap_or(0)
    }
}

/// Which stage produced a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStrategy {
    /// Greedy placement of the heavy vertices, then search on the remainder.
    Staged,
    /// The staged attempt failed; exact search over the whole instance.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearFactorCover {
    /// Vertex-disjoint k-cliques, each ascending, sorted.
    pub cliques: Vec<Vec<usize>>,
    /// Vertices of `t_set` left out, ascending; exactly `n mod k` of them.
    pub uncovered: Vec<usize>,
    /// Heavy vertices placed greedily first.
    pub heavy: Vec<usize>,
    pub strategy: CoverStrategy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteCover {
    pub certificate: Certificate,
    pub bad: Vec<usize>,
    pub strategy: CoverStrategy,
}

/// Hajnal–Szemerédi: `δ(g) >= (n/k)(k-1)` guarantees a K_k-factor.
pub fn hs_condition(g: &Graph, k: usize) -> Result<bool> {
    let n = g.order();
    if k < 2 || !n.is_multiple_of(k) {
        return Err(Error::input(format!(
            "Hajnal-Szemeredi condition needs k >= 2 dividing n, got n={n}, k={k}"
        )));
    }
    Ok(n == 0 || g.min_degree() >= n / k * (k - 1))
}

/// Every vertex has at least `(2k-3)/(2k-2)` of each other part as neighbours.
pub fn fischer_condition(mg: &MultipartiteGraph, k: usize) -> Result<bool> {
    let size = match mg.balanced_size() {
        Some(s) if mg.part_count() == k => s,
        _ => {
            return Err(Error::input(format!(
                "Fischer's condition needs {k} parts of equal size"
            )))
        }
    };
    let need = (2 * k - 3) * size;
    Ok((0..mg.graph().order()).all(|v| {
        let own = mg.part_of(v);
        (0..k)
            .filter(|&p| p != own)
            .all(|p| mg.neighbors_in_part(v, p) * (2 * k - 2) >= need)
    }))
}

/// Exact K_k-factor search.
pub fn find_kk_factor(g: &Graph, k: usize, limits: &Limits) -> Result<Option<Certificate>> {
    if k < 2 {
        return Err(Error::input(format!("factor needs k >= 2, got {k}")));
    }
    if !g.order().is_multiple_of(k) {
        return Ok(None);
    }
    let mut deadline = limits.start("clique factor");
    let within = g.vertices();
    Ok(exact_cover_vertices(g, k, within, VertexSet::EMPTY, 0, &mut deadline)?
        .map(|(cliques, _)| Certificate::Factor { k, cliques }))
}

/// Vertex-disjoint k-cliques inside `within` covering all of it except
/// exactly `skip` vertices drawn from `skippable`.
fn exact_cover_vertices(
    g: &Graph,
    k: usize,
    within: VertexSet,
    skippable: VertexSet,
    skip: usize,
    deadline: &mut Deadline,
) -> Result<Option<(Vec<Vec<usize>>, Vec<usize>)>> {
    let verts: Vec<usize> = within.iter().collect();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let cliques = cliques_within(g, k, within);
    deadline.check()?;
    let mut ec = ExactCover::new(verts.len() + skip, 0);
    let mut items = Vec::with_capacity(k);
    for c in &cliques {
        items.clear();
        items.extend(c.iter().map(|&v| index[v]));
        ec.add_option(&items);
    }
    let skippers: Vec<usize> = (skippable & within).iter().collect();
    for token in 0..skip {
        for &v in &skippers {
            ec.add_option(&[index[v], verts.len() + token]);
        }
    }
    let Some(rows) = ec.solve(deadline)? else {
        return Ok(None);
    };
    let mut chosen = Vec::new();
    let mut left = Vec::new();
    for r in rows {
        if r < cliques.len() {
            chosen.push(cliques[r].clone());
        } else {
            left.push(skippers[(r - cliques.len()) % skippers.len()]);
        }
    }
    chosen.sort();
    left.sort_unstable();
    Ok(Some((chosen, left)))
}

/// Lowest-index greedy clique of size `size` inside `pool`, each member
/// adjacent to everything in `base`.
fn greedy_clique(g: &Graph, base: VertexSet, pool: VertexSet, size: usize) -> Option<Vec<usize>> {
    let mut cand = pool;
    for b in &base {
        cand &= g.neighbors(b);
    }
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let v = cand.first()?;
        out.push(v);
        cand &= g.neighbors(v);
    }
    Some(out)
}

/// Vertex-disjoint k-cliques of `g - removed` covering all of `s_set` and all
/// but `|V| mod k` vertices of `t_set`.
///
/// Vertices of `s_set` with many removed edges are matched first to greedy
/// (k-1)-cliques in `t_set`; the rest is settled by exact search, and if that
/// fails the whole instance is searched exactly.
pub fn near_factor_cover(
    g: &Graph,
    s_set: VertexSet,
    t_set: VertexSet,
    k: usize,
    removed: &RemovedEdgeSet,
    limits: &Limits,
) -> Result<NearFactorCover> {
    let all = g.vertices();
    if k < 2 {
        return Err(Error::input(format!("cover needs k >= 2, got {k}")));
    }
    if !(s_set & t_set).is_empty() || (s_set | t_set) != all {
        return Err(Error::input("S and T must partition the vertex set"));
    }
    if let Some((u, v)) = removed
        .pairs()
        .find(|&(u, v)| !s_set.contains(u) || !s_set.contains(v))
    {
        return Err(Error::input(format!("removed edge ({u}, {v}) not inside S")));
    }
    let h = g.without_edges(removed.pairs());
    let skip = all.len() % k;
    let mut deadline = limits.start("near factor cover");

    let r = removed.len().div_ceil(k * k);
    let threshold = (2 * k * ceil_mul_sqrt(1, r)).max(1);
    let heavy: Vec<usize> = s_set.iter().filter(|&v| removed.count(v) >= threshold).collect();

    let mut pool = t_set;
    let mut cliques = Vec::new();
    let mut staged_ok = true;
    for &b in &heavy {
        match greedy_clique(&h, VertexSet::singleton(b), pool, k - 1) {
            Some(mut c) => {
                for &v in &c {
                    pool.remove(v);
                }
                c.push(b);
                c.sort_unstable();
                cliques.push(c);
            }
            None => {
                staged_ok = false;
                break;
            }
        }
    }
    if staged_ok {
        let used: VertexSet = cliques.iter().flatten().copied().collect();
        let rest = all - used;
        if let Some((more, uncovered)) =
            exact_cover_vertices(&h, k, rest, t_set, skip, &mut deadline)?
        {
            cliques.extend(more);
            cliques.sort();
            return Ok(NearFactorCover {
                cliques,
                uncovered,
                heavy,
                strategy: CoverStrategy::Staged,
            });
        }
    }
    match exact_cover_vertices(&h, k, all, t_set, skip, &mut deadline)? {
        Some((cliques, uncovered)) => Ok(NearFactorCover {
            cliques,
            uncovered,
            heavy,
            strategy: CoverStrategy::Exact,
        }),
        None => Err(Error::Infeasible {
            reason: format!(
                "no K_{k} cover of S leaving at most {} vertices of T",
                k - 1
            ),
            residual: Some(Box::new(h)),
        }),
    }
}

/// K_k-factor of `mg - removed`, where `mg` has `k` equal parts each split
/// into `(S_i, T_i)` and removed edges run between different `S_i`.
///
/// Bad vertices (`r_v > ⌈√m⌉`, `m` the largest per-part sum of `r_v`) are
/// covered first by greedy cliques through the `T_j`; the remainder is
/// searched exactly.
pub fn multipartite_factor(
    mg: &MultipartiteGraph,
    splits: &[(Vec<usize>, Vec<usize>)],
    removed: &RemovedEdgeSet,
    limits: &Limits,
) -> Result<MultipartiteCover> {
    let k = mg.part_count();
    if mg.balanced_size().is_none() {
        return Err(Error::input("multipartite factor needs parts of equal size"));
    }
    if splits.len() != k {
        return Err(Error::input(format!("{} splits for {k} parts", splits.len())));
    }
    let mut s_all = VertexSet::EMPTY;
    let mut t_all = VertexSet::EMPTY;
    for (p, (s, t)) in splits.iter().enumerate() {
        let sv: VertexSet = s.iter().copied().collect();
        let tv: VertexSet = t.iter().copied().collect();
        let part: VertexSet = mg.parts()[p].iter().copied().collect();
        if !(sv & tv).is_empty() || (sv | tv) != part || sv.len() != s.len() || tv.len() != t.len() {
            return Err(Error::input(format!("split {p} does not partition its part")));
        }
        s_all |= sv;
        t_all |= tv;
    }
    if let Some((u, v)) = removed
        .pairs()
        .find(|&(u, v)| !s_all.contains(u) || !s_all.contains(v))
    {
        return Err(Error::input(format!("removed edge ({u}, {v}) not between S sets")));
    }
    let h = mg.without_edges(removed.pairs());
    let g = h.graph();
    let mut deadline = limits.start("multipartite factor");

    let m = splits
        .iter()
        .map(|(s, _)| s.iter().map(|&v| removed.count(v)).sum::<usize>())
        .max()
        .unwrap_or(0);
    let cutoff = ceil_mul_sqrt(1, m);
    let bad: Vec<usize> = s_all.iter().filter(|&v| removed.count(v) > cutoff).collect();

    let mut pool = t_all;
    let mut cliques = Vec::new();
    let mut staged_ok = true;
    for &b in &bad {
        let mut clique = vec![b];
        let mut common = g.neighbors(b);
        for p in (0..k).filter(|&p| p != mg.part_of(b)) {
            let part: VertexSet = mg.parts()[p].iter().copied().collect();
            match (common & pool & part).first() {
                Some(v) => {
                    clique.push(v);
                    common &= g.neighbors(v);
                }
                None => break,
            }
        }
        if clique.len() < k {
            staged_ok = false;
            break;
        }
        for &v in &clique {
            pool.remove(v);
        }
        clique.sort_unstable();
        cliques.push(clique);
    }
    if staged_ok {
        let used: VertexSet = cliques.iter().flatten().copied().collect();
        let rest = g.vertices() - used;
        if let Some((more, _)) =
            exact_cover_vertices(g, k, rest, VertexSet::EMPTY, 0, &mut deadline)?
        {
            cliques.extend(more);
            cliques.sort();
            return Ok(MultipartiteCover {
                certificate: Certificate::Factor { k, cliques },
                bad,
                strategy: CoverStrategy::Staged,
            });
        }
    }
    match exact_cover_vertices(g, k, g.vertices(), VertexSet::EMPTY, 0, &mut deadline)? {
        Some((cliques, _)) => Ok(MultipartiteCover {
            certificate: Certificate::Factor { k, cliques },
            bad,
            strategy: CoverStrategy::Exact,
        }),
        None => Err(Error::Infeasible {
            reason: format!("no K_{k}-factor of the multipartite graph"),
            residual: Some(Box::new(g.clone())),
        }),
    }
}
