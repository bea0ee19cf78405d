//! Extremal graphs and sharpness instances: lower-bound witnesses for the
//! deficiency bounds and the embedding constructions.

use std::fmt;
use std::str::FromStr;

use crate::bitset::VertexSet;
use crate::certificate::Certificate;
use crate::deficiency::{ham_max_edges, HamRegime, Parity};
use crate::designs::{validate_partial_design, PartialDesign};
use crate::error::{Error, Result};
use crate::graph::{ceil_mul_sqrt, Graph, MultipartiteGraph};
use crate::latin::{CliqueFamily, PartialLatinSquare};
use crate::search::Limits;
use crate::solvers::{find_kk_decomposition, RemovedEdgeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    HamG1,
    HamG2,
    HamG3,
    TriangleOdd,
    TriangleEven,
    TriangleLargeT,
    DesignSharpness,
    MolsSharpness,
    Evans,
    Lemma31Sharp,
    Lemma42Sharp,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::HamG1,
        Family::HamG2,
        Family::HamG3,
        Family::TriangleOdd,
        Family::TriangleEven,
        Family::TriangleLargeT,
        Family::DesignSharpness,
        Family::MolsSharpness,
        Family::Evans,
        Family::Lemma31Sharp,
        Family::Lemma42Sharp,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::HamG1 => "ham-G1",
            Family::HamG2 => "ham-G2",
            Family::HamG3 => "ham-G3",
            Family::TriangleOdd => "triangle-odd",
            Family::TriangleEven => "triangle-even",
            Family::TriangleLargeT => "triangle-large-t",
            Family::DesignSharpness => "design-sharpness",
            Family::MolsSharpness => "mols-sharpness",
            Family::Evans => "evans",
            Family::Lemma31Sharp => "lemma31-sharp",
            Family::Lemma42Sharp => "lemma42-sharp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::input(format!("unknown family {s:?}")))
    }
}

/// `K_n` with every edge at the first `s` vertices removed.
fn isolate_prefix(n: usize, s: usize) -> Graph {
    Graph::complete(n).without_edges((0..s).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_n` with every edge inside the first `s` vertices removed.
fn independent_prefix(n: usize, s: usize) -> Graph {
    Graph::complete(n).without_edges((0..s).flat_map(|u| (u + 1..s).map(move |v| (u, v))))
}

fn check_ham(n: usize, t: usize) -> Result<()> {
    if n < 3 || t == 0 || t >= n {
        return Err(Error::input(format!("need n >= 3 and 1 <= t < n, got n={n} t={t}")));
    }
    Ok(())
}

/// `t` isolated vertices on `0..t`, complete elsewhere.
pub fn ham_g1(n: usize, t: usize) -> Result<Graph> {
    check_ham(n, t)?;
    Ok(isolate_prefix(n, t))
}

/// Independent set of size `(n+t+1)/2` on a prefix, complete elsewhere;
/// `n + t` must be odd.
pub fn ham_g2(n: usize, t: usize) -> Result<Graph> {
    check_ham(n, t)?;
    if (n + t).is_multiple_of(2) {
        return Err(Error::input("G2 needs n + t odd"));
    }
    Ok(independent_prefix(n, (n + t).div_ceil(2)))
}

/// Prefix of size `(n+t+2)/2` spanning only the edge `01`, complete
/// elsewhere; `n + t` must be even.
pub fn ham_g3(n: usize, t: usize) -> Result<Graph> {
    check_ham(n, t)?;
    if (n + t) % 2 == 1 {
        return Err(Error::input("G3 needs n + t even"));
    }
    independent_prefix(n, (n + t + 2) / 2).with_edge(0, 1)
}

/// The extremal graphs for Hamiltonicity of `G * K_t`: one graph, or two at
/// the tie point.
pub fn ham_extremal(n: usize, t: usize) -> Result<Vec<Graph>> {
    check_ham(n, t)?;
    let bound = ham_max_edges(n, t)?;
    let large = || match bound.parity {
        Parity::Odd => ham_g2(n, t),
        Parity::Even => ham_g3(n, t),
    };
    match bound.regime {
        HamRegime::SmallT => Ok(vec![ham_g1(n, t)?]),
        HamRegime::LargeT => Ok(vec![large()?]),
        HamRegime::Tie => Ok(vec![ham_g1(n, t)?, large()?]),
    }
}

/// Graph on `n` vertices whose join with `K_t` has no triangle factor and
/// whose edge count meets the closed-form bound.
pub fn triangle_extremal(n: usize, t: usize) -> Result<Graph> {
    if t == 0 || !(n + t).is_multiple_of(3) {
        return Err(Error::input(format!("need t >= 1 and 3 | n + t, got n={n} t={t}")));
    }
    let s = (t + 2) / 2;
    if t % 2 == 1 {
        if s > n {
            return Err(Error::input(format!("n = {n} too small for t = {t}")));
        }
        return Ok(isolate_prefix(n, s));
    }
    if s + 1 > n {
        return Err(Error::input(format!("n = {n} too small for t = {t}")));
    }
    // S = 0..s keeps only its edges to v = s
    isolate_prefix(n, s).with_edges((0..s).map(|u| (u, s)))
}

/// Independent set of size `(n+t)/3 + 1`, complete elsewhere. No
/// optimality claim.
pub fn triangle_large_t(n: usize, t: usize) -> Result<Graph> {
    if !(n + t).is_multiple_of(3) {
        return Err(Error::input(format!("need 3 | n + t, got n={n} t={t}")));
    }
    let s = (n + t) / 3 + 1;
    if s > n {
        return Err(Error::input(format!("independent set of {s} does not fit in {n} vertices")));
    }
    Ok(independent_prefix(n, s))
}

/// Order-`n` partial Latin square with `n - 1` diagonal cells holding the
/// first symbol and the last holding the second. Not completable at order `n`.
pub fn evans_sharpness(n: usize) -> Result<PartialLatinSquare> {
    if n < 2 {
        return Err(Error::input(format!("need n >= 2, got {n}")));
    }
    let cells = (0..n * n)
        .map(|c| {
            let (i, j) = (c / n, c % n);
            (i == j).then_some(usize::from(i == n - 1))
        })
        .collect();
    PartialLatinSquare::new(n, cells)
}

/// Sizes ordered by distance from `target` (smaller first on ties), within
/// `0..=max`.
fn nearest(target: usize, max: usize) -> Vec<usize> {
    let target = target.min(max);
    let mut sizes: Vec<usize> = (0..=max).collect();
    sizes.sort_by_key(|&s| (s.abs_diff(target), s));
    sizes
}

#[derive(Clone, Debug)]
pub struct DesignSharpness {
    pub design: PartialDesign,
    /// The hub vertex, adjacent after removal only to `inner` and `leftover`.
    pub hub: usize,
    /// `V'`: an independent set after removal.
    pub inner: Vec<usize>,
    pub requested_inner: usize,
    /// Vertices outside `V' + hub` not covered by the packing through the hub.
    pub leftover: Vec<usize>,
    /// Lower bound on the added points of any embedding.
    pub forced_extra: usize,
}

/// Blocks: a decomposition of the clique on `V'` plus the hub joined to a
/// maximum `K_{k-1}`-packing of the remaining points. `|V'|` is the nearest
/// size at most `n - 1` whose clique decomposes.
pub fn design_sharpness(n: usize, k: usize, inner_size: usize, limits: &Limits) -> Result<DesignSharpness> {
    if k < 3 {
        return Err(Error::input(format!("need k >= 3, got {k}")));
    }
    if n == 0 {
        return Err(Error::input("need n >= 1"));
    }
    let mut chosen = None;
    for s in nearest(inner_size, n - 1) {
        if let Some(cert) = find_kk_decomposition(&Graph::complete(s), k, limits)? {
            chosen = Some((s, cert));
            break;
        }
    }
    let (s, cert) = chosen.expect("the empty clique always decomposes");
    let Certificate::Decomposition { cliques: mut blocks, .. } = cert else {
        unreachable!("decomposition solver returns decompositions")
    };
    let hub = s;
    let rest: Vec<usize> = (s + 1..n).collect();
    let full = rest.len() / (k - 1) * (k - 1);
    for chunk in rest[..full].chunks(k - 1) {
        let mut b = vec![hub];
        b.extend_from_slice(chunk);
        blocks.push(b);
    }
    let leftover = rest[full..].to_vec();
    let forced_extra = ((k - 2) * s).saturating_sub(leftover.len());
    Ok(DesignSharpness {
        design: validate_partial_design(n, k, blocks)?,
        hub,
        inner: (0..s).collect(),
        requested_inner: inner_size,
        leftover,
        forced_extra,
    })
}

/// `|V'| = ⌈k√r / 2⌉` for a design with about `r` blocks.
pub fn design_sharpness_inner_size(k: usize, r: usize) -> usize {
    ceil_mul_sqrt(k, r).div_ceil(2)
}

#[derive(Clone, Debug)]
pub struct MolsSharpness {
    pub family: CliqueFamily,
    /// `|X_i|`: labels `0..x` of every part.
    pub x: usize,
    pub requested_x: usize,
    /// Label of `v_1` in part 0.
    pub hub: usize,
    /// Lower bound on added labels per part of any containing decomposition.
    pub forced_extra: usize,
}

/// Cliques: a decomposition of the complete `k`-partite graph on the sets
/// `X_i` plus `v_1` joined to the diagonal `K_{k-1}`-factor of the other parts
/// minus `X`. `|X_i|` is the nearest size at most `n - 1` that decomposes.
pub fn mols_sharpness(n: usize, k: usize, x_size: usize, limits: &Limits) -> Result<MolsSharpness> {
    if k < 3 {
        return Err(Error::input(format!("need k >= 3, got {k}")));
    }
    if n < 2 {
        return Err(Error::input(format!("need n >= 2, got {n}")));
    }
    let mut chosen = None;
    for x in nearest(x_size, n - 1) {
        if x == 0 {
            chosen = Some((0, Vec::new()));
            break;
        }
        let host = MultipartiteGraph::complete_balanced(k, x)?;
        if let Some(Certificate::Decomposition { cliques, .. }) = find_kk_decomposition(host.graph(), k, limits)? {
            chosen = Some((x, cliques));
            break;
        }
    }
    let (x, inner) = chosen.expect("x = 0 is always feasible");
    let mut cliques: Vec<Vec<Option<usize>>> = inner
        .iter()
        .map(|c| c.iter().map(|&v| Some(v % x)).collect())
        .collect();
    let hub = x;
    for label in x..n {
        let mut c = vec![Some(label); k];
        c[0] = Some(hub);
        cliques.push(c);
    }
    Ok(MolsSharpness {
        family: CliqueFamily::new(k, n, cliques)?,
        x,
        requested_x: x_size,
        hub,
        forced_extra: (k - 2) * x,
    })
}

/// `|X_i| = ⌈√(m/2)⌉` for a family of about `m` cliques.
pub fn mols_sharpness_x_size(m: usize) -> usize {
    (0..).find(|&x| 2 * x * x >= m).expect("unbounded")
}

/// Near-factor instance that just fails: `|S| = s` with every `S`-edge
/// removed from a complete graph, and one `T`-vertex too few.
#[derive(Clone, Debug)]
pub struct NearCoverInstance {
    pub graph: Graph,
    pub s_set: VertexSet,
    pub t_set: VertexSet,
    pub k: usize,
    pub removed: RemovedEdgeSet,
}

pub fn lemma31_sharp(k: usize, s: usize) -> Result<NearCoverInstance> {
    if k < 3 || s == 0 {
        return Err(Error::input(format!("need k >= 3 and s >= 1, got k={k} s={s}")));
    }
    let t = (k - 1) * s - 1;
    let n = s + t;
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|u| (u + 1..s).map(move |v| (u, v))).collect();
    Ok(NearCoverInstance {
        graph: Graph::complete(n),
        s_set: (0..s).collect(),
        t_set: (s..n).collect(),
        k,
        removed: RemovedEdgeSet::new(n, pairs)?,
    })
}

/// Multipartite factor instance that just fails: parts of size `ks - 1`
/// split as `|S_i| = s`, `|T_i| = (k-1)s - 1`, every `S`-`S` edge removed.
#[derive(Clone, Debug)]
pub struct MultipartiteInstance {
    pub graph: MultipartiteGraph,
    pub splits: Vec<(Vec<usize>, Vec<usize>)>,
    pub removed: RemovedEdgeSet,
}

pub fn lemma42_sharp(k: usize, s: usize) -> Result<MultipartiteInstance> {
    if k < 3 || s == 0 {
        return Err(Error::input(format!("need k >= 3 and s >= 1, got k={k} s={s}")));
    }
    let size = k * s - 1;
    let graph = MultipartiteGraph::complete_balanced(k, size)?;
    let splits: Vec<(Vec<usize>, Vec<usize>)> = (0..k)
        .map(|p| {
            let base = p * size;
            ((base..base + s).collect(), (base + s..base + size).collect())
        })
        .collect();
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for &u in &splits[a].0 {
                pairs.extend(splits[b].0.iter().map(|&v| (u, v)));
            }
        }
    }
    Ok(MultipartiteInstance {
        removed: RemovedEdgeSet::new(k * size, pairs)?,
        graph,
        splits,
    })
}
