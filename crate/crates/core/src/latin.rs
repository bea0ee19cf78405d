//! Partial Latin squares, orthogonal families, and clique families in complete
//! multipartite graphs.
//!
//! Symbols are `0..n` internally; text formats show them as `1..=n`.

use std::collections::HashMap;

use crate::certificate::{verify, Certificate};
use crate::error::{Error, Result};
use crate::graph::{ceil_mul_sqrt, MultipartiteGraph};
use crate::search::{ExactCover, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialLatinSquare {
    n: usize,
    cells: Vec<Option<usize>>,
}

impl PartialLatinSquare {
    pub fn empty(n: usize) -> Self {
        PartialLatinSquare {
            n,
            cells: vec![None; n * n],
        }
    }

    /// Row-major cells; fails on a symbol out of range or a repeat in a row
    /// or column.
    pub fn new(n: usize, cells: Vec<Option<usize>>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::input(format!(
                "order {n} square needs {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        let sq = PartialLatinSquare { n, cells };
        sq.check()?;
        Ok(sq)
    }

    pub fn from_rows(rows: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = rows.len();
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::input(format!("row {i} does not have {n} cells")));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        let mut row_seen = vec![usize::MAX; n * n];
        let mut col_seen = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                let Some(s) = self.get(i, j) else { continue };
                if s >= n {
                    return Err(Error::input(format!(
                        "cell ({i}, {j}) holds symbol {} outside 1..={n}",
                        s + 1
                    )));
                }
                let r = &mut row_seen[i * n + s];
                if *r != usize::MAX {
                    return Err(Error::input(format!(
                        "symbol {} repeated in row {i} (columns {} and {j})",
                        s + 1,
                        *r
                    )));
                }
                *r = j;
                let c = &mut col_seen[j * n + s];
                if *c != usize::MAX {
                    return Err(Error::input(format!(
                        "symbol {} repeated in column {j} (rows {} and {i})",
                        s + 1,
                        *c
                    )));
                }
                *c = i;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.cells[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Option<usize>]> {
        self.cells.chunks(self.n.max(1)).take(self.n)
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Same cells placed in the top-left corner of an order `order` grid.
    pub fn enlarged(&self, order: usize) -> Self {
        assert!(order >= self.n);
        let mut cells = vec![None; order * order];
        for i in 0..self.n {
            for j in 0..self.n {
                cells[i * order + j] = self.get(i, j);
            }
        }
        PartialLatinSquare { n: order, cells }
    }

    /// Every filled cell of `self` holds the same symbol in `other`.
    pub fn is_embedded_in(&self, other: &PartialLatinSquare) -> bool {
        other.n >= self.n
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| match self.get(i, j) {
                    Some(s) => other.get(i, j) == Some(s),
                    None => true,
                })
            })
    }
}

/// Pairwise orthogonal partial Latin squares of a common order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MolsFamily {
    n: usize,
    squares: Vec<PartialLatinSquare>,
}

impl MolsFamily {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn squares(&self) -> &[PartialLatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Cells filled in at least one square.
    pub fn filled_cells(&self) -> usize {
        (0..self.n * self.n)
            .filter(|&c| self.squares.iter().any(|s| s.cells[c].is_some()))
            .count()
    }

    pub fn is_complete(&self) -> bool {
        self.squares.iter().all(PartialLatinSquare::is_complete)
    }

    pub fn enlarged(&self, order: usize) -> Self {
        MolsFamily {
            n: order,
            squares: self.squares.iter().map(|s| s.enlarged(order)).collect(),
        }
    }

    pub fn is_embedded_in(&self, other: &MolsFamily) -> bool {
        self.squares.len() == other.squares.len()
            && self
                .squares
                .iter()
                .zip(&other.squares)
                .all(|(a, b)| a.is_embedded_in(b))
    }
}

/// Check each square and pairwise orthogonality on cells filled in both.
pub fn validate_mols(squares: Vec<PartialLatinSquare>) -> Result<MolsFamily> {
    let Some(first) = squares.first() else {
        return Err(Error::input("a family needs at least one square"));
    };
    let n = first.n;
    for (idx, s) in squares.iter().enumerate() {
        if s.n != n {
            return Err(Error::input(format!(
                "square {idx} has order {}, expected {n}",
                s.n
            )));
        }
        s.check()
            .map_err(|e| Error::input(format!("square {idx}: {}", strip(&e))))?;
    }
    for a in 0..squares.len() {
        for b in a + 1..squares.len() {
            let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
            for i in 0..n {
                for j in 0..n {
                    let (Some(x), Some(y)) = (squares[a].get(i, j), squares[b].get(i, j)) else {
                        continue;
                    };
                    if let Some(&(pi, pj)) = seen.get(&(x, y)) {
                        return Err(Error::input(format!(
                            "squares {a} and {b} not orthogonal: cells ({pi}, {pj}) and ({i}, {j}) both hold ({}, {})",
                            x + 1,
                            y + 1
                        )));
                    }
                    seen.insert((x, y), (i, j));
                }
            }
        }
    }
    Ok(MolsFamily { n, squares })
}

fn strip(e: &Error) -> String {
    match e {
        Error::Input(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Edge-disjoint cliques in the complete `k`-partite graph with parts of
/// size `n`. A clique lists, per part, the label of its vertex there (if
/// any); vertex `(p, x)` is numbered `p*n + x` in the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliqueFamily {
    k: usize,
    n: usize,
    cliques: Vec<Vec<Option<usize>>>,
}

impl CliqueFamily {
    pub fn new(k: usize, n: usize, cliques: Vec<Vec<Option<usize>>>) -> Result<Self> {
        if k < 3 {
            return Err(Error::input(format!("host needs at least 3 parts, got {k}")));
        }
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (idx, c) in cliques.iter().enumerate() {
            if c.len() != k {
                return Err(Error::input(format!("clique {idx} lists {} parts, expected {k}", c.len())));
            }
            if c[0].is_none() || c[1].is_none() {
                return Err(Error::input(format!("clique {idx} misses part 0 or part 1")));
            }
            if c.iter().flatten().count() < 3 {
                return Err(Error::input(format!("clique {idx} has fewer than 3 vertices")));
            }
            if let Some(&x) = c.iter().flatten().find(|&&x| x >= n) {
                return Err(Error::input(format!("clique {idx}: label {x} out of range 0..{n}")));
            }
            let verts: Vec<usize> = vertices_of(c, n);
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    if let Some(prev) = owner.insert((u, v), idx) {
                        return Err(Error::input(format!(
                            "cliques {prev} and {idx} share edge ({u}, {v})"
                        )));
                    }
                }
            }
        }
        Ok(CliqueFamily { k, n, cliques })
    }

    pub fn parts(&self) -> usize {
        self.k
    }

    pub fn part_size(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[Vec<Option<usize>>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Cliques as ascending host vertex lists.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        self.cliques.iter().map(|c| vertices_of(c, self.n)).collect()
    }

    pub fn host(&self) -> Result<MultipartiteGraph> {
        MultipartiteGraph::complete_balanced(self.k, self.n)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for vs in self.vertex_sets() {
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn vertices_of(c: &[Option<usize>], n: usize) -> Vec<usize> {
    c.iter()
        .enumerate()
        .filter_map(|(p, x)| x.map(|x| p * n + x))
        .collect()
}

/// One clique per cell filled in some square: row in part 0, column in part
/// 1, and the symbol of square `t` in part `t + 2`.
pub fn mols_to_cliques(fam: &MolsFamily, r: usize) -> Result<CliqueFamily> {
    if r < 3 || fam.len() + 2 != r {
        return Err(Error::input(format!(
            "{} squares do not match r = {r}",
            fam.len()
        )));
    }
    let n = fam.n;
    let mut cliques = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if fam.squares.iter().all(|s| s.get(i, j).is_none()) {
                continue;
            }
            let mut c = vec![Some(i), Some(j)];
            c.extend(fam.squares.iter().map(|s| s.get(i, j)));
            cliques.push(c);
        }
    }
    CliqueFamily::new(r, n, cliques)
}

/// Read a K_k-decomposition of the complete `k`-partite graph with parts of
/// size `n` as `k - 2` complete orthogonal squares.
pub fn decomposition_to_mols(dec: &Certificate, k: usize, n: usize) -> Result<MolsFamily> {
    let Certificate::Decomposition { k: ck, cliques } = dec else {
        return Err(Error::input(format!("expected a decomposition, got a {}", dec.kind())));
    };
    if *ck != k || k < 3 || n == 0 {
        return Err(Error::input(format!(
            "decomposition into K_{ck} does not fit {k} parts of size {n}"
        )));
    }
    let host = MultipartiteGraph::complete_balanced(k, n)?;
    if let Some(msg) = verify(host.graph(), dec)?.violation() {
        return Err(Error::input(format!("invalid multipartite decomposition: {msg}")));
    }
    let tuples = cliques.iter().map(|c| {
        let mut t = vec![0; k];
        for &v in c {
            t[v / n] = v % n;
        }
        t
    });
    squares_from_tuples(k, n, tuples)
}

/// Read a clique family as partial orthogonal squares: clique `(i, j, s..)`
/// fills cell `(i, j)`, leaving a square's cell empty when the clique misses
/// that part.
pub fn cliques_to_mols(cf: &CliqueFamily) -> Result<MolsFamily> {
    let (k, n) = (cf.k, cf.n);
    let mut squares = vec![vec![None; n * n]; k - 2];
    for c in &cf.cliques {
        let (i, j) = (c[0].expect("part 0"), c[1].expect("part 1"));
        for (s, sq) in squares.iter_mut().enumerate() {
            sq[i * n + j] = c[s + 2];
        }
    }
    let squares = squares
        .into_iter()
        .map(|cells| PartialLatinSquare::new(n, cells))
        .collect::<Result<Vec<_>>>()?;
    validate_mols(squares)
}

fn squares_from_tuples(
    k: usize,
    n: usize,
    tuples: impl Iterator<Item = Vec<usize>>,
) -> Result<MolsFamily> {
    let mut squares = vec![vec![None; n * n]; k - 2];
    for t in tuples {
        for (s, sq) in squares.iter_mut().enumerate() {
            sq[t[0] * n + t[1]] = Some(t[s + 2]);
        }
    }
    let squares = squares
        .into_iter()
        .map(|cells| PartialLatinSquare::new(n, cells))
        .collect::<Result<Vec<_>>>()?;
    validate_mols(squares)
}

/// Vertices are `(part, label)` pairs during extension.
type Vertex = (usize, usize);

/// Result of [`extend_cliques_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub family: CliqueFamily,
    /// The greedy high-incidence vertices, in selection order.
    pub q: Vec<Vertex>,
    /// Indices of cliques with at least two vertices in `q`.
    pub bad_cliques: Vec<usize>,
    /// Labels added per part.
    pub extra: usize,
}

pub fn default_extension_budget(k: usize, m: usize) -> usize {
    ceil_mul_sqrt(8 * k, m)
}

/// Grow every clique to size `k`, adding `extra` new labels to each part
/// (default `⌈8k√m⌉`), keeping the cliques edge-disjoint.
pub fn extend_cliques(cf: &CliqueFamily, k: usize, extra: Option<usize>) -> Result<CliqueFamily> {
    extend_cliques_traced(cf, k, extra).map(|e| e.family)
}

pub fn extend_cliques_traced(cf: &CliqueFamily, k: usize, extra: Option<usize>) -> Result<Extension> {
    if cf.k != k {
        return Err(Error::input(format!("family has {} parts, expected {k}", cf.k)));
    }
    let m = cf.len();
    let n = cf.n;
    let extra = extra.unwrap_or_else(|| default_extension_budget(k, m));
    let size = n + extra;
    let split = n + extra.div_ceil(2);
    let t_prime = n..split;
    let t_second = split..size;

    let mut cliques: Vec<Vec<Option<usize>>> = cf.cliques.clone();
    let mut used: std::collections::HashSet<(Vertex, Vertex)> = std::collections::HashSet::new();
    let mut load: HashMap<Vertex, usize> = HashMap::new();
    for c in &cliques {
        let vs = members(c);
        for (i, &u) in vs.iter().enumerate() {
            *load.entry(u).or_default() += 1;
            for &v in &vs[i + 1..] {
                used.insert((u, v));
            }
        }
    }

    // Q: repeatedly the vertex on most cliques not yet touching Q
    let q_size = ceil_mul_sqrt(1, m);
    let mut q: Vec<Vertex> = Vec::new();
    let mut touched = vec![false; m];
    while q.len() < q_size.min(k * n) {
        let mut count: HashMap<Vertex, usize> = HashMap::new();
        for (idx, c) in cliques.iter().enumerate() {
            if !touched[idx] {
                for v in members(c) {
                    *count.entry(v).or_default() += 1;
                }
            }
        }
        let pick = (0..k)
            .flat_map(|p| (0..n).map(move |x| (p, x)))
            .filter(|v| !q.contains(v))
            .max_by_key(|v| (count.get(v).copied().unwrap_or(0), std::cmp::Reverse(*v)))
            .expect("vertices remain");
        for (idx, c) in cliques.iter().enumerate() {
            if c[pick.0] == Some(pick.1) {
                touched[idx] = true;
            }
        }
        q.push(pick);
    }
    let bad_cliques: Vec<usize> = (0..m)
        .filter(|&i| members(&cliques[i]).iter().filter(|v| q.contains(v)).count() >= 2)
        .collect();

    let is_bad = |i: usize| bad_cliques.binary_search(&i).is_ok();
    let order = bad_cliques
        .iter()
        .copied()
        .chain((0..m).filter(|&i| !is_bad(i)));
    for idx in order {
        for part in 0..k {
            if cliques[idx][part].is_some() {
                continue;
            }
            let current = members(&cliques[idx]);
            let free = |x: usize| {
                let cand = (part, x);
                current.iter().all(|&u| !used.contains(&edge(u, cand)))
            };
            let chosen = if is_bad(idx) {
                t_prime.clone().find(|&x| free(x))
            } else {
                (0..n)
                    .chain(t_second.clone())
                    .filter(|&x| free(x))
                    .min_by_key(|&x| (load.get(&(part, x)).copied().unwrap_or(0), x))
            };
            let Some(x) = chosen else {
                return Err(Error::infeasible(format!(
                    "clique extension ran out of vertices in part {part} with {extra} added labels"
                )));
            };
            for &u in &current {
                used.insert(edge(u, (part, x)));
            }
            *load.entry((part, x)).or_default() += 1;
            cliques[idx][part] = Some(x);
        }
    }
    Ok(Extension {
        family: CliqueFamily::new(k, size, cliques)?,
        q,
        bad_cliques,
        extra,
    })
}

fn members(c: &[Option<usize>]) -> Vec<Vertex> {
    c.iter()
        .enumerate()
        .filter_map(|(p, x)| x.map(|x| (p, x)))
        .collect()
}

fn edge(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

/// Exact completion of a family at its own order, as an exact cover of the
/// edges of the complete `(q+2)`-partite graph by transversals, where a
/// transversal touching an edge of an existing cell clique must contain that
/// whole clique.
pub fn complete_mols(fam: &MolsFamily, limits: &Limits) -> Result<Option<MolsFamily>> {
    let k = fam.len() + 2;
    let n = fam.n;
    if n == 0 {
        return Ok(Some(fam.clone()));
    }
    let cf = mols_to_cliques(fam, k)?;
    let pair_base = |a: usize, b: usize| -> usize {
        // index of the part pair (a, b), a < b, in lexicographic order
        a * (2 * k - a - 1) / 2 + (b - a - 1)
    };
    let edge_item = |a: usize, x: usize, b: usize, y: usize| pair_base(a, b) * n * n + x * n + y;
    let items = k * (k - 1) / 2 * n * n;
    let mut owner = vec![usize::MAX; items];
    for (idx, c) in cf.cliques.iter().enumerate() {
        for a in 0..k {
            for b in a + 1..k {
                if let (Some(x), Some(y)) = (c[a], c[b]) {
                    owner[edge_item(a, x, b, y)] = idx;
                }
            }
        }
    }
    let mut deadline = limits.start("latin completion");
    let mut ec = ExactCover::new(items, 0);
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut tuple = vec![0usize; k];
    let mut row = Vec::with_capacity(k * (k - 1) / 2);
    // odometer over all transversals, pruning on the first forbidden edge
    fn gen(
        part: usize,
        k: usize,
        n: usize,
        tuple: &mut Vec<usize>,
        ok: &dyn Fn(&[usize], usize) -> bool,
        out: &mut dyn FnMut(&[usize]),
    ) {
        if part == k {
            out(tuple);
            return;
        }
        for x in 0..n {
            tuple[part] = x;
            if ok(tuple, part) {
                gen(part + 1, k, n, tuple, ok, out);
            }
        }
    }
    let cliques = &cf.cliques;
    let ok = |t: &[usize], p: usize| -> bool {
        (0..p).all(|a| {
            let o = owner[edge_item(a, t[a], p, t[p])];
            o == usize::MAX
                || cliques[o]
                    .iter()
                    .take(p + 1)
                    .enumerate()
                    .all(|(q, l)| l.is_none_or(|l| t[q] == l))
        })
    };
    let forbidden_late = |t: &[usize]| -> bool {
        // a clique reached through an early edge must also match later parts
        for a in 0..k {
            for b in a + 1..k {
                let o = owner[edge_item(a, t[a], b, t[b])];
                if o != usize::MAX
                    && !cliques[o]
                        .iter()
                        .enumerate()
                        .all(|(q, l)| l.is_none_or(|l| t[q] == l))
                {
                    return true;
                }
            }
        }
        false
    };
    gen(0, k, n, &mut tuple, &ok, &mut |t: &[usize]| {
        if !forbidden_late(t) {
            tuples.push(t.to_vec());
        }
    });
    deadline.check()?;
    for t in &tuples {
        row.clear();
        for a in 0..k {
            for b in a + 1..k {
                row.push(edge_item(a, t[a], b, t[b]));
            }
        }
        ec.add_option(&row);
    }
    let Some(rows) = ec.solve(&mut deadline)? else {
        return Ok(None);
    };
    squares_from_tuples(k, n, rows.into_iter().map(|r| tuples[r].clone())).map(Some)
}

/// Exact completion of a single partial Latin square at its own order.
pub fn complete_latin(sq: &PartialLatinSquare, limits: &Limits) -> Result<Option<PartialLatinSquare>> {
    let fam = validate_mols(vec![sq.clone()])?;
    Ok(complete_mols(&fam, limits)?.map(|f| f.squares[0].clone()))
}
