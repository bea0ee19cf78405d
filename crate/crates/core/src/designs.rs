//! Partial and complete (n,k)-designs.

use crate::certificate::{verify, Certificate};
use crate::error::{Error, Result};
use crate::graph::{binom2, Graph};

/// Blocks of size `k` on points `0..n`, every pair in at most one block.
/// Blocks are kept ascending and the block list lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialDesign {
    n: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

/// A design in which every pair of points lies in exactly one block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompleteDesign(PartialDesign);

impl PartialDesign {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of point pairs covered by some block.
    pub fn covered_pairs(&self) -> usize {
        self.blocks.len() * binom2(self.k)
    }

    pub fn uncovered_pairs(&self) -> usize {
        binom2(self.n) - self.covered_pairs()
    }

    pub fn contains_block(&self, block: &[usize]) -> bool {
        let mut b = block.to_vec();
        b.sort_unstable();
        self.blocks.binary_search(&b).is_ok()
    }

    /// Succeeds when every pair is covered.
    pub fn into_complete(self) -> Result<CompleteDesign> {
        if self.uncovered_pairs() != 0 {
            let g = design_to_graph(&self).0;
            let (u, v) = g.edges().next().expect("an uncovered pair exists");
            return Err(Error::input(format!("pair ({u}, {v}) is not covered")));
        }
        Ok(CompleteDesign(self))
    }
}

impl CompleteDesign {
    pub fn as_partial(&self) -> &PartialDesign {
        &self.0
    }

    pub fn into_partial(self) -> PartialDesign {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.n
    }

    pub fn block_size(&self) -> usize {
        self.0.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.0.blocks
    }
}

/// Check the block list and return it as a validated design.
pub fn validate_partial_design(n: usize, k: usize, blocks: Vec<Vec<usize>>) -> Result<PartialDesign> {
    if k < 3 {
        return Err(Error::input(format!("block size must be at least 3, got {k}")));
    }
    let mut owner = vec![usize::MAX; n * n];
    let mut sorted = Vec::with_capacity(blocks.len());
    for (idx, block) in blocks.into_iter().enumerate() {
        if block.len() != k {
            return Err(Error::input(format!(
                "block {idx} has {} points, expected {k}",
                block.len()
            )));
        }
        let mut b = block;
        b.sort_unstable();
        if let Some(&p) = b.iter().find(|&&p| p >= n) {
            return Err(Error::input(format!("block {idx}: point {p} out of range 0..{n}")));
        }
        if let Some(w) = b.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("block {idx} repeats point {}", w[0])));
        }
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                let slot = &mut owner[u * n + v];
                if *slot != usize::MAX {
                    return Err(Error::input(format!(
                        "pair ({u}, {v}) lies in blocks {} and {idx}",
                        *slot
                    )));
                }
                *slot = idx;
            }
        }
        sorted.push(b);
    }
    sorted.sort();
    Ok(PartialDesign {
        n,
        k,
        blocks: sorted,
    })
}

pub fn validate_complete_design(n: usize, k: usize, blocks: Vec<Vec<usize>>) -> Result<CompleteDesign> {
    validate_partial_design(n, k, blocks)?.into_complete()
}

/// The divisibility conditions `(k-1) | (n-1)` and `C(k,2) | C(n,2)`.
///
/// Necessary for an (n,k)-design; for `k = 3` also sufficient. For larger `k`
/// they are sufficient only for large `n`.
pub fn design_admissible(n: usize, k: usize) -> bool {
    if k < 2 || n < 1 {
        return false;
    }
    (n - 1).is_multiple_of(k - 1) && binom2(n).is_multiple_of(binom2(k))
}

/// `K_n` with the clique on every block removed, and the removed blocks.
pub fn design_to_graph(design: &PartialDesign) -> (Graph, Vec<Vec<usize>>) {
    let g = Graph::complete(design.n).without_edges(design.blocks.iter().flat_map(|b| {
        b.iter()
            .enumerate()
            .flat_map(move |(i, &u)| b[i + 1..].iter().map(move |&v| (u, v)))
    }));
    (g, design.blocks.clone())
}

/// Read a K_k-decomposition of `K_n` as a complete design.
pub fn decomposition_to_design(n: usize, k: usize, dec: &Certificate) -> Result<CompleteDesign> {
    let Certificate::Decomposition { k: ck, cliques } = dec else {
        return Err(Error::input(format!("expected a decomposition, got a {}", dec.kind())));
    };
    if *ck != k {
        return Err(Error::input(format!("decomposition into K_{ck}, expected K_{k}")));
    }
    if let Some(msg) = verify(&Graph::complete(n), dec)?.violation() {
        return Err(Error::input(format!("invalid decomposition of K_{n}: {msg}")));
    }
    validate_complete_design(n, k, cliques.clone())
}
