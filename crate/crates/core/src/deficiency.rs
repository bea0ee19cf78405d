//! Deficiency of graphs with respect to Hamiltonicity and clique factors:
//! closed-form extremal edge counts, exact deficiency by search, and an
//! exhaustive maximum-edges oracle.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{binom2, Graph};
use crate::search::Limits;
use crate::solvers::{chvatal_sufficient, find_kk_factor, is_hamiltonian, path_cover_number};

/// Largest order enumerated by [`brute_max_edges`] unless a caller asks for more.
pub const BRUTE_DEFAULT_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HamRegime {
    /// Isolated vertices are optimal.
    SmallT,
    /// A large independent set is optimal.
    LargeT,
    /// Both constructions are optimal.
    Tie,
}

impl HamRegime {
    pub fn as_str(&self) -> &'static str {
        match self {
            HamRegime::SmallT => "small-t",
            HamRegime::LargeT => "large-t",
            HamRegime::Tie => "tie",
        }
    }
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HamBound {
    pub n: usize,
    pub t: usize,
    /// `None` when `t >= n`: every `G * K_t` is then Hamiltonian.
    pub max_edges: Option<usize>,
    pub regime: HamRegime,
    /// Parity of `n + t`.
    pub parity: Parity,
}

/// Missing edges forced when the `i` lowest-degree vertices of the join
/// violate Chvátal's condition.
fn chvatal_missing(n: usize, t: usize, i: usize) -> usize {
    i * (n + t - 1 - i) - binom2(i)
}

/// Maximum number of edges of an `n`-vertex `G` with `G * K_t` not
/// Hamiltonian.
pub fn ham_max_edges(n: usize, t: usize) -> Result<HamBound> {
    if n < 3 {
        return Err(Error::input(format!("need n >= 3, got {n}")));
    }
    if t == 0 {
        return Err(Error::input("t = 0 is the classical case, see ore_bound"));
    }
    let parity = if (n + t).is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let (u, threshold) = match parity {
        Parity::Even => ((n + t) / 2 - 1, n + 4),
        Parity::Odd => ((n + t - 1) / 2, n + 1),
    };
    let regime = match (5 * t).cmp(&threshold) {
        std::cmp::Ordering::Less => HamRegime::SmallT,
        std::cmp::Ordering::Equal => HamRegime::Tie,
        std::cmp::Ordering::Greater => HamRegime::LargeT,
    };
    let max_edges = (t < n).then(|| {
        let missing = chvatal_missing(n, t, t).min(chvatal_missing(n, t, u));
        binom2(n) - missing
    });
    Ok(HamBound {
        n,
        t,
        max_edges,
        regime,
        parity,
    })
}

/// Maximum number of edges of a non-Hamiltonian graph on `n` vertices.
pub fn ore_bound(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::input(format!("need n >= 3, got {n}")));
    }
    Ok(binom2(n) - (n - 2))
}

/// Smallest `t` such that `G * K_t` is Hamiltonian, scanning `t = 0..=cap`.
pub fn ham_deficiency(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.order();
    if n == 0 {
        return Err(Error::input("deficiency of the empty graph"));
    }
    for t in 0..=cap {
        if n + t < 3 {
            continue;
        }
        let joined = g.join(t)?;
        if chvatal_sufficient(&joined)? || is_hamiltonian(&joined)?.is_some() {
            return Ok(t);
        }
    }
    Err(Error::Capacity {
        what: "hamiltonian deficiency",
        needed: cap + 1,
        limit: cap,
    })
}

/// Whether the deficiency of a non-Hamiltonian `g` equals its path-cover
/// number. Holds for every such graph with at least two vertices.
pub fn path_cover_equivalence_check(g: &Graph) -> Result<bool> {
    let n = g.order();
    if n >= 3 && is_hamiltonian(g)?.is_some() {
        return Err(Error::input("graph is Hamiltonian"));
    }
    let (mu, _) = path_cover_number(g)?;
    Ok(ham_deficiency(g, n.max(2))? == mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleBound {
    pub n: usize,
    pub t: usize,
    /// Number of low-degree vertices in the extremal graph, `⌈(t+1)/2⌉`.
    pub k: usize,
    pub max_edges: usize,
    /// Whether `t <= n/1000`. The bound is only proved there, and only for
    /// `n` beyond an unspecified threshold.
    pub proven_regime: bool,
}

/// Largest edge count of an `n`-vertex `G` with `G * K_t` lacking a triangle
/// factor, per the closed form for small `t`.
pub fn triangle_max_edges(n: usize, t: usize) -> Result<TriangleBound> {
    if t == 0 {
        return Err(Error::input("need t >= 1"));
    }
    if !(n + t).is_multiple_of(3) {
        return Err(Error::input(format!("3 does not divide n + t = {}", n + t)));
    }
    let k = (t + 2) / 2;
    let rest = if t % 2 == 1 { n.checked_sub(k) } else { n.checked_sub(k + 1) };
    let missing = rest.map(|r| binom2(k) + k * r).filter(|&m| m <= binom2(n));
    let Some(missing) = missing else {
        return Err(Error::input(format!("n = {n} is too small for t = {t}")));
    };
    Ok(TriangleBound {
        n,
        t,
        k,
        max_edges: binom2(n) - missing,
        proven_regime: 1000 * t <= n,
    })
}

/// Smallest `t` with `k | n + t` such that `G * K_t` has a `K_k`-factor,
/// scanning that residue class up to `cap`.
pub fn factor_deficiency(g: &Graph, k: usize, cap: usize, limits: &Limits) -> Result<usize> {
    if k < 2 {
        return Err(Error::input(format!("need k >= 2, got {k}")));
    }
    let n = g.order();
    let mut t = (k - n % k) % k;
    while t <= cap {
        if find_kk_factor(&g.join(t)?, k, limits)?.is_some() {
            return Ok(t);
        }
        t += k;
    }
    Err(Error::Capacity {
        what: "factor deficiency",
        needed: t,
        limit: cap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Hamiltonian,
    TriangleFactor,
}

impl Property {
    pub fn as_str(&self) -> &'static str {
        match self {
            Property::Hamiltonian => "hamiltonian",
            Property::TriangleFactor => "triangle-factor",
        }
    }

    /// Whether `G * K_t` has the property.
    pub fn holds(&self, g: &Graph, t: usize) -> Result<bool> {
        let joined = g.join(t)?;
        match self {
            Property::Hamiltonian => {
                Ok(joined.order() >= 3 && (chvatal_sufficient(&joined)? || is_hamiltonian(&joined)?.is_some()))
            }
            Property::TriangleFactor => Ok(find_kk_factor(&joined, 3, &Limits::default())?.is_some()),
        }
    }
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ham" | "hamiltonian" => Ok(Property::Hamiltonian),
            "triangle" | "triangle-factor" => Ok(Property::TriangleFactor),
            _ => Err(Error::input(format!("unknown property {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteMax {
    /// `None` when every graph on `n` vertices gives a join with the property.
    pub max_edges: Option<usize>,
    /// First witness at the maximum in edge-mask order.
    pub witness: Option<Graph>,
}

fn check_brute(n: usize, t: usize, property: Property, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Capacity {
            what: "edge-subset enumeration",
            needed: n,
            limit,
        });
    }
    if n == 0 {
        return Err(Error::input("need n >= 1"));
    }
    if property == Property::TriangleFactor && !(n + t).is_multiple_of(3) {
        return Err(Error::input(format!("3 does not divide n + t = {}", n + t)));
    }
    Ok(())
}

/// Every edge mask on `edges` bits with exactly `m` set, ascending.
fn masks_with_weight(edges: usize, m: usize) -> Vec<u64> {
    if m > edges {
        return Vec::new();
    }
    if m == 0 {
        return vec![0];
    }
    let end = 1u64 << edges;
    let mut out = Vec::new();
    let mut x = (1u64 << m) - 1;
    while x < end {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

fn lacks(n: usize, t: usize, property: Property, mask: u64) -> Result<bool> {
    Ok(!property.holds(&Graph::from_edge_mask(n, mask), t)?)
}

/// Exact maximum of `e(G)` over `n`-vertex graphs with `G * K_t` lacking
/// `property`, by enumeration of labelled graphs level by level from the
/// top. Both properties survive adding edges, so the first level holding a
/// witness is the maximum.
pub fn brute_max_edges(n: usize, t: usize, property: Property, limit: usize) -> Result<BruteMax> {
    check_brute(n, t, property, limit)?;
    let edges = binom2(n);
    for m in (0..=edges).rev() {
        let masks = masks_with_weight(edges, m);
        let found = masks
            .par_iter()
            .map(|&mask| lacks(n, t, property, mask).map(|l| l.then_some(mask)))
            .filter_map(|r| r.transpose())
            .find_first(|_| true)
            .transpose()?;
        if let Some(mask) = found {
            return Ok(BruteMax {
                max_edges: Some(m),
                witness: Some(Graph::from_edge_mask(n, mask)),
            });
        }
    }
    Ok(BruteMax {
        max_edges: None,
        witness: None,
    })
}

/// One representative of each isomorphism class of graphs with `m` edges
/// whose join lacks `property`, ordered by canonical key.
pub fn witness_classes(n: usize, t: usize, property: Property, m: usize, limit: usize) -> Result<Vec<Graph>> {
    check_brute(n, t, property, limit.min(8))?;
    let masks = masks_with_weight(binom2(n), m);
    let mut keyed: Vec<(u64, u64)> = masks
        .par_iter()
        .map(|&mask| {
            let g = Graph::from_edge_mask(n, mask);
            Ok((!property.holds(&g, t)?).then(|| (g.canonical_key(), mask)))
        })
        .filter_map(|r: Result<Option<(u64, u64)>>| r.transpose())
        .collect::<Result<_>>()?;
    keyed.sort_unstable();
    keyed.dedup_by_key(|&mut (key, _)| key);
    Ok(keyed.into_iter().map(|(_, mask)| Graph::from_edge_mask(n, mask)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ham_bound_examples() {
        let b = ham_max_edges(6, 1).unwrap();
        assert_eq!((b.max_edges, b.regime, b.parity), (Some(10), HamRegime::SmallT, Parity::Odd));
        let b = ham_max_edges(6, 3).unwrap();
        assert_eq!((b.max_edges, b.regime), (Some(5), HamRegime::LargeT));
        let b = ham_max_edges(6, 2).unwrap();
        assert_eq!((b.max_edges, b.regime, b.parity), (Some(6), HamRegime::Tie, Parity::Even));
        assert_eq!(ham_max_edges(3, 3).unwrap().max_edges, None);
        assert!(ham_max_edges(6, 0).is_err());
        assert!(ham_max_edges(2, 1).is_err());
    }

    #[test]
    fn ore_examples() {
        assert_eq!(ore_bound(5).unwrap(), 7);
        assert_eq!(ore_bound(3).unwrap(), 2);
        assert_eq!(ore_bound(10).unwrap(), 37);
    }

    #[test]
    fn ham_deficiency_examples() {
        assert_eq!(ham_deficiency(&Graph::cycle(5), 5).unwrap(), 0);
        assert_eq!(ham_deficiency(&Graph::path(4), 4).unwrap(), 1);
        assert_eq!(ham_deficiency(&Graph::empty(4).unwrap(), 4).unwrap(), 4);
        assert!(matches!(ham_deficiency(&Graph::empty(4).unwrap(), 3), Err(Error::Capacity { .. })));
    }

    #[test]
    fn equivalence_examples() {
        assert!(path_cover_equivalence_check(&Graph::path(4)).unwrap());
        assert!(path_cover_equivalence_check(&Graph::empty(4).unwrap()).unwrap());
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(path_cover_equivalence_check(&two).unwrap());
        assert!(path_cover_equivalence_check(&Graph::cycle(4)).is_err());
        // a single vertex needs two partners but is one path
        assert!(!path_cover_equivalence_check(&Graph::empty(1).unwrap()).unwrap());
    }

    #[test]
    fn triangle_bound_examples() {
        assert_eq!(triangle_max_edges(8, 1).unwrap().max_edges, 21);
        assert_eq!(triangle_max_edges(7, 2).unwrap().max_edges, 12);
        let b = triangle_max_edges(6, 3).unwrap();
        assert_eq!((b.k, b.max_edges, b.proven_regime), (2, 6, false));
        assert!(triangle_max_edges(3000, 3).unwrap().proven_regime);
        assert!(triangle_max_edges(7, 1).is_err());
    }

    #[test]
    fn factor_deficiency_examples() {
        let l = Limits::default();
        assert_eq!(factor_deficiency(&Graph::complete(3), 3, 9, &l).unwrap(), 0);
        assert_eq!(factor_deficiency(&Graph::empty(3).unwrap(), 3, 9, &l).unwrap(), 6);
        assert_eq!(factor_deficiency(&Graph::cycle(4), 3, 9, &l).unwrap(), 2);
        assert!(factor_deficiency(&Graph::empty(3).unwrap(), 3, 3, &l).is_err());
    }

    #[test]
    fn weight_masks() {
        assert_eq!(masks_with_weight(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(masks_with_weight(3, 0), vec![0]);
        assert_eq!(masks_with_weight(3, 3), vec![0b111]);
        assert!(masks_with_weight(3, 4).is_empty());
    }

    #[test]
    fn brute_examples() {
        let r = brute_max_edges(4, 1, Property::Hamiltonian, 7).unwrap();
        assert_eq!(r.max_edges, Some(3));
        assert!(!Property::Hamiltonian.holds(r.witness.as_ref().unwrap(), 1).unwrap());
        let classes = witness_classes(4, 1, Property::Hamiltonian, 3, 7).unwrap();
        let keys: Vec<u64> = classes.iter().map(Graph::canonical_key).collect();
        assert!(keys.contains(&Graph::star(4).canonical_key()));
        assert_eq!(classes.len(), 2);
        assert_eq!(brute_max_edges(3, 3, Property::Hamiltonian, 7).unwrap().max_edges, None);
        assert!(brute_max_edges(8, 1, Property::Hamiltonian, 7).is_err());
        assert!(brute_max_edges(5, 2, Property::TriangleFactor, 7).is_err());
    }
}
