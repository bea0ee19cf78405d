//! Acceptance suite. Runs every criterion at its stated tolerance and time
//! limit, printing one PASS/FAIL line each. Exits non-zero on any failure.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use deficiency::constructions::{design_sharpness, evans_sharpness, ham_extremal, triangle_extremal};
use deficiency::deficiency::{
    brute_max_edges, ham_deficiency, ham_max_edges, triangle_max_edges, witness_classes, HamRegime, Property,
};
use deficiency::designs::{validate_complete_design, validate_partial_design, PartialDesign};
use deficiency::embed::{embed_design, embed_mols, EmbedOptions};
use deficiency::latin::{
    complete_latin, decomposition_to_mols, extend_cliques, mols_to_cliques, validate_mols, CliqueFamily,
    PartialLatinSquare,
};
use deficiency::solvers::{find_kk_decomposition, find_kk_factor, is_hamiltonian, path_cover_number};
use deficiency::{verify, Certificate, Graph, Limits, MultipartiteGraph};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ham_bound_exact() -> Outcome {
    let mut grid: Vec<(usize, usize)> = (3..=6).flat_map(|n| (1..=3).map(move |t| (n, t))).collect();
    grid.extend([(7, 1), (7, 2)]);
    for &(n, t) in &grid {
        let formula = ham_max_edges(n, t).map_err(|e| e.to_string())?.max_edges;
        let oracle = brute_max_edges(n, t, Property::Hamiltonian, 7)
            .map_err(|e| e.to_string())?
            .max_edges;
        ensure(formula == oracle, || format!("(n,t)=({n},{t}): formula {formula:?}, oracle {oracle:?}"))?;
    }
    Ok(format!("{} (n,t) pairs agree", grid.len()))
}

fn ham_extremal_classes() -> Outcome {
    let mut ties = Vec::new();
    for n in 3..=6 {
        for t in 1..=3 {
            let bound = ham_max_edges(n, t).map_err(|e| e.to_string())?;
            let Some(m) = bound.max_edges else {
                let found = brute_max_edges(n, t, Property::Hamiltonian, 7).map_err(|e| e.to_string())?;
                ensure(found.witness.is_none(), || format!("({n},{t}): witness for a vacuous bound"))?;
                continue;
            };
            let classes = witness_classes(n, t, Property::Hamiltonian, m, 7).map_err(|e| e.to_string())?;
            let expected = if bound.regime == HamRegime::Tie { 2 } else { 1 };
            ensure(classes.len() == expected, || {
                format!("({n},{t}): {} classes, expected {expected}", classes.len())
            })?;
            let mut got: Vec<u64> = classes.iter().map(Graph::canonical_key).collect();
            let mut want: Vec<u64> = ham_extremal(n, t)
                .map_err(|e| e.to_string())?
                .iter()
                .map(Graph::canonical_key)
                .collect();
            got.sort_unstable();
            want.sort_unstable();
            ensure(got == want, || format!("({n},{t}): oracle classes differ from the constructions"))?;
            if expected == 2 {
                ties.push(format!("({n},{t})"));
            }
        }
    }
    ensure(ties.contains(&"(6,2)".to_string()), || "no tie at (6,2)".into())?;
    Ok(format!("two classes at {}, one elsewhere", ties.join(" ")))
}

fn path_cover_equivalence() -> Outcome {
    let results: Vec<Result<Option<bool>, String>> = (0u64..1 << 15)
        .into_par_iter()
        .map(|mask| {
            let g = Graph::from_edge_mask(6, mask);
            if is_hamiltonian(&g).map_err(|e| e.to_string())?.is_some() {
                return Ok(None);
            }
            let d = ham_deficiency(&g, 6).map_err(|e| e.to_string())?;
            let (mu, _) = path_cover_number(&g).map_err(|e| e.to_string())?;
            Ok(Some(d == mu))
        })
        .collect();
    let mut checked = 0;
    for (mask, r) in results.into_iter().enumerate() {
        match r? {
            Some(true) => checked += 1,
            Some(false) => return Err(format!("mask {mask}: deficiency differs from path cover number")),
            None => {}
        }
    }
    Ok(format!("{checked} non-Hamiltonian labelled graphs agree"))
}

fn triangle_extremal_graphs() -> Outcome {
    let lim = Limits::default();
    let mut count = 0;
    for n in 6..=12 {
        for t in 1..=3 {
            if (n + t) % 3 != 0 {
                continue;
            }
            let g = triangle_extremal(n, t).map_err(|e| e.to_string())?;
            let b = triangle_max_edges(n, t).map_err(|e| e.to_string())?;
            ensure(g.edge_count() == b.max_edges, || {
                format!("({n},{t}): {} edges, bound {}", g.edge_count(), b.max_edges)
            })?;
            let joined = g.join(t).map_err(|e| e.to_string())?;
            let factor = find_kk_factor(&joined, 3, &lim).map_err(|e| e.to_string())?;
            ensure(factor.is_none(), || format!("({n},{t}): join has a triangle factor"))?;
            count += 1;
        }
    }
    let mut report = Vec::new();
    for n in 3..=6 {
        for t in 1..=3 {
            if (n + t) % 3 != 0 {
                continue;
            }
            let Ok(b) = triangle_max_edges(n, t) else { continue };
            let o = brute_max_edges(n, t, Property::TriangleFactor, 7).map_err(|e| e.to_string())?;
            let shown = o.max_edges.map_or("none".to_string(), |m| m.to_string());
            report.push(format!("({n},{t}) formula {} oracle {shown}", b.max_edges));
        }
    }
    Ok(format!("{count} extremal graphs checked; upper side: {}", report.join(", ")))
}

fn random_partial_sts(rng: &mut StdRng) -> PartialDesign {
    let n = rng.gen_range(7..=15);
    let want = rng.gen_range(0..=5);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; n * n];
    let points: Vec<usize> = (0..n).collect();
    for _ in 0..200 {
        if blocks.len() == want {
            break;
        }
        let mut b: Vec<usize> = points.choose_multiple(rng, 3).copied().collect();
        b.sort_unstable();
        let pairs = [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])];
        if pairs.iter().any(|&(u, v)| used[u * n + v]) {
            continue;
        }
        for (u, v) in pairs {
            used[u * n + v] = true;
        }
        blocks.push(b);
    }
    validate_partial_design(n, 3, blocks).expect("generator keeps pairs disjoint")
}

fn embedding_validity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5757);
    let instances: Vec<PartialDesign> = (0..200).map(|_| random_partial_sts(&mut rng)).collect();
    let results: Vec<Result<usize, String>> = instances
        .par_iter()
        .map(|f| {
            let n = f.order();
            let emb = embed_design(f, &EmbedOptions::default()).map_err(|e| format!("n={n}: {e}"))?;
            let order = emb.order;
            let again = validate_complete_design(order, 3, emb.completed.blocks().to_vec())
                .map_err(|e| format!("n={n}: invalid output: {e}"))?;
            ensure(f.blocks().iter().all(|b| again.as_partial().contains_block(b)), || {
                format!("n={n}: input block missing")
            })?;
            ensure(order % 6 == 1 || order % 6 == 3, || format!("n={n}: order {order} inadmissible"))?;
            ensure(order <= 2 * n + 1, || format!("n={n}: order {order} above 2n+1"))?;
            Ok(order - n)
        })
        .collect();
    let extra = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let max = extra.iter().max().copied().unwrap_or(0);
    Ok(format!("200 instances valid, largest t = {max}"))
}

fn random_sparse_latin(rng: &mut StdRng) -> PartialLatinSquare {
    let n = rng.gen_range(4..=5);
    let filled = rng.gen_range(0..n);
    loop {
        let mut cells = vec![None; n * n];
        let positions: Vec<usize> = (0..n * n).collect();
        for &c in positions.choose_multiple(rng, filled) {
            cells[c] = Some(rng.gen_range(0..n));
        }
        if let Ok(sq) = PartialLatinSquare::new(n, cells) {
            return sq;
        }
    }
}

fn smetaniuk_check() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1a71);
    let squares: Vec<PartialLatinSquare> = (0..500).map(|_| random_sparse_latin(&mut rng)).collect();
    let lim = Limits::default();
    let results: Vec<Result<(), String>> = squares
        .par_iter()
        .map(|sq| {
            let done = complete_latin(sq, &lim)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no completion for {sq:?}"))?;
            ensure(done.order() == sq.order() && done.is_complete() && sq.is_embedded_in(&done), || {
                format!("bad completion for {sq:?}")
            })
        })
        .collect();
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("500 squares completed at their own order".into())
}

fn evans() -> Outcome {
    let lim = Limits::default();
    let mut orders = Vec::new();
    for n in 2..=5 {
        let sq = evans_sharpness(n).map_err(|e| e.to_string())?;
        let none = complete_latin(&sq, &lim).map_err(|e| e.to_string())?;
        ensure(none.is_none(), || format!("n={n}: completed at order n"))?;
        let fam = validate_mols(vec![sq]).map_err(|e| e.to_string())?;
        let emb = embed_mols(&fam, 3, &EmbedOptions::default()).map_err(|e| format!("n={n}: {e}"))?;
        validate_mols(emb.completed.squares().to_vec()).map_err(|e| e.to_string())?;
        ensure(emb.completed.is_complete() && fam.is_embedded_in(&emb.completed), || {
            format!("n={n}: output does not contain the input")
        })?;
        ensure(emb.order <= 2 * n, || format!("n={n}: order {} above 2n", emb.order))?;
        orders.push(format!("{n}->{}", emb.order));
    }
    Ok(format!("embedding orders {}", orders.join(" ")))
}

fn sorted(mut cliques: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    cliques
}

fn mols_round_trip() -> Outcome {
    let lim = Limits::default();
    let mut cases = vec![(4, 3)];
    cases.extend((1..=5).map(|n| (3, n)));
    for (k, n) in cases {
        let host = MultipartiteGraph::complete_balanced(k, n).map_err(|e| e.to_string())?;
        let dec = find_kk_decomposition(host.graph(), k, &lim)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("k={k} n={n}: no decomposition"))?;
        let Certificate::Decomposition { cliques, .. } = &dec else {
            return Err("unexpected certificate".into());
        };
        let fam = decomposition_to_mols(&dec, k, n).map_err(|e| e.to_string())?;
        let back = mols_to_cliques(&fam, k).map_err(|e| e.to_string())?.vertex_sets();
        ensure(sorted(back) == sorted(cliques.clone()), || format!("k={k} n={n}: round trip differs"))?;
    }
    Ok("K_{3,3,3,3} and K_{n,n,n} for n <= 5 round trip".into())
}

fn clique_extension() -> Outcome {
    let rows = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let cells = rows.iter().flatten().map(|&s| Some(s)).collect();
    let fam = validate_mols(vec![PartialLatinSquare::new(3, cells).map_err(|e| e.to_string())?])
        .map_err(|e| e.to_string())?;
    let triangles = mols_to_cliques(&fam, 3).map_err(|e| e.to_string())?;
    let padded = triangles
        .cliques()
        .iter()
        .map(|c| c.iter().copied().chain([None]).collect())
        .collect();
    let cf = CliqueFamily::new(4, 3, padded).map_err(|e| e.to_string())?;
    let ext = extend_cliques(&cf, 4, None).map_err(|e| e.to_string())?;
    ensure(ext.len() == 9, || format!("{} cliques", ext.len()))?;
    let size = ext.part_size();
    for (a, b) in cf.cliques().iter().zip(ext.cliques()) {
        ensure(b.iter().all(Option::is_some) && a[..3] == b[..3], || format!("{b:?} does not extend {a:?}"))?;
    }
    // relabel the used vertices densely and check the cliques decompose their edge union
    let sets = ext.vertex_sets();
    let mut id: HashMap<usize, usize> = HashMap::new();
    for &v in sets.iter().flatten() {
        let next = id.len();
        id.entry(v).or_insert(next);
    }
    let cliques: Vec<Vec<usize>> = sets.iter().map(|c| c.iter().map(|v| id[v]).collect()).collect();
    let mut edges = Vec::new();
    for c in &sets {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                ensure(u / size != v / size, || format!("edge {u}-{v} inside a part"))?;
                edges.push((id[&u], id[&v]));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    ensure(edges.len() == 9 * 6, || "cliques share an edge".into())?;
    let g = Graph::from_edges(id.len(), edges).map_err(|e| e.to_string())?;
    let verdict = verify(&g, &Certificate::Decomposition { k: 4, cliques }).map_err(|e| e.to_string())?;
    ensure(verdict.is_valid(), || format!("{verdict:?}"))?;
    Ok(format!("9 edge-disjoint K_4's, {} labels added per part", size - 3))
}

fn design_sharpness_mechanism() -> Outcome {
    let lim = Limits::default();
    let s = design_sharpness(15, 3, 3, &lim).map_err(|e| e.to_string())?;
    ensure(s.inner.len() == 3, || format!("|V'| snapped to {}", s.inner.len()))?;
    let emb = embed_design(&s.design, &EmbedOptions::default()).map_err(|e| e.to_string())?;
    ensure(emb.t >= 3, || format!("embedding with t = {}", emb.t))?;
    ensure(emb.trace.is_exhaustive(), || "an attempt ran out of time".into())?;
    Ok(format!(
        "{} blocks, forced at least {}, embedding order {} (t = {})",
        s.design.len(),
        s.forced_extra,
        emb.order,
        emb.t
    ))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("hamiltonicity bound matches oracle", Duration::from_secs(300), ham_bound_exact),
        ("hamiltonicity extremal classes", Duration::from_secs(120), ham_extremal_classes),
        ("deficiency equals path cover number", Duration::from_secs(600), path_cover_equivalence),
        ("triangle-factor extremal graphs", Duration::from_secs(120), triangle_extremal_graphs),
        ("random partial STS embeddings", Duration::from_secs(600), embedding_validity),
        ("sparse Latin squares complete", Duration::from_secs(300), smetaniuk_check),
        ("Evans squares", Duration::from_secs(300), evans),
        ("orthogonal squares round trip", Duration::from_secs(120), mols_round_trip),
        ("clique extension", Duration::from_secs(60), clique_extension),
        ("design sharpness forces new points", Duration::from_secs(120), design_sharpness_mechanism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > limit => ("FAIL", format!("took longer than {}s", limit.as_secs())),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name} [{:.2}s] {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
