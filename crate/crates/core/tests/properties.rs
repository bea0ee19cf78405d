use proptest::prelude::*;

use deficiency::deficiency::{factor_deficiency, ham_deficiency};
use deficiency::designs::{validate_partial_design, PartialDesign};
use deficiency::embed::{embed_design, EmbedOptions};
use deficiency::format::{parse_document, write_document, Document};
use deficiency::latin::{validate_mols, PartialLatinSquare};
use deficiency::solvers::{find_kk_decomposition, find_kk_factor, is_hamiltonian, path_cover_number};
use deficiency::{verify, Certificate, Graph, Limits};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits.iter().enumerate().fold(0u64, |m, (i, &b)| m | (u64::from(b) << i));
            Graph::from_edge_mask(n, mask)
        })
    })
}

/// Greedy partial triple system from a list of candidate triples.
fn partial_sts(n: usize, picks: &[(usize, usize, usize)]) -> PartialDesign {
    let mut used = vec![false; n * n];
    let mut blocks = Vec::new();
    for &(a, b, c) in picks {
        let mut t = [a % n, b % n, c % n];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            continue;
        }
        let pairs = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
        if pairs.iter().any(|&(u, v)| used[u * n + v]) {
            continue;
        }
        for (u, v) in pairs {
            used[u * n + v] = true;
        }
        blocks.push(t.to_vec());
    }
    validate_partial_design(n, 3, blocks).unwrap()
}

fn latin(n: usize, cells: &[Option<usize>]) -> PartialLatinSquare {
    // keep a cell only if it stays Latin
    let mut kept = vec![None; n * n];
    for (c, s) in cells.iter().enumerate().take(n * n) {
        if let Some(s) = s.map(|s| s % n) {
            let (i, j) = (c / n, c % n);
            let clash = (0..n).any(|x| kept[i * n + x] == Some(s) || kept[x * n + j] == Some(s));
            if !clash {
                kept[c] = Some(s);
            }
        }
    }
    PartialLatinSquare::new(n, kept).unwrap()
}

fn round_trip(doc: Document) {
    let text = write_document(&doc);
    assert_eq!(parse_document(&text).unwrap(), doc, "{text}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trip(g in graph(11)) {
        round_trip(Document::Graph(g));
    }

    #[test]
    fn design_text_round_trip(n in 3usize..16, picks in proptest::collection::vec((0usize..16, 0usize..16, 0usize..16), 0..12)) {
        round_trip(Document::Design(partial_sts(n, &picks)));
    }

    #[test]
    fn latin_text_round_trip(n in 1usize..7, cells in proptest::collection::vec(proptest::option::of(0usize..7), 49)) {
        let sq = latin(n, &cells);
        round_trip(Document::Latin(sq.clone()));
        round_trip(Document::Mols(validate_mols(vec![sq]).unwrap()));
    }

    #[test]
    fn certificate_text_round_trip(g in graph(8)) {
        let (_, cover) = path_cover_number(&g).unwrap();
        round_trip(Document::Certificate(cover));
        if let Some(c) = is_hamiltonian(&g).unwrap() {
            round_trip(Document::Certificate(c));
        }
        if let Some(c) = find_kk_factor(&g, 2, &Limits::default()).unwrap() {
            round_trip(Document::Certificate(c));
        }
    }

    #[test]
    fn join_invariants(g in graph(9), t in 0usize..5) {
        let n = g.order();
        let j = g.join(t).unwrap();
        prop_assert_eq!(j.order(), n + t);
        prop_assert_eq!(j.edge_count(), g.edge_count() + t * n + t * t.saturating_sub(1) / 2);
        prop_assert_eq!(j.induced(&(0..n).collect::<Vec<_>>()), g.clone());
        for w in n..n + t {
            prop_assert_eq!(j.degree(w), n + t - 1);
        }
    }

    #[test]
    fn solver_certificates_verify(g in graph(9)) {
        let lim = Limits::default();
        if let Some(c) = is_hamiltonian(&g).unwrap() {
            prop_assert!(verify(&g, &c).unwrap().is_valid());
        }
        let (mu, c) = path_cover_number(&g).unwrap();
        prop_assert!(verify(&g, &c).unwrap().is_valid());
        if let Certificate::PathCover(paths) = &c {
            prop_assert_eq!(paths.len(), mu);
        }
        if let Some(c) = find_kk_factor(&g, 3, &lim).unwrap() {
            prop_assert!(verify(&g, &c).unwrap().is_valid());
        }
        if let Some(c) = find_kk_decomposition(&g, 3, &lim).unwrap() {
            prop_assert!(verify(&g, &c).unwrap().is_valid());
        }
    }

    #[test]
    fn deficiency_drops_when_edges_are_added(g in graph(7), pick in any::<prop::sample::Index>()) {
        let missing: Vec<(usize, usize)> = g.complement().edges().collect();
        prop_assume!(!missing.is_empty() && g.order() >= 2);
        let (u, v) = missing[pick.index(missing.len())];
        let h = g.with_edge(u, v).unwrap();
        let n = g.order();
        prop_assert!(ham_deficiency(&h, n).unwrap() <= ham_deficiency(&g, n).unwrap());
        let lim = Limits::default();
        prop_assert!(factor_deficiency(&h, 3, 2 * n + 2, &lim).unwrap() <= factor_deficiency(&g, 3, 2 * n + 2, &lim).unwrap());
    }

    #[test]
    fn embedding_contains_input(n in 7usize..12, picks in proptest::collection::vec((0usize..12, 0usize..12, 0usize..12), 0..6)) {
        let f = partial_sts(n, &picks);
        let emb = embed_design(&f, &EmbedOptions::default()).unwrap();
        prop_assert!(verify(&emb.host, &emb.certificate).unwrap().is_valid());
        for b in f.blocks() {
            prop_assert!(emb.completed.as_partial().contains_block(b));
        }
        prop_assert!(emb.order % 6 == 1 || emb.order % 6 == 3);
        for w in emb.trace.attempts.windows(2) {
            prop_assert!(w[0].order < w[1].order);
        }
    }
}
