use localdec_core::bitset::BitSet;
use localdec_core::graphdec::{
    decompositions_equivalent, dual_decomposition, induce_separation_from_model, r_global_decomposition,
    verify_graph_decomposition, PipelineOptions,
};
use localdec_core::grouppres::{todd_coxeter, Enumeration, FreeWord, Letter, Presentation};
use localdec_core::localcover::{local_cover, verify_ball_preservation, verify_cover_cycle_space, CoverOptions, LocalCover};
use localdec_core::multigraph::iso::{isomorphic, IsoOutcome, DEFAULT_BUDGET};
use localdec_core::multigraph::{homotopic, reduce_walk, Multigraph, OrientedEdge, Walk};
use localdec_core::tangles::{canonical_nested_set, NestedOptions, Separation};
use localdec_core::treedecomp::{induce_tree_decomposition, verify_tree_decomposition};
use localdec_core::Verdict;
use proptest::prelude::*;

/// Connected multigraphs: a random tree plus extra edges, loops and
/// parallels allowed.
fn connected_graph(max_vertices: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_vertices).prop_flat_map(move |n| {
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..=max_extra);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut e: Vec<(usize, usize)> = tree.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
            e.extend(extra);
            Multigraph::from_edges(n, &e)
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn graph_and_perm(max_vertices: usize, max_extra: usize) -> impl Strategy<Value = (Multigraph, Vec<usize>)> {
    connected_graph(max_vertices, max_extra).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), permutation(n))
    })
}

fn word(generators: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    proptest::collection::vec((0..generators, any::<bool>()), 0..=max_len)
        .prop_map(|ls| FreeWord::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn sorted(seps: &[Separation]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<_> = seps
        .iter()
        .map(|s| {
            let (a, b) = s.sides();
            let (a, b): (Vec<usize>, Vec<usize>) = (a.iter().collect(), b.iter().collect());
            (a.clone().min(b.clone()), a.max(b))
        })
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn relabelled_graph_is_isomorphic((g, perm) in graph_and_perm(9, 10)) {
        let h = g.permuted(&perm);
        match isomorphic(&g, &h, DEFAULT_BUDGET) {
            IsoOutcome::Isomorphic(phi) => prop_assert!(phi.is_valid(&g, &h)),
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn word_times_inverse_reduces_to_empty(w in word(3, 12)) {
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn complete_coset_tables_satisfy_relators(rels in proptest::collection::vec(word(2, 6), 0..4)) {
        let p = Presentation::new(vec!["a".into(), "b".into()], {
            // make the group finite often enough to matter
            let mut r = rels;
            r.push(FreeWord::letter(Letter::new(0, false)).pow(3));
            r.push(FreeWord::letter(Letter::new(1, false)).pow(2));
            r
        }).unwrap();
        if let Enumeration::Complete(t) = todd_coxeter(&p, 5000) {
            prop_assert!(t.verify(&p));
        }
    }

    #[test]
    fn reduced_walks_have_no_backtracks(g in connected_graph(6, 6), steps in proptest::collection::vec(any::<prop::sample::Index>(), 0..20)) {
        // a random walk from vertex 0
        let mut v = 0;
        let mut w = Walk::trivial(0);
        for s in steps {
            let inc = g.incident(v);
            let step = OrientedEdge::leaving(&g, inc[s.index(inc.len())], v);
            v = step.head(&g);
            w.steps.push(step);
        }
        let r = reduce_walk(&g, &w).unwrap();
        prop_assert_eq!(r.end(&g), w.end(&g));
        prop_assert!(homotopic(&g, &r, &w).unwrap());
        for pair in r.steps.windows(2) {
            prop_assert!(pair[1] != pair[0].reverse());
        }
    }

    #[test]
    fn finite_covers_satisfy_the_cover_invariants(g in connected_graph(7, 8), r in 3usize..=5) {
        let opts = CoverOptions { coset_limit: 20_000, truncation_radius: 1 };
        if let LocalCover::Finite(c) = local_cover(&g, r, opts).unwrap() {
            prop_assert!(c.covering_condition());
            prop_assert!(c.cover.is_connected());
            prop_assert!(verify_cover_cycle_space(&c, r));
            prop_assert_eq!(verify_ball_preservation(&LocalCover::Finite(c), r), Verdict::True);
        }
    }

    #[test]
    fn nested_set_commutes_with_relabelling((g, perm) in graph_and_perm(8, 8)) {
        let opts = NestedOptions::new(3);
        let n = canonical_nested_set(&g, &opts).unwrap();
        let m = canonical_nested_set(&g.permuted(&perm), &opts).unwrap();
        let moved: Vec<Separation> = n.separations.iter().map(|s| s.map(&perm)).collect();
        prop_assert_eq!(sorted(&moved), sorted(&m.separations));
    }

    #[test]
    fn nested_set_induces_a_tree_decomposition(g in connected_graph(9, 9)) {
        let n = canonical_nested_set(&g, &NestedOptions::new(4)).unwrap();
        let td = induce_tree_decomposition(&g, &n.separations).unwrap();
        prop_assert!(verify_tree_decomposition(&g, &td).all_pass());
        prop_assert_eq!(sorted(&td.induced_separations()), sorted(&n.separations));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    /// Decompositions from the pipeline satisfy the axioms, every node
    /// against the rest gives a separation through the model-edge formula,
    /// and dualising twice gives the decomposition back.
    #[test]
    fn pipeline_decompositions(g in connected_graph(8, 7), r in 3usize..=5) {
        let opts = PipelineOptions {
            max_tangle_order: 3,
            cover: CoverOptions { coset_limit: 20_000, truncation_radius: 1 },
            ..PipelineOptions::default()
        };
        let Ok(out) = r_global_decomposition(&g, r, &opts) else { return Ok(()); };
        let d = &out.decomposition;
        let report = verify_graph_decomposition(&g, d);
        prop_assert!(report.all_pass(), "{report:?}");
        let m = d.model.vertex_count();
        for h in 0..m {
            let u = BitSet::from_iter(m, [h]);
            prop_assert!(induce_separation_from_model(&g, d, &u, &u.complement()).is_ok());
        }
        if report.connected_parts {
            let dual = dual_decomposition(&g, d).unwrap();
            let back = dual_decomposition(&d.model, &dual).unwrap();
            prop_assert!(decompositions_equivalent(&g, d, &back));
        }
    }
}
