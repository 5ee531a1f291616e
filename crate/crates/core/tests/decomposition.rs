use percolab::decomposition::{
    bushes_with_core, classify_components, count_deg2_paths, decompose, kernel, two_core, two_core_random_order,
    ComponentKind,
};
use percolab::Multigraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..=2 * n)
            .prop_map(move |edges| Multigraph::from_edges(n, edges).unwrap())
    })
}

/// Union of every vertex set whose induced subgraph has minimum degree 2.
fn brute_core(g: &Multigraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut union = 0u32;
    for mask in 1u32..(1 << n) {
        let mut deg = vec![0; n];
        for &(u, v) in g.edges() {
            if mask >> u & 1 == 1 && mask >> v & 1 == 1 {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
        }
        if (0..n).all(|v| mask >> v & 1 == 0 || deg[v] >= 2) {
            union |= mask;
        }
    }
    (0..n).map(|v| union >> v & 1 == 1).collect()
}

/// Uniform labelled tree on `n >= 2` vertices from a random Prüfer code.
fn prufer_tree(n: usize, rng: &mut ChaCha8Rng) -> Multigraph {
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::new();
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf as u32, c as u32));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0] as u32, rest[1] as u32));
    Multigraph::from_edges(n, edges).unwrap()
}

proptest! {
    #[test]
    fn peeling_matches_definition(g in arb_graph(11)) {
        prop_assert_eq!(two_core(&g).in_core, brute_core(&g));
    }

    #[test]
    fn peeling_order_does_not_matter(g in arb_graph(40), seed: u64) {
        let a = two_core(&g);
        let b = two_core_random_order(&g, seed);
        prop_assert_eq!(a.in_core, b.in_core);
        prop_assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn kernel_round_trip(g in arb_graph(40)) {
        let core = two_core(&g);
        let k = kernel(&core.graph).unwrap();
        prop_assert!(k.graph.degrees().all(|d| d >= 3));
        let rebuilt = k.reconstruct_core(core.graph.vertex_count());
        let norm = |h: &Multigraph| {
            let mut e: Vec<(u32, u32)> = h.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            e.sort_unstable();
            e
        };
        prop_assert_eq!(norm(&rebuilt), norm(&core.graph));
        let suppressed: usize = k.edge_paths.iter().map(Vec::len).sum::<usize>()
            + k.isolated_cycles.iter().map(Vec::len).sum::<usize>();
        prop_assert_eq!(suppressed + k.graph.vertex_count(), core.size());
    }

    #[test]
    fn bushes_partition_the_rest(g in arb_graph(40)) {
        let core = two_core(&g);
        let bushes = bushes_with_core(&g, &core.in_core);
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for (i, b) in bushes.iter().enumerate() {
            for &v in &b.vertices {
                if core.in_core[v as usize] {
                    prop_assert_eq!(b.root, Some(v));
                } else {
                    prop_assert_eq!(owner[v as usize], usize::MAX);
                    owner[v as usize] = i;
                }
            }
            // a bush is a tree: edges = vertices - 1
            let inside = |v: u32| b.vertices.binary_search(&v).is_ok();
            let edges = g.edges().iter().filter(|&&(u, v)| {
                inside(u) && inside(v) && !(core.in_core[u as usize] && core.in_core[v as usize])
            }).count();
            prop_assert_eq!(edges + 1, b.size());
        }
        for v in 0..g.vertex_count() {
            prop_assert!(core.in_core[v] || owner[v] != usize::MAX);
        }
    }

    #[test]
    fn components_cover_every_vertex(g in arb_graph(60), bound in 1usize..6) {
        let rep = classify_components(&g, bound);
        prop_assert_eq!(rep.components.iter().map(|c| c.size()).sum::<usize>(), g.vertex_count());
        prop_assert_eq!(rep.components.iter().map(|c| c.edges).sum::<usize>(), g.edge_count());
        let giant = rep.giant_size();
        prop_assert!(rep.components.iter().all(|c| c.size() <= giant));
        for c in rep.of_kind(ComponentKind::IsolatedTree) {
            prop_assert_eq!(c.edges + 1, c.size());
        }
        let dec = decompose(&g, bound);
        prop_assert_eq!(dec.components, rep);
    }
}

#[test]
fn random_trees_have_empty_cores() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..60 {
        let t = prufer_tree(n, &mut rng);
        assert_eq!(t.edge_count(), n - 1);
        let leaves = t.degrees().filter(|&d| d == 1).count();
        // handshake on a tree: leaves = 2 + sum over internal vertices of (deg - 2)
        let extra: usize = t.degrees().filter(|&d| d > 2).map(|d| d - 2).sum();
        assert_eq!(leaves, 2 + extra);
        let dec = decompose(&t, n);
        assert_eq!(dec.two_core.size(), 0);
        assert_eq!(dec.bushes.len(), 1);
        assert_eq!(dec.bushes[0].root, None);
        assert_eq!(dec.components.count(), 1);
        assert_eq!(dec.components.components[0].kind, ComponentKind::Giant);
    }
}

#[test]
fn tree_kind_when_not_giant() {
    // a triangle and a disjoint 3-vertex path
    let g = Multigraph::from_edges(7, vec![(0, 1), (1, 2), (2, 0), (2, 3), (4, 5), (5, 6)]).unwrap();
    let rep = classify_components(&g, 3);
    assert_eq!(rep.components[1].kind, ComponentKind::IsolatedTree);
    assert!(rep.all_trees_within_bound);
    assert!(!classify_components(&g, 2).all_trees_within_bound);
}

#[test]
fn run_counts_on_a_long_theta() {
    // two branch vertices joined by runs of 4, 2 and 0 vertices
    let mut edges = vec![(0, 2), (2, 3), (3, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1), (0, 1)];
    edges.sort_unstable();
    let g = Multigraph::from_edges(8, edges).unwrap();
    assert_eq!(count_deg2_paths(&g, 1).unwrap().count, 2);
    assert_eq!(count_deg2_paths(&g, 3).unwrap().count, 1);
    assert_eq!(count_deg2_paths(&g, 5).unwrap().count, 0);
    assert_eq!(decompose(&g, 3).longest_deg2_run(), 4);
}
