use nalgebra::DMatrix;
use percolab::decomposition::classify_components;
use percolab::expansion::{
    certify, diameter, diameter_check, exact_edge_expansion, exact_vertex_expansion, path_upper_bound,
    run_upper_bound, sampled_upper_bound, spectral_lower_bound, ExpansionMode,
};
use percolab::pairing::{project, sample_configuration, sample_simple_regular, DegreeSequence};
use percolab::Multigraph;
use proptest::prelude::*;

fn arb_connected(max_n: usize) -> impl Strategy<Value = Multigraph> {
    // a random spanning tree plus extra edges, loops allowed
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v as u32).collect();
        (Just(n), parents, prop::collection::vec((0..n as u32, 0..n as u32), 0..=n))
    })
    .prop_map(|(n, parents, extra)| {
        let mut edges: Vec<(u32, u32)> = parents.into_iter().enumerate().map(|(i, p)| (i as u32 + 1, p)).collect();
        edges.extend(extra);
        Multigraph::from_edges(n, edges).unwrap()
    })
}

/// Every subset listed explicitly, boundary counted from scratch.
fn naive_beta(g: &Multigraph) -> f64 {
    let n = g.vertex_count();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > n / 2 {
            continue;
        }
        let mut outside = vec![false; n];
        for &(u, v) in g.edges() {
            let (iu, iv) = (mask >> u & 1 == 1, mask >> v & 1 == 1);
            if iu && !iv {
                outside[v as usize] = true;
            }
            if iv && !iu {
                outside[u as usize] = true;
            }
        }
        best = best.min(outside.iter().filter(|&&x| x).count() as f64 / size as f64);
    }
    best
}

fn naive_gamma(g: &Multigraph) -> f64 {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        let vol: usize = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| g.degree(v)).sum();
        if vol > m {
            continue;
        }
        let cut = g.edges().iter().filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count();
        best = best.min(if vol == 0 { 0.0 } else { cut as f64 / vol as f64 });
    }
    best
}

/// Second-smallest normalized Laplacian eigenvalue from a dense solver.
fn dense_lambda2(g: &Multigraph) -> f64 {
    let n = g.vertex_count();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        if u == v {
            a[(u, u)] += 2.0;
        } else {
            a[(u, v)] += 1.0;
            a[(v, u)] += 1.0;
        }
    }
    let deg: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let l = DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - a[(i, j)] / (deg[i] * deg[j]).sqrt()
    });
    let mut eig: Vec<f64> = l.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig[1]
}

fn floyd_diameter(g: &Multigraph) -> Option<u32> {
    let n = g.vertex_count();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        if u != v {
            d[u as usize][v as usize] = 1;
            d[v as usize][u as usize] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    let far = d.iter().flatten().copied().max().unwrap();
    (far < inf).then_some(far)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exact_values_match_naive(g in arb_connected(11)) {
        let beta = exact_vertex_expansion(&g, 20).unwrap();
        prop_assert!((beta.ratio.value() - naive_beta(&g)).abs() < 1e-12);
        let gamma = exact_edge_expansion(&g, 20).unwrap();
        prop_assert!((gamma.ratio.value() - naive_gamma(&g)).abs() < 1e-12);
        prop_assert!(beta.witness.len() <= g.vertex_count() / 2);
    }

    #[test]
    fn spectral_matches_dense(g in arb_connected(30), seed: u64) {
        let b = spectral_lower_bound(&g, seed);
        prop_assert!(b.connected);
        let want = dense_lambda2(&g);
        prop_assert!((b.lambda2 - want).abs() < 1e-6, "{} vs {}", b.lambda2, want);
    }

    #[test]
    fn bounds_bracket_exact(g in arb_connected(14), seed: u64) {
        let exact = exact_vertex_expansion(&g, 20).unwrap().ratio.value();
        prop_assert!(spectral_lower_bound(&g, seed).beta_lower <= exact + 1e-9);
        if let Some(u) = run_upper_bound(&g) {
            prop_assert!(exact <= u.value + 1e-12);
        }
        if let Some(u) = sampled_upper_bound(&g, 4, seed) {
            prop_assert!(exact <= u.value + 1e-12);
        }
    }

    #[test]
    fn diameter_matches_floyd(g in arb_connected(25)) {
        prop_assert_eq!(diameter(&g), floyd_diameter(&g));
    }
}

#[test]
fn diameter_bound_on_random_regular_graphs() {
    for seed in 0..40 {
        let g = sample_simple_regular(16, 3, seed).unwrap().graph;
        let beta = exact_vertex_expansion(&g, 20).unwrap().ratio.value();
        if beta > 0.0 {
            assert!(diameter_check(&g, beta).unwrap().pass);
        }
    }
}

#[test]
fn spectral_on_a_large_regular_graph() {
    // lambda_2 of a random 3-regular graph concentrates near 1 - 2 sqrt(2)/3
    let g = sample_simple_regular(3000, 3, 1).unwrap().graph;
    let b = spectral_lower_bound(&g, 1);
    assert!(b.converged, "{b:?}");
    let alon_boppana = 1.0 - 2.0 * 2f64.sqrt() / 3.0;
    assert!((b.lambda2 - alon_boppana).abs() < 0.03, "{}", b.lambda2);
}

#[test]
fn certificate_on_a_regular_multigraph() {
    let seq = DegreeSequence::regular(400, 4).unwrap();
    let c = sample_configuration(&seq, 9).unwrap();
    let g = project(&c);
    let comps = classify_components(&g, 3);
    assert!(comps.is_connected());
    let cert = certify(&g, ExpansionMode::Bounds, 20, 9).unwrap();
    assert!(cert.lower_bound.unwrap() > 0.0);
    assert!(cert.lower_bound.unwrap() <= cert.upper_bound.unwrap());
    assert!(cert.exact_beta.is_none());
}

#[test]
fn path_bound_examples() {
    assert_eq!(path_upper_bound(4, 100), Some(2.0 / 3.0));
    assert_eq!(path_upper_bound(0, 100), None);
}
