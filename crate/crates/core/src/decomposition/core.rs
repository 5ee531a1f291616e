use std::collections::VecDeque;

use rand::Rng;

use crate::graph::Multigraph;
use crate::rng::rng_from_seed;

/// The 2-core of a multigraph and how it was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCore {
    /// Membership flag per vertex of the input graph.
    pub in_core: Vec<bool>,
    /// Input vertices in the order they were peeled.
    pub removal_order: Vec<u32>,
    /// Induced core, relabelled in ascending input order.
    pub graph: Multigraph,
    /// Input label of each core vertex.
    pub vertex_map: Vec<u32>,
}

impl TwoCore {
    pub fn size(&self) -> usize {
        self.vertex_map.len()
    }

    fn from_peeling(g: &Multigraph, alive: Vec<bool>, removal_order: Vec<u32>) -> Self {
        let (graph, vertex_map) = g.induced(&alive);
        TwoCore { in_core: alive, removal_order, graph, vertex_map }
    }
}

/// Peels vertices of degree 0 or 1 until none remain. Candidates are taken
/// from a FIFO queue seeded in ascending label order.
pub fn two_core(g: &Multigraph) -> TwoCore {
    let n = g.vertex_count();
    let mut deg: Vec<u32> = g.degrees().map(|d| d as u32).collect();
    let mut alive = vec![true; n];
    let mut queued = vec![false; n];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for v in 0..n {
        if deg[v] <= 1 {
            queued[v] = true;
            queue.push_back(v as u32);
        }
    }
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        let v = v as usize;
        alive[v] = false;
        order.push(v as u32);
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] <= 1 && !queued[u] {
                    queued[u] = true;
                    queue.push_back(u as u32);
                }
            }
        }
    }
    TwoCore::from_peeling(g, alive, order)
}

/// Same as [`two_core`] but always peels a uniformly random eligible vertex.
pub fn two_core_random_order(g: &Multigraph, seed: u64) -> TwoCore {
    let mut rng = rng_from_seed(seed);
    let n = g.vertex_count();
    let mut deg: Vec<u32> = g.degrees().map(|d| d as u32).collect();
    let mut alive = vec![true; n];
    let mut queued = vec![false; n];
    let mut pool: Vec<u32> = Vec::new();
    for v in 0..n {
        if deg[v] <= 1 {
            queued[v] = true;
            pool.push(v as u32);
        }
    }
    let mut order = Vec::new();
    while !pool.is_empty() {
        let v = pool.swap_remove(rng.random_range(0..pool.len())) as usize;
        alive[v] = false;
        order.push(v as u32);
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] <= 1 && !queued[u] {
                    queued[u] = true;
                    pool.push(u as u32);
                }
            }
        }
    }
    TwoCore::from_peeling(g, alive, order)
}
