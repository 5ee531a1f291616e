use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// A 2-core with its degree-2 vertices suppressed.
///
/// Components of the core that are bare cycles have no vertex of degree at
/// least 3 to anchor a contraction, so they are listed in
/// `isolated_cycles` instead of appearing in the kernel graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub graph: Multigraph,
    /// Core label of each kernel vertex, ascending.
    pub vertex_map: Vec<u32>,
    /// Core labels of the suppressed vertices on each kernel edge, walking
    /// from the edge's first endpoint to its second.
    pub edge_paths: Vec<Vec<u32>>,
    /// Core labels of each bare cycle, in cyclic order.
    pub isolated_cycles: Vec<Vec<u32>>,
}

fn check_min_degree(core: &Multigraph) -> Result<()> {
    if let Some(v) = (0..core.vertex_count()).find(|&v| core.degree(v) < 2) {
        return Err(Error::domain(format!(
            "vertex {v} has degree {} but a 2-core needs minimum degree 2",
            core.degree(v)
        )));
    }
    Ok(())
}

/// Contracts every maximal run of degree-2 vertices into one edge.
pub fn kernel(core: &Multigraph) -> Result<Kernel> {
    check_min_degree(core)?;
    let n = core.vertex_count();
    let mut kernel_id = vec![u32::MAX; n];
    let mut vertex_map = Vec::new();
    for v in 0..n {
        if core.degree(v) >= 3 {
            kernel_id[v] = vertex_map.len() as u32;
            vertex_map.push(v as u32);
        }
    }
    let mut used = vec![false; core.edge_count()];
    let mut visited = vec![false; n];
    let mut edges = Vec::new();
    let mut edge_paths = Vec::new();
    for &v in &vertex_map {
        let v = v as usize;
        visited[v] = true;
        for &(first, e) in core.incident(v) {
            if used[e as usize] {
                continue;
            }
            used[e as usize] = true;
            let mut prev_edge = e;
            let mut cur = first as usize;
            let mut internal = Vec::new();
            while kernel_id[cur] == u32::MAX {
                visited[cur] = true;
                internal.push(cur as u32);
                let &(next, e_next) = core
                    .incident(cur)
                    .iter()
                    .find(|&&(_, e)| e != prev_edge)
                    .expect("a degree-2 vertex on a branch path has two distinct edges");
                used[e_next as usize] = true;
                prev_edge = e_next;
                cur = next as usize;
            }
            edges.push((kernel_id[v], kernel_id[cur]));
            edge_paths.push(internal);
        }
    }
    let mut isolated_cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut prev_edge = u32::MAX;
        let mut cur = start;
        loop {
            visited[cur] = true;
            cycle.push(cur as u32);
            let slots = core.incident(cur);
            let &(next, e) = slots
                .iter()
                .find(|&&(_, e)| e != prev_edge)
                .unwrap_or(&slots[0]);
            prev_edge = e;
            cur = next as usize;
            if cur == start {
                break;
            }
        }
        isolated_cycles.push(cycle);
    }
    let graph = Multigraph::from_edges(vertex_map.len(), edges).expect("kernel ids are in range");
    Ok(Kernel { graph, vertex_map, edge_paths, isolated_cycles })
}

/// Longest stretch of consecutive degree-2 vertices in a 2-core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2Run {
    /// Number of degree-2 vertices in the stretch. A bare cycle of length
    /// `L` counts as `L - 1`.
    pub length: usize,
    /// The longest stretch lies on a bare cycle.
    pub on_cycle: bool,
    /// Core labels of the stretch in path order.
    pub vertices: Vec<u32>,
}

impl Kernel {
    /// Maximum over kernel edges and bare cycles; `None` when the core has
    /// no degree-2 vertex at all.
    pub fn longest_run(&self) -> Option<Deg2Run> {
        let paths = self.edge_paths.iter().map(|p| (p.len(), false, p));
        let cycles = self.isolated_cycles.iter().map(|c| (c.len() - 1, true, c));
        // prefer a path over a cycle of the same length, then earliest found
        paths
            .chain(cycles)
            .filter(|&(len, on_cycle, _)| len > 0 || on_cycle)
            .fold(None, |best: Option<(usize, bool, &Vec<u32>)>, cand| match best {
                Some(b) if b.0 > cand.0 || (b.0 == cand.0 && (!b.1 || cand.1)) => Some(b),
                _ => Some(cand),
            })
            .map(|(length, on_cycle, vs)| Deg2Run {
                length,
                on_cycle,
                vertices: if on_cycle { vs[..length].to_vec() } else { vs.clone() },
            })
    }

    pub fn longest_run_length(&self) -> usize {
        self.longest_run().map_or(0, |r| r.length)
    }

    /// Kernel edges carrying at least `k` suppressed vertices, plus bare
    /// cycles whose run `L - 1` is at least `k` (one each).
    pub fn count_runs(&self, k: usize) -> RunCount {
        let paths = self.edge_paths.iter().filter(|p| p.len() >= k).count();
        let cycles = self.isolated_cycles.iter().filter(|c| c.len() - 1 >= k).count();
        RunCount { count: paths + cycles, cycles }
    }

    /// Re-subdivides every kernel edge along its recorded path and adds the
    /// bare cycles back. The result uses core labels.
    pub fn reconstruct_core(&self, n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for (&(a, b), path) in self.graph.edges().iter().zip(&self.edge_paths) {
            let mut prev = self.vertex_map[a as usize];
            for &x in path {
                edges.push((prev, x));
                prev = x;
            }
            edges.push((prev, self.vertex_map[b as usize]));
        }
        for cycle in &self.isolated_cycles {
            for i in 0..cycle.len() {
                edges.push((cycle[i], cycle[(i + 1) % cycle.len()]));
            }
        }
        Multigraph::from_edges(n, edges).expect("reconstructed labels are core labels")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunCount {
    pub count: usize,
    /// How many of the counted runs are bare cycles.
    pub cycles: usize,
}

/// Longest degree-2 run of a graph of minimum degree 2.
pub fn longest_deg2_run(core: &Multigraph) -> Result<usize> {
    Ok(kernel(core)?.longest_run_length())
}

/// Maximal degree-2 runs of at least `k` vertices.
pub fn count_deg2_paths(core: &Multigraph, k: usize) -> Result<RunCount> {
    if k == 0 {
        return Err(Error::domain("run length must be at least 1"));
    }
    Ok(kernel(core)?.count_runs(k))
}
