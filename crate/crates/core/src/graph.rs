use crate::error::{Error, Result};

/// Undirected multigraph with loops, stored as an edge list plus a
/// compressed adjacency array.
///
/// Every edge appears in the adjacency of both endpoints; a loop appears
/// twice in the adjacency of its vertex and so adds 2 to its degree. Each
/// adjacency entry carries the id of the edge it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    adj: Vec<(u32, u32)>,
}

impl Multigraph {
    pub fn from_edges(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u as usize >= n || v as usize >= n) {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) references a vertex outside 0..{n}"
            )));
        }
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[cursor[u as usize]] = (v, e as u32);
            cursor[u as usize] += 1;
            adj[cursor[v as usize]] = (u, e as u32);
            cursor[v as usize] += 1;
        }
        Ok(Multigraph { n, edges, offsets, adj })
    }

    pub(crate) fn from_parts(
        n: usize,
        edges: Vec<(u32, u32)>,
        offsets: Vec<usize>,
        adj: Vec<(u32, u32)>,
    ) -> Self {
        debug_assert_eq!(offsets.len(), n + 1);
        debug_assert_eq!(adj.len(), 2 * edges.len());
        Multigraph { n, edges, offsets, adj }
    }

    pub fn empty(n: usize) -> Self {
        Multigraph { n, edges: Vec::new(), offsets: vec![0; n + 1], adj: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// `(neighbour, edge id)` for each edge slot at `v`.
    pub fn incident(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident(v).iter().map(|&(u, _)| u as usize)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let mut seen = vec![u32::MAX; self.n];
        for v in 0..self.n {
            for u in self.neighbors(v) {
                if seen[u] == v as u32 {
                    return false;
                }
                seen[u] = v as u32;
            }
        }
        true
    }

    /// Subgraph induced by `keep`, relabelled in ascending order of the
    /// original labels. Returns the graph and the new-to-old vertex map.
    pub fn induced(&self, keep: &[bool]) -> (Multigraph, Vec<u32>) {
        assert_eq!(keep.len(), self.n);
        let mut new_label = vec![u32::MAX; self.n];
        let mut map = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_label[v] = map.len() as u32;
                map.push(v as u32);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u as usize] && keep[v as usize])
            .map(|&(u, v)| (new_label[u as usize], new_label[v as usize]))
            .collect();
        let g = Multigraph::from_edges(map.len(), edges).expect("relabelled edges are in range");
        (g, map)
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == u32::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}
