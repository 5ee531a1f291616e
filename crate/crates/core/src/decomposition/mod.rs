//! Structural decomposition of a (percolated) multigraph.
//!
//! The 2-core is found by peeling, the kernel by suppressing degree-2 core
//! vertices, and the edges outside the core fall into bushes: trees that
//! either hang from a single core vertex (their root) or float free as
//! isolated trees. Connected components are found separately with a
//! union-find pass so that the giant component can be identified.

mod core;
mod kernel;
mod union_find;

use serde::{Deserialize, Serialize};

pub use self::core::{two_core, two_core_random_order, TwoCore};
pub use self::kernel::{count_deg2_paths, kernel, longest_deg2_run, Deg2Run, Kernel, RunCount};
pub use self::union_find::UnionFind;

use crate::graph::Multigraph;

/// A connected piece of the non-core edges, or an isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bush {
    /// Vertices in ascending order, root included.
    pub vertices: Vec<u32>,
    /// The unique core vertex of the bush, if any.
    pub root: Option<u32>,
}

impl Bush {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_isolated_tree(&self) -> bool {
        self.root.is_none()
    }
}

/// Bushes of `g` relative to a precomputed core membership.
///
/// Vertices of degree 0 are reported as single-vertex rootless bushes so
/// that every vertex outside the core belongs to exactly one bush.
pub fn bushes_with_core(g: &Multigraph, in_core: &[bool]) -> Vec<Bush> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut member = vec![false; n];
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        if !(in_core[u] && in_core[v]) {
            uf.union(u, v);
            member[u] = true;
            member[v] = true;
        }
    }
    for v in 0..n {
        if g.degree(v) == 0 {
            member[v] = true;
        }
    }
    let mut slot = vec![u32::MAX; n];
    let mut out: Vec<Bush> = Vec::new();
    for v in 0..n {
        if !member[v] {
            continue;
        }
        let r = uf.find(v);
        if slot[r] == u32::MAX {
            slot[r] = out.len() as u32;
            out.push(Bush { vertices: Vec::new(), root: None });
        }
        let bush = &mut out[slot[r] as usize];
        bush.vertices.push(v as u32);
        if in_core[v] {
            debug_assert!(bush.root.is_none(), "a bush has at most one root");
            bush.root = Some(v as u32);
        }
    }
    out
}

pub fn bushes(g: &Multigraph) -> Vec<Bush> {
    bushes_with_core(g, &two_core(g).in_core)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Giant,
    IsolatedTree,
    IsolatedCycle,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<u32>,
    pub edges: usize,
    pub kind: ComponentKind,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Ordered by smallest member.
    pub components: Vec<Component>,
    /// Index into `components`.
    pub giant: Option<usize>,
    /// Size bound the isolated trees were checked against.
    pub tree_bound: usize,
    pub all_trees_within_bound: bool,
}

impl ComponentReport {
    pub fn giant_size(&self) -> usize {
        self.giant.map_or(0, |i| self.components[i].size())
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn others(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.kind != ComponentKind::Giant)
    }

    pub fn max_isolated_tree(&self) -> usize {
        self.of_kind(ComponentKind::IsolatedTree).map(Component::size).max().unwrap_or(0)
    }

    pub fn of_kind(&self, kind: ComponentKind) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(move |c| c.kind == kind)
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

/// Finds the components of `g`, marks the largest as giant (ties go to the
/// one with the smallest label) and types the rest.
pub fn classify_components(g: &Multigraph, tree_bound: usize) -> ComponentReport {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for &(u, v) in g.edges() {
        uf.union(u as usize, v as usize);
    }
    let groups = uf.groups();
    let mut index_of = vec![0u32; n];
    for (i, grp) in groups.iter().enumerate() {
        for &v in grp {
            index_of[v as usize] = i as u32;
        }
    }
    let mut edge_counts = vec![0usize; groups.len()];
    for &(u, _) in g.edges() {
        edge_counts[index_of[u as usize] as usize] += 1;
    }
    // groups are ordered by smallest member, so the first maximum wins ties
    let giant = (0..groups.len()).fold(None, |best: Option<usize>, i| match best {
        Some(b) if groups[b].len() >= groups[i].len() => Some(b),
        _ => Some(i),
    });
    let components: Vec<Component> = groups
        .into_iter()
        .zip(edge_counts)
        .enumerate()
        .map(|(i, (vertices, edges))| {
            let kind = if Some(i) == giant {
                ComponentKind::Giant
            } else if edges + 1 == vertices.len() {
                ComponentKind::IsolatedTree
            } else if edges == vertices.len() && vertices.iter().all(|&v| g.degree(v as usize) == 2) {
                ComponentKind::IsolatedCycle
            } else {
                ComponentKind::Other
            };
            Component { vertices, edges, kind }
        })
        .collect();
    let all_trees_within_bound = components
        .iter()
        .filter(|c| c.kind == ComponentKind::IsolatedTree)
        .all(|c| c.size() <= tree_bound);
    ComponentReport { components, giant, tree_bound, all_trees_within_bound }
}

/// Everything the structural checks need from one graph.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub two_core: TwoCore,
    pub kernel: Kernel,
    pub bushes: Vec<Bush>,
    pub components: ComponentReport,
    pub longest_run: Option<Deg2Run>,
    /// `N'_j`: core vertices of each degree, indexed by degree.
    pub core_census: Vec<usize>,
}

impl Decomposition {
    pub fn longest_deg2_run(&self) -> usize {
        self.longest_run.as_ref().map_or(0, |r| r.length)
    }

    pub fn max_bush_size(&self) -> usize {
        self.bushes.iter().map(Bush::size).max().unwrap_or(0)
    }

    /// Serializable summary with 1-based labels.
    pub fn report(&self) -> DecompositionReport {
        let one = |vs: &[u32]| vs.iter().map(|&v| v + 1).collect::<Vec<_>>();
        let core_label = |vs: &[u32]| {
            vs.iter().map(|&v| self.two_core.vertex_map[v as usize] + 1).collect::<Vec<_>>()
        };
        DecompositionReport {
            two_core_size: self.two_core.size(),
            kernel_size: self.kernel.graph.vertex_count(),
            core_census: self.core_census.clone(),
            bushes: self
                .bushes
                .iter()
                .map(|b| BushReport { vertices: one(&b.vertices), root: b.root.map(|r| r + 1) })
                .collect(),
            isolated_trees: self
                .components
                .of_kind(ComponentKind::IsolatedTree)
                .map(|c| one(&c.vertices))
                .collect(),
            isolated_cycles: self.kernel.isolated_cycles.iter().map(|c| core_label(c)).collect(),
            giant_size: self.components.giant_size(),
            longest_deg2_run: self.longest_deg2_run(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BushReport {
    pub vertices: Vec<u32>,
    pub root: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub two_core_size: usize,
    pub kernel_size: usize,
    pub core_census: Vec<usize>,
    pub bushes: Vec<BushReport>,
    pub isolated_trees: Vec<Vec<u32>>,
    /// Bare cycles of the 2-core.
    pub isolated_cycles: Vec<Vec<u32>>,
    pub giant_size: usize,
    pub longest_deg2_run: usize,
}

/// Runs every structural pass over `g`. `tree_bound` is the size isolated
/// trees are checked against.
pub fn decompose(g: &Multigraph, tree_bound: usize) -> Decomposition {
    let two_core = two_core(g);
    let kernel = kernel(&two_core.graph).expect("a peeled core has minimum degree 2");
    let mut core_census = vec![0usize; g.max_degree() + 1];
    for d in two_core.graph.degrees() {
        core_census[d] += 1;
    }
    let longest_run = kernel.longest_run();
    Decomposition {
        bushes: bushes_with_core(g, &two_core.in_core),
        components: classify_components(g, tree_bound),
        two_core,
        kernel,
        longest_run,
        core_census,
    }
}
