use super::dichotomy::{colour_or_minor, ClusterOutcome, ClusterParams, WeakClosureMinor};
use crate::elimination::{dfs_elimination_tree, normalize_tree, treedepth_exact, EliminationTree, DEFAULT_TREEDEPTH_CAP};
use crate::error::Result;
use crate::graph::{connected_components, induced_subgraph, monochromatic_components, Colouring, Graph, MinorModel};

/// Dichotomy result for an arbitrary (possibly disconnected) graph.
#[derive(Debug, Clone)]
pub enum GraphOutcome {
    Colouring(GraphColouring),
    Minor(ComponentMinor),
}

#[derive(Debug, Clone)]
pub struct GraphColouring {
    pub colouring: Colouring,
    /// Group of each vertex; groups of different components are distinct.
    pub groups: Vec<usize>,
    pub max_cluster: usize,
    /// Depth of the elimination tree used for each component.
    pub depths: Vec<usize>,
}

/// A W⟨h,k⟩ model found in one component, with branch sets in the
/// vertex numbering of the whole graph.
#[derive(Debug, Clone)]
pub struct ComponentMinor {
    pub model: MinorModel,
    pub component: Vec<usize>,
    /// The certificate in the component's own numbering.
    pub local: WeakClosureMinor,
}

/// Normalized elimination tree of a connected graph: an optimal one when
/// the graph is small enough for the exact oracle, otherwise a DFS tree.
pub fn normalized_tree(g: &Graph) -> Result<EliminationTree> {
    let e = if g.n() <= DEFAULT_TREEDEPTH_CAP {
        treedepth_exact(g)?.witness
    } else {
        dfs_elimination_tree(g, 0)?
    };
    normalize_tree(&e)
}

/// Runs [`colour_or_minor`] on each component and merges the colourings.
/// Stops at the first component where the minor branch fires.
pub fn cluster_colour_graph(g: &Graph, params: ClusterParams) -> Result<GraphOutcome> {
    let mut colours = vec![0; g.n()];
    let mut groups = vec![0; g.n()];
    let mut depths = Vec::new();
    let mut next_group = 0;
    for comp in connected_components(g) {
        let sub = induced_subgraph(g, &comp)?;
        let e = normalized_tree(&sub.graph)?;
        depths.push(e.depth());
        match colour_or_minor(&e, params)? {
            ClusterOutcome::Colouring(c) => {
                for (local, &v) in sub.new_to_old.iter().enumerate() {
                    colours[v] = c.colouring.colour(local);
                    groups[v] = next_group + c.groups.group_of(local);
                }
                next_group += c.groups.len();
            }
            ClusterOutcome::Minor(m) => {
                let branch_sets = m
                    .model
                    .branch_sets
                    .iter()
                    .map(|set| {
                        let mut s: Vec<usize> = set.iter().map(|&x| sub.new_to_old[x]).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                let model = MinorModel { host: g.clone(), pattern: m.model.pattern.clone(), branch_sets };
                return Ok(GraphOutcome::Minor(ComponentMinor { model, component: comp, local: m }));
            }
        }
    }
    // Each component uses colours 0..j for some j, so the union is contiguous.
    let colouring = Colouring::new(colours)?;
    let max_cluster = monochromatic_components(g, &colouring).iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    Ok(GraphOutcome::Colouring(GraphColouring { colouring, groups, max_cluster, depths }))
}
