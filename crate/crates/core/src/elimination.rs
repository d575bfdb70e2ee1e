//! Elimination trees: exact treedepth, DFS trees, and the re-hanging
//! normalization that makes every `G[T_v]` connected.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::generators::RootedTree;
use crate::graph::{connected_components, induces_connected, Graph};

/// Largest graph on which [`treedepth_exact`] runs by default.
pub const DEFAULT_TREEDEPTH_CAP: usize = 14;

/// A rooted tree on `V(G)` whose closure contains `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTree {
    graph: Graph,
    tree: RootedTree,
}

impl EliminationTree {
    /// Checks that every edge of `graph` joins an ancestor-descendant pair.
    pub fn new(graph: Graph, tree: RootedTree) -> Result<Self> {
        if graph.n() != tree.n() {
            return Err(Error::InvalidTree(format!(
                "tree has {} vertices, graph has {}",
                tree.n(),
                graph.n()
            )));
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| !tree.comparable(u, v)) {
            return Err(Error::InvalidTree(format!("edge {u}-{v} joins incomparable vertices")));
        }
        Ok(EliminationTree { graph, tree })
    }

    pub fn from_parents(graph: Graph, parent: Vec<usize>) -> Result<Self> {
        EliminationTree::new(graph, RootedTree::from_parents(parent)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    #[inline]
    pub fn level(&self, v: usize) -> usize {
        self.tree.level(v)
    }

    pub fn depth(&self) -> usize {
        self.tree.depth()
    }

    pub fn root(&self) -> usize {
        self.tree.root()
    }

    /// Sum over all vertices of their distance to the root.
    pub fn root_distance_sum(&self) -> usize {
        self.tree.levels().iter().sum()
    }

    /// True iff `G[T_v]` is connected for every vertex `v`.
    pub fn is_normal(&self) -> bool {
        (0..self.graph.n()).all(|v| induces_connected(&self.graph, &self.tree.subtree(v)))
    }
}

/// `V(T_v)` together with the path from `v` to the root, sorted.
pub fn subtree_plus(e: &EliminationTree, v: usize) -> Result<Vec<usize>> {
    e.graph.check_vertex(v)?;
    let mut out = e.tree.subtree(v);
    out.extend(e.tree.path_to_root(v).into_iter().skip(1));
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Treedepth {
    pub treedepth: usize,
    /// Minimum depth of a single rooted tree whose closure contains the graph.
    pub connected_treedepth: usize,
    /// A tree of depth `connected_treedepth`.
    pub witness: EliminationTree,
}

pub fn treedepth_exact(g: &Graph) -> Result<Treedepth> {
    treedepth_exact_capped(g, DEFAULT_TREEDEPTH_CAP)
}

/// Exact treedepth by `td(G) = 1 + min_v td(G - v)` on connected graphs,
/// memoized on vertex subsets.
pub fn treedepth_exact_capped(g: &Graph, cap: usize) -> Result<Treedepth> {
    let cap = cap.min(64);
    if g.n() > cap {
        return Err(Error::CapExceeded { what: "exact treedepth", size: g.n(), cap });
    }
    if g.n() == 0 {
        return Err(Error::Invalid("treedepth of the empty graph".into()));
    }
    let mut solver = TdSolver::new(g);
    let mut comps: Vec<(usize, u64)> = connected_components(g)
        .into_iter()
        .map(|c| {
            let mask = c.iter().fold(0u64, |m, &v| m | (1 << v));
            (solver.solve(mask), mask)
        })
        .collect();
    // Deepest component first; stable so ties keep smallest-vertex order.
    comps.sort_by_key(|&(td, _)| std::cmp::Reverse(td));
    let treedepth = comps[0].0;
    let connected_treedepth = if comps.len() > 1 && comps[1].0 == treedepth { treedepth + 1 } else { treedepth };

    let mut parent = vec![usize::MAX; g.n()];
    let main_root = solver.build(comps[0].1, None, &mut parent);
    for &(_, mask) in &comps[1..] {
        solver.build(mask, Some(main_root), &mut parent);
    }
    let witness = EliminationTree::from_parents(g.clone(), parent)?;
    debug_assert_eq!(witness.depth(), connected_treedepth);
    Ok(Treedepth { treedepth, connected_treedepth, witness })
}

struct TdSolver {
    adj: Vec<u64>,
    // connected mask -> (treedepth, best root)
    memo: HashMap<u64, (usize, usize)>,
}

impl TdSolver {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w))).collect();
        TdSolver { adj, memo: HashMap::new() }
    }

    fn components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & mask & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    /// Treedepth of the connected subgraph induced by `mask`.
    fn solve(&mut self, mask: u64) -> usize {
        let size = mask.count_ones() as usize;
        if size == 1 {
            return 1;
        }
        if let Some(&(td, _)) = self.memo.get(&mask) {
            return td;
        }
        let mut best = (size, mask.trailing_zeros() as usize);
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut worst = 0;
            for comp in self.components(mask & !(1 << v)) {
                worst = worst.max(self.solve(comp));
                if 1 + worst >= best.0 {
                    break;
                }
            }
            if 1 + worst < best.0 {
                best = (1 + worst, v);
                if best.0 == 2 {
                    break;
                }
            }
        }
        self.memo.insert(mask, best);
        best.0
    }

    fn build(&mut self, mask: u64, above: Option<usize>, parent: &mut [usize]) -> usize {
        let root = if mask.count_ones() == 1 {
            mask.trailing_zeros() as usize
        } else {
            self.solve(mask);
            self.memo[&mask].1
        };
        parent[root] = above.unwrap_or(root);
        for comp in self.components(mask & !(1 << root)) {
            self.build(comp, Some(root), parent);
        }
        root
    }
}

/// Elimination tree from a depth-first spanning tree rooted at `root`.
pub fn dfs_elimination_tree(g: &Graph, root: usize) -> Result<EliminationTree> {
    g.check_vertex(root)?;
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    parent[root] = root;
    let mut stack = vec![(root, 0usize)];
    let mut visited = 1;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if let Some(&w) = g.neighbors(v).get(top.1) {
            top.1 += 1;
            if parent[w] == usize::MAX {
                parent[w] = v;
                visited += 1;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if visited != n {
        return Err(Error::Disconnected);
    }
    EliminationTree::from_parents(g.clone(), parent)
}

/// Normalizes the tree so that every `G[T_v]` is connected.
pub fn normalize_tree(e: &EliminationTree) -> Result<EliminationTree> {
    Ok(normalize_tree_traced(e)?.0)
}

/// As [`normalize_tree`], also returning the root-distance sum before the
/// first re-hang and after each one.
pub fn normalize_tree_traced(e: &EliminationTree) -> Result<(EliminationTree, Vec<usize>)> {
    if !e.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut current = e.clone();
    let mut sums = vec![current.root_distance_sum()];
    loop {
        let tree = &current.tree;
        // Deepest v with G[T_v] disconnected; smallest index on ties.
        let target = tree
            .bottom_up_order()
            .into_iter()
            .find(|&v| !induces_connected(&current.graph, &tree.subtree(v)));
        let Some(v) = target else {
            return Ok((current, sums));
        };
        let u = tree.parent(v).ok_or(Error::Disconnected)?;
        let w = tree
            .children(v)
            .iter()
            .copied()
            .filter(|&w| {
                let sub = tree.subtree(w);
                !current.graph.neighbors(v).iter().any(|x| sub.binary_search(x).is_ok())
            })
            .min()
            .expect("a child of a disconnected subtree has no edge to its parent");
        let mut parent = tree.parents().to_vec();
        parent[w] = u;
        current = EliminationTree::from_parents(current.graph.clone(), parent)?;
        sums.push(current.root_distance_sum());
    }
}
