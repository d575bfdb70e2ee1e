#![allow(dead_code)]

use cck_core::elimination::EliminationTree;
use cck_core::generators::RootedTree;
use cck_core::graph::{connected_components, induced_subgraph};
use cck_core::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Keeps each edge with probability `p`, then returns the largest component.
pub fn random_connected_subgraph(g: &Graph, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().filter(|_| rng.gen_bool(p)).collect();
    let sparse = Graph::from_edges(g.n(), edges).unwrap();
    let comp = connected_components(&sparse).into_iter().max_by_key(|c| c.len()).unwrap();
    induced_subgraph(&sparse, &comp).unwrap().graph
}

/// Random tree on `n` vertices with `parent(i) < i`.
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (rng.gen_range(0..i), i))).unwrap()
}

/// Random rooted tree (root 0, `parent(i) < i`) with a random subset of the
/// ancestor-descendant pairs as edges.
pub fn random_elimination_tree(n: usize, p: f64, rng: &mut ChaCha8Rng) -> EliminationTree {
    let mut parent = vec![0; n];
    for (i, slot) in parent.iter_mut().enumerate().skip(1) {
        *slot = rng.gen_range(0..i);
    }
    let tree = RootedTree::from_parents(parent).unwrap();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| tree.is_ancestor(a, b))
        .filter(|_| rng.gen_bool(p))
        .collect();
    EliminationTree::new(Graph::from_edges(n, edges).unwrap(), tree).unwrap()
}
