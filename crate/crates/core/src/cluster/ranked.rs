use crate::canon::{CanonicalCode, Structure, REL_EDGE, REL_GREATER, REL_LESS};
use crate::elimination::EliminationTree;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph with a level per vertex and a strict partial order compatible
/// with the levels: `x ≺ y` implies `L(x) < L(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedGraph {
    graph: Graph,
    level: Vec<usize>,
    /// `less[x][y]` iff `x ≺ y`.
    less: Vec<Vec<bool>>,
}

impl RankedGraph {
    pub fn new(graph: Graph, level: Vec<usize>, less: Vec<Vec<bool>>) -> Result<Self> {
        let n = graph.n();
        if level.len() != n || less.len() != n || less.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("ranked graph: level map or order has the wrong size".into()));
        }
        for x in 0..n {
            if less[x][x] {
                return Err(Error::Invalid(format!("ranked graph: order is reflexive at {x}")));
            }
            for y in 0..n {
                if less[x][y] && level[x] >= level[y] {
                    return Err(Error::Invalid(format!(
                        "ranked graph: {x} precedes {y} but L({x}) = {} >= L({y}) = {}",
                        level[x], level[y]
                    )));
                }
                for z in 0..n {
                    if less[x][y] && less[y][z] && !less[x][z] {
                        return Err(Error::Invalid(format!("ranked graph: order not transitive on {x}, {y}, {z}")));
                    }
                }
            }
        }
        Ok(RankedGraph { graph, level, less })
    }

    /// Builds the order as the transitive closure of `pairs` (each `x ≺ y`).
    pub fn from_pairs(graph: Graph, level: Vec<usize>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = graph.n();
        let mut less = vec![vec![false; n]; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::VertexOutOfRange { vertex: x.max(y), n });
            }
            less[x][y] = true;
        }
        for m in 0..n {
            for x in 0..n {
                if less[x][m] {
                    for y in 0..n {
                        if less[m][y] {
                            less[x][y] = true;
                        }
                    }
                }
            }
        }
        RankedGraph::new(graph, level, less)
    }

    /// The ranked graph induced on `vertices` of an elimination tree's graph:
    /// levels are tree levels and the order is the ancestor relation.
    pub fn induced(e: &EliminationTree, vertices: &[usize]) -> Self {
        let g = e.graph();
        let n = vertices.len();
        let mut sub = Graph::empty(n);
        let mut less = vec![vec![false; n]; n];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if i < j && g.has_edge(a, b) {
                    sub.ensure_edge(i, j);
                }
                less[i][j] = e.tree().is_ancestor(a, b);
            }
        }
        let level = vertices.iter().map(|&v| e.level(v)).collect();
        RankedGraph { graph: sub, level, less }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn level(&self, x: usize) -> usize {
        self.level[x]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    /// `x ≺ y`.
    #[inline]
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.less[x][y]
    }

    /// Restriction to `vertices`, renumbered in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> RankedGraph {
        let n = vertices.len();
        let mut sub = Graph::empty(n);
        let mut less = vec![vec![false; n]; n];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if i < j && self.graph.has_edge(a, b) {
                    sub.ensure_edge(i, j);
                }
                less[i][j] = self.less[a][b];
            }
        }
        let level = vertices.iter().map(|&v| self.level[v]).collect();
        RankedGraph { graph: sub, level, less }
    }

    /// Canonical code under isomorphisms preserving edges, levels and order.
    pub fn canonical_code(&self) -> CanonicalCode {
        let n = self.n();
        let mut rel = vec![vec![0u8; n]; n];
        for x in 0..n {
            for y in 0..n {
                let mut code = 0;
                if self.graph.has_edge(x, y) {
                    code |= REL_EDGE;
                }
                if self.less[x][y] {
                    code |= REL_LESS;
                }
                if self.less[y][x] {
                    code |= REL_GREATER;
                }
                rel[x][y] = code;
            }
        }
        Structure { colour: self.level.iter().map(|&l| l as u32).collect(), rel }.canonical_code()
    }

    pub fn is_isomorphic(&self, other: &RankedGraph) -> bool {
        self.n() == other.n()
            && self.graph.edge_count() == other.graph.edge_count()
            && self.canonical_code() == other.canonical_code()
    }
}

/// Result of an i-splice: the ranked graph and, per new vertex, its origin
/// `(v, j)` with `j = 0` for kept vertices and `j ∈ 1..=k` for copies.
#[derive(Debug, Clone)]
pub struct Spliced {
    pub ranked: RankedGraph,
    pub origin: Vec<(usize, usize)>,
}

impl Spliced {
    /// Index of the new vertex `(v, j)`, if it exists.
    pub fn index_of(&self, v: usize, j: usize) -> Option<usize> {
        self.origin.iter().position(|&o| o == (v, j))
    }
}

/// The i-splice: vertices with level at most `i` are kept once as `(v, 0)`,
/// the others are copied `k` times as `(v, 1..=k)`. Kept vertices are
/// listed first, then copy 1, copy 2, and so on.
pub fn splice(rg: &RankedGraph, i: usize, k: usize) -> Spliced {
    let low: Vec<usize> = (0..rg.n()).filter(|&v| rg.level(v) <= i).collect();
    let high: Vec<usize> = (0..rg.n()).filter(|&v| rg.level(v) > i).collect();
    let mut origin: Vec<(usize, usize)> = low.iter().map(|&v| (v, 0)).collect();
    for j in 1..=k {
        origin.extend(high.iter().map(|&v| (v, j)));
    }
    let n = origin.len();
    let mut graph = Graph::empty(n);
    let mut less = vec![vec![false; n]; n];
    for (a, &(v, ja)) in origin.iter().enumerate() {
        for (b, &(w, jb)) in origin.iter().enumerate() {
            // Pairs inside one copy, or with a kept vertex; distinct copies never relate.
            let related = ja == 0 || jb == 0 || ja == jb;
            if !related {
                continue;
            }
            if a < b && rg.graph().has_edge(v, w) {
                graph.ensure_edge(a, b);
            }
            less[a][b] = rg.precedes(v, w);
        }
    }
    let level = origin.iter().map(|&(v, _)| rg.level(v)).collect();
    Spliced { ranked: RankedGraph { graph, level, less }, origin }
}
