//! Canonical labeling of small vertex-coloured structures by
//! individualization and refinement.
//!
//! A structure has a colour per vertex and a small relation code for every
//! ordered pair of vertices. The canonical code is the lexicographically
//! smallest `(colours, relation matrix)` read off over all discrete
//! partitions reachable from the equitable refinement, which is exact but
//! exponential in the automorphism group. Intended for desk-scale inputs.

use crate::graph::Graph;

/// Relation code bit: the pair is joined by an edge.
pub(crate) const REL_EDGE: u8 = 1;
/// Relation code bit: the first vertex strictly precedes the second.
pub(crate) const REL_LESS: u8 = 2;
/// Relation code bit: the second vertex strictly precedes the first.
pub(crate) const REL_GREATER: u8 = 4;

pub(crate) struct Structure {
    pub colour: Vec<u32>,
    /// `rel[a][b]`, zero on the diagonal.
    pub rel: Vec<Vec<u8>>,
}

/// Canonical code; equal codes iff isomorphic structures.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u32>);

impl Structure {
    fn n(&self) -> usize {
        self.colour.len()
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let n = self.n();
        if n == 0 {
            return CanonicalCode(Vec::new());
        }
        let mut colours: Vec<u32> = self.colour.clone();
        colours.sort_unstable();
        colours.dedup();
        let cells: Vec<Vec<usize>> = colours
            .iter()
            .map(|&c| (0..n).filter(|&v| self.colour[v] == c).collect())
            .collect();
        let mut best = None;
        self.search(cells, &mut best);
        best.expect("search visits at least one leaf")
    }

    fn search(&self, cells: Vec<Vec<usize>>, best: &mut Option<CanonicalCode>) {
        let cells = self.refine(cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        match target {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let code = self.code_for(&order);
                if best.as_ref().is_none_or(|b| code < *b) {
                    *best = Some(code);
                }
            }
            Some(t) => {
                for &v in &cells[t] {
                    let mut next = Vec::with_capacity(cells.len() + 1);
                    next.extend_from_slice(&cells[..t]);
                    next.push(vec![v]);
                    next.push(cells[t].iter().copied().filter(|&w| w != v).collect());
                    next.extend_from_slice(&cells[t + 1..]);
                    self.search(next, best);
                }
            }
        }
    }

    /// Splits cells by the multiset of (cell, relation) pairs until stable.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u8)>, usize)> = c
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(usize, u8)> = (0..n)
                            .filter(|&w| self.rel[v][w] != 0)
                            .map(|w| (cell_of[w], self.rel[v][w]))
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn code_for(&self, order: &[usize]) -> CanonicalCode {
        let n = order.len();
        let mut code = Vec::with_capacity(1 + n + n * n);
        code.push(n as u32);
        code.extend(order.iter().map(|&v| self.colour[v]));
        for &a in order {
            for &b in order {
                code.push(u32::from(self.rel[a][b]));
            }
        }
        CanonicalCode(code)
    }
}

/// Canonical form of a plain graph.
pub fn graph_canonical_code(g: &Graph) -> CanonicalCode {
    let n = g.n();
    let mut rel = vec![vec![0u8; n]; n];
    for (u, v) in g.edges() {
        rel[u][v] = REL_EDGE;
        rel[v][u] = REL_EDGE;
    }
    Structure { colour: vec![0; n], rel }.canonical_code()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && graph_canonical_code(a) == graph_canonical_code(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn relabeled_graphs_share_codes() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let h = relabel(&g, &[5, 3, 1, 0, 2, 4]);
        assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn distinguishes_regular_graphs() {
        // C6 versus two triangles: same degree sequence.
        let c6 = Graph::cycle(6);
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&c6, &two));
        assert!(is_isomorphic(&Graph::cycle(6), &relabel(&c6, &[1, 3, 5, 0, 2, 4])));
    }

    #[test]
    fn path_and_star_differ() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&star, &Graph::path(4)));
    }
}
