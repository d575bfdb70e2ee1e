//! Simple undirected graphs on dense vertex indices, edge-list I/O, colourings
//! and their verification, minor models.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest graph on which [`longest_path_length`] runs its exact search.
pub const DEFAULT_LONGEST_PATH_CAP: usize = 25;

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u] = (0..n).filter(|&v| v != u).collect();
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, edges).expect("grid edges are valid")
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge {u} {v}"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    /// Adds the edge unless it is already present.
    pub(crate) fn ensure_edge(&mut self, u: usize, v: usize) {
        if u != v && !self.has_edge(u, v) {
            self.insert_edge(u, v).expect("checked edge");
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Canonical edge-list text: header `n m`, then one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses the `n m` edge-list format. Errors name the 1-based offending line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(Error::Parse { line: 1, message: "missing header \"n m\"".into() })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (line, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        if seen == m {
            return Err(Error::Parse { line, message: format!("more than {m} edge lines") });
        }
        let (u, v) = parse_pair(line, l)?;
        g.insert_edge(u, v).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse { line, message: "expected two integers".into() })?;
        tok.parse().map_err(|_| Error::Parse { line, message: format!("not a non-negative integer: {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse { line, message: "trailing tokens".into() });
    }
    Ok((a, b))
}

/// An induced subgraph together with the index maps between host and subgraph.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `old_to_new[v]` is the subgraph index of host vertex `v`, if kept.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[i]` is the host vertex behind subgraph vertex `i`.
    pub new_to_old: Vec<usize>,
}

/// Subgraph induced by `vertices`; new indices follow increasing host index.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<InducedSubgraph> {
    let mut new_to_old = vertices.to_vec();
    new_to_old.sort_unstable();
    new_to_old.dedup();
    for &v in &new_to_old {
        g.check_vertex(v)?;
    }
    let mut old_to_new = vec![None; g.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let mut adj = vec![Vec::new(); new_to_old.len()];
    for (i, &v) in new_to_old.iter().enumerate() {
        adj[i] = g.neighbors(v).iter().filter_map(|&w| old_to_new[w]).collect();
    }
    Ok(InducedSubgraph { graph: Graph { adj }, old_to_new, new_to_old })
}

/// Connected components, each sorted, listed by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    components_within(g, &vec![true; g.n()])
}

/// Components of `g[{v : keep[v]}]`, in host labels.
pub fn components_within(g: &Graph, keep: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if !keep[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// True iff `g[vertices]` is connected (and nonempty).
pub fn induces_connected(g: &Graph, vertices: &[usize]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let mut keep = vec![false; g.n()];
    for &v in vertices {
        keep[v] = true;
    }
    components_within(g, &keep).len() == 1
}

/// A vertex colouring with colours `0..count`, every index used.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Colouring {
    colours: Vec<usize>,
    count: usize,
}

impl Colouring {
    /// Accepts an assignment whose colour indices are exactly `0..m` for some `m`.
    pub fn new(colours: Vec<usize>) -> Result<Self> {
        let count = colours.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut used = vec![false; count];
        for &c in &colours {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::Invalid(format!("colour indices not contiguous: {missing} unused")));
        }
        Ok(Colouring { colours, count })
    }

    /// Relabels arbitrary colour values to `0..m` in order of first appearance.
    pub fn normalized<T: Ord + Clone>(raw: &[T]) -> Self {
        let mut seen = std::collections::BTreeMap::new();
        let colours = raw
            .iter()
            .map(|c| {
                let next = seen.len();
                *seen.entry(c.clone()).or_insert(next)
            })
            .collect();
        Colouring { colours, count: seen.len() }
    }

    pub fn constant(n: usize) -> Self {
        Colouring { colours: vec![0; n], count: usize::from(n > 0) }
    }

    #[inline]
    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour_count(&self) -> usize {
        self.count
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("colouring has {} vertices, graph has {}", self.len(), g.n())))
        }
    }
}

impl TryFrom<Vec<usize>> for Colouring {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Colouring::new(v)
    }
}

impl From<Colouring> for Vec<usize> {
    fn from(c: Colouring) -> Self {
        c.colours
    }
}

/// Monochromatic components as `(colour, sorted vertices)`, listed by smallest vertex.
pub fn monochromatic_components(g: &Graph, col: &Colouring) -> Vec<(usize, Vec<usize>)> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let c = col.colour(s);
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] && col.colour(w) == c {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push((c, comp));
    }
    out
}

/// Bound imposed on every monochromatic component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// At most this many vertices.
    Clustering(usize),
    /// Maximum degree at most this.
    Defect(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColouringReport {
    pub ok: bool,
    pub worst_component_size: usize,
    pub worst_max_degree: usize,
    /// A violating component (the worst one) when `ok` is false.
    pub witness: Option<Vec<usize>>,
}

pub fn verify_colouring(g: &Graph, col: &Colouring, bound: Bound) -> Result<ColouringReport> {
    col.check_graph(g)?;
    let mut report = ColouringReport { ok: true, worst_component_size: 0, worst_max_degree: 0, witness: None };
    let mut worst_violation = 0;
    for (c, comp) in monochromatic_components(g, col) {
        let size = comp.len();
        let max_deg = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| col.colour(w) == c).count())
            .max()
            .unwrap_or(0);
        report.worst_component_size = report.worst_component_size.max(size);
        report.worst_max_degree = report.worst_max_degree.max(max_deg);
        let measure = match bound {
            Bound::Clustering(limit) => (size > limit).then_some(size),
            Bound::Defect(limit) => (max_deg > limit).then_some(max_deg),
        };
        if let Some(m) = measure {
            report.ok = false;
            if m > worst_violation {
                worst_violation = m;
                report.witness = Some(comp);
            }
        }
    }
    Ok(report)
}

/// Number of vertices on a longest simple path, by exhaustive search.
pub fn longest_path_length(g: &Graph) -> Result<usize> {
    longest_path_length_capped(g, DEFAULT_LONGEST_PATH_CAP)
}

pub fn longest_path_length_capped(g: &Graph, cap: usize) -> Result<usize> {
    if g.n() > cap.min(64) {
        return Err(Error::CapExceeded { what: "longest path search", size: g.n(), cap: cap.min(64) });
    }
    let mut best = 0;
    for comp in connected_components(g) {
        if comp.len() <= best {
            continue;
        }
        let mut comp_best = 0;
        for &s in &comp {
            extend_path(g, s, 1u64 << s, 1, comp.len(), &mut comp_best);
            if comp_best == comp.len() {
                break;
            }
        }
        best = best.max(comp_best);
    }
    Ok(best)
}

fn extend_path(g: &Graph, v: usize, visited: u64, len: usize, target: usize, best: &mut usize) {
    *best = (*best).max(len);
    if *best == target {
        return;
    }
    for &w in g.neighbors(v) {
        if visited & (1 << w) == 0 {
            extend_path(g, w, visited | (1 << w), len + 1, target, best);
            if *best == target {
                return;
            }
        }
    }
}

/// Branch sets in `host` realizing `pattern` as a minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub host: Graph,
    pub pattern: Graph,
    /// `branch_sets[p]` holds the host vertices contracted onto pattern vertex `p`.
    pub branch_sets: Vec<Vec<usize>>,
}

impl MinorModel {
    /// Checks disjointness, connectivity and realization of every pattern edge.
    /// The error string names the first violation found.
    pub fn verify(&self) -> std::result::Result<(), String> {
        if self.branch_sets.len() != self.pattern.n() {
            return Err(format!(
                "{} branch sets for a pattern on {} vertices",
                self.branch_sets.len(),
                self.pattern.n()
            ));
        }
        let mut owner = vec![None; self.host.n()];
        for (p, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(format!("branch set {p} is empty"));
            }
            for &v in set {
                if v >= self.host.n() {
                    return Err(format!("branch set {p} names vertex {v} outside the host"));
                }
                if let Some(q) = owner[v] {
                    return Err(format!("branch sets {q} and {p} overlap at vertex {v}"));
                }
                owner[v] = Some(p);
            }
        }
        for (p, set) in self.branch_sets.iter().enumerate() {
            if !induces_connected(&self.host, set) {
                return Err(format!("branch set {p} disconnected"));
            }
        }
        for (a, b) in self.pattern.edges() {
            let realized = self.branch_sets[a]
                .iter()
                .any(|&x| self.host.neighbors(x).iter().any(|&y| owner[y] == Some(b)));
            if !realized {
                return Err(format!("pattern edge {a}-{b} not realized"));
            }
        }
        Ok(())
    }
}
