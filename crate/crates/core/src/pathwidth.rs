//! Path decompositions, exact pathwidth at desk scale, and the bag-peeling
//! two-colouring whose monochromatic paths have at most `(w+3)^w` vertices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::elimination::{dfs_elimination_tree, EliminationTree, treedepth_exact_capped, DEFAULT_TREEDEPTH_CAP};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, monochromatic_components, Colouring, Graph};

/// Largest graph on which [`exact_pathwidth`] runs by default.
pub const DEFAULT_PATHWIDTH_CAP: usize = 12;

pub const RED: usize = 0;
pub const BLUE: usize = 1;

/// Ordered sequence of bags. Serialized as a JSON array of bags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    /// Bags are stored sorted and deduplicated.
    pub fn new(mut bags: Vec<Vec<usize>>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        PathDecomposition { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Largest bag size minus one (zero when every bag has at most one vertex).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Bags of the path `0 - 1 - ... - (n-1)`: `{i, i+1}`.
    pub fn for_path(n: usize) -> Self {
        if n <= 1 {
            return PathDecomposition::new(vec![(0..n).collect()]);
        }
        PathDecomposition::new((1..n).map(|v| vec![v - 1, v]).collect())
    }

    /// Width-`min(rows, cols)` decomposition of [`Graph::grid`]`(rows, cols)`,
    /// sweeping vertex by vertex along the longer side.
    pub fn for_grid(rows: usize, cols: usize) -> Self {
        let idx = |r: usize, c: usize| r * cols + c;
        // Enumerate vertices column-major when columns are the longer side.
        let column_major = cols >= rows;
        let (outer, inner) = if column_major { (cols, rows) } else { (rows, cols) };
        let order: Vec<usize> = (0..outer)
            .flat_map(|o| (0..inner).map(move |i| if column_major { idx(i, o) } else { idx(o, i) }))
            .collect();
        // Bag t holds the window of inner+1 consecutive vertices ending at order[t].
        let bags = (0..order.len())
            .map(|t| order[t.saturating_sub(inner)..=t].to_vec())
            .collect();
        PathDecomposition::new(bags)
    }

    /// Root-to-leaf paths of the tree, leaves in DFS order. Width is the
    /// tree depth minus one.
    pub fn from_elimination_tree(e: &EliminationTree) -> Self {
        let tree = e.tree();
        let mut bags = Vec::new();
        let mut stack = vec![tree.root()];
        while let Some(v) = stack.pop() {
            if tree.is_leaf(v) {
                bags.push(tree.path_to_root(v));
            }
            stack.extend(tree.children(v).iter().rev());
        }
        PathDecomposition::new(bags)
    }

    fn restricted(&self, keep: &[bool]) -> Self {
        PathDecomposition {
            bags: self.bags.iter().map(|b| b.iter().copied().filter(|&v| keep[v]).collect()).collect(),
        }
    }
}

impl From<Vec<Vec<usize>>> for PathDecomposition {
    fn from(bags: Vec<Vec<usize>>) -> Self {
        PathDecomposition::new(bags)
    }
}

impl From<PathDecomposition> for Vec<Vec<usize>> {
    fn from(pd: PathDecomposition) -> Self {
        pd.bags
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { vertex: usize },
    VertexMissing { vertex: usize },
    NotAnInterval { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { vertex } => write!(f, "bag names vertex {vertex} outside the graph"),
            Violation::VertexMissing { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::NotAnInterval { vertex } => write!(f, "bags containing vertex {vertex} are not consecutive"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge {u}-{v} is in no bag"),
        }
    }
}

/// Checks the interval property for every vertex and coverage of every edge.
pub fn validate_path_decomposition(g: &Graph, pd: &PathDecomposition) -> std::result::Result<(), Violation> {
    validate_on(g, pd, &vec![true; g.n()])
}

/// As [`validate_path_decomposition`], for the subgraph induced by `present`.
fn validate_on(g: &Graph, pd: &PathDecomposition, present: &[bool]) -> std::result::Result<(), Violation> {
    let n = g.n();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0; n];
    let mut count = vec![0; n];
    for (i, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            if v >= n || !present[v] {
                return Err(Violation::VertexOutOfRange { vertex: v });
            }
            first[v] = first[v].min(i);
            last[v] = i;
            count[v] += 1;
        }
    }
    for v in (0..n).filter(|&v| present[v]) {
        if count[v] == 0 {
            return Err(Violation::VertexMissing { vertex: v });
        }
        if last[v] - first[v] + 1 != count[v] {
            return Err(Violation::NotAnInterval { vertex: v });
        }
    }
    for (u, v) in g.edges().filter(|&(u, v)| present[u] && present[v]) {
        // Intervals of u and v must overlap.
        if first[u].max(first[v]) > last[u].min(last[v]) {
            return Err(Violation::EdgeUncovered { u, v });
        }
    }
    Ok(())
}

pub fn exact_pathwidth(g: &Graph) -> Result<(usize, PathDecomposition)> {
    exact_pathwidth_capped(g, DEFAULT_PATHWIDTH_CAP)
}

/// Exact pathwidth as vertex separation number, by dynamic programming over
/// placed prefixes; the witness places one new vertex per bag.
pub fn exact_pathwidth_capped(g: &Graph, cap: usize) -> Result<(usize, PathDecomposition)> {
    let n = g.n();
    let cap = cap.min(24);
    if n > cap {
        return Err(Error::CapExceeded { what: "exact pathwidth", size: n, cap });
    }
    if n == 0 {
        return Ok((0, PathDecomposition::new(vec![])));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let boundary = |s: u32| -> u32 {
        (0..n).filter(|&v| s & (1 << v) != 0 && adj[v] & !s != 0).count() as u32
    };
    let size = 1usize << n;
    let mut best = vec![u32::MAX; size];
    let mut choice = vec![0u8; size];
    best[0] = 0;
    for s in 1..size as u32 {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let prev = s & !(1 << v);
            let cost = best[prev as usize].max(boundary(prev));
            if cost < best[s as usize] {
                best[s as usize] = cost;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let mut placed = 0u32;
    let mut bags = Vec::with_capacity(n);
    for &v in &order {
        let mut bag: Vec<usize> = (0..n).filter(|&u| placed & (1 << u) != 0 && adj[u] & !placed != 0).collect();
        bag.push(v);
        bags.push(bag);
        placed |= 1 << v;
    }
    Ok((best[full as usize] as usize, PathDecomposition::new(bags)))
}

/// One peeling step: the selected bag indices and the colour given to each
/// selected vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peel {
    /// 0-based indices `t_1 < t_2 < ...` of the selected bags.
    pub selected: Vec<usize>,
    /// `(vertex, colour)` for every vertex of a selected bag.
    pub coloured: Vec<(usize, usize)>,
}

/// Greedy selection: the first nonempty bag, then repeatedly the next
/// nonempty bag disjoint from the last selected one. Selected bags
/// alternate red and blue.
pub fn peel_layer(pd: &PathDecomposition) -> Peel {
    let mut selected: Vec<usize> = Vec::new();
    for (i, bag) in pd.bags.iter().enumerate() {
        if bag.is_empty() {
            continue;
        }
        let disjoint = match selected.last() {
            None => true,
            Some(&t) => bag.iter().all(|v| pd.bags[t].binary_search(v).is_err()),
        };
        if disjoint {
            selected.push(i);
        }
    }
    let coloured = selected
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| pd.bags[t].iter().map(move |&v| (v, if i % 2 == 0 { RED } else { BLUE })))
        .collect();
    Peel { selected, coloured }
}

/// One level of the recursion.
#[derive(Debug, Clone)]
pub struct PeelLevel {
    /// Decomposition of the still-uncoloured subgraph entering this level.
    pub decomposition: PathDecomposition,
    pub width: usize,
    /// Selected bags, or `None` at the base level (width at most one),
    /// where the remaining forest is properly 2-coloured.
    pub selected: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct TwoColouring {
    pub colouring: Colouring,
    pub width: usize,
    pub levels: Vec<PeelLevel>,
}

impl TwoColouring {
    /// `(w+3)^w`, the bound on monochromatic path length.
    pub fn path_bound(&self) -> u64 {
        path_bound(self.width)
    }
}

pub fn path_bound(width: usize) -> u64 {
    (width as u64 + 3).saturating_pow(width as u32)
}

/// Two-colours `g` by peeling disjoint bags until the residual decomposition
/// has width at most one, then properly colouring the residual forest.
pub fn two_colour(g: &Graph, pd: &PathDecomposition) -> Result<TwoColouring> {
    validate_path_decomposition(g, pd).map_err(|v| Error::InvalidDecomposition(v.to_string()))?;
    let n = g.n();
    let mut colour = vec![usize::MAX; n];
    let mut present = vec![true; n];
    let mut current = pd.clone();
    let mut levels = Vec::new();
    loop {
        debug_assert!(validate_on(g, &current, &present).is_ok());
        let width = current.width();
        if width <= 1 {
            levels.push(PeelLevel { decomposition: current, width, selected: None });
            colour_forest(g, &present, &mut colour)?;
            break;
        }
        let peel = peel_layer(&current);
        for &(v, c) in &peel.coloured {
            colour[v] = c;
            present[v] = false;
        }
        let next = current.restricted(&present);
        levels.push(PeelLevel { decomposition: current, width, selected: Some(peel.selected) });
        current = next;
    }
    let colouring = Colouring::new(colour)?;
    Ok(TwoColouring { colouring, width: pd.width(), levels })
}

fn colour_forest(g: &Graph, present: &[bool], colour: &mut [usize]) -> Result<()> {
    let mut queue = VecDeque::new();
    for s in (0..g.n()).filter(|&s| present[s]) {
        if colour[s] != usize::MAX {
            continue;
        }
        colour[s] = RED;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v).iter().filter(|&&w| present[w]) {
                if colour[w] == usize::MAX {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    return Err(Error::InvalidDecomposition(
                        "residual graph of width at most one is not bipartite".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoTreedepthReport {
    pub ok: bool,
    /// Largest exact treedepth, or DFS height where the exact oracle was skipped.
    pub worst: usize,
    pub exact_components: usize,
    pub dfs_components: usize,
    /// A component exceeding the bound.
    pub witness: Option<Vec<usize>>,
    pub note: Option<String>,
}

/// Checks every monochromatic component has treedepth at most `bound`:
/// exactly when the component has at most `cap` vertices, otherwise through
/// the (sufficient) height of a DFS tree.
pub fn mono_treedepth_check(g: &Graph, col: &Colouring, bound: usize, cap: usize) -> Result<MonoTreedepthReport> {
    col.check_graph(g)?;
    let mut report =
        MonoTreedepthReport { ok: true, worst: 0, exact_components: 0, dfs_components: 0, witness: None, note: None };
    for (_, comp) in monochromatic_components(g, col) {
        let sub = induced_subgraph(g, &comp)?.graph;
        let depth = if comp.len() <= cap {
            report.exact_components += 1;
            treedepth_exact_capped(&sub, cap)?.treedepth
        } else {
            report.dfs_components += 1;
            let h = dfs_elimination_tree(&sub, 0)?.depth();
            if h > bound {
                return Err(Error::CapExceeded { what: "exact treedepth of a monochromatic component", size: comp.len(), cap });
            }
            report.note = Some(format!("components above {cap} vertices checked by DFS height only"));
            h
        };
        report.worst = report.worst.max(depth);
        if depth > bound && report.ok {
            report.ok = false;
            report.witness = Some(comp);
        }
    }
    Ok(report)
}

pub fn mono_treedepth_check_default(g: &Graph, col: &Colouring, bound: usize) -> Result<MonoTreedepthReport> {
    mono_treedepth_check(g, col, bound, DEFAULT_TREEDEPTH_CAP)
}

/// Colour of `v` is the pair `(a(v), b(v))`, numbered in lexicographic order.
pub fn product_colouring(a: &Colouring, b: &Colouring) -> Result<Colouring> {
    if a.len() != b.len() {
        return Err(Error::Mismatch(format!("colourings of {} and {} vertices", a.len(), b.len())));
    }
    let pairs: Vec<(usize, usize)> = (0..a.len()).map(|v| (a.colour(v), b.colour(v))).collect();
    let mut index = BTreeMap::new();
    for &p in &pairs {
        index.insert(p, 0);
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    Colouring::new(pairs.iter().map(|p| index[p]).collect())
}
