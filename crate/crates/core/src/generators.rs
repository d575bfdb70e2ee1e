//! Rooted trees, complete k-ary trees, and their closures and weak closures.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest complete k-ary tree [`complete_kary_tree`] will build.
pub const DEFAULT_TREE_CAP: usize = 1 << 16;

/// A rooted tree on `0..n`; the root is its own parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<usize>,
    root: usize,
    children: Vec<Vec<usize>>,
    level: Vec<usize>,
    // Euler interval: a is an ancestor-or-self of b iff tin[a] <= tin[b] < tout[a].
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl RootedTree {
    /// Builds a tree from a parent array with exactly one self-parented root.
    pub fn from_parents(parent: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("empty tree".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v] == v).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidTree(format!("expected one root, found {}", roots.len())));
        }
        if let Some(v) = (0..n).find(|&v| parent[v] >= n) {
            return Err(Error::InvalidTree(format!("parent of {v} out of range")));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v != root {
                children[parent[v]].push(v);
            }
        }
        let mut level = vec![usize::MAX; n];
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut clock = 0;
        // Iterative DFS; children visited in increasing index order.
        let mut stack = vec![(root, 0usize)];
        level[root] = 0;
        tin[root] = clock;
        clock += 1;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < children[v].len() {
                let c = children[v][top.1];
                top.1 += 1;
                level[c] = level[v] + 1;
                tin[c] = clock;
                clock += 1;
                stack.push((c, 0));
            } else {
                tout[v] = clock;
                stack.pop();
            }
        }
        if clock != n {
            return Err(Error::InvalidTree("parent relation has a cycle".into()));
        }
        Ok(RootedTree { parent, root, children, level, tin, tout })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    #[inline]
    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != self.root).then(|| self.parent[v])
    }

    #[inline]
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Distance from the root.
    #[inline]
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    /// Maximum number of vertices on a root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.level.iter().max().map_or(0, |&l| l + 1)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// `a` is a strict ancestor of `b`.
    #[inline]
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        a != b && self.tin[a] <= self.tin[b] && self.tin[b] < self.tout[a]
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.is_ancestor(a, b) || self.is_ancestor(b, a)
    }

    /// Vertices of the subtree rooted at `v`, sorted.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend_from_slice(&self.children[x]);
        }
        out.sort_unstable();
        out
    }

    /// `v`, its parent, ..., the root.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut x = v;
        while x != self.root {
            x = self.parent[x];
            out.push(x);
        }
        out
    }

    /// Vertices in non-increasing level order, ties by index.
    pub fn bottom_up_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.level[v]), v));
        order
    }
}

/// Complete k-ary tree of depth `h` (h vertices on every root-to-leaf path),
/// numbered in BFS order from root 0.
pub fn complete_kary_tree(h: usize, k: usize) -> Result<RootedTree> {
    complete_kary_tree_capped(h, k, DEFAULT_TREE_CAP)
}

pub fn complete_kary_tree_capped(h: usize, k: usize, cap: usize) -> Result<RootedTree> {
    if h == 0 || k == 0 {
        return Err(Error::Invalid("complete k-ary tree needs h >= 1 and k >= 1".into()));
    }
    let size = kary_tree_size(h, k).filter(|&s| s <= cap);
    let Some(size) = size else {
        return Err(Error::CapExceeded { what: "complete k-ary tree", size: usize::MAX, cap });
    };
    let mut parent = vec![0; size];
    // Vertex i >= 1 is child number (i-1) % k of (i-1) / k.
    for (i, p) in parent.iter_mut().enumerate().skip(1) {
        *p = (i - 1) / k;
    }
    RootedTree::from_parents(parent)
}

/// `1 + k + ... + k^(h-1)`, if it fits.
pub fn kary_tree_size(h: usize, k: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..h {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(k)?;
    }
    Some(total)
}

/// For each vertex of [`complete_kary_tree`]`(h, k)`, the child choices
/// (each in `1..=k`) leading to it from the root.
pub fn kary_addresses(tree: &RootedTree) -> Vec<Vec<usize>> {
    let mut addr = vec![Vec::new(); tree.n()];
    for v in 0..tree.n() {
        if let Some(p) = tree.parent(v) {
            let pos = tree.children(p).iter().position(|&c| c == v).expect("child of its parent");
            let mut a = addr[p].clone();
            a.push(pos + 1);
            addr[v] = a;
        }
    }
    addr
}

/// Edge between every strict ancestor-descendant pair.
pub fn closure(t: &RootedTree) -> Graph {
    let mut g = Graph::empty(t.n());
    for v in 0..t.n() {
        let mut x = v;
        while let Some(p) = t.parent(x) {
            g.ensure_edge(p, v);
            x = p;
        }
    }
    g
}

/// Edge between every leaf and each of its strict ancestors.
pub fn weak_closure(t: &RootedTree) -> Graph {
    let mut g = Graph::empty(t.n());
    for v in (0..t.n()).filter(|&v| t.is_leaf(v)) {
        let mut x = v;
        while let Some(p) = t.parent(x) {
            g.ensure_edge(p, v);
            x = p;
        }
    }
    g
}

/// The closure C⟨h,k⟩ of the complete k-ary tree of depth h.
pub fn closure_graph(h: usize, k: usize) -> Result<Graph> {
    Ok(closure(&complete_kary_tree(h, k)?))
}

/// The weak closure W⟨h,k⟩ of the complete k-ary tree of depth h.
pub fn weak_closure_graph(h: usize, k: usize) -> Result<Graph> {
    Ok(weak_closure(&complete_kary_tree(h, k)?))
}
