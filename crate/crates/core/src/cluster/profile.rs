use std::collections::BTreeMap;

use super::ranked::RankedGraph;
use crate::elimination::{subtree_plus, EliminationTree};
use crate::error::{Error, Result};

/// Embedding of a ranked graph into `G[T_v^+]` satisfying the level
/// condition (A) and the order condition (B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub ranked: RankedGraph,
    /// `embedding[x]` is the host vertex of ranked vertex `x`.
    pub embedding: Vec<usize>,
}

impl Witness {
    /// Rechecks the embedding against `G[T_v^+]`.
    pub fn verify(&self, e: &EliminationTree, v: usize) -> std::result::Result<(), String> {
        let rg = &self.ranked;
        let phi = &self.embedding;
        if phi.len() != rg.n() {
            return Err("embedding has the wrong length".into());
        }
        let allowed = subtree_plus(e, v).map_err(|err| err.to_string())?;
        let tree = e.tree();
        for x in 0..rg.n() {
            if allowed.binary_search(&phi[x]).is_err() {
                return Err(format!("vertex {x} maps outside T_{v}^+"));
            }
            if rg.level(x) != e.level(phi[x]) {
                return Err(format!("vertex {x} has level {} but its image has level {}", rg.level(x), e.level(phi[x])));
            }
            for y in 0..rg.n() {
                if x == y {
                    continue;
                }
                if phi[x] == phi[y] {
                    return Err(format!("vertices {x} and {y} share an image"));
                }
                if rg.precedes(x, y) != tree.is_ancestor(phi[x], phi[y]) {
                    return Err(format!("order between {x} and {y} does not match ancestry"));
                }
                if rg.graph().has_edge(x, y) && !e.graph().has_edge(phi[x], phi[y]) {
                    return Err(format!("edge {x}-{y} has no image edge"));
                }
            }
        }
        Ok(())
    }
}

/// Decides by exhaustive backtracking whether `rg` is contained in `G[T_v^+]`.
pub fn contained(rg: &RankedGraph, e: &EliminationTree, v: usize) -> Option<Witness> {
    contained_with_budget(rg, e, v, u64::MAX).expect("unbounded search")
}

/// As [`contained`], giving up after `budget` partial assignments.
pub fn contained_with_budget(rg: &RankedGraph, e: &EliminationTree, v: usize, budget: u64) -> Result<Option<Witness>> {
    let host = subtree_plus(e, v)?;
    let depth = e.depth();
    if (0..rg.n()).any(|x| rg.level(x) >= depth) {
        return Ok(None);
    }
    let mut by_level = vec![Vec::new(); depth];
    for &w in &host {
        by_level[e.level(w)].push(w);
    }
    // Ancestors before descendants; within a level, most constrained first.
    let mut order: Vec<usize> = (0..rg.n()).collect();
    order.sort_by_key(|&x| (rg.level(x), std::cmp::Reverse(rg.graph().degree(x)), x));
    let mut search = Containment {
        rg,
        e,
        by_level,
        order,
        phi: vec![usize::MAX; rg.n()],
        used: vec![false; e.graph().n()],
        steps: 0,
        budget,
    };
    match search.extend(0) {
        Err(()) => Err(Error::BudgetExceeded { budget }),
        Ok(false) => Ok(None),
        Ok(true) => Ok(Some(Witness { ranked: rg.clone(), embedding: search.phi })),
    }
}

struct Containment<'a> {
    rg: &'a RankedGraph,
    e: &'a EliminationTree,
    by_level: Vec<Vec<usize>>,
    order: Vec<usize>,
    phi: Vec<usize>,
    used: Vec<bool>,
    steps: u64,
    budget: u64,
}

impl Containment<'_> {
    fn extend(&mut self, pos: usize) -> std::result::Result<bool, ()> {
        if pos == self.order.len() {
            return Ok(true);
        }
        let x = self.order[pos];
        let level = self.rg.level(x);
        for idx in 0..self.by_level[level].len() {
            let c = self.by_level[level][idx];
            if self.used[c] || !self.compatible(pos, x, c) {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(());
            }
            self.phi[x] = c;
            self.used[c] = true;
            if self.extend(pos + 1)? {
                return Ok(true);
            }
            self.used[c] = false;
            self.phi[x] = usize::MAX;
        }
        Ok(false)
    }

    fn compatible(&self, pos: usize, x: usize, c: usize) -> bool {
        let tree = self.e.tree();
        let g = self.e.graph();
        self.order[..pos].iter().all(|&y| {
            let d = self.phi[y];
            self.rg.precedes(y, x) == tree.is_ancestor(d, c)
                && self.rg.precedes(x, y) == tree.is_ancestor(c, d)
                && (!self.rg.graph().has_edge(x, y) || g.has_edge(c, d))
        })
    }
}

/// Canonical key of a ranked graph induced on a vertex subset of an
/// elimination tree. Such ranked graphs have a forest order and edges only
/// between comparable vertices, so a rooted-forest encoding of
/// (level, edges to chain of ancestors, children) is a complete invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileKey(Vec<u32>);

const OPEN: u32 = u32::MAX;
const CLOSE: u32 = u32::MAX - 1;

impl ProfileKey {
    /// `subset` must be sorted by level.
    pub fn of_subset(e: &EliminationTree, subset: &[usize]) -> Self {
        let tree = e.tree();
        let g = e.graph();
        let m = subset.len();
        let mut parent = vec![usize::MAX; m];
        let mut edge_bits = vec![0u64; m];
        for i in 0..m {
            let mut rank = 0;
            for j in 0..i {
                if tree.is_ancestor(subset[j], subset[i]) {
                    if g.has_edge(subset[j], subset[i]) {
                        edge_bits[i] |= 1 << rank;
                    }
                    rank += 1;
                    parent[i] = j;
                }
            }
        }
        let mut children = vec![Vec::new(); m];
        let mut roots = Vec::new();
        for i in 0..m {
            match parent[i] {
                usize::MAX => roots.push(i),
                p => children[p].push(i),
            }
        }
        fn encode(i: usize, e: &EliminationTree, s: &[usize], bits: &[u64], ch: &[Vec<usize>]) -> Vec<u32> {
            let mut parts: Vec<Vec<u32>> = ch[i].iter().map(|&c| encode(c, e, s, bits, ch)).collect();
            parts.sort_unstable();
            let mut out = vec![OPEN, e.level(s[i]) as u32, bits[i] as u32, (bits[i] >> 32) as u32];
            for p in parts {
                out.extend(p);
            }
            out.push(CLOSE);
            out
        }
        let mut parts: Vec<Vec<u32>> = roots.iter().map(|&r| encode(r, e, subset, &edge_bits, &children)).collect();
        parts.sort_unstable();
        ProfileKey(parts.concat())
    }
}

/// Containment classes of ranked graphs in `G[T_v^+]` up to a size bound,
/// stored as induced entries; every contained ranked graph is an edge-subset
/// of some entry with the same levels and order.
#[derive(Debug, Clone)]
pub struct Profile {
    pub owner: usize,
    pub size_bound: usize,
    /// Entry key to the host vertices (sorted by level) of one occurrence.
    entries: BTreeMap<ProfileKey, Vec<usize>>,
}

impl Profile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &ProfileKey> {
        self.entries.keys()
    }

    pub fn contains(&self, key: &ProfileKey) -> bool {
        self.entries.contains_key(key)
    }

    /// Same entry set (both profiles should share a size bound).
    pub fn same_entries(&self, other: &Profile) -> bool {
        self.entries.len() == other.entries.len() && self.entries.keys().eq(other.entries.keys())
    }

    /// Each entry with its stored witness.
    pub fn witnesses<'a>(&'a self, e: &'a EliminationTree) -> impl Iterator<Item = (&'a ProfileKey, Witness)> + 'a {
        self.entries.iter().map(move |(key, subset)| {
            (key, Witness { ranked: RankedGraph::induced(e, subset), embedding: subset.clone() })
        })
    }
}

/// Enumerates every vertex subset of `T_v^+` with at most `size_bound`
/// vertices and records the induced ranked graph's key.
pub fn compute_profile(e: &EliminationTree, v: usize, size_bound: usize) -> Result<Profile> {
    if size_bound > 64 {
        return Err(Error::CapExceeded { what: "profile entry size", size: size_bound, cap: 64 });
    }
    let mut host = subtree_plus(e, v)?;
    host.sort_by_key(|&w| (e.level(w), w));
    let mut entries = BTreeMap::new();
    let mut chosen = Vec::with_capacity(size_bound);
    enumerate_subsets(e, &host, 0, size_bound, &mut chosen, &mut entries);
    Ok(Profile { owner: v, size_bound, entries })
}

fn enumerate_subsets(
    e: &EliminationTree,
    host: &[usize],
    from: usize,
    limit: usize,
    chosen: &mut Vec<usize>,
    entries: &mut BTreeMap<ProfileKey, Vec<usize>>,
) {
    if !chosen.is_empty() {
        let key = ProfileKey::of_subset(e, chosen);
        entries.entry(key).or_insert_with(|| chosen.clone());
    }
    if chosen.len() == limit {
        return;
    }
    for i in from..host.len() {
        chosen.push(host[i]);
        enumerate_subsets(e, host, i + 1, limit, chosen, entries);
        chosen.pop();
    }
}
