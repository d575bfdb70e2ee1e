use std::collections::BTreeMap;

use super::bound::effective_profile_bound;
use super::profile::{compute_profile, Profile, ProfileKey};
use crate::elimination::EliminationTree;
use crate::error::Result;

/// Profiles of every non-root vertex, each truncated at
/// `min(N_ℓ(v), cap)` vertices.
#[derive(Debug, Clone)]
pub struct ProfileTable {
    profiles: Vec<Option<Profile>>,
}

impl ProfileTable {
    pub fn compute(e: &EliminationTree, h: usize, k: usize, cap: usize) -> Result<Self> {
        let d = e.depth();
        let profiles = (0..e.graph().n())
            .map(|v| {
                if v == e.root() {
                    return Ok(None);
                }
                let bound = effective_profile_bound(d, h, k, e.level(v), cap);
                compute_profile(e, v, bound).map(Some)
            })
            .collect::<Result<_>>()?;
        Ok(ProfileTable { profiles })
    }

    pub fn get(&self, v: usize) -> Option<&Profile> {
        self.profiles.get(v).and_then(Option::as_ref)
    }

    /// Children of `u` partitioned into classes of equal profile; classes in
    /// order of their smallest member, members sorted.
    pub fn sibling_classes(&self, e: &EliminationTree, u: usize) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<Vec<&ProfileKey>, Vec<usize>> = BTreeMap::new();
        for &c in e.tree().children(u) {
            let keys = self.get(c).map(|p| p.keys().collect()).unwrap_or_default();
            classes.entry(keys).or_default().push(c);
        }
        let mut out: Vec<Vec<usize>> = classes
            .into_values()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        out.sort();
        out
    }
}

/// Partition of `V(T)` into subtrees ("groups").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    group_of: Vec<usize>,
    /// Root of each group; groups are numbered by (root level, root index).
    roots: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// Groups above each group that it is adjacent to in G, sorted by id.
    adjacent_above: Vec<Vec<usize>>,
}

impl GroupPartition {
    #[inline]
    pub fn group_of(&self, v: usize) -> usize {
        self.group_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.group_of
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, group: usize) -> usize {
        self.roots[group]
    }

    pub fn members(&self, group: usize) -> &[usize] {
        &self.members[group]
    }

    pub fn adjacent_above(&self, group: usize) -> &[usize] {
        &self.adjacent_above[group]
    }

    /// Group `upper` is above `lower`: its root lies strictly above `lower`'s root.
    pub fn is_above(&self, e: &EliminationTree, upper: usize, lower: usize) -> bool {
        e.tree().is_ancestor(self.roots[upper], self.roots[lower])
    }
}

/// Bottom-up merge: a vertex joins the groups of those children whose
/// profile is shared by between 1 and k-1 of its children; otherwise it
/// starts a new group.
pub fn group_partition(e: &EliminationTree, profiles: &ProfileTable, k: usize) -> GroupPartition {
    let n = e.graph().n();
    let tree = e.tree();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for v in tree.bottom_up_order() {
        let merged: Vec<usize> = profiles
            .sibling_classes(e, v)
            .into_iter()
            .filter(|c| (1..k).contains(&c.len()))
            .flatten()
            .collect();
        let id = next;
        next += 1;
        label[v] = id;
        if !merged.is_empty() {
            let absorbed: Vec<usize> = merged.iter().map(|&y| label[y]).collect();
            for l in label.iter_mut() {
                if absorbed.contains(l) {
                    *l = id;
                }
            }
        }
    }

    // Renumber by (root level, root index).
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        let r = roots.entry(label[v]).or_insert(v);
        if tree.level(v) < tree.level(*r) {
            *r = v;
        }
    }
    let mut ordered: Vec<(usize, usize)> = roots.into_iter().collect();
    ordered.sort_by_key(|&(_, r)| (tree.level(r), r));
    let mut rename = BTreeMap::new();
    for (new, &(old, _)) in ordered.iter().enumerate() {
        rename.insert(old, new);
    }
    let group_of: Vec<usize> = label.iter().map(|l| rename[l]).collect();
    let roots: Vec<usize> = ordered.iter().map(|&(_, r)| r).collect();
    let mut members = vec![Vec::new(); roots.len()];
    for v in 0..n {
        members[group_of[v]].push(v);
    }

    let mut adjacent_above = vec![Vec::new(); roots.len()];
    for (a, b) in e.graph().edges() {
        let (ga, gb) = (group_of[a], group_of[b]);
        if ga == gb {
            continue;
        }
        let (upper, lower) = if tree.is_ancestor(roots[ga], roots[gb]) { (ga, gb) } else { (gb, ga) };
        debug_assert!(tree.is_ancestor(roots[upper], roots[lower]), "edge between unrelated groups");
        adjacent_above[lower].push(upper);
    }
    for list in &mut adjacent_above {
        list.sort_unstable();
        list.dedup();
    }
    GroupPartition { group_of, roots, members, adjacent_above }
}
