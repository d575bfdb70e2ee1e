use super::groups::{group_partition, GroupPartition, ProfileTable};
use super::profile::{contained_with_budget, Witness};
use super::ranked::{splice, RankedGraph};
use crate::elimination::EliminationTree;
use crate::error::{Error, Result};
use crate::generators::{complete_kary_tree, kary_addresses, weak_closure};
use crate::graph::{monochromatic_components, Colouring, Graph, MinorModel};

/// Default number of vertices kept in profile entries.
pub const DEFAULT_PROFILE_CAP: usize = 6;

/// Backtracking steps allowed per sibling embedding in the minor branch.
pub const DEFAULT_EMBED_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterParams {
    pub h: usize,
    pub k: usize,
    pub cap: usize,
    pub embed_budget: u64,
}

impl ClusterParams {
    pub fn new(h: usize, k: usize) -> Self {
        ClusterParams { h, k, cap: DEFAULT_PROFILE_CAP, embed_budget: DEFAULT_EMBED_BUDGET }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

/// Colouring branch: groups coloured with at most h-1 colours.
#[derive(Debug, Clone)]
pub struct ClusteredColouring {
    pub colouring: Colouring,
    pub groups: GroupPartition,
    /// Largest monochromatic component.
    pub max_cluster: usize,
}

/// The choices made while extracting a W⟨h,k⟩ minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorTrace {
    /// `X_0, X_1, ..., X_{h-1}` as group ids, lowest first.
    pub groups: Vec<usize>,
    /// Group roots `v_0, ..., v_{h-1}`.
    pub roots: Vec<usize>,
    /// `(w_i, z_i)` for `i = 1..h-1`.
    pub attachments: Vec<(usize, usize)>,
    /// Sizes of the ranked graphs `H_0, ..., H_{h-1}`.
    pub ranked_sizes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct WeakClosureMinor {
    pub h: usize,
    pub k: usize,
    pub model: MinorModel,
    pub groups: GroupPartition,
    pub trace: MinorTrace,
}

#[derive(Debug, Clone)]
pub enum ClusterOutcome {
    Colouring(ClusteredColouring),
    Minor(WeakClosureMinor),
}

/// Either an (h-1)-colouring whose monochromatic components each lie in one
/// group, or a verified model of W⟨h,k⟩ in `G`.
///
/// `e` must be normalized and `G` connected. Profiles are truncated at
/// `params.cap` vertices; when the truncation makes the minor construction
/// fail, the result is [`Error::CapLimited`] instead of an unverified answer.
pub fn colour_or_minor(e: &EliminationTree, params: ClusterParams) -> Result<ClusterOutcome> {
    let ClusterParams { h, k, cap, embed_budget } = params;
    if h == 0 || k == 0 {
        return Err(Error::Invalid("h and k must be at least 1".into()));
    }
    let g = e.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !e.is_normal() {
        return Err(Error::InvalidTree("tree is not normalized (some G[T_v] is disconnected)".into()));
    }
    let profiles = ProfileTable::compute(e, h, k, cap)?;
    let groups = group_partition(e, &profiles, k);

    if h == 1 {
        let pattern = weak_closure(&complete_kary_tree(1, k)?);
        let model = MinorModel { host: g.clone(), pattern, branch_sets: vec![vec![e.root()]] };
        let trace = MinorTrace { groups: vec![0], roots: vec![e.root()], attachments: vec![], ranked_sizes: vec![] };
        return Ok(ClusterOutcome::Minor(WeakClosureMinor { h, k, model, groups, trace }));
    }

    let x0 = (0..groups.len())
        .filter(|&x| groups.adjacent_above(x).len() >= h - 1)
        .min_by_key(|&x| groups.root(x));
    match x0 {
        None => Ok(ClusterOutcome::Colouring(colour_groups(g, groups, h))),
        Some(x0) => find_minor(e, &profiles, groups, x0, h, k, embed_budget).map(ClusterOutcome::Minor),
    }
}

fn colour_groups(g: &Graph, groups: GroupPartition, h: usize) -> ClusteredColouring {
    // Group ids already follow root distance, so every group above X is coloured before X.
    let mut colour_of = vec![usize::MAX; groups.len()];
    for x in 0..groups.len() {
        let forbidden: Vec<usize> = groups.adjacent_above(x).iter().map(|&y| colour_of[y]).collect();
        colour_of[x] = (0..).find(|c| !forbidden.contains(c)).expect("colour available");
        debug_assert!(colour_of[x] < h - 1);
    }
    let raw: Vec<usize> = (0..g.n()).map(|v| colour_of[groups.group_of(v)]).collect();
    let colouring = Colouring::new(raw).expect("first-fit colours are contiguous");
    let max_cluster = monochromatic_components(g, &colouring).iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    ClusteredColouring { colouring, groups, max_cluster }
}

/// Vertex of a spliced ranked graph: its origin in `H_0` and the copy
/// indices `d_1, d_2, ...` picked up by the successive splices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Address {
    base: usize,
    digits: Vec<usize>,
}

fn find_minor(
    e: &EliminationTree,
    profiles: &ProfileTable,
    groups: GroupPartition,
    x0: usize,
    h: usize,
    k: usize,
    budget: u64,
) -> Result<WeakClosureMinor> {
    let g = e.graph();
    let tree = e.tree();

    // X_1..X_{h-1}: the adjacent groups above X_0 with smallest roots, then
    // ordered from X_0 upwards.
    let mut above: Vec<usize> = groups.adjacent_above(x0).to_vec();
    above.sort_by_key(|&y| groups.root(y));
    above.truncate(h - 1);
    above.sort_by_key(|&y| std::cmp::Reverse(e.level(groups.root(y))));
    let mut chosen = vec![x0];
    chosen.extend(&above);
    let v: Vec<usize> = chosen.iter().map(|&x| groups.root(x)).collect();

    let mut attachments = Vec::with_capacity(h - 1);
    for &xi in &chosen[1..] {
        let pair = groups
            .members(xi)
            .iter()
            .flat_map(|&w| groups.members(x0).iter().map(move |&z| (w, z)))
            .filter(|&(w, z)| g.has_edge(w, z))
            .min()
            .expect("adjacent groups share an edge");
        attachments.push(pair);
    }
    let u: Vec<usize> = v[..h - 1].iter().map(|&vi| tree.parent(vi).expect("v_i below v_{h-1}")).collect();

    // H_0: union of the z_j-root paths, edges z_j w_j, identity embedding.
    let mut base: Vec<usize> = attachments.iter().flat_map(|&(_, z)| tree.path_to_root(z)).collect();
    base.sort_by_key(|&x| (e.level(x), x));
    base.dedup();
    let edges = attachments.iter().map(|&(w, z)| {
        let iw = base.iter().position(|&x| x == w).expect("w_j lies on the z_j-root path");
        let iz = base.iter().position(|&x| x == z).expect("z_j in H_0");
        (iw, iz)
    });
    let h0_graph = Graph::from_edges(base.len(), edges)?;
    let h0_pairs: Vec<(usize, usize)> = (0..base.len())
        .flat_map(|a| (0..base.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| tree.is_ancestor(base[a], base[b]))
        .collect();
    let h0_levels = base.iter().map(|&x| e.level(x)).collect();
    let mut ranked = RankedGraph::from_pairs(h0_graph, h0_levels, &h0_pairs)?;
    let mut phi = base.clone();
    let mut addresses: Vec<Address> = (0..base.len()).map(|i| Address { base: i, digits: vec![] }).collect();
    let mut ranked_sizes = vec![ranked.n()];
    debug_assert_eq!(Witness { ranked: ranked.clone(), embedding: phi.clone() }.verify(e, v[0]), Ok(()));

    for i in 0..h - 1 {
        let (vi, ui) = (v[i], u[i]);
        let class = profiles
            .sibling_classes(e, ui)
            .into_iter()
            .find(|c| c.contains(&vi))
            .expect("v_i is a child of u_i");
        if class.len() < k {
            return Err(Error::Invalid(format!("group root {vi} has only {} equally-profiled siblings", class.len())));
        }
        let mut siblings = vec![vi];
        siblings.extend(class.iter().copied().filter(|&y| y != vi).take(k - 1));

        let mut copies = vec![phi.clone()];
        for &y in &siblings[1..] {
            match contained_with_budget(&ranked, e, y, budget) {
                Ok(Some(w)) => copies.push(w.embedding),
                Ok(None) => {
                    return Err(Error::CapLimited(format!(
                        "a ranked graph on {} vertices embeds below {vi} but not below its sibling {y}; \
                         the truncated profiles cannot tell them apart",
                        ranked.n()
                    )))
                }
                Err(Error::BudgetExceeded { .. }) => {
                    return Err(Error::CapLimited(format!(
                        "embedding search below {y} exceeded its budget of {budget} steps"
                    )))
                }
                Err(other) => return Err(other),
            }
        }

        let spliced = splice(&ranked, e.level(ui), k);
        phi = spliced.origin.iter().map(|&(x, j)| if j == 0 { phi[x] } else { copies[j - 1][x] }).collect();
        addresses = spliced
            .origin
            .iter()
            .map(|&(x, j)| {
                let mut a = addresses[x].clone();
                a.digits.push(j);
                a
            })
            .collect();
        ranked = spliced.ranked;
        ranked_sizes.push(ranked.n());
        debug_assert_eq!(Witness { ranked: ranked.clone(), embedding: phi.clone() }.verify(e, ui), Ok(()));
    }

    // Map the complete k-ary tree U onto G: leaf ⟨d⟩ becomes the subtree of
    // v_0⟨d⟩, internal vertex ⟨0..0, d_{j+1}..⟩ becomes w_j⟨0..0, d_{j+1}..⟩.
    let u_tree = complete_kary_tree(h, k)?;
    let pattern = weak_closure(&u_tree);
    let v0_base = base.iter().position(|&x| x == v[0]).expect("v_0 in H_0");
    let w_base: Vec<usize> =
        attachments.iter().map(|&(w, _)| base.iter().position(|&x| x == w).expect("w_j in H_0")).collect();
    let lookup = |b: usize, digits: &[usize]| -> usize {
        let idx = addresses
            .iter()
            .position(|a| a.base == b && a.digits == digits)
            .expect("every address of U occurs in the final ranked graph");
        phi[idx]
    };
    let mut branch_sets = Vec::with_capacity(u_tree.n());
    for path in kary_addresses(&u_tree) {
        let t = path.len();
        let mut digits = vec![0; h - 1];
        for (s, &c) in path.iter().enumerate() {
            digits[h - 2 - s] = c;
        }
        if t == h - 1 {
            branch_sets.push(tree.subtree(lookup(v0_base, &digits)));
        } else {
            let j = h - 1 - t;
            branch_sets.push(vec![lookup(w_base[j - 1], &digits)]);
        }
    }
    let model = MinorModel { host: g.clone(), pattern, branch_sets };
    model
        .verify()
        .map_err(|why| Error::Invalid(format!("internal: extracted W⟨{h},{k}⟩ model failed verification: {why}")))?;
    let trace = MinorTrace { groups: chosen, roots: v, attachments, ranked_sizes };
    Ok(WeakClosureMinor { h, k, model, groups, trace })
}
