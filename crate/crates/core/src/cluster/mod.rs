//! Ranked graphs, splices, profiles, the bottom-up group partition, and the
//! colour-or-minor dichotomy for graphs given with a normalized elimination
//! tree.
//!
//! Profiles are kept as canonical keys of induced ranked subgraphs of
//! `G[T_v^+]`, truncated at a configurable size instead of the (sound but
//! astronomically large) `N_ℓ`. Whatever the truncation, every returned
//! certificate is verified: the minor branch constructs explicit embeddings
//! and fails with [`crate::Error::CapLimited`] when the truncated profiles
//! were too coarse to support them.
//!
//! Note: the containment step for a parent/child pair carries the size bound
//! `(d+1)(h-1)(k+1)^(h-ℓ)` in one place and `N_ℓ = (d+1)(h-1)(k+1)^(d-1-ℓ)`
//! in the definition; this crate uses the definition throughout.

mod bound;
mod dichotomy;
mod groups;
mod profile;
mod ranked;
mod whole;

pub use bound::{effective_profile_bound, profile_bound, theoretical_cluster_bound, ClusterBound, TowerTerm};
pub use dichotomy::{
    colour_or_minor, ClusterOutcome, ClusterParams, ClusteredColouring, MinorTrace, WeakClosureMinor,
    DEFAULT_EMBED_BUDGET, DEFAULT_PROFILE_CAP,
};
pub use groups::{group_partition, GroupPartition, ProfileTable};
pub use profile::{compute_profile, contained, contained_with_budget, Profile, ProfileKey, Witness};
pub use ranked::{splice, RankedGraph, Spliced};
pub use whole::{cluster_colour_graph, normalized_tree, ComponentMinor, GraphColouring, GraphOutcome};
