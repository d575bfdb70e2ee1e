//! Fractional colourings: the exact covering LP over sets of bounded induced
//! degree, the lower-bound certificate for C⟨h,k⟩, and the combiner that
//! turns a fragility cover into a fractional clustered colouring.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cluster::{cluster_colour_graph, ClusterParams, GraphOutcome};
use crate::elimination::{treedepth_exact_capped, DEFAULT_TREEDEPTH_CAP};
use crate::error::{Error, Result};
use crate::generators::closure_graph;
use crate::graph::{components_within, induced_subgraph, Bound, Graph};

/// Largest graph accepted by [`defect_lp_lower`] by default.
pub const DEFAULT_LP_CAP: usize = 14;

/// Rational serialized as `"p/q"` (or `"p"` when integral).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(p: i64, q: i64) -> Self {
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn integer(p: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(p)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a rational: {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim().parse::<BigInt>().map_err(|_| bad())?, q.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether `set` satisfies `bound` in `g`.
pub fn set_meets_bound(g: &Graph, set: &[usize], bound: Bound) -> bool {
    let mut keep = vec![false; g.n()];
    for &v in set {
        keep[v] = true;
    }
    match bound {
        Bound::Defect(d) => set.iter().all(|&v| g.neighbors(v).iter().filter(|&&w| keep[w]).count() <= d),
        Bound::Clustering(c) => components_within(g, &keep).iter().all(|comp| comp.len() <= c),
    }
}

/// Inclusion-maximal vertex sets inducing maximum degree at most `d`, as
/// bitmasks in increasing order.
pub fn maximal_admissible_sets(g: &Graph, d: usize) -> Result<Vec<u32>> {
    let n = g.n();
    if n > 24 {
        return Err(Error::CapExceeded { what: "admissible-set enumeration", size: n, cap: 24 });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let ok = |s: u32| (0..n).all(|v| s & (1 << v) == 0 || (adj[v] & s).count_ones() as usize <= d);
    let full = (1u32 << n) - 1;
    let admissible: Vec<bool> = (0..=full).map(ok).collect();
    Ok((0..=full)
        .filter(|&s| admissible[s as usize])
        .filter(|&s| (0..n).all(|v| s & (1 << v) != 0 || !admissible[(s | (1 << v)) as usize]))
        .collect())
}

/// Optimal primal and dual solutions of the covering LP
/// `min Σ α_S` subject to `Σ_{S∋v} α_S ≥ 1`, `α ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: BigRational,
    pub sets: Vec<Vec<usize>>,
    /// Primal weights, one per set.
    pub weights: Vec<BigRational>,
    /// Dual weights, one per vertex, with `Σ_{v∈S} y_v ≤ 1` for every set.
    pub vertex_weights: Vec<BigRational>,
}

impl LpSolution {
    /// Checks primal and dual feasibility and equal objective values, which
    /// together certify optimality.
    pub fn verify(&self, n: usize) -> std::result::Result<(), String> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if self.weights.iter().chain(&self.vertex_weights).any(|w| w < &zero) {
            return Err("negative weight".into());
        }
        for v in 0..n {
            let cover: BigRational = self.sets.iter().zip(&self.weights).filter(|(s, _)| s.contains(&v)).map(|(_, w)| w).sum();
            if cover < one {
                return Err(format!("coverage < 1 at vertex {v}"));
            }
        }
        for (i, s) in self.sets.iter().enumerate() {
            let load: BigRational = s.iter().map(|&v| &self.vertex_weights[v]).sum();
            if load > one {
                return Err(format!("dual constraint of set {i} violated"));
            }
        }
        let primal: BigRational = self.weights.iter().sum();
        let dual: BigRational = self.vertex_weights.iter().sum();
        if primal != self.value || dual != self.value {
            return Err(format!("objective mismatch: primal {primal}, dual {dual}, value {}", self.value));
        }
        Ok(())
    }
}

impl LpSolution {
    /// The sets of positive weight as a fractional colouring of total `value`.
    pub fn to_fractional(&self, mode: Bound) -> FractionalColouring {
        let (sets, weights) = self
            .sets
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| w.is_positive())
            .map(|(s, w)| (s.clone(), Rational(w.clone())))
            .unzip();
        FractionalColouring { sets, weights, mode, total: Rational(self.value.clone()) }
    }
}

/// Solves `max Σ y_v` subject to `Σ_{v∈S} y_v ≤ 1` for each set and `y ≥ 0`
/// by the simplex method on a compact tableau with Bland's rule, in exact
/// arithmetic. The primal covering weights are read off the reduced costs
/// of the slack variables.
pub fn solve_cover_lp(n: usize, sets: &[Vec<usize>]) -> LpSolution {
    let m = sets.len();
    let zero = BigRational::zero();
    let one = BigRational::one();
    // Variables 0..n are the y_v, n..n+m the slacks. Row i reads
    // basic[i] = rhs[i] - Σ_j a[i][j] * nonbasic[j], and the objective is
    // value + Σ_j cost[j] * nonbasic[j].
    let mut a: Vec<Vec<BigRational>> = sets
        .iter()
        .map(|s| {
            let mut r = vec![zero.clone(); n];
            for &v in s {
                r[v] = one.clone();
            }
            r
        })
        .collect();
    let mut rhs = vec![one.clone(); m];
    let mut basic: Vec<usize> = (n..n + m).collect();
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut cost = vec![one.clone(); n];
    let mut value = zero.clone();

    while let Some(s) = (0..n).filter(|&j| cost[j].is_positive()).min_by_key(|&j| nonbasic[j]) {
        let r = (0..m)
            .filter(|&i| a[i][s].is_positive())
            .min_by(|&x, &y| {
                let rx = &rhs[x] / &a[x][s];
                let ry = &rhs[y] / &a[y][s];
                rx.cmp(&ry).then(basic[x].cmp(&basic[y]))
            })
            .expect("the feasible region is bounded");
        let p = a[r][s].clone();
        for j in 0..n {
            if j != s {
                a[r][j] = &a[r][j] / &p;
            }
        }
        a[r][s] = &one / &p;
        rhs[r] = &rhs[r] / &p;
        let prow = a[r].clone();
        let prhs = rhs[r].clone();
        for i in 0..m {
            if i == r || a[i][s].is_zero() {
                continue;
            }
            let f = a[i][s].clone();
            rhs[i] -= &f * &prhs;
            for j in 0..n {
                if j != s && !prow[j].is_zero() {
                    a[i][j] -= &f * &prow[j];
                }
            }
            a[i][s] = -(&f * &prow[s]);
        }
        let f = cost[s].clone();
        value += &f * &prhs;
        for j in 0..n {
            if j != s && !prow[j].is_zero() {
                cost[j] -= &f * &prow[j];
            }
        }
        cost[s] = -(&f * &prow[s]);
        std::mem::swap(&mut basic[r], &mut nonbasic[s]);
    }

    let mut vertex_weights = vec![zero.clone(); n];
    for (i, &b) in basic.iter().enumerate() {
        if b < n {
            vertex_weights[b] = rhs[i].clone();
        }
    }
    let mut weights = vec![zero; m];
    for (j, &x) in nonbasic.iter().enumerate() {
        if x >= n {
            weights[x - n] = -cost[j].clone();
        }
    }
    LpSolution { value, sets: sets.to_vec(), weights, vertex_weights }
}

pub fn defect_lp_lower(g: &Graph, d: usize) -> Result<LpSolution> {
    defect_lp_lower_capped(g, d, DEFAULT_LP_CAP)
}

/// Minimum total weight of a fractional cover of `g` by sets inducing
/// maximum degree at most `d`, solved exactly over the maximal such sets.
pub fn defect_lp_lower_capped(g: &Graph, d: usize, cap: usize) -> Result<LpSolution> {
    if g.n() > cap {
        return Err(Error::CapExceeded { what: "defect LP", size: g.n(), cap });
    }
    let sets: Vec<Vec<usize>> = maximal_admissible_sets(g, d)?
        .into_iter()
        .map(|s| (0..g.n()).filter(|&v| s & (1 << v) != 0).collect())
        .collect();
    let sol = solve_cover_lp(g.n(), &sets);
    debug_assert_eq!(sol.verify(g.n()), Ok(()));
    Ok(sol)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub h: usize,
    pub k: usize,
    pub d: usize,
    pub lp: Rational,
    pub bound: Rational,
    pub ok: bool,
}

/// `h - (h-1)d/k`.
pub fn defect_lower_bound(h: usize, k: usize, d: usize) -> BigRational {
    let h = BigRational::from_integer(BigInt::from(h));
    let frac = BigRational::new(BigInt::from(d), BigInt::from(k));
    &h - (&h - BigRational::one()) * frac
}

/// Compares the LP optimum on C⟨h,k⟩ against `h - (h-1)d/k`.
pub fn certify_lower_bound(h: usize, k: usize, d: usize) -> Result<LowerBoundCertificate> {
    if h == 0 || k == 0 {
        return Err(Error::Invalid("h and k must be at least 1".into()));
    }
    let g = closure_graph(h, k)?;
    let lp = defect_lp_lower(&g, d)?.value;
    let bound = defect_lower_bound(h, k, d);
    Ok(LowerBoundCertificate { h, k, d, ok: lp >= bound, lp: Rational(lp), bound: Rational(bound) })
}

/// Weighted vertex sets covering every vertex with total weight at least one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColouring {
    pub sets: Vec<Vec<usize>>,
    pub weights: Vec<Rational>,
    pub mode: Bound,
    pub total: Rational,
}

impl FractionalColouring {
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.sets.len() != self.weights.len() {
            return Err(format!("{} sets but {} weights", self.sets.len(), self.weights.len()));
        }
        let (zero, one) = (BigRational::zero(), BigRational::one());
        for (i, w) in self.weights.iter().enumerate() {
            if w.0 < zero || w.0 > one {
                return Err(format!("weight {w} of set {i} outside [0,1]"));
            }
        }
        let mut cover = vec![zero.clone(); g.n()];
        for (i, (set, w)) in self.sets.iter().zip(&self.weights).enumerate() {
            for &v in set {
                g.check_vertex(v).map_err(|e| e.to_string())?;
                cover[v] += &w.0;
            }
            if !set_meets_bound(g, set, self.mode) {
                return Err(format!("set {i} violates the {} bound", mode_name(self.mode)));
            }
        }
        if let Some(v) = cover.iter().position(|c| c < &one) {
            return Err(format!("coverage < 1 at vertex {v}"));
        }
        let sum: BigRational = self.weights.iter().map(|w| &w.0).sum();
        if sum > self.total.0 {
            return Err(format!("weights sum to {sum}, above the total {}", self.total));
        }
        Ok(())
    }
}

fn mode_name(b: Bound) -> String {
    match b {
        Bound::Clustering(c) => format!("clustering {c}"),
        Bound::Defect(d) => format!("defect {d}"),
    }
}

/// Sets of bounded treedepth covering every vertex at least `(1-δ)s` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragilityCover {
    pub delta: Rational,
    pub d: usize,
    pub sets: Vec<Vec<usize>>,
}

impl FragilityCover {
    /// Checks `0 ≤ δ < 1`, the coverage condition, and `td(G[X_i]) ≤ d` with
    /// the exact oracle (sets above `cap` vertices are rejected).
    pub fn validate(&self, g: &Graph, cap: usize) -> Result<()> {
        let delta = &self.delta.0;
        if delta.is_negative() || delta >= &BigRational::one() {
            return Err(Error::Invalid(format!("delta {} outside [0,1)", self.delta)));
        }
        if self.sets.is_empty() {
            return Err(Error::Invalid("cover has no sets".into()));
        }
        let s = BigRational::from_integer(BigInt::from(self.sets.len()));
        let need = (BigRational::one() - delta) * s;
        let mut count = vec![0usize; g.n()];
        for set in &self.sets {
            for &v in set {
                g.check_vertex(v)?;
                count[v] += 1;
            }
        }
        if let Some(v) = (0..g.n()).find(|&v| BigRational::from_integer(BigInt::from(count[v])) < need) {
            return Err(Error::Invalid(format!("vertex {v} lies in {} sets, fewer than {need}", count[v])));
        }
        for (i, set) in self.sets.iter().enumerate() {
            let sub = induced_subgraph(g, set)?.graph;
            let td = treedepth_exact_capped(&sub, cap)?.treedepth;
            if td > self.d {
                return Err(Error::Invalid(format!("set {i} has treedepth {td} > {}", self.d)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combined {
    pub fractional: FractionalColouring,
    /// Largest monochromatic component observed across all sets.
    pub clustering: usize,
    /// `ε` with `δ = 1 - 1/(1 + ε/(h-1))`, so the total is `h - 1 + ε`.
    pub epsilon: Rational,
}

/// Splits each cover set into its `h-1` colour classes from the dichotomy
/// and weights every class `1/((1-δ)s)`.
pub fn combine_fragility(g: &Graph, cover: &FragilityCover, h: usize, k: usize, cap: usize) -> Result<Combined> {
    if h < 2 {
        return Err(Error::Invalid("h must be at least 2".into()));
    }
    cover.validate(g, DEFAULT_TREEDEPTH_CAP)?;
    let one = BigRational::one();
    let s = BigRational::from_integer(BigInt::from(cover.sets.len()));
    let keep = &one - &cover.delta.0;
    let weight = (&one / (&keep * s)).clone();
    if weight > one {
        return Err(Error::Invalid(format!("weight {weight} exceeds 1; use more sets or smaller delta")));
    }
    let params = ClusterParams::new(h, k).with_cap(cap);
    let mut sets = Vec::with_capacity(cover.sets.len() * (h - 1));
    let mut clustering = 0;
    for (i, x) in cover.sets.iter().enumerate() {
        let sub = induced_subgraph(g, x)?;
        match cluster_colour_graph(&sub.graph, params)? {
            GraphOutcome::Minor(_) => {
                return Err(Error::MinorFound(format!("cover set {i} contains W({h},{k})")));
            }
            GraphOutcome::Colouring(c) => {
                clustering = clustering.max(c.max_cluster);
                for j in 0..h - 1 {
                    let class: Vec<usize> =
                        (0..sub.graph.n()).filter(|&v| c.colouring.colour(v) == j).map(|v| sub.new_to_old[v]).collect();
                    sets.push(class);
                }
            }
        }
    }
    let h1 = BigRational::from_integer(BigInt::from(h - 1));
    let total = &h1 / &keep;
    let epsilon = &total - &h1;
    let weights = vec![Rational(weight); sets.len()];
    let fractional = FractionalColouring { sets, weights, mode: Bound::Clustering(clustering), total: Rational(total) };
    fractional.verify(g).map_err(Error::Invalid)?;
    Ok(Combined { fractional, clustering, epsilon: Rational(epsilon) })
}
