mod common;

use cck_core::fractional::{defect_lp_lower, maximal_admissible_sets};
use cck_core::graph::{verify_colouring, Bound};
use cck_core::oracles::{exists_colouring, minor_contains, DEFAULT_SEARCH_BUDGET};
use cck_core::graph::induces_connected;
use cck_core::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Solves the square system `m x = b` exactly; `None` if singular.
fn solve(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// Maximum of `Σ y` over the vertices of `{y ≥ 0, Σ_{v∈S} y_v ≤ 1}`, found by
/// trying every choice of `n` tight constraints.
fn dual_optimum_by_vertices(n: usize, sets: &[Vec<usize>]) -> BigRational {
    let one = BigRational::one();
    let zero = BigRational::zero();
    // Constraint rows: sets first, then y_v ≥ 0 written as y_v = 0 when tight.
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = sets
        .iter()
        .map(|s| ((0..n).map(|v| if s.contains(&v) { one.clone() } else { zero.clone() }).collect(), one.clone()))
        .collect();
    rows.extend((0..n).map(|v| ((0..n).map(|w| if w == v { one.clone() } else { zero.clone() }).collect(), zero.clone())));
    let mut best = zero.clone();
    let total = rows.len();
    let mut choice: Vec<usize> = (0..n).collect();
    loop {
        let m = choice.iter().map(|&i| rows[i].0.clone()).collect();
        let b = choice.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(y) = solve(m, b) {
            let feasible = y.iter().all(|x| !x.is_negative())
                && sets.iter().all(|s| s.iter().map(|&v| &y[v]).sum::<BigRational>() <= one);
            if feasible {
                let val: BigRational = y.iter().sum();
                if val > best {
                    best = val;
                }
            }
        }
        // Next n-combination of 0..total.
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if choice[i] < total - n + i {
                choice[i] += 1;
                for j in i + 1..n {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[test]
fn lp_matches_vertex_enumeration() {
    let mut rng = common::rng(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(n, 0.5, &mut rng);
        let d = rng.gen_range(0..=2);
        let sol = defect_lp_lower(&g, d).unwrap();
        assert_eq!(sol.verify(n), Ok(()));
        let sets: Vec<Vec<usize>> = maximal_admissible_sets(&g, d)
            .unwrap()
            .into_iter()
            .map(|s| (0..n).filter(|&v| s & (1 << v) != 0).collect())
            .collect();
        assert_eq!(sol.value, dual_optimum_by_vertices(n, &sets), "graph {:?}, d={d}", g.to_edge_list());
    }
}

#[test]
fn lp_is_monotone_in_defect() {
    let mut rng = common::rng(12);
    for _ in 0..15 {
        let g = random_graph(rng.gen_range(2..=8), 0.5, &mut rng);
        let values: Vec<BigRational> = (0..=g.max_degree()).map(|d| defect_lp_lower(&g, d).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
        assert!(values.iter().all(|v| v >= &BigRational::one()));
        assert_eq!(values.last().unwrap(), &BigRational::one());
    }
}

#[test]
fn integral_colourings_bound_the_lp() {
    let mut rng = common::rng(13);
    for _ in 0..20 {
        let g = random_graph(rng.gen_range(2..=7), 0.5, &mut rng);
        let d = rng.gen_range(0..=1);
        let lp = defect_lp_lower(&g, d).unwrap().value;
        for m in 1..=3 {
            if exists_colouring(&g, m, Bound::Defect(d), DEFAULT_SEARCH_BUDGET).unwrap().is_some() {
                assert!(lp <= BigRational::from_integer(BigInt::from(m)));
            }
        }
    }
}

/// Whether any assignment of `m` colours meets the bound.
fn colouring_by_enumeration(g: &Graph, m: usize, bound: Bound) -> bool {
    let n = g.n();
    let mut colours = vec![0; n];
    loop {
        let col = cck_core::Colouring::normalized(&colours);
        if verify_colouring(g, &col, bound).unwrap().ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colours[i] += 1;
            if colours[i] < m {
                break;
            }
            colours[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn colouring_search_matches_enumeration() {
    let mut rng = common::rng(14);
    for _ in 0..60 {
        let g = random_graph(rng.gen_range(1..=7), 0.45, &mut rng);
        let m = rng.gen_range(1..=3);
        let bound = if rng.gen_bool(0.5) { Bound::Clustering(rng.gen_range(1..=3)) } else { Bound::Defect(rng.gen_range(0..=2)) };
        let found = exists_colouring(&g, m, bound, DEFAULT_SEARCH_BUDGET).unwrap();
        if let Some(col) = &found {
            assert!(col.colour_count() <= m);
            assert!(verify_colouring(&g, col, bound).unwrap().ok);
        }
        assert_eq!(found.is_some(), colouring_by_enumeration(&g, m, bound), "{} m={m} {bound:?}", g.to_edge_list());
    }
}

/// Tries every map from host vertices to pattern vertices or "deleted".
fn minor_by_enumeration(host: &Graph, pattern: &Graph) -> bool {
    let (n, p) = (host.n(), pattern.n());
    let mut assign = vec![0; n];
    loop {
        let sets: Vec<Vec<usize>> = (0..p).map(|q| (0..n).filter(|&v| assign[v] == q + 1).collect()).collect();
        let ok = sets.iter().all(|s| !s.is_empty() && induces_connected(host, s))
            && pattern.edges().all(|(a, b)| {
                sets[a].iter().any(|&x| host.neighbors(x).iter().any(|y| sets[b].contains(y)))
            });
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            assign[i] += 1;
            if assign[i] <= p {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn minor_search_matches_enumeration() {
    let mut rng = common::rng(15);
    let patterns = [Graph::complete(3), Graph::cycle(4), Graph::path(3), Graph::complete(4), Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()];
    for _ in 0..40 {
        let host = random_graph(rng.gen_range(3..=7), 0.45, &mut rng);
        for pattern in &patterns {
            let found = minor_contains(&host, pattern, DEFAULT_SEARCH_BUDGET).unwrap();
            if let Some(model) = &found {
                assert_eq!(model.verify(), Ok(()));
            }
            assert_eq!(found.is_some(), minor_by_enumeration(&host, pattern), "{}", host.to_edge_list());
        }
    }
}
