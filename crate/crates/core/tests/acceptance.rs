//! The ten acceptance criteria. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use cck_core::canon::{graph_canonical_code, is_isomorphic};
use cck_core::cluster::{
    cluster_colour_graph, colour_or_minor, normalized_tree, splice, ClusterOutcome, ClusterParams, GraphOutcome,
    ProfileTable, RankedGraph,
};
use cck_core::elimination::{dfs_elimination_tree, normalize_tree, EliminationTree};
use cck_core::fractional::{certify_lower_bound, combine_fragility, defect_lower_bound, FragilityCover, Rational};
use cck_core::generators::{closure, closure_graph, complete_kary_tree, kary_tree_size, weak_closure, weak_closure_graph};
use cck_core::graph::{induced_subgraph, longest_path_length, monochromatic_components, Bound};
use cck_core::oracles::{exists_colouring, minor_contains, DEFAULT_SEARCH_BUDGET};
use cck_core::pathwidth::{
    exact_pathwidth, mono_treedepth_check, path_bound, product_colouring, two_colour, validate_path_decomposition,
    PathDecomposition,
};
use cck_core::{Colouring, Error, Graph};
use num_rational::BigRational;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_standard_examples() -> Outcome {
    for (h, k) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let g = closure_graph(h, k).map_err(|e| e.to_string())?;
        for bound in [Bound::Defect(k - 1), Bound::Clustering(k)] {
            let r = exists_colouring(&g, h - 1, bound, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
            ensure(r.is_none(), || format!("C<{h},{k}> has a {}-colouring with {bound:?}", h - 1))?;
        }
    }
    Ok("8 refutations".into())
}

fn c2_lp_certificates() -> Outcome {
    let mut count = 0;
    for h in 1..=13 {
        for k in 1..=12 {
            match kary_tree_size(h, k) {
                Some(n) if n <= 13 => {}
                _ => continue,
            }
            for d in 0..=k {
                let c = certify_lower_bound(h, k, d).map_err(|e| e.to_string())?;
                ensure(c.ok, || format!("(h,k,d)=({h},{k},{d}): lp {} < bound {}", c.lp, c.bound))?;
                count += 1;
            }
        }
    }
    let c = certify_lower_bound(2, 2, 1).map_err(|e| e.to_string())?;
    let three_halves = Rational::new(3, 2);
    ensure(c.lp == three_halves && c.bound == three_halves, || format!("(2,2,1): lp {} bound {}", c.lp, c.bound))?;
    ensure(defect_lower_bound(2, 2, 1) == three_halves.0, || "bound formula".into())?;
    Ok(format!("{count} triples, equality at (2,2,1)"))
}

struct PwInstance {
    name: String,
    graph: Graph,
    pd: PathDecomposition,
}

fn pathwidth_corpus() -> Vec<PwInstance> {
    let mut out = Vec::new();
    for n in 2..=20 {
        out.push(PwInstance { name: format!("P_{n}"), graph: Graph::path(n), pd: PathDecomposition::for_path(n) });
    }
    for (r, c) in (2..=10).map(|c| (2, c)).chain((3..=6).map(|c| (3, c))) {
        out.push(PwInstance { name: format!("grid {r}x{c}"), graph: Graph::grid(r, c), pd: PathDecomposition::for_grid(r, c) });
    }
    for (name, g) in [("C<3,2>", closure_graph(3, 2).unwrap()), ("W<3,2>", weak_closure_graph(3, 2).unwrap())] {
        let (_, pd) = exact_pathwidth(&g).unwrap();
        out.push(PwInstance { name: name.into(), graph: g, pd });
    }
    let mut rng = common::rng(3);
    while out.len() < 60 {
        let g = common::random_connected_subgraph(&Graph::grid(3, 4), 0.8, &mut rng);
        let (w, pd) = exact_pathwidth(&g).unwrap();
        if w >= 1 {
            out.push(PwInstance { name: format!("grid subgraph #{}", out.len()), graph: g, pd });
        }
    }
    out
}

fn c3_path_bound() -> Outcome {
    let corpus = pathwidth_corpus();
    for inst in &corpus {
        let w = inst.pd.width();
        ensure((1..=3).contains(&w), || format!("{}: width {w}", inst.name))?;
        ensure(validate_path_decomposition(&inst.graph, &inst.pd).is_ok(), || format!("{}: invalid decomposition", inst.name))?;
        let col = two_colour(&inst.graph, &inst.pd).map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(col.colouring.colour_count() == 2, || format!("{}: {} colours", inst.name, col.colouring.colour_count()))?;
        ensure(col.levels[0].width == w, || format!("{}: first level width", inst.name))?;
        for pair in col.levels.windows(2) {
            ensure(pair[1].width < pair[0].width, || {
                format!("{}: width {} after width {}", inst.name, pair[1].width, pair[0].width)
            })?;
        }
        let bound = path_bound(w) as usize;
        for (_, comp) in monochromatic_components(&inst.graph, &col.colouring) {
            let sub = induced_subgraph(&inst.graph, &comp).unwrap().graph;
            let len = longest_path_length(&sub).map_err(|e| e.to_string())?;
            ensure(len <= bound, || format!("{}: monochromatic path on {len} > {bound} vertices", inst.name))?;
        }
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn c4_component_treedepth() -> Outcome {
    let corpus = pathwidth_corpus();
    for inst in &corpus {
        let w = inst.pd.width();
        let col = two_colour(&inst.graph, &inst.pd).map_err(|e| e.to_string())?;
        let report = mono_treedepth_check(&inst.graph, &col.colouring, path_bound(w) as usize, 20)
            .map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(report.dfs_components == 0, || format!("{}: exact oracle skipped", inst.name))?;
        ensure(report.ok, || format!("{}: component {:?} too deep", inst.name, report.witness))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn check_dichotomy(e: &EliminationTree, h: usize, k: usize, tally: &mut [usize; 3]) -> Result<(), String> {
    let g = e.graph();
    match colour_or_minor(e, ClusterParams::new(h, k)) {
        Ok(ClusterOutcome::Colouring(c)) => {
            ensure(c.colouring.colour_count() < h, || format!("{} colours for h={h}", c.colouring.colour_count()))?;
            for (_, comp) in monochromatic_components(g, &c.colouring) {
                let grp = c.groups.group_of(comp[0]);
                ensure(comp.iter().all(|&v| c.groups.group_of(v) == grp), || format!("component {comp:?} spans groups"))?;
            }
            tally[0] += 1;
        }
        Ok(ClusterOutcome::Minor(m)) => {
            m.model.verify()?;
            let target = weak_closure_graph(h, k).unwrap();
            ensure(graph_canonical_code(&m.model.pattern) == graph_canonical_code(&target), || {
                format!("pattern is not W<{h},{k}>")
            })?;
            tally[1] += 1;
        }
        Err(Error::CapLimited(_)) => tally[2] += 1,
        Err(other) => return Err(other.to_string()),
    }
    Ok(())
}

fn c5_dichotomy() -> Outcome {
    let shapes = [(2, 2), (2, 3), (2, 6), (3, 2), (3, 3), (3, 4), (4, 2)];
    let params = [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)];
    let mut rng = common::rng(5);
    let mut hosts: Vec<(String, EliminationTree)> = Vec::new();
    for (a, b) in shapes {
        let t = complete_kary_tree(a, b).unwrap();
        for (name, g) in [("C", closure(&t)), ("W", weak_closure(&t))] {
            let mut s = 0;
            while s < 3 {
                // Spanning subgraphs keep the tree as an elimination tree.
                let edges: Vec<(usize, usize)> = g.edges().filter(|_| rng.gen_bool(0.8)).collect();
                let sub = Graph::from_edges(g.n(), edges).unwrap();
                if sub.is_connected() {
                    let e = EliminationTree::new(sub, t.clone()).unwrap();
                    hosts.push((format!("{name}<{a},{b}> subgraph {s}"), normalize_tree(&e).unwrap()));
                    s += 1;
                }
            }
            hosts.push((format!("{name}<{a},{b}>"), EliminationTree::new(g, t.clone()).unwrap()));
        }
    }
    let mut tally = [0usize; 3];
    for (name, e) in &hosts {
        if e.graph().n() > 30 || e.depth() > 4 {
            return Err(format!("{name} outside the corpus limits"));
        }
        for &(h, k) in &params {
            check_dichotomy(e, h, k, &mut tally).map_err(|m| format!("{name}, h={h}, k={k}: {m}"))?;
        }
    }
    Ok(format!(
        "{} runs: {} colourings, {} minors, {} cap-limited (flagged)",
        tally.iter().sum::<usize>(),
        tally[0],
        tally[1],
        tally[2]
    ))
}

fn c6_splice_containment() -> Outcome {
    let mut rng = common::rng(6);
    let mut hosts: Vec<(EliminationTree, usize)> = Vec::new();
    for (a, b, k) in [(3, 2, 2), (3, 3, 2), (3, 3, 3), (4, 2, 2)] {
        let t = complete_kary_tree(a, b).unwrap();
        hosts.push((EliminationTree::new(closure(&t), t.clone()).unwrap(), k));
        hosts.push((EliminationTree::new(weak_closure(&t), t.clone()).unwrap(), k));
        for _ in 0..2 {
            let sub = common::random_connected_subgraph(&closure(&t), 0.8, &mut rng);
            if sub.n() >= 3 {
                hosts.push((normalized_tree(&sub).unwrap(), k));
            }
        }
    }
    let h = 3;
    let mut samples = 0;
    for (e, k) in &hosts {
        let profiles = ProfileTable::compute(e, h, *k, 4).map_err(|m| m.to_string())?;
        for u in 0..e.graph().n() {
            for class in profiles.sibling_classes(e, u) {
                if class.len() < *k {
                    continue;
                }
                // Each child in this class is in a different group from u.
                let v = class[0];
                let entries: Vec<_> = profiles.get(v).unwrap().witnesses(e).collect();
                let step = (entries.len() / 6).max(1);
                for (_, w) in entries.into_iter().step_by(step) {
                    let spliced = splice(&w.ranked, e.level(u), *k);
                    let found = cck_core::cluster::contained(&spliced.ranked, e, u)
                        .ok_or_else(|| format!("splice of a profile entry of {v} not contained below {u}"))?;
                    found.verify(e, u)?;
                    samples += 1;
                }
            }
        }
    }
    ensure(samples >= 100, || format!("only {samples} samples"))?;
    Ok(format!("{samples} spliced entries contained"))
}

fn c7_splice_algebra() -> Outcome {
    let mut rng = common::rng(7);
    for trial in 0..250 {
        let n = rng.gen_range(2..=9);
        let e = common::random_elimination_tree(n, 0.5, &mut rng);
        let subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        if subset.is_empty() {
            continue;
        }
        let rg = RankedGraph::induced(&e, &subset);
        let top = rg.levels().iter().copied().max().unwrap();
        let i = rng.gen_range(0..=top);
        let k = rng.gen_range(1..=3);
        let sp = splice(&rg, i, k);
        let out = &sp.ranked;
        let fail = |m: &str| format!("trial {trial}: {m}");
        for a in 0..out.n() {
            let (va, ja) = sp.origin[a];
            ensure(out.level(a) == rg.level(va), || fail("level not inherited"))?;
            ensure((ja == 0) == (rg.level(va) <= i), || fail("wrong kept/copied split"))?;
            for b in 0..out.n() {
                let (vb, jb) = sp.origin[b];
                if out.precedes(a, b) {
                    ensure(out.level(a) < out.level(b), || fail("order against levels"))?;
                }
                if out.graph().has_edge(a, b) {
                    ensure(out.precedes(a, b) || out.precedes(b, a), || fail("edge between incomparable vertices"))?;
                }
                let related = ja == 0 || jb == 0 || ja == jb;
                let expect_less = related && rg.precedes(va, vb);
                let expect_edge = related && a != b && rg.graph().has_edge(va, vb);
                ensure(out.precedes(a, b) == expect_less, || fail("order not copied"))?;
                ensure(out.graph().has_edge(a, b) == expect_edge, || fail("edges not copied"))?;
            }
        }
        let high = (0..rg.n()).filter(|&v| rg.level(v) > i).count();
        ensure(out.n() == rg.n() - high + k * high, || fail("vertex count"))?;
        ensure(out.n() <= (k + 1) * rg.n(), || fail("size bound"))?;
        for j in 1..=k {
            let part: Vec<usize> = (0..rg.n())
                .map(|v| sp.index_of(v, if rg.level(v) <= i { 0 } else { j }).unwrap())
                .collect();
            let restricted = out.restrict(&part);
            ensure(restricted.is_isomorphic(&rg), || fail("copy not isomorphic"))?;
            ensure(restricted == rg, || fail("copy differs under the origin map"))?;
        }
    }
    Ok("250 random ranked graphs".into())
}

fn cycle_decomposition(n: usize) -> PathDecomposition {
    PathDecomposition::new((1..n - 1).map(|i| vec![0, i, i + 1]).collect())
}

fn c8_product() -> Outcome {
    let (h, k) = (3, 3);
    let mut rng = common::rng(8);
    let mut corpus: Vec<(String, Graph, PathDecomposition)> = Vec::new();
    for s in 0..15 {
        let n = rng.gen_range(5..=25);
        let g = common::random_tree(n, &mut rng);
        let pd = PathDecomposition::from_elimination_tree(&dfs_elimination_tree(&g, 0).unwrap());
        corpus.push((format!("random tree {s}"), g, pd));
    }
    for n in [5, 12, 25] {
        corpus.push((format!("C_{n}"), Graph::cycle(n), cycle_decomposition(n)));
    }
    for c in 2..=6 {
        corpus.push((format!("ladder 2x{c}"), Graph::grid(2, c), PathDecomposition::for_grid(2, c)));
    }
    for s in 0..10 {
        let g = common::random_connected_subgraph(&Graph::grid(3, 4), 0.85, &mut rng);
        let (_, pd) = exact_pathwidth(&g).unwrap();
        corpus.push((format!("grid subgraph {s}"), g, pd));
    }
    let w33 = weak_closure_graph(3, 3).unwrap();
    for (name, g, pd) in &corpus {
        // W<3,3> has 13 vertices and 18 edges and contains a cycle.
        let free = g.n() < w33.n() || g.edge_count() < w33.edge_count() || (g.is_connected() && g.edge_count() + 1 == g.n());
        let is_cycle = name.starts_with("C_");
        ensure(free || is_cycle, || format!("{name}: W<3,3>-freeness not established"))?;

        let two = two_colour(g, pd).map_err(|e| format!("{name}: {e}"))?;
        // Clustered colouring of each monochromatic part.
        let mut inner = vec![0; g.n()];
        let mut max_cluster = 0;
        for colour in 0..two.colouring.colour_count() {
            let part: Vec<usize> = (0..g.n()).filter(|&v| two.colouring.colour(v) == colour).collect();
            let sub = induced_subgraph(g, &part).unwrap();
            match cluster_colour_graph(&sub.graph, ClusterParams::new(h, k)).map_err(|e| format!("{name}: {e}"))? {
                GraphOutcome::Colouring(c) => {
                    max_cluster = max_cluster.max(c.max_cluster);
                    for (i, &v) in sub.new_to_old.iter().enumerate() {
                        inner[v] = c.colouring.colour(i);
                    }
                }
                GraphOutcome::Minor(_) => return Err(format!("{name}: minor in a W<3,3>-free graph")),
            }
        }
        let inner = Colouring::normalized(&inner);
        let product = product_colouring(&two.colouring, &inner).map_err(|e| e.to_string())?;
        ensure(product.colour_count() <= 2 * h - 2, || format!("{name}: {} colours", product.colour_count()))?;
        for (_, comp) in monochromatic_components(g, &product) {
            ensure(comp.len() <= max_cluster, || format!("{name}: component of {} > {max_cluster}", comp.len()))?;
        }
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn c9_combiner() -> Outcome {
    let mut rng = common::rng(9);
    let mut runs = 0;
    let instances: Vec<(Graph, usize, usize)> = vec![
        (closure_graph(3, 2).unwrap(), 3, 3),
        (closure_graph(2, 3).unwrap(), 3, 2),
        (Graph::path(9), 2, 3),
        (Graph::grid(2, 5), 3, 3),
        (common::random_tree(12, &mut rng), 3, 3),
    ];
    for (g, h, k) in &instances {
        let td = normalized_tree(g).unwrap().depth();
        let all: Vec<usize> = (0..g.n()).collect();
        let mut covers = vec![
            FragilityCover { delta: Rational::integer(0), d: td, sets: vec![all.clone()] },
            FragilityCover { delta: Rational::integer(0), d: td, sets: vec![all.clone(), all.clone()] },
        ];
        for _ in 0..3 {
            // Each vertex is dropped from at most one of the three sets.
            let drop: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(0..4)).collect();
            let sets = (0..3).map(|i| all.iter().copied().filter(|&v| drop[v] != i).collect()).collect();
            covers.push(FragilityCover { delta: Rational::new(1, 3), d: td, sets });
        }
        for cover in &covers {
            let out = combine_fragility(g, cover, *h, *k, 6).map_err(|e| e.to_string())?;
            let expected = BigRational::from_integer((*h as i64 - 1).into()) / (BigRational::from_integer(1.into()) - &cover.delta.0);
            ensure(out.fractional.total.0 == expected, || format!("total {} != {expected}", out.fractional.total))?;
            ensure(out.fractional.sets.len() == cover.sets.len() * (h - 1), || "set count".into())?;
            out.fractional.verify(g)?;
            runs += 1;
        }
    }
    Ok(format!("{runs} covers"))
}

fn c10_closure_minor() -> Outcome {
    for (h, k) in [(2, 2), (3, 2), (3, 3)] {
        let host = weak_closure_graph(h, k).unwrap();
        let pattern = closure_graph(h, k - 1).unwrap();
        let model = minor_contains(&host, &pattern, DEFAULT_SEARCH_BUDGET)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no C<{h},{}> minor in W<{h},{k}>", k - 1))?;
        model.verify()?;
        ensure(is_isomorphic(&model.pattern, &pattern), || "pattern changed".into())?;
    }
    Ok("3 models".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("standard-example lower bounds", c1_standard_examples),
        ("defect LP lower bound certificates", c2_lp_certificates),
        ("pathwidth two-colouring path bound", c3_path_bound),
        ("pathwidth two-colouring treedepth bound", c4_component_treedepth),
        ("colour-or-minor certificates", c5_dichotomy),
        ("splices of profile entries are contained", c6_splice_containment),
        ("splice algebra", c7_splice_algebra),
        ("product colouring composition", c8_product),
        ("fragility cover combiner", c9_combiner),
        ("C<h,k-1> minor of W<h,k>", c10_closure_minor),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
