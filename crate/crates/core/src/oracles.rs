//! Exhaustive searches: colourings under a clustering or defect bound, and
//! minor containment by branch-set enumeration.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{Bound, Colouring, Graph, MinorModel};

/// Default number of search states before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Largest pattern accepted by [`minor_contains`].
pub const DEFAULT_PATTERN_CAP: usize = 8;

/// Vertices in BFS order from each component's smallest vertex, so every
/// vertex after the first of its component has an earlier neighbour.
fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct ColourSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colours: usize,
    bound: Bound,
    colour: Vec<usize>,
    states: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl ColourSearch<'_> {
    /// Whether the partial colouring still meets the bound around `v`.
    fn admissible(&self, v: usize) -> bool {
        let c = self.colour[v];
        let same = |x: usize| self.g.neighbors(x).iter().filter(|&&y| self.colour[y] == c).count();
        match self.bound {
            Bound::Defect(d) => {
                same(v) <= d && self.g.neighbors(v).iter().filter(|&&y| self.colour[y] == c).all(|&y| same(y) <= d)
            }
            Bound::Clustering(limit) => {
                let mut seen = vec![v];
                let mut i = 0;
                while i < seen.len() {
                    for &y in self.g.neighbors(seen[i]) {
                        if self.colour[y] == c && !seen.contains(&y) {
                            seen.push(y);
                            if seen.len() > limit {
                                return false;
                            }
                        }
                    }
                    i += 1;
                }
                true
            }
        }
    }

    fn extend(&mut self, i: usize, used: usize) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        // Colours are introduced in increasing order.
        for c in 0..self.colours.min(used + 1) {
            self.states += 1;
            if self.states > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            self.colour[v] = c;
            if self.admissible(v) && self.extend(i + 1, used.max(c + 1))? {
                return Ok(true);
            }
        }
        self.colour[v] = UNSET;
        Ok(false)
    }
}

/// Searches for a colouring with at most `colours` colours meeting `bound`.
/// `Ok(None)` is an exhaustive refutation.
pub fn exists_colouring(g: &Graph, colours: usize, bound: Bound, budget: u64) -> Result<Option<Colouring>> {
    if g.n() == 0 {
        return Ok(Some(Colouring::new(vec![])?));
    }
    if matches!(bound, Bound::Clustering(0)) {
        return Ok(None);
    }
    let mut search = ColourSearch {
        g,
        order: bfs_order(g),
        colours,
        bound,
        colour: vec![UNSET; g.n()],
        states: 0,
        budget,
    };
    if search.extend(0, 0)? {
        Ok(Some(Colouring::new(search.colour)?))
    } else {
        Ok(None)
    }
}

struct MinorSearch<'a> {
    host_adj: Vec<u64>,
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent in the pattern.
    earlier: Vec<Vec<usize>>,
    sets: Vec<u64>,
    states: u64,
    budget: u64,
}

impl MinorSearch<'_> {
    fn neighbourhood(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= self.host_adj[v];
        }
        out & !set
    }

    fn place(&mut self, i: usize, used: u64) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        let free = !used & mask(self.host.n());
        let remaining = (self.order.len() - i - 1) as u32;
        let max_size = free.count_ones().saturating_sub(remaining);
        // The new set must touch every earlier neighbour's set.
        let targets: Vec<u64> = self.earlier[i].iter().map(|&j| self.neighbourhood(self.sets[j])).collect();
        let starts = match targets.first() {
            Some(&t) => t & free,
            None => free,
        };
        let mut bits = starts;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // Sets are enumerated from their smallest start vertex; vertices
            // of `starts` below `s` are excluded to avoid repeats.
            let allowed = free & !(starts & ((1u64 << s) - 1));
            let mut found = false;
            let flow = self.connected_sets(1 << s, self.host_adj[s] & allowed & !(1 << s), allowed, max_size, &mut |me, set| {
                me.states += 1;
                if me.states > me.budget {
                    return ControlFlow::Break(Err(Error::BudgetExceeded { budget: me.budget }));
                }
                if targets.iter().any(|&t| t & set == 0) {
                    return ControlFlow::Continue(());
                }
                me.sets[i] = set;
                match me.place(i + 1, used | set) {
                    Ok(true) => ControlFlow::Break(Ok(true)),
                    Ok(false) => ControlFlow::Continue(()),
                    Err(e) => ControlFlow::Break(Err(e)),
                }
            });
            if let ControlFlow::Break(r) = flow {
                found = r?;
            }
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every connected `set' ⊇ set` within `allowed` reachable by adding
    /// vertices of `ext`, each visited once.
    fn connected_sets(
        &mut self,
        set: u64,
        ext: u64,
        allowed: u64,
        max_size: u32,
        visit: &mut dyn FnMut(&mut Self, u64) -> ControlFlow<Result<bool>>,
    ) -> ControlFlow<Result<bool>> {
        visit(self, set)?;
        if set.count_ones() >= max_size {
            return ControlFlow::Continue(());
        }
        let mut ext = ext;
        let closed = set | self.neighbourhood(set);
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let fresh = self.host_adj[w] & allowed & !closed;
            self.connected_sets(set | (1 << w), ext | fresh, allowed, max_size, visit)?;
        }
        ControlFlow::Continue(())
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Searches for `pattern` as a minor of `host` (at most 64 vertices).
/// `Ok(None)` is an exhaustive refutation.
pub fn minor_contains(host: &Graph, pattern: &Graph, budget: u64) -> Result<Option<MinorModel>> {
    minor_contains_capped(host, pattern, budget, DEFAULT_PATTERN_CAP)
}

pub fn minor_contains_capped(host: &Graph, pattern: &Graph, budget: u64, cap: usize) -> Result<Option<MinorModel>> {
    if pattern.n() > cap {
        return Err(Error::CapExceeded { what: "minor pattern", size: pattern.n(), cap });
    }
    if host.n() > 64 {
        return Err(Error::CapExceeded { what: "minor host", size: host.n(), cap: 64 });
    }
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    // Pattern vertices in BFS order from a vertex of maximum degree.
    let start = (0..pattern.n()).max_by_key(|&p| (pattern.degree(p), std::cmp::Reverse(p)));
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = vec![false; pattern.n()];
    for s in start.into_iter().chain(0..pattern.n()) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(p) = queue.pop_front() {
            order.push(p);
            for &q in pattern.neighbors(p) {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
    }
    let position: Vec<usize> = {
        let mut pos = vec![0; pattern.n()];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        pos
    };
    let earlier = order
        .iter()
        .enumerate()
        .map(|(i, &p)| pattern.neighbors(p).iter().map(|&q| position[q]).filter(|&j| j < i).collect())
        .collect();
    let host_adj = (0..host.n()).map(|v| host.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w))).collect();
    let mut search = MinorSearch {
        host_adj,
        host,
        pattern,
        order,
        earlier,
        sets: vec![0; pattern.n()],
        states: 0,
        budget,
    };
    if !search.place(0, 0)? {
        return Ok(None);
    }
    let mut branch_sets = vec![Vec::new(); pattern.n()];
    for (i, &p) in search.order.iter().enumerate() {
        branch_sets[p] = (0..host.n()).filter(|&v| search.sets[i] & (1 << v) != 0).collect();
    }
    let model = MinorModel { host: host.clone(), pattern: search.pattern.clone(), branch_sets };
    debug_assert_eq!(model.verify(), Ok(()));
    Ok(Some(model))
}
