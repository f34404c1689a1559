//! Subdivision finders behind a common strategy trait, registered by name.
//!
//! `backtracking` is the production finder: complete search with fail-first
//! ordering and admissible walk-based pruning. `naive` enumerates every
//! branch map and path system with no weight pruning at all; it exists as an
//! independent oracle and must stay that way.

use crate::pattern::PatternGraph;
use crate::subdivision::SubdivisionEmbedding;
use crate::weighting::{VertexPath, Weighting};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Tri-state search result: proved absent is distinct from gave up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SubdivisionEmbedding),
    Absent,
    Budget,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

pub trait SubdivisionFinder: Sync {
    fn name(&self) -> &'static str;

    /// Searches `w` for a q-divisible subdivision of `h`; with `t` set every
    /// path must have exactly `t` internal vertices.
    fn find(
        &self,
        w: &Weighting,
        h: &PatternGraph,
        t: Option<usize>,
        budget: u64,
    ) -> SearchOutcome;
}

static BACKTRACKING: BacktrackingFinder = BacktrackingFinder;
static NAIVE: NaiveFinder = NaiveFinder;

pub fn finders() -> [&'static dyn SubdivisionFinder; 2] {
    [&BACKTRACKING, &NAIVE]
}

pub fn finder_by_name(name: &str) -> Option<&'static dyn SubdivisionFinder> {
    finders().into_iter().find(|f| f.name() == name)
}

pub fn default_finder() -> &'static dyn SubdivisionFinder {
    &BACKTRACKING
}

pub fn naive_finder() -> &'static dyn SubdivisionFinder {
    &NAIVE
}

/// Complete backtracking search for a q-divisible subdivision of `h` in `w`.
pub fn find_subdivision(w: &Weighting, h: &PatternGraph, budget: u64) -> SearchOutcome {
    BACKTRACKING.find(w, h, None, budget)
}

/// As `find_subdivision` with every path of length exactly t+1.
pub fn find_t_subdivision(
    w: &Weighting,
    h: &PatternGraph,
    t: usize,
    budget: u64,
) -> SearchOutcome {
    BACKTRACKING.find(w, h, Some(t), budget)
}

enum Ctl {
    Found,
    Exhausted,
    Budget,
}

pub struct BacktrackingFinder;

impl SubdivisionFinder for BacktrackingFinder {
    fn name(&self) -> &'static str {
        "backtracking"
    }

    fn find(
        &self,
        w: &Weighting,
        h: &PatternGraph,
        t: Option<usize>,
        budget: u64,
    ) -> SearchOutcome {
        if h.n() > w.f() {
            return SearchOutcome::Absent;
        }
        if let Some(t) = t {
            // a t-subdivision needs n branch vertices plus t fresh per edge
            if w.f() < h.n() + t * h.m() {
                return SearchOutcome::Absent;
            }
        }
        let mut s = Backtrack::new(w, h, t, budget);
        match s.assign_branch(0) {
            Ctl::Found => SearchOutcome::Found(s.take_embedding()),
            Ctl::Exhausted => SearchOutcome::Absent,
            Ctl::Budget => SearchOutcome::Budget,
        }
    }
}

struct Backtrack<'a> {
    w: &'a Weighting,
    h: &'a PatternGraph,
    t: Option<usize>,
    budget: u64,
    f: usize,
    q: u32,
    used: Vec<bool>,
    branch_order: Vec<usize>,
    branch: Vec<usize>, // pattern vertex -> host vertex (usize::MAX = unset)
    edge_order: Vec<usize>,
    paths: Vec<Vec<usize>>, // per pattern edge index
    free: usize,
    // admissible lower bound on internal vertices of a zero-weight path,
    // per host pair; empty when pruning is off
    min_int: Vec<u32>,
    result: Option<SubdivisionEmbedding>,
}

impl<'a> Backtrack<'a> {
    fn new(w: &'a Weighting, h: &'a PatternGraph, t: Option<usize>, budget: u64) -> Self {
        let mut branch_order: Vec<usize> = (0..h.n()).collect();
        branch_order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        let mut edge_order: Vec<usize> = (0..h.m()).collect();
        edge_order.sort_by_key(|&i| {
            let (u, v) = h.edges()[i];
            (std::cmp::Reverse(h.degree(u) + h.degree(v)), i)
        });
        let min_int = if t.is_none() && h.m() >= 2 {
            zero_walk_internal_bounds(w)
        } else {
            Vec::new()
        };
        Backtrack {
            w,
            h,
            t,
            budget,
            f: w.f(),
            q: w.q(),
            used: vec![false; w.f()],
            branch_order,
            branch: vec![usize::MAX; h.n()],
            edge_order,
            paths: vec![Vec::new(); h.m()],
            free: w.f(),
            min_int,
            result: None,
        }
    }

    fn take_embedding(&mut self) -> SubdivisionEmbedding {
        self.result.take().expect("search reported Found")
    }

    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    fn bound(&self, edge: usize) -> u64 {
        if self.min_int.is_empty() {
            return self.t.map_or(0, |t| t as u64);
        }
        let (u, v) = self.h.edges()[edge];
        let b = self.min_int[self.branch[u] * self.f + self.branch[v]];
        if b == u32::MAX {
            u64::MAX
        } else {
            b as u64
        }
    }

    fn remaining_demand(&self, from_pos: usize) -> u64 {
        let mut acc: u64 = 0;
        for &e in &self.edge_order[from_pos..] {
            let b = self.bound(e);
            if b == u64::MAX {
                return u64::MAX;
            }
            acc += b;
        }
        acc
    }

    fn assign_branch(&mut self, k: usize) -> Ctl {
        if !self.tick() {
            return Ctl::Budget;
        }
        if k == self.h.n() {
            let demand = self.remaining_demand(0);
            if demand == u64::MAX || demand > self.free as u64 {
                return Ctl::Exhausted;
            }
            return self.search_edges(0);
        }
        let pv = self.branch_order[k];
        for host in 0..self.f {
            if self.used[host] {
                continue;
            }
            self.used[host] = true;
            self.branch[pv] = host;
            self.free -= 1;
            let r = self.assign_branch(k + 1);
            self.free += 1;
            self.branch[pv] = usize::MAX;
            self.used[host] = false;
            match r {
                Ctl::Exhausted => {}
                other => return other,
            }
        }
        Ctl::Exhausted
    }

    fn search_edges(&mut self, pos: usize) -> Ctl {
        if pos == self.h.m() {
            self.result = Some(SubdivisionEmbedding {
                branch_map: self.branch.clone(),
                paths: self
                    .paths
                    .iter()
                    .map(|p| VertexPath::new(p.clone()))
                    .collect(),
            });
            return Ctl::Found;
        }
        let edge = self.edge_order[pos];
        let (u, v) = self.h.edges()[edge];
        let (a, b) = (self.branch[u], self.branch[v]);
        let rest = self.remaining_demand(pos + 1);
        if rest == u64::MAX {
            return Ctl::Exhausted;
        }
        self.paths[edge].clear();
        self.paths[edge].push(a);
        let r = self.extend_path(pos, edge, b, a, 0, 0, rest);
        self.paths[edge].clear();
        r
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_path(
        &mut self,
        pos: usize,
        edge: usize,
        target: usize,
        cur: usize,
        internals: usize,
        acc: u32,
        rest_demand: u64,
    ) -> Ctl {
        if !self.tick() {
            return Ctl::Budget;
        }
        // try closing the path at the target branch vertex
        let len_ok = match self.t {
            Some(t) => internals == t,
            None => true,
        };
        if len_ok && (acc + self.w.edge_weight(cur, target)).is_multiple_of(self.q) {
            self.paths[edge].push(target);
            let r = self.search_edges(pos + 1);
            self.paths[edge].pop();
            match r {
                Ctl::Exhausted => {}
                other => return other,
            }
        }
        // try extending through a fresh internal vertex
        let may_extend = match self.t {
            Some(t) => internals < t,
            None => true,
        };
        if may_extend && (self.free as u64) > rest_demand {
            for next in 0..self.f {
                if self.used[next] {
                    continue;
                }
                self.used[next] = true;
                self.free -= 1;
                self.paths[edge].push(next);
                let r = self.extend_path(
                    pos,
                    edge,
                    target,
                    next,
                    internals + 1,
                    (acc + self.w.edge_weight(cur, next)) % self.q,
                    rest_demand,
                );
                self.paths[edge].pop();
                self.free += 1;
                self.used[next] = false;
                match r {
                    Ctl::Exhausted => {}
                    other => return other,
                }
            }
        }
        Ctl::Exhausted
    }
}

/// For every ordered host pair (u, v): a lower bound on the number of
/// internal vertices of any zero-weight u-v path, from shortest zero-weight
/// walks over states (vertex, residue). Walks may repeat vertices, so the
/// bound is admissible for paths.
fn zero_walk_internal_bounds(w: &Weighting) -> Vec<u32> {
    let f = w.f();
    let q = w.q() as usize;
    let mut out = vec![u32::MAX; f * f];
    let mut dist = vec![u32::MAX; f * q];
    let mut queue = std::collections::VecDeque::new();
    for src in 0..f {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        queue.clear();
        dist[src * q] = 0;
        queue.push_back((src, 0usize));
        while let Some((v, r)) = queue.pop_front() {
            let d = dist[v * q + r];
            for u in 0..f {
                if u == v {
                    continue;
                }
                let nr = (r + w.edge_weight(v, u) as usize) % q;
                if dist[u * q + nr] == u32::MAX {
                    dist[u * q + nr] = d + 1;
                    queue.push_back((u, nr));
                }
            }
        }
        for dst in 0..f {
            if dst == src {
                continue;
            }
            let d = dist[dst * q];
            if d != u32::MAX && d >= 1 {
                out[src * f + dst] = d - 1;
            }
        }
    }
    out
}

/// Exhaustive reference finder: every branch map, every structurally valid
/// path system, weights checked only on complete systems.
pub struct NaiveFinder;

impl SubdivisionFinder for NaiveFinder {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn find(
        &self,
        w: &Weighting,
        h: &PatternGraph,
        t: Option<usize>,
        budget: u64,
    ) -> SearchOutcome {
        if h.n() > w.f() {
            return SearchOutcome::Absent;
        }
        let mut s = Naive {
            w,
            h,
            t,
            budget,
            used: vec![false; w.f()],
            branch: vec![usize::MAX; h.n()],
            paths: vec![Vec::new(); h.m()],
            result: None,
        };
        match s.assign_branch(0) {
            Ctl::Found => SearchOutcome::Found(s.result.take().expect("found")),
            Ctl::Exhausted => SearchOutcome::Absent,
            Ctl::Budget => SearchOutcome::Budget,
        }
    }
}

struct Naive<'a> {
    w: &'a Weighting,
    h: &'a PatternGraph,
    t: Option<usize>,
    budget: u64,
    used: Vec<bool>,
    branch: Vec<usize>,
    paths: Vec<Vec<usize>>,
    result: Option<SubdivisionEmbedding>,
}

impl<'a> Naive<'a> {
    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    fn assign_branch(&mut self, k: usize) -> Ctl {
        if !self.tick() {
            return Ctl::Budget;
        }
        if k == self.h.n() {
            return self.build_paths(0);
        }
        for host in 0..self.w.f() {
            if self.used[host] {
                continue;
            }
            self.used[host] = true;
            self.branch[k] = host;
            let r = self.assign_branch(k + 1);
            self.branch[k] = usize::MAX;
            self.used[host] = false;
            match r {
                Ctl::Exhausted => {}
                other => return other,
            }
        }
        Ctl::Exhausted
    }

    fn build_paths(&mut self, edge: usize) -> Ctl {
        if edge == self.h.m() {
            // all structure fixed; only now look at weights
            let ok = self.paths.iter().all(|p| {
                let mut acc = 0u32;
                for win in p.windows(2) {
                    acc = (acc + self.w.edge_weight(win[0], win[1])) % self.w.q();
                }
                acc == 0
            });
            if ok {
                self.result = Some(SubdivisionEmbedding {
                    branch_map: self.branch.clone(),
                    paths: self
                        .paths
                        .iter()
                        .map(|p| VertexPath::new(p.clone()))
                        .collect(),
                });
                return Ctl::Found;
            }
            return Ctl::Exhausted;
        }
        let (u, v) = self.h.edges()[edge];
        self.paths[edge].clear();
        self.paths[edge].push(self.branch[u]);
        let r = self.grow(edge, self.branch[v], 0);
        self.paths[edge].clear();
        r
    }

    fn grow(&mut self, edge: usize, target: usize, internals: usize) -> Ctl {
        if !self.tick() {
            return Ctl::Budget;
        }
        let close_ok = match self.t {
            Some(t) => internals == t,
            None => true,
        };
        if close_ok {
            self.paths[edge].push(target);
            let r = self.build_paths(edge + 1);
            self.paths[edge].pop();
            match r {
                Ctl::Exhausted => {}
                other => return other,
            }
        }
        let may_extend = match self.t {
            Some(t) => internals < t,
            None => true,
        };
        if may_extend {
            for next in 0..self.w.f() {
                if self.used[next] {
                    continue;
                }
                self.used[next] = true;
                self.paths[edge].push(next);
                let r = self.grow(edge, target, internals + 1);
                self.paths[edge].pop();
                self.used[next] = false;
                match r {
                    Ctl::Exhausted => {}
                    other => return other,
                }
            }
        }
        Ctl::Exhausted
    }
}
