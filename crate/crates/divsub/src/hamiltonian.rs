//! Red-blue colorings of K_{2n} and Hamiltonian cycles splitting into a red
//! path and a blue path, both of even length. The search route is complete
//! at small orders; the constructive route follows the partition case
//! analysis and is valid for every even order ≥ 6.

use crate::weighting::{weighting_count, weighting_from_index, Weighting};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

pub const RED: u32 = 1;
pub const BLUE: u32 = 0;

/// Complete-search threshold for `SplitMethod::Auto`.
pub const SEARCH_MAX_F: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamError {
    #[error("coloring requires q = 2, got {0}")]
    NotTwoValued(u32),
    #[error("order {0} is odd")]
    OddOrder(usize),
    #[error("order {0} is too small for this operation")]
    TooSmall(usize),
    #[error("{count} colorings exceed the guard {guard}")]
    Guard { count: u128, guard: u128 },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

/// A red-blue edge coloring of a complete graph; red = 1, blue = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    w: Weighting,
}

impl TwoColoring {
    pub fn from_weighting(w: Weighting) -> Result<Self, HamError> {
        if w.q() != 2 {
            return Err(HamError::NotTwoValued(w.q()));
        }
        Ok(TwoColoring { w })
    }

    pub fn from_index(f: usize, index: u128) -> Self {
        TwoColoring { w: weighting_from_index(f, 2, index) }
    }

    pub fn f(&self) -> usize {
        self.w.f()
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.w.edge_weight(u, v)
    }

    pub fn weighting(&self) -> &Weighting {
        &self.w
    }
}

/// The tight counterexample at order 4: red path 0-1-2-3, blue 1-3, 0-3, 0-2.
pub fn figure_k4() -> TwoColoring {
    let mut weights = vec![BLUE; 6];
    for (u, v) in [(0usize, 1usize), (1, 2), (2, 3)] {
        weights[crate::weighting::edge_index(u, v)] = RED;
    }
    TwoColoring { w: Weighting::new(4, 2, weights) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Split {
    Mono,
    /// positions where a new color run starts; the cut vertices
    Two { boundaries: [usize; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSplitCycle {
    pub cycle: Vec<usize>,
    pub split: Split,
}

/// True iff `s.cycle` is a Hamiltonian cycle of the coloring's host and the
/// declared split cuts it into monochromatic paths of even length: either
/// one full-length path (monochromatic cycle) or a red one and a blue one.
pub fn verify_split(c: &TwoColoring, s: &EvenSplitCycle) -> bool {
    let f = c.f();
    if s.cycle.len() != f || f < 3 {
        return false;
    }
    let mut seen = vec![false; f];
    for &v in &s.cycle {
        if v >= f || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let edge_color = |p: usize| c.color(s.cycle[p], s.cycle[(p + 1) % f]);
    match s.split {
        Split::Mono => f.is_multiple_of(2) && (1..f).all(|p| edge_color(p) == edge_color(0)),
        Split::Two { boundaries: [i, j] } => {
            if i >= j || j >= f {
                return false;
            }
            let (len1, len2) = (j - i, f - (j - i));
            if len1 % 2 != 0 || len2 % 2 != 0 {
                return false;
            }
            let a = edge_color(i);
            let b = edge_color(j);
            a != b
                && (i..j).all(|p| edge_color(p) == a)
                && (j..i + f).all(|p| edge_color(p % f) == b)
        }
    }
}

/// Reads the split off a candidate Hamiltonian cycle: valid iff the cyclic
/// edge-color sequence has at most two maximal runs, all of even length.
fn split_of_cycle(c: &TwoColoring, cycle: Vec<usize>) -> Option<EvenSplitCycle> {
    let f = cycle.len();
    let edge_color = |p: usize| c.color(cycle[p], cycle[(p + 1) % f]);
    let changes: Vec<usize> = (0..f)
        .filter(|&p| edge_color(p) != edge_color((p + f - 1) % f))
        .collect();
    let split = match changes.as_slice() {
        [] if f.is_multiple_of(2) => Split::Mono,
        &[i, j] if (j - i) % 2 == 0 => Split::Two { boundaries: [i, j] },
        _ => return None,
    };
    let out = EvenSplitCycle { cycle, split };
    debug_assert!(verify_split(c, &out));
    Some(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMethod {
    Auto,
    Search,
    Construct,
}

/// Finds an even-split Hamiltonian cycle, or proves none exists (possible
/// only at order 4). The constructive route never fails at even order ≥ 6.
pub fn find_even_split(
    c: &TwoColoring,
    method: SplitMethod,
) -> Result<Option<EvenSplitCycle>, HamError> {
    let f = c.f();
    if !f.is_multiple_of(2) {
        return Err(HamError::OddOrder(f));
    }
    if f < 4 {
        return Err(HamError::TooSmall(f));
    }
    match method {
        SplitMethod::Search => Ok(search_split(c)),
        SplitMethod::Construct => {
            if f < 6 {
                return Err(HamError::TooSmall(f));
            }
            let outcome = partition_oracle(c)?;
            construct_from_partition(c, &outcome).map(Some)
        }
        SplitMethod::Auto => {
            if f <= SEARCH_MAX_F {
                Ok(search_split(c))
            } else {
                find_even_split(c, SplitMethod::Construct)
            }
        }
    }
}

/// Complete DFS over Hamiltonian cycles anchored at vertex 0. Any valid
/// cycle has at most two cyclic color changes, so partial paths with more
/// than two linear changes can never extend to one.
fn search_split(c: &TwoColoring) -> Option<EvenSplitCycle> {
    let f = c.f();
    let mut path = Vec::with_capacity(f);
    path.push(0);
    let mut used = vec![false; f];
    used[0] = true;
    dfs_split(c, &mut path, &mut used, 0)
}

fn dfs_split(
    c: &TwoColoring,
    path: &mut Vec<usize>,
    used: &mut [bool],
    changes: usize,
) -> Option<EvenSplitCycle> {
    let f = c.f();
    if path.len() == f {
        return split_of_cycle(c, path.clone());
    }
    let last = *path.last().unwrap();
    for v in 1..f {
        if used[v] {
            continue;
        }
        let mut ch = changes;
        if path.len() >= 2 {
            let prev = c.color(path[path.len() - 2], last);
            if prev != c.color(last, v) {
                ch += 1;
            }
        }
        if ch > 2 {
            continue;
        }
        used[v] = true;
        path.push(v);
        let hit = dfs_split(c, path, used, ch);
        path.pop();
        used[v] = false;
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Monochromatic Hamiltonian cycle on `verts` in the given color, by DFS.
fn mono_ham_cycle(c: &TwoColoring, verts: &[usize], color: u32) -> Option<Vec<usize>> {
    let k = verts.len();
    if k < 3 {
        return None;
    }
    fn rec(
        c: &TwoColoring,
        verts: &[usize],
        color: u32,
        path: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if path.len() == verts.len() {
            return c.color(*path.last().unwrap(), path[0]) == color;
        }
        let last = *path.last().unwrap();
        for (i, &v) in verts.iter().enumerate() {
            if used[i] || c.color(last, v) != color {
                continue;
            }
            used[i] = true;
            path.push(v);
            if rec(c, verts, color, path, used) {
                return true;
            }
            path.pop();
            used[i] = false;
        }
        false
    }
    let mut path = vec![verts[0]];
    let mut used = vec![false; k];
    used[0] = true;
    rec(c, verts, color, &mut path, &mut used).then_some(path)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionOutcome {
    /// monochromatic cycle of length f or f − 1
    LongMonoCycle { cycle: Vec<usize> },
    /// monochromatic Hamiltonian cycle on the large part; the leftover pair
    /// is joined by an edge of the opposite color
    CyclePlusEdge { cycle: Vec<usize>, pair: [usize; 2] },
    /// monochromatic Hamiltonian cycles of different colors on both parts,
    /// larger part first
    TwoCycles { large: Vec<usize>, small: Vec<usize> },
}

/// Exhaustively realizes the guaranteed partition of a 2-colored complete
/// graph of order ≥ 5, probing the outcome shapes in the order: long
/// monochromatic cycle, cycle plus edge, two cycles.
pub fn partition_oracle(c: &TwoColoring) -> Result<PartitionOutcome, HamError> {
    let f = c.f();
    if f < 5 {
        return Err(HamError::TooSmall(f));
    }
    let all: Vec<usize> = (0..f).collect();
    for color in [RED, BLUE] {
        if let Some(cycle) = mono_ham_cycle(c, &all, color) {
            return Ok(PartitionOutcome::LongMonoCycle { cycle });
        }
    }
    for y in 0..f {
        let rest: Vec<usize> = (0..f).filter(|&v| v != y).collect();
        for color in [RED, BLUE] {
            if let Some(cycle) = mono_ham_cycle(c, &rest, color) {
                return Ok(PartitionOutcome::LongMonoCycle { cycle });
            }
        }
    }
    for y1 in 0..f {
        for y2 in (y1 + 1)..f {
            let rest: Vec<usize> = (0..f).filter(|&v| v != y1 && v != y2).collect();
            let want = 1 - c.color(y1, y2);
            if let Some(cycle) = mono_ham_cycle(c, &rest, want) {
                return Ok(PartitionOutcome::CyclePlusEdge { cycle, pair: [y1, y2] });
            }
        }
    }
    assert!(f <= 24, "subset enumeration is desk-scale only");
    for mask in 0u32..(1 << f) {
        let k = mask.count_ones() as usize;
        if k < 3 || 2 * k > f {
            continue;
        }
        let small_set: Vec<usize> = (0..f).filter(|&v| mask >> v & 1 == 1).collect();
        let large_set: Vec<usize> = (0..f).filter(|&v| mask >> v & 1 == 0).collect();
        for (cl, cs) in [(RED, BLUE), (BLUE, RED)] {
            if let Some(large) = mono_ham_cycle(c, &large_set, cl) {
                if let Some(small) = mono_ham_cycle(c, &small_set, cs) {
                    return Ok(PartitionOutcome::TwoCycles { large, small });
                }
            }
        }
    }
    Err(HamError::TheoremViolation(format!(
        "no partition outcome exists at order {f}"
    )))
}

fn rotate(v: &[usize], start: usize) -> Vec<usize> {
    (0..v.len()).map(|k| v[(start + k) % v.len()]).collect()
}

fn violation(stage: &str) -> HamError {
    HamError::TheoremViolation(format!("constructed cycle failed verification: {stage}"))
}

/// Replays the constructive case analysis: a partition outcome is turned
/// into a verified even-split Hamiltonian cycle. The branches the underlying
/// proof shows impossible surface as theorem-violation errors.
pub fn construct_from_partition(
    c: &TwoColoring,
    outcome: &PartitionOutcome,
) -> Result<EvenSplitCycle, HamError> {
    match outcome {
        PartitionOutcome::LongMonoCycle { cycle } => construct_long_cycle(c, cycle),
        PartitionOutcome::CyclePlusEdge { cycle, pair } => construct_cycle_plus_edge(c, cycle, *pair),
        PartitionOutcome::TwoCycles { large, small } => construct_two_cycles(c, large, small),
    }
}

fn construct_long_cycle(c: &TwoColoring, cycle: &[usize]) -> Result<EvenSplitCycle, HamError> {
    let f = c.f();
    if cycle.len() == f {
        return split_of_cycle(c, cycle.to_vec()).ok_or_else(|| violation("full mono cycle"));
    }
    // odd cycle misses one vertex y; some two consecutive spokes to y agree
    // in color, and detouring through y between them keeps both runs even
    let l = cycle.len();
    let y = (0..f).find(|v| !cycle.contains(v)).expect("one vertex missing");
    for i in 0..l {
        if c.color(cycle[i], y) == c.color(cycle[(i + 1) % l], y) {
            let mut seq = rotate(cycle, (i + 1) % l);
            seq.push(y);
            return split_of_cycle(c, seq).ok_or_else(|| violation("patched odd cycle"));
        }
    }
    Err(violation("no equal-colored spoke pair on an odd cycle"))
}

fn construct_cycle_plus_edge(
    c: &TwoColoring,
    xs: &[usize],
    pair: [usize; 2],
) -> Result<EvenSplitCycle, HamError> {
    let l = xs.len();
    if l < 4 {
        return Err(HamError::TooSmall(l + 2));
    }
    let cr = c.color(xs[0], xs[1]);
    let cb = 1 - cr;
    let cross = (0..2).flat_map(|yi| (0..l).map(move |xi| (yi, xi)));
    let Some((yi, xi)) = cross
        .into_iter()
        .find(|&(yi, xi)| c.color(pair[yi], xs[xi]) == cr)
    else {
        // every cross edge has the pair's color: zig through the pair once
        let mut seq = vec![xs[0], pair[0], xs[1], pair[1]];
        seq.extend_from_slice(&xs[2..]);
        return split_of_cycle(c, seq).ok_or_else(|| violation("all-cross-opposite gadget"));
    };
    let (y1, y2) = (pair[yi], pair[1 - yi]);
    let x = |k: usize| xs[(xi + k) % l];
    // y1-x(0) has the cycle color; each probe's failure yields a two-run
    // cycle, and all probes succeeding closes a monochromatic one
    let seq = if c.color(y2, x(1)) == cb {
        let mut s = vec![y1, y2];
        s.extend((1..=l).map(x));
        s
    } else if c.color(y1, x(2)) == cb {
        let mut s = vec![y2, y1];
        s.extend((2..=l + 1).map(x));
        s
    } else if c.color(y2, x(3)) == cb {
        let mut s = vec![y1, y2];
        s.extend((3..=l + 2).map(x));
        s
    } else {
        let mut s = vec![x(0), y1, x(2), x(1), y2];
        s.extend((3..l).map(x));
        s
    };
    split_of_cycle(c, seq).ok_or_else(|| violation("pair gadget"))
}

fn construct_two_cycles(
    c: &TwoColoring,
    large: &[usize],
    small: &[usize],
) -> Result<EvenSplitCycle, HamError> {
    let (s2, t2) = (large.len(), small.len());
    let cr = c.color(large[0], large[1]);
    let cb = c.color(small[0], small[1]);
    if cr == cb || s2 < t2 || t2 < 3 {
        return Err(violation("malformed two-cycle outcome"));
    }
    if t2 % 2 == 1 {
        // both odd: consecutive cross pairs of equal color must exist, and
        // swapping them in merges the cycles with both runs even
        for i in 0..s2 {
            for j in 0..t2 {
                let a = c.color(large[i], small[j]);
                if a != c.color(large[(i + 1) % s2], small[(j + 1) % t2]) {
                    continue;
                }
                let mut seq = rotate(large, (i + 1) % s2);
                seq.extend((0..t2).map(|k| small[(j + t2 - k) % t2]));
                return split_of_cycle(c, seq).ok_or_else(|| violation("odd-odd splice"));
            }
        }
        return Err(violation("alternating cross colors on odd cycles"));
    }
    // both even
    let Some((k, l)) = (0..s2)
        .flat_map(|i| (0..t2).map(move |j| (i, j)))
        .find(|&(i, j)| c.color(large[i], small[j]) == cr)
    else {
        // every cross edge matches the small cycle: zigzag absorbs it
        let mut seq = Vec::with_capacity(s2 + t2);
        for i in 0..t2 {
            seq.push(large[i]);
            seq.push(small[i]);
        }
        seq.extend_from_slice(&large[t2..]);
        return split_of_cycle(c, seq).ok_or_else(|| violation("all-cross zigzag"));
    };
    // propagate the large-cycle color across diagonal neighbors; any
    // opposite-colored neighbor pair lets the two cycles merge directly
    let mut red = vec![false; s2 * t2];
    red[k * t2 + l] = true;
    let mut queue = VecDeque::from([(k, l)]);
    while let Some((i, j)) = queue.pop_front() {
        for ni in [(i + s2 - 1) % s2, (i + 1) % s2] {
            for nj in [(j + t2 - 1) % t2, (j + 1) % t2] {
                if c.color(large[ni], small[nj]) == cb {
                    // remove large (ni, i) and small (nj, j); add the two
                    // cross edges; traverse each cycle the long way round
                    let mut seq: Vec<usize> =
                        (0..s2).map(|k| large[(i + s2 - k) % s2]).collect();
                    if ni == (i + s2 - 1) % s2 {
                        seq = (0..s2).map(|k| large[(i + k) % s2]).collect();
                    }
                    if j == (nj + 1) % t2 {
                        seq.extend((0..t2).map(|k| small[(nj + t2 - k) % t2]));
                    } else {
                        seq.extend((0..t2).map(|k| small[(nj + k) % t2]));
                    }
                    return split_of_cycle(c, seq).ok_or_else(|| violation("even-even swap"));
                }
                if !red[ni * t2 + nj] {
                    red[ni * t2 + nj] = true;
                    queue.push_back((ni, nj));
                }
            }
        }
    }
    // full same-parity closure: relabel so the anchor pair sits at index 0,
    // thread the small cycle into the large one leaving two small vertices
    // out, and fall back to the pair gadget with those two
    let x: Vec<usize> = rotate(large, k);
    let y: Vec<usize> = rotate(small, l);
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            if (i + j) % 2 == 0 && c.color(xi, yj) != cr {
                return Err(violation("incomplete parity closure"));
            }
        }
    }
    let mut seq = Vec::with_capacity(s2 + t2 - 2);
    let mut i = 1usize;
    while i + 2 < t2 {
        seq.push(x[i - 1]);
        seq.push(y[i - 1]);
        i += 2;
    }
    seq.push(x[t2 - 2]);
    seq.push(x[t2 - 3]);
    seq.push(y[t2 - 3]);
    let mut i = 2usize;
    while i <= t2 - 4 {
        seq.push(x[i - 1]);
        seq.push(y[i - 1]);
        i += 2;
    }
    seq.push(x[t2 - 1]);
    seq.extend_from_slice(&x[t2..]);
    let mono = (0..seq.len()).all(|p| c.color(seq[p], seq[(p + 1) % seq.len()]) == cr);
    if !mono {
        return Err(violation("threaded parity cycle is not monochromatic"));
    }
    construct_cycle_plus_edge(c, &seq, [y[t2 - 2], y[t2 - 1]])
}

/// Runs `find_even_split` over every coloring of K_{2n}; returns the first
/// failing coloring index, or None when all pass. Sharded and deterministic.
pub fn exhaustive_check(n: usize, shards: usize, guard: u128) -> Result<Option<u128>, HamError> {
    let f = 2 * n;
    if n < 2 {
        return Err(HamError::TooSmall(f));
    }
    let count = weighting_count(f, 2).expect("desk scale");
    if count > guard {
        return Err(HamError::Guard { count, guard });
    }
    let shards = shards.max(1).min(count as usize);
    let per = count / shards as u128;
    let extra = count % shards as u128;
    let failing: Vec<u128> = (0..shards as u128)
        .into_par_iter()
        .filter_map(|s| {
            let lo = s * per + s.min(extra);
            let hi = lo + per + u128::from(s < extra);
            (lo..hi).find(|&i| {
                let c = TwoColoring::from_index(f, i);
                !matches!(find_even_split(&c, SplitMethod::Auto), Ok(Some(_)))
            })
        })
        .collect();
    Ok(failing.into_iter().min())
}
