//! The host object: K_f with edge weights in ℤq, path/cycle weight
//! evaluation, witness constructions, indexed weighting enumeration, and the
//! text file format.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightingError {
    #[error("malformed header: expected \"f q\"")]
    BadHeader,
    #[error("line {0}: wrong number of weights")]
    BadRowLength(usize),
    #[error("weight {w} out of range for q = {q}")]
    WeightOutOfRange { w: i64, q: u32 },
    #[error("malformed weight token {0:?}")]
    BadToken(String),
    #[error("k = {k} exceeds f = {f}")]
    BadStarCount { k: usize, f: usize },
}

/// Position of edge (u, v), u < v, in the packed upper-triangular layout.
#[inline]
pub fn edge_index(u: usize, v: usize) -> usize {
    debug_assert!(u != v);
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// Number of edges of K_f.
#[inline]
pub fn edge_count(f: usize) -> usize {
    f * f.saturating_sub(1) / 2
}

/// Edges of K_f in storage order: (0,1), (0,2), (1,2), (0,3), ...
pub fn edges(f: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..f).flat_map(move |v| (0..v).map(move |u| (u, v)))
}

/// A complete graph K_f with an edge-weight function into ℤq.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    f: usize,
    q: u32,
    weights: Vec<u32>,
}

impl Weighting {
    pub fn new(f: usize, q: u32, weights: Vec<u32>) -> Self {
        assert!(f >= 1 && q >= 2);
        assert_eq!(weights.len(), edge_count(f));
        assert!(weights.iter().all(|&w| w < q));
        Weighting { f, q, weights }
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Symmetric weight lookup; panics on a loop or out-of-range vertex.
    pub fn edge_weight(&self, u: usize, v: usize) -> u32 {
        assert!(u != v, "loop edge ({u},{u})");
        assert!(u < self.f && v < self.f, "vertex out of range");
        self.weights[edge_index(u, v)]
    }

    /// Weight of a path given as a vertex sequence; a single vertex weighs 0.
    pub fn path_weight(&self, path: &VertexPath) -> u32 {
        let vs = path.vertices();
        let mut acc = 0u32;
        for w in vs.windows(2) {
            acc = (acc + self.edge_weight(w[0], w[1])) % self.q;
        }
        acc
    }

    /// Weight of the cycle through `cycle` (closing edge included).
    pub fn cycle_weight(&self, cycle: &[usize]) -> u32 {
        assert!(cycle.len() >= 3, "cycle needs at least 3 vertices");
        let mut acc = 0u32;
        for i in 0..cycle.len() {
            acc = (acc + self.edge_weight(cycle[i], cycle[(i + 1) % cycle.len()])) % self.q;
        }
        acc
    }

    /// Induced weighting on a vertex subset, relabeled 0..k in the given order.
    pub fn induced(&self, verts: &[usize]) -> Weighting {
        let k = verts.len();
        let mut weights = vec![0u32; edge_count(k)];
        for (u, v) in edges(k) {
            weights[edge_index(u, v)] = self.edge_weight(verts[u], verts[v]);
        }
        Weighting::new(k, self.q, weights)
    }
}

/// A sequence of distinct vertices; consecutive entries are the path's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPath(Vec<usize>);

impl VertexPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        let mut seen = vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), vertices.len(), "repeated vertex in path");
        VertexPath(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0[0], *self.0.last().unwrap())
    }

    pub fn internal(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }
}

/// Every edge gets weight 1: the lower-bound witness weighting.
pub fn all_ones(f: usize, q: u32) -> Weighting {
    Weighting::new(f, q, vec![1 % q; edge_count(f)])
}

/// Edges incident to vertices {0, ..., k−1} get weight 1, all others 0.
pub fn star_witness(f: usize, q: u32, k: usize) -> Result<Weighting, WeightingError> {
    if k > f {
        return Err(WeightingError::BadStarCount { k, f });
    }
    let mut weights = vec![0u32; edge_count(f)];
    for (u, v) in edges(f) {
        if u < k || v < k {
            weights[edge_index(u, v)] = 1 % q;
        }
    }
    Ok(Weighting::new(f, q, weights))
}

/// Deterministic uniform weighting from a seed.
pub fn random_weighting(f: usize, q: u32, seed: u64) -> Weighting {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..edge_count(f)).map(|_| rng.gen_range(0..q)).collect();
    Weighting::new(f, q, weights)
}

/// Total number of ℤq-weightings of K_f, i.e. q^(f(f−1)/2); None on overflow.
pub fn weighting_count(f: usize, q: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..edge_count(f) {
        acc = acc.checked_mul(q as u128)?;
    }
    Some(acc)
}

/// Weighting number `index`: edge e carries digit e of the index in base q.
pub fn weighting_from_index(f: usize, q: u32, index: u128) -> Weighting {
    let mut weights = vec![0u32; edge_count(f)];
    let mut rest = index;
    for w in weights.iter_mut() {
        *w = (rest % q as u128) as u32;
        rest /= q as u128;
    }
    debug_assert_eq!(rest, 0, "index out of range");
    Weighting::new(f, q, weights)
}

/// Streams the weightings with indices in [start, end).
pub fn enumerate_weightings(
    f: usize,
    q: u32,
    start: u128,
    end: u128,
) -> impl Iterator<Item = Weighting> {
    (start..end).map(move |i| weighting_from_index(f, q, i))
}

/// Serializes to the text format: "f q" header, then row k holding
/// ω(k, k+1) ... ω(k, f−1).
pub fn serialize_weighting(w: &Weighting) -> String {
    let mut out = format!("{} {}\n", w.f(), w.q());
    for u in 0..w.f().saturating_sub(1) {
        let row: Vec<String> = (u + 1..w.f())
            .map(|v| w.edge_weight(u, v).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_weighting(text: &str) -> Result<Weighting, WeightingError> {
    parse_weighting_with(text, false)
}

/// Parses the text format; out-of-range weights are an error unless
/// `reduce` is set, in which case they are reduced mod q.
pub fn parse_weighting_with(text: &str, reduce: bool) -> Result<Weighting, WeightingError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(WeightingError::BadHeader)?;
    let mut it = header.split_whitespace();
    let f: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(WeightingError::BadHeader)?;
    let q: u32 = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(WeightingError::BadHeader)?;
    if it.next().is_some() || f < 1 || q < 2 {
        return Err(WeightingError::BadHeader);
    }
    let mut weights = vec![0u32; edge_count(f)];
    for u in 0..f.saturating_sub(1) {
        let line = lines.next().ok_or(WeightingError::BadRowLength(u + 2))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != f - 1 - u {
            return Err(WeightingError::BadRowLength(u + 2));
        }
        for (j, tok) in toks.iter().enumerate() {
            let v = u + 1 + j;
            let raw: i64 = tok
                .parse()
                .map_err(|_| WeightingError::BadToken(tok.to_string()))?;
            let w = if reduce {
                raw.rem_euclid(q as i64) as u32
            } else if raw < 0 || raw >= q as i64 {
                return Err(WeightingError::WeightOutOfRange { w: raw, q });
            } else {
                raw as u32
            };
            weights[edge_index(u, v)] = w;
        }
    }
    Ok(Weighting::new(f, q, weights))
}
