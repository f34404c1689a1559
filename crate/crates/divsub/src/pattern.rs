//! The target graph H: parsing, tree/cycle recognition, connectivity, and
//! the degeneracy (core number) check.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("malformed header: expected \"n m\"")]
    BadHeader,
    #[error("line {0}: malformed edge")]
    BadEdge(usize),
    #[error("loop edge ({0},{0})")]
    Loop(usize),
    #[error("duplicate edge ({0},{1})")]
    Duplicate(usize, usize),
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// A simple graph on 0-indexed vertices, the subdivision pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternClass {
    Tree,
    Cycle,
    Other,
}

impl PatternGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, PatternError> {
        let mut seen = std::collections::BTreeSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(PatternError::Loop(u));
            }
            let e = (u.min(v), u.max(v));
            if e.1 >= n {
                return Err(PatternError::VertexOutOfRange { v: e.1, n });
            }
            if !seen.insert(e) {
                return Err(PatternError::Duplicate(e.0, e.1));
            }
            norm.push(e);
        }
        Ok(PatternGraph { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Path P_k on k vertices.
    pub fn path(k: usize) -> Self {
        PatternGraph::new(k, (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect()).unwrap()
    }

    /// Cycle C_k on k >= 3 vertices.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3);
        let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, k - 1));
        PatternGraph::new(k, edges).unwrap()
    }

    /// Complete graph K_k.
    pub fn complete(k: usize) -> Self {
        let edges = (0..k)
            .flat_map(|u| ((u + 1)..k).map(move |v| (u, v)))
            .collect();
        PatternGraph::new(k, edges).unwrap()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Core number: max over the min-degree elimination ordering of the
    /// degree at removal time.
    pub fn degeneracy(&self) -> usize {
        let mut alive = vec![true; self.n];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut best = 0;
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| deg[v])
                .unwrap();
            best = best.max(deg[v]);
            alive[v] = false;
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        best
    }

    pub fn classify(&self) -> PatternClass {
        if self.is_connected() && self.m() + 1 == self.n {
            PatternClass::Tree
        } else if self.n >= 3
            && self.is_connected()
            && (0..self.n).all(|v| self.degree(v) == 2)
        {
            PatternClass::Cycle
        } else {
            PatternClass::Other
        }
    }
}

pub fn serialize_pattern(h: &PatternGraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.m());
    for &(u, v) in h.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<PatternGraph, PatternError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(PatternError::BadHeader)?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(PatternError::BadHeader)?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(PatternError::BadHeader)?;
    if it.next().is_some() {
        return Err(PatternError::BadHeader);
    }
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(PatternError::BadEdge(i + 2))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(PatternError::BadEdge(i + 2))?;
        if it.next().is_some() {
            return Err(PatternError::BadEdge(i + 2));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(PatternError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    PatternGraph::new(n, edges)
}
