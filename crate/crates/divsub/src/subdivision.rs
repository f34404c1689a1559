//! Subdivision embeddings: the certificate type, its verifier (the single
//! source of truth for q-divisibility), and the JSON certificate format.

use crate::pattern::PatternGraph;
use crate::weighting::{VertexPath, Weighting};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An injective branch map plus one internally disjoint path per pattern
/// edge, aligned with `PatternGraph::edges()` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionEmbedding {
    pub branch_map: Vec<usize>,
    pub paths: Vec<VertexPath>,
}

/// First violated clause of the embedding invariants.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingViolation {
    #[error("branch map has {got} entries, pattern has {expected} vertices")]
    BranchMapSize { expected: usize, got: usize },
    #[error("{got} paths given, pattern has {expected} edges")]
    PathCount { expected: usize, got: usize },
    #[error("branch image {v} out of range for f = {f}")]
    BranchOutOfRange { v: usize, f: usize },
    #[error("branch map not injective: host vertex {0} used twice")]
    BranchNotInjective(usize),
    #[error("path {edge} references host vertex {v} out of range")]
    PathVertexOutOfRange { edge: usize, v: usize },
    #[error("path {edge} endpoints do not match its pattern edge")]
    EndpointMismatch { edge: usize },
    #[error("path {edge} has length 0; a subdivision path is a genuine path")]
    EmptyPath { edge: usize },
    #[error("path {edge} has length {got}, t-subdivision requires length {expected}")]
    PathLength {
        edge: usize,
        expected: usize,
        got: usize,
    },
    #[error("internal vertex {0} is not disjoint from other paths or branch images")]
    InternalOverlap(usize),
    #[error("path {edge} weight {weight} ≢ 0 mod {q}")]
    PathWeight { edge: usize, weight: u32, q: u32 },
}

/// Checks all invariants of a (t-)subdivision embedding; `t = None` leaves
/// path lengths unconstrained.
pub fn verify_embedding(
    w: &Weighting,
    h: &PatternGraph,
    e: &SubdivisionEmbedding,
    t: Option<usize>,
) -> Result<(), EmbeddingViolation> {
    if e.branch_map.len() != h.n() {
        return Err(EmbeddingViolation::BranchMapSize {
            expected: h.n(),
            got: e.branch_map.len(),
        });
    }
    if e.paths.len() != h.m() {
        return Err(EmbeddingViolation::PathCount {
            expected: h.m(),
            got: e.paths.len(),
        });
    }
    let f = w.f();
    let mut host_used = vec![false; f];
    for &v in &e.branch_map {
        if v >= f {
            return Err(EmbeddingViolation::BranchOutOfRange { v, f });
        }
        if host_used[v] {
            return Err(EmbeddingViolation::BranchNotInjective(v));
        }
        host_used[v] = true;
    }
    for (i, path) in e.paths.iter().enumerate() {
        if let Some(&v) = path.vertices().iter().find(|&&v| v >= f) {
            return Err(EmbeddingViolation::PathVertexOutOfRange { edge: i, v });
        }
        let (u, v) = h.edges()[i];
        let (a, b) = path.endpoints();
        let (eu, ev) = (e.branch_map[u], e.branch_map[v]);
        if !(a == eu && b == ev || a == ev && b == eu) {
            return Err(EmbeddingViolation::EndpointMismatch { edge: i });
        }
        if path.is_empty() {
            return Err(EmbeddingViolation::EmptyPath { edge: i });
        }
        if let Some(t) = t {
            if path.len() != t + 1 {
                return Err(EmbeddingViolation::PathLength {
                    edge: i,
                    expected: t + 1,
                    got: path.len(),
                });
            }
        }
    }
    for path in &e.paths {
        for &v in path.internal() {
            if host_used[v] {
                return Err(EmbeddingViolation::InternalOverlap(v));
            }
            host_used[v] = true;
        }
    }
    for (i, path) in e.paths.iter().enumerate() {
        let weight = w.path_weight(path);
        if weight != 0 {
            return Err(EmbeddingViolation::PathWeight {
                edge: i,
                weight,
                q: w.q(),
            });
        }
    }
    Ok(())
}

/// JSON certificate file contents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub f: usize,
    pub q: u32,
    pub t: Option<usize>,
    pub branch_map: Vec<usize>,
    pub paths: Vec<CertificatePath>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificatePath {
    pub edge: [usize; 2],
    pub vertices: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate path list does not match the pattern's edges")]
    EdgeMismatch,
    #[error("certificate declares f={cert} but host has f={host}")]
    HostSizeMismatch { cert: usize, host: usize },
    #[error("certificate declares q={cert} but host has q={host}")]
    GroupMismatch { cert: u32, host: u32 },
    #[error("path vertices malformed: {0}")]
    BadPath(String),
}

impl Certificate {
    pub fn from_embedding(
        w: &Weighting,
        h: &PatternGraph,
        e: &SubdivisionEmbedding,
        t: Option<usize>,
    ) -> Self {
        Certificate {
            f: w.f(),
            q: w.q(),
            t,
            branch_map: e.branch_map.clone(),
            paths: h
                .edges()
                .iter()
                .zip(&e.paths)
                .map(|(&(u, v), p)| CertificatePath {
                    edge: [u, v],
                    vertices: p.vertices().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_embedding(
        &self,
        w: &Weighting,
        h: &PatternGraph,
    ) -> Result<SubdivisionEmbedding, CertificateError> {
        if self.f != w.f() {
            return Err(CertificateError::HostSizeMismatch {
                cert: self.f,
                host: w.f(),
            });
        }
        if self.q != w.q() {
            return Err(CertificateError::GroupMismatch {
                cert: self.q,
                host: w.q(),
            });
        }
        if self.paths.len() != h.m() {
            return Err(CertificateError::EdgeMismatch);
        }
        let mut paths = Vec::with_capacity(h.m());
        for (&(u, v), cp) in h.edges().iter().zip(&self.paths) {
            if [u, v] != cp.edge && [v, u] != cp.edge {
                return Err(CertificateError::EdgeMismatch);
            }
            let mut sorted = cp.vertices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if cp.vertices.is_empty() || sorted.len() != cp.vertices.len() {
                return Err(CertificateError::BadPath(format!("{:?}", cp.vertices)));
            }
            paths.push(VertexPath::new(cp.vertices.clone()));
        }
        Ok(SubdivisionEmbedding {
            branch_map: self.branch_map.clone(),
            paths,
        })
    }
}
