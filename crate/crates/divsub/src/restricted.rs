//! B-restricted weightings: the definitional check, local subgroups at a
//! vertex, cycle-weight verification, and zero-weight path construction
//! through a B-connector.

use crate::connector::{switch_path, Connector};
use crate::weighting::{random_weighting, VertexPath, Weighting};
use crate::zq::{self, Subgroup};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RestrictedError {
    #[error("{d} does not divide {q}")]
    NotDivisor { d: u32, q: u32 },
    #[error("host must have at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("weighting is not {0}Zq-restricted")]
    NotRestricted(u32),
    #[error("connector is not a B-connector for d = {0}")]
    NotBConnector(u32),
    #[error("endpoint {0} lies inside the connector")]
    EndpointInConnector(usize),
    #[error("edge weight {w} is outside the subgroup {d}Zq")]
    EdgeWeightNotInSubgroup { w: u32, d: u32 },
}

/// First clause of the B-restricted definition that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictionViolation {
    /// 2ω(uv) ∉ B
    Edge { u: usize, v: usize, doubled: u32 },
    /// efficiency value of (x, y, z) outside B
    Triple { x: usize, y: usize, z: usize, c: u32 },
}

/// Checks 2ω(e) ∈ dℤq for every edge and c ∈ dℤq for every ordered
/// efficient triple; reports the first violation.
pub fn is_b_restricted(
    w: &Weighting,
    d: u32,
) -> Result<Result<(), RestrictionViolation>, RestrictedError> {
    let q = w.q();
    if d == 0 || !q.is_multiple_of(d) {
        return Err(RestrictedError::NotDivisor { d, q });
    }
    let b = Subgroup::new(d, q).expect("checked divisor");
    let f = w.f();
    for u in 0..f {
        for v in (u + 1)..f {
            let doubled = (2 * w.edge_weight(u, v)) % q;
            if !b.contains(doubled) {
                return Ok(Err(RestrictionViolation::Edge { u, v, doubled }));
            }
        }
    }
    for x in 0..f {
        for y in 0..f {
            for z in 0..f {
                if x == y || y == z || x == z {
                    continue;
                }
                let c = zq::normalize(
                    w.edge_weight(x, y) as i64 + w.edge_weight(y, z) as i64
                        - w.edge_weight(x, z) as i64,
                    q,
                );
                if !b.contains(c) {
                    return Ok(Err(RestrictionViolation::Triple { x, y, z, c }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// The subgroup generated by the efficiency values of all triples through
/// `v`; d = q (the trivial subgroup) when no efficient triple exists.
pub fn local_subgroup(w: &Weighting, v: usize) -> Result<u32, RestrictedError> {
    let f = w.f();
    if f < 3 {
        return Err(RestrictedError::TooSmall(f));
    }
    let q = w.q();
    let mut gens = Vec::new();
    for x in 0..f {
        for y in 0..f {
            if x == v || y == v || x == y {
                continue;
            }
            let c = zq::normalize(
                w.edge_weight(v, x) as i64 + w.edge_weight(x, y) as i64
                    - w.edge_weight(v, y) as i64,
                q,
            );
            if c != 0 {
                gens.push(c);
            }
        }
    }
    Ok(zq::generated_subgroup(&gens, q).divisor())
}

/// Builds a random K_{f+1}, strips vertex 0, and returns the induced
/// weighting on the remaining f vertices with its guaranteed divisor.
pub fn generate_b_restricted(f: usize, q: u32, seed: u64) -> (Weighting, u32) {
    let host = random_weighting(f + 1, q, seed);
    let d = local_subgroup(&host, 0).expect("f + 1 >= 3");
    let rest: Vec<usize> = (1..=f).collect();
    (host.induced(&rest), d)
}

pub const CYCLE_CHECK_CAP: usize = 7;

/// Enumerates all cycles up to length `cap` and checks their weights lie in
/// dℤq; precondition: the weighting passes `is_b_restricted(d)`.
pub fn check_cycle_weights(
    w: &Weighting,
    d: u32,
    cap: usize,
) -> Result<Result<(), Vec<usize>>, RestrictedError> {
    if is_b_restricted(w, d)?.is_err() {
        return Err(RestrictedError::NotRestricted(d));
    }
    let b = Subgroup::new(d, w.q()).expect("checked divisor");
    let f = w.f();
    let cap = cap.min(f);
    // canonical cycles: smallest vertex first, second < last kills reflections
    let mut cur: Vec<usize> = Vec::new();
    fn rec(
        w: &Weighting,
        b: &Subgroup,
        cap: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Result<(), Vec<usize>> {
        if cur.len() >= 3 && cur[1] < *cur.last().unwrap() && !b.contains(w.cycle_weight(cur)) {
            return Err(cur.clone());
        }
        if cur.len() == cap {
            return Ok(());
        }
        let start = cur[0];
        for v in (start + 1)..w.f() {
            if used[v] {
                continue;
            }
            used[v] = true;
            cur.push(v);
            let r = rec(w, b, cap, cur, used);
            cur.pop();
            used[v] = false;
            r?;
        }
        Ok(())
    }
    let mut used = vec![false; f];
    for start in 0..f {
        cur.clear();
        cur.push(start);
        used[start] = true;
        let r = rec(w, &b, cap, &mut cur, &mut used);
        used[start] = false;
        if let Err(cycle) = r {
            return Ok(Err(cycle));
        }
    }
    Ok(Ok(()))
}

/// Lemma-style zero-weight path construction: route u through a B-connector
/// F to v so the total weight is exactly 0 mod q.
pub fn zero_weight_path(
    w: &Weighting,
    f_conn: &Connector,
    u: usize,
    v: usize,
    d: u32,
) -> Result<VertexPath, RestrictedError> {
    let q = w.q();
    if is_b_restricted(w, d)?.is_err() {
        return Err(RestrictedError::NotRestricted(d));
    }
    let b = Subgroup::new(d, q).expect("checked divisor");
    if f_conn.contains_vertex(u) {
        return Err(RestrictedError::EndpointInConnector(u));
    }
    if f_conn.contains_vertex(v) {
        return Err(RestrictedError::EndpointInConnector(v));
    }
    let uv = w.edge_weight(u, v);
    if !b.contains(uv) {
        return Err(RestrictedError::EdgeWeightNotInSubgroup { w: uv, d });
    }
    // B-connector admission: the realizable delta set must cover dZq exactly
    let deltas = f_conn
        .delta_set(w)
        .map_err(|_| RestrictedError::NotBConnector(d))?;
    if !b.members().iter().all(|&x| deltas.contains(x)) {
        return Err(RestrictedError::NotBConnector(d));
    }
    let (x1, xe) = f_conn.endpoints();
    let base = f_conn.base_path();
    // weight of u P v; in dZq by the cycle-weight lemma
    let b_val = (w.edge_weight(u, x1) + w.path_weight(&base) + w.edge_weight(xe, v)) % q;
    debug_assert!(b.contains(b_val));
    let delta = (q - b_val) % q;
    let inner = switch_path(f_conn, w, delta).map_err(|_| RestrictedError::NotBConnector(d))?;
    let mut verts = vec![u];
    verts.extend_from_slice(inner.vertices());
    verts.push(v);
    Ok(VertexPath::new(verts))
}
