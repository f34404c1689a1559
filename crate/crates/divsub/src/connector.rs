//! Path-rerouting machinery: efficient t-cliques, t-connectors, the
//! switching operation on 3-connectors, and reachable weight sets of
//! 4-connectors.

use crate::weighting::{VertexPath, Weighting};
use crate::zq::{self, WeightSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectorError {
    #[error("vertices must be distinct")]
    NotDistinct,
    #[error("delta {0} is not realizable by this connector")]
    UnreachableDelta(u32),
    #[error("switching is defined on 3-connectors, this one has t = {0}")]
    NotThreeConnector(usize),
}

/// A t-clique with designated endpoints admitting ≥ t−1 distinct internal
/// path weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficientClique {
    vertices: Vec<usize>,
    x: usize,
    x_prime: usize,
    path_weights: WeightSet,
}

impl EfficientClique {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.x, self.x_prime)
    }

    /// Weights of all x→x′ paths inside the clique.
    pub fn path_weights(&self) -> &WeightSet {
        &self.path_weights
    }

    /// Vertices other than the two endpoints.
    pub fn internal(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| v != self.x && v != self.x_prime)
            .collect()
    }
}

/// c = ω(xy) + ω(yx′) − ω(xx′); the triple is c-efficient iff c ≠ 0.
pub fn efficiency_value(
    w: &Weighting,
    x: usize,
    y: usize,
    x_prime: usize,
) -> Result<u32, ConnectorError> {
    if x == y || y == x_prime || x == x_prime {
        return Err(ConnectorError::NotDistinct);
    }
    let c = w.edge_weight(x, y) as i64 + w.edge_weight(y, x_prime) as i64
        - w.edge_weight(x, x_prime) as i64;
    Ok(zq::normalize(c, w.q()))
}

/// All weights of x→x′ paths whose vertices stay inside `vertices`.
fn clique_path_weights(w: &Weighting, vertices: &[usize], x: usize, x_prime: usize) -> WeightSet {
    let others: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&v| v != x && v != x_prime)
        .collect();
    let mut weights = WeightSet::empty(w.q());
    // enumerate every ordered arrangement of a subset of `others`
    fn rec(
        w: &Weighting,
        others: &[usize],
        used: &mut Vec<bool>,
        cur: usize,
        acc: u32,
        x_prime: usize,
        out: &mut WeightSet,
    ) {
        out.insert((acc + w.edge_weight(cur, x_prime)) % w.q());
        for (i, &y) in others.iter().enumerate() {
            if used[i] {
                continue;
            }
            used[i] = true;
            rec(
                w,
                others,
                used,
                y,
                (acc + w.edge_weight(cur, y)) % w.q(),
                x_prime,
                out,
            );
            used[i] = false;
        }
    }
    let mut used = vec![false; others.len()];
    rec(w, &others, &mut used, x, 0, x_prime, &mut weights);
    weights
}

/// Checks efficiency by full enumeration of the clique's internal paths.
pub fn is_efficient_clique(
    w: &Weighting,
    vertices: &[usize],
    x: usize,
    x_prime: usize,
) -> Option<EfficientClique> {
    let t = vertices.len();
    debug_assert!(t >= 3 && vertices.contains(&x) && vertices.contains(&x_prime));
    let path_weights = clique_path_weights(w, vertices, x, x_prime);
    if path_weights.len() >= t - 1 {
        Some(EfficientClique {
            vertices: vertices.to_vec(),
            x,
            x_prime,
            path_weights,
        })
    } else {
        None
    }
}

/// A chain of efficient t-cliques glued at single junction vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    t: usize,
    cliques: Vec<EfficientClique>,
}

impl Connector {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn s(&self) -> usize {
        self.cliques.len()
    }

    pub fn cliques(&self) -> &[EfficientClique] {
        &self.cliques
    }

    pub fn junctions(&self) -> Vec<usize> {
        let mut xs: Vec<usize> = self.cliques.iter().map(|c| c.x).collect();
        xs.push(self.cliques.last().unwrap().x_prime);
        xs
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.cliques[0].x, self.cliques.last().unwrap().x_prime)
    }

    pub fn base_path(&self) -> VertexPath {
        VertexPath::new(self.junctions())
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cliques
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.cliques.iter().any(|c| c.vertices.contains(&v))
    }

    /// The c_i values of a 3-connector.
    pub fn efficiencies(&self, w: &Weighting) -> Result<Vec<u32>, ConnectorError> {
        if self.t != 3 {
            return Err(ConnectorError::NotThreeConnector(self.t));
        }
        self.cliques
            .iter()
            .map(|c| efficiency_value(w, c.x, c.internal()[0], c.x_prime))
            .collect()
    }

    /// Realizable weight shifts of a 3-connector: Σ {0, c_i}.
    pub fn delta_set(&self, w: &Weighting) -> Result<WeightSet, ConnectorError> {
        let q = w.q();
        let factors: Vec<WeightSet> = self
            .efficiencies(w)?
            .into_iter()
            .map(|c| WeightSet::new(q, [0, c]))
            .collect();
        Ok(zq::iterated_sumset(q, &factors).expect("uniform q"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    Found(Connector),
    Absent,
    Budget,
}

impl BuildOutcome {
    pub fn found(self) -> Option<Connector> {
        match self {
            BuildOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Builds an s-clique chain of efficient t-cliques (t ∈ {3,4}) on fresh
/// vertices outside `forbidden`, consuming the lowest-indexed admissible
/// vertices first; complete backtracking over the admissible choices.
pub fn build_connector(
    w: &Weighting,
    t: usize,
    s: usize,
    forbidden: &[usize],
    mut budget: u64,
) -> BuildOutcome {
    assert!(t == 3 || t == 4, "the machinery uses t in {{3, 4}} only");
    assert!(s >= 1);
    let f = w.f();
    let mut used = vec![false; f];
    for &v in forbidden {
        used[v] = true;
    }
    let mut cliques: Vec<EfficientClique> = Vec::with_capacity(s);
    let mut result: Option<Vec<EfficientClique>> = None;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        w: &Weighting,
        t: usize,
        s: usize,
        used: &mut Vec<bool>,
        cliques: &mut Vec<EfficientClique>,
        budget: &mut u64,
        result: &mut Option<Vec<EfficientClique>>,
    ) -> Ctl {
        if *budget == 0 {
            return Ctl::Budget;
        }
        *budget -= 1;
        if cliques.len() == s {
            *result = Some(cliques.clone());
            return Ctl::Found;
        }
        let f = w.f();
        let fresh: Vec<usize> = (0..f).filter(|&v| !used[v]).collect();
        // first clique also picks its starting junction
        let starts: Vec<usize> = match cliques.last() {
            Some(c) => vec![c.x_prime],
            None => fresh.clone(),
        };
        for x in starts {
            let take_start = cliques.is_empty();
            if take_start {
                used[x] = true;
            }
            let avail: Vec<usize> = (0..f).filter(|&v| !used[v]).collect();
            let r = try_clique(w, t, s, x, &avail, used, cliques, budget, result);
            if take_start {
                used[x] = false;
            }
            match r {
                Ctl::Exhausted => {}
                other => return other,
            }
        }
        Ctl::Exhausted
    }

    #[allow(clippy::too_many_arguments)]
    fn try_clique(
        w: &Weighting,
        t: usize,
        s: usize,
        x: usize,
        avail: &[usize],
        used: &mut Vec<bool>,
        cliques: &mut Vec<EfficientClique>,
        budget: &mut u64,
        result: &mut Option<Vec<EfficientClique>>,
    ) -> Ctl {
        // choose t−2 internal vertices and the next junction, lowest first
        let mut pick = |verts: Vec<usize>, x_next: usize| -> Ctl {
            let mut all = vec![x];
            all.extend(&verts);
            all.push(x_next);
            if let Some(c) = is_efficient_clique(w, &all, x, x_next) {
                for &v in &verts {
                    used[v] = true;
                }
                used[x_next] = true;
                cliques.push(c);
                let r = rec(w, t, s, used, cliques, budget, result);
                cliques.pop();
                used[x_next] = false;
                for &v in &verts {
                    used[v] = false;
                }
                r
            } else {
                Ctl::Exhausted
            }
        };
        if t == 3 {
            for (i, &y) in avail.iter().enumerate() {
                for (j, &xn) in avail.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    match pick(vec![y], xn) {
                        Ctl::Exhausted => {}
                        other => return other,
                    }
                }
            }
        } else {
            for (i, &y1) in avail.iter().enumerate() {
                for (j, &y2) in avail.iter().enumerate().skip(i + 1) {
                    for (k, &xn) in avail.iter().enumerate() {
                        if k == i || k == j {
                            continue;
                        }
                        match pick(vec![y1, y2], xn) {
                            Ctl::Exhausted => {}
                            other => return other,
                        }
                    }
                }
            }
        }
        Ctl::Exhausted
    }

    enum Ctl {
        Found,
        Exhausted,
        Budget,
    }

    match rec(w, t, s, &mut used, &mut cliques, &mut budget, &mut result) {
        Ctl::Found => BuildOutcome::Found(Connector {
            t,
            cliques: result.expect("found"),
        }),
        Ctl::Exhausted => BuildOutcome::Absent,
        Ctl::Budget => BuildOutcome::Budget,
    }
}

/// Reroutes the base path of a 3-connector so its weight shifts by `delta`,
/// detouring through y_i in every clique the subset-sum selection activates.
pub fn switch_path(x: &Connector, w: &Weighting, delta: u32) -> Result<VertexPath, ConnectorError> {
    let cs = x.efficiencies(w)?;
    let picks = zq::subset_sum_selection(&cs, delta, w.q())
        .ok_or(ConnectorError::UnreachableDelta(delta))?;
    let mut verts = Vec::new();
    for (i, clique) in x.cliques.iter().enumerate() {
        verts.push(clique.x);
        if picks.contains(&i) {
            verts.push(clique.internal()[0]);
        }
    }
    verts.push(x.cliques.last().unwrap().x_prime);
    Ok(VertexPath::new(verts))
}

/// Exact set of endpoint-to-endpoint path weights of a connector, as the
/// iterated sumset of the per-clique weight sets. Over prime q a 4-connector
/// is guaranteed |R(X)| ≥ min{2s+1, q}.
pub fn reachable_weights(x: &Connector, w: &Weighting) -> WeightSet {
    let q = w.q();
    let factors: Vec<WeightSet> = x.cliques.iter().map(|c| c.path_weights.clone()).collect();
    let r = zq::iterated_sumset(q, &factors).expect("uniform q");
    if x.t == 4 && zq::is_prime(q) {
        let bound = (2 * x.s() as u32 + 1).min(q);
        assert!(
            r.len() as u32 >= bound,
            "4-connector reachable set smaller than the Cauchy-Davenport bound"
        );
    }
    r
}
