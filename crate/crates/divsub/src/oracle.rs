//! Exact divisible-subdivision numbers by exhaustive enumeration, sampled
//! validation at the closed-form bounds, and the bound formulas themselves.

use crate::finder::{default_finder, SearchOutcome, SubdivisionFinder, DEFAULT_BUDGET};
use crate::pattern::PatternGraph;
use crate::weighting::{random_weighting, weighting_count, weighting_from_index};
use crate::zq::is_prime;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

/// Per-level enumeration cap.
pub const DEFAULT_GUARD: u128 = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{p} is not an odd prime")]
    NotPrime { p: u32 },
    #[error("q = {q} must divide t + 1 = {t_plus_one}")]
    QNotDividingTPlusOne { q: u32, t_plus_one: usize },
    #[error("guard exceeded at the first level f = {f}: {count} weightings > {guard}")]
    GuardAtFirstLevel { f: usize, count: u128, guard: u128 },
    #[error("level size overflows at f = {f}")]
    CountOverflow { f: usize },
}

/// s_q(H) ≥ m(q−1) + n, via the all-ones weighting.
pub fn bound_lower(n: usize, m: usize, q: u32) -> usize {
    m * (q as usize - 1) + n
}

/// Exact value for trees: s_q(T) = nq − q + 1.
pub fn bound_tree(n: usize, q: u32) -> usize {
    let q = q as usize;
    n * q - q + 1
}

/// General upper bound: s_q(H) ≤ (2q−1)m + 2n − 1 + 4q.
pub fn bound_general(n: usize, m: usize, q: u32) -> usize {
    let q = q as usize;
    (2 * q - 1) * m + 2 * n - 1 + 4 * q
}

/// Prime upper bound: s_p(H) ≤ ⌈((3p−1)m − (p−1)n + (p+1)) / 2⌉.
pub fn bound_prime(n: usize, m: usize, p: u32) -> Result<usize, OracleError> {
    if p < 3 || !is_prime(p) {
        return Err(OracleError::NotPrime { p });
    }
    let p = p as i64;
    let num = (3 * p - 1) * m as i64 - (p - 1) * n as i64 + (p + 1);
    Ok(num.div_euclid(2).max(0) as usize + (num.rem_euclid(2) != 0) as usize)
}

/// Tri-state membership check with the default finder.
pub fn contains(
    w: &crate::weighting::Weighting,
    h: &PatternGraph,
    t: Option<usize>,
    budget: u64,
) -> SearchOutcome {
    default_finder().find(w, h, t, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SqKind {
    /// `value` is the number itself; `witness` refutes `value - 1`.
    Exact,
    /// every level below `value` holds a refuted weighting; guard stopped the scan
    LowerBoundOnly,
    /// a finder budget ran out or the level cap was reached
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqStats {
    pub examined: u128,
    pub shards: usize,
    pub levels: usize,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqResult {
    pub kind: SqKind,
    pub value: usize,
    /// (f, weighting index) with no embedding, at the last refuted level
    pub witness: Option<(usize, u128)>,
    pub stats: SqStats,
}

#[derive(Clone, Copy)]
pub struct SqOptions {
    pub t: Option<usize>,
    /// 0 = start at the scan floor
    pub fmin: usize,
    /// 0 = scan floor + 16
    pub fmax: usize,
    pub guard: u128,
    pub budget: u64,
    /// 0 = one shard per thread
    pub shards: usize,
    pub finder: &'static dyn SubdivisionFinder,
}

impl Default for SqOptions {
    fn default() -> Self {
        SqOptions {
            t: None,
            fmin: 0,
            fmax: 0,
            guard: DEFAULT_GUARD,
            budget: DEFAULT_BUDGET,
            shards: 0,
            finder: default_finder(),
        }
    }
}

enum LevelOutcome {
    AllPass,
    Fail(u128),
    Budget,
}

struct ShardResult {
    absent: Option<u128>,
    budget: bool,
    examined: u128,
}

#[allow(clippy::too_many_arguments)]
fn scan_level(
    h: &PatternGraph,
    q: u32,
    f: usize,
    t: Option<usize>,
    finder: &dyn SubdivisionFinder,
    budget: u64,
    shards: usize,
    count: u128,
) -> (LevelOutcome, u128) {
    let shards = shards.max(1).min(count.max(1) as usize);
    // contiguous index ranges; the merge below is shard-count invariant
    let per = count / shards as u128;
    let extra = count % shards as u128;
    let ranges: Vec<(u128, u128)> = (0..shards as u128)
        .map(|s| {
            let lo = s * per + s.min(extra);
            let hi = lo + per + u128::from(s < extra);
            (lo, hi)
        })
        .collect();
    let results: Vec<ShardResult> = ranges
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut res = ShardResult { absent: None, budget: false, examined: 0 };
            for i in lo..hi {
                let w = weighting_from_index(f, q, i);
                res.examined += 1;
                match finder.find(&w, h, t, budget) {
                    SearchOutcome::Found(_) => {}
                    SearchOutcome::Absent => {
                        res.absent = Some(i);
                        break;
                    }
                    SearchOutcome::Budget => res.budget = true,
                }
            }
            res
        })
        .collect();
    let examined = results.iter().map(|r| r.examined).sum();
    // first definite refutation wins; budgets only matter on an all-pass level
    if let Some(i) = results.iter().filter_map(|r| r.absent).min() {
        (LevelOutcome::Fail(i), examined)
    } else if results.iter().any(|r| r.budget) {
        (LevelOutcome::Budget, examined)
    } else {
        (LevelOutcome::AllPass, examined)
    }
}

/// Scans f upward; the first level where every weighting of K_f embeds the
/// target is the exact value, by restriction monotonicity. The scan starts
/// one level below the floor so the exactness witness is actually refuted.
pub fn compute_sq(h: &PatternGraph, q: u32, opts: &SqOptions) -> Result<SqResult, OracleError> {
    let n = h.n();
    let m = h.edges().len();
    if let Some(t) = opts.t {
        if (t + 1) % q as usize != 0 {
            return Err(OracleError::QNotDividingTPlusOne { q, t_plus_one: t + 1 });
        }
    }
    let floor = match opts.t {
        Some(t) => bound_lower(n, m, q).max(n + t * m),
        None => bound_lower(n, m, q),
    };
    let start = opts.fmin.max(floor.saturating_sub(1)).max(1);
    let fmax = if opts.fmax == 0 { floor + 16 } else { opts.fmax };
    let shards = if opts.shards == 0 { rayon::current_num_threads() } else { opts.shards };

    let clock = Instant::now();
    let mut stats = SqStats { examined: 0, shards, levels: 0, wall_ms: 0 };
    let mut witness: Option<(usize, u128)> = None;
    let mut f = start;
    let result = loop {
        let Some(count) = weighting_count(f, q) else {
            return Err(OracleError::CountOverflow { f });
        };
        if count > opts.guard {
            if f == start {
                return Err(OracleError::GuardAtFirstLevel { f, count, guard: opts.guard });
            }
            break (SqKind::LowerBoundOnly, f);
        }
        let (outcome, examined) =
            scan_level(h, q, f, opts.t, opts.finder, opts.budget, shards, count);
        stats.examined += examined;
        stats.levels += 1;
        match outcome {
            LevelOutcome::Fail(i) => {
                witness = Some((f, i));
                if f >= fmax {
                    break (SqKind::LowerBoundOnly, f + 1);
                }
                f += 1;
            }
            LevelOutcome::AllPass => {
                // minimality: either the previous level was refuted here, or
                // this level sits at the known floor
                let kind = match witness {
                    Some((wf, _)) if wf + 1 == f => SqKind::Exact,
                    _ if f <= floor => SqKind::Exact,
                    _ => SqKind::Inconclusive,
                };
                break (kind, f);
            }
            LevelOutcome::Budget => break (SqKind::Inconclusive, f),
        }
    };
    stats.wall_ms = clock.elapsed().as_millis();
    Ok(SqResult { kind: result.0, value: result.1, witness, stats })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub trials: u64,
    pub failures: u64,
    pub budget: u64,
    /// seeds whose weighting had no embedding; trial i uses seed + i
    pub failing_seeds: Vec<u64>,
}

/// Runs the finder on `trials` random weightings of K_f; counts refutations
/// and budget exhaustions (both are failures for upper-bound validation).
pub fn sample_at(
    h: &PatternGraph,
    q: u32,
    t: Option<usize>,
    f: usize,
    trials: u64,
    seed: u64,
    budget: u64,
) -> SampleReport {
    let outcomes: Vec<(u64, SearchOutcome)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let w = random_weighting(f, q, s);
            (s, default_finder().find(&w, h, t, budget))
        })
        .collect();
    let mut report =
        SampleReport { trials, failures: 0, budget: 0, failing_seeds: Vec::new() };
    for (s, o) in outcomes {
        match o {
            SearchOutcome::Found(_) => {}
            SearchOutcome::Absent => {
                report.failures += 1;
                report.failing_seeds.push(s);
            }
            SearchOutcome::Budget => {
                report.budget += 1;
                report.failing_seeds.push(s);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finder::{find_subdivision, naive_finder};
    use crate::weighting::{all_ones, Weighting};

    #[test]
    fn bound_formulas() {
        assert_eq!(bound_lower(2, 1, 2), 3);
        assert_eq!(bound_lower(3, 3, 2), 6);
        assert_eq!(bound_lower(5, 0, 7), 5);
        assert_eq!(bound_tree(2, 3), 4);
        assert_eq!(bound_tree(3, 2), 5);
        assert_eq!(bound_tree(1, 9), 1);
        assert_eq!(bound_general(2, 1, 3), 20);
        assert_eq!(bound_general(3, 2, 2), 19);
        assert_eq!(bound_general(1, 0, 2), 9);
        assert_eq!(bound_prime(2, 1, 3), Ok(4));
        assert_eq!(bound_prime(3, 2, 3), Ok(7));
        assert_eq!(bound_prime(3, 2, 5), Ok(11));
        assert_eq!(bound_prime(2, 1, 4), Err(OracleError::NotPrime { p: 4 }));
        assert_eq!(bound_prime(2, 1, 2), Err(OracleError::NotPrime { p: 2 }));
    }

    #[test]
    fn compute_sq_single_edge() {
        let p2 = PatternGraph::path(2);
        let r = compute_sq(&p2, 2, &SqOptions::default()).unwrap();
        assert_eq!(r.kind, SqKind::Exact);
        assert_eq!(r.value, 3);
        // first refuted index at f = 2 is the all-ones K_2
        assert_eq!(r.witness, Some((2, 1)));

        let r = compute_sq(&p2, 3, &SqOptions::default()).unwrap();
        assert_eq!((r.kind, r.value), (SqKind::Exact, 4));
        let (wf, wi) = r.witness.unwrap();
        assert_eq!(wf, 3);
        assert!(!find_subdivision(&weighting_from_index(3, 3, wi), &p2, 1 << 20).is_found());
    }

    #[test]
    fn compute_sq_t_mode() {
        let p2 = PatternGraph::path(2);
        let r = compute_sq(&p2, 2, &SqOptions { t: Some(1), ..SqOptions::default() }).unwrap();
        assert_eq!((r.kind, r.value), (SqKind::Exact, 3));

        // q must divide t + 1
        assert_eq!(
            compute_sq(&p2, 3, &SqOptions { t: Some(1), ..SqOptions::default() }),
            Err(OracleError::QNotDividingTPlusOne { q: 3, t_plus_one: 2 })
        );
    }

    #[test]
    fn compute_sq_shard_invariance() {
        let p3 = PatternGraph::path(3);
        let base = compute_sq(&p3, 2, &SqOptions { shards: 1, ..SqOptions::default() }).unwrap();
        assert_eq!((base.kind, base.value), (SqKind::Exact, 5));
        for shards in [2usize, 8] {
            let r = compute_sq(&p3, 2, &SqOptions { shards, ..SqOptions::default() }).unwrap();
            assert_eq!(r.kind, base.kind);
            assert_eq!(r.value, base.value);
            assert_eq!(r.witness, base.witness);
        }
    }

    #[test]
    fn compute_sq_guard() {
        let p2 = PatternGraph::path(2);
        let err = compute_sq(&p2, 4, &SqOptions { guard: 10, ..SqOptions::default() });
        assert!(matches!(err, Err(OracleError::GuardAtFirstLevel { .. })));

        // guard admits the refuted level but not the next one
        let r = compute_sq(&p2, 4, &SqOptions { guard: 4096, ..SqOptions::default() }).unwrap();
        assert_eq!((r.kind, r.value), (SqKind::LowerBoundOnly, 5));
        assert!(r.witness.is_some());
    }

    #[test]
    fn monotonicity_in_f() {
        // restriction to the first f vertices preserves embeddings, so an
        // all-pass level stays all-pass one level up (exhaustive, q = 2)
        let h = PatternGraph::path(2);
        for f in 3..=4usize {
            let count = weighting_count(f, 2).unwrap();
            for i in 0..count {
                let w = weighting_from_index(f, 2, i);
                assert!(find_subdivision(&w, &h, 1 << 20).is_found(), "f={f} i={i}");
            }
        }
    }

    #[test]
    fn exact_witness_refuted_by_naive() {
        let p2 = PatternGraph::path(2);
        let r = compute_sq(&p2, 3, &SqOptions::default()).unwrap();
        let (wf, wi) = r.witness.unwrap();
        let w = weighting_from_index(wf, 3, wi);
        assert_eq!(naive_finder().find(&w, &p2, None, u64::MAX), SearchOutcome::Absent);
    }

    #[test]
    fn sample_at_examples() {
        let p2 = PatternGraph::path(2);
        let report = sample_at(&p2, 2, None, 2, 200, 7, DEFAULT_BUDGET);
        // single edge is odd about half the time
        assert!(report.failures > 50 && report.failures < 150, "{}", report.failures);
        assert_eq!(report.failing_seeds.len() as u64, report.failures + report.budget);

        let k3 = PatternGraph::complete(3);
        let report = sample_at(&k3, 2, None, 6, 500, 11, DEFAULT_BUDGET);
        assert_eq!(report.failures, 0);
        assert_eq!(report.budget, 0);
    }

    #[test]
    fn contains_delegates() {
        let w: Weighting = all_ones(3, 2);
        let h = PatternGraph::path(2);
        assert!(contains(&w, &h, None, DEFAULT_BUDGET).is_found());
    }
}
