//! Acceptance gate: one pass/fail line per criterion (run with
//! `cargo test --test acceptance -- --nocapture` to see the lines).

use divsub::connector::{build_connector, reachable_weights, switch_path};
use divsub::finder::{find_subdivision, find_t_subdivision, naive_finder, SearchOutcome};
use divsub::hamiltonian::{exhaustive_check, figure_k4, find_even_split, SplitMethod};
use divsub::oracle::{
    bound_general, bound_lower, bound_prime, compute_sq, sample_at, SqKind, SqOptions, SqResult,
};
use divsub::pattern::PatternGraph;
use divsub::restricted::{
    check_cycle_weights, generate_b_restricted, is_b_restricted, local_subgroup, zero_weight_path,
    CYCLE_CHECK_CAP,
};
use divsub::weighting::{all_ones, random_weighting, star_witness, weighting_from_index, Weighting};
use divsub::zq::{cauchy_davenport_holds, Subgroup, WeightSet};
use std::sync::OnceLock;

fn criterion<F>(label: &str, body: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE criterion {label}: PASS"),
        Err(e) => {
            println!("ACCEPTANCE criterion {label}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

struct SqCase {
    name: &'static str,
    pattern: PatternGraph,
    q: u32,
    t: Option<usize>,
    expected: usize,
    result: SqResult,
}

fn sq_cases() -> &'static Vec<SqCase> {
    static CASES: OnceLock<Vec<SqCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let specs: Vec<(&str, PatternGraph, u32, Option<usize>, usize)> = vec![
            ("s_2(P_2)", PatternGraph::path(2), 2, None, 3),
            ("s_3(P_2)", PatternGraph::path(2), 3, None, 4),
            ("s_4(P_2)", PatternGraph::path(2), 4, None, 5),
            ("s_2(P_3)", PatternGraph::path(3), 2, None, 5),
            ("s_2(K_3)", PatternGraph::complete(3), 2, None, 6),
            ("s_2(P_2,1)", PatternGraph::path(2), 2, Some(1), 3),
            ("s_2(P_3,1)", PatternGraph::path(3), 2, Some(1), 5),
            ("s_2(C_3,1)", PatternGraph::cycle(3), 2, Some(1), 6),
        ];
        specs
            .into_iter()
            .map(|(name, pattern, q, t, expected)| {
                let opts = SqOptions { t, ..SqOptions::default() };
                let result = compute_sq(&pattern, q, &opts)
                    .unwrap_or_else(|e| panic!("{name}: {e}"));
                SqCase { name, pattern, q, t, expected, result }
            })
            .collect()
    })
}

#[test]
fn criterion_1_exact_values() {
    criterion("1 (exact values by exhaustive enumeration)", || {
        for case in sq_cases() {
            assert_eq!(case.result.kind, SqKind::Exact, "{}", case.name);
            assert_eq!(case.result.value, case.expected, "{}", case.name);
            let (wf, _) = case.result.witness.expect(case.name);
            assert_eq!(wf, case.expected - 1, "{}", case.name);
        }
    });
}

#[test]
fn criterion_2_lower_bound_witnesses() {
    criterion("2 (closed-form witnesses are refuted)", || {
        let pairs = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for q in [2u32, 3, 4] {
            for n in 2..=4usize {
                let avail: Vec<(usize, usize)> =
                    pairs.iter().copied().filter(|&(_, v)| v < n).collect();
                for mask in 1u32..(1 << avail.len()) {
                    let m = mask.count_ones() as usize;
                    if m > 4 {
                        continue;
                    }
                    let edges: Vec<(usize, usize)> = avail
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    let h = PatternGraph::new(n, edges).unwrap();
                    let f = bound_lower(n, m, q) - 1;
                    let w = all_ones(f, q);
                    assert_eq!(
                        find_subdivision(&w, &h, u64::MAX),
                        SearchOutcome::Absent,
                        "n={n} m={m} q={q}"
                    );
                }
            }
        }
        // star hosts refuse exact-length subdivisions of a single edge
        for q in [3u32, 5] {
            let t = q as usize - 1;
            let k = (q as usize - 1) / 2;
            let f = 2 + t + k - 1;
            let w = star_witness(f, q, k).unwrap();
            assert_eq!(
                find_t_subdivision(&w, &PatternGraph::path(2), t, u64::MAX),
                SearchOutcome::Absent,
                "q={q}"
            );
        }
    });
}

#[test]
fn criterion_3_hamiltonian_theorem() {
    criterion("3 (even-split cycles at order six; order-four tightness)", || {
        assert_eq!(exhaustive_check(3, 8, 1 << 24).unwrap(), None);
        let k4 = figure_k4();
        assert_eq!(find_even_split(&k4, SplitMethod::Search).unwrap(), None);
    });
}

#[test]
fn criterion_4_lemma_suites() {
    criterion("4 (restriction and connector lemma properties)", || {
        // (a) stripping a vertex leaves a weighting restricted to its local
        // subgroup; (b) all short cycle weights stay inside that subgroup
        let mut corpus = 0u32;
        for q in 2..=8u32 {
            for f in 4..=7usize {
                for seed in 0..36u64 {
                    let w = random_weighting(f, q, seed);
                    for v in 0..f {
                        let d = local_subgroup(&w, v).unwrap();
                        let rest: Vec<usize> = (0..f).filter(|&x| x != v).collect();
                        assert_eq!(is_b_restricted(&w.induced(&rest), d).unwrap(), Ok(()));
                    }
                    let (stripped, d) = generate_b_restricted(f - 1, q, seed);
                    assert_eq!(
                        check_cycle_weights(&stripped, d, CYCLE_CHECK_CAP).unwrap(),
                        Ok(())
                    );
                    corpus += 1;
                }
            }
        }
        assert!(corpus >= 1000, "corpus too small: {corpus}");

        // (c) routed paths through an admissible connector weigh exactly 0
        let mut produced = 0;
        for q in [2u32, 4, 6, 8] {
            for seed in 0..250u64 {
                let (w, d) = generate_b_restricted(9, q, seed);
                if d == q {
                    continue;
                }
                let Some(conn) = build_connector(&w, 3, 3, &[0, 1], 500_000).found() else {
                    continue;
                };
                let deltas = conn.delta_set(&w).unwrap();
                let b = Subgroup::new(d, q).unwrap();
                if !b.members().iter().all(|&x| deltas.contains(x)) {
                    continue;
                }
                if !b.contains(w.edge_weight(0, 1)) {
                    continue;
                }
                let path = zero_weight_path(&w, &conn, 0, 1, d).unwrap();
                assert_eq!(w.path_weight(&path), 0, "q={q} seed={seed}");
                produced += 1;
            }
        }
        assert!(produced >= 30, "zero-path corpus too small: {produced}");

        // (d) switching realizes every delta in the connector's delta set
        let mut switched = 0;
        for q in 3..=8u32 {
            for seed in 0..60u64 {
                let w = random_weighting(9, q, seed);
                let Some(conn) = build_connector(&w, 3, 2, &[], 500_000).found() else {
                    continue;
                };
                let base_weight = w.path_weight(&conn.base_path());
                let deltas = conn.delta_set(&w).unwrap();
                for delta in 0..q {
                    if deltas.contains(delta) {
                        let p = switch_path(&conn, &w, delta).unwrap();
                        assert_eq!(w.path_weight(&p), (base_weight + delta) % q);
                        switched += 1;
                    } else {
                        assert!(switch_path(&conn, &w, delta).is_err());
                    }
                }
            }
        }
        assert!(switched >= 100, "switch corpus too small: {switched}");

        // (e) four-clique chains reach min{2s+1, p} weights at prime order,
        // and the sumset inequality behind it holds exhaustively for p <= 7
        let mut chains = 0;
        for p in [5u32, 7, 11] {
            for seed in 0..80u64 {
                let w = random_weighting(8, p, seed);
                let Some(conn) = build_connector(&w, 4, 2, &[], 2_000_000).found() else {
                    continue;
                };
                let reach = reachable_weights(&conn, &w);
                assert!(
                    reach.len() >= (2 * conn.s() + 1).min(p as usize),
                    "p={p} seed={seed}"
                );
                chains += 1;
            }
        }
        assert!(chains >= 40, "chain corpus too small: {chains}");
        for p in [2u32, 3, 5, 7] {
            let subsets = 1u32 << p;
            for am in 1..subsets {
                for bm in 1..subsets {
                    let a = WeightSet::new(p, (0..p).filter(|&x| am >> x & 1 == 1));
                    let b = WeightSet::new(p, (0..p).filter(|&x| bm >> x & 1 == 1));
                    assert!(cauchy_davenport_holds(&a, &b, p).unwrap());
                }
            }
        }
    });
}

#[test]
fn criterion_5_upper_bound_sampling() {
    criterion("5 (sampled success at the proven bounds)", || {
        let trials = 10_000u64;
        let cases = [
            (PatternGraph::path(2), 3u32, bound_prime(2, 1, 3).unwrap()),
            (PatternGraph::path(3), 3, bound_prime(3, 2, 3).unwrap()),
            (PatternGraph::complete(3), 3, bound_prime(3, 3, 3).unwrap()),
            (PatternGraph::path(2), 4, bound_general(2, 1, 4)),
        ];
        for (i, (h, q, f)) in cases.into_iter().enumerate() {
            let report = sample_at(&h, q, None, f, trials, 1000 + i as u64, u64::MAX);
            assert_eq!(report.failures, 0, "case {i}: seeds {:?}", report.failing_seeds);
            assert_eq!(report.budget, 0, "case {i}");
        }
    });
}

#[test]
fn criterion_6_oracle_soundness() {
    criterion("6 (independent re-verification of oracle output)", || {
        let naive = naive_finder();
        for case in sq_cases() {
            let (wf, wi) = case.result.witness.expect(case.name);
            let w: Weighting = weighting_from_index(wf, case.q, wi);
            assert_eq!(
                naive.find(&w, &case.pattern, case.t, u64::MAX),
                SearchOutcome::Absent,
                "{} witness", case.name
            );
            for i in 0..100u64 {
                let w = random_weighting(case.result.value, case.q, 0xACC0 + i);
                assert!(
                    naive.find(&w, &case.pattern, case.t, u64::MAX).is_found(),
                    "{} resample {i}", case.name
                );
            }
        }
    });
}
