//! Structural detectors over ℤ2-weightings: the forbidden alternating
//! four-cycle configuration and the global parity ordering, used as
//! property checks on hypothetical counterexample hosts.

use crate::weighting::Weighting;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClaimError {
    #[error("detector requires q = 2, got {0}")]
    NotTwoValued(u32),
}

/// Four vertices whose cycle x1 x2 x3 x4 has weights 1, 0, 1, 0 in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourConfig {
    pub vertices: [usize; 4],
}

/// Scans ordered 4-tuples for the alternating-weight cycle pattern
/// ω(x1x2)=1, ω(x2x3)=0, ω(x3x4)=1, ω(x4x1)=0.
pub fn find_four_config(w: &Weighting) -> Result<Option<FourConfig>, ClaimError> {
    if w.q() != 2 {
        return Err(ClaimError::NotTwoValued(w.q()));
    }
    let f = w.f();
    for x1 in 0..f {
        for x2 in 0..f {
            if x2 == x1 || w.edge_weight(x1, x2) != 1 {
                continue;
            }
            for x3 in 0..f {
                if x3 == x1 || x3 == x2 || w.edge_weight(x2, x3) != 0 {
                    continue;
                }
                for x4 in 0..f {
                    if x4 == x1 || x4 == x2 || x4 == x3 {
                        continue;
                    }
                    if w.edge_weight(x3, x4) == 1 && w.edge_weight(x4, x1) == 0 {
                        return Ok(Some(FourConfig { vertices: [x1, x2, x3, x4] }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// True iff every pair satisfies the parity rule of `find_parity_ordering`.
pub fn check_parity_ordering(w: &Weighting, order: &[usize]) -> bool {
    let f = w.f();
    if order.len() != f {
        return false;
    }
    for j in 1..f {
        // 1-indexed position of the larger endpoint decides the weight
        let want = ((j + 1) % 2 == 0) as u32;
        for i in 0..j {
            if w.edge_weight(order[i], order[j]) != want {
                return false;
            }
        }
    }
    true
}

/// Backtracks over vertex orderings x_1, ..., x_f in which ω(x_i x_j) = 0
/// when the larger position j is odd and 1 when j is even (1-indexed).
pub fn find_parity_ordering(w: &Weighting) -> Result<Option<Vec<usize>>, ClaimError> {
    if w.q() != 2 {
        return Err(ClaimError::NotTwoValued(w.q()));
    }
    let f = w.f();
    fn rec(w: &Weighting, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let f = w.f();
        if order.len() == f {
            return true;
        }
        let j = order.len(); // next 0-based position; 1-indexed j + 1
        let want = (j + 1).is_multiple_of(2) as u32;
        'cand: for v in 0..f {
            if used[v] {
                continue;
            }
            for &u in order.iter() {
                if w.edge_weight(u, v) != want {
                    continue 'cand;
                }
            }
            used[v] = true;
            order.push(v);
            if rec(w, order, used) {
                return true;
            }
            order.pop();
            used[v] = false;
        }
        false
    }
    let mut order = Vec::with_capacity(f);
    let mut used = vec![false; f];
    if rec(w, &mut order, &mut used) {
        debug_assert!(check_parity_ordering(w, &order));
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weighting::{all_ones, edge_index, Weighting};

    #[test]
    fn four_config_examples() {
        assert_eq!(find_four_config(&all_ones(6, 2)), Ok(None));
        assert_eq!(find_four_config(&Weighting::new(5, 2, vec![0; 10])), Ok(None));

        let mut weights = vec![0u32; 6];
        weights[edge_index(0, 1)] = 1;
        weights[edge_index(2, 3)] = 1;
        let w = Weighting::new(4, 2, weights);
        let hit = find_four_config(&w).unwrap().unwrap();
        let [x1, x2, x3, x4] = hit.vertices;
        assert_eq!(w.edge_weight(x1, x2), 1);
        assert_eq!(w.edge_weight(x2, x3), 0);
        assert_eq!(w.edge_weight(x3, x4), 1);
        assert_eq!(w.edge_weight(x4, x1), 0);

        assert_eq!(find_four_config(&all_ones(4, 3)), Err(ClaimError::NotTwoValued(3)));
    }

    fn planted_ordering(f: usize) -> Weighting {
        // identity ordering: weight of (i, j), i < j, is 1 iff position j+1 even
        let mut weights = vec![0u32; crate::weighting::edge_count(f)];
        for j in 1..f {
            for i in 0..j {
                weights[edge_index(i, j)] = ((j + 1) % 2 == 0) as u32;
            }
        }
        Weighting::new(f, 2, weights)
    }

    #[test]
    fn parity_ordering_recovered_from_plant() {
        for f in 3..=6usize {
            let w = planted_ordering(f);
            let order = find_parity_ordering(&w).unwrap().unwrap();
            assert!(check_parity_ordering(&w, &order), "f={f}");
        }
    }

    #[test]
    fn parity_ordering_absent_cases() {
        // all-ones K_4: the position-3 vertex would need all-zero back-edges
        assert_eq!(find_parity_ordering(&all_ones(4, 2)), Ok(None));
        // all-zero K_3: position 2 demands a weight-1 edge
        assert_eq!(find_parity_ordering(&Weighting::new(3, 2, vec![0; 3])), Ok(None));
    }

    #[test]
    fn parity_ordering_agrees_with_exhaustive_permutations() {
        // cross-check the backtracker against brute force over all orderings
        fn brute(w: &Weighting) -> bool {
            let f = w.f();
            let mut perm: Vec<usize> = (0..f).collect();
            fn heap(perm: &mut Vec<usize>, k: usize, w: &Weighting, hit: &mut bool) {
                if *hit {
                    return;
                }
                if k == 1 {
                    *hit |= check_parity_ordering(w, perm);
                    return;
                }
                for i in 0..k {
                    heap(perm, k - 1, w, hit);
                    if k.is_multiple_of(2) {
                        perm.swap(i, k - 1);
                    } else {
                        perm.swap(0, k - 1);
                    }
                }
            }
            let mut hit = false;
            heap(&mut perm, f, w, &mut hit);
            hit
        }
        for f in [3usize, 4] {
            let count = crate::weighting::weighting_count(f, 2).unwrap();
            for i in 0..count {
                let w = crate::weighting::weighting_from_index(f, 2, i);
                assert_eq!(
                    find_parity_ordering(&w).unwrap().is_some(),
                    brute(&w),
                    "f={f} i={i}"
                );
            }
        }
    }
}
