//! Arithmetic in the cyclic group ℤq: residues, subgroups, sumsets, the
//! Cauchy–Davenport check, and subset-sum selection over residues.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZqError {
    #[error("group order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{d} does not divide {q}")]
    NotDivisor { d: u32, q: u32 },
}

/// Reduces `x` into the canonical range `[0, q)`.
pub fn normalize(x: i64, q: u32) -> u32 {
    debug_assert!(q >= 2);
    x.rem_euclid(q as i64) as u32
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A subgroup of ℤq, stored as its canonical divisor generator `d`.
///
/// The member set is dℤq = {0, d, 2d, ...}; `d = q` is the trivial subgroup
/// {0} and `d = 1` is all of ℤq.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subgroup {
    q: u32,
    d: u32,
}

impl Subgroup {
    pub fn new(d: u32, q: u32) -> Result<Self, ZqError> {
        if d == 0 || !q.is_multiple_of(d) {
            return Err(ZqError::NotDivisor { d, q });
        }
        Ok(Subgroup { q, d })
    }

    pub fn trivial(q: u32) -> Self {
        Subgroup { q, d: q }
    }

    pub fn full(q: u32) -> Self {
        Subgroup { q, d: 1 }
    }

    pub fn divisor(&self) -> u32 {
        self.d
    }

    pub fn group_order(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> u32 {
        self.q / self.d
    }

    pub fn contains(&self, x: u32) -> bool {
        (x % self.q).is_multiple_of(self.d)
    }

    pub fn members(&self) -> Vec<u32> {
        (0..self.order()).map(|k| k * self.d).collect()
    }
}

/// The subgroup of ℤq generated by `gens`; the empty list generates {0}.
pub fn generated_subgroup(gens: &[u32], q: u32) -> Subgroup {
    let d = gens.iter().fold(q, |acc, &g| gcd(acc, g % q));
    Subgroup { q, d }
}

/// A set of residues in ℤq.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    q: u32,
    members: BTreeSet<u32>,
}

impl WeightSet {
    pub fn new(q: u32, members: impl IntoIterator<Item = u32>) -> Self {
        let members = members.into_iter().map(|x| x % q).collect();
        WeightSet { q, members }
    }

    pub fn empty(q: u32) -> Self {
        WeightSet {
            q,
            members: BTreeSet::new(),
        }
    }

    pub fn singleton(q: u32, x: u32) -> Self {
        Self::new(q, [x])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(&(x % self.q))
    }

    pub fn insert(&mut self, x: u32) {
        self.members.insert(x % self.q);
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &BTreeSet<u32> {
        &self.members
    }
}

/// Sumset {a + b mod q : a ∈ A, b ∈ B}. Errors on mismatched group orders.
pub fn sumset(a: &WeightSet, b: &WeightSet) -> Result<WeightSet, ZqError> {
    if a.q != b.q {
        return Err(ZqError::OrderMismatch(a.q, b.q));
    }
    let q = a.q;
    let mut out = WeightSet::empty(q);
    for x in a.iter() {
        for y in b.iter() {
            out.insert((x + y) % q);
        }
    }
    Ok(out)
}

/// Iterated sumset S_1 + S_2 + ... + S_k; the empty product is {0}.
pub fn iterated_sumset(q: u32, factors: &[WeightSet]) -> Result<WeightSet, ZqError> {
    let mut acc = WeightSet::singleton(q, 0);
    for s in factors {
        acc = sumset(&acc, s)?;
    }
    Ok(acc)
}

/// Checks |A + B| ≥ min{p, |A| + |B| − 1} over ℤp; always true when p is
/// prime, so this is a test oracle rather than a computation.
pub fn cauchy_davenport_holds(a: &WeightSet, b: &WeightSet, p: u32) -> Result<bool, ZqError> {
    if !is_prime(p) {
        return Err(ZqError::NotPrime(p));
    }
    if a.q != p || b.q != p {
        return Err(ZqError::OrderMismatch(a.q, b.q));
    }
    let s = sumset(a, b)?;
    Ok(s.len() as u32 >= (p).min((a.len() + b.len()) as u32 - 1))
}

/// Finds an index set I with Σ_{i∈I} values[i] ≡ target (mod q), or None if
/// the target is not in the iterated sumset Σ {0, values[i]}.
///
/// Among all solutions, returns the lexicographically smallest index set of
/// minimum cardinality.
pub fn subset_sum_selection(values: &[u32], target: u32, q: u32) -> Option<Vec<usize>> {
    let n = values.len();
    let target = target % q;
    const INF: u32 = u32::MAX;
    // best[i][r] = min picks from values[i..] summing to residue r
    let mut best = vec![vec![INF; q as usize]; n + 1];
    best[n][0] = 0;
    for i in (0..n).rev() {
        let v = values[i] % q;
        for r in 0..q as usize {
            let skip = best[i + 1][r];
            let prev = (r as u32 + q - v) % q;
            let take = best[i + 1][prev as usize].saturating_add(1);
            best[i][r] = skip.min(take);
        }
    }
    if best[0][target as usize] == INF {
        return None;
    }
    // Greedy reconstruction: including the earliest possible index yields the
    // lexicographically smallest set among minimum-cardinality solutions.
    let mut out = Vec::new();
    let mut r = target;
    let mut k = best[0][target as usize];
    for i in 0..n {
        if k == 0 {
            break;
        }
        let v = values[i] % q;
        let prev = (r + q - v) % q;
        if best[i + 1][prev as usize] == k - 1 {
            out.push(i);
            r = prev;
            k -= 1;
        }
    }
    debug_assert_eq!(r % q, 0);
    Some(out)
}
