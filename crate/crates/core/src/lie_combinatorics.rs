//! Combinatorial hypothesis checkers for two-eigenvalue operators.
//!
//! These are curve independent: an [`EigenSystem`] is a list of labelled
//! multiplicity pairs `(n, m)` with `n + m = d`, one per embedding.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd;
use crate::cm_type::CMType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("pair {label}: n + m = {sum} differs from d = {d}")]
    SumMismatch { label: String, sum: u64, d: u64 },
    #[error("pair {0} has a zero multiplicity")]
    NonPositive(String),
    #[error("pair {0} has n = m")]
    SelfConflict(String),
    #[error("multiplicity n = {0} occurs more than once")]
    DuplicateMultiplicity(u64),
    #[error("maximal subset has {pi} of {sigma} labels, below half")]
    BoundViolated { pi: usize, sigma: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenPair {
    pub label: String,
    pub n_val: u64,
    pub m_val: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenSystem {
    d: u64,
    pairs: Vec<EigenPair>,
}

impl EigenSystem {
    /// Checks `n + m = d` and positivity for every pair.
    pub fn new(d: u64, pairs: Vec<EigenPair>) -> Result<EigenSystem, LieError> {
        for pr in &pairs {
            let sum = pr.n_val.saturating_add(pr.m_val);
            if sum != d {
                return Err(LieError::SumMismatch { label: pr.label.clone(), sum, d });
            }
            if pr.n_val == 0 || pr.m_val == 0 {
                return Err(LieError::NonPositive(pr.label.clone()));
            }
        }
        Ok(EigenSystem { d, pairs })
    }

    /// Builds a system from `(label, n)` with `m = d - n`.
    pub fn from_n_values<L: ToString>(d: u64, values: impl IntoIterator<Item = (L, u64)>) -> Result<EigenSystem, LieError> {
        let pairs = values
            .into_iter()
            .map(|(l, n)| EigenPair { label: l.to_string(), n_val: n, m_val: d.saturating_sub(n) })
            .collect();
        EigenSystem::new(d, pairs)
    }

    /// The system `{i: (n_i, d - n_i)}` of a CM type, labelled by residue.
    pub fn from_cm_type(cm: &CMType) -> Result<EigenSystem, LieError> {
        EigenSystem::from_n_values(cm.d(), cm.entries().iter().map(|(&i, &n)| (i, n)))
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn pairs(&self) -> &[EigenPair] {
        &self.pairs
    }
}

/// Exactly two eigenvalues, with coprime multiplicities.
pub fn serre_check(multiplicities: &[u64]) -> bool {
    matches!(multiplicities, [a, b] if gcd(*a, *b) == 1)
}

/// `a_i` pairwise distinct, in `[1, n-1]`, and `a_i != n - a_j` for all
/// `i, j` including `i = j`.
pub fn sll_check(a: &[u64], n: u64) -> bool {
    if a.iter().any(|&x| x < 1 || x >= n) {
        return false;
    }
    for (idx, &x) in a.iter().enumerate() {
        for (jdx, &y) in a.iter().enumerate() {
            if idx != jdx && x == y {
                return false;
            }
            if x + y == n {
                return false;
            }
        }
    }
    true
}

/// True when `n_s != m_k` for every `s, k` in `members` (indices into
/// `system.pairs()`).
pub fn is_compatible(system: &EigenSystem, members: &[usize]) -> bool {
    members.iter().all(|&s| members.iter().all(|&k| system.pairs[s].n_val != system.pairs[k].m_val))
}

/// A maximal label subset with `n_s != m_k` for all members.
///
/// Greedy in the system's pair order, repeated to a fixed point. Requires
/// distinct `n` values and no pair with `n = m`; under those conditions
/// every maximal subset holds at least half the labels, which is re-checked.
pub fn greedy_pi(system: &EigenSystem) -> Result<Vec<String>, LieError> {
    let mut seen = HashSet::new();
    for pr in &system.pairs {
        if pr.n_val == pr.m_val {
            return Err(LieError::SelfConflict(pr.label.clone()));
        }
        if !seen.insert(pr.n_val) {
            return Err(LieError::DuplicateMultiplicity(pr.n_val));
        }
    }

    let order: Vec<usize> = (0..system.pairs.len()).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut n_used: HashSet<u64> = HashSet::new();
    let mut m_used: HashSet<u64> = HashSet::new();
    loop {
        let mut grew = false;
        for &idx in &order {
            if chosen.contains(&idx) {
                continue;
            }
            let pr = &system.pairs[idx];
            if !m_used.contains(&pr.n_val) && !n_used.contains(&pr.m_val) {
                chosen.push(idx);
                n_used.insert(pr.n_val);
                m_used.insert(pr.m_val);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    // quadratic post-check
    assert!(is_compatible(system, &chosen), "greedy subset violates n != m");
    if 2 * chosen.len() < system.pairs.len() {
        return Err(LieError::BoundViolated { pi: chosen.len(), sigma: system.pairs.len() });
    }
    chosen.sort_unstable();
    Ok(chosen.into_iter().map(|i| system.pairs[i].label.clone()).collect())
}

/// Distinct positive `n` values, positive `m` values, and some pair with
/// `gcd(n, m) = 1`.
pub fn slt_hypotheses(system: &EigenSystem) -> bool {
    let mut seen = HashSet::new();
    let distinct = system.pairs.iter().all(|p| seen.insert(p.n_val));
    let positive = system.pairs.iter().all(|p| p.n_val > 0 && p.m_val > 0);
    let coprime = system.pairs.iter().any(|p| gcd(p.n_val, p.m_val) == 1);
    distinct && positive && coprime
}
