//! The CM type of `Q(zeta_q)` acting on the new part of the jacobian.
//!
//! The embedding `sigma_i` sends `zeta_q` to `zeta_q^{-i}`; keys are the
//! residues `i` in `[1, q-1]` prime to `p`, and complex conjugation pairs
//! `i` with `q - i`. The multiplicity of `sigma_i` is `floor(n i / q)` and
//! the `E`-dimension of `H_1` is `d = n - 1`, so the conjugate multiplicity
//! `m_i = d - n_i` is never stored.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, phi_prime_power};
use crate::params::CurveParams;
use crate::witness::floor_mult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("n = {n} does not exceed q = {q}")]
    DegreeNotAboveQ { n: u64, q: u64 },
    #[error("q = 2 (hyperelliptic) is excluded")]
    HyperellipticExcluded,
    #[error("(n - 1)(q - 1) is odd")]
    ParityImpossible,
    #[error("CM type invariant failed: {0}")]
    InvariantViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CMType {
    q: u64,
    d: u64,
    phi_q: u64,
    entries: BTreeMap<u64, u64>,
}

impl CMType {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn phi_q(&self) -> u64 {
        self.phi_q
    }

    /// Residue `i` to multiplicity `n_{sigma_i}`.
    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, i: u64) -> Option<u64> {
        self.entries.get(&i).copied()
    }

    /// `m_{sigma_i} = d - n_{sigma_i}`, the multiplicity of the conjugate.
    pub fn conjugate_multiplicity(&self, i: u64) -> Option<u64> {
        self.multiplicity(i).map(|n| self.d - n)
    }

    fn check_invariants(&self) -> Result<(), CmError> {
        let fail = |s: String| Err(CmError::InvariantViolated(s));
        if self.entries.len() as u64 != self.phi_q {
            return fail(format!("{} keys, expected phi(q) = {}", self.entries.len(), self.phi_q));
        }
        let mut sum: u128 = 0;
        for (&i, &n_i) in &self.entries {
            match self.entries.get(&(self.q - i)) {
                Some(&n_bar) if n_i + n_bar == self.d => {}
                _ => return fail(format!("n_{i} + n_{} != d", self.q - i)),
            }
            if n_i == 0 {
                return fail(format!("n_{i} = 0"));
            }
            sum += u128::from(n_i);
        }
        let mut values: Vec<u64> = self.entries.values().copied().collect();
        values.sort_unstable();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return fail("multiplicities not distinct".into());
        }
        if sum * 2 != u128::from(self.d) * u128::from(self.phi_q) {
            return fail(format!("sum of multiplicities {sum} != d phi(q) / 2"));
        }
        Ok(())
    }
}

/// Builds the multiplicity system for `n > q > 2`.
pub fn multiplicities(params: &CurveParams) -> Result<CMType, CmError> {
    let (n, p, q) = (params.n(), params.p(), params.q());
    if params.is_hyperelliptic() {
        return Err(CmError::HyperellipticExcluded);
    }
    if n <= q {
        return Err(CmError::DegreeNotAboveQ { n, q });
    }
    let entries = (1..q)
        .filter(|i| i % p != 0)
        .map(|i| floor_mult(n, i, q).map(|f| (i, f)))
        .collect::<Result<BTreeMap<_, _>, _>>()
        .map_err(|e| CmError::InvariantViolated(e.to_string()))?;
    let cm = CMType { q, d: n - 1, phi_q: phi_prime_power(p, params.r()), entries };
    cm.check_invariants()?;
    Ok(cm)
}

/// `dim J(C_{f,q}) = (n - 1)(q - 1) / 2`.
pub fn jacobian_dim(params: &CurveParams) -> Result<u128, CmError> {
    let prod = u128::from(params.n() - 1) * u128::from(params.q() - 1);
    if prod % 2 != 0 {
        return Err(CmError::ParityImpossible);
    }
    Ok(prod / 2)
}

/// `dim J^(f,q) = (n - 1) phi(q) / 2`.
pub fn new_part_dim(params: &CurveParams) -> Result<u128, CmError> {
    if params.is_hyperelliptic() {
        return Err(CmError::HyperellipticExcluded);
    }
    Ok(u128::from(params.n() - 1) * u128::from(phi_prime_power(params.p(), params.r())) / 2)
}

/// Whether all multiplicities are distinct and positive and some `tau` has
/// `gcd(n_tau, d) = 1`; returns the smallest such `tau`.
pub fn hdgss_hypotheses(cm: &CMType) -> (bool, Option<u64>) {
    let mut values: Vec<u64> = cm.entries.values().copied().collect();
    values.sort_unstable();
    let distinct_positive = values.first().is_some_and(|&v| v > 0) && values.windows(2).all(|w| w[0] != w[1]);
    let tau = cm
        .entries
        .iter()
        .find(|(_, &n_i)| gcd(n_i, cm.d) == 1)
        .map(|(&i, _)| i);
    (distinct_positive && tau.is_some(), tau)
}
