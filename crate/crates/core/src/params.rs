//! Curve parameters `(n, p, r, q = p^r)` for `y^q = f(x)` and the
//! classification of which sufficiency conditions they satisfy.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{checked_pow_bounded, is_prime};

/// Largest supported value of `q` and of `n`. Keeps `n * i` below 2^80 so
/// every floor quotient fits comfortably in 128-bit arithmetic.
pub const MAX_MODULUS: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("p = {p} divides the degree n = {n}")]
    DividesDegree { n: u64, p: u64 },
    #[error("degree n = {0} is below 4")]
    DegreeTooSmall(i64),
    #[error("exponent r = {0} is below 1")]
    ExponentTooSmall(i64),
    #[error("{what} exceeds the supported bound 2^40")]
    Overflow { what: &'static str },
}

/// A validated parameter tuple. Construct with [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveParams {
    n: u64,
    p: u64,
    r: u32,
    q: u64,
}

impl CurveParams {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q = 2`, the hyperelliptic case; representable but never certified.
    pub fn is_hyperelliptic(&self) -> bool {
        self.q == 2
    }

    /// The same curve degree and prime at level `p^level`.
    pub fn at_level(&self, level: u32) -> Result<CurveParams, ParamError> {
        validate(self.n as i64, self.p as i64, i64::from(level))
    }
}

/// Checks raw integers and builds [`CurveParams`].
pub fn validate(n: i64, p: i64, r: i64) -> Result<CurveParams, ParamError> {
    if r < 1 {
        return Err(ParamError::ExponentTooSmall(r));
    }
    if n < 4 {
        return Err(ParamError::DegreeTooSmall(n));
    }
    let n = n as u64;
    if n > MAX_MODULUS {
        return Err(ParamError::Overflow { what: "degree n" });
    }
    if p < 2 {
        return Err(ParamError::NotPrime(p));
    }
    let p_u = p as u64;
    if p_u > MAX_MODULUS || r > i64::from(u32::MAX) {
        return Err(ParamError::Overflow { what: "q = p^r" });
    }
    if !is_prime(p_u) {
        return Err(ParamError::NotPrime(p));
    }
    let r = r as u32;
    let q = checked_pow_bounded(p_u, r, MAX_MODULUS).ok_or(ParamError::Overflow { what: "q = p^r" })?;
    if n % p_u == 0 {
        return Err(ParamError::DividesDegree { n, p: p_u });
    }
    Ok(CurveParams { n, p: p_u, r, q })
}

/// Which clause of the prime-power coprimality proposition applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Prop31Case {
    /// `q < n < 2q`.
    BetweenQAndTwoQ,
    /// `p` odd and `p` does not divide `n - 1`.
    OddPrimeCoprimeToNMinusOne,
    /// `p` odd, `p | n - 1`, and `n < 2q`.
    OddPrimeBelowTwoQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionStatus {
    pub holds_a: bool,
    pub holds_b: bool,
    pub holds_c: bool,
    pub n_gt_q: bool,
    pub prop31: Option<Prop31Case>,
    pub prop32_applicable: bool,
    pub theorem_main_applicable: bool,
    /// `p` odd and `p` does not divide `n(n-1)`.
    pub product_applicable: bool,
}

impl ConditionStatus {
    pub fn prop31_applicable(&self) -> bool {
        self.prop31.is_some()
    }
}

/// Literal evaluation of the congruences and inequalities.
pub fn classify(params: &CurveParams) -> ConditionStatus {
    let CurveParams { n, p, q, .. } = *params;
    let odd = p != 2;
    let n_gt_q = n > q;
    let below_two_q = u128::from(n) < 2 * u128::from(q);
    let n_mod_q_is_one = n % q == 1;
    let n_mod_2q_is_q_minus_one = u128::from(n) % (2 * u128::from(q)) == u128::from(q - 1);

    let holds_a = n_gt_q && below_two_q;
    let holds_b = odd && !n_mod_q_is_one;
    let holds_c = p == 2 && !n_mod_q_is_one && !n_mod_2q_is_q_minus_one;

    let p_divides_n_minus_one = (n - 1) % p == 0;
    let prop31 = if holds_a {
        Some(Prop31Case::BetweenQAndTwoQ)
    } else if odd && !p_divides_n_minus_one {
        Some(Prop31Case::OddPrimeCoprimeToNMinusOne)
    } else if odd && below_two_q {
        Some(Prop31Case::OddPrimeBelowTwoQ)
    } else {
        None
    };

    let prop32_applicable = !n_mod_q_is_one && (odd || (q > 2 && !n_mod_2q_is_q_minus_one));

    ConditionStatus {
        holds_a,
        holds_b,
        holds_c,
        n_gt_q,
        prop31,
        prop32_applicable,
        theorem_main_applicable: n_gt_q && (holds_a || holds_b || holds_c),
        product_applicable: odd && !p_divides_n_minus_one,
    }
}
