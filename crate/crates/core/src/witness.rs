//! Coprimality witnesses.
//!
//! A witness for `(n, p, q)` is an integer `i` with `1 <= i <= q - 1`,
//! `gcd(i, p) = 1` and `gcd(floor(n i / q), n - 1) = 1`. Two constructive
//! routes follow the case analysis for prime powers (with and without the
//! Bezout refinement); [`brute_force_witness`] is the exhaustive oracle they
//! are checked against.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::params::{CurveParams, MAX_MODULUS};

/// `n * i` may not exceed this when computing floor quotients.
pub const MAX_PRODUCT: u128 = (MAX_MODULUS as u128) * (MAX_MODULUS as u128);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("modulus q = {0} is below 2")]
    InvalidModulus(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("internal contradiction for n = {n}, q = {q}: {detail}")]
    InternalContradiction { n: u64, q: u64, detail: String },
}

/// Which construction produced a witness.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `q < n < 2q`, take `i = 1`.
    CaseA_i1,
    /// `p` odd and `q/2 < n < q`, take `i = 2`.
    HalfRange_i2,
    /// `p` odd and `n < q/2`, take `mu` or `mu + 1`.
    MuSearch,
    /// `i = d^{-1} mod q` with `d = (n mod q) - 1`.
    InverseOfD,
    /// Bezout candidate `i` with `epsilon = 0`.
    Qint_eps0,
    /// Bezout candidate `i + q'` with `epsilon = 1`.
    Qint_eps1,
    /// `p = 2`, `q | n + 1`: `i = 2^(r-1) - 1`.
    Power2Special,
    /// Smallest witness found by exhaustive scan.
    BruteForce,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::CaseA_i1 => "CaseA_i1",
            Branch::HalfRange_i2 => "HalfRange_i2",
            Branch::MuSearch => "MuSearch",
            Branch::InverseOfD => "InverseOfD",
            Branch::Qint_eps0 => "Qint_eps0",
            Branch::Qint_eps1 => "Qint_eps1",
            Branch::Power2Special => "Power2Special",
            Branch::BruteForce => "BruteForce",
        }
    }
}

/// Solution of `d' i - q' j = 1` (with `d' = d`, `q' = q` on the
/// `InverseOfD` route).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bezout {
    pub d_prime: u64,
    pub q_prime: u64,
    /// Bezout solution `i` before any `q'` shift.
    pub i: u64,
    pub j: u64,
}

/// `k = floor(n/q)`, `c = n - kq`, `d = c - 1`, `t = gcd(d, q)`,
/// `d' = d/t`, `q' = q/t`, plus readable derivation steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub n: u64,
    pub q: u64,
    pub k: u64,
    pub c: u64,
    pub d: u64,
    pub t: u64,
    pub d_prime: u64,
    pub q_prime: u64,
    pub steps: Vec<String>,
}

impl DerivationTrace {
    pub fn new(n: u64, q: u64) -> DerivationTrace {
        let k = n / q;
        let c = n - k * q;
        let d = c.saturating_sub(1);
        let t = gcd(d, q);
        let (d_prime, q_prime) = (d / t, q / t);
        let steps = vec![format!(
            "k = floor({n}/{q}) = {k}; c = {n} - {k}*{q} = {c}; d = c - 1 = {d}"
        )];
        DerivationTrace { n, q, k, c, d, t, d_prime, q_prime, steps }
    }

    fn step(&mut self, s: String) {
        self.steps.push(s);
    }

    /// `floor((t + i + q') / q) == 0` for this trace.
    pub fn lemma_t3_holds(&self, i: u64) -> bool {
        lemma_t3_holds(self.t, i, self.q_prime, self.q)
    }
}

/// `floor((t + i + q') / q) == 0`.
pub fn lemma_t3_holds(t: u64, i: u64, q_prime: u64, q: u64) -> bool {
    u128::from(t) + u128::from(i) + u128::from(q_prime) < u128::from(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: u64,
    pub floor_value: u64,
    pub branch: Branch,
    pub bezout: Option<Bezout>,
    /// `i d - q j` on the `InverseOfD` route (expected 1) and
    /// `d (i + eps q') - q (j + eps d')` on the Bezout routes (expected `t`).
    pub determinant_check: Option<i128>,
    pub trace: Option<DerivationTrace>,
    pub verified: bool,
}

impl Witness {
    /// A witness carrying only `i` and its floor value, not yet verified.
    pub fn bare(i: u64, floor_value: u64, branch: Branch) -> Witness {
        Witness {
            i,
            floor_value,
            branch,
            bezout: None,
            determinant_check: None,
            trace: None,
            verified: false,
        }
    }
}

/// `floor(n i / q)`, exactly.
pub fn floor_mult(n: u64, i: u64, q: u64) -> Result<u64, WitnessError> {
    if q < 2 {
        return Err(WitnessError::InvalidModulus(q));
    }
    let prod = u128::from(n) * u128::from(i);
    if prod > MAX_PRODUCT {
        return Err(WitnessError::Overflow("n * i exceeds 2^80"));
    }
    u64::try_from(prod / u128::from(q)).map_err(|_| WitnessError::Overflow("floor quotient"))
}

fn is_witness(n: u64, p: u64, q: u64, i: u64) -> Option<u64> {
    if i == 0 || i >= q || i % p == 0 {
        return None;
    }
    let f = floor_mult(n, i, q).ok()?;
    (gcd(f, n - 1) == 1).then_some(f)
}

/// Smallest witness by linear scan over `1..q`, or `None`.
pub fn brute_force_witness(params: &CurveParams) -> Option<Witness> {
    let (n, p, q) = (params.n(), params.p(), params.q());
    (1..q).find_map(|i| {
        is_witness(n, p, q, i).map(|f| {
            let mut w = Witness::bare(i, f, Branch::BruteForce);
            w.verified = true;
            w
        })
    })
}

fn contradiction(params: &CurveParams, detail: String) -> WitnessError {
    WitnessError::InternalContradiction { n: params.n(), q: params.q(), detail }
}

fn finish(params: &CurveParams, mut w: Witness) -> Result<Witness, WitnessError> {
    if !verify_witness(params, &w) {
        return Err(contradiction(params, format!("constructed {:?} witness i = {} fails verification", w.branch, w.i)));
    }
    w.verified = true;
    Ok(w)
}

/// Requires `p ∤ d`. Picks `i ≡ d^{-1} (mod q)`, so `i d - q j = 1`.
fn inverse_of_d(params: &CurveParams, mut trace: DerivationTrace) -> Result<Witness, WitnessError> {
    let (n, q) = (params.n(), params.q());
    let i = mod_inverse(trace.d, q).ok_or(WitnessError::PreconditionViolated("d is not invertible modulo q"))?;
    let j = floor_mult(trace.c, i, q)?;
    let det = i128::from(i) * i128::from(trace.d) - i128::from(q) * i128::from(j);
    if det != 1 {
        return Err(contradiction(params, format!("i d - q j = {det}, expected 1")));
    }
    trace.step(format!("i = d^-1 mod {q} = {i}; j = floor(c i / q) = {j}; i d - q j = {det}"));
    let floor_value = floor_mult(n, i, q)?;
    trace.step(format!("floor(n i / q) = k i + j = {floor_value}"));
    finish(
        params,
        Witness {
            i,
            floor_value,
            branch: Branch::InverseOfD,
            bezout: Some(Bezout { d_prime: trace.d, q_prime: q, i, j }),
            determinant_check: Some(det),
            trace: Some(trace),
            verified: false,
        },
    )
}

/// Case analysis for `q < n < 2q`, or `p` odd with `p ∤ (n - 1)` or `n < 2q`.
pub fn constructive_witness_prime(params: &CurveParams) -> Result<Witness, WitnessError> {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let n2 = 2 * u128::from(n);
    let q_w = u128::from(q);

    if q < n && u128::from(n) < 2 * q_w {
        let f = floor_mult(n, 1, q)?;
        return finish(params, Witness::bare(1, f, Branch::CaseA_i1));
    }
    if p == 2 {
        return Err(WitnessError::PreconditionViolated("p = 2 requires q < n < 2q"));
    }
    if q_w < n2 && n < q {
        let f = floor_mult(n, 2, q)?;
        return finish(params, Witness::bare(2, f, Branch::HalfRange_i2));
    }
    if n2 < q_w {
        let mu = q.div_ceil(n);
        let lo = u128::from(mu) * u128::from(n);
        let hi = lo + u128::from(n);
        if !(q_w < lo && hi < 2 * q_w) {
            return Err(contradiction(params, format!("mu = {mu} violates q < mu n < (mu+1) n < 2q")));
        }
        let i = if mu % p != 0 { mu } else { mu + 1 };
        let f = floor_mult(n, i, q)?;
        return finish(params, Witness::bare(i, f, Branch::MuSearch));
    }
    if (n - 1) % p != 0 {
        let trace = DerivationTrace::new(n, q);
        return inverse_of_d(params, trace);
    }
    Err(WitnessError::PreconditionViolated(
        "need q < n < 2q, or p odd with p not dividing n - 1 or n < 2q",
    ))
}

/// Bezout route for `q ∤ (n - 1)` (with `q > 2`, `n ≢ q - 1 mod 2q` when
/// `p = 2`).
pub fn constructive_witness_q(params: &CurveParams) -> Result<Witness, WitnessError> {
    let (n, p, q) = (params.n(), params.p(), params.q());
    if (n - 1) % q == 0 {
        return Err(WitnessError::PreconditionViolated("q divides n - 1"));
    }
    if p == 2 {
        if q <= 2 {
            return Err(WitnessError::PreconditionViolated("p = 2 requires q > 2"));
        }
        if u128::from(n) % (2 * u128::from(q)) == u128::from(q - 1) {
            return Err(WitnessError::PreconditionViolated("p = 2 requires n not congruent to q - 1 mod 2q"));
        }
        if (n + 1) % q == 0 {
            return power2_special(params);
        }
    }

    let mut trace = DerivationTrace::new(n, q);
    if trace.d % p != 0 {
        return inverse_of_d(params, trace);
    }

    let (t, d, d_p, q_p, c) = (trace.t, trace.d, trace.d_prime, trace.q_prime, trace.c);
    trace.step(format!("t = gcd(d, q) = {t}; d' = {d_p}; q' = {q_p}"));
    if t < 2 || q_p < 2 {
        return Err(contradiction(params, format!("expected t > 1 and q' > 1, got t = {t}, q' = {q_p}")));
    }
    let i0 = mod_inverse(d_p, q_p).ok_or_else(|| contradiction(params, "d' not invertible mod q'".into()))?;
    let j0 = (u128::from(d_p) * u128::from(i0) - 1) / u128::from(q_p);
    let j0 = u64::try_from(j0).map_err(|_| WitnessError::Overflow("Bezout j"))?;
    trace.step(format!("d' i - q' j = 1 with i = {i0}, j = {j0}"));

    if !trace.lemma_t3_holds(i0) {
        return Err(contradiction(params, format!("floor((t + i + q')/q) != 0 for t = {t}, i = {i0}, q' = {q_p}")));
    }

    let mut dets = [0i128; 2];
    for eps in 0..2u64 {
        let cand = i0 + eps * q_p;
        let jj = j0 + eps * d_p;
        let det = i128::from(d) * i128::from(cand) - i128::from(q) * i128::from(jj);
        if det != i128::from(t) {
            return Err(contradiction(params, format!("d(i+eps q') - q(j+eps d') = {det}, expected t = {t} (eps = {eps})")));
        }
        if floor_mult(c, cand, q)? != jj {
            return Err(contradiction(params, format!("floor(c (i + eps q')/q) != j + eps d' (eps = {eps})")));
        }
        dets[eps as usize] = det;
    }

    for eps in 0..2u64 {
        let cand = i0 + eps * q_p;
        let f = floor_mult(n, cand, q)?;
        let g = gcd(f, n - 1);
        trace.step(format!("eps = {eps}: i = {cand}, floor(n i / q) = {f}, gcd with n - 1 = {g}"));
        if g == 1 {
            let branch = if eps == 0 { Branch::Qint_eps0 } else { Branch::Qint_eps1 };
            return finish(
                params,
                Witness {
                    i: cand,
                    floor_value: f,
                    branch,
                    bezout: Some(Bezout { d_prime: d_p, q_prime: q_p, i: i0, j: j0 }),
                    determinant_check: Some(dets[eps as usize]),
                    trace: Some(trace),
                    verified: false,
                },
            );
        }
    }
    Err(contradiction(params, "both epsilon candidates share a factor with n - 1".into()))
}

fn power2_special(params: &CurveParams) -> Result<Witness, WitnessError> {
    let (n, q, r) = (params.n(), params.q(), params.r());
    let k = (n + 1) / q;
    if k % 2 != 0 {
        return Err(contradiction(params, format!("(n + 1)/q = {k} is odd")));
    }
    let i = (1u64 << (r - 1)) - 1;
    let expected = i * k - 1;
    let f = floor_mult(n, i, q)?;
    if f != expected {
        return Err(contradiction(params, format!("floor(n i / q) = {f}, expected (2^(r-1) - 1) k - 1 = {expected}")));
    }
    let mut trace = DerivationTrace::new(n, q);
    trace.step(format!("q | n + 1: k' = (n + 1)/q = {k}; i = 2^(r-1) - 1 = {i}; floor(n i / q) = {f}"));
    let mut w = Witness::bare(i, f, Branch::Power2Special);
    w.trace = Some(trace);
    finish(params, w)
}

/// Independent re-check of every witness invariant, including the
/// branch-specific identity when the witness carries the data for it.
pub fn verify_witness(params: &CurveParams, w: &Witness) -> bool {
    let (n, p, q) = (params.n(), params.p(), params.q());
    match is_witness(n, p, q, w.i) {
        Some(f) if f == w.floor_value => {}
        _ => return false,
    }
    let (n_i, q_i) = (i128::from(n), i128::from(q));
    let c = n_i % q_i;
    let d = c - 1;
    match w.branch {
        Branch::CaseA_i1 => w.i == 1,
        Branch::HalfRange_i2 => w.i == 2,
        Branch::MuSearch | Branch::BruteForce => true,
        Branch::InverseOfD => match w.bezout {
            Some(b) => {
                let i = i128::from(w.i);
                let j = i128::from(b.j);
                j == c * i / q_i && i * d - q_i * j == 1
            }
            None => false,
        },
        Branch::Qint_eps0 | Branch::Qint_eps1 => match w.bezout {
            Some(b) => {
                let eps = i128::from(w.branch == Branch::Qint_eps1);
                let (i0, j0) = (i128::from(b.i), i128::from(b.j));
                let (dp, qp) = (i128::from(b.d_prime), i128::from(b.q_prime));
                let t = q_i / qp;
                qp * t == q_i
                    && dp * t == d
                    && dp * i0 - qp * j0 == 1
                    && i128::from(w.i) == i0 + eps * qp
                    && d * (i0 + eps * qp) - q_i * (j0 + eps * dp) == t
            }
            None => false,
        },
        Branch::Power2Special => {
            if p != 2 || (n + 1) % q != 0 {
                return false;
            }
            let k = (n + 1) / q;
            w.i == q / 2 - 1 && w.floor_value == w.i * k - 1
        }
    }
}
