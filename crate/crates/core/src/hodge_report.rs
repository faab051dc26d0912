//! Certificates: whether the arithmetic hypotheses pin down the Hodge group
//! of `J^(f,q)` as the full unitary group, together with the dimension
//! ledger `dim u = dim center + dim su`.
//!
//! With `E = Q(zeta_q)`, `[E:Q] = phi(q)` and `d = n - 1`:
//!
//! - unitary: `[E+:Q] d^2 = phi(q) d^2 / 2`
//! - center `E_-`: `phi(q) / 2`
//! - semisimple: `phi(q) (d^2 - 1) / 2`

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::phi_prime_power;
use crate::cm_type::{hdgss_hypotheses, multiplicities, new_part_dim, CmError};
use crate::params::{classify, ConditionStatus, CurveParams};
use crate::witness::{constructive_witness_prime, constructive_witness_q, verify_witness, Witness, WitnessError};

/// Recorded in every certificate; the certifier never sees `f(x)`.
pub const GALOIS_ASSUMPTION: &str = "unverified assumption: f(x) is irreducible over K with Gal(f) equal to S_n or A_n, \
and Gal(f) = S_4 when n = 4";

pub const ISOGENY_NOTE: &str = "the Lie algebra of Hdg(J(C_{f,q})) is the conjugate of this product algebra \
by any isogeny J(C_{f,q}) -> prod_i J^(f,p^i)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("q = 2 (hyperelliptic) is excluded from certification")]
    HyperellipticExcluded,
    #[error("product hypothesis failed: {0}")]
    ProductHypothesisFailed(&'static str),
    #[error("level p^{0} is not determined")]
    LevelInconclusive(u32),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error("certificate invariant violated: {0}")]
    InvariantViolated(String),
}

impl ReportError {
    /// Errors that can only come from a bug, as opposed to bad parameters.
    pub fn is_internal(&self) -> bool {
        !matches!(self, ReportError::HyperellipticExcluded | ReportError::ProductHypothesisFailed(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Determined,
    Inconclusive,
    /// `n <= q`: the multiplicities are not all positive and distinct.
    OutOfScope,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Determined => "Determined",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::OutOfScope => "OutOfScope",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionLedger {
    pub dim_abelian_variety: u128,
    pub dim_unitary: u128,
    pub dim_center: u128,
    pub dim_semisimple: u128,
}

/// Dimensions for the new part at level `q`; requires `q > 2`.
pub fn dimension_ledger(params: &CurveParams) -> Result<DimensionLedger, ReportError> {
    if params.is_hyperelliptic() {
        return Err(ReportError::HyperellipticExcluded);
    }
    let phi = u128::from(phi_prime_power(params.p(), params.r()));
    let d = u128::from(params.n() - 1);
    let ledger = DimensionLedger {
        dim_abelian_variety: new_part_dim(params)?,
        dim_unitary: phi * d * d / 2,
        dim_center: phi / 2,
        dim_semisimple: phi * (d * d - 1) / 2,
    };
    if ledger.dim_center + ledger.dim_semisimple != ledger.dim_unitary {
        return Err(ReportError::InvariantViolated("center + semisimple != unitary".into()));
    }
    Ok(ledger)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeCertificate {
    pub params: CurveParams,
    pub verdict: Verdict,
    pub assumption_note: String,
    pub witness: Option<Witness>,
    pub dim_abelian_variety: u128,
    pub dim_unitary: u128,
    pub dim_center: u128,
    pub dim_semisimple: u128,
    pub conditions: ConditionStatus,
}

impl HodgeCertificate {
    pub fn ledger(&self) -> DimensionLedger {
        DimensionLedger {
            dim_abelian_variety: self.dim_abelian_variety,
            dim_unitary: self.dim_unitary,
            dim_center: self.dim_center,
            dim_semisimple: self.dim_semisimple,
        }
    }
}

/// The constructive witness for `params`, preferring the prime-power case
/// analysis and falling back to the Bezout route. `None` when neither
/// applies.
pub fn constructive_witness(params: &CurveParams, conditions: &ConditionStatus) -> Result<Option<Witness>, WitnessError> {
    if conditions.prop31_applicable() {
        constructive_witness_prime(params).map(Some)
    } else if conditions.prop32_applicable {
        constructive_witness_q(params).map(Some)
    } else {
        Ok(None)
    }
}

/// Single-level certificate. Determined only when the sufficiency
/// conditions hold; an empirically existing witness is not enough.
pub fn certify_single(params: &CurveParams) -> Result<HodgeCertificate, ReportError> {
    if params.is_hyperelliptic() {
        return Err(ReportError::HyperellipticExcluded);
    }
    let conditions = classify(params);
    let ledger = dimension_ledger(params)?;
    let witness = constructive_witness(params, &conditions)?;

    let verdict = if !conditions.n_gt_q {
        Verdict::OutOfScope
    } else if conditions.theorem_main_applicable {
        let w = witness
            .as_ref()
            .ok_or_else(|| ReportError::InvariantViolated("sufficiency conditions hold but no witness was built".into()))?;
        if !verify_witness(params, w) {
            return Err(ReportError::InvariantViolated(format!("witness i = {} fails verification", w.i)));
        }
        let cm = multiplicities(params)?;
        if !hdgss_hypotheses(&cm).0 {
            return Err(ReportError::InvariantViolated("multiplicity hypotheses fail despite a witness".into()));
        }
        Verdict::Determined
    } else {
        Verdict::Inconclusive
    };

    Ok(HodgeCertificate {
        params: *params,
        verdict,
        assumption_note: GALOIS_ASSUMPTION.to_string(),
        witness,
        dim_abelian_variety: ledger.dim_abelian_variety,
        dim_unitary: ledger.dim_unitary,
        dim_center: ledger.dim_center,
        dim_semisimple: ledger.dim_semisimple,
        conditions,
    })
}

/// `dim E^{p,r}_- = phi(p^r) / 2`: a trace-compatible tuple is fixed by
/// its top component since every trace map is onto. `p` must be odd.
pub fn center_dim_product(p: u64, r: u32) -> u64 {
    debug_assert!(p % 2 == 1 && r >= 1);
    phi_prime_power(p, r) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCertificate {
    pub params: CurveParams,
    pub verdict: Verdict,
    pub assumption_note: String,
    pub isogeny_note: String,
    pub levels: Vec<HodgeCertificate>,
    pub dim_center_product: u128,
    pub dim_total: u128,
}

/// Certificate for `prod_{i=1}^r J^(f,p^i)` with `p` odd, `p ∤ n(n-1)`,
/// `n > p^r`.
pub fn certify_product(params: &CurveParams) -> Result<ProductCertificate, ReportError> {
    let (n, p) = (params.n(), params.p());
    if p == 2 {
        return Err(ReportError::ProductHypothesisFailed("p must be odd"));
    }
    if n % p == 0 || (n - 1) % p == 0 {
        return Err(ReportError::ProductHypothesisFailed("p divides n(n - 1)"));
    }
    if n <= params.q() {
        return Err(ReportError::ProductHypothesisFailed("n must exceed q"));
    }

    let mut levels = Vec::with_capacity(params.r() as usize);
    for level in 1..=params.r() {
        let lp = params
            .at_level(level)
            .map_err(|e| ReportError::InvariantViolated(e.to_string()))?;
        let cert = certify_single(&lp)?;
        if cert.verdict != Verdict::Determined {
            return Err(ReportError::LevelInconclusive(level));
        }
        levels.push(cert);
    }

    let dim_center_product = u128::from(center_dim_product(p, params.r()));
    let dim_total = dim_center_product + levels.iter().map(|c| c.dim_semisimple).sum::<u128>();
    Ok(ProductCertificate {
        params: *params,
        verdict: Verdict::Determined,
        assumption_note: GALOIS_ASSUMPTION.to_string(),
        isogeny_note: ISOGENY_NOTE.to_string(),
        levels,
        dim_center_product,
        dim_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate;
    use crate::witness::Branch;

    fn cp(n: i64, p: i64, r: i64) -> CurveParams {
        validate(n, p, r).unwrap()
    }

    fn dims(c: &HodgeCertificate) -> (u128, u128, u128) {
        (c.dim_unitary, c.dim_center, c.dim_semisimple)
    }

    #[test]
    fn single_examples() {
        let c = certify_single(&cp(5, 3, 1)).unwrap();
        assert_eq!(c.verdict, Verdict::Determined);
        assert_eq!(dims(&c), (16, 1, 15));
        assert_eq!(c.dim_abelian_variety, 4);

        let c = certify_single(&cp(7, 2, 2)).unwrap();
        assert_eq!(c.verdict, Verdict::Determined);
        assert!(c.conditions.holds_a && c.conditions.holds_c);
        assert_eq!(dims(&c), (36, 1, 35));

        let c = certify_single(&cp(19, 3, 2)).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.witness, None);
        assert_eq!(dims(&c), (972, 3, 969));
    }

    #[test]
    fn single_out_of_scope_and_hyperelliptic() {
        let c = certify_single(&cp(7, 3, 2)).unwrap();
        assert_eq!(c.verdict, Verdict::OutOfScope);
        assert_eq!(c.witness.as_ref().map(|w| w.branch), Some(Branch::HalfRange_i2));
        assert_eq!(certify_single(&cp(7, 2, 1)), Err(ReportError::HyperellipticExcluded));
    }

    #[test]
    fn product_examples() {
        let pc = certify_product(&cp(11, 3, 2)).unwrap();
        assert_eq!(pc.levels.len(), 2);
        assert_eq!(pc.levels[0].dim_semisimple, 99);
        assert_eq!(pc.levels[1].dim_semisimple, 297);
        assert_eq!(pc.dim_center_product, 3);
        assert_eq!(pc.dim_total, 399);

        assert_eq!(
            certify_product(&cp(10, 3, 2)),
            Err(ReportError::ProductHypothesisFailed("p divides n(n - 1)"))
        );
        // 3 | 4 * 3, so the product hypothesis rejects (4, 3, 1)
        assert_eq!(
            certify_product(&cp(4, 3, 1)),
            Err(ReportError::ProductHypothesisFailed("p divides n(n - 1)"))
        );
        let single = certify_single(&cp(4, 3, 1)).unwrap();
        assert_eq!(single.verdict, Verdict::Determined);
        assert_eq!(dims(&single), (9, 1, 8));
    }

    #[test]
    fn product_rejections() {
        assert_eq!(certify_product(&cp(7, 2, 2)), Err(ReportError::ProductHypothesisFailed("p must be odd")));
        assert_eq!(certify_product(&cp(8, 3, 2)), Err(ReportError::ProductHypothesisFailed("n must exceed q")));
    }

    #[test]
    fn product_levels_share_d() {
        let pc = certify_product(&cp(29, 3, 3)).unwrap();
        for (idx, lvl) in pc.levels.iter().enumerate() {
            let phi = u128::from(phi_prime_power(3, idx as u32 + 1));
            assert_eq!(lvl.dim_unitary, phi * 28 * 28 / 2);
        }
    }

    #[test]
    fn center_dims() {
        assert_eq!(center_dim_product(3, 1), 1);
        assert_eq!(center_dim_product(3, 2), 3);
        assert_eq!(center_dim_product(5, 1), 2);
    }
}
