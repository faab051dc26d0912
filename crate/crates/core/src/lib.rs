//! Integer-arithmetic certificates for the Hodge group of the new part
//! `J^(f,q)` of the jacobian of `y^q = f(x)`, `q = p^r`.
//!
//! The crate validates `(n, p, r)`, builds coprimality witnesses by the
//! constructive case analysis (checked against an exhaustive scan), computes
//! the CM-type multiplicities `floor(n i / q)`, and assembles certificates
//! with their full dimension ledger. [`scanner`] runs parameter grids and
//! renders deterministic JSON/CSV reports.

pub mod arith;
pub mod cm_type;
pub mod hodge_report;
pub mod lie_combinatorics;
pub mod params;
pub mod scanner;
pub mod witness;

pub use cm_type::{hdgss_hypotheses, jacobian_dim, multiplicities, new_part_dim, CMType};
pub use hodge_report::{center_dim_product, certify_product, certify_single, HodgeCertificate, ProductCertificate, Verdict};
pub use params::{classify, validate, ConditionStatus, CurveParams, ParamError};
pub use witness::{
    brute_force_witness, constructive_witness_prime, constructive_witness_q, floor_mult, verify_witness, Branch, Witness,
};
