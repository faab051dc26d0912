#![no_main]

use hdgcert::params::{classify, validate};
use hdgcert::witness::{constructive_witness_prime, constructive_witness_q, verify_witness, Witness, WitnessError};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|triple: (i64, i64, i64)| {
    let (n, p, r) = triple;
    let Ok(params) = validate(n, p, r) else { return };
    assert!(params.n() >= 4 && params.n() % params.p() != 0);
    assert_eq!(Some(params.q()), params.p().checked_pow(params.r()));
    let status = classify(&params);
    if status.prop31_applicable() {
        check(&params, constructive_witness_prime(&params));
    }
    if status.prop32_applicable {
        check(&params, constructive_witness_q(&params));
    }
});

// The exhaustive oracle is linear in q, so only the constructive routes run.
fn check(params: &hdgcert::CurveParams, built: Result<Witness, WitnessError>) {
    match built {
        Ok(w) => assert!(verify_witness(params, &w)),
        Err(WitnessError::InternalContradiction { n, q, detail }) => panic!("n = {n}, q = {q}: {detail}"),
        Err(_) => {}
    }
}
