#![no_main]

use hdgcert::scanner::parse_prime_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(primes) = parse_prime_list(text) {
        assert!(!primes.is_empty());
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        let joined = primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_prime_list(&joined).expect("canonical list parses"), primes);
    }
});
