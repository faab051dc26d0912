//! Exact integer helpers shared by the certifier modules.
//!
//! Everything here works on unsigned 64-bit inputs with 128-bit
//! intermediates; nothing touches floating point.

/// Greatest common divisor with the convention `gcd(0, m) = m`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// 128-bit variant of [`gcd`], used for dimension-sized values.
pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
        (old_t, t) = (t, old_t - quot * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m` in `[1, m-1]`, or `None` when `gcd(a, m) != 1`
/// or `m < 2`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let (g, x, _) = ext_gcd(i128::from(a % m), i128::from(m));
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(i128::from(m)) as u64)
}

/// Deterministic primality test by trial division.
///
/// Callers bound their inputs by [`crate::params::MAX_MODULUS`], so the
/// loop runs at most about 2^20 iterations.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut f = 5u64;
    while f.saturating_mul(f) <= n {
        if n % f == 0 || n % (f + 2) == 0 {
            return false;
        }
        f += 6;
    }
    true
}

/// `base^exp`, or `None` when the result exceeds `limit`.
pub fn checked_pow_bounded(base: u64, exp: u32, limit: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > limit {
            return None;
        }
    }
    Some(acc)
}

/// Euler's totient of the prime power `p^r`, in closed form `p^(r-1) (p-1)`.
pub fn phi_prime_power(p: u64, r: u32) -> u64 {
    debug_assert!(r >= 1);
    p.pow(r - 1) * (p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_zero_convention() {
        assert_eq!(gcd(0, 9), 9);
        assert_eq!(gcd(9, 0), 9);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(12, 18), 6);
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in 0..40i128 {
            for b in 0..40i128 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn inverse_mod_prime_power() {
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(2, 9), Some(5));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(mod_inverse(1, 1), None);
    }

    #[test]
    fn primes_small() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert!(is_prime(1_099_511_627_689)); // largest prime below 2^40
        assert!(!is_prime(1 << 40));
    }

    #[test]
    fn pow_bound() {
        assert_eq!(checked_pow_bounded(3, 6, 1 << 40), Some(729));
        assert_eq!(checked_pow_bounded(2, 40, 1 << 40), Some(1 << 40));
        assert_eq!(checked_pow_bounded(2, 41, 1 << 40), None);
    }

    #[test]
    fn totient() {
        assert_eq!(phi_prime_power(3, 2), 6);
        assert_eq!(phi_prime_power(2, 3), 4);
        assert_eq!(phi_prime_power(7, 1), 6);
    }
}
