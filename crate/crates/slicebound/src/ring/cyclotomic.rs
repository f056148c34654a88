//! Cyclotomic polynomials and the small prime-factorization helpers they need.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::LaurentPoly;

/// Inputs are intended to stay small; factorization is plain trial division.
pub const FACTOR_GUARD: u64 = 1_000_000;

fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1 && n <= FACTOR_GUARD, "factorization guard: n must be in 1..={FACTOR_GUARD}");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The distinct prime divisors of `n >= 2`, ascending.
pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    assert!(n >= 2, "n must be at least 2");
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `Some((p, a))` when `n = p^a` for a prime `p`, `None` otherwise.  `n >= 2`.
pub fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    assert!(n >= 2, "n must be at least 2");
    let f = factorize(n);
    (f.len() == 1).then(|| f[0])
}

/// Whether `n >= 2` is a power of a single prime.
pub fn is_prime_power(n: u64) -> bool {
    prime_power_decomposition(n).is_some()
}

/// Euler's totient of `n >= 1`.
pub fn euler_phi(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, a) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (a as usize + 1));
        for d in &divs {
            let mut pk = 1;
            for _ in 0..=a {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

/// The n-th cyclotomic polynomial, obtained by exactly dividing `t^n - 1` by
/// the cyclotomic polynomials of the proper divisors of `n`.
///
/// The division is staged: `t^n - 1` is first divided by `t^{n/p} - 1` (the
/// product over divisors of `n/p`, `p` the smallest prime of `n`), leaving the
/// factors `Φ_d` with `d | n`, `d ∤ n/p`, `d < n` to divide out one by one.
/// Results are memoized process-wide.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    let coeffs = cyclo_cached(n);
    LaurentPoly::from_int_coeffs(0, &coeffs)
}

static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();

fn cyclo_cached(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1 && n <= FACTOR_GUARD, "cyclotomic index must be in 1..={FACTOR_GUARD}");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let computed = Arc::new(cyclo_compute(n));
    cache.lock().unwrap().insert(n, computed.clone());
    computed
}

fn cyclo_compute(n: u64) -> Vec<i64> {
    if n == 1 {
        return vec![-1, 1];
    }
    let p = factorize(n)[0].0;
    let m = n / p;
    // (t^n - 1) / (t^m - 1) = 1 + t^m + ... + t^{(p-1)m}.
    let mut q = vec![0i64; (n - m + 1) as usize];
    for j in 0..p {
        q[(j * m) as usize] = 1;
    }
    // Divide out Φ_d for the divisors d of n that do not divide m (except n).
    for d in divisors(n) {
        if d == n || m % d == 0 {
            continue;
        }
        let phi_d = cyclo_cached(d);
        q = div_exact_monic_i64(&q, &phi_d);
    }
    q
}

/// Exact long division of integer polynomials with a monic divisor.
fn div_exact_monic_i64(num: &[i64], den: &[i64]) -> Vec<i64> {
    debug_assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let dl = den.len();
    assert!(num.len() >= dl);
    let mut rem = num.to_vec();
    let qlen = rem.len() - dl + 1;
    let mut quot = vec![0i64; qlen];
    for qi in (0..qlen).rev() {
        let c = rem[qi + dl - 1];
        if c == 0 {
            continue;
        }
        for (k, &dc) in den.iter().enumerate() {
            rem[qi + k] = rem[qi + k]
                .checked_sub(c.checked_mul(dc).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
        quot[qi] = c;
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rational;
    use num_bigint::BigInt;

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    /// Independent oracle: the unstaged division of t^n - 1 by the full
    /// product of the proper-divisor cyclotomics, in plain rational arithmetic.
    fn cyclotomic_by_product_division(n: u64) -> LaurentPoly {
        if n == 1 {
            return LaurentPoly::from_int_coeffs(0, &[-1, 1]);
        }
        let mut product = LaurentPoly::one();
        for d in divisors(n) {
            if d < n {
                product = &product * &cyclotomic_by_product_division(d);
            }
        }
        let mut tn = vec![0i64; n as usize + 1];
        tn[0] = -1;
        tn[n as usize] = 1;
        LaurentPoly::from_int_coeffs(0, &tn)
            .div_exact(&product)
            .expect("proper-divisor product divides t^n - 1")
    }

    #[test]
    fn frozen_small_cases() {
        assert_eq!(cyclotomic(1), LaurentPoly::from_int_coeffs(0, &[-1, 1]));
        assert_eq!(cyclotomic(2), LaurentPoly::from_int_coeffs(0, &[1, 1]));
        assert_eq!(cyclotomic(6), LaurentPoly::from_int_coeffs(0, &[1, -1, 1]));
        assert_eq!(
            cyclotomic(30),
            LaurentPoly::from_int_coeffs(0, &[1, 1, 0, -1, -1, -1, 0, 1, 1])
        );
    }

    #[test]
    fn matches_product_division_oracle() {
        for n in 1..=64 {
            assert_eq!(
                cyclotomic(n),
                cyclotomic_by_product_division(n),
                "mismatch at n = {n}"
            );
        }
        for n in [105, 128, 210] {
            assert_eq!(cyclotomic(n), cyclotomic_by_product_division(n));
        }
    }

    #[test]
    fn product_over_divisors_is_tn_minus_one() {
        for n in 1..=100u64 {
            let mut product = LaurentPoly::one();
            for d in divisors(n) {
                product = &product * &cyclotomic(d);
            }
            let mut tn = vec![0i64; n as usize + 1];
            tn[0] = -1;
            tn[n as usize] = 1;
            assert_eq!(product, LaurentPoly::from_int_coeffs(0, &tn), "n = {n}");
        }
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=200 {
            assert_eq!(cyclotomic(n).high_exp() as u64, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn value_at_one() {
        // Φ_{p^a}(1) = p, anything else (n >= 2) gives 1.
        assert_eq!(cyclotomic(9).eval_at_one(), int(3));
        assert_eq!(cyclotomic(8).eval_at_one(), int(2));
        assert_eq!(cyclotomic(30).eval_at_one(), int(1));
        assert_eq!(cyclotomic(1).eval_at_one(), int(0));
        for n in 2..=300u64 {
            let expected = match prime_power_decomposition(n) {
                Some((p, _)) => int(p as i64),
                None => int(1),
            };
            assert_eq!(cyclotomic(n).eval_at_one(), expected, "n = {n}");
        }
    }

    #[test]
    fn cyclotomics_are_symmetric() {
        for n in 2..=100 {
            assert!(cyclotomic(n).is_symmetric(), "n = {n}");
        }
    }

    #[test]
    fn prime_power_cases() {
        assert_eq!(prime_power_decomposition(8), Some((2, 3)));
        assert_eq!(prime_power_decomposition(2), Some((2, 1)));
        assert_eq!(prime_power_decomposition(30), None);
        assert!(!is_prime_power(30));
        assert!(is_prime_power(27));
        assert_eq!(distinct_prime_factors(30), vec![2, 3, 5]);
        assert_eq!(distinct_prime_factors(4620), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(euler_phi(42), 12);
        assert_eq!(euler_phi(60), 16);
    }
}
