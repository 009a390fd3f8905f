//! Exact integer arithmetic: prime sieve, factorization, Kronecker symbol,
//! fundamental discriminants, and the prime-divisor counts used by the
//! genus formula.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Largest sieve limit we are willing to allocate (one byte per integer).
const SIEVE_LIMIT_MAX: u64 = 200_000_000;

/// Prime factorization of a positive integer: sorted `(prime, exponent)`
/// pairs with strictly increasing primes and exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Reassemble the factored value.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// Number of distinct prime divisors congruent to 1 mod 3.
    pub fn psi(&self) -> u32 {
        self.pairs.iter().filter(|&&(p, _)| p % 3 == 1).count() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

/// All primes up to `limit`, ascending.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::Domain(format!("sieve limit {limit} < 2")));
    }
    if limit > SIEVE_LIMIT_MAX {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds {SIEVE_LIMIT_MAX}"
        )));
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    for (i, &c) in composite.iter().enumerate().skip(2) {
        if !c {
            primes.push(i as u64);
        }
    }
    Ok(primes)
}

/// Shared sieve of primes below 10^6, enough to trial-divide anything this
/// crate factors (discriminants, conductors, Hunter-box polynomial
/// discriminants) with a Pollard-rho fallback for large cofactors.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_primes(1_000_000).expect("static sieve"))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // Sinclair's deterministic base set for u64
    'witness: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Factor |n| by trial division over the shared sieve with a rho fallback.
/// The sign is the caller's business.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut m = n.unsigned_abs();
    let mut pairs = Vec::new();
    for &p in small_primes() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    if m > 1 {
        factor_large(m, &mut pairs);
        pairs.sort_unstable();
        // merge duplicates produced by the recursive split
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(pairs.len());
        for (p, e) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => merged.push((p, e)),
            }
        }
        pairs = merged;
    }
    Ok(Factorization { pairs })
}

fn factor_large(m: u64, pairs: &mut Vec<(u64, u32)>) {
    if m == 1 {
        return;
    }
    if is_prime_u64(m) {
        pairs.push((m, 1));
        return;
    }
    let s = m.isqrt();
    if s * s == m {
        factor_large(s, pairs);
        let k = pairs.len();
        factor_large(s, pairs);
        let _ = k;
        return;
    }
    let d = pollard_rho(m);
    factor_large(d, pairs);
    factor_large(m / d, pairs);
}

/// Largest e with p^e | n.
pub fn valuation(n: i64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut m = n.unsigned_abs();
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    e
}

/// Number of distinct prime divisors of n congruent to 1 mod 3.
pub fn psi(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("psi(0) undefined".into()));
    }
    Ok(factorize(n as i64)?.psi())
}

/// Kronecker symbol (d|n), the full extension of the Legendre symbol.
pub fn kronecker(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut a = d;
    let mut b = n;
    let mut v: i64 = 1;
    if b < 0 {
        b = -b;
        if a < 0 {
            v = -v;
        }
    }
    // strip factors of 2 from b
    let t2 = b.trailing_zeros();
    if t2 > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a|2) = (-1)^((a^2-1)/8)
        let r = a.rem_euclid(8);
        if (t2 % 2 == 1) && (r == 3 || r == 5) {
            v = -v;
        }
        b >>= t2;
    }
    // now b odd positive; standard Jacobi loop
    a = a.rem_euclid(b);
    while a != 0 {
        let t = a.trailing_zeros();
        if t > 0 {
            let r = b.rem_euclid(8);
            if (t % 2 == 1) && (r == 3 || r == 5) {
                v = -v;
            }
            a >>= t;
        }
        // quadratic reciprocity
        if a % 4 == 3 && b % 4 == 3 {
            v = -v;
        }
        let t = a;
        a = b % t;
        b = t;
    }
    if b == 1 {
        v
    } else {
        0
    }
}

/// True iff d is a fundamental discriminant: d = 1 mod 4 squarefree, or
/// d = 4m with m = 2, 3 mod 4 squarefree. By convention 1 is excluded.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let sf = |x: i64| factorize(x).map(|f| f.is_squarefree()).unwrap_or(false);
    if d.rem_euclid(4) == 1 {
        return sf(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && sf(m);
    }
    false
}

/// Checked i64 multiply-accumulate helpers used by discriminant formulas.
pub fn checked_i128_to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_basics() {
        assert_eq!(sieve_primes(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap(), vec![2]);
        assert_eq!(sieve_primes(100).unwrap().len(), 25);
        assert!(sieve_primes(1).is_err());
        assert!(matches!(
            sieve_primes(SIEVE_LIMIT_MAX + 1),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(1323).unwrap();
        assert_eq!(f.pairs(), &[(3, 3), (7, 2)]);
        assert_eq!(factorize(1).unwrap().pairs(), &[]);
        // square of a prime near 1e6
        let f = factorize(999_966_000_289).unwrap();
        assert_eq!(f.pairs(), &[(999_983, 2)]);
        assert!(factorize(0).is_err());
        assert_eq!(factorize(-1323).unwrap().pairs(), &[(3, 3), (7, 2)]);
    }

    #[test]
    fn factorize_reassembles() {
        for n in [2i64, 17, 360, 1 << 40, 600851475143, 999999999989] {
            assert_eq!(factorize(n).unwrap().value(), n as u64);
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        // two primes above the trial-division sieve
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let f = factorize((p * q) as i64).unwrap();
        assert_eq!(f.pairs(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(-3, 5), -1);
        assert_eq!(kronecker(1, 3), 1);
        assert_eq!(kronecker(12, 27), 0);
        assert_eq!(kronecker(5, 21), 1);
        assert_eq!(kronecker(7, 15), -1);
        assert_eq!(kronecker(-1, 2), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
    }

    #[test]
    fn kronecker_minus_three_detects_one_mod_three() {
        // (-3|p) = 1 iff p = 1 mod 3, for all odd primes p != 3
        for &p in small_primes().iter().take_while(|&&p| p < 10_000) {
            if p == 2 || p == 3 {
                continue;
            }
            let k = kronecker(-3, p as i64);
            assert_eq!(k == 1, p % 3 == 1, "p = {p}");
        }
    }

    #[test]
    fn kronecker_multiplicative_in_n() {
        for d in [-7i64, -3, 5, 13, -20] {
            for m in 1i64..60 {
                for n in 1i64..60 {
                    assert_eq!(
                        kronecker(d, m * n),
                        kronecker(d, m) * kronecker(d, n),
                        "d={d} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental_discriminant(-3));
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(5));
        assert!(is_fundamental_discriminant(8));
        assert!(is_fundamental_discriminant(-8));
        assert!(!is_fundamental_discriminant(9));
        assert!(!is_fundamental_discriminant(1));
        assert!(!is_fundamental_discriminant(-9));
        assert!(!is_fundamental_discriminant(12));
        assert!(is_fundamental_discriminant(-23));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(-1323, 3), 3);
        assert_eq!(valuation(49, 7), 2);
        assert_eq!(valuation(1, 5), 0);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(7).unwrap(), 1);
        assert_eq!(psi(10).unwrap(), 0);
        assert_eq!(psi(91).unwrap(), 2);
        assert_eq!(psi(1).unwrap(), 0);
    }

    #[test]
    fn psi_at_most_omega() {
        for n in 1..5000u64 {
            let f = factorize(n as i64).unwrap();
            assert!(f.psi() <= f.omega());
        }
    }
}
