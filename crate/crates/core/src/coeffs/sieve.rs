//! Multiplicative-function sieves.

/// Möbius function μ(0..=n); index 0 is unused and set to 0.
///
/// Linear sieve, O(n).
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            is_composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

/// Divisor count d(0..=n); index 0 is unused and set to 0.
pub fn divisor_count_sieve(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for i in 1..=n {
        for m in (i..=n).step_by(i) {
            d[m] += 1;
        }
    }
    d
}
