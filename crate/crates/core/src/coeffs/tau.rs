//! Ramanujan's τ(n) from the product `x ∏ (1 - x^k)^24`.
//!
//! `∏ (1 - x^k)` is written down directly from Euler's pentagonal number
//! theorem (about `sqrt(8N/3)` nonzero terms). The 24th power is then taken by
//! repeated squaring, `P^24 = P^16 · P^8`, of polynomials truncated at degree
//! `N - 1`. Each product is an exact cyclic convolution modulo several
//! NTT-friendly primes; the integer coefficients are recovered by Chinese
//! remaindering. The number of primes is chosen from Deligne's bound
//! `|τ(n)| <= d(n) n^{11/2}` so the symmetric residue is always the true value.
//! Cost is O(N log N) per prime, against O(N^2) for schoolbook squaring.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// `(p, primitive root, log2 of the largest power-of-two order)`
const NTT_PRIMES: [(u64, u64, u32); 7] = [
    (2_013_265_921, 31, 27),
    (2_113_929_217, 5, 25),
    (1_811_939_329, 13, 26),
    (998_244_353, 3, 23),
    (469_762_049, 3, 26),
    (754_974_721, 11, 24),
    (167_772_161, 3, 25),
];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

// Branch-free modular helpers for values below 2p (butterfly data is random,
// so conditional branches here mispredict about half the time).

/// r mod p for r < 2p.
#[inline(always)]
fn reduce_once(r: u64, p: u64) -> u64 {
    r.min(r.wrapping_sub(p))
}

/// (x + y) mod p for x, y < p.
#[inline(always)]
fn add_mod(x: u64, y: u64, p: u64) -> u64 {
    reduce_once(x + y, p)
}

/// (x - y) mod p for x, y < p.
#[inline(always)]
fn sub_mod(x: u64, y: u64, p: u64) -> u64 {
    let d = x.wrapping_sub(y);
    d.min(d.wrapping_add(p))
}

/// Montgomery reduction with R = 2^32 for odd p < 2^31.
#[derive(Clone, Copy)]
struct Montgomery {
    p: u64,
    /// -p^{-1} mod 2^32
    neg_inv: u32,
}

impl Montgomery {
    fn new(p: u64) -> Self {
        let p32 = p as u32;
        let mut inv = p32;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p32.wrapping_mul(inv)));
        }
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
        }
    }

    /// a·R mod p.
    fn to_mont(self, a: u64) -> u64 {
        (a << 32) % self.p
    }

    /// a·b·R^{-1} mod p for a, b < p.
    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        let t = a * b;
        let m = (t as u32).wrapping_mul(self.neg_inv);
        let r = (t + u64::from(m) * self.p) >> 32;
        reduce_once(r, self.p)
    }
}

/// Entries per cache-resident block in the small NTT stages.
const CACHE_BLOCK: usize = 1 << 13;

/// Twiddles `w_len^k` (k < len/2) for len = 2, 4, ..., n, in Montgomery form.
fn stage_twiddles(n: usize, p: u64, g: u64, invert: bool, mont: Montgomery) -> Vec<Vec<u64>> {
    let mut stages = Vec::new();
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(g, (p - 1) / len as u64, p);
        if invert {
            w = pow_mod(w, p - 2, p);
        }
        let mut tw = Vec::with_capacity(len / 2);
        let mut cur = 1u64;
        for _ in 0..len / 2 {
            tw.push(mont.to_mont(cur));
            cur = cur * w % p;
        }
        stages.push(tw);
        len <<= 1;
    }
    stages
}

/// One decimation-in-frequency stage with butterflies of width `2 half`.
fn dif_stage(block: &mut [u64], half: usize, tw: &[u64], mont: Montgomery) {
    let p = mont.p;
    for chunk in block.chunks_exact_mut(2 * half) {
        let (lo, hi) = chunk.split_at_mut(half);
        for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
            let (x, y) = (*u, *v);
            *u = add_mod(x, y, p);
            *v = mont.mul(sub_mod(x, y, p), w);
        }
    }
}

/// One decimation-in-time stage with butterflies of width `2 half`.
fn dit_stage(block: &mut [u64], half: usize, tw: &[u64], mont: Montgomery) {
    let p = mont.p;
    for chunk in block.chunks_exact_mut(2 * half) {
        let (lo, hi) = chunk.split_at_mut(half);
        for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
            let x = *u;
            let y = mont.mul(*v, w);
            *u = add_mod(x, y, p);
            *v = sub_mod(x, y, p);
        }
    }
}

/// Forward transform, decimation in frequency: natural order in,
/// bit-reversed order out.
///
/// Stages narrower than [`CACHE_BLOCK`] only mix entries inside aligned
/// blocks of that size and are run block by block.
#[inline(never)]
fn ntt_forward(a: &mut [u64], p: u64, g: u64) {
    let mont = Montgomery::new(p);
    let stages = stage_twiddles(a.len(), p, g, false, mont);
    let block = CACHE_BLOCK.min(a.len());
    let small = (block.trailing_zeros() as usize).min(stages.len());
    for st in (small..stages.len()).rev() {
        dif_stage(a, 1 << st, &stages[st], mont);
    }
    for chunk in a.chunks_mut(block) {
        for st in (0..small).rev() {
            dif_stage(chunk, 1 << st, &stages[st], mont);
        }
    }
}

/// Inverse transform, decimation in time: bit-reversed order in, natural
/// order out, scaled by 1/n.
#[inline(never)]
fn ntt_inverse(a: &mut [u64], p: u64, g: u64) {
    let mont = Montgomery::new(p);
    let stages = stage_twiddles(a.len(), p, g, true, mont);
    let block = CACHE_BLOCK.min(a.len());
    let small = (block.trailing_zeros() as usize).min(stages.len());
    for chunk in a.chunks_mut(block) {
        for (st, tw) in stages.iter().enumerate().take(small) {
            dit_stage(chunk, 1 << st, tw, mont);
        }
    }
    for (st, tw) in stages.iter().enumerate().skip(small) {
        dit_stage(a, 1 << st, tw, mont);
    }
    let n_inv = pow_mod(a.len() as u64, p - 2, p);
    for x in a.iter_mut() {
        *x = *x * n_inv % p;
    }
}

/// `P(x)^24 mod (p, x^len)` for `P = ∏ (1 - x^k)`.
fn eta24_mod(len: usize, p: u64, g: u64) -> Vec<u64> {
    let size = (2 * len).next_power_of_two().max(2);
    let transform = |v: &[u64]| {
        let mut f = vec![0u64; size];
        f[..v.len()].copy_from_slice(v);
        ntt_forward(&mut f, p, g);
        f
    };
    let back = |mut f: Vec<u64>| {
        ntt_inverse(&mut f, p, g);
        f.truncate(len);
        f
    };

    let mut base = vec![0u64; len];
    for (exp, sign) in pentagonal_terms(len) {
        base[exp] = if sign > 0 { 1 } else { p - 1 };
    }

    let mut cur = base;
    let mut eighth = Vec::new();
    for step in 1..=4 {
        // cur = P^(2^(step-1)) → P^(2^step)
        let f = transform(&cur);
        if step == 4 {
            eighth = f.clone();
        }
        cur = back(f.iter().map(|&x| x * x % p).collect());
    }
    // cur = P^16, eighth = NTT(P^8)
    let f = transform(&cur);
    back(f.iter().zip(&eighth).map(|(&x, &y)| x * y % p).collect())
}

/// Exponents and signs of `∏ (1 - x^k)` below `len`, from the pentagonal
/// number theorem: `Σ_k (-1)^k x^{k(3k-1)/2}` over all integers k.
pub(crate) fn pentagonal_terms(len: usize) -> Vec<(usize, i8)> {
    let mut terms = vec![(0usize, 1i8)];
    let mut k = 1usize;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        if e1 >= len {
            break;
        }
        terms.push((e1, sign));
        if e2 < len {
            terms.push((e2, sign));
        }
        k += 1;
    }
    terms.sort_unstable();
    terms
}

/// Bits needed to hold `2 max_{n<=N} d(n) n^{11/2}` plus slack.
fn required_bits(n_max: usize) -> f64 {
    let n = n_max as f64;
    // d(n) <= 2 sqrt(n)
    let bound_log2 = 5.5 * n.log2() + (2.0 * n.sqrt()).log2();
    bound_log2 + 4.0
}

/// τ(1..=N) as exact integers (`result[k]` is τ(k + 1)).
pub fn build_tau(n_max: usize) -> Result<Vec<BigInt>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("build_tau needs N >= 1".into()));
    }
    let size_log2 = (2 * n_max).next_power_of_two().trailing_zeros();
    let bits = required_bits(n_max);
    let mut chosen = Vec::new();
    let mut have = 0.0;
    for &(p, g, order) in &NTT_PRIMES {
        if have >= bits {
            break;
        }
        if order >= size_log2 {
            chosen.push((p, g));
            have += (p as f64).log2();
        }
    }
    if have < bits {
        return Err(Error::Overflow(format!(
            "N = {n_max} exceeds the range of the modular τ builder ({have:.0} of {bits:.0} bits available)"
        )));
    }

    let residues: Vec<Vec<u64>> = chosen
        .par_iter()
        .map(|&(p, g)| eta24_mod(n_max, p, g))
        .collect();

    // Garner: x = r0 + p0 (v1 + p1 (v2 + ...)), then symmetric lift.
    let primes: Vec<u64> = chosen.iter().map(|&(p, _)| p).collect();
    let k = primes.len();
    let mut inv = vec![vec![0u64; k]; k];
    for i in 0..k {
        for j in 0..i {
            inv[j][i] = pow_mod(primes[j] % primes[i], primes[i] - 2, primes[i]);
        }
    }
    let modulus: BigInt = primes.iter().fold(BigInt::from(1u8), |acc, &p| acc * p);
    let half: BigInt = &modulus >> 1u32;

    let out: Vec<BigInt> = (0..n_max)
        .into_par_iter()
        .map(|idx| {
            let mut digits = vec![0u64; k];
            for i in 0..k {
                let p = primes[i];
                let mut v = residues[i][idx] % p;
                for j in 0..i {
                    let diff = (v + p - digits[j] % p) % p;
                    v = diff * inv[j][i] % p;
                }
                digits[i] = v;
            }
            let mut x = BigInt::zero();
            for i in (0..k).rev() {
                x = x * primes[i] + digits[i];
            }
            if x > half {
                x -= &modulus;
            }
            x
        })
        .collect();
    debug_assert!(out.iter().all(|v| v.abs() < half));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook expansion of x ∏ (1 - x^k)^24, one factor at a time.
    fn naive_tau(n: usize) -> Vec<i128> {
        let mut poly = vec![0i128; n];
        poly[0] = 1;
        for k in 1..n {
            for _ in 0..24 {
                for e in (k..n).rev() {
                    poly[e] -= poly[e - k];
                }
            }
        }
        poly
    }

    #[test]
    fn primitive_roots_generate_full_group() {
        for &(p, g, order) in &NTT_PRIMES {
            let mut m = p - 1;
            assert_eq!(m % (1u64 << order), 0);
            let mut factors = Vec::new();
            let mut q = 2;
            while q * q <= m {
                if m % q == 0 {
                    factors.push(q);
                    while m % q == 0 {
                        m /= q;
                    }
                }
                q += 1;
            }
            if m > 1 {
                factors.push(m);
            }
            for f in factors {
                assert_ne!(pow_mod(g, (p - 1) / f, p), 1, "p={p} g={g} f={f}");
            }
        }
    }

    #[test]
    fn pentagonal_series_matches_product() {
        let len = 60;
        let mut prod = vec![0i64; len];
        prod[0] = 1;
        for k in 1..len {
            for e in (k..len).rev() {
                prod[e] -= prod[e - k];
            }
        }
        let mut sparse = vec![0i64; len];
        for (e, s) in pentagonal_terms(len) {
            sparse[e] = s as i64;
        }
        assert_eq!(prod, sparse);
    }

    #[test]
    fn matches_schoolbook_expansion() {
        let n = 300;
        let fast = build_tau(n).unwrap();
        let slow = naive_tau(n);
        for i in 0..n {
            assert_eq!(fast[i], BigInt::from(slow[i]), "tau({})", i + 1);
        }
    }

    #[test]
    fn known_values() {
        let t = build_tau(10).unwrap();
        let expect = [
            1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
        ];
        for (v, e) in t.iter().zip(expect) {
            assert_eq!(*v, BigInt::from(e));
        }
        assert_eq!(build_tau(1).unwrap(), vec![BigInt::from(1)]);
        assert!(build_tau(0).is_err());
    }
}
