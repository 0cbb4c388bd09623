//! The finite-difference identity behind the residue computation:
//! `Σ_{ν=0}^{m} (-1)^ν binom(m, ν) ν^p` is 0 for p < m and (-1)^m m! for p = m.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `Σ_{ν=0}^{m} (-1)^ν binom(m, ν) ν^p`, exactly.
pub fn differencing_sum(m: u32, p: u32) -> BigInt {
    let mut binom = BigInt::one();
    let mut acc = BigInt::zero();
    for nu in 0..=m {
        let term = &binom * BigInt::from(nu).pow(p);
        if nu % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        binom = binom * (m - nu) / (nu + 1);
    }
    acc
}

/// The closed form: 0 below the diagonal, (-1)^m m! on it.
pub fn differencing_expected(m: u32, p: u32) -> Option<BigInt> {
    if p > m {
        return None;
    }
    if p < m {
        return Some(BigInt::zero());
    }
    let fact: BigInt = (1..=m).map(BigInt::from).product();
    Some(if m % 2 == 0 { fact } else { -fact })
}
