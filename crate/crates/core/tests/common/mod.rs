//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_complex::Complex64;
use rszeta_core::CoefficientTable;

/// B_2, B_4, ..., B_20, written out again here so the oracle shares nothing
/// with the library.
const B2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// ζ(s) by Euler–Maclaurin summation with cutoff `n` and ten correction terms.
pub fn zeta_em(s: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..n {
        acc += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = |e: Complex64| (e * ln_n).exp();
    acc += n_pow(1.0 - s) / (s - 1.0) + 0.5 * n_pow(-s);
    // Σ B_{2k}/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (k, b) in B2K.iter().enumerate() {
        let k = k + 1;
        let term = rising * (*b / fact) * n_pow(-s - (2 * k - 1) as f64);
        acc += term;
        rising = rising * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    acc
}

/// Riemann–Siegel θ(t) by its asymptotic series.
pub fn theta(t: f64) -> f64 {
    let pi = std::f64::consts::PI;
    t / 2.0 * (t / (2.0 * pi)).ln() - t / 2.0 - pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it) from the oracle.
pub fn hardy_zeta(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta(t)) * zeta_em(Complex64::new(0.5, t), 30)).re
}

/// Zero of Hardy's Z in [lo, hi] by bisection (requires a sign change).
pub fn zeta_zero(mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = hardy_zeta(lo);
    assert!(flo * hardy_zeta(hi) < 0.0, "no sign change in [{lo}, {hi}]");
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let fm = hardy_zeta(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn table(n: usize) -> CoefficientTable {
    CoefficientTable::discriminant(n).expect("builtin table")
}

/// One 10^6 table per test binary.
pub fn big_table() -> &'static CoefficientTable {
    static T: OnceLock<CoefficientTable> = OnceLock::new();
    T.get_or_init(|| table(1_000_000))
}

/// The 10^5 table shared within a binary.
pub fn medium_table() -> &'static CoefficientTable {
    static T: OnceLock<CoefficientTable> = OnceLock::new();
    T.get_or_init(|| table(100_000))
}
