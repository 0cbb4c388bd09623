//! Complex log-gamma and digamma via shifted Stirling series.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default number of Bernoulli correction terms.
pub const DEFAULT_STIRLING_ORDER: usize = 8;

/// Below this modulus the argument is shifted by the recurrence first.
const SHIFT_RADIUS: f64 = 10.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_0, B_2, ..., B_30 (odd-index numbers vanish except B_1 = -1/2).
const BERNOULLI_EVEN: [f64; 16] = [
    1.0,
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
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Largest supported expansion order.
pub const MAX_STIRLING_ORDER: usize = BERNOULLI_EVEN.len() - 1;

/// Bernoulli number B_n for n ≤ 31.
pub fn bernoulli(n: usize) -> f64 {
    match n {
        1 => -0.5,
        _ if n % 2 == 1 => 0.0,
        _ => BERNOULLI_EVEN[n / 2],
    }
}

/// Bernoulli polynomial B_n(x) = Σ_k binom(n, k) B_k x^{n-k}.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += binom * bernoulli(k) * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

fn check_pole(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Domain(format!("gamma has a pole at {}", z.re)));
    }
    Ok(())
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_STIRLING_ORDER {
        return Err(Error::InvalidParameter(format!(
            "Stirling order {k} exceeds {MAX_STIRLING_ORDER}"
        )));
    }
    Ok(())
}

/// Moves `z` into the asymptotic region; returns the shifted point and Σ log(z + j).
fn shift_up(mut z: Complex64, radius: f64) -> (Complex64, Complex64) {
    let mut logs = Complex64::new(0.0, 0.0);
    while z.norm() < radius || z.re < 0.5 {
        logs += z.ln();
        z += 1.0;
    }
    (z, logs)
}

/// Principal branch of log Γ(z) with `k` Stirling correction terms.
///
/// Continuous off the negative real axis and conjugate-symmetric:
/// `log_gamma(conj z) == conj(log_gamma(z))` bit for bit.
pub fn log_gamma(z: Complex64, k: usize) -> Result<Complex64> {
    check_pole(z)?;
    check_order(k)?;
    let (w, logs) = shift_up(z, SHIFT_RADIUS);
    Ok(stirling(w, k) - logs)
}

fn stirling(z: Complex64, k: usize) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + HALF_LN_2PI;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(k + 1).skip(1) {
        acc += pow * (b / ((2 * j) * (2 * j - 1)) as f64);
        pow *= inv2;
    }
    acc
}

/// log Γ(z + b) expanded around z:
/// `(z + b - 1/2) log z - z + log(2π)/2 + Σ_{j=1}^{2k} (-1)^{j+1} B_{j+1}(b) / (j (j+1) z^j)`.
///
/// No recurrence shift is applied; this is the raw asymptotic form, accurate
/// for large `|z|` away from the negative axis.
pub fn log_gamma_shifted(z: Complex64, b: f64, k: usize) -> Result<Complex64> {
    check_order(k)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("expansion point must be nonzero".into()));
    }
    let mut acc = (z + b - 0.5) * z.ln() - z + HALF_LN_2PI;
    let inv = z.inv();
    let mut pow = inv;
    for j in 1..=2 * k {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        acc += pow * (sign * bernoulli_poly(j + 1, b) / (j * (j + 1)) as f64);
        pow *= inv;
    }
    Ok(acc)
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let mut z = z;
    let mut recip = Complex64::new(0.0, 0.0);
    while z.norm() < SHIFT_RADIUS || z.re < 0.5 {
        recip += z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut acc = z.ln() - inv * 0.5;
    let mut pow = inv2;
    for (j, b) in BERNOULLI_EVEN
        .iter()
        .enumerate()
        .take(DEFAULT_STIRLING_ORDER + 1)
        .skip(1)
    {
        acc -= pow * (b / (2 * j) as f64);
        pow *= inv2;
    }
    Ok(acc - recip)
}

#[cfg(test)]
// Reference values are quoted at full published precision.
#[allow(clippy::excessive_precision, clippy::approx_constant)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn special_values() {
        assert!(log_gamma(c(1.0, 0.0), 8).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0), 8).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0), 8).unwrap();
        assert!((half.re - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert_eq!(half.im, 0.0);
    }

    #[test]
    fn against_reference_values() {
        let cases = [
            (
                c(10.0, 10.0),
                c(
                    8.23613175044871784368645190359,
                    23.9487034137820373601498751028,
                ),
            ),
            (
                c(0.5, 100.0),
                c(
                    -156.160694146284989181351839428,
                    360.517435267906435916647866354,
                ),
            ),
            (
                c(-3.5, 0.25),
                c(
                    -1.58235634238929695095885753066,
                    -12.2189927597114464596813542424,
                ),
            ),
            (
                c(2.5, -7.0),
                c(
                    -6.15982326154129586908932686503,
                    -9.4865224125738955893677537208,
                ),
            ),
            (
                c(1e-3, 1e-3),
                c(
                    6.56060447383755261873645985533,
                    -0.785973734929653434847941926998,
                ),
            ),
        ];
        for (z, want) in cases {
            assert!(rel(log_gamma(z, 8).unwrap(), want) < 1e-13, "{z}");
        }
    }

    #[test]
    fn digamma_reference_values() {
        let cases = [
            (
                c(10.0, 10.0),
                c(
                    2.62415847494328884265789277313,
                    0.810814829568106897988540134204,
                ),
            ),
            (
                c(0.5, 100.0),
                c(
                    4.60516601924850419004313074097,
                    1.57079632679489661923132169164,
                ),
            ),
            (
                c(-3.5, 0.25),
                c(
                    1.3907909562906718874332345511,
                    1.99813576166085647786399821631,
                ),
            ),
            (
                c(1e-3, 1e-3),
                c(
                    -500.575570732995177051560876118,
                    500.001642532117673905049977929,
                ),
            ),
        ];
        for (z, want) in cases {
            assert!(rel(digamma(z).unwrap(), want) < 1e-13, "{z}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(x, 0.0), 8), Err(Error::Domain(_))));
            assert!(matches!(digamma(c(x, 0.0)), Err(Error::Domain(_))));
        }
        assert!(log_gamma(c(-1.5, 0.0), 8).is_ok());
        assert!(log_gamma(c(1.0, 0.0), MAX_STIRLING_ORDER + 1).is_err());
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        let z = c(0.3, 123.4);
        assert_eq!(
            log_gamma(z.conj(), 8).unwrap(),
            log_gamma(z, 8).unwrap().conj()
        );
        assert_eq!(digamma(z.conj()).unwrap(), digamma(z).unwrap().conj());
    }

    #[test]
    fn shifted_expansion_matches_plain() {
        let z = c(80.0, 60.0);
        for b in [0.0, 0.5, 1.0, 11.5] {
            let direct = log_gamma(z + b, 8).unwrap();
            let shifted = log_gamma_shifted(z, b, 8).unwrap();
            assert!((direct - shifted).norm() < 1e-12, "b = {b}");
        }
    }

    #[test]
    fn bernoulli_polynomials() {
        assert!((bernoulli_poly(2, 0.5) + 1.0 / 12.0).abs() < 1e-16);
        assert_eq!(bernoulli_poly(3, 0.0), 0.0);
        assert!((bernoulli_poly(4, 1.0) - bernoulli(4)).abs() < 1e-16);
    }
}
