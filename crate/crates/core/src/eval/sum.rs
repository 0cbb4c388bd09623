//! Compensated Dirichlet polynomials `Σ w(n) c_n n^{-a} e^{iθ log n}`.
//!
//! The index range is cut into fixed blocks that are summed in parallel and
//! merged in order, so results do not depend on the number of threads.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dd::DoubleDouble;

const BLOCK: usize = 1 << 14;

/// Above this size `θ log n` is formed in double-double before reduction.
const PHASE_SPLIT: f64 = (1u64 << 26) as f64;

/// Neumaier summation, separately on real and imaginary parts.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        neumaier(&mut self.sum.re, &mut self.comp.re, z.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, z.im);
    }

    pub(crate) fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// `θ log n` reduced to [-π, π).
pub(crate) fn phase(theta: f64, n: usize) -> f64 {
    let ln = (n as f64).ln();
    if (theta * ln).abs() <= PHASE_SPLIT {
        theta * ln
    } else {
        DoubleDouble::ln(n as f64).mul_f64(theta).rem_two_pi()
    }
}

/// `Σ_{n=1}^{m} w(n) c[n-1] n^{-a} e^{iθ log n}`.
pub(crate) fn dirichlet_poly<W>(c: &[f64], m: usize, a: f64, theta: f64, weight: W) -> Complex64
where
    W: Fn(usize) -> f64 + Sync,
{
    if m == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let blocks: Vec<CompensatedSum> = (0..m.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut acc = CompensatedSum::default();
            for n in (b * BLOCK + 1)..=((b + 1) * BLOCK).min(m) {
                let w = weight(n);
                if w == 0.0 {
                    continue;
                }
                let amp = w * c[n - 1] * (-a * (n as f64).ln()).exp();
                acc.add(Complex64::from_polar(amp, phase(theta, n)));
            }
            acc
        })
        .collect();
    let mut total = CompensatedSum::default();
    for b in &blocks {
        total.merge(b);
    }
    total.value()
}

/// Floor of a nonnegative cutoff as an index; `n <= x` includes `n = x`.
pub(crate) fn cutoff(x: f64) -> usize {
    if x < 1.0 {
        0
    } else {
        x.floor() as usize
    }
}
