//! Arithmetic coefficients of the Rankin–Selberg series.
//!
//! For a normalized Hecke eigenform with Fourier coefficients `a(n)` of
//! weight κ this module builds
//!
//! * `c_n = n^{1-κ} Σ_{m² | n} m^{2(κ-1)} a(n/m²)²`, the coefficients of Z(s),
//! * `b_n = Σ_{d | n} μ(d) c_{n/d}`, the coefficients of B(s) = Z(s)/ζ(s).
//!
//! Both are kept exactly as integers over the common denominator `n^{κ-1}`
//! ([`ScaledSequence`]); a double-precision copy of `c_n` is cached for the
//! evaluation routines.

mod io;
mod sieve;
mod tau;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use io::{
    export_coefficients, ingest_coefficients, load_table, save_table, write_csv, Ingested,
    CACHE_MAGIC, CACHE_VERSION,
};
pub use sieve::{divisor_count_sieve, mobius_sieve};
pub use tau::build_tau;

/// Where the coefficients `a(n)` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSource {
    /// Ramanujan's Δ, κ = 12, generated in-process.
    BuiltinDiscriminant,
    /// Read from a user-supplied file or a cache.
    ExternalFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenformSpec {
    weight: u32,
    source: CoefficientSource,
    max_n: usize,
}

impl EigenformSpec {
    pub fn new(weight: u32, source: CoefficientSource, max_n: usize) -> Result<Self> {
        if weight < 12 || weight % 2 != 0 {
            return Err(Error::InvalidWeight(weight as i64, 12));
        }
        if source == CoefficientSource::BuiltinDiscriminant && weight != 12 {
            return Err(Error::InvalidParameter(format!(
                "the built-in discriminant form has weight 12, not {weight}"
            )));
        }
        if max_n == 0 {
            return Err(Error::InvalidParameter(
                "table length must be positive".into(),
            ));
        }
        Ok(Self {
            weight,
            source,
            max_n,
        })
    }

    pub fn discriminant(max_n: usize) -> Result<Self> {
        Self::new(12, CoefficientSource::BuiltinDiscriminant, max_n)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn source(&self) -> CoefficientSource {
        self.source
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }
}

/// A sequence of rationals `num[n] / n^{κ-1}`, n = 1..=N (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledSequence {
    kappa: u32,
    num: Vec<BigInt>,
}

impl ScaledSequence {
    pub(crate) fn from_numerators(kappa: u32, num: Vec<BigInt>) -> Self {
        Self { kappa, num }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Numerator over `n^{κ-1}`.
    pub fn numer(&self, n: usize) -> &BigInt {
        &self.num[n - 1]
    }

    pub fn denom(&self, n: usize) -> BigInt {
        BigInt::from(n).pow(self.kappa - 1)
    }

    /// The value in lowest terms, denominator positive.
    pub fn reduced(&self, n: usize) -> (BigInt, BigInt) {
        let num = self.numer(n).clone();
        let den = self.denom(n);
        let g = num.gcd(&den);
        if g.is_zero() {
            (num, den)
        } else {
            (num / &g, den / g)
        }
    }

    pub fn to_f64(&self, n: usize) -> f64 {
        ratio_to_f64(self.numer(n), &self.denom(n))
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }
}

/// `num / den` rounded to double, robust to operands beyond the f64 range.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    if nb < 1000 && db < 1000 {
        return num.to_f64().unwrap() / den.to_f64().unwrap();
    }
    // Keep 64 significant bits of each, then rescale.
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let n = (num >> ns as usize).to_f64().unwrap();
    let d = (den >> ds as usize).to_f64().unwrap();
    (n / d) * 2f64.powi((ns - ds) as i32)
}

/// `c_n` from the Fourier coefficients `a` (a[0] = a(1)).
///
/// Returned as numerators over `n^{κ-1}`:
/// `c_n · n^{κ-1} = Σ_{m² | n} m^{2(κ-1)} a(n/m²)²`.
pub fn build_c(a: &[BigInt], kappa: u32, n_max: usize) -> Result<ScaledSequence> {
    if kappa < 2 {
        return Err(Error::InvalidWeight(kappa as i64, 2));
    }
    if a.len() < n_max {
        return Err(Error::Length {
            needed: n_max,
            available: a.len(),
        });
    }
    if n_max > 0 && !a[0].is_one() {
        return Err(Error::Normalization(a[0].to_string()));
    }
    let mut num: Vec<BigInt> = a[..n_max].iter().map(|x| x * x).collect();
    let mut m = 2usize;
    while m * m <= n_max {
        let weight = BigInt::from(m).pow(2 * (kappa - 1));
        let sq = m * m;
        for k in 1..=n_max / sq {
            let extra = &weight * &a[k - 1] * &a[k - 1];
            num[k * sq - 1] += extra;
        }
        m += 1;
    }
    Ok(ScaledSequence::from_numerators(kappa, num))
}

/// Möbius inversion `b_n = Σ_{d | n} μ(d) c_{n/d}`.
///
/// With the common denominator: `b_n n^{κ-1} = Σ_{d | n} μ(d) d^{κ-1} (c_{n/d} (n/d)^{κ-1})`.
/// Sieve order (d outer, multiples inner), O(N log N) big-integer operations.
pub fn build_b(c: &ScaledSequence, n_max: usize) -> Result<ScaledSequence> {
    if c.len() < n_max {
        return Err(Error::Length {
            needed: n_max,
            available: c.len(),
        });
    }
    let mu = mobius_sieve(n_max);
    let mut num = vec![BigInt::zero(); n_max];
    for d in 1..=n_max {
        if mu[d] == 0 {
            continue;
        }
        let mut scale = BigInt::from(d).pow(c.kappa - 1);
        if mu[d] < 0 {
            scale = -scale;
        }
        for k in 1..=n_max / d {
            num[d * k - 1] += &scale * c.numer(k);
        }
    }
    Ok(ScaledSequence::from_numerators(c.kappa, num))
}

/// An immutable coefficient table `a(n), c_n, b_n` for n = 1..=N.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    spec: EigenformSpec,
    a: Vec<BigInt>,
    c: ScaledSequence,
    b: ScaledSequence,
    c_float: Vec<f64>,
}

/// Tables compare by content; provenance is ignored.
impl PartialEq for CoefficientTable {
    fn eq(&self, other: &Self) -> bool {
        self.spec.weight == other.spec.weight
            && self.spec.max_n == other.spec.max_n
            && self.a == other.a
            && self.c == other.c
            && self.b == other.b
    }
}

impl CoefficientTable {
    /// Ramanujan's Δ (a(n) = τ(n), κ = 12) up to `max_n`.
    pub fn discriminant(max_n: usize) -> Result<Self> {
        let spec = EigenformSpec::discriminant(max_n)?;
        let a = build_tau(max_n)?;
        Self::from_coefficients(spec, a)
    }

    pub fn from_coefficients(spec: EigenformSpec, a: Vec<BigInt>) -> Result<Self> {
        let n = spec.max_n;
        if a.len() != n {
            return Err(Error::Length {
                needed: n,
                available: a.len(),
            });
        }
        let c = build_c(&a, spec.weight, n)?;
        let b = build_b(&c, n)?;
        Ok(Self::assemble(spec, a, c, b))
    }

    pub(crate) fn assemble(
        spec: EigenformSpec,
        a: Vec<BigInt>,
        c: ScaledSequence,
        b: ScaledSequence,
    ) -> Self {
        let c_float = (1..=c.len()).map(|n| c.to_f64(n)).collect();
        Self {
            spec,
            a,
            c,
            b,
            c_float,
        }
    }

    pub fn spec(&self) -> &EigenformSpec {
        &self.spec
    }

    pub fn weight(&self) -> u32 {
        self.spec.weight
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// a(n), 1-based.
    pub fn a(&self, n: usize) -> &BigInt {
        &self.a[n - 1]
    }

    pub fn a_values(&self) -> &[BigInt] {
        &self.a
    }

    pub fn c(&self) -> &ScaledSequence {
        &self.c
    }

    pub fn b(&self) -> &ScaledSequence {
        &self.b
    }

    /// `c_n` as doubles, index 0 ↔ n = 1.
    pub fn c_f64(&self) -> &[f64] {
        &self.c_float
    }

    /// Σ a(n) mod 2^61 - 1, the integrity checksum used by the cache format.
    pub fn checksum(&self) -> u64 {
        let m = BigInt::from(CHECKSUM_MODULUS);
        let mut acc = BigInt::zero();
        for v in &self.a {
            acc += v;
        }
        acc.mod_floor(&m).to_u64().unwrap()
    }

    pub fn require(&self, n: usize) -> Result<()> {
        if n > self.len() {
            return Err(Error::TableTooShort {
                needed: n,
                available: self.len(),
            });
        }
        Ok(())
    }

    /// Checks every structural invariant exactly.
    pub fn verify(&self) -> InvariantReport {
        let n_max = self.len();
        let kappa = self.spec.weight;
        let mut report = InvariantReport {
            normalized: self.a.first().is_some_and(|v| v.is_one()),
            ..Default::default()
        };

        report.nonnegative_violations = (1..=n_max)
            .filter(|&n| self.c.numer(n).is_negative())
            .collect();

        let d = divisor_count_sieve(n_max);
        let powers: Vec<BigInt> = (1..=n_max)
            .map(|k| BigInt::from(k).pow(kappa - 1))
            .collect();
        for n in 1..=n_max {
            // a(n)^2 <= n^{κ-1} d(n)^2
            let lhs = self.a(n) * self.a(n);
            let rhs = &powers[n - 1] * BigInt::from(d[n]).pow(2);
            if lhs > rhs {
                report.deligne_violations.push(n);
            }
        }

        // c_{mn} = c_m c_n for coprime m, n: numerators multiply exactly.
        for m in 2..=n_max {
            if m * m > n_max {
                break;
            }
            for n in (m + 1)..=(n_max / m) {
                if m.gcd(&n) != 1 {
                    continue;
                }
                report.coprime_pairs_checked += 1;
                if *self.c.numer(m * n) != self.c.numer(m) * self.c.numer(n) {
                    report.multiplicativity_violations.push((m, n));
                }
            }
        }

        // Σ_{d | n} b_d = c_n  ⇔  Σ_{d | n} num_b(d) (n/d)^{κ-1} = num_c(n)
        let mut acc = vec![BigInt::zero(); n_max];
        for dd in 1..=n_max {
            let bd = self.b.numer(dd);
            if bd.is_zero() {
                continue;
            }
            for k in 1..=n_max / dd {
                acc[dd * k - 1] += &powers[k - 1] * bd;
            }
        }
        report.inversion_violations = (1..=n_max)
            .filter(|&n| acc[n - 1] != *self.c.numer(n))
            .collect();

        // μ-forward direction: recompute b from c and compare.
        match build_b(&self.c, n_max) {
            Ok(b) if b == self.b => {}
            _ => report.inversion_violations.push(0),
        }
        report
    }
}

pub(crate) const CHECKSUM_MODULUS: u64 = (1 << 61) - 1;

/// Outcome of [`CoefficientTable::verify`]. Violation lists hold the offending n.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub normalized: bool,
    pub nonnegative_violations: Vec<usize>,
    pub deligne_violations: Vec<usize>,
    pub multiplicativity_violations: Vec<(usize, usize)>,
    pub coprime_pairs_checked: usize,
    /// `0` marks a mismatch between stored b and b recomputed from c.
    pub inversion_violations: Vec<usize>,
}

impl InvariantReport {
    pub fn all_hold(&self) -> bool {
        self.normalized
            && self.nonnegative_violations.is_empty()
            && self.deligne_violations.is_empty()
            && self.multiplicativity_violations.is_empty()
            && self.inversion_violations.is_empty()
    }
}

/// `max_{n <= N} c_n / n^{0.1}` for N = start, 2·start, ... up to the table length.
///
/// Reported only: sub-polynomial growth of c_n shows up as a non-increasing
/// sequence once N is moderately large.
pub fn growth_diagnostic(table: &CoefficientTable, start: usize) -> Vec<(usize, f64)> {
    let c = table.c_f64();
    let mut out = Vec::new();
    let mut running = 0.0f64;
    let mut next = start.max(1);
    for (i, &v) in c.iter().enumerate() {
        let n = i + 1;
        running = running.max(v / (n as f64).powf(0.1));
        if n == next {
            out.push((n, running));
            next *= 2;
        }
    }
    out
}

/// `Σ_{n <= N} b_n² / N`, a mean-square size diagnostic for b_n.
pub fn b_mean_square(table: &CoefficientTable) -> f64 {
    let n = table.len();
    let s: f64 = (1..=n).map(|k| table.b().to_f64(k).powi(2)).sum();
    s / n as f64
}
