//! Generalized Walsh-Hadamard transform `H_f(u) = 2^{-n/2} sum_x
//! zeta^{f(x)} (-1)^{u.x}` with two backends sharing one contract.
//!
//! The exact backend accumulates unnormalized coefficients in `Z[zeta_q]`
//! and decides gbentness by the integer identity `H(u) conj(H(u)) = 2^n`;
//! the float backend is a complex butterfly for triage in large sweeps.
//! Exact spectra keep the `2^{-n/2}` normalization symbolic; the stored
//! float mirror is normalized.

use crate::cyclotomic::{CyclotomicInt, CyclotomicRing};
use crate::error::{Error, Result};
use crate::function::{dot2, GeneralizedFunction};
use crate::wht::fwht_in_place;
use num_complex::Complex64;

/// Spectrum of a generalized Boolean function.
///
/// `exact[u]` is the unnormalized coefficient as a cyclotomic integer;
/// `float[u]` is the normalized complex value embedded from it.
#[derive(Debug, Clone)]
pub struct GwhtSpectrum {
    n: u32,
    q: u32,
    exact: Vec<CyclotomicInt>,
    float: Vec<Complex64>,
}

impl GwhtSpectrum {
    pub(crate) fn from_exact(ring: &CyclotomicRing, n: u32, exact: Vec<CyclotomicInt>) -> Self {
        let scale = (f64::from(n) / 2.0).exp2();
        let float = exact.iter().map(|e| ring.embed(e) / scale).collect();
        GwhtSpectrum { n, q: ring.q(), exact, float }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Unnormalized exact coefficients.
    #[inline]
    pub fn exact(&self) -> &[CyclotomicInt] {
        &self.exact
    }

    /// Normalized complex coefficients.
    #[inline]
    pub fn float(&self) -> &[Complex64] {
        &self.float
    }
}

/// Literal double-sum evaluation of the defining formula, `O(q + 4^n)`
/// integer operations. Serves as the oracle for the faster routes.
pub fn gwht_direct(f: &GeneralizedFunction) -> Result<GwhtSpectrum> {
    let ring = CyclotomicRing::new(f.q())?;
    gwht_direct_in(&ring, f)
}

pub fn gwht_direct_in(ring: &CyclotomicRing, f: &GeneralizedFunction) -> Result<GwhtSpectrum> {
    check_ring(ring, f)?;
    let size = f.len() as u32;
    let q = f.q() as usize;
    let mut exact = Vec::with_capacity(size as usize);
    let mut powers = vec![0i64; q];
    for u in 0..size {
        powers.iter_mut().for_each(|c| *c = 0);
        for x in 0..size {
            let sign = if dot2(u, x) == 1 { -1 } else { 1 };
            powers[f.value(x) as usize] += sign;
        }
        exact.push(ring.reduce_powers(&powers));
    }
    Ok(GwhtSpectrum::from_exact(ring, f.n(), exact))
}

/// Fast path: split the defining sum by output value. With `T_k` the
/// `(-1)^{u.x}`-transform of the 0/1 indicator of `{x : f(x) = k}`,
/// the coefficient is `sum_k zeta^k T_k(u)`; cost `O(q n 2^n)`.
pub fn gwht_bucketed(f: &GeneralizedFunction) -> Result<GwhtSpectrum> {
    let ring = CyclotomicRing::new(f.q())?;
    gwht_bucketed_in(&ring, f)
}

pub fn gwht_bucketed_in(ring: &CyclotomicRing, f: &GeneralizedFunction) -> Result<GwhtSpectrum> {
    check_ring(ring, f)?;
    let size = f.len();
    let q = f.q() as usize;
    let mut buckets: Vec<Vec<i64>> = vec![vec![0i64; size]; q];
    for (x, &v) in f.table().iter().enumerate() {
        buckets[v as usize][x] = 1;
    }
    for bucket in buckets.iter_mut() {
        fwht_in_place(bucket);
    }
    let mut powers = vec![0i64; q];
    let exact = (0..size)
        .map(|u| {
            for (k, bucket) in buckets.iter().enumerate() {
                powers[k] = bucket[u];
            }
            ring.reduce_powers(&powers)
        })
        .collect();
    Ok(GwhtSpectrum::from_exact(ring, f.n(), exact))
}

/// Independent float backend: complex butterfly over the sequence
/// `zeta^{f(x)}`, normalized by `2^{-n/2}`. Used for triage only; the
/// exact backend is the ground truth.
pub fn gwht_float(f: &GeneralizedFunction) -> Vec<Complex64> {
    let step = f.params().zeta_angle();
    let roots: Vec<Complex64> = (0..f.q())
        .map(|k| {
            let a = step * f64::from(k);
            Complex64::new(a.cos(), a.sin())
        })
        .collect();
    let mut data: Vec<Complex64> = f.table().iter().map(|&v| roots[v as usize]).collect();
    let len = data.len();
    let mut stride = 1;
    while stride < len {
        let mut base = 0;
        while base < len {
            for i in base..base + stride {
                let a = data[i];
                let b = data[i + stride];
                data[i] = a + b;
                data[i + stride] = a - b;
            }
            base += 2 * stride;
        }
        stride <<= 1;
    }
    let scale = (f64::from(f.n()) / 2.0).exp2();
    data.iter_mut().for_each(|z| *z /= scale);
    data
}

/// Which backend decides the gbent verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbentMode {
    Exact,
    Float,
}

/// Verdict plus the worst-deviation diagnostics.
#[derive(Debug, Clone)]
pub struct GbentReport {
    pub gbent: bool,
    pub mode: GbentMode,
    /// Point with the largest `||H(u)| - 1|` (float measurement in both
    /// modes; the exact verdict itself is integer-only).
    pub worst_u: u32,
    pub worst_deviation: f64,
}

/// Default tolerance for the float verdict.
pub const FLOAT_EPSILON: f64 = 1e-6;

/// Decides `|H_f(u)| = 1` for all `u`.
pub fn is_gbent(f: &GeneralizedFunction, mode: GbentMode) -> Result<GbentReport> {
    match mode {
        GbentMode::Exact => {
            let ring = CyclotomicRing::new(f.q())?;
            let spectrum = gwht_bucketed_in(&ring, f)?;
            Ok(is_gbent_exact(&ring, &spectrum))
        }
        GbentMode::Float => Ok(is_gbent_float(f, FLOAT_EPSILON)),
    }
}

/// Exact verdict: `H(u) conj(H(u)) = 2^n` in `Z[zeta_q]` for every `u`.
pub fn is_gbent_exact(ring: &CyclotomicRing, spectrum: &GwhtSpectrum) -> GbentReport {
    let target = ring.constant(1i64 << spectrum.n());
    let mut gbent = true;
    for value in spectrum.exact() {
        let norm = ring.mul(value, &ring.conj(value));
        if norm != target {
            gbent = false;
            break;
        }
    }
    let (worst_u, worst_deviation) = worst_float_deviation(spectrum.float());
    GbentReport { gbent, mode: GbentMode::Exact, worst_u, worst_deviation }
}

/// Float verdict with tolerance `epsilon` on `||H(u)| - 1|`.
pub fn is_gbent_float(f: &GeneralizedFunction, epsilon: f64) -> GbentReport {
    let float = gwht_float(f);
    let (worst_u, worst_deviation) = worst_float_deviation(&float);
    GbentReport {
        gbent: worst_deviation <= epsilon,
        mode: GbentMode::Float,
        worst_u,
        worst_deviation,
    }
}

fn worst_float_deviation(values: &[Complex64]) -> (u32, f64) {
    let mut worst_u = 0u32;
    let mut worst = 0.0f64;
    for (u, z) in values.iter().enumerate() {
        let dev = (z.norm() - 1.0).abs();
        if dev > worst {
            worst = dev;
            worst_u = u as u32;
        }
    }
    (worst_u, worst)
}

fn check_ring(ring: &CyclotomicRing, f: &GeneralizedFunction) -> Result<()> {
    if ring.q() != f.q() {
        return Err(Error::ParamMismatch {
            expected: (ring.q(), 0),
            got: (f.q(), 0),
        });
    }
    Ok(())
}
