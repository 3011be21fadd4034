//! The Hadamard linear system behind the component expansion of the
//! generalized transform, and the transform routes it enables.
//!
//! For components `a_0, ..., a_{p-1}` the `2^p` sign functions
//! `Theta_i(x) = (-1)^{z_i . (a_0(x), ..., a_{p-1}(x))}` evaluate, at every
//! point, to a row of the Sylvester-Hadamard matrix `H_{2^p}`. Solving
//! `H Lambda = B` with `B_k = zeta^{k mod q}` therefore yields coefficients
//! `alpha_i` with `zeta^{low(x)} = sum_i alpha_i Theta_i(x)` identically,
//! which turns the generalized transform into a linear combination of plain
//! Walsh transforms of XOR-combinations of the components.
//!
//! Every `alpha_i` is `2^{-p}` times a cyclotomic integer; both the exact
//! scaled form and a float mirror are kept so that reconstruction can be
//! checked to be *exactly* zero.

use crate::cyclotomic::{CyclotomicInt, CyclotomicRing};
use crate::decompose::{ComponentDecomp, FformRep};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gwht::GwhtSpectrum;
use crate::wht::{fwht, fwht_in_place, WalshSpectrum};
use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Cap on the basis exponent: `2^p` coefficients.
pub const MAX_P: u32 = 12;

/// Entry `(r, c)` of the Sylvester-Hadamard matrix `H_{2^k}`, i.e.
/// `(-1)^{popcount(r & c)}`. Rows are evaluations of linear forms; the
/// matrix itself is never materialized.
#[inline]
pub fn hadamard_entry(r: u32, c: u32) -> i64 {
    if (r & c).count_ones() & 1 == 1 {
        -1
    } else {
        1
    }
}

/// Right-hand side of the system: `entries[k] = zeta^{(z_k . (1, 2, 4, ...))
/// mod q}`, which with power-of-two coefficients is just `zeta^{k mod q}`.
#[derive(Debug, Clone)]
pub struct BVector {
    q: u32,
    p: u32,
    entries: Vec<CyclotomicInt>,
}

impl BVector {
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn entries(&self) -> &[CyclotomicInt] {
        &self.entries
    }
}

pub fn b_vector(ring: &CyclotomicRing, p: u32) -> Result<BVector> {
    if p > MAX_P {
        return Err(Error::BasisTooLarge { p });
    }
    let entries = (0..1u32 << p).map(|k| ring.zeta_pow(k)).collect();
    Ok(BVector { q: ring.q(), p, entries })
}

/// The solved coefficient column `Lambda = 2^{-p} H B`.
///
/// `scaled[i]` is the cyclotomic integer `2^p alpha_i`; `float[i]` is
/// `alpha_i` itself.
#[derive(Debug, Clone)]
pub struct AlphaVector {
    q: u32,
    p: u32,
    scaled: Vec<CyclotomicInt>,
    float: Vec<Complex64>,
}

impl AlphaVector {
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Exact `2^p alpha_i`.
    #[inline]
    pub fn scaled(&self) -> &[CyclotomicInt] {
        &self.scaled
    }

    #[inline]
    pub fn float(&self) -> &[Complex64] {
        &self.float
    }
}

/// Solves `H_{2^p} Lambda = B` for the given modulus. The inverse of the
/// Sylvester-Hadamard matrix is `2^{-p}` times itself, so the solve is one
/// butterfly pass per cyclotomic coordinate.
pub fn solve_alpha(q: u32, p: u32) -> Result<AlphaVector> {
    let ring = CyclotomicRing::new(q)?;
    solve_alpha_in(&ring, p)
}

pub fn solve_alpha_in(ring: &CyclotomicRing, p: u32) -> Result<AlphaVector> {
    let b = b_vector(ring, p)?;
    let size = 1usize << p;
    let degree = ring.degree();
    let mut columns = vec![vec![0i64; size]; degree];
    for (k, entry) in b.entries.iter().enumerate() {
        for (j, &c) in entry.coeffs().iter().enumerate() {
            columns[j][k] = c;
        }
    }
    for column in columns.iter_mut() {
        fwht_in_place(column);
    }
    let scaled: Vec<CyclotomicInt> = (0..size)
        .map(|i| {
            let powers: Vec<i64> = columns.iter().map(|col| col[i]).collect();
            ring.reduce_powers(&powers)
        })
        .collect();
    let float = scaled
        .iter()
        .map(|s| ring.embed(s) / f64::from(1u32 << p))
        .collect();
    Ok(AlphaVector { q: ring.q(), p, scaled, float })
}

/// Bit pattern `(a_0(x), ..., a_{p-1}(x))` packed LSB-first.
pub fn component_pattern(components: &[BooleanFunction], x: u32) -> u32 {
    components
        .iter()
        .enumerate()
        .map(|(j, c)| u32::from(c.value(x)) << j)
        .sum()
}

/// `Theta_i(x) = (-1)^{z_i . (a_0(x), ..., a_{p-1}(x))}`.
#[inline]
pub fn theta_eval(components: &[BooleanFunction], i: u32, x: u32) -> i64 {
    hadamard_entry(i, component_pattern(components, x))
}

/// Outcome of checking `zeta^{low(x)} = sum_i alpha_i Theta_i(x)` pointwise.
#[derive(Debug, Clone)]
pub struct ReconstructReport {
    /// The identity holds exactly in `Z[zeta_q]` at every point.
    pub exact_zero: bool,
    /// `max_x |zeta^{low(x)} - sum_i alpha_i Theta_i(x)|` in floats.
    pub max_deviation: f64,
    /// The reconstructed complex value at each point.
    pub values: Vec<Complex64>,
}

/// Reconstruction check for the half-modulus form: the target exponent at
/// `x` is the low part `sum_{i<p} 2^i a_i(x)`, excluding the `(q/2) a` term.
pub fn reconstruct_fform(rep: &FformRep, alpha: &AlphaVector) -> Result<ReconstructReport> {
    check_params(alpha, rep.q(), rep.p())?;
    reconstruct(rep.q(), rep.n(), rep.low(), alpha, |x| rep.low_value(x))
}

/// Reconstruction check for the full base-2 decomposition (`p = h`); the
/// target exponent is `f(x)` itself, reduced mod `q`.
pub fn reconstruct_components(
    d: &ComponentDecomp,
    alpha: &AlphaVector,
) -> Result<ReconstructReport> {
    let h = d.params().h();
    check_params(alpha, d.q(), h)?;
    reconstruct(d.q(), d.n(), d.components(), alpha, |x| {
        component_pattern(d.components(), x) % d.q()
    })
}

fn reconstruct(
    q: u32,
    n: u32,
    components: &[BooleanFunction],
    alpha: &AlphaVector,
    exponent: impl Fn(u32) -> u32,
) -> Result<ReconstructReport> {
    let ring = CyclotomicRing::new(q)?;
    let count = 1u32 << components.len();
    let scale = i64::from(1u32 << alpha.p);
    let mut exact_zero = true;
    let mut max_deviation = 0.0f64;
    let mut values = Vec::with_capacity(1 << n);
    for x in 0..1u32 << n {
        let pattern = component_pattern(components, x);
        let mut acc = ring.zero();
        for i in 0..count {
            let term = if hadamard_entry(i, pattern) == 1 {
                alpha.scaled[i as usize].clone()
            } else {
                alpha.scaled[i as usize].neg()
            };
            acc = acc.add(&term);
        }
        let target = ring.zeta_pow(exponent(x)).scale(scale);
        if acc != target {
            exact_zero = false;
        }
        let value = ring.embed(&acc) / scale as f64;
        let dev = (value - ring.embed(&ring.zeta_pow(exponent(x)))).norm();
        max_deviation = max_deviation.max(dev);
        values.push(value);
    }
    Ok(ReconstructReport { exact_zero, max_deviation, values })
}

/// Column of unnormalized Walsh values of all XOR-combinations at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WVector {
    pub u: u32,
    pub entries: Vec<i64>,
}

/// `S = H_{2^p} W`, computed by one butterfly pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SVector {
    pub u: u32,
    pub entries: Vec<i64>,
}

impl WVector {
    pub fn to_s_vector(&self) -> SVector {
        let mut entries = self.entries.clone();
        fwht_in_place(&mut entries);
        SVector { u: self.u, entries }
    }
}

/// Spectra of all `2^p` XOR-combinations, each transformed once and then
/// read per point. Memory is `2^p * 2^n` integers; keep `p + n <= 26`.
#[derive(Debug, Clone)]
pub struct CombinedSpectra {
    n: u32,
    spectra: Vec<WalshSpectrum>,
}

impl CombinedSpectra {
    /// Combinations `a ^ z_i . low` of a half-modulus representation.
    pub fn for_fform(rep: &FformRep) -> Self {
        Self::build(rep.n(), rep.p(), |i| rep.combined(i))
    }

    /// Combinations `z_i . components` of a base-2 decomposition.
    pub fn for_components(d: &ComponentDecomp) -> Self {
        Self::build(d.n(), d.params().h(), |i| d.combined(i))
    }

    fn build(n: u32, p: u32, combined: impl Fn(u32) -> BooleanFunction + Sync) -> Self {
        #[cfg(feature = "parallel")]
        let spectra = (0..1u32 << p).into_par_iter().map(|i| fwht(&combined(i))).collect();
        #[cfg(not(feature = "parallel"))]
        let spectra = (0..1u32 << p).map(|i| fwht(&combined(i))).collect();
        CombinedSpectra { n, spectra }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.spectra.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.spectra.is_empty()
    }

    #[inline]
    pub fn spectrum(&self, i: u32) -> &WalshSpectrum {
        &self.spectra[i as usize]
    }

    pub fn w_vector(&self, u: u32) -> WVector {
        WVector { u, entries: self.spectra.iter().map(|s| s.coeff(u)).collect() }
    }
}

/// Generalized transform via the linear-combination route
/// `H_f(u) = sum_i alpha_i W_i(u)` for a half-modulus representation.
/// The output is exact and agrees with the direct route coefficient by
/// coefficient.
pub fn gwht_linear(rep: &FformRep) -> Result<GwhtSpectrum> {
    let ring = CyclotomicRing::new(rep.q())?;
    let alpha = solve_alpha_in(&ring, rep.p())?;
    let batch = CombinedSpectra::for_fform(rep);
    gwht_from_combinations(&ring, rep.n(), &alpha, &batch)
}

/// Same route for the full base-2 decomposition (`p = h`, no `(q/2) a`
/// term pulled out).
pub fn gwht_linear_components(d: &ComponentDecomp) -> Result<GwhtSpectrum> {
    let ring = CyclotomicRing::new(d.q())?;
    let alpha = solve_alpha_in(&ring, d.params().h())?;
    let batch = CombinedSpectra::for_components(d);
    gwht_from_combinations(&ring, d.n(), &alpha, &batch)
}

fn gwht_from_combinations(
    ring: &CyclotomicRing,
    n: u32,
    alpha: &AlphaVector,
    batch: &CombinedSpectra,
) -> Result<GwhtSpectrum> {
    let scale = i64::from(1u32 << alpha.p);
    let mut exact = Vec::with_capacity(1 << n);
    for u in 0..1u32 << n {
        let mut acc = ring.zero();
        for (i, scaled) in alpha.scaled.iter().enumerate() {
            let w = batch.spectrum(i as u32).coeff(u);
            if w != 0 {
                acc = acc.add(&scaled.scale(w));
            }
        }
        // The linear combination is 2^p H(u); divisibility is an identity,
        // not a rounding step.
        exact.push(acc.div_exact(scale)?);
    }
    Ok(GwhtSpectrum::from_exact(ring, n, exact))
}

/// Single-point version of the linear route, normalized.
pub fn gwht_linear_point(
    rep: &FformRep,
    alpha: &AlphaVector,
    batch: &CombinedSpectra,
    u: u32,
) -> Result<Complex64> {
    check_params(alpha, rep.q(), rep.p())?;
    let w = batch.w_vector(u);
    let value: Complex64 = alpha
        .float
        .iter()
        .zip(&w.entries)
        .map(|(a, &wi)| a * wi as f64)
        .sum();
    Ok(value / (f64::from(rep.n()) / 2.0).exp2())
}

/// Cap on the implicit-formula oracle; the subset triple sum is
/// exponential in `h`.
pub const MAX_IMPLICIT_H: u32 = 5;

/// Literal evaluation of the implicit subset-sum formula
/// `H_f(u) = 2^{-h} sum_{I} zeta^{sum_{i in I} 2^i} sum_{J subset I, K
/// subset complement(I)} (-1)^{|J|} W_{xor of a_t, t in J union K}(u)`.
/// Oracle use only; must equal the direct route.
pub fn gwht_implicit_oracle(d: &ComponentDecomp) -> Result<GwhtSpectrum> {
    let h = d.params().h();
    if h > MAX_IMPLICIT_H {
        return Err(Error::WidthTooLarge { h });
    }
    let ring = CyclotomicRing::new(d.q())?;
    let batch = CombinedSpectra::for_components(d);
    let size = 1u32 << d.n();
    let masks = 1u32 << h;
    let scale = i64::from(masks);
    let mut exact = Vec::with_capacity(size as usize);
    let mut powers = vec![0i64; d.q() as usize];
    for u in 0..size {
        powers.iter_mut().for_each(|c| *c = 0);
        for set in 0..masks {
            let complement = !set & (masks - 1);
            let mut coeff = 0i64;
            // All (J, K) with J inside `set`, K inside its complement.
            let mut j = set;
            loop {
                let j_sign = if j.count_ones() & 1 == 1 { -1i64 } else { 1 };
                let mut k = complement;
                loop {
                    coeff += j_sign * batch.spectrum(j | k).coeff(u);
                    if k == 0 {
                        break;
                    }
                    k = (k - 1) & complement;
                }
                if j == 0 {
                    break;
                }
                j = (j - 1) & set;
            }
            powers[(set % d.q()) as usize] += coeff;
        }
        exact.push(ring.reduce_powers(&powers).div_exact(scale)?);
    }
    Ok(GwhtSpectrum::from_exact(&ring, d.n(), exact))
}

/// `2^{2p} |H|^2` from the S-column in the trigonometric form
/// `(sum S_k cos(2 pi k / q))^2 + (sum S_k sin(2 pi k / q))^2`.
pub fn magnitude_sq_trig_form(s: &[i64], q: u32) -> f64 {
    let step = std::f64::consts::TAU / f64::from(q);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (k, &sk) in s.iter().enumerate() {
        let angle = step * k as f64;
        re += sk as f64 * angle.cos();
        im += sk as f64 * angle.sin();
    }
    re * re + im * im
}

/// The same quantity expanded into the shifted-product form
/// `sum S_k^2 + 2 sum_k cos(2 pi k / q) sum_i S_i S_{i+k}`.
pub fn magnitude_sq_correlation_form(s: &[i64], q: u32) -> f64 {
    let step = std::f64::consts::TAU / f64::from(q);
    let mut total: f64 = s.iter().map(|&v| (v * v) as f64).sum();
    for k in 1..s.len() {
        let mut corr = 0i64;
        for i in 0..s.len() - k {
            corr += s[i] * s[i + k];
        }
        total += 2.0 * (step * k as f64).cos() * corr as f64;
    }
    total
}

/// Normalized `|H_f(u)|^2` of a half-modulus representation computed
/// through the S-column; must match the direct route.
pub fn magnitude_sq_via_s(rep: &FformRep, batch: &CombinedSpectra, u: u32) -> f64 {
    let s = batch.w_vector(u).to_s_vector();
    let p = rep.p();
    let denom = (1u64 << (2 * p)) as f64 * (1u64 << rep.n()) as f64;
    magnitude_sq_correlation_form(&s.entries, rep.q()) / denom
}

fn check_params(alpha: &AlphaVector, q: u32, p: u32) -> Result<()> {
    if alpha.q != q || alpha.p != p {
        return Err(Error::ParamMismatch { expected: (alpha.q, alpha.p), got: (q, p) });
    }
    Ok(())
}
