//! Exact fast Walsh-Hadamard transform and Boolean spectral classification.
//!
//! All spectra here are unnormalized integers: `coeffs[u] = sum_x
//! (-1)^{f(x) ^ u.x}`. The `2^{-n/2}` factor of the normalized transform
//! exists only at display boundaries, so bent and semibent tests are exact
//! integer comparisons.

use crate::error::{Error, Result};
use crate::function::{dot2, BooleanFunction};

/// Unnormalized Walsh spectrum of a Boolean function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    coeffs: Vec<i64>,
}

/// In-place radix-2 butterfly, index-ascending. Applied to the +/-1
/// sequence of `f` it yields the unnormalized Walsh coefficients; applied
/// twice it multiplies the input by `2^n`.
pub fn fwht_in_place(data: &mut [i64]) {
    debug_assert!(data.len().is_power_of_two());
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
}

/// Fast Walsh-Hadamard transform of `f`, in `O(n 2^n)`.
pub fn fwht(f: &BooleanFunction) -> WalshSpectrum {
    let mut data: Vec<i64> =
        f.table().iter().map(|&v| 1 - 2 * i64::from(v)).collect();
    fwht_in_place(&mut data);
    WalshSpectrum { n: f.n(), coeffs: data }
}

impl WalshSpectrum {
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, u: u32) -> i64 {
        self.coeffs[u as usize]
    }

    /// Exponent of the `2^{-n/2}` display normalization.
    #[inline]
    pub fn norm_exponent(&self) -> f64 {
        f64::from(self.n) / 2.0
    }

    /// `coeffs[u] * 2^{-n/2}`.
    pub fn normalized(&self, u: u32) -> f64 {
        self.coeff(u) as f64 / (self.norm_exponent()).exp2()
    }

    /// True iff `|coeffs[u]| = 2^{n/2}` for all `u` (requires even `n`).
    pub fn is_bent(&self) -> bool {
        if self.n % 2 != 0 {
            return false;
        }
        let target = 1i64 << (self.n / 2);
        self.coeffs.iter().all(|&c| c.abs() == target)
    }

    /// True iff every coefficient lies in `{0, +/-2^{(n+1)/2}}`.
    pub fn is_semibent(&self) -> Result<bool> {
        if self.n % 2 == 0 {
            return Err(Error::ParityMismatch { required: "odd", n: self.n });
        }
        let target = 1i64 << ((self.n + 1) / 2);
        Ok(self.coeffs.iter().all(|&c| c == 0 || c.abs() == target))
    }

    /// Spectrum of `x -> g(x ^ alpha) ^ flip` from the spectrum of `g`,
    /// without recomputing a transform: the coefficient at `u` picks up the
    /// sign `(-1)^{flip} (-1)^{u . alpha}`.
    pub fn translated(&self, alpha: u32, flip: bool) -> WalshSpectrum {
        let flip_sign = if flip { -1 } else { 1 };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(u, &c)| {
                let s = if dot2(u as u32, alpha) == 1 { -flip_sign } else { flip_sign };
                s * c
            })
            .collect();
        WalshSpectrum { n: self.n, coeffs }
    }

    /// Spectrum of `x -> g(x) ^ (alpha . x) ^ flip`: the whole spectrum
    /// shifts by `alpha` and picks up `(-1)^{flip}`.
    pub fn affine_added(&self, alpha: u32, flip: bool) -> WalshSpectrum {
        let flip_sign: i64 = if flip { -1 } else { 1 };
        let coeffs = (0..self.coeffs.len() as u32)
            .map(|u| flip_sign * self.coeffs[(u ^ alpha) as usize])
            .collect();
        WalshSpectrum { n: self.n, coeffs }
    }
}

/// Bent test; `false` for odd `n` (bent functions only exist for even `n`).
pub fn is_bent(f: &BooleanFunction) -> bool {
    fwht(f).is_bent()
}

/// Semibent test for odd `n`; rejects even `n`.
pub fn is_semibent(f: &BooleanFunction) -> Result<bool> {
    fwht(f).is_semibent()
}

/// True iff the Walsh supports of `f` and `g` never overlap.
pub fn are_disjoint_spectra(f: &BooleanFunction, g: &BooleanFunction) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch { left: f.n(), right: g.n() });
    }
    let sf = fwht(f);
    let sg = fwht(g);
    Ok(sf.coeffs.iter().zip(&sg.coeffs).all(|(&a, &b)| a * b == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::GeneralizedFunction;
    use proptest::prelude::*;

    /// Naive O(4^n) double-sum oracle, kept independent of the butterfly.
    fn naive_wht(f: &BooleanFunction) -> Vec<i64> {
        let size = f.len() as u32;
        (0..size)
            .map(|u| {
                (0..size)
                    .map(|x| if (f.value(x) ^ dot2(u, x)) == 0 { 1i64 } else { -1 })
                    .sum()
            })
            .collect()
    }

    fn bf(n: u32, bits: &[u8]) -> BooleanFunction {
        BooleanFunction::new(n, bits.to_vec()).unwrap()
    }

    #[test]
    fn fwht_constant() {
        let f = BooleanFunction::constant(2, 0).unwrap();
        assert_eq!(fwht(&f).coeffs(), &[4, 0, 0, 0]);
    }

    #[test]
    fn fwht_canonical_bent() {
        // f(x) = x1 x2
        let f = bf(2, &[0, 0, 0, 1]);
        assert_eq!(fwht(&f).coeffs(), &[2, 2, 2, -2]);
    }

    #[test]
    fn fwht_matches_naive_oracle() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in 1..=10u32 {
            let table: Vec<u8> = (0..1u32 << n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) & 1) as u8
                })
                .collect();
            let f = BooleanFunction::new(n, table).unwrap();
            assert_eq!(fwht(&f).coeffs(), naive_wht(&f).as_slice(), "n = {n}");
        }
    }

    #[test]
    fn bent_classification() {
        assert!(is_bent(&bf(2, &[0, 0, 0, 1])));
        assert!(!is_bent(&BooleanFunction::constant(2, 0).unwrap()));
        // Odd n is never bent.
        assert!(!is_bent(&bf(1, &[0, 1])));

        let bent_count = (0..16u32)
            .filter(|&t| {
                let table: Vec<u8> = (0..4).map(|x| ((t >> x) & 1) as u8).collect();
                is_bent(&BooleanFunction::new(2, table).unwrap())
            })
            .count();
        assert_eq!(bent_count, 8);
    }

    #[test]
    fn semibent_classification() {
        let x1 = bf(1, &[0, 1]);
        assert_eq!(fwht(&x1).coeffs(), &[0, 2]);
        assert!(is_semibent(&x1).unwrap());

        let zero = BooleanFunction::constant(1, 0).unwrap();
        assert!(is_semibent(&zero).unwrap());

        // x1 x2 ^ x3
        let f = BooleanFunction::from_fn(3, |x| ((x & 1) & ((x >> 1) & 1) ^ (x >> 2) & 1) as u8)
            .unwrap();
        assert!(is_semibent(&f).unwrap());

        assert!(is_semibent(&bf(2, &[0, 0, 0, 1])).is_err());
    }

    #[test]
    fn disjoint_spectra() {
        let f = BooleanFunction::from_fn(2, |x| (x & 1) as u8).unwrap();
        let g = BooleanFunction::from_fn(2, |x| ((x >> 1) & 1) as u8).unwrap();
        assert!(are_disjoint_spectra(&f, &g).unwrap());
        assert!(!are_disjoint_spectra(&f, &f).unwrap());

        let x1 = bf(1, &[0, 1]);
        assert!(!are_disjoint_spectra(&x1, &x1.complement()).unwrap());

        assert!(are_disjoint_spectra(&x1, &g).is_err());
    }

    #[test]
    fn translate_identity_and_negation() {
        let f = bf(2, &[0, 1, 1, 1]);
        let s = fwht(&f);
        assert_eq!(s.translated(0, false), s);
        assert_eq!(
            s.translated(0, true).coeffs().to_vec(),
            s.coeffs().iter().map(|c| -c).collect::<Vec<_>>()
        );
        assert_eq!(s.affine_added(0, false), s);
    }

    #[test]
    fn translate_rules_match_recomputation() {
        let f = BooleanFunction::from_fn(4, |x| {
            ((x.wrapping_mul(0x2545_f491) >> 7) & 1) as u8
        })
        .unwrap();
        let s = fwht(&f);
        for alpha in 0..16u32 {
            for flip in [false, true] {
                let translated = BooleanFunction::from_fn(4, |x| {
                    f.value(x ^ alpha) ^ u8::from(flip)
                })
                .unwrap();
                assert_eq!(s.translated(alpha, flip), fwht(&translated));

                let affine = BooleanFunction::from_fn(4, |x| {
                    f.value(x) ^ dot2(alpha, x) ^ u8::from(flip)
                })
                .unwrap();
                assert_eq!(s.affine_added(alpha, flip), fwht(&affine));
            }
        }
    }

    #[test]
    fn bentness_is_affine_invariant() {
        let f = bf(2, &[0, 0, 0, 1]);
        let s = fwht(&f);
        assert!(s.is_bent());
        for alpha in 0..4u32 {
            for flip in [false, true] {
                assert!(s.translated(alpha, flip).is_bent());
                assert!(s.affine_added(alpha, flip).is_bent());
            }
        }
    }

    proptest! {
        #[test]
        fn involution_scales_by_size(table in proptest::collection::vec(0u8..2, 8)) {
            let f = BooleanFunction::new(3, table).unwrap();
            let mut data: Vec<i64> = f.table().iter().map(|&v| 1 - 2 * i64::from(v)).collect();
            let original = data.clone();
            fwht_in_place(&mut data);
            fwht_in_place(&mut data);
            let scaled: Vec<i64> = original.iter().map(|&v| v * 8).collect();
            prop_assert_eq!(data, scaled);
        }

        #[test]
        fn parseval_exact(n in 1u32..=8, seed in any::<u64>()) {
            let mut state = seed | 1;
            let table: Vec<u8> = (0..1u32 << n).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 60) & 1) as u8
            }).collect();
            let s = fwht(&BooleanFunction::new(n, table).unwrap());
            let total: i64 = s.coeffs().iter().map(|&c| c * c).sum();
            prop_assert_eq!(total, 1i64 << (2 * n));
            // Parity class: all coefficients share the parity of 2^n.
            prop_assert!(s.coeffs().iter().all(|&c| c % 2 == 0));
        }

        #[test]
        fn parse_serialize_round_trip(n in 1u32..=4, q_idx in 0usize..5, seed in any::<u64>()) {
            let q = [2u32, 4, 6, 10, 16][q_idx];
            let mut state = seed | 1;
            let table: Vec<u32> = (0..1u32 << n).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as u32) % q
            }).collect();
            let f = GeneralizedFunction::new(q, n, table).unwrap();
            let text = f.serialize();
            prop_assert_eq!(GeneralizedFunction::parse(&text).unwrap(), f);
        }
    }
}
