//! Exact arithmetic in `Z[zeta_q]`, the ring of integers of the `q`-th
//! cyclotomic field.
//!
//! Elements are integer coefficient vectors of length `phi(q)` in the power
//! basis `1, zeta, ..., zeta^{phi(q)-1}`, kept reduced mod the cyclotomic
//! polynomial after every multiplication, so equality is plain vector
//! comparison. This backs the exact generalized transform: `|H_f(u)| = 1`
//! becomes an integer identity instead of a float comparison.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Coefficients of the `q`-th cyclotomic polynomial, ascending degree,
/// computed by exact division of `x^q - 1` by `Phi_d` over the proper
/// divisors `d | q`.
pub fn cyclotomic_phi(q: u32) -> Vec<i64> {
    assert!(q >= 1, "cyclotomic polynomial undefined for q = 0");
    // x^q - 1
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    for d in 1..q {
        if q % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_phi(d));
        }
    }
    num
}

/// Exact quotient of `num / den` for monic `den`; panics if not exact,
/// which cannot happen for cyclotomic divisors.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for j in 0..=dd {
                rem[k + j] -= c * den[j];
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division not exact");
    quot
}

/// An element of `Z[zeta_q]` in reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    q: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Reduced coefficients, length `phi(q)`.
    #[inline]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.q, other.q);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInt { q: self.q, coeffs }
    }

    pub fn sub(&self, other: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.q, other.q);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicInt { q: self.q, coeffs }
    }

    pub fn neg(&self) -> CyclotomicInt {
        CyclotomicInt { q: self.q, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: i64) -> CyclotomicInt {
        CyclotomicInt { q: self.q, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Divides every coefficient by `k`, erroring if any is not divisible.
    pub fn div_exact(&self, k: i64) -> Result<CyclotomicInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % k != 0 {
                return Err(Error::Internal("inexact division of cyclotomic coefficients"));
            }
            coeffs.push(c / k);
        }
        Ok(CyclotomicInt { q: self.q, coeffs })
    }
}

/// Precomputed reduction context for one modulus `q`.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    q: u32,
    phi: Vec<i64>,
    degree: usize,
    /// `pow[j]` = reduced coefficients of `x^j`, for `j` up to the largest
    /// exponent produced by a product of two reduced elements.
    pow: Vec<Vec<i64>>,
}

impl CyclotomicRing {
    pub fn new(q: u32) -> Result<Self> {
        if q == 0 || q > crate::function::MAX_Q {
            return Err(Error::InvalidModulus { q });
        }
        let phi = cyclotomic_phi(q);
        let degree = phi.len() - 1;
        let max_pow = (2 * degree).saturating_sub(1).max(q as usize);
        let mut pow: Vec<Vec<i64>> = Vec::with_capacity(max_pow + 1);
        for j in 0..=max_pow {
            if j < degree {
                let mut row = vec![0i64; degree];
                row[j] = 1;
                pow.push(row);
            } else {
                // x^j = x * x^{j-1}, reduced: shift then fold the top term
                // through x^degree = -(phi[0] + ... + phi[degree-1] x^{degree-1}).
                let prev = &pow[j - 1];
                let mut row = vec![0i64; degree];
                row[1..degree].copy_from_slice(&prev[..degree - 1]);
                let top = prev[degree - 1];
                if top != 0 {
                    for k in 0..degree {
                        row[k] -= top * phi[k];
                    }
                }
                pow.push(row);
            }
        }
        Ok(CyclotomicRing { q, phi, degree, pow })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of the cyclotomic polynomial, `phi(q)`.
    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn phi_poly(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(&self) -> CyclotomicInt {
        CyclotomicInt { q: self.q, coeffs: vec![0; self.degree] }
    }

    /// The rational integer `c` as a ring element.
    pub fn constant(&self, c: i64) -> CyclotomicInt {
        let mut coeffs = vec![0; self.degree];
        coeffs[0] = c;
        CyclotomicInt { q: self.q, coeffs }
    }

    /// `zeta^k`, reduced.
    pub fn zeta_pow(&self, k: u32) -> CyclotomicInt {
        let k = (k % self.q) as usize;
        CyclotomicInt { q: self.q, coeffs: self.pow[k].clone() }
    }

    /// Reduces a vector of coefficients of `1, zeta, ..., zeta^{len-1}`.
    pub fn reduce_powers(&self, powers: &[i64]) -> CyclotomicInt {
        assert!(powers.len() <= self.pow.len(), "exponent beyond reduction table");
        let mut coeffs = vec![0i64; self.degree];
        for (e, &c) in powers.iter().enumerate() {
            if c != 0 {
                for (k, &p) in self.pow[e].iter().enumerate() {
                    coeffs[k] += c * p;
                }
            }
        }
        CyclotomicInt { q: self.q, coeffs }
    }

    pub fn mul(&self, a: &CyclotomicInt, b: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(a.q, self.q);
        assert_eq!(b.q, self.q);
        let mut raw = vec![0i64; 2 * self.degree - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                raw[i + j] += ai * bj;
            }
        }
        self.reduce_powers(&raw)
    }

    /// Complex conjugation `zeta^k -> zeta^{q-k}`, applied on the power
    /// basis before re-reducing.
    pub fn conj(&self, a: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(a.q, self.q);
        let mut powers = vec![0i64; self.q as usize];
        for (j, &c) in a.coeffs.iter().enumerate() {
            let e = (self.q as usize - j) % self.q as usize;
            powers[e] += c;
        }
        self.reduce_powers(&powers)
    }

    /// Numeric embedding `zeta -> e^{2 pi i / q}`.
    pub fn embed(&self, a: &CyclotomicInt) -> Complex64 {
        assert_eq!(a.q, self.q);
        let step = std::f64::consts::TAU / f64::from(self.q);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                let angle = step * j as f64;
                acc += Complex64::new(angle.cos(), angle.sin()) * c as f64;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_phi(1), vec![-1, 1]);
        assert_eq!(cyclotomic_phi(2), vec![1, 1]);
        assert_eq!(cyclotomic_phi(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_phi(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_phi(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_phi(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_phi(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_power_wraps_and_reduces() {
        for q in [2u32, 4, 6, 8, 10, 12, 16, 24, 64] {
            let ring = CyclotomicRing::new(q).unwrap();
            assert_eq!(ring.zeta_pow(q), ring.constant(1));
            // zeta^{q/2} = -1 for even q.
            assert_eq!(ring.zeta_pow(q / 2), ring.constant(-1));
            // Sum of all q-th roots vanishes for q > 1.
            let mut acc = ring.zero();
            for k in 0..q {
                acc = acc.add(&ring.zeta_pow(k));
            }
            assert!(acc.is_zero(), "q = {q}");
        }
    }

    #[test]
    fn multiplication_matches_exponent_arithmetic() {
        for q in [6u32, 8, 12, 10] {
            let ring = CyclotomicRing::new(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    let prod = ring.mul(&ring.zeta_pow(a), &ring.zeta_pow(b));
                    assert_eq!(prod, ring.zeta_pow((a + b) % q));
                }
            }
        }
    }

    #[test]
    fn conjugation_inverts_roots() {
        for q in [4u32, 6, 8, 12, 16] {
            let ring = CyclotomicRing::new(q).unwrap();
            for k in 0..q {
                let z = ring.zeta_pow(k);
                assert_eq!(ring.conj(&z), ring.zeta_pow((q - k) % q));
                // z * conj(z) = 1 for roots of unity.
                assert_eq!(ring.mul(&z, &ring.conj(&z)), ring.constant(1));
            }
        }
    }

    #[test]
    fn embedding_matches_unit_circle() {
        let ring = CyclotomicRing::new(12).unwrap();
        for k in 0..12u32 {
            let z = ring.embed(&ring.zeta_pow(k));
            let angle = std::f64::consts::TAU * f64::from(k) / 12.0;
            assert!((z - Complex64::new(angle.cos(), angle.sin())).norm() < 1e-12);
        }
    }

    #[test]
    fn embedding_is_a_ring_hom() {
        let ring = CyclotomicRing::new(10).unwrap();
        let a = ring.reduce_powers(&[3, -1, 0, 2, 5, 0, 1, 0, 0, -4]);
        let b = ring.reduce_powers(&[0, 2, 2, -7, 0, 1, 0, 3, 1, 0]);
        let lhs = ring.embed(&ring.mul(&a, &b));
        let rhs = ring.embed(&a) * ring.embed(&b);
        assert!((lhs - rhs).norm() < 1e-9);
        // conj embeds to the complex conjugate
        assert!((ring.embed(&ring.conj(&a)) - ring.embed(&a).conj()).norm() < 1e-9);
    }
}
