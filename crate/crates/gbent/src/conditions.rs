//! Gbent sufficiency predicates on the Walsh spectra of the component
//! combinations, plus the known exact characterizations for q = 4 and
//! q = 8.
//!
//! For a half-modulus representation with `p` low components, the column
//! `W(u)` collects the Walsh values of all `2^p` combinations
//! `a ^ z_i . low` at the point `u`. The even-n condition asks `W(u)` to be
//! a signed Sylvester-Hadamard row at every point (the row may vary with
//! `u`); the odd-n condition asks one half to vanish and the other to be a
//! signed row scaled by sqrt(2). All comparisons are unnormalized integer
//! comparisons.

use crate::alpha::{hadamard_entry, CombinedSpectra};
use crate::decompose::{ComponentDecomp, FformRep};
use crate::error::{Error, Result};
use crate::wht::WalshSpectrum;

/// Which half of the W-column vanished at a point (odd-n condition).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroHalf {
    Lower,
    Upper,
}

/// Outcome of a predicate at one transform point.
#[derive(Debug, Clone)]
pub struct PointOutcome {
    pub u: u32,
    pub ok: bool,
    /// Hadamard row index matched at this point, when one exists.
    pub matched_row: Option<u32>,
    /// Global sign of the match: +1, -1, or 0 when undetermined.
    pub sign: i8,
    /// Branch taken by the odd-n condition.
    pub zero_half: Option<ZeroHalf>,
}

/// First failure, if any.
#[derive(Debug, Clone)]
pub struct FailureWitness {
    pub u: u32,
    pub reason: String,
}

/// Full per-point account of a predicate evaluation.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub overall: bool,
    pub per_point: Vec<PointOutcome>,
    pub failure: Option<FailureWitness>,
}

impl ConditionReport {
    fn from_points(per_point: Vec<PointOutcome>, gate_failure: Option<FailureWitness>) -> Self {
        let mut failure = gate_failure;
        let mut overall = true;
        for point in &per_point {
            if !point.ok {
                overall = false;
                if failure.is_none() {
                    failure = Some(FailureWitness {
                        u: point.u,
                        reason: "no signed Hadamard row matches the W-column".into(),
                    });
                }
                break;
            }
        }
        if failure.is_some() {
            overall = false;
        }
        ConditionReport { overall, per_point, failure }
    }
}

fn require_parity(n: u32, even: bool) -> Result<()> {
    if (n % 2 == 0) != even {
        return Err(Error::ParityMismatch { required: if even { "even" } else { "odd" }, n });
    }
    Ok(())
}

fn require_q(q: u32, expected: u32) -> Result<()> {
    if q != expected {
        return Err(Error::ModulusMismatch { required: format!("= {expected}"), got: q });
    }
    Ok(())
}

/// Even-n sufficiency condition: every combination is bent and at each
/// point the W-column equals a signed Hadamard row of order `2^p`.
pub fn check_triangle(rep: &FformRep) -> Result<ConditionReport> {
    require_parity(rep.n(), true)?;
    let batch = CombinedSpectra::for_fform(rep);
    Ok(triangle_on_batch(&batch, rep.n(), rep.p()))
}

pub(crate) fn triangle_on_batch(batch: &CombinedSpectra, n: u32, p: u32) -> ConditionReport {
    let magnitude = 1i64 << (n / 2);
    let per_point = (0..1u32 << n)
        .map(|u| {
            let w = batch.w_vector(u);
            match match_hadamard_row(&w.entries, magnitude) {
                Some((row, sign)) => PointOutcome {
                    u,
                    ok: true,
                    matched_row: Some(row),
                    sign,
                    zero_half: None,
                },
                None => PointOutcome { u, ok: false, matched_row: None, sign: 0, zero_half: None },
            }
        })
        .collect();
    let _ = p;
    ConditionReport::from_points(per_point, None)
}

/// Matches `entries` against `sign * magnitude * H^(row)`; the row index is
/// read off the signs at the power-of-two positions, then verified.
fn match_hadamard_row(entries: &[i64], magnitude: i64) -> Option<(u32, i8)> {
    if entries[0].abs() != magnitude {
        return None;
    }
    let sign: i8 = if entries[0] > 0 { 1 } else { -1 };
    let mut row = 0u32;
    let mut bit = 0;
    let mut probe = 1usize;
    while probe < entries.len() {
        if entries[probe].abs() != magnitude {
            return None;
        }
        if (entries[probe] > 0) != (sign > 0) {
            row |= 1 << bit;
        }
        probe <<= 1;
        bit += 1;
    }
    let signed = i64::from(sign) * magnitude;
    for (i, &w) in entries.iter().enumerate() {
        if w != signed * hadamard_entry(row, i as u32) {
            return None;
        }
    }
    Some((row, sign))
}

/// Odd-n sufficiency condition, requiring `q = 2^{p+1}`: every combination
/// is semibent and at each point one half of the W-column vanishes while
/// the other equals a signed Hadamard row of order `2^{p-1}` scaled by
/// `2^{(n+1)/2}`.
pub fn check_square(rep: &FformRep) -> Result<ConditionReport> {
    require_parity(rep.n(), false)?;
    let p = rep.p();
    if p == 0 || rep.q() != 1u32 << (p + 1) {
        return Err(Error::ModulusMismatch {
            required: format!("= 2^(p+1) = {} (a power of two)", 1u64 << (p + 1)),
            got: rep.q(),
        });
    }
    let batch = CombinedSpectra::for_fform(rep);
    Ok(square_on_batch(&batch, rep.n(), p))
}

pub(crate) fn square_on_batch(batch: &CombinedSpectra, n: u32, p: u32) -> ConditionReport {
    let magnitude = 1i64 << ((n + 1) / 2);
    let half = 1usize << (p - 1);
    let gate = (0..1u32 << p).find_map(|i| {
        match batch.spectrum(i).is_semibent() {
            Ok(true) => None,
            _ => Some(FailureWitness {
                u: 0,
                reason: format!("combination {i} is not semibent"),
            }),
        }
    });
    let per_point = (0..1u32 << n)
        .map(|u| {
            let w = batch.w_vector(u);
            let lower_zero = w.entries[..half].iter().all(|&v| v == 0);
            let upper_zero = w.entries[half..].iter().all(|&v| v == 0);
            let (zero_half, live) = match (lower_zero, upper_zero) {
                (true, false) => (ZeroHalf::Lower, &w.entries[half..]),
                (false, true) => (ZeroHalf::Upper, &w.entries[..half]),
                _ => {
                    return PointOutcome {
                        u,
                        ok: false,
                        matched_row: None,
                        sign: 0,
                        zero_half: None,
                    }
                }
            };
            match match_hadamard_row(live, magnitude) {
                Some((row, sign)) => PointOutcome {
                    u,
                    ok: true,
                    matched_row: Some(row),
                    sign,
                    zero_half: Some(zero_half),
                },
                None => PointOutcome {
                    u,
                    ok: false,
                    matched_row: None,
                    sign: 0,
                    zero_half: Some(zero_half),
                },
            }
        })
        .collect();
    ConditionReport::from_points(per_point, gate)
}

/// Recursion form of the even-n condition: per point there are per-level
/// signs `s_t` with `W_{i + 2^{t-1}}(u) = s_t W_i(u)` for all `i < 2^{t-1}`.
/// The sign equalities alone do not constrain magnitudes, so the bent gate
/// is kept to agree with [`check_triangle`] on every input.
pub fn check_recursive_form(rep: &FformRep) -> Result<ConditionReport> {
    require_parity(rep.n(), true)?;
    let batch = CombinedSpectra::for_fform(rep);
    let gate = bent_gate(&batch, rep.n());
    let per_point = (0..1u32 << rep.n())
        .map(|u| {
            let w = batch.w_vector(u);
            let mut row = 0u32;
            let mut determined = true;
            let mut ok = true;
            for t in 1..=rep.p() {
                let offset = 1usize << (t - 1);
                match level_sign(&w.entries, offset) {
                    LevelSign::Consistent(sign) => {
                        if sign < 0 {
                            row |= 1 << (t - 1);
                        }
                    }
                    LevelSign::Free => determined = false,
                    LevelSign::Inconsistent => {
                        ok = false;
                        break;
                    }
                }
            }
            let sign: i8 = if w.entries[0] > 0 {
                1
            } else if w.entries[0] < 0 {
                -1
            } else {
                0
            };
            PointOutcome {
                u,
                ok,
                matched_row: (ok && determined && sign != 0).then_some(row),
                sign: if ok { sign } else { 0 },
                zero_half: None,
            }
        })
        .collect();
    Ok(ConditionReport::from_points(per_point, gate))
}

enum LevelSign {
    Consistent(i8),
    Free,
    Inconsistent,
}

/// One sign for the whole level: `entries[i + offset] = s * entries[i]`
/// for all `i < offset`.
fn level_sign(entries: &[i64], offset: usize) -> LevelSign {
    let mut sign: Option<i8> = None;
    for i in 0..offset {
        let (a, b) = (entries[i], entries[i + offset]);
        if a == 0 && b == 0 {
            continue;
        }
        if a == 0 || b == 0 || a.abs() != b.abs() {
            return LevelSign::Inconsistent;
        }
        let s: i8 = if (a > 0) == (b > 0) { 1 } else { -1 };
        match sign {
            None => sign = Some(s),
            Some(prev) if prev != s => return LevelSign::Inconsistent,
            _ => {}
        }
    }
    match sign {
        Some(s) => LevelSign::Consistent(s),
        None => LevelSign::Free,
    }
}

/// Product form of the recursion: per level `t`, the product of the first
/// `2^{t-1}` W-values equals the product of the next `2^{t-1}` (the level
/// sign cancels for `t >= 2`; for `t = 1` only the magnitudes must agree).
/// Requires all combinations bent; given that gate, products of values
/// `+/-2^{n/2}` reduce to sign parities, which avoids overflow.
pub fn check_product_form(rep: &FformRep) -> Result<ConditionReport> {
    require_parity(rep.n(), true)?;
    let batch = CombinedSpectra::for_fform(rep);
    let gate = bent_gate(&batch, rep.n());
    if let Some(gate) = gate {
        let per_point = Vec::new();
        return Ok(ConditionReport { overall: false, per_point, failure: Some(gate) });
    }
    let per_point = (0..1u32 << rep.n())
        .map(|u| {
            let w = batch.w_vector(u);
            let mut ok = true;
            for t in 1..=rep.p() {
                let offset = 1usize << (t - 1);
                if t == 1 {
                    if w.entries[0].abs() != w.entries[1].abs() {
                        ok = false;
                        break;
                    }
                    continue;
                }
                let negatives_lhs =
                    w.entries[..offset].iter().filter(|&&v| v < 0).count();
                let negatives_rhs =
                    w.entries[offset..2 * offset].iter().filter(|&&v| v < 0).count();
                if negatives_lhs % 2 != negatives_rhs % 2 {
                    ok = false;
                    break;
                }
            }
            PointOutcome { u, ok, matched_row: None, sign: 0, zero_half: None }
        })
        .collect();
    Ok(ConditionReport::from_points(per_point, None))
}

fn bent_gate(batch: &CombinedSpectra, n: u32) -> Option<FailureWitness> {
    let magnitude = 1i64 << (n / 2);
    for i in 0..batch.len() as u32 {
        let spectrum = batch.spectrum(i);
        if let Some(u) = spectrum.coeffs().iter().position(|&c| c.abs() != magnitude) {
            return Some(FailureWitness {
                u: u as u32,
                reason: format!("combination {i} is not bent"),
            });
        }
    }
    None
}

/// The four q = 8 combinations `a_2, a_0^a_2, a_1^a_2, a_0^a_1^a_2`.
fn octal_quadruple(d: &ComponentDecomp) -> [WalshSpectrum; 4] {
    [
        crate::wht::fwht(&d.combined(0b100)),
        crate::wht::fwht(&d.combined(0b101)),
        crate::wht::fwht(&d.combined(0b110)),
        crate::wht::fwht(&d.combined(0b111)),
    ]
}

/// Exact q = 8 even-n characterization: the quadruple is bent and
/// `W_{a_0^a_2} W_{a_1^a_2} = W_{a_2} W_{a_0^a_1^a_2}` at every point.
pub fn check_q8_star(d: &ComponentDecomp) -> Result<ConditionReport> {
    require_q(d.q(), 8)?;
    require_parity(d.n(), true)?;
    let [s0, s1, s2, s3] = octal_quadruple(d);
    let magnitude = 1i64 << (d.n() / 2);
    let mut gate = None;
    for (i, s) in [&s0, &s1, &s2, &s3].iter().enumerate() {
        if let Some(u) = s.coeffs().iter().position(|&c| c.abs() != magnitude) {
            gate = Some(FailureWitness {
                u: u as u32,
                reason: format!("quadruple member {i} is not bent"),
            });
            break;
        }
    }
    let per_point = (0..1u32 << d.n())
        .map(|u| {
            let ok = s1.coeff(u) * s2.coeff(u) == s0.coeff(u) * s3.coeff(u);
            PointOutcome { u, ok, matched_row: None, sign: 0, zero_half: None }
        })
        .collect();
    Ok(ConditionReport::from_points(per_point, gate))
}

/// Exact q = 8 odd-n characterization: the quadruple is semibent and at
/// each point one of the pairs `(W_{a_2}, W_{a_0^a_2})`,
/// `(W_{a_1^a_2}, W_{a_0^a_1^a_2})` vanishes while the other has magnitude
/// `2^{(n+1)/2}`.
pub fn check_q8_starstar(d: &ComponentDecomp) -> Result<ConditionReport> {
    require_q(d.q(), 8)?;
    require_parity(d.n(), false)?;
    let [s0, s1, s2, s3] = octal_quadruple(d);
    let mut gate = None;
    for (i, s) in [&s0, &s1, &s2, &s3].iter().enumerate() {
        if !s.is_semibent().unwrap_or(false) {
            gate = Some(FailureWitness {
                u: 0,
                reason: format!("quadruple member {i} is not semibent"),
            });
            break;
        }
    }
    let magnitude = 1i64 << ((d.n() + 1) / 2);
    let per_point = (0..1u32 << d.n())
        .map(|u| {
            let (w0, w1, w2, w3) = (s0.coeff(u), s1.coeff(u), s2.coeff(u), s3.coeff(u));
            let first_zero =
                w0 == 0 && w1 == 0 && w2.abs() == magnitude && w3.abs() == magnitude;
            let second_zero =
                w2 == 0 && w3 == 0 && w0.abs() == magnitude && w1.abs() == magnitude;
            PointOutcome {
                u,
                ok: first_zero || second_zero,
                matched_row: None,
                sign: 0,
                zero_half: if first_zero {
                    Some(ZeroHalf::Lower)
                } else if second_zero {
                    Some(ZeroHalf::Upper)
                } else {
                    None
                },
            }
        })
        .collect();
    Ok(ConditionReport::from_points(per_point, gate))
}

/// Exact q = 4 characterization: `a_1` and `a_0 ^ a_1` bent.
pub fn check_q4(d: &ComponentDecomp) -> Result<ConditionReport> {
    require_q(d.q(), 4)?;
    require_parity(d.n(), true)?;
    let magnitude = 1i64 << (d.n() / 2);
    let pair = [crate::wht::fwht(&d.combined(0b10)), crate::wht::fwht(&d.combined(0b11))];
    let mut gate = None;
    for (i, s) in pair.iter().enumerate() {
        if let Some(u) = s.coeffs().iter().position(|&c| c.abs() != magnitude) {
            gate = Some(FailureWitness {
                u: u as u32,
                reason: format!("{} is not bent", if i == 0 { "a_1" } else { "a_0 ^ a_1" }),
            });
            break;
        }
    }
    let per_point = (0..1u32 << d.n())
        .map(|u| {
            let ok = pair[0].coeff(u).abs() == magnitude && pair[1].coeff(u).abs() == magnitude;
            PointOutcome { u, ok, matched_row: None, sign: 0, zero_half: None }
        })
        .collect();
    Ok(ConditionReport::from_points(per_point, gate))
}

/// Sufficiency dispatch: the even-n row condition for any even q, or the
/// odd-n split condition when `q = 2^{p+1}`. A `true` report guarantees
/// the reassembled function is gbent.
pub fn certify_sufficient(rep: &FformRep) -> Result<ConditionReport> {
    if rep.n() % 2 == 0 {
        check_triangle(rep)
    } else {
        check_square(rep)
    }
}

/// The two disjoint-spectra pairings suggested for the odd-n condition:
/// complementary indices `i, 2^p - 1 - i` versus half-shifted indices
/// `i, i + 2^{p-1}`. Both are reported; neither is assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingDiagnostics {
    pub complement_pairing_disjoint: bool,
    pub half_shift_pairing_disjoint: bool,
}

impl PairingDiagnostics {
    pub fn agree(&self) -> bool {
        self.complement_pairing_disjoint == self.half_shift_pairing_disjoint
    }
}

pub fn square_pairing_diagnostics(rep: &FformRep) -> Result<PairingDiagnostics> {
    let p = rep.p();
    if p == 0 {
        return Err(Error::ModulusMismatch { required: ">= 4".into(), got: rep.q() });
    }
    let batch = CombinedSpectra::for_fform(rep);
    let count = 1usize << p;
    let half = count / 2;
    let mut complement = true;
    let mut half_shift = true;
    for u in 0..1u32 << rep.n() {
        let w = batch.w_vector(u);
        for i in 0..half {
            if w.entries[i] * w.entries[count - 1 - i] != 0 {
                complement = false;
            }
            if w.entries[i] * w.entries[i + half] != 0 {
                half_shift = false;
            }
        }
    }
    Ok(PairingDiagnostics {
        complement_pairing_disjoint: complement,
        half_shift_pairing_disjoint: half_shift,
    })
}
