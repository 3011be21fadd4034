//! Conversions between a generalized function and its two canonical
//! component representations: the base-2 expansion `f = sum_i 2^i a_i`
//! and the half-modulus form `f = (q/2) a + sum_{i<p} 2^i a_i`.

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, GeneralizedFunction, ParamQ};

/// The unique base-2 component decomposition of `f`: `a_i(x)` is bit `i`
/// of `f(x)`, so `sum_i 2^i a_i(x) = f(x)` as integers.
#[derive(Debug, Clone)]
pub struct ComponentDecomp {
    params: ParamQ,
    n: u32,
    components: Vec<BooleanFunction>,
}

impl ComponentDecomp {
    /// Assembles a decomposition from hand-built components (length `h`).
    pub fn new(q: u32, components: Vec<BooleanFunction>) -> Result<Self> {
        let params = ParamQ::new(q)?;
        if components.len() != params.h() as usize {
            return Err(Error::LengthMismatch {
                left: components.len(),
                right: params.h() as usize,
            });
        }
        let n = components[0].n();
        for c in &components {
            if c.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: c.n() });
            }
        }
        Ok(ComponentDecomp { params, n, components })
    }

    #[inline]
    pub fn params(&self) -> ParamQ {
        self.params
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.params.q()
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn components(&self) -> &[BooleanFunction] {
        &self.components
    }

    /// The XOR-combination `z_{i,0} a_0 ^ ... ^ z_{i,h-1} a_{h-1}` selected
    /// by the bits of `i`.
    pub fn combined(&self, i: u32) -> BooleanFunction {
        combine(self.n, &self.components, i, None)
    }

    /// Replaces component `which` (used by the affine-variant generator).
    pub fn with_component(&self, which: usize, replacement: BooleanFunction) -> Result<Self> {
        if replacement.n() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: replacement.n() });
        }
        let mut components = self.components.clone();
        components[which] = replacement;
        Ok(ComponentDecomp { params: self.params, n: self.n, components })
    }
}

/// The form `f = (q/2) a + a_0 + 2 a_1 + ... + 2^{p-1} a_{p-1} (mod q)`.
///
/// The canonical extraction has `p = h - 1` and the low part below `q/2`;
/// hand-built representations with smaller `p` are also supported.
#[derive(Debug, Clone)]
pub struct FformRep {
    params: ParamQ,
    n: u32,
    p: u32,
    a: BooleanFunction,
    low: Vec<BooleanFunction>,
}

impl FformRep {
    pub fn new(q: u32, a: BooleanFunction, low: Vec<BooleanFunction>) -> Result<Self> {
        let params = ParamQ::new(q)?;
        let p = low.len() as u32;
        if p > params.h().saturating_sub(1) {
            return Err(Error::LengthMismatch {
                left: low.len(),
                right: params.h() as usize - 1,
            });
        }
        let n = a.n();
        for c in &low {
            if c.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: c.n() });
            }
        }
        Ok(FformRep { params, n, p, a, low })
    }

    #[inline]
    pub fn params(&self) -> ParamQ {
        self.params
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.params.q()
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of low components.
    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// The component carrying the `q/2` coefficient.
    #[inline]
    pub fn a(&self) -> &BooleanFunction {
        &self.a
    }

    #[inline]
    pub fn low(&self) -> &[BooleanFunction] {
        &self.low
    }

    /// The combined function `a ^ z_{i,0} a_0 ^ ... ^ z_{i,p-1} a_{p-1}`.
    pub fn combined(&self, i: u32) -> BooleanFunction {
        combine(self.n, &self.low, i, Some(&self.a))
    }

    /// The low part `sum 2^i a_i(x)` at `x`.
    pub fn low_value(&self, x: u32) -> u32 {
        self.low
            .iter()
            .enumerate()
            .map(|(i, c)| u32::from(c.value(x)) << i)
            .sum()
    }

    /// Reassembles the table, `(q/2) a(x) + low(x) mod q`.
    pub fn to_function(&self) -> GeneralizedFunction {
        let q = self.q();
        GeneralizedFunction::from_fn(q, self.n, |x| {
            ((q / 2) * u32::from(self.a.value(x)) + self.low_value(x)) % q
        })
        .expect("table values reduced mod q")
    }
}

/// A sum `f(x) = sum c_i b_i(x) mod q` with arbitrary coefficients
/// `c_i` in `Z_q`.
#[derive(Debug, Clone)]
pub struct GeneralFormSpec {
    params: ParamQ,
    n: u32,
    terms: Vec<(u32, BooleanFunction)>,
}

impl GeneralFormSpec {
    pub fn new(q: u32, terms: Vec<(u32, BooleanFunction)>) -> Result<Self> {
        let params = ParamQ::new(q)?;
        if terms.is_empty() {
            return Err(Error::Parse("general form needs at least one term".into()));
        }
        let n = terms[0].1.n();
        for (c, b) in &terms {
            if *c >= q {
                return Err(Error::ValueOutOfRange { x: 0, value: *c, q });
            }
            if b.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: b.n() });
            }
        }
        Ok(GeneralFormSpec { params, n, terms })
    }

    #[inline]
    pub fn terms(&self) -> &[(u32, BooleanFunction)] {
        &self.terms
    }
}

/// Component extraction: `a_i(x)` = bit `i` of `f(x)`.
pub fn to_components(f: &GeneralizedFunction) -> ComponentDecomp {
    let h = f.h();
    let components = (0..h)
        .map(|i| {
            BooleanFunction::from_fn(f.n(), |x| ((f.value(x) >> i) & 1) as u8)
                .expect("n validated by the source function")
        })
        .collect();
    ComponentDecomp { params: f.params(), n: f.n(), components }
}

/// Inverse of [`to_components`]; errors if some `sum 2^i a_i(x)` lands
/// outside `Z_q` (possible for hand-built decompositions when `q < 2^h`).
pub fn from_components(d: &ComponentDecomp) -> Result<GeneralizedFunction> {
    let q = d.q();
    let mut table = Vec::with_capacity(1 << d.n());
    for x in 0..1u32 << d.n() {
        let value: u64 = d
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| u64::from(c.value(x)) << i)
            .sum();
        if value >= u64::from(q) {
            return Err(Error::ComponentOverflow { x: x as usize, value, q });
        }
        table.push(value as u32);
    }
    GeneralizedFunction::new(q, d.n(), table)
}

/// Evaluates `sum c_i b_i(x) mod q` pointwise.
pub fn evaluate_general_form(spec: &GeneralFormSpec) -> GeneralizedFunction {
    let q = spec.params.q();
    GeneralizedFunction::from_fn(q, spec.n, |x| {
        let acc: u64 = spec
            .terms
            .iter()
            .map(|(c, b)| u64::from(*c) * u64::from(b.value(x)))
            .sum();
        (acc % u64::from(q)) as u32
    })
    .expect("values reduced mod q")
}

/// Canonical half-modulus extraction: `a(x) = floor(f(x) / (q/2))`, the low
/// components are the binary digits of `f(x) mod q/2`, and `p = h - 1`.
/// For `q = 2^h` this coincides with the base-2 decomposition with
/// `a = a_{h-1}`. Alternative `(a, low)` solutions mod `q` exist when
/// `q < 2^h`; they are not enumerated here.
pub fn to_fform(f: &GeneralizedFunction) -> FformRep {
    let q = f.q();
    let half = q / 2;
    let p = f.h() - 1;
    let a = BooleanFunction::from_fn(f.n(), |x| (f.value(x) / half) as u8)
        .expect("n validated by the source function");
    let low = (0..p)
        .map(|i| {
            BooleanFunction::from_fn(f.n(), |x| (((f.value(x) % half) >> i) & 1) as u8)
                .expect("n validated by the source function")
        })
        .collect();
    FformRep { params: f.params(), n: f.n(), p, a, low }
}

fn combine(
    n: u32,
    components: &[BooleanFunction],
    i: u32,
    base: Option<&BooleanFunction>,
) -> BooleanFunction {
    debug_assert!((i as usize) < (1 << components.len()));
    BooleanFunction::from_fn(n, |x| {
        let mut acc = base.map_or(0, |b| b.value(x));
        for (j, c) in components.iter().enumerate() {
            if (i >> j) & 1 == 1 {
                acc ^= c.value(x);
            }
        }
        acc
    })
    .expect("n validated by the components")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo_table(q: u32, n: u32, seed: u64) -> GeneralizedFunction {
        let mut state = seed | 1;
        GeneralizedFunction::from_fn(q, n, |_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as u32) % q
        })
        .unwrap()
    }

    #[test]
    fn binary_digit_extraction() {
        let f = GeneralizedFunction::new(8, 2, vec![0, 1, 2, 3]).unwrap();
        let d = to_components(&f);
        assert_eq!(d.components()[0].table(), &[0, 1, 0, 1]);
        assert_eq!(d.components()[1].table(), &[0, 0, 1, 1]);
        assert_eq!(d.components()[2].table(), &[0, 0, 0, 0]);
    }

    #[test]
    fn round_trips() {
        for (q, n, seed) in [(8u32, 3u32, 1u64), (6, 2, 2), (12, 4, 3), (16, 2, 4), (10, 3, 5)] {
            let f = pseudo_table(q, n, seed);
            assert_eq!(from_components(&to_components(&f)).unwrap(), f);
        }
    }

    #[test]
    fn overflow_detected() {
        // q = 6: setting bits 1 and 2 at one point yields 6 >= q.
        let one = BooleanFunction::constant(1, 1).unwrap();
        let zero = BooleanFunction::constant(1, 0).unwrap();
        let d = ComponentDecomp::new(6, vec![zero, one.clone(), one]).unwrap();
        assert!(matches!(
            from_components(&d),
            Err(Error::ComponentOverflow { x: 0, value: 6, q: 6 })
        ));
    }

    #[test]
    fn general_form_example_values() {
        // f = 2 b0 + 3 b1 at q = 6 over the four (b0, b1) cases.
        let b0 = BooleanFunction::from_fn(2, |x| (x & 1) as u8).unwrap();
        let b1 = BooleanFunction::from_fn(2, |x| ((x >> 1) & 1) as u8).unwrap();
        let spec = GeneralFormSpec::new(6, vec![(2, b0), (3, b1)]).unwrap();
        let f = evaluate_general_form(&spec);
        // x = 1 -> (1, 0) -> 2; x = 2 -> (0, 1) -> 3; x = 3 -> (1, 1) -> 5.
        assert_eq!(f.table(), &[0, 2, 3, 5]);

        // The base-2 components: a_0 = b1 and a_1 = b0 ^ b1 everywhere;
        // a_2 = b0 & b1 vanishes exactly when b0, b1 are disjointly valued.
        let d = to_components(&f);
        assert_eq!(d.components()[0].table(), &[0, 0, 1, 1]);
        assert_eq!(d.components()[1].table(), &[0, 1, 1, 0]);
        assert_eq!(d.components()[2].table(), &[0, 0, 0, 1]);
    }

    #[test]
    fn general_form_disjoint_identification() {
        // Disjointly valued b0, b1: the identification a_2 = 0 is exact.
        let b0 = BooleanFunction::new(2, vec![0, 1, 0, 0]).unwrap();
        let b1 = BooleanFunction::new(2, vec![0, 0, 1, 0]).unwrap();
        let spec = GeneralFormSpec::new(6, vec![(2, b0.clone()), (3, b1.clone())]).unwrap();
        let d = to_components(&evaluate_general_form(&spec));
        assert_eq!(d.components()[0], b1);
        assert_eq!(d.components()[1], b0.xor(&b1).unwrap());
        assert!(d.components()[2].table().iter().all(|&v| v == 0));
    }

    #[test]
    fn single_term_lifts() {
        let b = BooleanFunction::new(2, vec![1, 0, 1, 1]).unwrap();
        let spec = GeneralFormSpec::new(4, vec![(1, b.clone())]).unwrap();
        assert_eq!(evaluate_general_form(&spec), b.lift(4).unwrap());
    }

    #[test]
    fn general_form_matches_naive_evaluation() {
        let b0 = pseudo_table(2, 3, 41).as_boolean().unwrap();
        let b1 = pseudo_table(2, 3, 42).as_boolean().unwrap();
        let b2 = pseudo_table(2, 3, 43).as_boolean().unwrap();
        let spec =
            GeneralFormSpec::new(10, vec![(7, b0.clone()), (4, b1.clone()), (9, b2.clone())])
                .unwrap();
        let f = evaluate_general_form(&spec);
        for x in 0..8u32 {
            let expected = (7 * u32::from(b0.value(x))
                + 4 * u32::from(b1.value(x))
                + 9 * u32::from(b2.value(x)))
                % 10;
            assert_eq!(f.value(x), expected);
        }
    }

    #[test]
    fn fform_canonical_extraction() {
        let f = GeneralizedFunction::new(8, 2, vec![4, 5, 6, 7]).unwrap();
        let rep = to_fform(&f);
        assert_eq!(rep.p(), 2);
        assert!(rep.a().table().iter().all(|&v| v == 1));
        assert_eq!(rep.low()[0].table(), &[0, 1, 0, 1]);
        assert_eq!(rep.low()[1].table(), &[0, 0, 1, 1]);

        let g = GeneralizedFunction::new(6, 1, vec![3, 4]).unwrap();
        let rep = to_fform(&g);
        assert_eq!(rep.p(), 2);
        assert_eq!(rep.a().table(), &[1, 1]);
        assert_eq!(rep.low()[0].table(), &[0, 1]);
        assert_eq!(rep.low()[1].table(), &[0, 0]);
    }

    #[test]
    fn fform_reconstruction() {
        for (q, seed) in [(4u32, 1u64), (6, 2), (8, 3), (10, 4), (12, 5), (16, 6)] {
            let f = pseudo_table(q, 3, seed);
            assert_eq!(to_fform(&f).to_function(), f, "q = {q}");
        }
    }

    #[test]
    fn combined_functions_xor_components() {
        let f = pseudo_table(8, 3, 9);
        let d = to_components(&f);
        let rep = to_fform(&f);
        // Base-2 route: combined(0b101) = a_0 ^ a_2.
        let expected = d.components()[0].xor(&d.components()[2]).unwrap();
        assert_eq!(d.combined(0b101), expected);
        // Half-modulus route always XORs `a` in.
        assert_eq!(rep.combined(0), *rep.a());
        let expected = rep.a().xor(&rep.low()[1]).unwrap();
        assert_eq!(rep.combined(0b10), expected);
    }
}
