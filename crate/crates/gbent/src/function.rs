//! Truth-table representations of Boolean and generalized Boolean functions.
//!
//! Index convention, fixed repo-wide: the input point `x` in `[0, 2^n)` is
//! read LSB-first, i.e. coordinate `x_{j+1}` is bit `j` of the integer.
//! Every Hadamard-row identification in the other modules depends on this
//! ordering, so it is never configurable.
//!
//! The text format for truth tables is a header line `n q` followed by
//! `2^n` whitespace-separated values in `[0, q)` in natural index order.

use crate::error::{Error, Result};
use std::fmt;

/// Largest variable count the text format accepts. Individual operations
/// document tighter practical caps.
pub const MAX_N: u32 = 30;

/// Largest modulus the exact cyclotomic backend supports.
pub const MAX_Q: u32 = 64;

/// Inner product over `Z_2`: parity of the overlap of the two bit vectors.
#[inline]
pub fn dot2(a: u32, b: u32) -> u8 {
    ((a & b).count_ones() & 1) as u8
}

/// Inner product `sum z_i c_i (mod q)` of a bit vector against residues.
pub fn dot_q(z: &[u8], c: &[u32], q: u32) -> Result<u32> {
    if z.len() != c.len() {
        return Err(Error::LengthMismatch { left: z.len(), right: c.len() });
    }
    let mut acc: u64 = 0;
    for (&zi, &ci) in z.iter().zip(c) {
        if zi != 0 {
            acc += u64::from(ci);
        }
    }
    Ok((acc % u64::from(q)) as u32)
}

/// Modulus parameters: even `q` together with `h = ceil(log2 q)`, so that
/// `2^{h-1} < q <= 2^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamQ {
    q: u32,
    h: u32,
}

impl ParamQ {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || q > MAX_Q {
            return Err(Error::InvalidModulus { q });
        }
        if q % 2 != 0 {
            return Err(Error::OddModulus { q });
        }
        let h = 32 - (q - 1).leading_zeros();
        debug_assert!(q > (1 << (h - 1)) && q <= (1 << h));
        Ok(ParamQ { q, h })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `h` with `2^{h-1} < q <= 2^h`; the component count of the base-2
    /// decomposition.
    #[inline]
    pub fn h(&self) -> u32 {
        self.h
    }

    /// Argument `2*pi/q` of the primitive root of unity used by the
    /// generalized transform.
    #[inline]
    pub fn zeta_angle(&self) -> f64 {
        std::f64::consts::TAU / f64::from(self.q)
    }
}

/// A Boolean function as a dense truth table of `2^n` bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    table: Vec<u8>,
}

impl BooleanFunction {
    pub fn new(n: u32, table: Vec<u8>) -> Result<Self> {
        check_n(n)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(Error::TableLength { expected, got: table.len() });
        }
        if let Some(x) = table.iter().position(|&v| v > 1) {
            return Err(Error::ValueOutOfRange { x, value: u32::from(table[x]), q: 2 });
        }
        Ok(BooleanFunction { n, table })
    }

    /// Builds the table by evaluating `f` at every point.
    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> u8) -> Result<Self> {
        check_n(n)?;
        Self::new(n, (0..1u32 << n).map(|x| f(x) & 1).collect())
    }

    pub fn constant(n: u32, bit: u8) -> Result<Self> {
        check_n(n)?;
        Ok(BooleanFunction { n, table: vec![bit & 1; 1 << n] })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn value(&self, x: u32) -> u8 {
        self.table[x as usize]
    }

    #[inline]
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Pointwise XOR of two functions on the same variables.
    pub fn xor(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a ^ b).collect();
        Ok(BooleanFunction { n: self.n, table })
    }

    /// XOR with the constant 1 (global complement).
    pub fn complement(&self) -> BooleanFunction {
        BooleanFunction { n: self.n, table: self.table.iter().map(|v| v ^ 1).collect() }
    }

    /// The affine function `b ^ (a . x)`.
    pub fn affine(n: u32, a: u32, b: u8) -> Result<Self> {
        Self::from_fn(n, |x| dot2(a, x) ^ (b & 1))
    }

    /// Widens the table to values in `Z_q`.
    pub fn lift(&self, q: u32) -> Result<GeneralizedFunction> {
        GeneralizedFunction::new(q, self.n, self.table.iter().map(|&v| u32::from(v)).collect())
    }
}

/// A generalized Boolean function `Z_2^n -> Z_q` as a dense truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedFunction {
    params: ParamQ,
    n: u32,
    table: Vec<u32>,
}

impl GeneralizedFunction {
    pub fn new(q: u32, n: u32, table: Vec<u32>) -> Result<Self> {
        let params = ParamQ::new(q)?;
        check_n(n)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(Error::TableLength { expected, got: table.len() });
        }
        if let Some(x) = table.iter().position(|&v| v >= q) {
            return Err(Error::ValueOutOfRange { x, value: table[x], q });
        }
        Ok(GeneralizedFunction { params, n, table })
    }

    pub fn from_fn(q: u32, n: u32, f: impl FnMut(u32) -> u32) -> Result<Self> {
        check_n(n)?;
        Self::new(q, n, (0..1u32 << n).map(f).collect())
    }

    pub fn constant(q: u32, n: u32, c: u32) -> Result<Self> {
        Self::from_fn(q, n, |_| c)
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
    pub fn h(&self) -> u32 {
        self.params.h()
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn value(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    #[inline]
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Adds a constant to every output, mod q.
    pub fn add_constant(&self, c: u32) -> GeneralizedFunction {
        let q = self.q();
        let table = self.table.iter().map(|&v| (v + c) % q).collect();
        GeneralizedFunction { params: self.params, n: self.n, table }
    }

    /// Reinterprets a q=2 table as a plain Boolean function.
    pub fn as_boolean(&self) -> Option<BooleanFunction> {
        if self.q() != 2 {
            return None;
        }
        Some(BooleanFunction {
            n: self.n,
            table: self.table.iter().map(|&v| v as u8).collect(),
        })
    }

    /// Parses the `n q` header format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: u32 = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing variable count".into()))?
            .parse()
            .map_err(|_| Error::Parse("variable count is not an integer".into()))?;
        let q: u32 = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing modulus".into()))?
            .parse()
            .map_err(|_| Error::Parse("modulus is not an integer".into()))?;
        check_n(n)?;
        let expected = 1usize << n;
        let mut table = Vec::with_capacity(expected);
        for tok in tokens.by_ref() {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("table entry {tok:?} is not an integer")))?;
            table.push(v);
            if table.len() > expected {
                break;
            }
        }
        if table.len() != expected {
            return Err(Error::TableLength { expected, got: table.len() });
        }
        Self::new(q, n, table)
    }

    /// Canonical text form: `serialize(parse(t)) == t` for canonical `t`.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.q());
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&v.to_string());
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for GeneralizedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidVariableCount { n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot2_examples() {
        assert_eq!(dot2(0b101, 0b110), 1);
        assert_eq!(dot2(0b1011, 0), 0);
        assert_eq!(dot2(0b11, 0b11), 0);
    }

    #[test]
    fn dot2_bilinear() {
        for a in 0..16u32 {
            for b in 0..16 {
                for c in 0..16 {
                    assert_eq!(dot2(a ^ b, c), dot2(a, c) ^ dot2(b, c));
                    assert_eq!(dot2(c, a ^ b), dot2(c, a) ^ dot2(c, b));
                }
            }
        }
    }

    #[test]
    fn dot_q_examples() {
        assert_eq!(dot_q(&[1, 1, 1], &[1, 2, 4], 6).unwrap(), 1);
        assert_eq!(dot_q(&[0, 0, 0], &[5, 7, 3], 8).unwrap(), 0);
        assert_eq!(dot_q(&[1, 0, 1], &[1, 2, 4], 8).unwrap(), 5);
        assert!(dot_q(&[1, 0], &[1], 4).is_err());
    }

    #[test]
    fn dot_q_power_coefficients_match_integer() {
        // With c = (1, 2, 4, ...) the product is the integer with bits z, mod q.
        for q in [2u32, 4, 6, 8, 10, 12, 16] {
            let h = ParamQ::new(q).unwrap().h();
            let c: Vec<u32> = (0..h).map(|j| 1 << j).collect();
            for k in 0..1u32 << h {
                let z: Vec<u8> = (0..h).map(|j| ((k >> j) & 1) as u8).collect();
                assert_eq!(dot_q(&z, &c, q).unwrap(), k % q);
            }
        }
    }

    #[test]
    fn param_q_ranges() {
        for (q, h) in [(2u32, 1u32), (4, 2), (6, 3), (8, 3), (10, 4), (12, 4), (16, 4), (64, 6)] {
            let p = ParamQ::new(q).unwrap();
            assert_eq!(p.h(), h, "q = {q}");
        }
        assert_eq!(ParamQ::new(5), Err(Error::OddModulus { q: 5 }));
        assert_eq!(ParamQ::new(0), Err(Error::InvalidModulus { q: 0 }));
        assert_eq!(ParamQ::new(66), Err(Error::InvalidModulus { q: 66 }));
    }

    #[test]
    fn parse_basic() {
        let f = GeneralizedFunction::parse("2 4\n0 1 2 3").unwrap();
        assert_eq!(f.n(), 2);
        assert_eq!(f.q(), 4);
        assert_eq!(f.table(), &[0, 1, 2, 3]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            GeneralizedFunction::parse("1 4\n0 5"),
            Err(Error::ValueOutOfRange { x: 1, value: 5, q: 4 })
        ));
        assert!(matches!(
            GeneralizedFunction::parse("1 3\n0 1"),
            Err(Error::OddModulus { q: 3 })
        ));
        assert!(matches!(
            GeneralizedFunction::parse("2 4\n0 1 2"),
            Err(Error::TableLength { expected: 4, got: 3 })
        ));
        assert!(matches!(
            GeneralizedFunction::parse("2 4\n0 1 2 3 1"),
            Err(Error::TableLength { .. })
        ));
        assert!(GeneralizedFunction::parse("x 4\n0 1").is_err());
        assert!(GeneralizedFunction::parse("").is_err());
        // q = 2 stays legal even though the theorems target even q > 2.
        assert!(GeneralizedFunction::parse("1 2\n0 1").is_ok());
    }

    #[test]
    fn serialize_round_trip_is_canonical() {
        let text = "3 6\n0 1 2 3 4 5 0 1\n";
        let f = GeneralizedFunction::parse(text).unwrap();
        assert_eq!(f.serialize(), text);
    }
}
