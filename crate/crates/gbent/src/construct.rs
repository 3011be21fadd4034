//! Generators for gbent functions: the half-modulus multiple of a bent
//! function, the generalized Maiorana-McFarland class, and the constant
//! top-component selection that satisfies the even-n row condition by
//! construction.

use crate::decompose::{ComponentDecomp, FformRep};
use crate::error::{Error, Result};
use crate::function::{dot2, BooleanFunction, GeneralizedFunction, ParamQ};
use crate::wht::is_bent;
use rand::Rng;

/// A permutation on `Z_2^n` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTable {
    n: u32,
    image: Vec<u32>,
}

impl PermutationTable {
    pub fn new(n: u32, image: Vec<u32>) -> Result<Self> {
        let size = 1usize << n;
        if image.len() != size {
            return Err(Error::TableLength { expected: size, got: image.len() });
        }
        let mut seen = vec![false; size];
        for &y in &image {
            if (y as usize) >= size || seen[y as usize] {
                return Err(Error::NotAPermutation);
            }
            seen[y as usize] = true;
        }
        Ok(PermutationTable { n, image })
    }

    pub fn identity(n: u32) -> Self {
        PermutationTable { n, image: (0..1u32 << n).collect() }
    }

    /// Fisher-Yates shuffle of the identity.
    pub fn random(n: u32, rng: &mut impl Rng) -> Self {
        let mut image: Vec<u32> = (0..1u32 << n).collect();
        for i in (1..image.len()).rev() {
            let j = rng.random_range(0..=i);
            image.swap(i, j);
        }
        PermutationTable { n, image }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn apply(&self, y: u32) -> u32 {
        self.image[y as usize]
    }

    #[inline]
    pub fn image(&self) -> &[u32] {
        &self.image
    }
}

/// `f(x) = (q/2) a(x)`; gbent exactly when `a` is bent.
pub fn trivial_gbent(a: &BooleanFunction, q: u32) -> Result<GeneralizedFunction> {
    let params = ParamQ::new(q)?;
    let half = params.q() / 2;
    GeneralizedFunction::from_fn(q, a.n(), |x| half * u32::from(a.value(x)))
}

/// Generalized Maiorana-McFarland construction over `2n` variables:
/// `f(x, y) = (q/2) (x . sigma(y)) + g(y) mod q`. Always gbent for a
/// permutation `sigma` and arbitrary `g`. The input index packs `x` into
/// the low `n` bits and `y` into the high `n` bits.
pub fn gmmf(sigma: &PermutationTable, g: &GeneralizedFunction) -> Result<GeneralizedFunction> {
    if sigma.n() != g.n() {
        return Err(Error::DimensionMismatch { left: sigma.n(), right: g.n() });
    }
    let n = g.n();
    let q = g.q();
    let half = q / 2;
    let mask = (1u32 << n) - 1;
    GeneralizedFunction::from_fn(q, 2 * n, |w| {
        let x = w & mask;
        let y = w >> n;
        (half * u32::from(dot2(x, sigma.apply(y))) + g.value(y)) % q
    })
}

/// Plain Maiorana-McFarland bent function `f(x, y) = x . pi(y) ^ g(y)`,
/// used as a source of bent inputs for the generators.
pub fn mm_bent(pi: &PermutationTable, g: Option<&BooleanFunction>) -> Result<BooleanFunction> {
    if let Some(g) = g {
        if g.n() != pi.n() {
            return Err(Error::DimensionMismatch { left: pi.n(), right: g.n() });
        }
    }
    let n = pi.n();
    let mask = (1u32 << n) - 1;
    BooleanFunction::from_fn(2 * n, |w| {
        let x = w & mask;
        let y = w >> n;
        dot2(x, pi.apply(y)) ^ g.map_or(0, |g| g.value(y))
    })
}

/// Per-level sign choice for [`select_components`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSignChoice {
    Plus,
    Minus,
}

/// Builds a half-modulus representation for `q = 2^{p+1}` with
/// `p = signs.len() + 1` whose W-column satisfies the even-n row condition
/// at every point by construction.
///
/// Level 1 is the pair `(a, a ^ a_0)`, which must both be bent. Each
/// higher level `t` uses a constant component: `Plus` picks the constant 0
/// (`W` values repeat) and `Minus` picks the constant 1 (`W` values repeat
/// negated), mirroring the sign-flip identity `W_g(u) = -W_{g ^ 1}(u)`.
pub fn select_components(
    a: &BooleanFunction,
    a0: &BooleanFunction,
    signs: &[LevelSignChoice],
) -> Result<FformRep> {
    if !is_bent(a) {
        return Err(Error::NotBent("the carrier component a"));
    }
    if a0.n() != a.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: a0.n() });
    }
    if !is_bent(&a.xor(a0)?) {
        return Err(Error::NotBent("the level-1 combination a ^ a_0"));
    }
    let p = signs.len() as u32 + 1;
    let q = 1u32 << (p + 1);
    let mut low = Vec::with_capacity(p as usize);
    low.push(a0.clone());
    for sign in signs {
        let bit = match sign {
            LevelSignChoice::Plus => 0,
            LevelSignChoice::Minus => 1,
        };
        low.push(BooleanFunction::constant(a.n(), bit)?);
    }
    FformRep::new(q, a.clone(), low)
}

/// Replaces component `which` of a decomposition with the affine function
/// `b ^ (direction . x)`. The new combined spectra are predictable from
/// the old ones through the translate rules.
pub fn affine_variant(
    d: &ComponentDecomp,
    which: usize,
    b: u8,
    direction: u32,
) -> Result<ComponentDecomp> {
    let replacement = BooleanFunction::affine(d.n(), direction, b)?;
    d.with_component(which, replacement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{certify_sufficient, check_triangle};
    use crate::decompose::to_fform;
    use crate::gwht::{is_gbent, GbentMode};
    use crate::wht::fwht;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn bent2() -> BooleanFunction {
        BooleanFunction::from_fn(2, |x| ((x & 1) & (x >> 1)) as u8).unwrap()
    }

    fn bent4() -> BooleanFunction {
        BooleanFunction::from_fn(4, |x| {
            (((x & 1) & ((x >> 2) & 1)) ^ (((x >> 1) & 1) & ((x >> 3) & 1))) as u8
        })
        .unwrap()
    }

    #[test]
    fn trivial_construction() {
        let f = trivial_gbent(&bent2(), 6).unwrap();
        assert!(is_gbent(&f, GbentMode::Exact).unwrap().gbent);

        let zero = BooleanFunction::constant(2, 0).unwrap();
        let g = trivial_gbent(&zero, 6).unwrap();
        assert!(!is_gbent(&g, GbentMode::Exact).unwrap().gbent);

        let h = trivial_gbent(&bent4(), 10).unwrap();
        assert!(is_gbent(&h, GbentMode::Exact).unwrap().gbent);
    }

    #[test]
    fn permutation_validation() {
        assert!(PermutationTable::new(1, vec![1, 0]).is_ok());
        assert_eq!(PermutationTable::new(1, vec![0, 0]), Err(Error::NotAPermutation));
        assert_eq!(PermutationTable::new(1, vec![0, 2]), Err(Error::NotAPermutation));
        assert!(matches!(
            PermutationTable::new(2, vec![0, 1]),
            Err(Error::TableLength { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn smallest_gmmf() {
        // sigma = id, g = 0, n = 1, q = 4: f(x, y) = 2xy.
        let sigma = PermutationTable::identity(1);
        let g = GeneralizedFunction::constant(4, 1, 0).unwrap();
        let f = gmmf(&sigma, &g).unwrap();
        assert_eq!(f.table(), &[0, 0, 0, 2]);
        assert!(is_gbent(&f, GbentMode::Exact).unwrap().gbent);
    }

    #[test]
    fn gmmf_is_gbent_and_certified() {
        let mut rng = StdRng::seed_from_u64(97);
        for q in [4u32, 6, 8, 12, 16] {
            let sigma = PermutationTable::random(2, &mut rng);
            let g = GeneralizedFunction::from_fn(q, 2, |_| rng.random_range(0..q)).unwrap();
            let f = gmmf(&sigma, &g).unwrap();
            assert!(is_gbent(&f, GbentMode::Exact).unwrap().gbent, "q = {q}");
            assert!(certify_sufficient(&to_fform(&f)).unwrap().overall, "q = {q}");
        }
    }

    #[test]
    fn gmmf_dimension_check() {
        let sigma = PermutationTable::identity(2);
        let g = GeneralizedFunction::constant(4, 1, 0).unwrap();
        assert!(gmmf(&sigma, &g).is_err());
    }

    #[test]
    fn mm_bent_is_bent() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..5 {
            let pi = PermutationTable::random(2, &mut rng);
            let g = BooleanFunction::from_fn(2, |_| rng.random_range(0..2) as u8).unwrap();
            assert!(is_bent(&mm_bent(&pi, Some(&g)).unwrap()));
        }
    }

    #[test]
    fn selection_rows_for_hexadecimal() {
        // signs (-, +) forces the matched rows into {2, 3} with either sign.
        let a0 = BooleanFunction::affine(4, 0b0001, 0).unwrap();
        let rep = select_components(
            &bent4(),
            &a0,
            &[LevelSignChoice::Minus, LevelSignChoice::Plus],
        )
        .unwrap();
        assert_eq!(rep.q(), 16);
        assert_eq!(rep.p(), 3);
        let report = check_triangle(&rep).unwrap();
        assert!(report.overall);
        for point in &report.per_point {
            let row = point.matched_row.unwrap();
            assert!(row == 2 || row == 3, "row {row} at u = {}", point.u);
        }
        assert!(is_gbent(&rep.to_function(), GbentMode::Exact).unwrap().gbent);
    }

    #[test]
    fn selection_all_plus_keeps_higher_components_zero() {
        let a0 = BooleanFunction::constant(2, 0).unwrap();
        let rep = select_components(
            &bent2(),
            &a0,
            &[LevelSignChoice::Plus, LevelSignChoice::Plus],
        )
        .unwrap();
        for component in &rep.low()[1..] {
            assert!(component.table().iter().all(|&v| v == 0));
        }
        assert!(certify_sufficient(&rep).unwrap().overall);
    }

    #[test]
    fn selection_rejects_non_bent_inputs() {
        let zero = BooleanFunction::constant(2, 0).unwrap();
        let a0 = BooleanFunction::constant(2, 0).unwrap();
        assert!(matches!(
            select_components(&zero, &a0, &[]),
            Err(Error::NotBent(_))
        ));
        // a bent but a ^ a_0 not bent.
        let spoiler = bent2();
        assert!(matches!(
            select_components(&bent2(), &spoiler, &[]),
            Err(Error::NotBent(_))
        ));
    }

    #[test]
    fn affine_variant_identity_and_prediction() {
        let f = GeneralizedFunction::from_fn(8, 2, |x| 4 * u32::from(bent2().value(x))).unwrap();
        let d = crate::decompose::to_components(&f);
        assert_eq!(
            affine_variant(&d, 0, 0, 0).unwrap().components(),
            d.components()
        );

        // Replacing a_0 by b ^ (v . x) shifts the spectra of combinations
        // containing a_0 by v with sign (-1)^b.
        let (b, v) = (1u8, 0b10u32);
        let varied = affine_variant(&d, 0, b, v).unwrap();
        let predicted = fwht(&d.combined(0b100)).affine_added(v, b == 1);
        assert_eq!(fwht(&varied.combined(0b101)), predicted);

        // A Remark-style gbent instance stays gbent under an affine a_0.
        let g = crate::decompose::from_components(&varied).unwrap();
        assert!(is_gbent(&g, GbentMode::Exact).unwrap().gbent);
    }
}
