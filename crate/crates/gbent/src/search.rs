//! Exhaustive and seeded-random censuses over `GB_n^q`, verifying the
//! predicate equivalences at desk scale and probing whether the sufficient
//! conditions are also necessary.
//!
//! Functions are enumerated by treating the truth table as a base-q
//! integer, little-endian in the input index, so shards and resume points
//! are portable. Sampled runs derive the k-th draw from stream `k` of a
//! seeded ChaCha generator; reports are therefore identical for any shard
//! count. The gbent verdict inside censuses always comes from the exact
//! backend; the float backend runs alongside only to count verdict
//! disagreements.

use crate::conditions;
use crate::decompose::{to_components, to_fform};
use crate::error::{Error, Result};
use crate::function::GeneralizedFunction;
use crate::gwht::{gwht_bucketed_in, is_gbent_exact, is_gbent_float, FLOAT_EPSILON};
use crate::cyclotomic::CyclotomicRing;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exhaustive enumeration cap: `q^{2^n} <= 2^34`.
pub const EXHAUSTIVE_LOG2_CAP: u32 = 34;

/// The function space `GB_n^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    pub q: u32,
    pub n: u32,
}

impl SearchSpace {
    /// `log2(q^{2^n})`.
    pub fn log2_size(&self) -> f64 {
        f64::from(1u32 << self.n) * f64::from(self.q).log2()
    }

    /// Exact size when it fits in 128 bits.
    pub fn size(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for _ in 0..1u32 << self.n {
            total = total.checked_mul(u128::from(self.q))?;
        }
        Some(total)
    }

    /// The function whose table digits are `index` in base q,
    /// little-endian in the input point.
    pub fn function_at(&self, index: u128) -> GeneralizedFunction {
        let q = u128::from(self.q);
        let mut rest = index;
        GeneralizedFunction::from_fn(self.q, self.n, |_| {
            let digit = (rest % q) as u32;
            rest /= q;
            digit
        })
        .expect("digits are reduced mod q")
    }
}

/// How the census walks the space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// Predicates a census can evaluate next to the exact gbent verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateKind {
    Q4,
    Q8Star,
    Q8StarStar,
    Triangle,
    Square,
    Recursive,
    Product,
    Certify,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 8] = [
        PredicateKind::Q4,
        PredicateKind::Q8Star,
        PredicateKind::Q8StarStar,
        PredicateKind::Triangle,
        PredicateKind::Square,
        PredicateKind::Recursive,
        PredicateKind::Product,
        PredicateKind::Certify,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PredicateKind::Q4 => "q4",
            PredicateKind::Q8Star => "q8-star",
            PredicateKind::Q8StarStar => "q8-starstar",
            PredicateKind::Triangle => "triangle",
            PredicateKind::Square => "square",
            PredicateKind::Recursive => "recursive",
            PredicateKind::Product => "product",
            PredicateKind::Certify => "certify",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }

    /// Checks the predicate applies to the `(q, n)` slice at all.
    pub fn applicable(&self, q: u32, n: u32) -> bool {
        let even = n % 2 == 0;
        match self {
            PredicateKind::Q4 => q == 4 && even,
            PredicateKind::Q8Star => q == 8 && even,
            PredicateKind::Q8StarStar => q == 8 && !even,
            PredicateKind::Triangle | PredicateKind::Recursive | PredicateKind::Product => even,
            PredicateKind::Square => !even && q.is_power_of_two(),
            PredicateKind::Certify => even || q.is_power_of_two(),
        }
    }

    /// Evaluates the predicate on the canonical representation.
    pub fn evaluate(&self, f: &GeneralizedFunction) -> Result<bool> {
        let report = match self {
            PredicateKind::Q4 => conditions::check_q4(&to_components(f))?,
            PredicateKind::Q8Star => conditions::check_q8_star(&to_components(f))?,
            PredicateKind::Q8StarStar => conditions::check_q8_starstar(&to_components(f))?,
            PredicateKind::Triangle => conditions::check_triangle(&to_fform(f))?,
            PredicateKind::Square => conditions::check_square(&to_fform(f))?,
            PredicateKind::Recursive => conditions::check_recursive_form(&to_fform(f))?,
            PredicateKind::Product => conditions::check_product_form(&to_fform(f))?,
            PredicateKind::Certify => conditions::certify_sufficient(&to_fform(f))?,
        };
        Ok(report.overall)
    }
}

/// Census configuration.
#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub space: SearchSpace,
    pub predicates: Vec<PredicateKind>,
    pub mode: SearchMode,
}

/// 2x2 contingency table of a predicate against the exact gbent verdict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementMatrix {
    pub both_true: u64,
    pub predicate_only: u64,
    pub gbent_only: u64,
    pub both_false: u64,
}

impl AgreementMatrix {
    pub fn disagreements(&self) -> u64 {
        self.predicate_only + self.gbent_only
    }

    fn absorb(&mut self, other: &AgreementMatrix) {
        self.both_true += other.both_true;
        self.predicate_only += other.predicate_only;
        self.gbent_only += other.gbent_only;
        self.both_false += other.both_false;
    }
}

/// A function on which a predicate and the gbent verdict disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisagreementWitness {
    pub index: u128,
    pub table: String,
    pub gbent: bool,
    pub predicate: bool,
}

/// Per-predicate census outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateCensus {
    pub kind: PredicateKind,
    pub true_count: u64,
    pub agreement: AgreementMatrix,
    pub witnesses: Vec<DisagreementWitness>,
}

/// Aggregate census report; merging shards is associative and
/// deterministic (witnesses sorted by function index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u32,
    pub n: u32,
    pub mode: SearchMode,
    pub evaluated: u64,
    pub gbent_count: u64,
    pub exact_float_disagreements: u64,
    pub predicates: Vec<PredicateCensus>,
}

impl CensusReport {
    fn empty(cfg: &CensusConfig) -> Self {
        CensusReport {
            q: cfg.space.q,
            n: cfg.space.n,
            mode: cfg.mode,
            evaluated: 0,
            gbent_count: 0,
            exact_float_disagreements: 0,
            predicates: cfg
                .predicates
                .iter()
                .map(|&kind| PredicateCensus {
                    kind,
                    true_count: 0,
                    agreement: AgreementMatrix::default(),
                    witnesses: Vec::new(),
                })
                .collect(),
        }
    }
}

/// A contiguous range of enumeration ordinals, `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardRange {
    pub start: u64,
    pub end: u64,
}

/// Splits `[0, total)` into `k` near-equal lexicographic ranges.
pub fn shard(total: u64, k: u64) -> Vec<ShardRange> {
    assert!(k >= 1);
    let base = total / k;
    let extra = total % k;
    let mut ranges = Vec::with_capacity(k as usize);
    let mut start = 0;
    for i in 0..k {
        let len = base + u64::from(i < extra);
        ranges.push(ShardRange { start, end: start + len });
        start += len;
    }
    ranges
}

/// Number of ordinals a census walks: the space size when exhaustive,
/// the sample count otherwise. Errors when exhaustion is over the cap.
pub fn ordinal_count(cfg: &CensusConfig) -> Result<u64> {
    match cfg.mode {
        SearchMode::Exhaustive => {
            let log2 = cfg.space.log2_size();
            if log2 > f64::from(EXHAUSTIVE_LOG2_CAP) {
                return Err(Error::SpaceTooLarge {
                    log2_size: log2.ceil() as u32,
                    log2_cap: EXHAUSTIVE_LOG2_CAP,
                });
            }
            Ok(cfg.space.size().expect("under the cap") as u64)
        }
        SearchMode::Sample { count, .. } => Ok(count),
    }
}

fn validate(cfg: &CensusConfig) -> Result<()> {
    for kind in &cfg.predicates {
        if !kind.applicable(cfg.space.q, cfg.space.n) {
            return Err(Error::ModulusMismatch {
                required: format!("predicate {} does not apply to this (q, n)", kind.name()),
                got: cfg.space.q,
            });
        }
    }
    Ok(())
}

/// Uniform draw from `[0, size)` on the sample's own ChaCha stream, so the
/// value depends only on `(seed, ordinal)`, never on sharding.
fn sampled_index(seed: u64, ordinal: u64, size: u128) -> u128 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ordinal);
    // 2^128 mod size, for rejection sampling.
    let residue = ((u128::MAX % size) + 1) % size;
    let accept_below = u128::MAX - residue;
    loop {
        let raw = (u128::from(rng.next_u64()) << 64) | u128::from(rng.next_u64());
        if residue == 0 || raw <= accept_below {
            return raw % size;
        }
    }
}

/// Runs the census over one ordinal range; shards run fully independently.
pub fn enumerate_range(cfg: &CensusConfig, range: ShardRange) -> Result<CensusReport> {
    validate(cfg)?;
    let total_ordinals = ordinal_count(cfg)?;
    if range.end > total_ordinals || range.start > range.end {
        return Err(Error::Parse(format!(
            "shard range {range:?} outside [0, {total_ordinals})"
        )));
    }
    let space_size = cfg.space.size();
    let ring = CyclotomicRing::new(cfg.space.q)?;
    let mut report = CensusReport::empty(cfg);
    for ordinal in range.start..range.end {
        let index = match cfg.mode {
            SearchMode::Exhaustive => u128::from(ordinal),
            SearchMode::Sample { seed, .. } => {
                sampled_index(seed, ordinal, space_size.expect("sampled spaces fit u128"))
            }
        };
        let f = cfg.space.function_at(index);
        let spectrum = gwht_bucketed_in(&ring, &f)?;
        let gbent = is_gbent_exact(&ring, &spectrum).gbent;
        let float_verdict = is_gbent_float(&f, FLOAT_EPSILON).gbent;
        report.evaluated += 1;
        report.gbent_count += u64::from(gbent);
        report.exact_float_disagreements += u64::from(gbent != float_verdict);
        for census in report.predicates.iter_mut() {
            let value = census.kind.evaluate(&f)?;
            census.true_count += u64::from(value);
            match (value, gbent) {
                (true, true) => census.agreement.both_true += 1,
                (true, false) => census.agreement.predicate_only += 1,
                (false, true) => census.agreement.gbent_only += 1,
                (false, false) => census.agreement.both_false += 1,
            }
            if value != gbent {
                census.witnesses.push(DisagreementWitness {
                    index,
                    table: f.serialize(),
                    gbent,
                    predicate: value,
                });
            }
        }
    }
    Ok(report)
}

/// Full census: shards the space over the available parallelism and
/// merges. Equivalent to a single-range run.
pub fn enumerate(cfg: &CensusConfig) -> Result<CensusReport> {
    validate(cfg)?;
    let total = ordinal_count(cfg)?;
    #[cfg(feature = "parallel")]
    let reports = shard(total, rayon::current_num_threads().max(1) as u64)
        .into_par_iter()
        .map(|range| enumerate_range(cfg, range))
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let reports = vec![enumerate_range(cfg, ShardRange { start: 0, end: total })?];
    merge(&reports)
}

/// Merges shard reports: counts add, witnesses concatenate and sort by
/// function index. Associative and commutative.
pub fn merge(reports: &[CensusReport]) -> Result<CensusReport> {
    let first = reports.first().ok_or(Error::MergeMismatch)?;
    let mut merged = first.clone();
    for report in &reports[1..] {
        if report.q != merged.q
            || report.n != merged.n
            || report.mode != merged.mode
            || report.predicates.len() != merged.predicates.len()
        {
            return Err(Error::MergeMismatch);
        }
        merged.evaluated += report.evaluated;
        merged.gbent_count += report.gbent_count;
        merged.exact_float_disagreements += report.exact_float_disagreements;
        for (into, from) in merged.predicates.iter_mut().zip(&report.predicates) {
            if into.kind != from.kind {
                return Err(Error::MergeMismatch);
            }
            into.true_count += from.true_count;
            into.agreement.absorb(&from.agreement);
            into.witnesses.extend(from.witnesses.iter().cloned());
        }
    }
    for census in merged.predicates.iter_mut() {
        census.witnesses.sort_by_key(|w| w.index);
    }
    Ok(merged)
}

/// Outcome of the necessity probe: how many gbent functions have a
/// canonical representation passing the sufficiency condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub q: u32,
    pub n: u32,
    pub mode: SearchMode,
    pub evaluated: u64,
    pub gbent_count: u64,
    pub pass_count: u64,
    /// `None` when no gbent function was seen: a vacuous probe, which is
    /// distinct from a passing one.
    pub pass_fraction: Option<f64>,
    pub counterexamples: Vec<String>,
}

impl ProbeReport {
    pub fn vacuous(&self) -> bool {
        self.gbent_count == 0
    }
}

/// For every gbent function in the walk, checks the even-n row condition
/// (or the odd-n split condition) on the canonical representation and
/// reports the pass fraction with counterexample tables. This output is a
/// report artifact: outside q = 4 and q = 8 no expected value is asserted.
pub fn necessity_probe(space: SearchSpace, mode: SearchMode) -> Result<ProbeReport> {
    let kind = if space.n % 2 == 0 {
        PredicateKind::Triangle
    } else {
        PredicateKind::Square
    };
    if !kind.applicable(space.q, space.n) {
        return Err(Error::ModulusMismatch {
            required: "a power of two for the odd-n condition".into(),
            got: space.q,
        });
    }
    let cfg = CensusConfig { space, predicates: vec![kind], mode };
    let census = enumerate(&cfg)?;
    let predicate = &census.predicates[0];
    let pass_count = predicate.agreement.both_true;
    let counterexamples = predicate
        .witnesses
        .iter()
        .filter(|w| w.gbent && !w.predicate)
        .map(|w| w.table.clone())
        .collect();
    Ok(ProbeReport {
        q: space.q,
        n: space.n,
        mode,
        evaluated: census.evaluated,
        gbent_count: census.gbent_count,
        pass_count,
        pass_fraction: (census.gbent_count > 0)
            .then(|| pass_count as f64 / census.gbent_count as f64),
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(q: u32, n: u32, predicates: Vec<PredicateKind>) -> CensusConfig {
        CensusConfig { space: SearchSpace { q, n }, predicates, mode: SearchMode::Exhaustive }
    }

    #[test]
    fn function_indexing_is_little_endian() {
        let space = SearchSpace { q: 4, n: 1 };
        assert_eq!(space.function_at(0).table(), &[0, 0]);
        assert_eq!(space.function_at(1).table(), &[1, 0]);
        assert_eq!(space.function_at(4).table(), &[0, 1]);
        assert_eq!(space.function_at(7).table(), &[3, 1]);
        assert_eq!(space.size(), Some(16));
    }

    #[test]
    fn quaternary_census_counts() {
        let report = enumerate(&census(4, 2, vec![PredicateKind::Q4])).unwrap();
        assert_eq!(report.evaluated, 256);
        assert_eq!(report.gbent_count, 64);
        let q4 = &report.predicates[0];
        assert_eq!(q4.agreement.disagreements(), 0);
        assert_eq!(q4.true_count, 64);
        assert_eq!(report.exact_float_disagreements, 0);
    }

    #[test]
    fn octal_census_agreement() {
        let report =
            enumerate(&census(8, 2, vec![PredicateKind::Q8Star, PredicateKind::Triangle]))
                .unwrap();
        assert_eq!(report.evaluated, 4096);
        for predicate in &report.predicates {
            assert_eq!(predicate.agreement.disagreements(), 0, "{}", predicate.kind.name());
        }
    }

    #[test]
    fn sampled_census_is_shard_invariant() {
        let cfg = CensusConfig {
            space: SearchSpace { q: 8, n: 3 },
            predicates: vec![PredicateKind::Q8StarStar],
            mode: SearchMode::Sample { count: 400, seed: 1234 },
        };
        let whole = enumerate_range(&cfg, ShardRange { start: 0, end: 400 }).unwrap();
        for k in [2u64, 3, 8] {
            let parts: Vec<CensusReport> = shard(400, k)
                .into_iter()
                .map(|range| enumerate_range(&cfg, range).unwrap())
                .collect();
            assert_eq!(merge(&parts).unwrap(), whole, "k = {k}");
        }
        // And the predicate agreed with the verdict on every sample.
        assert_eq!(whole.predicates[0].agreement.disagreements(), 0);
    }

    #[test]
    fn empty_range_is_identity() {
        let cfg = census(4, 2, vec![PredicateKind::Q4]);
        let empty = enumerate_range(&cfg, ShardRange { start: 10, end: 10 }).unwrap();
        assert_eq!(empty.evaluated, 0);
        let full = enumerate(&cfg).unwrap();
        let merged = merge(&[full.clone(), empty]).unwrap();
        assert_eq!(merged, full);
    }

    #[test]
    fn exhaustive_cap_enforced() {
        let cfg = census(16, 4, vec![]);
        assert!(matches!(
            enumerate(&cfg),
            Err(Error::SpaceTooLarge { .. })
        ));
    }

    #[test]
    fn inapplicable_predicate_rejected() {
        let cfg = census(6, 2, vec![PredicateKind::Q4]);
        assert!(enumerate(&cfg).is_err());
    }

    #[test]
    fn probe_full_pass_for_exact_characterizations() {
        let probe = necessity_probe(SearchSpace { q: 4, n: 2 }, SearchMode::Exhaustive).unwrap();
        assert_eq!(probe.pass_fraction, Some(1.0));
        assert!(probe.counterexamples.is_empty());
        assert!(!probe.vacuous());

        let probe = necessity_probe(SearchSpace { q: 8, n: 2 }, SearchMode::Exhaustive).unwrap();
        assert_eq!(probe.pass_fraction, Some(1.0));
    }

    #[test]
    fn probe_reports_senary_fraction() {
        // No expected value: the probe itself is the oracle here.
        let probe = necessity_probe(SearchSpace { q: 6, n: 2 }, SearchMode::Exhaustive).unwrap();
        assert_eq!(probe.evaluated, 1296);
        if let Some(fraction) = probe.pass_fraction {
            assert!((0.0..=1.0).contains(&fraction));
            assert_eq!(
                probe.counterexamples.len() as u64,
                probe.gbent_count - probe.pass_count
            );
        }
    }

    #[test]
    fn probe_rejects_inapplicable_parity_modulus() {
        assert!(necessity_probe(SearchSpace { q: 6, n: 3 }, SearchMode::Exhaustive).is_err());
    }

    #[test]
    fn sampling_determinism() {
        let size = SearchSpace { q: 8, n: 3 }.size().unwrap();
        for ordinal in 0..50u64 {
            let a = sampled_index(42, ordinal, size);
            let b = sampled_index(42, ordinal, size);
            assert_eq!(a, b);
            assert!(a < size);
        }
        assert_ne!(sampled_index(42, 0, size), sampled_index(43, 0, size));
    }

    #[test]
    fn shard_partitions() {
        let ranges = shard(10, 3);
        assert_eq!(ranges, vec![
            ShardRange { start: 0, end: 4 },
            ShardRange { start: 4, end: 7 },
            ShardRange { start: 7, end: 10 },
        ]);
        assert_eq!(shard(5, 1), vec![ShardRange { start: 0, end: 5 }]);
    }
}
