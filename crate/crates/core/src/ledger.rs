//! Per-`n` bounds on `rho(n)`, seeded from the known values and propagation
//! rules, then tightened by elimination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::elimination::{refine_upper, EliminationWitness, Strategy};
use crate::error::{Error, Result};
use crate::oracle::PrimeOracle;

/// Exact values for `n = 1..=4`.
pub const BASE_VALUES: [(u64, u64); 4] = [(1, 2), (2, 5), (3, 8), (4, 12)];

pub fn base_values() -> &'static [(u64, u64)] {
    &BASE_VALUES
}

/// Bound at `n` from a bound at `n - 1`: `rho(n) <= rho(n - 1) + n + 1`.
pub fn recursion_upper(prev_upper: u64, n: u64) -> u64 {
    prev_upper + n + 1
}

/// `n(n + 3)/2 - 2`, valid for `n >= 4`.
pub fn quadratic_upper(n: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("quadratic bound needs n >= 4, got {n}")));
    }
    Ok(n * (n + 3) / 2 - 2)
}

/// `n(n + 3)/2 - 9` for `n >= 9`. A consequence of the pipeline, only ever checked.
pub fn improved_quadratic_upper(n: u64) -> Result<u64> {
    if n < 9 {
        return Err(Error::InvalidArgument(format!("improved quadratic bound needs n >= 9, got {n}")));
    }
    Ok(n * (n + 3) / 2 - 9)
}

/// `slope * n`. Slope 2 is proven for all `n`; slope 3 is only known when
/// `4 | n` and is otherwise a hypothesis.
pub fn lower_bound(n: u64, slope: u32) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidArgument("lower bound needs n >= 1".into()));
    }
    match slope {
        2 | 3 => Ok(u64::from(slope) * n),
        other => Err(Error::InvalidArgument(format!("slope must be 2 or 3, got {other}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Base,
    Recursion,
    Quadratic,
    QuadraticImproved,
    Elimination,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Base => "base",
            Rule::Recursion => "recursion",
            Rule::Quadratic => "quadratic",
            Rule::QuadraticImproved => "quadratic_improved",
            Rule::Elimination => "elimination",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
    /// `min(quadratic, recursion)`; `None` for the exact base values.
    pub seed: Option<u64>,
    pub provenance: Vec<RuleApplication>,
    pub witnesses: Vec<EliminationWitness>,
}

impl BoundEntry {
    /// `C(n) = upper / n`.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.upper), BigInt::from(self.n))
    }

    /// e.g. `quadratic=52 recursion=50 elimination=45`.
    pub fn provenance_summary(&self) -> String {
        self.provenance.iter().map(|a| format!("{}={}", a.rule.name(), a.value)).collect::<Vec<_>>().join(" ")
    }
}

/// Contiguous bounds for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    strategy: Strategy,
    entries: Vec<BoundEntry>,
}

impl Ledger {
    pub fn n_max(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn get(&self, n: u64) -> Option<&BoundEntry> {
        n.checked_sub(1).and_then(|i| self.entries.get(i as usize))
    }

    pub fn upper(&self, n: u64) -> Option<u64> {
        self.get(n).map(|e| e.upper)
    }

    pub fn entries(&self) -> &[BoundEntry] {
        &self.entries
    }
}

/// Builds bounds for `n = 1..=n_max` using the default elimination strategy.
pub fn build_ledger(n_max: u64, oracle: &PrimeOracle) -> Result<Ledger> {
    build_ledger_with(n_max, oracle, Strategy::DerivedSeries)
}

pub fn build_ledger_with(n_max: u64, oracle: &PrimeOracle, strategy: Strategy) -> Result<Ledger> {
    if n_max < 4 {
        return Err(Error::InvalidArgument(format!("ledger needs n_max >= 4, got {n_max}")));
    }
    let mut entries: Vec<BoundEntry> = BASE_VALUES
        .iter()
        .map(|&(n, value)| BoundEntry {
            n,
            lower: value,
            upper: value,
            seed: None,
            provenance: vec![RuleApplication { rule: Rule::Base, value }],
            witnesses: Vec::new(),
        })
        .collect();

    for n in 5..=n_max {
        let prev = entries.last().map(|e| e.upper).expect("base values present");
        let quadratic = quadratic_upper(n)?;
        let recursion = recursion_upper(prev, n);
        let seed = quadratic.min(recursion);
        let lower = lower_bound(n, 2)?;

        let (upper, witnesses) = refine_upper(n, seed, lower, oracle, strategy)?;

        let mut provenance = vec![
            RuleApplication { rule: Rule::Quadratic, value: quadratic },
            RuleApplication { rule: Rule::Recursion, value: recursion },
            RuleApplication { rule: Rule::Elimination, value: upper },
        ];
        if n >= 9 && strategy == Strategy::DerivedSeries {
            let improved = improved_quadratic_upper(n)?;
            if upper > improved {
                return Err(Error::Inconsistency(format!(
                    "upper bound {upper} at n = {n} exceeds n(n+3)/2 - 9 = {improved}"
                )));
            }
            provenance.push(RuleApplication { rule: Rule::QuadraticImproved, value: improved });
        }

        entries.push(BoundEntry { n, lower, upper, seed: Some(seed), provenance, witnesses });
    }
    Ok(Ledger { strategy, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearRow {
    pub n: u64,
    pub upper: u64,
    pub holds: bool,
    pub equality: bool,
}

/// Outcome of checking `upper(n) <= K n` across a ledger.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearReport {
    pub k: BigRational,
    pub rows: Vec<LinearRow>,
    pub equality_set: BTreeSet<u64>,
    pub max_ratio: BigRational,
    pub max_ratio_at: u64,
}

impl LinearReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().filter(|r| !r.holds).map(|r| r.n)
    }
}

pub fn verify_linear(ledger: &Ledger, k: &BigRational) -> LinearReport {
    let mut rows = Vec::with_capacity(ledger.entries.len());
    let mut equality_set = BTreeSet::new();
    let mut max_ratio = BigRational::from_integer(BigInt::from(0));
    let mut max_ratio_at = 1;
    for entry in &ledger.entries {
        let ratio = entry.ratio();
        let holds = ratio <= *k;
        let equality = ratio == *k;
        if equality {
            equality_set.insert(entry.n);
        }
        if ratio > max_ratio {
            max_ratio = ratio;
            max_ratio_at = entry.n;
        }
        rows.push(LinearRow { n: entry.n, upper: entry.upper, holds, equality });
    }
    LinearReport { k: k.clone(), rows, equality_set, max_ratio, max_ratio_at }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn base() {
        assert_eq!(base_values(), &[(1, 2), (2, 5), (3, 8), (4, 12)]);
    }

    #[test]
    fn recursion() {
        assert_eq!(recursion_upper(12, 5), 18);
        assert_eq!(recursion_upper(45, 10), 56);
        assert_eq!(recursion_upper(0, 2), 3);
    }

    #[test]
    fn quadratic() {
        assert_eq!(quadratic_upper(8).unwrap(), 42);
        assert_eq!(quadratic_upper(9).unwrap(), 52);
        assert_eq!(quadratic_upper(10).unwrap(), 63);
        assert_eq!(quadratic_upper(4).unwrap(), 12);
        assert!(quadratic_upper(3).is_err());
        assert!(improved_quadratic_upper(8).is_err());
        assert_eq!(improved_quadratic_upper(9).unwrap(), 45);
    }

    #[test]
    fn lower() {
        assert_eq!(lower_bound(7, 2).unwrap(), 14);
        assert_eq!(lower_bound(266, 2).unwrap(), 532);
        assert_eq!(lower_bound(266, 3).unwrap(), 798);
        assert!(lower_bound(5, 4).is_err());
        assert!(lower_bound(0, 2).is_err());
    }

    #[test]
    fn small_ledger() {
        let o = PrimeOracle::new(10_000).unwrap();
        let l = build_ledger(12, &o).unwrap();
        let uppers: Vec<u64> = (1..=12).map(|n| l.upper(n).unwrap()).collect();
        assert_eq!(uppers, [2, 5, 8, 12, 18, 25, 33, 40, 45, 49, 53, 57]);
        let e9 = l.get(9).unwrap();
        assert_eq!(e9.seed, Some(50));
        assert_eq!(e9.provenance_summary(), "quadratic=52 recursion=50 elimination=45 quadratic_improved=45");
        assert!(l.get(0).is_none());
        assert!(l.get(13).is_none());
        assert!(build_ledger(3, &o).is_err());
    }

    #[test]
    fn ledger_needs_big_enough_sieve() {
        let o = PrimeOracle::new(30).unwrap();
        assert!(matches!(build_ledger(12, &o), Err(Error::BeyondSieve { .. })));
    }

    #[test]
    fn linear_report() {
        let o = PrimeOracle::new(10_000).unwrap();
        let l = build_ledger(12, &o).unwrap();
        let r = verify_linear(&l, &rat(5, 1));
        assert!(r.all_pass());
        assert_eq!(r.equality_set.iter().copied().collect::<Vec<_>>(), [8, 9]);
        assert_eq!(r.max_ratio, rat(5, 1));
        assert_eq!(r.max_ratio_at, 8);

        let r = verify_linear(&l, &rat(4, 1));
        assert!(!r.all_pass());
        assert!(r.failures().any(|n| n == 8));
    }
}
