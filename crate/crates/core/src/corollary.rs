//! Constant for arbitrary finite groups.
//!
//! With `rho(n) <= C(n) n` for solvable groups, the bound for arbitrary
//! groups is `n^4 (28 C(n) + C(n)^2 / n^2 + C(n) / n^3)` for `n >= 2`. Everything
//! here is exact rational arithmetic; decimals are for display only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ledger::Ledger;
use crate::tail::{CrossoverResult, Verdict};

/// The `n = 1` case is settled separately: `rho_g(1) <= 4`.
pub const RHO_G_ONE: u64 = 4;

/// `28 C + C^2 / n^2 + C / n^3`.
pub fn f_value(n: u64, c: &BigRational) -> Result<BigRational> {
    if n <= 1 {
        return Err(Error::InvalidArgument(format!("f(n, C) needs n >= 2, got {n}")));
    }
    if !c.is_positive() {
        return Err(Error::InvalidArgument(format!("f(n, C) needs C > 0, got {c}")));
    }
    Ok(f_value_unchecked(n, c))
}

fn f_value_unchecked(n: u64, c: &BigRational) -> BigRational {
    let n = BigRational::from_integer(BigInt::from(n));
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    c * BigRational::from_integer(28.into()) + c * c / n2 + c / n3
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryRow {
    pub n: u64,
    pub ratio: BigRational,
    pub f: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    pub rows: Vec<CorollaryRow>,
    pub sup_value: BigRational,
    pub sup_at: u64,
    /// `(n0, K)`: from `n0` on `C(n) <= K`, so `f(n) <= f(n0, K)`.
    pub tail: Option<(u64, BigRational)>,
    pub tail_bound: Option<BigRational>,
}

impl CorollaryReport {
    /// `ceil(sup)`, only when the tail is dominated by the computed range.
    pub fn certified_constant(&self) -> Option<BigInt> {
        match &self.tail_bound {
            Some(t) if *t <= self.sup_value => Some(self.sup_value.ceil().to_integer()),
            _ => None,
        }
    }

    /// Builds a report from explicit ratios `C(n)`; `n = 1` rows are skipped.
    pub fn from_ratios<I>(ratios: I, tail: Option<(u64, BigRational)>) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        let mut rows = Vec::new();
        let mut sup_value = BigRational::zero();
        let mut sup_at = 0;
        for (n, ratio) in ratios {
            if n < 2 {
                continue;
            }
            // zero ratios are allowed here so degenerate inputs report sup = 0
            let f = if ratio.is_zero() { BigRational::zero() } else { f_value(n, &ratio)? };
            if rows.is_empty() || f > sup_value {
                sup_value = f.clone();
                sup_at = n;
            }
            rows.push(CorollaryRow { n, ratio, f });
        }
        let tail_bound = match &tail {
            Some((n0, k)) => Some(f_value(*n0, k)?),
            None => None,
        };
        Ok(Self { rows, sup_value, sup_at, tail, tail_bound })
    }
}

/// Evaluates the ledger's `C(n)` for `2 <= n < n0` and bounds the rest by `f(n0, K)`.
pub fn certify_corollary(ledger: &Ledger, crossover: &CrossoverResult) -> Result<CorollaryReport> {
    if crossover.verdict != Verdict::Holds {
        return Err(Error::InvalidArgument(format!("crossover at n0 = {} is not certified", crossover.n0)));
    }
    let last = crossover.n0.saturating_sub(1);
    if ledger.n_max() < last {
        return Err(Error::InvalidArgument(format!(
            "ledger ends at n = {} but the crossover needs it through n = {last}",
            ledger.n_max()
        )));
    }
    let ratios = ledger.entries().iter().filter(|e| e.n <= last).map(|e| (e.n, e.ratio()));
    CorollaryReport::from_ratios(ratios, Some((crossover.n0, crossover.k.clone())))
}
