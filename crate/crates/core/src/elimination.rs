//! Elimination of candidate values `k` for `rho(n)`.
//!
//! Splitting the derived series at the third term gives, for a deficiency
//! `lambda >= 0`,
//!
//! ```text
//! k <= 4n + pi(k - 3n + lambda)
//! ```
//!
//! so `k` is contradicted for every `lambda` with `pi(k - 3n + lambda) <= k - 4n - 1`.
//! Since `pi` is non-decreasing those `lambda` form an interval `0..=L`. The
//! remaining `lambda >= L + 1` are handled by `k <= pi(k) + 4n - lambda`, which
//! contradicts `k` once `4n - L <= k - pi(k)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::PrimeOracle;

/// How much of the argument is used when eliminating a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Threshold `L` from the split, then the counting inequality for `lambda > L`.
    #[default]
    DerivedSeries,
    /// Counting inequality alone (`L = -1`), i.e. only `k <= pi(k) + 4n`.
    /// Reproduces the older `17/3` constant.
    CountingOnly,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::DerivedSeries => "derived_series",
            Strategy::CountingOnly => "counting_only",
        })
    }
}

/// Everything evaluated while trying to eliminate `rho(n) = k`.
///
/// The `pi` probes are stored so a checker can replay the comparisons without
/// recomputing the threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationWitness {
    pub n: u64,
    pub k: u64,
    pub strategy: Strategy,
    /// `k - 4n - 1`.
    pub m_plum: i64,
    /// Largest admissible `lambda`, or `-1` when there is none.
    pub threshold: i64,
    /// `pi(k - 3n + L)`, present when `L >= 0`.
    pub pi_at_threshold: Option<u64>,
    /// `pi(k - 3n + L + 1)`, present whenever the threshold was searched
    /// (`m_plum >= 0` under the derived-series strategy).
    pub pi_past_threshold: Option<u64>,
    pub pi_k: u64,
    pub mustard_holds: bool,
    pub eliminated: bool,
}

impl EliminationWitness {
    /// Left side of the counting inequality, `4n - L`.
    pub fn mustard_lhs(&self) -> i64 {
        4 * self.n as i64 - self.threshold
    }

    /// Right side of the counting inequality, `k - pi(k)`.
    pub fn mustard_rhs(&self) -> i64 {
        self.k as i64 - self.pi_k as i64
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("elimination needs n >= 5, got {n}")));
    }
    Ok(())
}

/// Largest `lambda >= 0` with `pi(k - 3n + lambda) <= k - 4n - 1`, or `-1`.
pub fn plum_threshold(n: u64, k: u64, oracle: &PrimeOracle) -> Result<i64> {
    check_n(n)?;
    if k < 2 * n {
        return Err(Error::InvalidArgument(format!("candidate k = {k} below 2n = {}", 2 * n)));
    }
    let (n, k) = (n as i64, k as i64);
    let m = k - 4 * n - 1;
    match oracle.max_x_with_pi_at_most(m)? {
        None => Ok(-1),
        Some(x) => Ok((x - (k - 3 * n)).max(-1)),
    }
}

/// `4n - L <= k - pi(k)`.
pub fn mustard_check(n: u64, k: u64, threshold: i64, oracle: &PrimeOracle) -> Result<bool> {
    check_n(n)?;
    if threshold < -1 {
        return Err(Error::InvalidArgument(format!("threshold {threshold} below -1")));
    }
    let pi_k = oracle.pi(k as i64)? as i64;
    Ok(4 * n as i64 - threshold <= k as i64 - pi_k)
}

/// Attempts to eliminate `rho(n) = k`, returning the full witness.
pub fn eliminable(n: u64, k: u64, oracle: &PrimeOracle, strategy: Strategy) -> Result<EliminationWitness> {
    check_n(n)?;
    if k <= 2 * n {
        return Err(Error::InvalidArgument(format!(
            "candidate k = {k} is not above the lower bound 2n = {}",
            2 * n
        )));
    }
    let (ni, ki) = (n as i64, k as i64);
    let m_plum = ki - 4 * ni - 1;
    let base = ki - 3 * ni;

    let (threshold, pi_at_threshold, pi_past_threshold) = match strategy {
        Strategy::CountingOnly => (-1, None, None),
        Strategy::DerivedSeries if m_plum < 0 => (-1, None, None),
        Strategy::DerivedSeries => {
            let threshold = plum_threshold(n, k, oracle)?;
            let at = if threshold >= 0 { Some(oracle.pi(base + threshold)?) } else { None };
            let past = oracle.pi(base + threshold + 1)?;
            (threshold, at, Some(past))
        }
    };

    let pi_k = oracle.pi(ki)?;
    let mustard_holds = mustard_check(n, k, threshold, oracle)?;
    Ok(EliminationWitness {
        n,
        k,
        strategy,
        m_plum,
        threshold,
        pi_at_threshold,
        pi_past_threshold,
        pi_k,
        mustard_holds,
        eliminated: mustard_holds,
    })
}

/// Walks `k` down from `seed_upper`, stopping at the first candidate that
/// survives. Returns that candidate and one witness per candidate tried.
///
/// Eliminability is not monotone in `k`, so a bound is only certified once
/// every value above it, up to the seed, has been eliminated.
pub fn refine_upper(
    n: u64,
    seed_upper: u64,
    lower: u64,
    oracle: &PrimeOracle,
    strategy: Strategy,
) -> Result<(u64, Vec<EliminationWitness>)> {
    check_n(n)?;
    if lower < 2 * n || seed_upper < lower {
        return Err(Error::InvalidArgument(format!(
            "need seed {seed_upper} >= lower {lower} >= 2n = {}",
            2 * n
        )));
    }
    let mut witnesses = Vec::new();
    let mut k = seed_upper;
    while k > lower {
        let witness = eliminable(n, k, oracle, strategy)?;
        let eliminated = witness.eliminated;
        witnesses.push(witness);
        if !eliminated {
            return Ok((k, witnesses));
        }
        k -= 1;
    }
    if witnesses.is_empty() {
        // seed already sits on the lower bound
        return Ok((k, witnesses));
    }
    Err(Error::Inconsistency(format!(
        "every candidate for rho({n}) in ({lower}, {seed_upper}] was eliminated"
    )))
}
