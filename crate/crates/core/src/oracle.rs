//! Exact prime counting over a bounded range, plus the analytic upper bound
//! `pi(x) <= 1.25506 x / log x` valid for `x >= 2`.

use std::io::Write;

use crate::error::{Error, Result};

/// Sieve limit used when none is configured.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

/// Sieve-backed table of `pi(x)` for `0 <= x <= limit`.
///
/// Immutable once built; share it by reference across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeOracle {
    limit: u64,
    pi_table: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeOracle {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::LimitTooSmall(limit));
        }
        let size = usize::try_from(limit)
            .ok()
            .and_then(|l| l.checked_add(1))
            .ok_or_else(|| Error::InvalidArgument(format!("sieve limit {limit} too large")))?;

        let mut composite = vec![false; size];
        let mut i = 2usize;
        while i * i < size {
            if !composite[i] {
                let mut j = i * i;
                while j < size {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }

        let mut pi_table = Vec::with_capacity(size);
        let mut primes = Vec::new();
        let mut count = 0u32;
        for (x, &is_composite) in composite.iter().enumerate() {
            if x >= 2 && !is_composite {
                count += 1;
                primes.push(x as u64);
            }
            pi_table.push(count);
        }

        Ok(Self { limit, pi_table, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    /// Number of primes `<= x`. Zero for every `x < 2`, negative included.
    pub fn pi(&self, x: i64) -> Result<u64> {
        if x < 2 {
            return Ok(0);
        }
        if x as u64 > self.limit {
            return Err(Error::BeyondSieve { x, limit: self.limit });
        }
        Ok(u64::from(self.pi_table[x as usize]))
    }

    /// The `m`-th prime, 1-indexed.
    pub fn nth_prime(&self, m: i64) -> Result<u64> {
        if m < 1 || m as u64 > self.primes.len() as u64 {
            return Err(Error::PrimeIndexOutOfRange { index: m, count: self.primes.len() });
        }
        Ok(self.primes[(m - 1) as usize])
    }

    /// Largest `x` with `pi(x) <= m`, i.e. `p_{m+1} - 1`.
    ///
    /// Returns `None` for `m < 0`: no `x` qualifies since `pi >= 0`. Fails when
    /// `p_{m+1}` lies past the sieve, because then the answer is not known.
    pub fn max_x_with_pi_at_most(&self, m: i64) -> Result<Option<i64>> {
        if m < 0 {
            return Ok(None);
        }
        let next =
            m.checked_add(1).ok_or_else(|| Error::InvalidArgument(format!("prime index {m} overflows")))?;
        match self.nth_prime(next) {
            Ok(p) => Ok(Some(p as i64 - 1)),
            Err(_) => Err(Error::BeyondSieve { x: next, limit: self.limit }),
        }
    }

    /// Writes `m<TAB>p_m` for every stored prime.
    pub fn dump_primes<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, p) in self.primes.iter().enumerate() {
            writeln!(out, "{}\t{}", i + 1, p)?;
        }
        Ok(())
    }
}

/// `pi(x) <= c * x / log x` for `x >= validity_floor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPiBound {
    pub c: f64,
    pub validity_floor: u64,
}

/// Rosser and Schoenfeld's constant.
pub const ROSSER_SCHOENFELD: AnalyticPiBound = AnalyticPiBound { c: 1.25506, validity_floor: 2 };

impl AnalyticPiBound {
    pub fn bound(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < self.validity_floor as f64 {
            return Err(Error::InvalidArgument(format!(
                "analytic pi bound only quoted for x >= {}, got {x}",
                self.validity_floor
            )));
        }
        Ok(self.c * x / x.ln())
    }
}

/// `1.25506 x / log x`.
pub fn rs_upper(x: f64) -> Result<f64> {
    ROSSER_SCHOENFELD.bound(x)
}
