//! Analytic tail: with `rho(n) >= slope * n` and `pi(x) <= c x / log x`,
//! `rho(n) <= 4n / (1 - c / log(slope * n))`. Past the crossover this is below `K n`.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strict inequalities on floating-point quantities must clear this margin.
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Within the guard band of the threshold; neither claim is made.
    Inconclusive,
}

/// `value < bound`, decided only outside the guard band.
pub fn strictly_below(value: f64, bound: f64) -> Verdict {
    if value <= bound - GUARD_BAND {
        Verdict::Holds
    } else if value >= bound + GUARD_BAND {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    }
}

/// `4 / (1 - c / log(slope * n))`.
pub fn tail_value(n: u64, c: f64, slope: u32) -> Result<f64> {
    let x = f64::from(slope) * n as f64;
    if x < 2.0 {
        return Err(Error::VacuousTail { n, slope });
    }
    let denom = 1.0 - c / x.ln();
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::VacuousTail { n, slope });
    }
    Ok(4.0 / denom)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverResult {
    pub k: BigRational,
    pub c: f64,
    pub slope: u32,
    pub n0: u64,
    pub value_at_n0: f64,
    /// Value at `n0 - 1`, or `None` where the bound is vacuous there.
    pub value_before: Option<f64>,
    /// Outcome of the two-sided guarded check.
    pub verdict: Verdict,
}

impl CrossoverResult {
    /// `K - value_at_n0`.
    pub fn margin(&self) -> f64 {
        self.k.to_f64().unwrap_or(f64::NAN) - self.value_at_n0
    }

    /// Slope 3 rests on `rho(n) >= 3n`, which is not known for every `n`.
    pub fn conditional(&self) -> bool {
        self.slope != 2
    }
}

/// Smallest `n0` with `tail_value(n0) < K`.
///
/// The closed form `slope * n0 > exp(cK / (K - 4))` only seeds the search; the
/// answer is confirmed by evaluating at `n0` and `n0 - 1`.
pub fn find_crossover(k: &BigRational, c: f64, slope: u32) -> Result<CrossoverResult> {
    if slope != 2 && slope != 3 {
        return Err(Error::InvalidArgument(format!("slope must be 2 or 3, got {slope}")));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidArgument(format!("constant c must be positive, got {c}")));
    }
    let kf = k.to_f64().ok_or_else(|| Error::InvalidArgument(format!("K = {k} not representable")))?;
    if kf.is_nan() || kf <= 4.0 {
        return Err(Error::InvalidArgument(format!("no crossover exists for K = {k} <= 4")));
    }

    let guess = (c * kf / (kf - 4.0)).exp() / f64::from(slope);
    if !guess.is_finite() || guess > 1e15 {
        return Err(Error::InvalidArgument(format!("crossover for K = {k} is out of range")));
    }
    let below = |n: u64| matches!(tail_value(n, c, slope), Ok(v) if v < kf);

    let mut n0 = (guess.floor() as u64 + 1).max(1);
    while !below(n0) {
        n0 += 1;
    }
    while n0 > 1 && below(n0 - 1) {
        n0 -= 1;
    }

    let value_at_n0 = tail_value(n0, c, slope)?;
    let value_before = if n0 > 1 { tail_value(n0 - 1, c, slope).ok() } else { None };
    let verdict = match (strictly_below(value_at_n0, kf), value_before) {
        (Verdict::Holds, None) => Verdict::Holds,
        (Verdict::Holds, Some(v)) => match strictly_below(v, kf) {
            Verdict::Fails => Verdict::Holds,
            _ => Verdict::Inconclusive,
        },
        _ => Verdict::Inconclusive,
    };

    Ok(CrossoverResult { k: k.clone(), c, slope, n0, value_at_n0, value_before, verdict })
}

/// Checks that the tail value strictly decreases from `n0` to `n_probe`.
///
/// Analytically `log(slope * n)` grows with `n`, so the value falls wherever it
/// is defined. This confirms that on a grid: every step for the first thousand
/// integers, then geometrically spaced points out to `n_probe`.
pub fn tail_monotone_check(n0: u64, n_probe: u64, c: f64, slope: u32) -> Result<bool> {
    if n_probe <= n0 {
        return Err(Error::InvalidArgument(format!("probe {n_probe} must exceed n0 = {n0}")));
    }
    let mut grid: Vec<u64> = (n0..=n_probe.min(n0.saturating_add(1000))).collect();
    let mut x = *grid.last().expect("non-empty grid") as f64;
    while (x as u64) < n_probe {
        x *= 1.01;
        grid.push((x as u64).min(n_probe));
    }
    grid.dedup();

    let mut prev = tail_value(grid[0], c, slope)?;
    for &n in &grid[1..] {
        let v = tail_value(n, c, slope)?;
        if v.is_nan() || v >= prev {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}
