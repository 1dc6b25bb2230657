#![allow(dead_code)]

/// Prime counts by trial division, independent of the library's sieve.
pub struct TrialCounts {
    counts: Vec<u64>,
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl TrialCounts {
    pub fn new(limit: u64) -> Self {
        let mut counts = Vec::with_capacity(limit as usize + 1);
        let mut c = 0;
        for x in 0..=limit {
            if is_prime(x) {
                c += 1;
            }
            counts.push(c);
        }
        Self { counts }
    }

    pub fn pi(&self, x: i64) -> u64 {
        if x < 2 {
            0
        } else {
            self.counts[x as usize]
        }
    }
}

/// Largest admissible lambda found by scanning upward from 0; -1 if none.
pub fn scan_threshold(n: u64, k: u64, counts: &TrialCounts) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let rhs = k - 4 * n - 1;
    let mut lambda = 0;
    while counts.pi(k - 3 * n + lambda) as i64 <= rhs {
        lambda += 1;
    }
    lambda - 1
}
