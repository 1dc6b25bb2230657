mod common;

use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use common::{scan_threshold, TrialCounts};
use rho_cert::oracle::ROSSER_SCHOENFELD;
use rho_cert::{
    build_ledger, eliminable, f_value, plum_threshold, quadratic_upper, recursion_upper, refine_upper,
    tail_value, Ledger, PrimeOracle, Strategy,
};

const C: f64 = ROSSER_SCHOENFELD.c;

fn oracle() -> &'static PrimeOracle {
    static ORACLE: OnceLock<PrimeOracle> = OnceLock::new();
    ORACLE.get_or_init(|| PrimeOracle::new(200_000).unwrap())
}

fn trial() -> &'static TrialCounts {
    static TRIAL: OnceLock<TrialCounts> = OnceLock::new();
    TRIAL.get_or_init(|| TrialCounts::new(30_000))
}

fn ledger() -> &'static Ledger {
    static LEDGER: OnceLock<Ledger> = OnceLock::new();
    LEDGER.get_or_init(|| build_ledger(265, oracle()).unwrap())
}

proptest! {
    #[test]
    fn pi_steps_by_primality(x in 1i64..200_000) {
        let o = oracle();
        let step = o.pi(x).unwrap() - o.pi(x - 1).unwrap();
        prop_assert_eq!(step, u64::from(common::is_prime(x as u64)));
    }

    #[test]
    fn nth_prime_brackets_x(x in 2i64..199_000) {
        let o = oracle();
        let m = o.pi(x).unwrap() as i64;
        prop_assert!(o.nth_prime(m).unwrap() as i64 <= x);
        prop_assert!(x < o.nth_prime(m + 1).unwrap() as i64);
    }

    #[test]
    fn inverse_pi_is_tight(m in 0i64..17_000) {
        let o = oracle();
        let x = o.max_x_with_pi_at_most(m).unwrap().unwrap();
        prop_assert_eq!(o.pi(x).unwrap(), m as u64);
        prop_assert_eq!(o.pi(x + 1).unwrap(), m as u64 + 1);
    }

    #[test]
    fn threshold_matches_linear_scan(n in 5u64..=50, offset in 1u64..2000) {
        let top = quadratic_upper(n).unwrap();
        let k = 2 * n + 1 + offset % (top - 2 * n);
        prop_assert_eq!(plum_threshold(n, k, oracle()).unwrap(), scan_threshold(n, k, trial()));
    }

    #[test]
    fn witness_invariants(n in 5u64..=120, offset in 1u64..5000) {
        let top = quadratic_upper(n).unwrap().min(6 * n);
        let k = 2 * n + 1 + offset % (top - 2 * n);
        let w = eliminable(n, k, oracle(), Strategy::DerivedSeries).unwrap();
        let t = trial();
        let base = k as i64 - 3 * n as i64;
        if w.threshold >= 0 {
            prop_assert!(t.pi(base + w.threshold) as i64 <= w.m_plum);
            prop_assert!(t.pi(base + w.threshold + 1) as i64 > w.m_plum);
        } else {
            prop_assert!(w.m_plum < 0 || t.pi(base) as i64 > w.m_plum);
        }
        prop_assert_eq!(w.mustard_holds, 4 * n as i64 - w.threshold <= k as i64 - t.pi(k as i64) as i64);
        prop_assert_eq!(w.eliminated, w.mustard_holds);
    }

    #[test]
    fn refine_stops_at_first_survivor(n in 5u64..=80, extra in 0u64..200) {
        let lower = 2 * n;
        let seed = quadratic_upper(n).unwrap().min(5 * n + extra).max(lower);
        let (upper, witnesses) = refine_upper(n, seed, lower, oracle(), Strategy::DerivedSeries).unwrap();
        prop_assert!(upper >= lower && upper <= seed);
        let ks: Vec<u64> = witnesses.iter().map(|w| w.k).collect();
        let expected: Vec<u64> = (upper..=seed).rev().collect();
        prop_assert_eq!(ks, expected);
        prop_assert!(!witnesses.last().unwrap().eliminated);
        prop_assert!(witnesses[..witnesses.len() - 1].iter().all(|w| w.eliminated));
    }

    #[test]
    fn larger_slope_gives_smaller_tail(n in 3u64..10_000_000) {
        prop_assert!(tail_value(n, C, 3).unwrap() < tail_value(n, C, 2).unwrap());
    }

    #[test]
    fn f_monotone(n in 2u64..500, a in 1i64..1000, b in 1i64..1000, d in 1i64..100) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assume!(lo < hi);
        let lo = BigRational::new(lo.into(), d.into());
        let hi = BigRational::new(hi.into(), d.into());
        prop_assert!(f_value(n, &lo).unwrap() < f_value(n, &hi).unwrap());
        prop_assert!(f_value(n + 1, &lo).unwrap() < f_value(n, &lo).unwrap());
    }
}

#[test]
fn ledger_invariants() {
    let l = ledger();
    for n in 1..=265 {
        let e = l.get(n).unwrap();
        assert!(e.lower <= e.upper);
        assert!(e.upper >= 2 * n && e.lower >= 2 * n);
        assert!(e.provenance.iter().all(|a| e.upper <= a.value), "n = {n}: {}", e.provenance_summary());
        if n >= 5 {
            let prev = l.upper(n - 1).unwrap();
            assert!(e.upper <= recursion_upper(prev, n));
            assert!(e.upper <= quadratic_upper(n).unwrap());
            assert!(e.upper <= e.seed.unwrap());
        }
    }
}

#[test]
fn ledger_is_deterministic() {
    let again = build_ledger(265, &PrimeOracle::new(200_000).unwrap()).unwrap();
    assert_eq!(&again, ledger());
}

#[test]
fn refinement_never_raises_bounds() {
    let full = ledger();
    let counting = rho_cert::build_ledger_with(265, oracle(), Strategy::CountingOnly).unwrap();
    for e in full.entries() {
        if let Some(seed) = e.seed {
            assert!(e.upper <= seed);
        }
        // the threshold only ever lowers the left side of the counting test
        assert!(e.upper <= counting.upper(e.n).unwrap(), "n = {}", e.n);
    }
}
