//! Certified upper bounds on `rho(n)`, the largest number of distinct primes
//! dividing `|G|` over finite solvable groups `G` whose element orders each have
//! at most `n` distinct prime divisors.
//!
//! The crate reproduces the computational side of the bound `rho(n) <= 5n`:
//!
//! - [`oracle`]: exact `pi(x)` from a sieve, plus `pi(x) <= 1.25506 x / log x`.
//! - [`ledger`]: known values and propagation rules, tightened per `n`.
//! - [`elimination`]: the threshold/counting argument that rules out candidates.
//! - [`tail`]: the analytic crossover beyond which `rho(n) < K n` follows from `pi` bounds.
//! - [`corollary`]: the resulting constant for arbitrary finite groups.
//! - [`certificate`] and [`checker`]: an auditable record of every inequality and
//!   an independent replay of it.
//!
//! ```
//! use rho_cert::{build_ledger, PrimeOracle};
//!
//! let oracle = PrimeOracle::new(10_000)?;
//! let ledger = build_ledger(12, &oracle)?;
//! assert_eq!(ledger.upper(9), Some(45));
//! # Ok::<(), rho_cert::Error>(())
//! ```

pub mod certificate;
pub mod checker;
pub mod corollary;
pub mod decimal;
pub mod elimination;
pub mod error;
pub mod ledger;
pub mod oracle;
pub mod report;
pub mod tail;
pub mod verify;

pub use certificate::{Certificate, CertificateWriter, Record};
pub use checker::{check_certificate, CheckFailure, CheckReport};
pub use corollary::{certify_corollary, f_value, CorollaryReport};
pub use elimination::{
    eliminable, mustard_check, plum_threshold, refine_upper, EliminationWitness, Strategy,
};
pub use error::{Error, Result};
pub use ledger::{
    base_values, build_ledger, build_ledger_with, lower_bound, quadratic_upper, recursion_upper,
    verify_linear, BoundEntry, Ledger, LinearReport,
};
pub use oracle::{rs_upper, PrimeOracle, DEFAULT_SIEVE_LIMIT};
pub use report::OutputFormat;
pub use tail::{find_crossover, tail_monotone_check, tail_value, CrossoverResult, Verdict};
pub use verify::{parse_rational, run_verify, RunConfig, VerifyOutcome};
