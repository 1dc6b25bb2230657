//! Replays the counting inequality alone (no derived-series threshold). It
//! stops at rho(9) <= 51, which only gives K = 17/3.
//!
//! cargo run -p rho-cert --example older_constant

use rho_cert::{parse_rational, run_verify, CertificateWriter, RunConfig, Strategy};

fn main() -> rho_cert::Result<()> {
    for (k, strategy) in
        [("17/3", Strategy::CountingOnly), ("5", Strategy::CountingOnly), ("5", Strategy::DerivedSeries)]
    {
        let config = RunConfig { k: parse_rational(k)?, strategy, ..RunConfig::default() };
        let outcome = run_verify(&config, &mut CertificateWriter::new(std::io::sink()))?;
        println!(
            "K = {k:>4}, {strategy}: rho(9) <= {}, max C(n) = {} at n = {}, passed = {}",
            outcome.ledger.upper(9).unwrap(),
            outcome.linear.max_ratio,
            outcome.linear.max_ratio_at,
            outcome.passed()
        );
    }
    Ok(())
}
