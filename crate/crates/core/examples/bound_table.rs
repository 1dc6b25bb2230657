//! Builds the ledger through n = 265 and checks rho(n) <= 5n on it.
//!
//! cargo run -p rho-cert --example bound_table

use num_rational::BigRational;
use rho_cert::report::render_table;
use rho_cert::{build_ledger, verify_linear, OutputFormat, PrimeOracle};

fn main() -> rho_cert::Result<()> {
    let oracle = PrimeOracle::new(1_000_000)?;
    let ledger = build_ledger(265, &oracle)?;

    print!("{}", render_table(&ledger, 1, 15, OutputFormat::Text)?);

    let report = verify_linear(&ledger, &BigRational::from_integer(5.into()));
    println!(
        "upper(n) <= 5n for all n <= {}: {}; equality at {:?}; max C(n) = {} at n = {}",
        ledger.n_max(),
        report.all_pass(),
        report.equality_set,
        report.max_ratio,
        report.max_ratio_at
    );
    let e = ledger.get(265).unwrap();
    println!("n = 265: upper = {}, C(n) = {:.4}", e.upper, e.upper as f64 / 265.0);
    Ok(())
}
