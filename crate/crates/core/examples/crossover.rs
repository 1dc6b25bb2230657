//! Where the analytic tail takes over, for a few targets K.
//!
//! cargo run -p rho-cert --example crossover

use rho_cert::oracle::ROSSER_SCHOENFELD;
use rho_cert::report::render_crossover;
use rho_cert::{find_crossover, parse_rational, tail_monotone_check, tail_value, OutputFormat};

fn main() -> rho_cert::Result<()> {
    let c = ROSSER_SCHOENFELD.c;
    for (k, slope) in [("5", 2), ("5", 3), ("17/3", 2), ("4.5", 2)] {
        let r = find_crossover(&parse_rational(k)?, c, slope)?;
        print!("{}", render_crossover(&r, OutputFormat::Text));
        println!("decreasing to 10^6: {}\n", tail_monotone_check(r.n0, r.n0.max(1_000_000) + 1, c, slope)?);
    }
    println!("tail(266), slope 3 = {:.6}", tail_value(266, c, 3)?);
    Ok(())
}
