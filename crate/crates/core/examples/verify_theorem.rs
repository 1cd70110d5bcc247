//! Full decomposition report for a table (S6 by default).
//!
//!     cargo run --example verify_theorem [FILE]

use semiaut::inflation::TransversalPolicy;
use semiaut::theorem::verify_theorem;
use semiaut::{fixtures, parse_table, Limits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = match std::env::args().nth(1) {
        Some(path) => parse_table(&std::fs::read_to_string(path)?)?,
        None => fixtures::s6(),
    };
    let report = verify_theorem(&table, TransversalPolicy::Least, &Limits::default())?;
    print!("{}", report.to_text());
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}
