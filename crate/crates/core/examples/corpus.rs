//! Enumerate every semigroup of a small order and verify the decomposition
//! on each one.
//!
//!     cargo run --release --example corpus [ORDER]

use semiaut::enumeration::{corpus_verify, enumerate_semigroups, EnumerationMode, EnumerationTask};
use semiaut::inflation::TransversalPolicy;
use semiaut::Limits;

fn main() -> semiaut::Result<()> {
    let order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let limits = Limits::default();
    let up_to_iso = enumerate_semigroups(&EnumerationTask::new(order, EnumerationMode::UpToIso), &limits)?;
    println!("order {order}: {} semigroups up to isomorphism", up_to_iso.len());
    let summary = corpus_verify(
        &EnumerationTask::new(order, EnumerationMode::Labelled),
        TransversalPolicy::Least,
        &limits,
        None,
    )?;
    print!("{}", summary.to_text());
    Ok(())
}
