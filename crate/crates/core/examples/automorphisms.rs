//! Enumerate automorphism groups of the bundled fixtures.
//!
//!     cargo run --example automorphisms

use semiaut::automorphism::enumerate_automorphisms;
use semiaut::{fixtures, Limits};

fn main() -> semiaut::Result<()> {
    let limits = Limits::default();
    for (name, table) in fixtures::all() {
        let aut = enumerate_automorphisms(&table, &limits)?;
        let cycles: Vec<String> = aut.iter().map(|p| p.cycle_string()).collect();
        println!("{name:>4}: |Aut| = {:<3} {}", aut.order(), cycles.join(" "));
    }
    // order 12 is still instant thanks to propagation
    let big = semiaut::CayleyTable::from_fn(12, |x, _| x % 3)?;
    println!("x mod 3 on 12 elements: |Aut| = {}", enumerate_automorphisms(&big, &limits)?.order());
    Ok(())
}
