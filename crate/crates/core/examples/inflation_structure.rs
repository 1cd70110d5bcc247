//! The relations h and psi, a transversal T and the retraction theta of a
//! semigroup, for each transversal policy.
//!
//!     cargo run --example inflation_structure

use semiaut::fixtures;
use semiaut::inflation::{verify_inflation, verify_kernel_in_h, InflationAnalysis, TransversalPolicy};
use semiaut::table::product_set;

fn main() {
    let table = fixtures::s6();
    print!("{table}");
    println!("S^2 = {:?}", product_set(&table));
    for policy in [
        TransversalPolicy::Least,
        TransversalPolicy::Greatest,
        TransversalPolicy::Seeded(7),
    ] {
        let a = InflationAnalysis::new(&table, policy);
        println!("-- policy {policy}");
        println!("h     = {}", a.h);
        println!("psi   = {}", a.psi);
        println!("T     = {:?}", a.transversal.representatives());
        println!("theta = {:?}", a.retraction.theta());
        println!(
            "inflation: {:?}, ker theta in h: {:?}",
            verify_inflation(&table, &a.retraction),
            verify_kernel_in_h(&a.retraction, &a.h)
        );
    }
}
