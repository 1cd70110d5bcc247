//! Factor every automorphism of S6 as pi . tau_bar with pi permuting inside
//! psi-classes and tau_bar the canonical extension of an automorphism of T.
//!
//!     cargo run --example decompose

use semiaut::automorphism::enumerate_automorphisms;
use semiaut::inflation::TransversalPolicy;
use semiaut::theorem::{decompose_automorphism, InflationStructure};
use semiaut::{fixtures, Limits};

fn main() -> semiaut::Result<()> {
    let table = fixtures::s6();
    let st = InflationStructure::new(&table, TransversalPolicy::Least)?;
    println!("class listings: {:?}", st.scheme.listings());
    for phi in &enumerate_automorphisms(&table, &Limits::default())? {
        let d = decompose_automorphism(&table, phi, &st.scheme)?;
        println!(
            "{:<16} = {:<10} then {:<16} (tau on T: {})",
            phi.cycle_string(),
            d.pi.cycle_string(),
            d.tau_bar.cycle_string(),
            d.tau.cycle_string()
        );
    }
    Ok(())
}
