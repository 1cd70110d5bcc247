//! Build an inflation of a base semigroup from fiber sizes and verify it.
//!
//!     cargo run --example build_inflation

use semiaut::fixtures;
use semiaut::inflation::{build_inflation, verify_inflation, FiberSizeSpec};
use semiaut::theorem::verify_theorem;
use semiaut::Limits;

fn main() -> semiaut::Result<()> {
    let spec = FiberSizeSpec::parse("# left-zero base\n2\n0 0\n1 1\nsizes: 3 2\n")?;
    let (table, theta) = build_inflation(&spec, Limits::default().max_order)?;
    print!("{table}");
    println!("theta = {:?}", theta.theta());
    println!("inflation axioms: {:?}", verify_inflation(&table, &theta));

    let report = verify_theorem(&table, Default::default(), &Limits::default())?;
    println!(
        "|Aut S| = {} = |H| {} * |G| {}",
        report.aut_order, report.h_order, report.g_order
    );

    // a larger base: the null semigroup of order 3 with mixed fibers
    let spec = FiberSizeSpec::new(fixtures::n3(), vec![1, 2, 3])?;
    let (table, _) = build_inflation(&spec, 12)?;
    let report = verify_theorem(&table, Default::default(), &Limits::default())?;
    println!("N3 inflated by (1,2,3): psi classes {:?}, |Aut| = {}", report.psi_class_sizes, report.aut_order);
    Ok(())
}
