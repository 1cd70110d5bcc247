//! Parse a Cayley table and check associativity.
//!
//!     cargo run --example check_table [FILE]

use semiaut::table::{check_associativity, product_set};
use semiaut::Magma;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => "# Z2\n2\n0 1\n1 0\n".to_string(),
    };
    let magma = Magma::parse(&text)?;
    match check_associativity(&magma) {
        Ok(()) => {
            let table = semiaut::CayleyTable::new(magma)?;
            println!("associative semigroup of order {}", table.order());
            println!("S^2 = {:?}", product_set(&table));
        }
        Err(w) => println!(
            "not associative: ({i}*{j})*{k} != {i}*({j}*{k})",
            i = w.i,
            j = w.j,
            k = w.k
        ),
    }

    let broken = Magma::from_rows(&[vec![0, 1], vec![0, 0]])?;
    println!("(0 1 / 0 0) -> {:?}", check_associativity(&broken));
    Ok(())
}
