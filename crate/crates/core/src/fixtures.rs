//! Small named semigroups used throughout tests and examples.

use crate::table::CayleyTable;

/// Null semigroup of the given order: every product is `0`.
pub fn null(order: usize) -> CayleyTable {
    CayleyTable::from_fn(order, |_, _| 0).expect("null semigroup")
}

/// Left-zero semigroup: `xy = x`.
pub fn left_zero(order: usize) -> CayleyTable {
    CayleyTable::from_fn(order, |x, _| x).expect("left-zero semigroup")
}

pub fn n3() -> CayleyTable {
    null(3)
}

pub fn n4() -> CayleyTable {
    null(4)
}

pub fn l2() -> CayleyTable {
    left_zero(2)
}

/// Inflation of `L2` with fibers `{0,2,4} -> 0` and `{1,3,5} -> 1`;
/// row `x` is constant `x mod 2`.
pub fn s6() -> CayleyTable {
    CayleyTable::from_fn(6, |x, _| x % 2).expect("S6")
}

/// Inflation of `L2` with fibers `{0,2} -> 0` and `{1,3} -> 1`.
pub fn il2() -> CayleyTable {
    CayleyTable::from_fn(4, |x, _| x % 2).expect("IL2")
}

/// `(name, table)` pairs for every named fixture.
pub fn all() -> Vec<(&'static str, CayleyTable)> {
    vec![
        ("N3", n3()),
        ("N4", n4()),
        ("L2", l2()),
        ("S6", s6()),
        ("IL2", il2()),
    ]
}
