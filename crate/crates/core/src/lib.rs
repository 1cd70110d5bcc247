//! Inflation structure and automorphism groups of finite semigroups.
//!
//! Given a finite semigroup `S` as a Cayley table, this crate computes the
//! relation `h` (elements indistinguishable by multiplication on either
//! side), the congruence `psi` that groups `h`-related non-products, a
//! transversal `T` of `psi` and the retraction `θ: S -> T` exhibiting `S`
//! as an inflation of `T`. On top of that it enumerates `Aut S` and checks
//! the decomposition
//!
//! ```text
//! Aut S = G ⋊ H̄,   G = ⊕ Sym(X_a),   H̄ ≅ { τ ∈ Aut T : |X_a| = |X_{aτ}| }
//! ```
//!
//! where the `X_a` are the `psi`-classes.
//!
//! ```
//! use semiaut::{fixtures, theorem::verify_theorem, inflation::TransversalPolicy, Limits};
//!
//! let report = verify_theorem(&fixtures::s6(), TransversalPolicy::Least, &Limits::default()).unwrap();
//! assert_eq!((report.aut_order, report.h_order, report.g_order), (8, 2, 4));
//! assert!(report.all_flags_hold());
//! ```

pub mod automorphism;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod inflation;
pub mod partition;
pub mod perm;
pub mod table;
pub mod theorem;

pub use error::{Error, Result};
pub use partition::Partition;
pub use perm::{PermGroup, Permutation};
pub use table::{parse_table, CayleyTable, ElementId, Magma};

/// Size bounds shared by the search-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest table order accepted by automorphism enumeration and
    /// inflation construction.
    pub max_order: usize,
    /// Largest order of an explicitly stored permutation group.
    pub max_group_order: u128,
    /// Node budget for a single automorphism search.
    pub max_search_nodes: u64,
    /// Largest order for exhaustive semigroup enumeration.
    pub max_enumeration_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 12,
            max_group_order: 5040,
            max_search_nodes: 100_000_000,
            max_enumeration_order: 4,
        }
    }
}

impl Limits {
    /// Raises the order caps (both table and enumeration) to `max_order`.
    pub fn with_max_order(self, max_order: usize) -> Self {
        Limits {
            max_order,
            max_enumeration_order: max_order,
            ..self
        }
    }
}
