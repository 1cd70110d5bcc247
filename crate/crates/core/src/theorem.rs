//! The decomposition `Aut S = G ⋊ H̄` and its machine verification.
//!
//! * `G` is the direct sum of the full symmetric groups on the `psi`-classes.
//! * `H` is the group of automorphisms `τ` of the transversal semigroup `T`
//!   with `|X_a| = |X_{aτ}|` for every `a`.
//! * `H̄` is the image of `H` under the canonical extension: the class of
//!   `a` is listed representative first, remaining ids increasing, and
//!   `τ̄` maps position `k` of `X_a` to position `k` of `X_{aτ}`.
//!
//! Every `φ ∈ Aut S` factors as `φ = π·τ̄` (apply `π ∈ G` first, then
//! `τ̄ ∈ H̄`).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{enumerate_automorphisms, is_automorphism};
use crate::error::{Error, Result};
use crate::inflation::{
    restrict_to_subsemigroup, verify_inflation, verify_kernel_in_h, InflationAnalysis, Remap,
    Transversal, TransversalPolicy,
};
use crate::partition::Partition;
use crate::perm::{subgroup_checks, PermGroup, Permutation};
use crate::table::{is_congruence, CayleyTable, ElementId, Magma};
use crate::Limits;

pub const FACTORIZATION_CONVENTION: &str = "phi = pi * tau_bar (pi in G applied first)";

/// `∏ |X_a|!`, saturating at `u128::MAX`.
pub fn class_group_order(psi: &Partition) -> u128 {
    psi.blocks()
        .iter()
        .map(|b| (1..=b.len() as u128).fold(1u128, |acc, k| acc.saturating_mul(k)))
        .fold(1u128, |acc, f| acc.saturating_mul(f))
}

/// Structural description of `G` without its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiClassGroupSpec {
    pub classes: Vec<Vec<ElementId>>,
    pub order: u128,
    /// Transpositions `(b0 bi)` inside every block with more than one element.
    pub generators: Vec<Permutation>,
}

impl PsiClassGroupSpec {
    pub fn new(psi: &Partition) -> Self {
        let n = psi.order();
        let generators = psi
            .blocks()
            .iter()
            .flat_map(|b| b[1..].iter().map(move |&x| (b[0], x)))
            .map(|(a, b)| {
                let mut images: Vec<ElementId> = (0..n).collect();
                images.swap(a, b);
                Permutation::new_unchecked(images)
            })
            .collect();
        PsiClassGroupSpec {
            classes: psi.blocks().to_vec(),
            order: class_group_order(psi),
            generators,
        }
    }
}

/// Every permutation that maps each `psi`-class onto itself.
pub fn psi_class_group(psi: &Partition, limits: &Limits) -> Result<PermGroup> {
    let order = class_group_order(psi);
    if order > limits.max_group_order {
        return Err(Error::GroupTooLarge {
            order,
            max: limits.max_group_order,
        });
    }
    let n = psi.order();
    let mut elements = vec![(0..n).collect::<Vec<ElementId>>()];
    for block in psi.blocks().iter().filter(|b| b.len() > 1) {
        let mut next = Vec::with_capacity(elements.len() * block.len());
        for images in &elements {
            for arrangement in block.iter().copied().permutations(block.len()) {
                let mut p = images.clone();
                for (&x, y) in block.iter().zip(arrangement) {
                    p[x] = y;
                }
                next.push(p);
            }
        }
        elements = next;
    }
    let elements = elements.into_iter().map(Permutation::new_unchecked).collect();
    Ok(PermGroup::from_elements_unchecked(n, elements))
}

/// `{ τ ∈ Aut T : class_sizes[a] = class_sizes[aτ] for all a }`.
pub fn extendable_automorphisms(
    t_table: &Magma,
    class_sizes: &[usize],
    limits: &Limits,
) -> Result<PermGroup> {
    assert_eq!(t_table.order(), class_sizes.len(), "one class size per element of T");
    let aut_t = enumerate_automorphisms(t_table, limits)?;
    let kept = aut_t
        .iter()
        .filter(|tau| (0..class_sizes.len()).all(|a| class_sizes[a] == class_sizes[tau.apply(a)]))
        .cloned()
        .collect();
    Ok(PermGroup::from_elements_unchecked(t_table.order(), kept))
}

/// The fixed listings `f_a` of every class, indexed by transversal id
/// (position of the representative in the sorted transversal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionScheme {
    listings: Vec<Vec<ElementId>>,
    class_of: Vec<usize>,
    position: Vec<usize>,
}

impl ExtensionScheme {
    /// `listings()[a]` is the class of the `a`-th representative, starting
    /// with the representative.
    pub fn listings(&self) -> &[Vec<ElementId>] {
        &self.listings
    }

    pub fn degree(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.listings.len()
    }

    /// Transversal id of the class containing `x`.
    pub fn class_of(&self, x: ElementId) -> usize {
        self.class_of[x]
    }

    /// Position of `x` in its class listing.
    pub fn position(&self, x: ElementId) -> usize {
        self.position[x]
    }

    pub fn representative(&self, a: usize) -> ElementId {
        self.listings[a][0]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.listings.iter().map(Vec::len).collect()
    }

    /// True when `p` maps every class onto itself, i.e. `p ∈ G`.
    pub fn fixes_classes(&self, p: &Permutation) -> bool {
        (0..self.degree()).all(|x| self.class_of[p.apply(x)] == self.class_of[x])
    }

    /// The permutation of transversal ids induced by `p`, if `p` maps the
    /// transversal into itself.
    pub fn restriction(&self, p: &Permutation) -> Option<Permutation> {
        let images = (0..self.num_classes())
            .map(|a| {
                let y = p.apply(self.representative(a));
                (self.position[y] == 0).then(|| self.class_of[y])
            })
            .collect::<Option<Vec<_>>>()?;
        Permutation::new(images).ok()
    }
}

pub fn extension_scheme(psi: &Partition, t: &Transversal) -> ExtensionScheme {
    let n = psi.order();
    let mut class_of = vec![0; n];
    let mut position = vec![0; n];
    let listings: Vec<Vec<ElementId>> = t
        .representatives()
        .iter()
        .enumerate()
        .map(|(a, &rep)| {
            let block = psi.block_containing(rep);
            let listing: Vec<ElementId> = std::iter::once(rep)
                .chain(block.iter().copied().filter(|&x| x != rep))
                .collect();
            for (k, &x) in listing.iter().enumerate() {
                class_of[x] = a;
                position[x] = k;
            }
            listing
        })
        .collect();
    ExtensionScheme {
        listings,
        class_of,
        position,
    }
}

/// The canonical extension `τ̄` of `τ` (on transversal ids) to all of `S`.
pub fn extend_automorphism(tau: &Permutation, scheme: &ExtensionScheme) -> Result<Permutation> {
    if tau.degree() != scheme.num_classes() {
        return Err(Error::DegreeMismatch {
            left: tau.degree(),
            right: scheme.num_classes(),
        });
    }
    let mut images = vec![0; scheme.degree()];
    for (a, listing) in scheme.listings.iter().enumerate() {
        let target = &scheme.listings[tau.apply(a)];
        if target.len() != listing.len() {
            return Err(Error::NotExtendable { a });
        }
        for (&x, &y) in listing.iter().zip(target) {
            images[x] = y;
        }
    }
    Ok(Permutation::new_unchecked(images))
}

/// `H̄ = { τ̄ : τ ∈ H }`.
pub fn embed_h(h: &PermGroup, scheme: &ExtensionScheme) -> Result<PermGroup> {
    let elements = h
        .iter()
        .map(|tau| extend_automorphism(tau, scheme))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermGroup::from_elements_unchecked(scheme.degree(), elements))
}

/// `φ = π·τ̄` with `π ∈ G` and `τ̄` the canonical extension of `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub tau: Permutation,
    pub tau_bar: Permutation,
    pub pi: Permutation,
}

pub fn decompose_automorphism(
    table: &Magma,
    phi: &Permutation,
    scheme: &ExtensionScheme,
) -> Result<Decomposition> {
    if phi.degree() != table.order() {
        return Err(Error::DegreeMismatch {
            left: phi.degree(),
            right: table.order(),
        });
    }
    if let Err(w) = is_automorphism(table, phi) {
        return Err(Error::NotAnAutomorphism { x: w.x, y: w.y });
    }
    // aτ = b  iff  X_a φ = X_b
    let images = (0..scheme.num_classes())
        .map(|a| scheme.class_of(phi.apply(scheme.representative(a))))
        .collect();
    let tau = Permutation::new(images)?;
    let tau_bar = extend_automorphism(&tau, scheme)?;
    let pi = phi.then(&tau_bar.inverse());
    Ok(Decomposition { tau, tau_bar, pi })
}

/// The transversal semigroup `T` and everything needed to relate it to `S`.
#[derive(Debug, Clone)]
pub struct InflationStructure {
    pub analysis: InflationAnalysis,
    pub base: CayleyTable,
    pub remap: Remap,
    pub scheme: ExtensionScheme,
}

impl InflationStructure {
    pub fn new(table: &CayleyTable, policy: TransversalPolicy) -> Result<Self> {
        let analysis = InflationAnalysis::new(table, policy);
        let (base, remap) =
            restrict_to_subsemigroup(table, analysis.transversal.representatives())?;
        let scheme = extension_scheme(&analysis.psi, &analysis.transversal);
        Ok(InflationStructure {
            analysis,
            base,
            remap,
            scheme,
        })
    }

    /// `|X_a|` for each transversal id `a`.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.scheme.class_sizes()
    }
}

/// Outcome of the full pipeline on one table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremReport {
    pub order: usize,
    /// Sorted ascending.
    pub psi_class_sizes: Vec<usize>,
    pub aut_order: u64,
    pub h_order: u64,
    pub g_order: u64,
    pub identity_holds: bool,
    pub g_is_normal: bool,
    pub intersection_trivial: bool,
    pub factorization_unique: bool,
    pub transversal_used: Vec<ElementId>,
    pub policy: String,
    pub psi_is_congruence: bool,
    pub inflation_holds: bool,
    pub kernel_in_h: bool,
    pub class_group_in_aut: bool,
    pub embedding_is_homomorphism: bool,
    pub extension_criterion_exact: bool,
    pub factorization_convention: String,
    pub witnesses: Vec<String>,
}

impl TheoremReport {
    pub fn flags(&self) -> [(&'static str, bool); 10] {
        [
            ("identityHolds", self.identity_holds),
            ("gIsNormal", self.g_is_normal),
            ("intersectionTrivial", self.intersection_trivial),
            ("factorizationUnique", self.factorization_unique),
            ("psiIsCongruence", self.psi_is_congruence),
            ("inflationHolds", self.inflation_holds),
            ("kernelInH", self.kernel_in_h),
            ("classGroupInAut", self.class_group_in_aut),
            ("embeddingIsHomomorphism", self.embedding_is_homomorphism),
            ("extensionCriterionExact", self.extension_criterion_exact),
        ]
    }

    pub fn all_flags_hold(&self) -> bool {
        self.flags().iter().all(|(_, f)| *f)
    }

    /// Key/value text, one field per line, in declaration order.
    pub fn to_text(&self) -> String {
        fn list(v: &[usize]) -> String {
            v.iter().map(|x| x.to_string()).join(" ")
        }
        let mut out = String::new();
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "psiClassSizes: {}", list(&self.psi_class_sizes));
        let _ = writeln!(out, "autOrder: {}", self.aut_order);
        let _ = writeln!(out, "hOrder: {}", self.h_order);
        let _ = writeln!(out, "gOrder: {}", self.g_order);
        let flags = self.flags();
        for (name, value) in &flags[..4] {
            let _ = writeln!(out, "{name}: {value}");
        }
        let _ = writeln!(out, "transversalUsed: {}", list(&self.transversal_used));
        let _ = writeln!(out, "policy: {}", self.policy);
        for (name, value) in &flags[4..] {
            let _ = writeln!(out, "{name}: {value}");
        }
        let _ = writeln!(out, "factorizationConvention: {}", self.factorization_convention);
        if self.witnesses.is_empty() {
            out.push_str("witnesses: none\n");
        } else {
            for w in &self.witnesses {
                let _ = writeln!(out, "witness: {w}");
            }
        }
        out
    }
}

/// Runs the whole pipeline `psi -> T -> θ -> Aut S -> G -> H -> H̄` and
/// checks every part of the semidirect decomposition.
pub fn verify_theorem(
    table: &CayleyTable,
    policy: TransversalPolicy,
    limits: &Limits,
) -> Result<TheoremReport> {
    let n = table.order();
    if n > limits.max_order {
        return Err(Error::OrderTooLarge {
            order: n,
            max: limits.max_order,
        });
    }
    let structure = InflationStructure::new(table, policy)?;
    let InflationStructure {
        analysis,
        base,
        scheme,
        ..
    } = &structure;
    let mut witnesses = Vec::new();

    let psi_is_congruence = match is_congruence(&analysis.psi, table) {
        Ok(()) => true,
        Err(w) => {
            witnesses.push(format!("psi is not a congruence: {w:?}"));
            false
        }
    };
    let inflation_holds = match verify_inflation(table, &analysis.retraction) {
        Ok(()) => true,
        Err(w) => {
            witnesses.push(format!("inflation: {w}"));
            false
        }
    };
    let kernel_in_h = match verify_kernel_in_h(&analysis.retraction, &analysis.h) {
        Ok(()) => true,
        Err(w) => {
            witnesses.push(format!("ker theta not inside h: ({}, {})", w.a, w.b));
            false
        }
    };

    // G ≤ Aut S, so its size bounds the search before any enumeration.
    let g = psi_class_group(&analysis.psi, limits)?;
    let aut = enumerate_automorphisms(table, limits)?;
    let class_sizes = structure.class_sizes();
    let h = extendable_automorphisms(base, &class_sizes, limits)?;
    let h_bar = embed_h(&h, scheme)?;

    let class_group_in_aut = match g.iter().find(|p| !aut.contains(p)) {
        None => true,
        Some(p) => {
            witnesses.push(format!("class permutation {p} is not an automorphism"));
            false
        }
    };

    let mut embedding_is_homomorphism = h_bar.order() == h.order();
    if !embedding_is_homomorphism {
        witnesses.push("extension map is not injective".into());
    }
    if let Some(t) = h_bar.iter().find(|t| !aut.contains(t)) {
        witnesses.push(format!("extension {t} is not an automorphism"));
        embedding_is_homomorphism = false;
    }
    'outer: for t1 in &h {
        for t2 in &h {
            let lhs = extend_automorphism(&t1.then(t2), scheme)?;
            let rhs = extend_automorphism(t1, scheme)?.then(&extend_automorphism(t2, scheme)?);
            if lhs != rhs {
                witnesses.push(format!("extension not multiplicative at {t1}, {t2}"));
                embedding_is_homomorphism = false;
                break 'outer;
            }
        }
    }

    // Restrictions of Aut S to T are exactly H.
    let restrictions: BTreeSet<Permutation> =
        aut.iter().filter_map(|phi| scheme.restriction(phi)).collect();
    let extension_criterion_exact = restrictions.iter().eq(h.iter());
    if !extension_criterion_exact {
        witnesses.push("restrictions of Aut S to T differ from the size-preserving Aut T".into());
    }

    let aut_order = aut.order() as u64;
    let h_order = h.order() as u64;
    let g_order = g.order() as u64;
    let identity_holds = aut_order == h_order * g_order;
    if !identity_holds {
        witnesses.push(format!("|Aut S| = {aut_order} != {h_order} * {g_order}"));
    }

    let normal = subgroup_checks(&g, &aut);
    let g_is_normal = normal.is_subgroup && normal.is_normal;
    if let Some(w) = normal.witness {
        witnesses.push(format!("G is not normal in Aut S: {w:?}"));
    }

    let intersection: Vec<&Permutation> = h_bar.iter().filter(|t| g.contains(t)).collect();
    let intersection_trivial = intersection.len() == 1 && intersection[0].is_identity();
    if !intersection_trivial {
        witnesses.push(format!("G ∩ H̄ has {} elements", intersection.len()));
    }

    let factor_failures: Vec<String> = aut
        .elements()
        .par_iter()
        .filter_map(|phi| {
            let d = match decompose_automorphism(table, phi, scheme) {
                Ok(d) => d,
                Err(e) => return Some(format!("decomposition of {phi} failed: {e}")),
            };
            if !g.contains(&d.pi) || !h_bar.contains(&d.tau_bar) || d.pi.then(&d.tau_bar) != *phi {
                return Some(format!("decomposition of {phi} is not a G·H̄ factorization"));
            }
            let count = h_bar
                .iter()
                .filter(|t| g.contains(&phi.then(&t.inverse())))
                .count();
            (count != 1).then(|| format!("{phi} has {count} factorizations"))
        })
        .collect();
    let conjugation_failure = h_bar.iter().find_map(|t| {
        g.iter()
            .find(|p| !g.contains(&p.conjugate_by(t)))
            .map(|p| format!("conjugate of {p} by {t} leaves G"))
    });
    let factorization_unique = factor_failures.is_empty() && conjugation_failure.is_none();
    witnesses.extend(factor_failures.into_iter().take(5));
    witnesses.extend(conjugation_failure);

    let mut psi_class_sizes = analysis.psi.block_sizes();
    psi_class_sizes.sort_unstable();

    Ok(TheoremReport {
        order: n,
        psi_class_sizes,
        aut_order,
        h_order,
        g_order,
        identity_holds,
        g_is_normal,
        intersection_trivial,
        factorization_unique,
        transversal_used: analysis.transversal.representatives().to_vec(),
        policy: policy.to_string(),
        psi_is_congruence,
        inflation_holds,
        kernel_in_h,
        class_group_in_aut,
        embedding_is_homomorphism,
        extension_criterion_exact,
        factorization_convention: FACTORIZATION_CONVENTION.to_string(),
        witnesses,
    })
}
