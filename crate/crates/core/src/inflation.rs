//! Transversals of `psi`, the induced retraction `θ`, and inflations.
//!
//! `S` is an inflation of a subsemigroup `T` with map `θ: S -> T` when `θ`
//! is idempotent onto `T` and `ab = θ(a)θ(b)` for all `a, b`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::table::{product_mask, CayleyTable, ElementId, Magma};

/// How to pick one representative per block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TransversalPolicy {
    #[default]
    Least,
    Greatest,
    Seeded(u64),
}

impl fmt::Display for TransversalPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransversalPolicy::Least => f.write_str("least"),
            TransversalPolicy::Greatest => f.write_str("greatest"),
            TransversalPolicy::Seeded(seed) => write!(f, "seeded({seed})"),
        }
    }
}

impl FromStr for TransversalPolicy {
    type Err = Error;

    /// Accepts `least`, `greatest`, `seeded` (seed 0) and `seeded(N)`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "least" => Ok(TransversalPolicy::Least),
            "greatest" => Ok(TransversalPolicy::Greatest),
            "seeded" => Ok(TransversalPolicy::Seeded(0)),
            _ => s
                .strip_prefix("seeded(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(TransversalPolicy::Seeded)
                .ok_or_else(|| Error::Malformed {
                    line: 0,
                    message: format!("unknown transversal policy {s:?}"),
                }),
        }
    }
}

/// One representative per block of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    representatives: Vec<ElementId>,
    block_rep: Vec<ElementId>,
}

impl Transversal {
    /// Validates that `block_rep[b]` lies in block `b` of `partition`.
    pub fn new(partition: &Partition, block_rep: Vec<ElementId>) -> Result<Self> {
        if block_rep.len() != partition.num_blocks() {
            return Err(Error::InvalidPartition(format!(
                "{} representatives for {} blocks",
                block_rep.len(),
                partition.num_blocks()
            )));
        }
        for (b, &r) in block_rep.iter().enumerate() {
            if r >= partition.order() || partition.block_of(r) != b {
                return Err(Error::InvalidPartition(format!(
                    "{r} does not lie in block {b}"
                )));
            }
        }
        let mut representatives = block_rep.clone();
        representatives.sort_unstable();
        Ok(Transversal {
            representatives,
            block_rep,
        })
    }

    /// Sorted representatives.
    pub fn representatives(&self) -> &[ElementId] {
        &self.representatives
    }

    pub fn rep_of_block(&self, block: usize) -> ElementId {
        self.block_rep[block]
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.representatives.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

pub fn choose_transversal(psi: &Partition, policy: TransversalPolicy) -> Transversal {
    let block_rep: Vec<ElementId> = match policy {
        TransversalPolicy::Least => psi.blocks().iter().map(|b| b[0]).collect(),
        TransversalPolicy::Greatest => psi.blocks().iter().map(|b| b[b.len() - 1]).collect(),
        TransversalPolicy::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            psi.blocks()
                .iter()
                .map(|b| b[rng.gen_range(0..b.len())])
                .collect()
        }
    };
    Transversal::new(psi, block_rep).expect("representatives come from their own blocks")
}

/// The map `θ: S -> T` together with its image `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionMap {
    theta: Vec<ElementId>,
    image: Vec<ElementId>,
}

impl RetractionMap {
    /// Any self-map of `0..n`; the inflation axioms are checked separately by
    /// [`verify_inflation`].
    pub fn from_theta(theta: Vec<ElementId>) -> Result<Self> {
        let n = theta.len();
        if let Some(&x) = theta.iter().find(|&&x| x >= n) {
            return Err(Error::OutOfRange { element: x, order: n });
        }
        let mut image = theta.clone();
        image.sort_unstable();
        image.dedup();
        Ok(RetractionMap { theta, image })
    }

    pub fn theta(&self) -> &[ElementId] {
        &self.theta
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.theta[x]
    }

    /// Sorted image of `θ`.
    pub fn image(&self) -> &[ElementId] {
        &self.image
    }

    /// The kernel `{(a, b) : θ(a) = θ(b)}` as a partition.
    pub fn kernel(&self) -> Partition {
        Partition::from_labels(&self.theta)
    }
}

/// `θ(x)` is the representative of the `psi`-class of `x`.
pub fn induced_retraction(psi: &Partition, t: &Transversal) -> RetractionMap {
    let theta = (0..psi.order())
        .map(|x| t.rep_of_block(psi.block_of(x)))
        .collect();
    RetractionMap::from_theta(theta).expect("representatives are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InflationWitness {
    /// `θ(θ(x)) != θ(x)`.
    NotIdempotent { x: ElementId },
    /// `a, b` in the image of `θ` but `a*b` is not.
    ImageNotClosed { a: ElementId, b: ElementId },
    /// `θ(a)θ(b) != ab`.
    ProductMismatch { a: ElementId, b: ElementId },
}

impl fmt::Display for InflationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InflationWitness::NotIdempotent { x } => write!(f, "theta is not idempotent at {x}"),
            InflationWitness::ImageNotClosed { a, b } => {
                write!(f, "image of theta is not closed: {a}*{b}")
            }
            InflationWitness::ProductMismatch { a, b } => {
                write!(f, "theta({a})*theta({b}) != {a}*{b}")
            }
        }
    }
}

pub fn verify_inflation(table: &Magma, r: &RetractionMap) -> Result<(), InflationWitness> {
    let n = table.order();
    assert_eq!(r.theta().len(), n, "theta must be defined on every element");
    if let Some(x) = (0..n).find(|&x| r.apply(r.apply(x)) != r.apply(x)) {
        return Err(InflationWitness::NotIdempotent { x });
    }
    for &a in r.image() {
        for &b in r.image() {
            if r.image().binary_search(&table.mul(a, b)).is_err() {
                return Err(InflationWitness::ImageNotClosed { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if table.mul(r.apply(a), r.apply(b)) != table.mul(a, b) {
                return Err(InflationWitness::ProductMismatch { a, b });
            }
        }
    }
    Ok(())
}

/// A pair with `θ(a) = θ(b)` that `h` separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelWitness {
    pub a: ElementId,
    pub b: ElementId,
}

/// Checks `ker θ ⊆ h`.
pub fn verify_kernel_in_h(r: &RetractionMap, h: &Partition) -> Result<(), KernelWitness> {
    let n = r.theta().len();
    assert_eq!(n, h.order(), "retraction and partition orders differ");
    for a in 0..n {
        for b in (a + 1)..n {
            if r.apply(a) == r.apply(b) && !h.related(a, b) {
                return Err(KernelWitness { a, b });
            }
        }
    }
    Ok(())
}

/// Correspondence between a subsemigroup's ids and the parent's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remap {
    to_parent: Vec<ElementId>,
    to_sub: Vec<Option<ElementId>>,
}

impl Remap {
    /// Parent id of sub id `i`.
    pub fn to_parent(&self, i: ElementId) -> ElementId {
        self.to_parent[i]
    }

    /// Sub id of parent id `x`, if `x` is in the subset.
    pub fn to_sub(&self, x: ElementId) -> Option<ElementId> {
        self.to_sub[x]
    }

    pub fn parent_ids(&self) -> &[ElementId] {
        &self.to_parent
    }
}

/// The multiplication table of a closed subset, renumbered in increasing
/// parent-id order.
pub fn restrict_to_subsemigroup(
    table: &CayleyTable,
    subset: &[ElementId],
) -> Result<(CayleyTable, Remap)> {
    let n = table.order();
    let mut to_parent = subset.to_vec();
    to_parent.sort_unstable();
    to_parent.dedup();
    if to_parent.is_empty() {
        return Err(Error::InvalidPartition("empty subset".into()));
    }
    if let Some(&x) = to_parent.iter().find(|&&x| x >= n) {
        return Err(Error::OutOfRange { element: x, order: n });
    }
    let mut to_sub = vec![None; n];
    for (i, &x) in to_parent.iter().enumerate() {
        to_sub[x] = Some(i);
    }
    let m = to_parent.len();
    let mut entries = Vec::with_capacity(m * m);
    for &a in &to_parent {
        for &b in &to_parent {
            match to_sub[table.mul(a, b)] {
                Some(i) => entries.push(i),
                None => return Err(Error::NotClosed { a, b }),
            }
        }
    }
    let sub = CayleyTable::new_unchecked(Magma::from_entries(m, entries)?);
    Ok((sub, Remap { to_parent, to_sub }))
}

/// A base semigroup with a positive fiber size per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSizeSpec {
    base: CayleyTable,
    sizes: Vec<usize>,
}

impl FiberSizeSpec {
    pub fn new(base: CayleyTable, sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() != base.order() {
            return Err(Error::InvalidFiberSizes(format!(
                "{} sizes for a base of order {}",
                sizes.len(),
                base.order()
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidFiberSizes("zero fiber size".into()));
        }
        Ok(FiberSizeSpec { base, sizes })
    }

    pub fn base(&self) -> &CayleyTable {
        &self.base
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// The base table in the table format followed by `sizes: s0 s1 ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table_text = String::new();
        let mut sizes = None;
        for (i, line) in text.split('\n').enumerate() {
            let trimmed = line.trim();
            if let Some(rest) = trimmed.strip_prefix("sizes:") {
                if sizes.is_some() {
                    return Err(Error::Malformed {
                        line: i + 1,
                        message: "duplicate sizes line".into(),
                    });
                }
                let parsed = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| Error::Malformed {
                            line: i + 1,
                            message: format!("not a fiber size: {t:?}"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                sizes = Some(parsed);
            } else if sizes.is_none() {
                table_text.push_str(line);
                table_text.push('\n');
            } else if !trimmed.is_empty() && !trimmed.starts_with('#') {
                return Err(Error::Malformed {
                    line: i + 1,
                    message: "content after the sizes line".into(),
                });
            }
        }
        let sizes = sizes.ok_or(Error::Malformed {
            line: 0,
            message: "missing `sizes:` line".into(),
        })?;
        Self::new(crate::table::parse_table(&table_text)?, sizes)
    }

    pub fn to_text(&self) -> String {
        let sizes: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        format!("{}sizes: {}\n", self.base.to_text(), sizes.join(" "))
    }
}

/// Builds the inflation of `spec.base` with the given fiber sizes.
///
/// Base elements keep ids `0..m`; the extra elements of each fiber follow,
/// grouped by base element in increasing order. The product is
/// `xy = θ(x)θ(y)` computed in the base.
pub fn build_inflation(
    spec: &FiberSizeSpec,
    max_order: usize,
) -> Result<(CayleyTable, RetractionMap)> {
    let order = spec.total_order();
    if order > max_order {
        return Err(Error::OrderTooLarge {
            order,
            max: max_order,
        });
    }
    let base = &spec.base;
    let mut theta: Vec<ElementId> = (0..base.order()).collect();
    for (a, &size) in spec.sizes.iter().enumerate() {
        theta.extend(std::iter::repeat_n(a, size - 1));
    }
    let table = CayleyTable::new_unchecked(Magma::from_fn(order, |x, y| {
        base.mul(theta[x], theta[y])
    })?);
    Ok((table, RetractionMap::from_theta(theta)?))
}

/// The canonical inflation structure of a table: `h`, `psi`, `S^2`, a
/// transversal chosen by `policy`, and `θ`.
#[derive(Debug, Clone)]
pub struct InflationAnalysis {
    pub h: Partition,
    pub psi: Partition,
    pub in_square: Vec<bool>,
    pub transversal: Transversal,
    pub retraction: RetractionMap,
}

impl InflationAnalysis {
    pub fn new(table: &Magma, policy: TransversalPolicy) -> Self {
        let h = crate::table::compute_h(table);
        let psi = crate::table::compute_psi(table);
        let transversal = choose_transversal(&psi, policy);
        let retraction = induced_retraction(&psi, &transversal);
        InflationAnalysis {
            h,
            psi,
            in_square: product_mask(table),
            transversal,
            retraction,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn policy_parsing() {
        assert_eq!("least".parse::<TransversalPolicy>().unwrap(), TransversalPolicy::Least);
        assert_eq!(
            "seeded(7)".parse::<TransversalPolicy>().unwrap(),
            TransversalPolicy::Seeded(7)
        );
        assert!("middle".parse::<TransversalPolicy>().is_err());
        assert_eq!(TransversalPolicy::Seeded(7).to_string(), "seeded(7)");
    }

    #[test]
    fn transversal_validation() {
        let psi = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
        assert!(Transversal::new(&psi, vec![0, 2]).is_ok());
        assert!(Transversal::new(&psi, vec![1, 2]).is_err());
        assert!(Transversal::new(&psi, vec![0]).is_err());
    }

    #[test]
    fn seeded_policy_is_deterministic() {
        let psi = crate::table::compute_psi(&fixtures::null(7));
        let a = choose_transversal(&psi, TransversalPolicy::Seeded(42));
        let b = choose_transversal(&psi, TransversalPolicy::Seeded(42));
        assert_eq!(a, b);
    }

    #[test]
    fn restriction_errors() {
        let l2 = fixtures::l2();
        assert!(restrict_to_subsemigroup(&l2, &[]).is_err());
        assert!(matches!(
            restrict_to_subsemigroup(&l2, &[0, 9]),
            Err(Error::OutOfRange { .. })
        ));
        // {1} in N3 is not closed: 1*1 = 0
        assert_eq!(
            restrict_to_subsemigroup(&fixtures::n3(), &[1]).unwrap_err(),
            Error::NotClosed { a: 1, b: 1 }
        );
    }

    #[test]
    fn fiber_spec_validation_and_text() {
        assert!(FiberSizeSpec::new(fixtures::l2(), vec![1]).is_err());
        assert!(FiberSizeSpec::new(fixtures::l2(), vec![1, 0]).is_err());
        let spec = FiberSizeSpec::new(fixtures::l2(), vec![3, 3]).unwrap();
        let text = spec.to_text();
        assert_eq!(text, "2\n0 0\n1 1\nsizes: 3 3\n");
        assert_eq!(FiberSizeSpec::parse(&text).unwrap(), spec);
        assert!(FiberSizeSpec::parse("2\n0 0\n1 1\n").is_err());
        assert!(FiberSizeSpec::parse("2\n0 0\n1 1\nsizes: 1 x\n").is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let spec = FiberSizeSpec::new(fixtures::l2(), vec![7, 7]).unwrap();
        assert_eq!(
            build_inflation(&spec, 12).unwrap_err(),
            Error::OrderTooLarge { order: 14, max: 12 }
        );
    }
}
