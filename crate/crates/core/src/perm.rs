//! Permutations of element ids and explicitly stored permutation groups.
//!
//! Permutations act on the right: `compose(p, q)` applies `p` first, then
//! `q`, so `x (p q) = (x p) q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::ElementId;

/// A bijection on `0..degree`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<ElementId>,
}

impl Permutation {
    pub fn new(images: Vec<ElementId>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn new_unchecked(images: Vec<ElementId>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1], [2, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[ElementId]]) -> Result<Self> {
        let mut images: Vec<ElementId> = (0..degree).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::OutOfRange { element: x, order: degree });
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    /// The image `x p`.
    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self` followed by `next`. Panics on a degree mismatch.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.degree(), next.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| next.images[x]).collect(),
        }
    }

    /// `x -> x^p` conjugate: `p^-1 self p`.
    pub fn conjugate_by(&self, p: &Permutation) -> Permutation {
        p.inverse().then(self).then(p)
    }

    /// Disjoint cycle notation, fixed points omitted; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            out.push('(');
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Parses the `p: i0 i1 ...` line format.
    pub fn parse(line: &str) -> Result<Self> {
        let body = line.trim().strip_prefix("p:").ok_or_else(|| Error::Malformed {
            line: 0,
            message: format!("expected `p:` prefix in {line:?}"),
        })?;
        let images = body
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Malformed {
                    line: 0,
                    message: format!("not a decimal id: {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("p:")?;
        for x in &self.images {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

/// `compose(p, q)`: apply `p`, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(p.then(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

/// Why a set of permutations failed to be a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupWitness {
    MissingIdentity,
    WrongDegree(Permutation),
    MissingInverse(Permutation),
    NotClosed(Permutation, Permutation),
}

/// A finite permutation group with every element stored, sorted
/// lexicographically by image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Validates the group axioms on an arbitrary element list.
    pub fn from_elements(
        degree: usize,
        mut elements: Vec<Permutation>,
    ) -> Result<Self, GroupWitness> {
        elements.sort();
        elements.dedup();
        let group = PermGroup { degree, elements };
        group.check_axioms()?;
        Ok(group)
    }

    /// Sorts and deduplicates without checking closure.
    pub(crate) fn from_elements_unchecked(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        PermGroup { degree, elements }
    }

    pub fn check_axioms(&self) -> Result<(), GroupWitness> {
        if let Some(p) = self.elements.iter().find(|p| p.degree() != self.degree) {
            return Err(GroupWitness::WrongDegree(p.clone()));
        }
        if !self.contains(&Permutation::identity(self.degree)) {
            return Err(GroupWitness::MissingIdentity);
        }
        for p in &self.elements {
            if !self.contains(&p.inverse()) {
                return Err(GroupWitness::MissingInverse(p.clone()));
            }
        }
        for p in &self.elements {
            for q in &self.elements {
                if !self.contains(&p.then(q)) {
                    return Err(GroupWitness::NotClosed(p.clone(), q.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Line count followed by one `p: ...` line per element.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.elements.len());
        for p in &self.elements {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let count: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| Error::Malformed {
                line: 1,
                message: "expected an element count".into(),
            })?;
        let elements = lines.map(Permutation::parse).collect::<Result<Vec<_>>>()?;
        if elements.len() != count {
            return Err(Error::Malformed {
                line: 0,
                message: format!("expected {count} permutations, found {}", elements.len()),
            });
        }
        let degree = elements.first().map_or(0, Permutation::degree);
        PermGroup::from_elements(degree, elements)
            .map_err(|w| Error::InvalidPermutation(format!("not a group: {w:?}")))
    }
}

impl<'a> IntoIterator for &'a PermGroup {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Why `g` failed to be a (normal) subgroup of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupWitness {
    DegreeMismatch,
    NotInParent(Permutation),
    NotAGroup(GroupWitness),
    /// `conjugator^-1 element conjugator` falls outside the subgroup.
    NotNormal {
        element: Permutation,
        conjugator: Permutation,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCheck {
    pub is_subgroup: bool,
    pub is_normal: bool,
    pub witness: Option<SubgroupWitness>,
}

/// Tests whether `g` is a subgroup of `parent` and whether it is normal.
pub fn subgroup_checks(g: &PermGroup, parent: &PermGroup) -> SubgroupCheck {
    let fail = |is_subgroup, w| SubgroupCheck {
        is_subgroup,
        is_normal: false,
        witness: Some(w),
    };
    if g.degree() != parent.degree() {
        return fail(false, SubgroupWitness::DegreeMismatch);
    }
    if let Some(p) = g.iter().find(|p| !parent.contains(p)) {
        return fail(false, SubgroupWitness::NotInParent(p.clone()));
    }
    if let Err(w) = g.check_axioms() {
        return fail(false, SubgroupWitness::NotAGroup(w));
    }
    for conjugator in parent {
        let inv = conjugator.inverse();
        for element in g {
            if !g.contains(&inv.then(element).then(conjugator)) {
                return fail(
                    true,
                    SubgroupWitness::NotNormal {
                        element: element.clone(),
                        conjugator: conjugator.clone(),
                    },
                );
            }
        }
    }
    SubgroupCheck {
        is_subgroup: true,
        is_normal: true,
        witness: None,
    }
}
