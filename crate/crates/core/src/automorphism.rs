//! Automorphism groups of finite semigroups by pruned backtracking.
//!
//! Images are assigned in id order. Every assignment is propagated: once
//! `x` and `y` both have images, the image of `x*y` is forced to
//! `xφ * yφ`, which either confirms an existing assignment, fails, or
//! assigns a new element. Candidates are further restricted to elements
//! with the same isomorphism-invariant profile.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::table::{ElementId, Magma};
use crate::Limits;

/// A pair with `(x*y)p != (xp)*(yp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomomorphismWitness {
    pub x: ElementId,
    pub y: ElementId,
}

pub fn is_automorphism(table: &Magma, p: &Permutation) -> Result<(), HomomorphismWitness> {
    assert_eq!(table.order(), p.degree(), "degree does not match table order");
    let n = table.order();
    for x in 0..n {
        for y in 0..n {
            if p.apply(table.mul(x, y)) != table.mul(p.apply(x), p.apply(y)) {
                return Err(HomomorphismWitness { x, y });
            }
        }
    }
    Ok(())
}

/// Per-element data preserved by every automorphism.
fn profiles(table: &Magma) -> Vec<[usize; 8]> {
    let n = table.order();
    (0..n)
        .map(|a| {
            let mut p = [0usize; 8];
            p[0] = usize::from(table.mul(a, a) == a);
            p[1] = (0..n).filter(|&y| table.mul(a, y) == a).count();
            p[2] = (0..n).filter(|&y| table.mul(y, a) == a).count();
            p[3] = (0..n).filter(|&y| table.mul(a, y) == y).count();
            p[4] = (0..n).filter(|&y| table.mul(y, a) == y).count();
            p[5] = table.entries().iter().filter(|&&e| e == a).count();
            let mut row = table.row(a).to_vec();
            row.sort_unstable();
            row.dedup();
            p[6] = row.len();
            // index + period of the monogenic subsemigroup generated by a
            let mut powers = vec![a];
            let mut x = a;
            loop {
                x = table.mul(x, a);
                if powers.contains(&x) {
                    break;
                }
                powers.push(x);
            }
            p[7] = powers.len();
            p
        })
        .collect()
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    table: &'a Magma,
    profiles: Vec<[usize; 8]>,
    limits: &'a Limits,
    nodes: &'a AtomicU64,
    found: &'a AtomicU64,
}

struct State {
    image: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<ElementId>,
}

impl State {
    fn new(n: usize) -> Self {
        State {
            image: vec![UNSET; n],
            used: vec![false; n],
            trail: Vec::with_capacity(n),
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().expect("trail");
            self.used[self.image[x]] = false;
            self.image[x] = UNSET;
        }
    }
}

impl Search<'_> {
    fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.limits.max_search_nodes {
            return Err(Error::SearchBudgetExceeded {
                budget: self.limits.max_search_nodes,
            });
        }
        Ok(())
    }

    /// Assigns `x -> w` and propagates forced images. Returns false on a
    /// contradiction; the caller undoes the trail.
    fn assign(&self, st: &mut State, x: ElementId, w: ElementId) -> bool {
        let mut queue = Vec::new();
        if !self.place(st, x, w, &mut queue) {
            return false;
        }
        while let Some(x) = queue.pop() {
            let mut k = 0;
            while k < st.trail.len() {
                let y = st.trail[k];
                k += 1;
                for (a, b) in [(x, y), (y, x)] {
                    let z = self.table.mul(a, b);
                    let target = self.table.mul(st.image[a], st.image[b]);
                    match st.image[z] {
                        UNSET => {
                            if !self.place(st, z, target, &mut queue) {
                                return false;
                            }
                        }
                        img if img != target => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn place(&self, st: &mut State, x: ElementId, w: ElementId, queue: &mut Vec<ElementId>) -> bool {
        if st.used[w] || self.profiles[x] != self.profiles[w] {
            return false;
        }
        st.image[x] = w;
        st.used[w] = true;
        st.trail.push(x);
        queue.push(x);
        true
    }

    fn extend(&self, st: &mut State, out: &mut Vec<Permutation>) -> Result<()> {
        let Some(x) = st.image.iter().position(|&i| i == UNSET) else {
            let count = self.found.fetch_add(1, Ordering::Relaxed) + 1;
            if u128::from(count) > self.limits.max_group_order {
                return Err(Error::GroupTooLarge {
                    order: u128::from(count),
                    max: self.limits.max_group_order,
                });
            }
            out.push(Permutation::new_unchecked(st.image.clone()));
            return Ok(());
        };
        for w in 0..self.table.order() {
            if st.used[w] || self.profiles[x] != self.profiles[w] {
                continue;
            }
            self.tick()?;
            let mark = st.trail.len();
            if self.assign(st, x, w) {
                self.extend(st, out)?;
            }
            st.undo_to(mark);
        }
        Ok(())
    }
}

/// All automorphisms of `table`, canonically sorted.
///
/// The search tree is split on the image of element `0` and the branches
/// run in parallel; results are merged in canonical order.
pub fn enumerate_automorphisms(table: &Magma, limits: &Limits) -> Result<PermGroup> {
    let n = table.order();
    if n > limits.max_order {
        return Err(Error::OrderTooLarge {
            order: n,
            max: limits.max_order,
        });
    }
    let nodes = AtomicU64::new(0);
    let found = AtomicU64::new(0);
    let search = Search {
        table,
        profiles: profiles(table),
        limits,
        nodes: &nodes,
        found: &found,
    };
    let branches: Vec<Vec<Permutation>> = (0..n)
        .into_par_iter()
        .filter(|&w| search.profiles[0] == search.profiles[w])
        .map(|w| {
            search.tick()?;
            let mut st = State::new(n);
            let mut out = Vec::new();
            if search.assign(&mut st, 0, w) {
                search.extend(&mut st, &mut out)?;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let elements: Vec<Permutation> = branches.into_iter().flatten().collect();
    let group = PermGroup::from_elements_unchecked(n, elements);
    debug_assert!(group.order() > 2000 || group.check_axioms().is_ok());
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn is_automorphism_examples() {
        let n3 = fixtures::n3();
        assert!(is_automorphism(&n3, &p(&[0, 2, 1])).is_ok());
        let w = is_automorphism(&n3, &p(&[1, 0, 2])).unwrap_err();
        assert_eq!(w, HomomorphismWitness { x: 0, y: 0 });
        let s6 = fixtures::s6();
        assert!(is_automorphism(&s6, &p(&[1, 0, 3, 2, 5, 4])).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        let limits = Limits {
            max_search_nodes: 3,
            ..Limits::default()
        };
        let e = enumerate_automorphisms(&fixtures::null(6), &limits).unwrap_err();
        assert!(matches!(e, Error::SearchBudgetExceeded { .. }));
    }

    #[test]
    fn group_size_is_bounded() {
        let limits = Limits {
            max_group_order: 10,
            ..Limits::default()
        };
        let e = enumerate_automorphisms(&fixtures::null(5), &limits).unwrap_err();
        assert!(matches!(e, Error::GroupTooLarge { .. }));
    }

    #[test]
    fn order_cap() {
        let limits = Limits {
            max_order: 3,
            ..Limits::default()
        };
        let e = enumerate_automorphisms(&fixtures::null(4), &limits).unwrap_err();
        assert_eq!(e, Error::OrderTooLarge { order: 4, max: 3 });
    }
}
