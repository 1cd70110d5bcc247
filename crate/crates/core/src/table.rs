//! Finite semigroups as Cayley tables, and the relations `h` and `psi`.
//!
//! Elements are the dense ids `0..n`. A [`Magma`] is any closed binary
//! operation; a [`CayleyTable`] is a magma whose associativity has been
//! checked.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

pub type ElementId = usize;

/// A binary operation on `0..order`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Magma {
    order: usize,
    entries: Vec<ElementId>,
}

impl Magma {
    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Malformed {
                line: 0,
                message: "order must be positive".into(),
            });
        }
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Malformed {
                    line: i + 1,
                    message: format!("row {i} has {} entries, expected {order}", row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_entries(order, entries)
    }

    pub fn from_entries(order: usize, entries: Vec<ElementId>) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::Malformed {
                line: 0,
                message: format!("expected {} entries for order {order}", order * order),
            });
        }
        if let Some(&e) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::OutOfRange { element: e, order });
        }
        Ok(Magma { order, entries })
    }

    pub fn from_fn(order: usize, f: impl Fn(ElementId, ElementId) -> ElementId) -> Result<Self> {
        let entries = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::from_entries(order, entries)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `i * j`.
    #[inline]
    pub fn mul(&self, i: ElementId, j: ElementId) -> ElementId {
        self.entries[i * self.order + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[ElementId] {
        &self.entries
    }

    pub fn row(&self, i: ElementId) -> &[ElementId] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn column(&self, j: ElementId) -> Vec<ElementId> {
        (0..self.order).map(|i| self.mul(i, j)).collect()
    }

    /// The table transported along the relabeling `x -> sigma[x]`:
    /// `sigma(i) * sigma(j) = sigma(i * j)` in the result.
    pub fn relabel(&self, sigma: &[ElementId]) -> Magma {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[sigma[i] * n + sigma[j]] = sigma[self.mul(i, j)];
            }
        }
        Magma { order: n, entries }
    }

    /// Text encoding: order line followed by one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format without checking associativity.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

        let (line, header) = lines.next().ok_or(Error::Malformed {
            line: 0,
            message: "missing order line".into(),
        })?;
        let order: usize = header.trim().parse().map_err(|_| Error::Malformed {
            line,
            message: format!("expected an order, found {header:?}"),
        })?;
        if order == 0 {
            return Err(Error::Malformed {
                line,
                message: "order must be positive".into(),
            });
        }

        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            let (line, text) = lines.next().ok_or(Error::Malformed {
                line: 0,
                message: format!("expected {order} rows, found {i}"),
            })?;
            let start = entries.len();
            for token in text.split_whitespace() {
                let e: usize = token.parse().map_err(|_| Error::Malformed {
                    line,
                    message: format!("not a decimal id: {token:?}"),
                })?;
                if e >= order {
                    return Err(Error::Malformed {
                        line,
                        message: format!("entry {e} out of range for order {order}"),
                    });
                }
                entries.push(e);
            }
            if entries.len() - start != order {
                return Err(Error::Malformed {
                    line,
                    message: format!(
                        "row {i} has {} entries, expected {order}",
                        entries.len() - start
                    ),
                });
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Malformed {
                line,
                message: "trailing content after the table".into(),
            });
        }
        Ok(Magma { order, entries })
    }
}

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A triple witnessing `(i*j)*k != i*(j*k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub i: ElementId,
    pub j: ElementId,
    pub k: ElementId,
}

/// Checks all `n^3` triples; reports the lexicographically least failure.
pub fn check_associativity(magma: &Magma) -> Result<(), AssociativityWitness> {
    let n = magma.order();
    for i in 0..n {
        for j in 0..n {
            let ij = magma.mul(i, j);
            for k in 0..n {
                if magma.mul(ij, k) != magma.mul(i, magma.mul(j, k)) {
                    return Err(AssociativityWitness { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// A finite semigroup: an associative [`Magma`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable(Magma);

impl CayleyTable {
    pub fn new(magma: Magma) -> Result<Self> {
        match check_associativity(&magma) {
            Ok(()) => Ok(CayleyTable(magma)),
            Err(AssociativityWitness { i, j, k }) => Err(Error::NotAssociative { i, j, k }),
        }
    }

    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self> {
        Self::new(Magma::from_rows(rows)?)
    }

    pub fn from_fn(order: usize, f: impl Fn(ElementId, ElementId) -> ElementId) -> Result<Self> {
        Self::new(Magma::from_fn(order, f)?)
    }

    pub(crate) fn new_unchecked(magma: Magma) -> Self {
        debug_assert!(check_associativity(&magma).is_ok());
        CayleyTable(magma)
    }

    pub fn as_magma(&self) -> &Magma {
        &self.0
    }

    pub fn into_magma(self) -> Magma {
        self.0
    }

    pub fn relabel(&self, sigma: &[ElementId]) -> CayleyTable {
        CayleyTable(self.0.relabel(sigma))
    }
}

impl Deref for CayleyTable {
    type Target = Magma;

    fn deref(&self) -> &Magma {
        &self.0
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parses and validates a table in the text format.
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    CayleyTable::new(Magma::parse(text)?)
}

/// The set `S^2` of all products.
pub fn product_set(table: &CayleyTable) -> BTreeSet<ElementId> {
    table.entries().iter().copied().collect()
}

pub(crate) fn product_mask(table: &Magma) -> Vec<bool> {
    let mut mask = vec![false; table.order()];
    for &e in table.entries() {
        mask[e] = true;
    }
    mask
}

/// The relation `h`: `a h b` iff `ax = bx` and `xa = xb` for every `x`,
/// i.e. rows and columns of `a` and `b` coincide.
pub fn compute_h(table: &Magma) -> Partition {
    let mut seen: HashMap<(&[ElementId], Vec<ElementId>), usize> = HashMap::new();
    let labels: Vec<usize> = (0..table.order())
        .map(|a| {
            let next = seen.len();
            *seen.entry((table.row(a), table.column(a))).or_insert(next)
        })
        .collect();
    Partition::from_labels(&labels)
}

/// The congruence `psi`: elements of `S^2` are singletons, non-products are
/// grouped exactly when `h`-related.
pub fn compute_psi(table: &Magma) -> Partition {
    let h = compute_h(table);
    let in_square = product_mask(table);
    let labels: Vec<(bool, usize)> = (0..table.order())
        .map(|a| {
            if in_square[a] {
                (true, a)
            } else {
                (false, h.block_of(a))
            }
        })
        .collect();
    Partition::from_labels(&labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(c*a, c*b)` left a block.
    Left,
    /// `(a*c, b*c)` left a block.
    Right,
}

/// `a ~ b` but multiplying both by `c` on `side` separates them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub a: ElementId,
    pub b: ElementId,
    pub c: ElementId,
    pub side: Side,
}

/// Checks left and right compatibility of `p` with the product.
pub fn is_congruence(p: &Partition, table: &Magma) -> Result<(), CongruenceWitness> {
    assert_eq!(p.order(), table.order(), "partition and table orders differ");
    let n = table.order();
    for a in 0..n {
        for b in (a + 1)..n {
            if !p.related(a, b) {
                continue;
            }
            for c in 0..n {
                if !p.related(table.mul(c, a), table.mul(c, b)) {
                    return Err(CongruenceWitness { a, b, c, side: Side::Left });
                }
                if !p.related(table.mul(a, c), table.mul(b, c)) {
                    return Err(CongruenceWitness { a, b, c, side: Side::Right });
                }
            }
        }
    }
    Ok(())
}
