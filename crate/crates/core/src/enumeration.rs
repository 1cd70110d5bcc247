//! Exhaustive generation of small semigroups and corpus-wide verification.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inflation::TransversalPolicy;
use crate::table::{CayleyTable, ElementId, Magma};
use crate::theorem::{verify_theorem, TheoremReport};
use crate::Limits;

/// Largest order accepted by [`canonicalize`].
pub const CANONICALIZE_MAX_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EnumerationMode {
    /// Every associative table on the ids `0..n`.
    #[default]
    Labelled,
    /// One lexicographically minimal table per relabeling class.
    UpToIso,
}

impl FromStr for EnumerationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "labelled" | "labeled" => Ok(EnumerationMode::Labelled),
            "up-to-iso" | "uptoiso" => Ok(EnumerationMode::UpToIso),
            _ => Err(Error::Malformed {
                line: 0,
                message: format!("unknown enumeration mode {s:?}"),
            }),
        }
    }
}

impl fmt::Display for EnumerationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnumerationMode::Labelled => "labelled",
            EnumerationMode::UpToIso => "up-to-iso",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationTask {
    pub order: usize,
    pub mode: EnumerationMode,
    /// Run sequentially when `Some(1)`.
    pub parallelism: Option<usize>,
}

impl EnumerationTask {
    pub fn new(order: usize, mode: EnumerationMode) -> Self {
        EnumerationTask {
            order,
            mode,
            parallelism: None,
        }
    }

    fn check(&self, limits: &Limits) -> Result<()> {
        if self.order == 0 {
            return Err(Error::Malformed {
                line: 0,
                message: "order must be positive".into(),
            });
        }
        if self.order > limits.max_enumeration_order {
            return Err(Error::OrderTooLarge {
                order: self.order,
                max: limits.max_enumeration_order,
            });
        }
        Ok(())
    }

    fn sequential(&self) -> bool {
        self.parallelism == Some(1)
    }
}

const UNSET: usize = usize::MAX;

/// Backtracking over cells in `cells` order; after each assignment every
/// associativity triple whose four lookups are known is checked.
struct Filler<'a> {
    n: usize,
    cells: &'a [(usize, usize)],
}

impl Filler<'_> {
    fn consistent(&self, t: &[usize]) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = t[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let left = t[ab * n + c];
                    let bc = t[b * n + c];
                    if left == UNSET || bc == UNSET {
                        continue;
                    }
                    let right = t[a * n + bc];
                    if right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(&self, t: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if depth == self.cells.len() {
            out.push(t.clone());
            return;
        }
        let (i, j) = self.cells[depth];
        for v in 0..self.n {
            t[i * self.n + j] = v;
            if self.consistent(t) {
                self.fill(t, depth + 1, out);
            }
        }
        t[i * self.n + j] = UNSET;
    }
}

/// Enumerates labelled tables filling cells in the given order. The result
/// is sorted lexicographically by row-major entries, so any complete cell
/// order gives the same output.
pub fn enumerate_with_cell_order(
    n: usize,
    cells: &[(usize, usize)],
    sequential: bool,
) -> Vec<CayleyTable> {
    let filler = Filler { n, cells };
    // Split on the first `n` cells (the first row for row-major order).
    let split = n.min(cells.len());
    let mut prefixes = Vec::new();
    let mut t = vec![UNSET; n * n];
    Filler {
        n,
        cells: &cells[..split],
    }
    .fill(&mut t, 0, &mut prefixes);

    let run = |prefix: &Vec<usize>| {
        let mut t = prefix.clone();
        let mut out = Vec::new();
        filler.fill(&mut t, split, &mut out);
        out
    };
    let chunks: Vec<Vec<Vec<usize>>> = if sequential {
        prefixes.iter().map(run).collect()
    } else {
        prefixes.par_iter().map(run).collect()
    };
    let mut tables: Vec<Vec<usize>> = chunks.into_iter().flatten().collect();
    tables.sort();
    tables
        .into_iter()
        .map(|e| CayleyTable::new_unchecked(Magma::from_entries(n, e).expect("entries in range")))
        .collect()
}

pub fn row_major(n: usize) -> Vec<(usize, usize)> {
    (0..n).cartesian_product(0..n).collect()
}

/// All semigroups of the task's order, in lexicographic order of their
/// row-major entries.
pub fn enumerate_semigroups(task: &EnumerationTask, limits: &Limits) -> Result<Vec<CayleyTable>> {
    task.check(limits)?;
    let labelled = enumerate_with_cell_order(task.order, &row_major(task.order), task.sequential());
    match task.mode {
        EnumerationMode::Labelled => Ok(labelled),
        EnumerationMode::UpToIso => {
            let keep = |t: &CayleyTable| canonicalize(t).map(|c| (c == *t).then_some(t.clone()));
            let kept: Vec<Option<CayleyTable>> = if task.sequential() {
                labelled.iter().map(keep).collect::<Result<_>>()?
            } else {
                labelled.par_iter().map(keep).collect::<Result<_>>()?
            };
            Ok(kept.into_iter().flatten().collect())
        }
    }
}

/// The lexicographically least relabeling of `table` over all `n!`
/// permutations.
pub fn canonicalize(table: &CayleyTable) -> Result<CayleyTable> {
    let n = table.order();
    if n > CANONICALIZE_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: CANONICALIZE_MAX_ORDER,
        });
    }
    let best = (0..n)
        .permutations(n)
        .map(|sigma: Vec<ElementId>| table.relabel(&sigma))
        .min()
        .expect("at least one relabeling");
    Ok(best)
}

/// Per-table record in the report sink.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusRecord {
    #[serde(flatten)]
    pub report: TheoremReport,
    pub table: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSummary {
    pub tables_seen: usize,
    pub theorem_failures: usize,
    /// `(autOrder, hOrder, gOrder)` -> number of tables.
    pub histogram: BTreeMap<(u64, u64, u64), usize>,
    pub elapsed: Duration,
}

impl CorpusSummary {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "tablesSeen: {}\ntheoremFailures: {}\n",
            self.tables_seen, self.theorem_failures
        );
        for ((aut, h, g), count) in &self.histogram {
            out.push_str(&format!("histogram: aut={aut} h={h} g={g} count={count}\n"));
        }
        out.push_str(&format!("elapsedMs: {}\n", self.elapsed.as_millis()));
        out
    }
}

/// Runs [`verify_theorem`] on every enumerated table, writing one JSON
/// record per line to `sink` (when given) in enumeration order.
pub fn corpus_verify(
    task: &EnumerationTask,
    policy: TransversalPolicy,
    limits: &Limits,
    sink: Option<&mut dyn Write>,
) -> Result<CorpusSummary> {
    let start = Instant::now();
    let tables = enumerate_semigroups(task, limits)?;
    let verify = |t: &CayleyTable| verify_theorem(t, policy, limits);
    let reports: Vec<TheoremReport> = if task.sequential() {
        tables.iter().map(verify).collect::<Result<_>>()?
    } else {
        tables.par_iter().map(verify).collect::<Result<_>>()?
    };

    if let Some(sink) = sink {
        for (table, report) in tables.iter().zip(&reports) {
            let record = CorpusRecord {
                report: report.clone(),
                table: table.to_text(),
            };
            let line = serde_json::to_string(&record).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(sink, "{line}")?;
        }
        sink.flush()?;
    }

    let mut histogram = BTreeMap::new();
    for r in &reports {
        *histogram.entry((r.aut_order, r.h_order, r.g_order)).or_insert(0) += 1;
    }
    Ok(CorpusSummary {
        tables_seen: tables.len(),
        theorem_failures: reports.iter().filter(|r| !r.all_flags_hold()).count(),
        histogram,
        elapsed: start.elapsed(),
    })
}
