mod common;

use itertools::Itertools;
use proptest::prelude::*;
use semiaut::enumeration::{
    canonicalize, corpus_verify, enumerate_semigroups, enumerate_with_cell_order, row_major,
    CorpusRecord, EnumerationMode, EnumerationTask,
};
use semiaut::inflation::TransversalPolicy;
use semiaut::{fixtures, Limits};

fn labelled(n: usize) -> EnumerationTask {
    EnumerationTask::new(n, EnumerationMode::Labelled)
}

#[test]
fn labelled_counts_match_naive_filter() {
    let limits = Limits::default();
    for n in 1..=3 {
        let got = enumerate_semigroups(&labelled(n), &limits).unwrap();
        let expected = common::naive_semigroups(n);
        assert_eq!(got, expected, "order {n}");
    }
    // frozen from the naive filter: 1, 8, 113
    assert_eq!(enumerate_semigroups(&labelled(2), &limits).unwrap().len(), 8);
    assert_eq!(enumerate_semigroups(&labelled(3), &limits).unwrap().len(), 113);
}

#[test]
fn order_four_is_stable_under_cell_order() {
    let row = enumerate_semigroups(&labelled(4), &Limits::default()).unwrap();
    let columns: Vec<(usize, usize)> = row_major(4).into_iter().map(|(i, j)| (j, i)).collect();
    assert_eq!(enumerate_with_cell_order(4, &columns, false), row);
    let reversed: Vec<(usize, usize)> = row_major(4).into_iter().rev().collect();
    assert_eq!(enumerate_with_cell_order(4, &reversed, true), row);
    assert!(row.iter().all(|t| common::naive_associative(4, t.entries())));
}

#[test]
fn enumeration_is_deterministic() {
    let a = enumerate_semigroups(&labelled(4), &Limits::default()).unwrap();
    let b = enumerate_semigroups(&labelled(4), &Limits::default()).unwrap();
    assert_eq!(a, b);
}

/// Orbit count by Burnside's lemma over the naive labelled set.
fn burnside(n: usize) -> usize {
    let tables = common::naive_semigroups(n);
    let fixed: usize = (0..n)
        .permutations(n)
        .map(|s| tables.iter().filter(|t| t.relabel(&s) == **t).count())
        .sum();
    let factorial: usize = (1..=n).product();
    assert_eq!(fixed % factorial, 0);
    fixed / factorial
}

#[test]
fn up_to_iso_matches_burnside_count() {
    let limits = Limits::default();
    for n in 1..=3 {
        let task = EnumerationTask::new(n, EnumerationMode::UpToIso);
        let reps = enumerate_semigroups(&task, &limits).unwrap();
        assert_eq!(reps.len(), burnside(n), "order {n}");
        for t in &reps {
            assert_eq!(&canonicalize(t).unwrap(), t);
        }
    }
}

#[test]
fn canonicalize_examples() {
    assert_eq!(canonicalize(&fixtures::n3()).unwrap(), fixtures::n3());
    let s6 = fixtures::s6();
    let c = canonicalize(&s6).unwrap();
    assert_eq!(canonicalize(&c).unwrap(), c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_orbit_constant(index in 0usize..1000, seed in any::<u64>()) {
        let corpus = common::corpus_up_to_3();
        let t = &corpus[index % corpus.len()];
        let sigma = common::random_permutation(t.order(), &mut common::rng(seed));
        let c = canonicalize(t).unwrap();
        prop_assert_eq!(canonicalize(&t.relabel(&sigma)).unwrap(), c.clone());
        prop_assert_eq!(canonicalize(&c).unwrap(), c);
    }
}

#[test]
fn corpus_verify_writes_one_record_per_table() {
    let mut sink = Vec::new();
    let summary = corpus_verify(
        &labelled(3),
        TransversalPolicy::Least,
        &Limits::default(),
        Some(&mut sink),
    )
    .unwrap();
    assert_eq!(summary.tables_seen, 113);
    assert_eq!(summary.theorem_failures, 0);
    assert_eq!(summary.histogram.values().sum::<usize>(), 113);

    let text = String::from_utf8(sink).unwrap();
    let records: Vec<CorpusRecord> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 113);
    let tables = enumerate_semigroups(&labelled(3), &Limits::default()).unwrap();
    for (record, table) in records.iter().zip(&tables) {
        assert_eq!(record.table, table.to_text());
        assert!(record.report.all_flags_hold());
    }
    let summary_text = summary.to_text();
    assert!(summary_text.starts_with("tablesSeen: 113\ntheoremFailures: 0\n"));
}

#[test]
fn corpus_order_one() {
    let s = corpus_verify(&labelled(1), TransversalPolicy::Least, &Limits::default(), None).unwrap();
    assert_eq!((s.tables_seen, s.theorem_failures), (1, 0));
}
