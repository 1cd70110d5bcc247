mod common;

use proptest::prelude::*;
use semiaut::automorphism::{enumerate_automorphisms, is_automorphism};
use semiaut::perm::{compose, inverse, subgroup_checks};
use semiaut::table::compute_psi;
use semiaut::theorem::psi_class_group;
use semiaut::{fixtures, Limits, PermGroup, Permutation};

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

#[test]
fn compose_and_inverse_examples() {
    let p = cyc(3, &[&[0, 2]]);
    let id = Permutation::identity(3);
    assert_eq!(compose(&id, &p).unwrap(), p);
    assert!(compose(&p, &inverse(&p)).unwrap().is_identity());
    assert_eq!(
        compose(&cyc(3, &[&[0, 1]]), &cyc(3, &[&[1, 2]])).unwrap(),
        cyc(3, &[&[0, 1, 2]]).inverse()
    );
    assert_eq!(inverse(&id), id);
    assert_eq!(inverse(&cyc(3, &[&[0, 1, 2]])), cyc(3, &[&[0, 2, 1]]));
}

#[test]
fn enumeration_examples() {
    let limits = Limits::default();
    let n3 = enumerate_automorphisms(&fixtures::n3(), &limits).unwrap();
    assert_eq!(n3.elements(), &[Permutation::identity(3), cyc(3, &[&[1, 2]])]);
    assert_eq!(enumerate_automorphisms(&fixtures::l2(), &limits).unwrap().order(), 2);
    assert_eq!(enumerate_automorphisms(&fixtures::s6(), &limits).unwrap().order(), 8);
}

#[test]
fn matches_naive_filter_on_fixtures_and_corpus() {
    let limits = Limits::default();
    let mut tables: Vec<_> = fixtures::all().into_iter().map(|(_, t)| t).collect();
    tables.extend(common::corpus_up_to_3());
    for t in &tables {
        let got = enumerate_automorphisms(t, &limits).unwrap();
        let mut expected = common::naive_aut(t);
        expected.sort();
        assert_eq!(got.elements(), expected.as_slice(), "{t}");
        assert!(got.check_axioms().is_ok());
    }
}

#[test]
fn matches_naive_filter_on_order_four_sample() {
    let limits = Limits::default();
    let task = semiaut::enumeration::EnumerationTask::new(4, Default::default());
    let corpus = semiaut::enumeration::enumerate_semigroups(&task, &limits).unwrap();
    for t in corpus.iter().step_by(37) {
        let mut expected = common::naive_aut(t);
        expected.sort();
        assert_eq!(enumerate_automorphisms(t, &limits).unwrap().elements(), expected.as_slice());
    }
}

#[test]
fn subgroup_check_examples() {
    let limits = Limits::default();
    let s6 = fixtures::s6();
    let aut = enumerate_automorphisms(&s6, &limits).unwrap();
    let triv = subgroup_checks(&PermGroup::trivial(6), &aut);
    assert!(triv.is_subgroup && triv.is_normal);
    let own = subgroup_checks(&aut, &aut);
    assert!(own.is_subgroup && own.is_normal);
    let g = psi_class_group(&compute_psi(&s6), &limits).unwrap();
    assert_eq!(g.order(), 4);
    let c = subgroup_checks(&g, &aut);
    assert!(c.is_subgroup && c.is_normal, "{:?}", c.witness);
}

#[test]
fn larger_tables_are_handled_by_pruning() {
    // order 12: the left-zero semigroup has every bijection as automorphism,
    // so use an inflation whose group stays small.
    let limits = Limits::default();
    let t = semiaut::CayleyTable::from_fn(12, |x, _| x % 3).unwrap();
    // psi classes: {0},{1},{2}, and non-products 3..11 split by x mod 3
    // into three blocks of three: |Aut| = 3! * (3!)^3
    let aut = enumerate_automorphisms(&t, &limits).unwrap();
    assert_eq!(aut.order(), 6 * 6 * 6 * 6);
    for p in aut.iter().step_by(97) {
        assert!(is_automorphism(&t, p).is_ok());
    }
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn composition_is_associative_with_neutral_identity(
        (p, q, r) in (1usize..9).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
    ) {
        let pq_r = compose(&compose(&p, &q).unwrap(), &r).unwrap();
        let p_qr = compose(&p, &compose(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(pq_r, p_qr);
        let id = Permutation::identity(p.degree());
        prop_assert_eq!(compose(&id, &p).unwrap(), p.clone());
        prop_assert_eq!(compose(&p, &id).unwrap(), p.clone());
        prop_assert!(compose(&inverse(&p), &p).unwrap().is_identity());
    }

    /// Aut(σ·t) = σ⁻¹ Aut(t) σ, elementwise.
    #[test]
    fn aut_is_isomorphism_invariant(index in 0usize..1000, seed in any::<u64>()) {
        let corpus = common::corpus_up_to_3();
        let t = &corpus[index % corpus.len()];
        let sigma = common::random_permutation(t.order(), &mut common::rng(seed));
        let sigma_p = Permutation::new(sigma.clone()).unwrap();
        let limits = Limits::default();
        let moved = enumerate_automorphisms(&t.relabel(&sigma), &limits).unwrap();
        let conjugated = PermGroup::from_elements(
            t.order(),
            enumerate_automorphisms(t, &limits)
                .unwrap()
                .iter()
                .map(|p| p.conjugate_by(&sigma_p))
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(moved, conjugated);
    }
}
