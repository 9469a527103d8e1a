//! The verification engine: instance counts, witness soundness and
//! independence from the executor.

use std::collections::BTreeSet;

use primal_core::verify::Quantifier;
use primal_core::{
    diamond_naive, primal_topology, search_counterexample, verify_all, verify_all_with,
    verify_property, Executor, FiniteTopology, Primal, PrimalSpace, PropertyId, ScopeCaps,
    SetFamily, SubsetCode, Verdict, Witness,
};

const TOPOLOGIES: [u64; 4] = [1, 4, 29, 355];

fn members(f: &SetFamily) -> BTreeSet<u32> {
    f.iter().map(|a| a.0).collect()
}

fn naive_is_primal(n: u8, fam: &BTreeSet<u32>) -> bool {
    let full = (1u32 << n) - 1;
    !fam.contains(&full)
        && fam
            .iter()
            .all(|&a| (0..=full).all(|b| b & a != b || fam.contains(&b)))
        && (0..=full).all(|a| {
            (0..=full).all(|b| !fam.contains(&(a & b)) || fam.contains(&a) || fam.contains(&b))
        })
}

/// Splits the work over scoped threads, last chunk first.
struct Chunked(usize);

impl Executor for Chunked {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        let size = items.len().div_ceil(self.0).max(1);
        let chunks: Vec<&[T]> = items.chunks(size).collect();
        let f = &f;
        let mut parts: Vec<(usize, Vec<R>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .enumerate()
                .rev()
                .map(|(i, chunk)| scope.spawn(move || (i, chunk.iter().map(f).collect::<Vec<R>>())))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        parts.sort_by_key(|(i, _)| *i);
        parts.into_iter().flat_map(|(_, v)| v).collect()
    }
}

#[test]
fn space_counts_follow_topology_counts() {
    let r = verify_property(PropertyId::T3_6, 3).unwrap();
    assert_eq!(r.checked_at(3), 232);
    assert_eq!(
        r.checked,
        (0..3).map(|i| TOPOLOGIES[i] << (i + 1)).sum::<u64>()
    );
    let r = verify_property(PropertyId::T3_3_v, 4).unwrap();
    let expected: u64 = (0..4)
        .map(|i| TOPOLOGIES[i] << (i + 1) << (2 * (i + 1)))
        .sum();
    assert_eq!(r.checked, expected);
}

#[test]
fn executor_does_not_change_reports() {
    let caps = ScopeCaps::default();
    let seq = verify_all(3).unwrap();
    for workers in [1, 3, 8] {
        assert_eq!(verify_all_with(3, &caps, &Chunked(workers)).unwrap(), seq);
    }
    assert_eq!(verify_all(3).unwrap(), seq);
}

#[test]
fn verdicts_at_three() {
    for r in verify_all(3).unwrap() {
        match r.property.quantifier() {
            Quantifier::Existential => assert_eq!(
                r.verdict,
                Verdict::CounterexampleFoundAsExpected,
                "{}",
                r.property
            ),
            Quantifier::Universal if r.property == PropertyId::T3_11 => {
                assert_eq!(r.verdict, Verdict::Fails)
            }
            Quantifier::Universal => {
                assert_eq!(r.verdict, Verdict::Holds, "{}", r.property);
                assert_eq!(r.failure_count, 0);
            }
        }
    }
}

fn space_of(w: &Witness) -> PrimalSpace {
    let t = FiniteTopology::new(w.get_family("topology").unwrap().clone()).unwrap();
    let p = Primal::new(w.get_family("primal").unwrap().clone()).unwrap();
    PrimalSpace::new(t, p).unwrap()
}

#[test]
fn strictness_witnesses_are_genuine() {
    for w in verify_property(PropertyId::R3_4_strictness, 3)
        .unwrap()
        .failures
    {
        let s = space_of(&w);
        let (a, b) = (w.get_set("A").unwrap(), w.get_set("B").unwrap());
        assert_ne!(
            diamond_naive(a & b, &s),
            diamond_naive(a, &s) & diamond_naive(b, &s)
        );
    }
}

#[test]
fn converse_witnesses_are_genuine() {
    for w in verify_property(PropertyId::T3_7_converse, 3)
        .unwrap()
        .failures
    {
        let s = space_of(&w);
        let n = s.universe().size();
        assert_eq!(primal_topology(&s).opens(), s.topology().opens());
        let all_but_full: BTreeSet<u32> = (0..(1u32 << n) - 1).collect();
        assert_ne!(members(s.primal().family()), all_but_full);
    }
}

#[test]
fn family_witnesses_are_not_primal() {
    for (id, role) in [
        (PropertyId::R3_1_intersection, "intersection"),
        (PropertyId::R3_5_preimage, "preimage"),
        (PropertyId::T3_11, "image"),
    ] {
        let report = verify_property(id, 3).unwrap();
        assert!(report.failure_count > 0);
        for w in &report.failures {
            let f = w.get_family(role).unwrap();
            assert!(
                !naive_is_primal(f.universe().size(), &members(f)),
                "{} {}",
                id,
                w
            );
        }
    }
}

#[test]
fn pushforward_counterexample_is_minimal() {
    // one point mapped into two; the image of {∅} is {∅}
    let w = search_counterexample(PropertyId::T3_11, 3)
        .unwrap()
        .unwrap();
    let m = w.map.as_ref().unwrap();
    assert_eq!((m.domain().size(), m.codomain().size()), (1, 2));
    assert!(!m.is_surjective());
    assert_eq!(members(w.get_family("image").unwrap()), BTreeSet::from([0]));
}

#[test]
fn preimage_counterexample_uses_a_constant_map() {
    let w = search_counterexample(PropertyId::R3_5_preimage, 2)
        .unwrap()
        .unwrap();
    let m = w.map.as_ref().unwrap();
    assert!(m.table().windows(2).all(|p| p[0] == p[1]));
    let q = w.get_family("Q").unwrap();
    assert!(naive_is_primal(q.universe().size(), &members(q)));
    assert!(w
        .get_family("preimage")
        .unwrap()
        .contains(SubsetCode(m.domain().full().0)));
}
