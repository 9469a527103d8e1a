//! Exhaustive verification of the primal theorems and of the negative
//! results that go with them.
//!
//! Each [`PropertyId`] names one predicate over a family of instances
//! (primal pairs, primal spaces, point maps, ...). Instances are visited in
//! canonical order: universe size, then topology, then primal, then subsets
//! in ascending code order. A *failure* is an instance where the predicate
//! is false. Universal properties expect none; existential ones encode a
//! "need not hold" statement and expect at least one.
//!
//! Work is handed to an [`Executor`] one instance group at a time and the
//! results are merged back in input order, so reports do not depend on the
//! worker count.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::primal_ops::{
    base_family, closure_table, diamond, diamond_naive, diamond_table, distribution_check,
    is_base_for, kuratowski_audit, primal_topology, tau_star_membership, PrimalSpace,
};
use crate::setkit::{SetFamily, SubsetCode, Universe};
use crate::structures::{
    check_primal, elementwise_combine, enumerate_primals, exhaustive_grill_scan,
    exhaustive_primal_scan, grill_to_primal, intersect_families, preimage_family, primal_to_grill,
    pushforward_primal, Combine, PointMap, Primal,
};
use crate::topology::{closure, enumerate_topologies, FiniteTopology};
use crate::Error;

/// Witnesses kept per report; the full count is in `failure_count`.
pub const MAX_WITNESSES: usize = 16;

/// Largest scope any property accepts.
pub const GLOBAL_CAP: u8 = 4;

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    T3_1,
    T3_2,
    T3_3_i,
    T3_3_ii,
    T3_3_iii,
    T3_3_iv,
    T3_3_v,
    T3_3_vi,
    T3_3_vii,
    T3_4,
    T3_5,
    C3_3,
    T3_6,
    T3_7_i,
    T3_7_ii,
    T3_7_converse,
    T3_8_i,
    T3_8_ii,
    T3_9,
    T3_10,
    T3_11,
    C3_2,
    R3_1_intersection,
    R3_2_elementwise,
    R3_4_strictness,
    R3_5_preimage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Universal,
    Existential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Census,
    PrimalPairs,
    Spaces,
    TopologyWithPrimalPairs,
    NonSurjectiveMaps,
    AllMaps,
}

impl PropertyId {
    pub const ALL: [PropertyId; 26] = [
        PropertyId::T3_1,
        PropertyId::T3_2,
        PropertyId::T3_3_i,
        PropertyId::T3_3_ii,
        PropertyId::T3_3_iii,
        PropertyId::T3_3_iv,
        PropertyId::T3_3_v,
        PropertyId::T3_3_vi,
        PropertyId::T3_3_vii,
        PropertyId::T3_4,
        PropertyId::T3_5,
        PropertyId::C3_3,
        PropertyId::T3_6,
        PropertyId::T3_7_i,
        PropertyId::T3_7_ii,
        PropertyId::T3_7_converse,
        PropertyId::T3_8_i,
        PropertyId::T3_8_ii,
        PropertyId::T3_9,
        PropertyId::T3_10,
        PropertyId::T3_11,
        PropertyId::C3_2,
        PropertyId::R3_1_intersection,
        PropertyId::R3_2_elementwise,
        PropertyId::R3_4_strictness,
        PropertyId::R3_5_preimage,
    ];

    pub fn as_str(self) -> &'static str {
        use PropertyId::*;
        match self {
            T3_1 => "T3_1",
            T3_2 => "T3_2",
            T3_3_i => "T3_3_i",
            T3_3_ii => "T3_3_ii",
            T3_3_iii => "T3_3_iii",
            T3_3_iv => "T3_3_iv",
            T3_3_v => "T3_3_v",
            T3_3_vi => "T3_3_vi",
            T3_3_vii => "T3_3_vii",
            T3_4 => "T3_4",
            T3_5 => "T3_5",
            C3_3 => "C3_3",
            T3_6 => "T3_6",
            T3_7_i => "T3_7_i",
            T3_7_ii => "T3_7_ii",
            T3_7_converse => "T3_7_converse",
            T3_8_i => "T3_8_i",
            T3_8_ii => "T3_8_ii",
            T3_9 => "T3_9",
            T3_10 => "T3_10",
            T3_11 => "T3_11",
            C3_2 => "C3_2",
            R3_1_intersection => "R3_1_intersection",
            R3_2_elementwise => "R3_2_elementwise",
            R3_4_strictness => "R3_4_strictness",
            R3_5_preimage => "R3_5_preimage",
        }
    }

    /// The statement checked, in words.
    pub fn statement(self) -> &'static str {
        use PropertyId::*;
        match self {
            T3_1 => "complementing a grill memberwise gives a primal, and back",
            T3_2 => "the union of two primals is a primal",
            T3_3_i => "A closed implies A^⋄ ⊆ A",
            T3_3_ii => "∅^⋄ = ∅",
            T3_3_iii => "A^⋄ is closed",
            T3_3_iv => "(A^⋄)^⋄ ⊆ A^⋄",
            T3_3_v => "A ⊆ B implies A^⋄ ⊆ B^⋄",
            T3_3_vi => "A^⋄ ∪ B^⋄ = (A ∪ B)^⋄",
            T3_3_vii => "(A ∩ B)^⋄ ⊆ A^⋄ ∩ B^⋄",
            T3_4 => "A open implies A ∩ B^⋄ ⊆ (A ∩ B)^⋄",
            T3_5 => "cl^⋄ fixes ∅ and X, is extensive, monotone, additive, idempotent",
            C3_3 => "cl^⋄ passes the Kuratowski closure audit",
            T3_6 => "τ ⊆ τ^⋄",
            T3_7_i => "P = ∅ implies τ^⋄ = 2^X",
            T3_7_ii => "P = 2^X \\ {X} implies τ^⋄ = τ",
            T3_7_converse => "τ^⋄ = τ with P ≠ 2^X \\ {X} occurs",
            T3_8_i => "A ∈ τ^⋄ iff every x ∈ A has an open U ∋ x with U^c ∪ A ∉ P",
            T3_8_ii => "A ∉ P implies A ∈ τ^⋄",
            T3_9 => "{T ∩ Q : T ∈ τ, Q ∉ P} is a base for τ^⋄",
            T3_10 => "P ⊆ Q implies τ^⋄_Q ⊆ τ^⋄_P",
            T3_11 => "the image of a primal along a non-surjective map is a primal",
            C3_2 => "there are exactly 2^n primals, each {A : B ⊄ A} for one B",
            R3_1_intersection => "the intersection of two primals can fail to be a primal",
            R3_2_elementwise => "memberwise meets or joins of two primals can fail to be a primal",
            R3_4_strictness => "(A ∩ B)^⋄ = A^⋄ ∩ B^⋄ can fail",
            R3_5_preimage => "the preimage family of a primal can fail to be a primal",
        }
    }

    pub fn quantifier(self) -> Quantifier {
        use PropertyId::*;
        match self {
            T3_7_converse | R3_1_intersection | R3_2_elementwise | R3_4_strictness
            | R3_5_preimage => Quantifier::Existential,
            _ => Quantifier::Universal,
        }
    }

    fn shape(self) -> Shape {
        use PropertyId::*;
        match self {
            T3_1 | C3_2 => Shape::Census,
            T3_2 | R3_1_intersection | R3_2_elementwise => Shape::PrimalPairs,
            T3_10 => Shape::TopologyWithPrimalPairs,
            T3_11 => Shape::NonSurjectiveMaps,
            R3_5_preimage => Shape::AllMaps,
            _ => Shape::Spaces,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PropertyId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownProperty(s.into()))
    }
}

/// Per-property scope limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScopeCaps {
    /// Everything except topology-plus-primal-pair properties.
    pub default: u8,
    /// Properties quantifying over a topology, a primal pair and subsets.
    pub primal_pairs_with_topology: u8,
}

impl Default for ScopeCaps {
    fn default() -> Self {
        ScopeCaps {
            default: GLOBAL_CAP,
            primal_pairs_with_topology: 3,
        }
    }
}

impl ScopeCaps {
    pub fn cap(&self, id: PropertyId) -> u8 {
        match id.shape() {
            Shape::TopologyWithPrimalPairs => self.primal_pairs_with_topology,
            _ => self.default,
        }
        .min(GLOBAL_CAP)
    }
}

/// Runs independent jobs and returns their results in input order.
pub trait Executor {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}

/// One failing instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub universe: Universe,
    pub map: Option<PointMap>,
    /// Named families: `topology`, `primal`, `Q`, `grill`, `image`, ...
    pub families: Vec<(&'static str, SetFamily)>,
    /// Named subsets of `universe`.
    pub sets: Vec<(&'static str, SubsetCode)>,
    pub detail: String,
}

impl Witness {
    fn new(universe: Universe) -> Self {
        Witness {
            universe,
            map: None,
            families: Vec::new(),
            sets: Vec::new(),
            detail: String::new(),
        }
    }

    fn family(mut self, role: &'static str, f: &SetFamily) -> Self {
        self.families.push((role, f.clone()));
        self
    }

    fn space(self, s: &PrimalSpace) -> Self {
        self.family("topology", s.topology().opens())
            .family("primal", s.primal().family())
    }

    fn set(mut self, name: &'static str, a: SubsetCode) -> Self {
        self.sets.push((name, a));
        self
    }

    fn with_map(mut self, m: &PointMap) -> Self {
        self.map = Some(m.clone());
        self
    }

    fn detail(mut self, text: String) -> Self {
        self.detail = text;
        self
    }

    /// Looks up a named family.
    pub fn get_family(&self, role: &str) -> Option<&SetFamily> {
        self.families
            .iter()
            .find(|(r, _)| *r == role)
            .map(|(_, f)| f)
    }

    /// Looks up a named set.
    pub fn get_set(&self, name: &str) -> Option<SubsetCode> {
        self.sets.iter().find(|(n, _)| *n == name).map(|&(_, a)| a)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.universe.size())?;
        if let Some(m) = &self.map {
            f.write_str(" map=")?;
            for (i, t) in m.table().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", t)?;
            }
            write!(f, "->{}", m.codomain().size())?;
        }
        for (role, family) in &self.families {
            write!(f, " {}={}", role, family)?;
        }
        for (name, a) in &self.sets {
            write!(f, " {}={}", name, self.universe.display(*a))?;
        }
        if !self.detail.is_empty() {
            write!(f, " : {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    CounterexampleFoundAsExpected,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::CounterexampleFoundAsExpected => "counterexample_found_as_expected",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub property: PropertyId,
    pub max_n: u8,
    pub checked: u64,
    /// Instance counts for each universe size `1..=max_n`.
    pub checked_by_n: Vec<(u8, u64)>,
    /// First failures in canonical order, at most [`MAX_WITNESSES`].
    pub failures: Vec<Witness>,
    pub failure_count: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    /// Universal properties should hold, existential ones should find
    /// their counterexample.
    pub fn as_expected(&self) -> bool {
        match self.property.quantifier() {
            Quantifier::Universal => self.verdict == Verdict::Holds,
            Quantifier::Existential => self.verdict == Verdict::CounterexampleFoundAsExpected,
        }
    }

    pub fn checked_at(&self, n: u8) -> u64 {
        self.checked_by_n
            .iter()
            .find(|(k, _)| *k == n)
            .map_or(0, |&(_, c)| c)
    }
}

impl fmt::Display for VerificationReport {
    /// The machine line followed by indented witness lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PROPERTY {} SCOPE n<={} CHECKED {} VERDICT {}",
            self.property, self.max_n, self.checked, self.verdict
        )?;
        for w in &self.failures {
            write!(f, "\n  WITNESS {}", w)?;
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
struct Outcome {
    checked: u64,
    failures: Vec<Witness>,
}

impl Outcome {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }
}

enum Unit {
    Census(Universe),
    Pair(Primal, Primal),
    Space(PrimalSpace),
    Topology(FiniteTopology),
    Map(PointMap),
}

fn units(id: PropertyId, n: u8) -> Vec<Unit> {
    let u = Universe::new(n as usize).expect("scope sizes are valid universes");
    match id.shape() {
        Shape::Census => alloc::vec![Unit::Census(u)],
        Shape::PrimalPairs => {
            let primals = enumerate_primals(u);
            let mut out = Vec::new();
            for p in &primals {
                for q in &primals {
                    out.push(Unit::Pair(p.clone(), q.clone()));
                }
            }
            out
        }
        Shape::TopologyWithPrimalPairs => enumerate_topologies(u)
            .expect("scope within scan cap")
            .into_iter()
            .map(Unit::Topology)
            .collect(),
        Shape::Spaces => {
            let primals: Vec<Primal> = match id {
                PropertyId::T3_7_i => alloc::vec![Primal::empty(u)],
                PropertyId::T3_7_ii => alloc::vec![Primal::all_but_full(u)],
                _ => enumerate_primals(u),
            };
            let mut out = Vec::new();
            for t in enumerate_topologies(u).expect("scope within scan cap") {
                for p in &primals {
                    out.push(Unit::Space(
                        PrimalSpace::new(t.clone(), p.clone()).expect("same universe"),
                    ));
                }
            }
            out
        }
        Shape::NonSurjectiveMaps | Shape::AllMaps => {
            // every (domain, codomain) size pair whose larger side is n
            let mut out = Vec::new();
            for d in 1..=n {
                for c in 1..=n {
                    if d.max(c) != n {
                        continue;
                    }
                    let dom = Universe::new(d as usize).expect("valid");
                    let cod = Universe::new(c as usize).expect("valid");
                    for m in PointMap::all(dom, cod) {
                        if id.shape() == Shape::AllMaps || !m.is_surjective() {
                            out.push(Unit::Map(m));
                        }
                    }
                }
            }
            out
        }
    }
}

fn evaluate(id: PropertyId, unit: &Unit) -> Outcome {
    match unit {
        Unit::Census(u) => eval_census(id, *u),
        Unit::Pair(p, q) => eval_pair(id, p, q),
        Unit::Space(s) => eval_space(id, s),
        Unit::Topology(t) => eval_topology(id, t),
        Unit::Map(m) => eval_map(id, m),
    }
}

fn eval_census(id: PropertyId, u: Universe) -> Outcome {
    let mut out = Outcome::default();
    match id {
        PropertyId::T3_1 => {
            for g in exhaustive_grill_scan(u).expect("scope within scan cap") {
                let p = grill_to_primal(&g);
                out.check(
                    check_primal(p.family()).is_ok() && primal_to_grill(&p) == g,
                    || {
                        Witness::new(u)
                            .family("grill", g.family())
                            .family("primal", p.family())
                    },
                );
            }
            for p in enumerate_primals(u) {
                let g = primal_to_grill(&p);
                out.check(grill_to_primal(&g) == p, || {
                    Witness::new(u)
                        .family("primal", p.family())
                        .family("grill", g.family())
                });
            }
        }
        PropertyId::C3_2 => {
            let produced = enumerate_primals(u);
            let scanned = exhaustive_primal_scan(u).expect("scope within scan cap");
            out.check(produced.len() == u.subset_count(), || {
                Witness::new(u).detail(format!("{} primals produced", produced.len()))
            });
            out.check(produced == scanned, || {
                Witness::new(u).detail(format!(
                    "generator gives {} primals, scan gives {}",
                    produced.len(),
                    scanned.len()
                ))
            });
            let mut generators: Vec<SubsetCode> = Vec::new();
            for p in &scanned {
                let b = p.generator();
                generators.push(b);
                out.check(Primal::avoiding(u, b) == *p, || {
                    Witness::new(u).family("primal", p.family()).set("B", b)
                });
            }
            generators.sort();
            generators.dedup();
            out.check(generators.len() == scanned.len(), || {
                Witness::new(u).detail("generators are not distinct".into())
            });
        }
        _ => unreachable!("{} is not a census property", id),
    }
    out
}

fn eval_pair(id: PropertyId, p: &Primal, q: &Primal) -> Outcome {
    let u = p.universe();
    let mut out = Outcome::default();
    let witness = || {
        Witness::new(u)
            .family("P", p.family())
            .family("Q", q.family())
    };
    match id {
        PropertyId::T3_2 => {
            let union = p.family().union(q.family()).expect("same universe");
            out.check(check_primal(&union).is_ok(), || {
                witness().family("union", &union)
            });
        }
        PropertyId::R3_1_intersection => {
            let r = intersect_families(p, q).expect("same universe");
            out.check(r.is_primal(), || {
                witness()
                    .family("intersection", &r.family)
                    .detail(rule_text(&r.validation))
            });
        }
        PropertyId::R3_2_elementwise => {
            for (mode, role) in [(Combine::Meet, "meets"), (Combine::Join, "joins")] {
                let r = elementwise_combine(p, q, mode).expect("same universe");
                out.check(r.is_primal(), || {
                    witness()
                        .family(role, &r.family)
                        .detail(rule_text(&r.validation))
                });
            }
        }
        _ => unreachable!("{} is not a primal-pair property", id),
    }
    out
}

fn rule_text(v: &Result<(), crate::structures::StructureViolation>) -> String {
    match v {
        Ok(()) => "primal".into(),
        Err(e) => e.rule.as_str().into(),
    }
}

fn eval_space(id: PropertyId, s: &PrimalSpace) -> Outcome {
    use PropertyId::*;
    let u = s.universe();
    let t = s.topology();
    let d = diamond_table(s);
    let dia = |a: SubsetCode| d[a.0 as usize];
    let w = || Witness::new(u).space(s);
    let mut out = Outcome::default();
    let pairs = || {
        u.subsets()
            .flat_map(move |a| u.subsets().map(move |b| (a, b)))
    };
    match id {
        T3_3_i => {
            for a in u.subsets() {
                out.check(!t.is_closed(a) || dia(a).is_subset_of(a), || {
                    w().set("A", a).set("A^⋄", dia(a))
                });
            }
        }
        T3_3_ii => out.check(dia(SubsetCode::EMPTY).is_empty(), || {
            w().set("∅^⋄", dia(SubsetCode::EMPTY))
        }),
        T3_3_iii => {
            for a in u.subsets() {
                out.check(closure(dia(a), t) == dia(a), || {
                    w().set("A", a).set("A^⋄", dia(a))
                });
            }
        }
        T3_3_iv => {
            for a in u.subsets() {
                out.check(dia(dia(a)).is_subset_of(dia(a)), || {
                    w().set("A", a).set("A^⋄", dia(a))
                });
            }
        }
        T3_3_v => {
            for (a, b) in pairs() {
                out.check(!a.is_subset_of(b) || dia(a).is_subset_of(dia(b)), || {
                    w().set("A", a).set("B", b)
                });
            }
        }
        T3_3_vi => {
            for (a, b) in pairs() {
                out.check((dia(a) | dia(b)) == dia(a | b), || {
                    w().set("A", a).set("B", b)
                });
            }
        }
        T3_3_vii => {
            for (a, b) in pairs() {
                out.check(dia(a & b).is_subset_of(dia(a) & dia(b)), || {
                    w().set("A", a).set("B", b)
                });
            }
        }
        R3_4_strictness => {
            for (a, b) in pairs() {
                out.check(dia(a & b) == (dia(a) & dia(b)), || {
                    w().set("A", a)
                        .set("B", b)
                        .set("A^⋄∩B^⋄", dia(a) & dia(b))
                        .set("(A∩B)^⋄", dia(a & b))
                });
            }
        }
        T3_4 => {
            for a in t.opens().iter() {
                for b in u.subsets() {
                    let r = distribution_check(a, b, s).expect("open and in range");
                    out.check(r.holds, || {
                        w().set("A", a)
                            .set("B", b)
                            .detail(format!("point {:?}", r.witness))
                    });
                }
            }
        }
        T3_5 => {
            let table = closure_table(s);
            let cl = |a: SubsetCode| table.get(a);
            out.check(cl(SubsetCode::EMPTY).is_empty(), || {
                w().detail("cl(∅) ≠ ∅".into())
            });
            out.check(cl(u.full()) == u.full(), || w().detail("cl(X) ≠ X".into()));
            for a in u.subsets() {
                out.check(a.is_subset_of(cl(a)), || {
                    w().set("A", a).detail("not extensive".into())
                });
                out.check(cl(cl(a)) == cl(a), || {
                    w().set("A", a).detail("not idempotent".into())
                });
            }
            for (a, b) in pairs() {
                out.check(!a.is_subset_of(b) || cl(a).is_subset_of(cl(b)), || {
                    w().set("A", a).set("B", b).detail("not monotone".into())
                });
                out.check((cl(a) | cl(b)) == cl(a | b), || {
                    w().set("A", a).set("B", b).detail("not additive".into())
                });
            }
        }
        C3_3 => {
            let report = kuratowski_audit(&closure_table(s));
            out.check(report.is_closure_operator(), || {
                w().detail(format!("{:?}", report))
            });
        }
        T3_6 => {
            let star = primal_topology(s);
            out.check(t.opens().is_subfamily_of(star.opens()), || {
                w().family("tau_star", star.opens())
            });
        }
        T3_7_i => {
            let star = primal_topology(s);
            out.check(star.opens() == &SetFamily::powerset(u), || {
                w().family("tau_star", star.opens())
            });
        }
        T3_7_ii | T3_7_converse => {
            let star = primal_topology(s);
            let ok = if id == T3_7_ii {
                &star == t
            } else {
                // a counterexample to the converse: τ^⋄ = τ from another primal
                &star != t || s.primal() == &Primal::all_but_full(u)
            };
            out.check(ok, || w().family("tau_star", star.opens()));
        }
        T3_8_i => {
            let star = primal_topology(s);
            for a in u.subsets() {
                let m = tau_star_membership(a, s);
                let witnesses_valid = !m.member
                    || (m.witnesses.len() == a.len() as usize
                        && m.witnesses.iter().all(|&(x, open)| {
                            a.contains(x)
                                && open.contains(x)
                                && t.is_open(open)
                                && !s.primal().contains(u.complement(open) | a)
                        }));
                out.check(m.member == star.is_open(a) && witnesses_valid, || {
                    w().set("A", a)
                        .detail(format!("criterion says {}", m.member))
                });
            }
        }
        T3_8_ii => {
            let star = primal_topology(s);
            for a in u.subsets() {
                out.check(s.primal().contains(a) || star.is_open(a), || {
                    w().set("A", a)
                });
            }
        }
        T3_9 => {
            let star = primal_topology(s);
            let base = base_family(s);
            let r = is_base_for(&base, &star).expect("same universe");
            out.check(r.is_base, || {
                let mut wit = w().family("base", &base).family("tau_star", star.opens());
                if let Some(a) = r.witness {
                    wit = wit.set("unexpressed", a);
                }
                wit
            });
        }
        _ => unreachable!("{} is not a space property", id),
    }
    out
}

fn eval_topology(id: PropertyId, t: &FiniteTopology) -> Outcome {
    debug_assert_eq!(id, PropertyId::T3_10);
    let u = t.universe();
    let primals = enumerate_primals(u);
    let stars: Vec<FiniteTopology> = primals
        .iter()
        .map(|p| primal_topology(&PrimalSpace::new(t.clone(), p.clone()).expect("same universe")))
        .collect();
    let mut out = Outcome::default();
    for (p, star_p) in primals.iter().zip(&stars) {
        for (q, star_q) in primals.iter().zip(&stars) {
            let ok = !p.family().is_subfamily_of(q.family())
                || star_q.opens().is_subfamily_of(star_p.opens());
            out.check(ok, || {
                Witness::new(u)
                    .family("topology", t.opens())
                    .family("P", p.family())
                    .family("Q", q.family())
            });
        }
    }
    out
}

fn eval_map(id: PropertyId, m: &PointMap) -> Outcome {
    let mut out = Outcome::default();
    match id {
        PropertyId::T3_11 => {
            for p in enumerate_primals(m.domain()) {
                let image = pushforward_primal(m, &p).expect("primal on the domain");
                out.check(image.validation.is_ok(), || {
                    Witness::new(m.domain())
                        .with_map(m)
                        .family("primal", p.family())
                        .family("image", &image.family)
                        .detail(rule_text(&image.validation))
                });
            }
        }
        PropertyId::R3_5_preimage => {
            for q in enumerate_primals(m.codomain()) {
                let back = preimage_family(m, &q).expect("primal on the codomain");
                out.check(back.is_primal(), || {
                    Witness::new(m.domain())
                        .with_map(m)
                        .family("Q", q.family())
                        .family("preimage", &back.family)
                        .detail(rule_text(&back.validation))
                });
            }
        }
        _ => unreachable!("{} is not a map property", id),
    }
    out
}

fn check_scope(id: PropertyId, max_n: u8, caps: &ScopeCaps) -> Result<(), Error> {
    if max_n == 0 {
        return Err(Error::InvalidUniverseSize(0));
    }
    let cap = caps.cap(id);
    if max_n > cap {
        return Err(Error::ScopeTooLarge {
            requested: max_n,
            cap,
        });
    }
    Ok(())
}

/// Runs one property over `n = 1..=max_n` with explicit caps and executor.
pub fn verify_property_with<E: Executor>(
    id: PropertyId,
    max_n: u8,
    caps: &ScopeCaps,
    exec: &E,
) -> Result<VerificationReport, Error> {
    check_scope(id, max_n, caps)?;
    let mut checked_by_n = Vec::new();
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    for n in 1..=max_n {
        let work = units(id, n);
        let mut checked = 0u64;
        for outcome in exec.map(&work, |unit| evaluate(id, unit)) {
            checked += outcome.checked;
            failure_count += outcome.failures.len() as u64;
            let room = MAX_WITNESSES.saturating_sub(failures.len());
            failures.extend(outcome.failures.into_iter().take(room));
        }
        checked_by_n.push((n, checked));
    }
    let verdict = match (id.quantifier(), failure_count) {
        (Quantifier::Universal, 0) => Verdict::Holds,
        (Quantifier::Universal, _) => Verdict::Fails,
        (Quantifier::Existential, 0) => Verdict::Fails,
        (Quantifier::Existential, _) => Verdict::CounterexampleFoundAsExpected,
    };
    Ok(VerificationReport {
        property: id,
        max_n,
        checked: checked_by_n.iter().map(|&(_, c)| c).sum(),
        checked_by_n,
        failures,
        failure_count,
        verdict,
    })
}

/// Runs one property single-threaded with the default caps.
pub fn verify_property(id: PropertyId, max_n: u8) -> Result<VerificationReport, Error> {
    verify_property_with(id, max_n, &ScopeCaps::default(), &Sequential)
}

/// Runs the whole catalog, each property at `min(max_n, its cap)`.
pub fn verify_all_with<E: Executor>(
    max_n: u8,
    caps: &ScopeCaps,
    exec: &E,
) -> Result<Vec<VerificationReport>, Error> {
    if max_n == 0 {
        return Err(Error::InvalidUniverseSize(0));
    }
    if max_n > GLOBAL_CAP {
        return Err(Error::ScopeTooLarge {
            requested: max_n,
            cap: GLOBAL_CAP,
        });
    }
    PropertyId::ALL
        .iter()
        .map(|&id| verify_property_with(id, max_n.min(caps.cap(id)), caps, exec))
        .collect()
}

pub fn verify_all(max_n: u8) -> Result<Vec<VerificationReport>, Error> {
    verify_all_with(max_n, &ScopeCaps::default(), &Sequential)
}

/// True when every report carries its expected verdict.
pub fn all_as_expected(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::as_expected)
}

/// The first failing instance in canonical order, if any.
pub fn search_counterexample_with<E: Executor>(
    id: PropertyId,
    max_n: u8,
    caps: &ScopeCaps,
    exec: &E,
) -> Result<Option<Witness>, Error> {
    check_scope(id, max_n, caps)?;
    for n in 1..=max_n {
        let work = units(id, n);
        let first = exec
            .map(&work, |unit| evaluate(id, unit).failures.into_iter().next())
            .into_iter()
            .flatten()
            .next();
        if first.is_some() {
            return Ok(first);
        }
    }
    Ok(None)
}

pub fn search_counterexample(id: PropertyId, max_n: u8) -> Result<Option<Witness>, Error> {
    search_counterexample_with(id, max_n, &ScopeCaps::default(), &Sequential)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchStatus {
    Match,
    Mismatch,
}

impl MatchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchStatus::Match => "MATCH",
            MatchStatus::Mismatch => "MISMATCH",
        }
    }
}

/// One worked example recomputed on its exact space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replication {
    pub id: &'static str,
    pub expected: String,
    pub computed: String,
    pub status: MatchStatus,
}

impl fmt::Display for Replication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "EXAMPLE {} EXPECTED {} COMPUTED {} {}",
            self.id,
            self.expected,
            self.computed,
            self.status.as_str()
        )
    }
}

/// The only example whose published value disagrees with the definition:
/// on the discrete space over `{a,b,c}` with `P = {∅,{a},{b},{a,b}}`, the
/// published `{c}^⋄ = X` but the definition gives `{c}` (at `x = a` the open
/// set `{a}` makes `{a,b} ∪ {b,c} = X ∉ P`).
pub const DOCUMENTED_MISMATCH: &str = "diamond-discrete-singleton";

/// Replications that are expected to be MISMATCH: exactly the documented one.
pub fn replication_as_expected(rows: &[Replication]) -> bool {
    rows.iter()
        .all(|r| (r.status == MatchStatus::Mismatch) == (r.id == DOCUMENTED_MISMATCH))
        && rows.iter().any(|r| r.id == DOCUMENTED_MISMATCH)
}

fn fam(n: usize, bits: &[&str]) -> SetFamily {
    let u = Universe::new(n).expect("valid");
    SetFamily::from_codes(u, bits.iter().map(|b| u.parse(b).expect("literal"))).expect("in range")
}

fn bits(n: usize, text: &str) -> SubsetCode {
    Universe::new(n)
        .expect("valid")
        .parse(text)
        .expect("literal")
}

fn verdict_text(
    family: &SetFamily,
    v: &Result<(), crate::structures::StructureViolation>,
) -> String {
    format!("{} {}", family, rule_text(v))
}

fn primal(n: usize, members: &[&str]) -> Primal {
    Primal::new(fam(n, members)).expect("literal primal")
}

fn space(n: usize, opens: &[&str], members: &[&str]) -> PrimalSpace {
    PrimalSpace::new(
        FiniteTopology::new(fam(n, opens)).expect("literal topology"),
        primal(n, members),
    )
    .expect("same universe")
}

/// Recomputes every worked example on its exact space. Elements `a, b, c`
/// (or `1, 2`) are indices `0, 1, 2`.
pub fn replicate_paper() -> Vec<Replication> {
    let mut rows = Vec::new();
    let mut row = |id: &'static str, expected: String, computed: String| {
        let status = if expected == computed {
            MatchStatus::Match
        } else {
            MatchStatus::Mismatch
        };
        rows.push(Replication {
            id,
            expected,
            computed,
            status,
        });
    };
    let two = Universe::new(2).expect("valid");
    let three = Universe::new(3).expect("valid");

    let listed: Vec<String> = enumerate_primals(two)
        .iter()
        .map(|p| format!("{}", p.family()))
        .collect();
    row(
        "primals-on-two-points",
        "{};{00, 10};{00, 01};{00, 10, 01}".into(),
        listed.join(";"),
    );

    let all_but = SetFamily::from_fn(three, |a| a != three.full());
    row(
        "all-but-full-is-primal",
        "primal".into(),
        rule_text(&check_primal(&all_but)),
    );

    let counts: Vec<String> = (1..=4)
        .map(|n| {
            format!(
                "{}",
                enumerate_primals(Universe::new(n).expect("valid")).len()
            )
        })
        .collect();
    row("primal-census", "2,4,8,16".into(), counts.join(","));

    let p = primal(2, &["00", "10"]);
    let q = primal(2, &["00", "01"]);
    let r = intersect_families(&p, &q).expect("same universe");
    row(
        "intersection-not-primal",
        "{00} MeetConditionFails".into(),
        verdict_text(&r.family, &r.validation),
    );

    let r = elementwise_combine(&p, &q, Combine::Meet).expect("same universe");
    row(
        "elementwise-meet-not-primal",
        "{00} MeetConditionFails".into(),
        verdict_text(&r.family, &r.validation),
    );
    let r = elementwise_combine(&p, &q, Combine::Join).expect("same universe");
    row(
        "elementwise-join-not-primal",
        "{00, 10, 01, 11} ContainsX".into(),
        verdict_text(&r.family, &r.validation),
    );

    let valid = FiniteTopology::new(fam(2, &["00", "10", "11"]))
        .ok()
        .and_then(|t| PrimalSpace::new(t, Primal::new(fam(2, &["00", "10"])).ok()?).ok())
        .is_some();
    row(
        "primal-space-on-two-points",
        "valid".into(),
        if valid { "valid" } else { "invalid" }.into(),
    );

    let s = space(
        3,
        &["000", "100", "010", "110", "111"],
        &["000", "100", "010", "110"],
    );
    let a = bits(3, "110");
    let d = diamond_naive(a, &s);
    row(
        "diamond-below-set",
        "000 subset-of-A".into(),
        format!(
            "{} {}",
            three.display(d),
            if d.is_subset_of(a) {
                "subset-of-A"
            } else {
                "not-subset-of-A"
            }
        ),
    );

    let s = PrimalSpace::new(
        FiniteTopology::discrete(three),
        primal(3, &["000", "100", "010", "110"]),
    )
    .expect("same universe");
    let a = bits(3, "001");
    let d = diamond_naive(a, &s);
    row(
        DOCUMENTED_MISMATCH,
        "111".into(),
        format!("{}", three.display(d)),
    );
    row(
        "diamond-discrete-singleton-inclusion",
        "A-subset-of-diamond".into(),
        if a.is_subset_of(d) {
            "A-subset-of-diamond"
        } else {
            "A-not-subset-of-diamond"
        }
        .into(),
    );

    let s = space(
        3,
        &["000", "111"],
        &["000", "100", "010", "001", "110", "101"],
    );
    let (a, b) = (bits(3, "010"), bits(3, "001"));
    row(
        "diamond-meet-strict",
        "111 000".into(),
        format!(
            "{} {}",
            three.display(diamond(a, &s) & diamond(b, &s)),
            three.display(diamond(a & b, &s))
        ),
    );

    let tau = fam(3, &["000", "110", "111"]);
    let members: Vec<SubsetCode> = three
        .subsets()
        .filter(|&x| x != three.full() && x != bits(3, "110"))
        .collect();
    let s = PrimalSpace::new(
        FiniteTopology::new(tau.clone()).expect("literal topology"),
        Primal::new(SetFamily::from_codes(three, members).expect("in range"))
            .expect("literal primal"),
    )
    .expect("same universe");
    row(
        "converse-of-extremes",
        format!("{}", tau),
        format!("{}", primal_topology(&s).opens()),
    );

    let constant = PointMap::new(two, two, &[0, 0]).expect("valid map");
    let back = preimage_family(&constant, &primal(2, &["00", "10"])).expect("codomain primal");
    row(
        "preimage-not-primal",
        "{00, 11} ContainsX".into(),
        verdict_text(&back.family, &back.validation),
    );

    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize) -> Universe {
        Universe::new(n).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in PropertyId::ALL {
            assert_eq!(id.as_str().parse::<PropertyId>(), Ok(id));
        }
        assert!(matches!(
            "T9_9".parse::<PropertyId>(),
            Err(Error::UnknownProperty(_))
        ));
    }

    #[test]
    fn finer_topology_counts() {
        let r = verify_property(PropertyId::T3_6, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.checked_at(3), 29 * 8);
        assert_eq!(r.checked, 2 + 4 * 4 + 29 * 8);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn union_pairs() {
        let r = verify_property(PropertyId::T3_2, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.checked_at(3), 64);
    }

    #[test]
    fn intersection_counterexample() {
        let r = verify_property(PropertyId::R3_1_intersection, 2).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFoundAsExpected);
        let first = &r.failures[0];
        assert_eq!(first.universe, u(2));
        assert_eq!(first.get_family("P"), Some(&fam(2, &["00", "10"])));
        assert_eq!(first.get_family("Q"), Some(&fam(2, &["00", "01"])));
    }

    #[test]
    fn search_examples() {
        let w = search_counterexample(PropertyId::R3_4_strictness, 3)
            .unwrap()
            .unwrap();
        let a = w.get_set("A").unwrap();
        let b = w.get_set("B").unwrap();
        assert_ne!(w.get_set("(A∩B)^⋄"), w.get_set("A^⋄∩B^⋄"));
        assert!(w
            .get_set("(A∩B)^⋄")
            .unwrap()
            .is_subset_of(w.get_set("A^⋄∩B^⋄").unwrap()));
        assert_ne!(a, b);

        let w = search_counterexample(PropertyId::R3_5_preimage, 2)
            .unwrap()
            .unwrap();
        let m = w.map.as_ref().unwrap();
        assert!(m.table().iter().all(|&t| t == m.table()[0]));

        assert_eq!(search_counterexample(PropertyId::T3_6, 3).unwrap(), None);
    }

    #[test]
    fn scope_errors() {
        assert_eq!(
            verify_property(PropertyId::T3_10, 4).unwrap_err(),
            Error::ScopeTooLarge {
                requested: 4,
                cap: 3
            }
        );
        assert_eq!(
            verify_property(PropertyId::T3_6, 5).unwrap_err(),
            Error::ScopeTooLarge {
                requested: 5,
                cap: 4
            }
        );
        assert!(verify_all(5).is_err());
        assert!(search_counterexample(PropertyId::T3_6, 0).is_err());
    }

    #[test]
    fn single_point_catalog() {
        let reports = verify_all(1).unwrap();
        assert_eq!(reports.len(), PropertyId::ALL.len());
        for r in &reports {
            assert_eq!(r.max_n, 1);
            // the only map 1 -> 1 is onto
            let expected_empty = r.property == PropertyId::T3_11;
            assert_eq!(r.checked == 0, expected_empty, "{}", r.property);
        }
    }

    #[test]
    fn replication_has_one_mismatch() {
        let rows = replicate_paper();
        let mismatches: Vec<_> = rows
            .iter()
            .filter(|r| r.status == MatchStatus::Mismatch)
            .collect();
        assert_eq!(mismatches.len(), 1);
        assert_eq!(mismatches[0].id, DOCUMENTED_MISMATCH);
        assert_eq!(mismatches[0].computed, "001");
        assert!(replication_as_expected(&rows));
    }

    #[test]
    fn report_line_format() {
        let r = verify_property(PropertyId::T3_6, 2).unwrap();
        assert_eq!(
            format!("{}", r),
            "PROPERTY T3_6 SCOPE n<=2 CHECKED 18 VERDICT holds"
        );
    }
}
