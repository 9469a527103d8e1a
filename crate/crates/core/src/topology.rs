//! Finite topologies: validation, closure and interior, open neighborhoods,
//! and enumeration of every topology on a small labeled universe.

use alloc::vec::Vec;
use core::fmt;

use crate::setkit::{SetFamily, SubsetCode, Universe};
use crate::structures::SCAN_CAP;
use crate::Error;

/// Largest universe accepted by [`enumerate_topologies_opt_in`].
pub const OPT_IN_CAP: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyRule {
    MissingEmptySet,
    MissingFullSet,
    NotClosedUnderUnion,
    NotClosedUnderIntersection,
}

impl TopologyRule {
    pub fn as_str(self) -> &'static str {
        match self {
            TopologyRule::MissingEmptySet => "MissingEmptySet",
            TopologyRule::MissingFullSet => "MissingFullSet",
            TopologyRule::NotClosedUnderUnion => "NotClosedUnderUnion",
            TopologyRule::NotClosedUnderIntersection => "NotClosedUnderIntersection",
        }
    }
}

impl fmt::Display for TopologyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// First failing axiom. Pair rules carry the smallest pair `A < B` of
/// members whose union (intersection) is missing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopologyViolation {
    pub rule: TopologyRule,
    pub witnesses: Vec<SubsetCode>,
}

fn first_bad_pair(
    members: &[SubsetCode],
    f: &SetFamily,
    op: impl Fn(SubsetCode, SubsetCode) -> SubsetCode,
) -> Option<(SubsetCode, SubsetCode)> {
    members.iter().enumerate().find_map(|(i, &a)| {
        members[i + 1..]
            .iter()
            .find(|&&b| !f.contains(op(a, b)))
            .map(|&b| (a, b))
    })
}

pub fn check_topology(f: &SetFamily) -> Result<(), TopologyViolation> {
    let u = f.universe();
    let fail = |rule, witnesses: &[SubsetCode]| {
        Err(TopologyViolation {
            rule,
            witnesses: witnesses.to_vec(),
        })
    };
    if !f.contains(SubsetCode::EMPTY) {
        return fail(TopologyRule::MissingEmptySet, &[]);
    }
    if !f.contains(u.full()) {
        return fail(TopologyRule::MissingFullSet, &[]);
    }
    let members = f.members();
    if let Some((a, b)) = first_bad_pair(&members, f, |a, b| a | b) {
        return fail(TopologyRule::NotClosedUnderUnion, &[a, b]);
    }
    if let Some((a, b)) = first_bad_pair(&members, f, |a, b| a & b) {
        return fail(TopologyRule::NotClosedUnderIntersection, &[a, b]);
    }
    Ok(())
}

/// A validated topology on a finite universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    opens: SetFamily,
    // minimal open neighborhood of each point
    cores: Vec<SubsetCode>,
}

impl FiniteTopology {
    pub fn new(opens: SetFamily) -> Result<Self, TopologyViolation> {
        check_topology(&opens)?;
        Ok(Self::trusted(opens))
    }

    pub(crate) fn trusted(opens: SetFamily) -> Self {
        let u = opens.universe();
        let cores = (0..u.size() as usize)
            .map(|x| {
                opens
                    .iter()
                    .filter(|open| open.contains(x))
                    .fold(u.full(), |acc, open| acc & open)
            })
            .collect();
        FiniteTopology { opens, cores }
    }

    pub fn discrete(u: Universe) -> Self {
        Self::trusted(SetFamily::powerset(u))
    }

    pub fn indiscrete(u: Universe) -> Self {
        Self::trusted(SetFamily::from_codes(u, [SubsetCode::EMPTY, u.full()]).expect("in range"))
    }

    pub fn universe(&self) -> Universe {
        self.opens.universe()
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn is_open(&self, a: SubsetCode) -> bool {
        self.opens.contains(a)
    }

    pub fn is_closed(&self, a: SubsetCode) -> bool {
        self.opens.contains(self.universe().complement(a))
    }

    /// Minimal open neighborhood of `x`, unchecked index.
    pub(crate) fn core_of(&self, x: usize) -> SubsetCode {
        self.cores[x]
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteTopology{}", self.opens)
    }
}

impl Ord for FiniteTopology {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.opens.cmp(&other.opens)
    }
}

impl PartialOrd for FiniteTopology {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smallest closed superset of `a`: the meet of `U^c` over opens `U`
/// disjoint from `a`.
pub fn closure(a: SubsetCode, t: &FiniteTopology) -> SubsetCode {
    let u = t.universe();
    t.opens
        .iter()
        .filter(|&open| (open & a).is_empty())
        .fold(u.full(), |acc, open| acc & u.complement(open))
}

/// Largest open subset of `a`.
pub fn interior(a: SubsetCode, t: &FiniteTopology) -> SubsetCode {
    t.opens
        .iter()
        .filter(|open| open.is_subset_of(a))
        .fold(SubsetCode::EMPTY, |acc, open| acc | open)
}

/// Every open set containing `x`, ascending.
pub fn neighborhoods(x: usize, t: &FiniteTopology) -> Result<Vec<SubsetCode>, Error> {
    t.universe().check_index(x)?;
    Ok(t.opens.iter().filter(|open| open.contains(x)).collect())
}

/// Intersection of every open set containing `x`; open by finiteness.
pub fn minimal_neighborhood(x: usize, t: &FiniteTopology) -> Result<SubsetCode, Error> {
    t.universe().check_index(x)?;
    Ok(t.core_of(x))
}

/// Every topology on `u` in canonical order, by scanning all `2^(2^n)`
/// candidate families. Capped at `n <= 4`.
pub fn enumerate_topologies(u: Universe) -> Result<Vec<FiniteTopology>, Error> {
    if u.size() > SCAN_CAP {
        return Err(Error::UniverseTooLargeForScan {
            size: u.size(),
            cap: SCAN_CAP,
        });
    }
    let candidates = 1u64 << u.subset_count();
    let ends = 1u64 | 1u64 << u.full().0;
    Ok((0..candidates)
        .filter(|bits| bits & ends == ends)
        .map(|bits| SetFamily::from_indicator(u, bits))
        .filter(|f| check_topology(f).is_ok())
        .map(FiniteTopology::trusted)
        .collect())
}

/// Like [`enumerate_topologies`] but also accepts `n = 5` (6942 results).
///
/// Codes are decided in ascending order; a candidate is cut off at the
/// first included pair whose intersection was excluded or whose union has
/// been excluded since.
pub fn enumerate_topologies_opt_in(u: Universe) -> Result<Vec<FiniteTopology>, Error> {
    if u.size() <= SCAN_CAP {
        return enumerate_topologies(u);
    }
    if u.size() > OPT_IN_CAP {
        return Err(Error::UniverseTooLargeForScan {
            size: u.size(),
            cap: OPT_IN_CAP,
        });
    }
    let mut found = Vec::new();
    let required = 1u64 | 1u64 << u.full().0;
    extend(u, 0, 0, required, &mut found);
    let mut out: Vec<FiniteTopology> = found
        .into_iter()
        .map(|bits| FiniteTopology::trusted(SetFamily::from_indicator(u, bits)))
        .collect();
    out.sort();
    Ok(out)
}

fn extend(u: Universe, code: u32, included: u64, required: u64, found: &mut Vec<u64>) {
    if code as usize == u.subset_count() {
        found.push(included);
        return;
    }
    let bit = 1u64 << code;
    if required & bit == 0 {
        extend(u, code + 1, included, required, found);
    }
    let mut needs = required;
    let mut rest = included;
    while rest != 0 {
        let other = rest.trailing_zeros();
        rest &= rest - 1;
        if included >> (other & code) & 1 == 0 {
            return;
        }
        needs |= 1u64 << (other | code);
    }
    extend(u, code + 1, included | bit, needs, found);
}
