//! Primals and grills: validation with witnesses, the complement duality
//! between them, family algebra, enumeration, and images along point maps.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::setkit::{SetFamily, SubsetCode, Universe};
use crate::Error;

/// Largest universe for which every candidate family is scanned.
pub const SCAN_CAP: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    ContainsX,
    NotDownwardClosed,
    MeetConditionFails,
    ContainsEmpty,
    NotUpwardClosed,
    JoinConditionFails,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::ContainsX => "ContainsX",
            Rule::NotDownwardClosed => "NotDownwardClosed",
            Rule::MeetConditionFails => "MeetConditionFails",
            Rule::ContainsEmpty => "ContainsEmpty",
            Rule::NotUpwardClosed => "NotUpwardClosed",
            Rule::JoinConditionFails => "JoinConditionFails",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The first rule a family breaks, with the smallest witnesses.
///
/// Witness layout per rule:
/// * `ContainsX` / `ContainsEmpty`: the offending member.
/// * `NotDownwardClosed`: member `A`, then the missing `B ⊆ A`.
/// * `NotUpwardClosed`: member `A`, then the missing `B ⊇ A`.
/// * `MeetConditionFails`: non-members `A < B` with `A ∩ B` a member.
/// * `JoinConditionFails`: non-members `A < B` with `A ∪ B` a member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureViolation {
    pub rule: Rule,
    pub witnesses: Vec<SubsetCode>,
}

impl StructureViolation {
    fn new(rule: Rule, witnesses: &[SubsetCode]) -> Self {
        StructureViolation {
            rule,
            witnesses: witnesses.to_vec(),
        }
    }
}

/// Checks the three primal conditions in order: `X` absent, downward
/// closure, then the meet condition.
pub fn check_primal(f: &SetFamily) -> Result<(), StructureViolation> {
    let u = f.universe();
    let full = u.full();
    if f.contains(full) {
        return Err(StructureViolation::new(Rule::ContainsX, &[full]));
    }

    // hereditary[A]: A and all of its subsets are members
    let mut hereditary = vec![false; u.subset_count()];
    for a in u.subsets() {
        hereditary[a.0 as usize] =
            f.contains(a) && a.elements().all(|j| hereditary[(a.0 & !(1 << j)) as usize]);
        if f.contains(a) && !hereditary[a.0 as usize] {
            let b = a
                .subsets()
                .find(|&b| !f.contains(b))
                .expect("a missing subset exists");
            return Err(StructureViolation::new(Rule::NotDownwardClosed, &[a, b]));
        }
    }

    // The non-members form an up-set containing X; the meet condition holds
    // exactly when that up-set is a principal filter.
    let meet = u
        .subsets()
        .filter(|&a| !f.contains(a))
        .fold(full, |m, a| m & a);
    if !f.contains(meet) {
        return Ok(());
    }
    let outside: Vec<SubsetCode> = u.subsets().filter(|&a| !f.contains(a)).collect();
    for (i, &a) in outside.iter().enumerate() {
        if let Some(&b) = outside[i + 1..].iter().find(|&&b| f.contains(a & b)) {
            return Err(StructureViolation::new(Rule::MeetConditionFails, &[a, b]));
        }
    }
    unreachable!("an up-set whose meet lies outside it has a failing pair")
}

/// Checks the three grill conditions in order: `∅` absent, upward closure,
/// then the join condition.
pub fn check_grill(f: &SetFamily) -> Result<(), StructureViolation> {
    let u = f.universe();
    if f.contains(SubsetCode::EMPTY) {
        return Err(StructureViolation::new(
            Rule::ContainsEmpty,
            &[SubsetCode::EMPTY],
        ));
    }

    // upward[A]: A and all of its supersets are members
    let mut upward = vec![false; u.subset_count()];
    for a in u.subsets().rev() {
        upward[a.0 as usize] = f.contains(a)
            && u.complement(a)
                .elements()
                .all(|j| upward[(a.0 | 1 << j) as usize]);
    }
    if let Some(a) = f.iter().find(|a| !upward[a.0 as usize]) {
        let b = u
            .complement(a)
            .subsets()
            .map(|extra| a | extra)
            .find(|&b| !f.contains(b))
            .expect("a missing superset exists");
        return Err(StructureViolation::new(Rule::NotUpwardClosed, &[a, b]));
    }

    let join = u
        .subsets()
        .filter(|&a| !f.contains(a))
        .fold(SubsetCode::EMPTY, |m, a| m | a);
    if !f.contains(join) {
        return Ok(());
    }
    let outside: Vec<SubsetCode> = u.subsets().filter(|&a| !f.contains(a)).collect();
    for (i, &a) in outside.iter().enumerate() {
        if let Some(&b) = outside[i + 1..].iter().find(|&&b| f.contains(a | b)) {
            return Err(StructureViolation::new(Rule::JoinConditionFails, &[a, b]));
        }
    }
    unreachable!("a down-set whose join lies outside it has a failing pair")
}

/// A validated primal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Primal(SetFamily);

impl Primal {
    pub fn new(family: SetFamily) -> Result<Self, StructureViolation> {
        check_primal(&family)?;
        Ok(Primal(family))
    }

    /// The empty primal.
    pub fn empty(u: Universe) -> Self {
        Primal(SetFamily::empty(u))
    }

    /// `2^X \ {X}`, the largest primal.
    pub fn all_but_full(u: Universe) -> Self {
        let full = u.full();
        Primal(SetFamily::from_fn(u, |a| a != full))
    }

    /// `{A : B ⊄ A}`. Every primal on a finite universe has this form for
    /// exactly one `B`; `B = ∅` gives the empty primal.
    pub fn avoiding(u: Universe, b: SubsetCode) -> Self {
        Primal(SetFamily::from_fn(u, |a| !b.is_subset_of(a)))
    }

    /// The unique `B` with `self = {A : B ⊄ A}`: the meet of the non-members.
    pub fn generator(&self) -> SubsetCode {
        let u = self.universe();
        u.subsets()
            .filter(|&a| !self.0.contains(a))
            .fold(u.full(), |m, a| m & a)
    }

    pub fn family(&self) -> &SetFamily {
        &self.0
    }

    pub fn into_family(self) -> SetFamily {
        self.0
    }

    pub fn universe(&self) -> Universe {
        self.0.universe()
    }

    pub fn contains(&self, a: SubsetCode) -> bool {
        self.0.contains(a)
    }
}

/// A validated grill.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grill(SetFamily);

impl Grill {
    pub fn new(family: SetFamily) -> Result<Self, StructureViolation> {
        check_grill(&family)?;
        Ok(Grill(family))
    }

    pub fn family(&self) -> &SetFamily {
        &self.0
    }

    pub fn into_family(self) -> SetFamily {
        self.0
    }

    pub fn universe(&self) -> Universe {
        self.0.universe()
    }
}

/// A family paired with the outcome of [`check_primal`] on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedFamily {
    pub family: SetFamily,
    pub validation: Result<(), StructureViolation>,
}

impl ValidatedFamily {
    fn of(family: SetFamily) -> Self {
        let validation = check_primal(&family);
        ValidatedFamily { family, validation }
    }

    pub fn is_primal(&self) -> bool {
        self.validation.is_ok()
    }
}

/// `{A : A^c ∈ G}`.
pub fn grill_to_primal(g: &Grill) -> Primal {
    let p = g.family().complemented_members();
    debug_assert!(check_primal(&p).is_ok());
    Primal(p)
}

/// `{A : A^c ∈ P}`, the inverse of [`grill_to_primal`].
pub fn primal_to_grill(p: &Primal) -> Grill {
    let g = p.family().complemented_members();
    debug_assert!(check_grill(&g).is_ok());
    Grill(g)
}

pub fn union_primals(p: &Primal, q: &Primal) -> Result<Primal, Error> {
    let family = p.family().union(q.family())?;
    debug_assert!(
        check_primal(&family).is_ok(),
        "union of primals must be a primal"
    );
    Ok(Primal(family))
}

pub fn intersect_families(p: &Primal, q: &Primal) -> Result<ValidatedFamily, Error> {
    Ok(ValidatedFamily::of(p.family().intersection(q.family())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Meet,
    Join,
}

/// `{A ∘ B : A ∈ p, B ∈ q}` for `∘` one of `∩`, `∪`.
pub fn elementwise_combine(
    p: &Primal,
    q: &Primal,
    mode: Combine,
) -> Result<ValidatedFamily, Error> {
    let u = p.universe();
    if u != q.universe() {
        return Err(Error::UniverseMismatch {
            left: u.size(),
            right: q.universe().size(),
        });
    }
    let rhs = q.family().members();
    let mut out = SetFamily::empty(u);
    for a in p.family().iter() {
        for &b in &rhs {
            out.insert(match mode {
                Combine::Meet => a & b,
                Combine::Join => a | b,
            });
        }
    }
    Ok(ValidatedFamily::of(out))
}

/// All `2^n` primals in canonical order, one per generator `B ⊆ X`.
///
/// The `{A : B ⊄ A}` form is a derived characterization (the complement of
/// a primal is a principal filter on a finite set); it is cross-checked
/// against [`exhaustive_primal_scan`] for `n <= 4`. Memory grows as `4^n`
/// bits, so large universes are impractical here.
pub fn enumerate_primals(u: Universe) -> Vec<Primal> {
    let mut out: Vec<Primal> = u.subsets().map(|b| Primal::avoiding(u, b)).collect();
    out.sort();
    out
}

fn scan_families(u: Universe) -> Result<impl Iterator<Item = SetFamily>, Error> {
    if u.size() > SCAN_CAP {
        return Err(Error::UniverseTooLargeForScan {
            size: u.size(),
            cap: SCAN_CAP,
        });
    }
    let candidates = 1u64 << u.subset_count();
    Ok((0..candidates).map(move |bits| SetFamily::from_indicator(u, bits)))
}

/// Every family over `2^X` that passes [`check_primal`], by brute force.
pub fn exhaustive_primal_scan(u: Universe) -> Result<Vec<Primal>, Error> {
    Ok(scan_families(u)?
        .filter_map(|f| Primal::new(f).ok())
        .collect())
}

/// Every family over `2^X` that passes [`check_grill`], by brute force.
pub fn exhaustive_grill_scan(u: Universe) -> Result<Vec<Grill>, Error> {
    Ok(scan_families(u)?
        .filter_map(|f| Grill::new(f).ok())
        .collect())
}

/// A total function between two finite universes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointMap {
    domain: Universe,
    codomain: Universe,
    table: Vec<u8>,
}

impl PointMap {
    pub fn new(domain: Universe, codomain: Universe, table: &[usize]) -> Result<Self, Error> {
        if table.len() != domain.size() as usize {
            return Err(Error::MapLength {
                expected: domain.size() as usize,
                got: table.len(),
            });
        }
        if let Some((element, &target)) = table
            .iter()
            .enumerate()
            .find(|(_, &t)| t >= codomain.size() as usize)
        {
            return Err(Error::MapTargetOutOfRange {
                element,
                target,
                size: codomain.size(),
            });
        }
        Ok(PointMap {
            domain,
            codomain,
            table: table.iter().map(|&t| t as u8).collect(),
        })
    }

    pub fn identity(u: Universe) -> Self {
        PointMap {
            domain: u,
            codomain: u,
            table: (0..u.size()).collect(),
        }
    }

    /// Every map `domain -> codomain`, tables in lexicographic order.
    pub fn all(domain: Universe, codomain: Universe) -> Vec<PointMap> {
        let d = domain.size() as usize;
        let c = codomain.size() as usize;
        let mut out = Vec::new();
        let mut table = vec![0u8; d];
        loop {
            out.push(PointMap {
                domain,
                codomain,
                table: table.clone(),
            });
            // odometer with the last entry least significant
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                table[i] += 1;
                if (table[i] as usize) < c {
                    break;
                }
                table[i] = 0;
            }
        }
    }

    pub fn domain(&self) -> Universe {
        self.domain
    }

    pub fn codomain(&self) -> Universe {
        self.codomain
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn image(&self, a: SubsetCode) -> SubsetCode {
        a.elements().fold(SubsetCode::EMPTY, |acc, j| {
            acc | SubsetCode(1 << self.table[j])
        })
    }

    pub fn preimage(&self, b: SubsetCode) -> SubsetCode {
        let mut out = SubsetCode::EMPTY;
        for (j, &t) in self.table.iter().enumerate() {
            if b.contains(t as usize) {
                out = out | SubsetCode(1 << j);
            }
        }
        out
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.domain.full()) == self.codomain.full()
    }
}

/// Image of a primal along a map, with its validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushforward {
    pub family: SetFamily,
    pub validation: Result<(), StructureViolation>,
    /// Set when the map is surjective, i.e. outside the non-surjective
    /// hypothesis under which the image is claimed to be a primal.
    pub precondition_unmet: bool,
}

/// `{f(P) : P ∈ p}` over the codomain. The validation is always computed;
/// for a non-surjective map it is not assumed.
pub fn pushforward_primal(m: &PointMap, p: &Primal) -> Result<Pushforward, Error> {
    if p.universe() != m.domain {
        return Err(Error::UniverseMismatch {
            left: m.domain.size(),
            right: p.universe().size(),
        });
    }
    let mut family = SetFamily::empty(m.codomain);
    for a in p.family().iter() {
        family.insert(m.image(a));
    }
    let validation = check_primal(&family);
    Ok(Pushforward {
        family,
        validation,
        precondition_unmet: m.is_surjective(),
    })
}

/// `{f^{-1}(Q) : Q ∈ q}` over the domain.
pub fn preimage_family(m: &PointMap, q: &Primal) -> Result<ValidatedFamily, Error> {
    if q.universe() != m.codomain {
        return Err(Error::UniverseMismatch {
            left: m.codomain.size(),
            right: q.universe().size(),
        });
    }
    let mut family = SetFamily::empty(m.domain);
    for b in q.family().iter() {
        family.insert(m.preimage(b));
    }
    Ok(ValidatedFamily::of(family))
}
