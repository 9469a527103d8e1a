//! The diamond operator of a primal topological space, its closure
//! `cl^⋄(A) = A ∪ A^⋄`, and the primal topology `τ^⋄` it generates.
//!
//! `A^⋄` is the set of points `x` such that `A^c ∪ U^c ∈ P` for every open
//! `U` containing `x`. [`diamond_naive`] quantifies over every such `U`.
//! [`diamond`] only looks at the minimal open neighborhood of `x`: a primal
//! is closed under subsets and `U^c` is largest for the smallest `U`, so the
//! minimal neighborhood is the binding case. The two are compared
//! exhaustively in the tests and in the acceptance suite.

use alloc::vec::Vec;

use crate::setkit::{SetFamily, SubsetCode, Universe};
use crate::structures::Primal;
use crate::topology::{check_topology, neighborhoods, FiniteTopology};
use crate::Error;

/// `(X, τ, P)` with `τ` and `P` on the same universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimalSpace {
    topology: FiniteTopology,
    primal: Primal,
}

impl PrimalSpace {
    pub fn new(topology: FiniteTopology, primal: Primal) -> Result<Self, Error> {
        if topology.universe() != primal.universe() {
            return Err(Error::UniverseMismatch {
                left: topology.universe().size(),
                right: primal.universe().size(),
            });
        }
        Ok(PrimalSpace { topology, primal })
    }

    pub fn universe(&self) -> Universe {
        self.topology.universe()
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn primal(&self) -> &Primal {
        &self.primal
    }
}

/// `A^⋄` straight from the definition.
pub fn diamond_naive(a: SubsetCode, s: &PrimalSpace) -> SubsetCode {
    let u = s.universe();
    let outside = u.complement(a);
    let mut out = SubsetCode::EMPTY;
    for x in 0..u.size() as usize {
        let opens = neighborhoods(x, &s.topology).expect("index in range");
        if opens
            .iter()
            .all(|&open| s.primal.contains(outside | u.complement(open)))
        {
            out = out | SubsetCode(1 << x);
        }
    }
    out
}

/// `A^⋄` through the minimal open neighborhood of each point.
pub fn diamond(a: SubsetCode, s: &PrimalSpace) -> SubsetCode {
    let u = s.universe();
    let outside = u.complement(a);
    let mut out = SubsetCode::EMPTY;
    for x in 0..u.size() as usize {
        if s.primal
            .contains(outside | u.complement(s.topology.core_of(x)))
        {
            out = out | SubsetCode(1 << x);
        }
    }
    out
}

/// `A^⋄` for every code, indexed by code.
pub fn diamond_table(s: &PrimalSpace) -> Vec<SubsetCode> {
    s.universe().subsets().map(|a| diamond(a, s)).collect()
}

pub fn cl_diamond(a: SubsetCode, s: &PrimalSpace) -> SubsetCode {
    a | diamond(a, s)
}

/// A total map `2^X -> 2^X`, indexed by code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTable {
    universe: Universe,
    table: Vec<SubsetCode>,
}

impl ClosureTable {
    pub fn new(universe: Universe, table: Vec<SubsetCode>) -> Result<Self, Error> {
        if table.len() != universe.subset_count() {
            return Err(Error::TableLength {
                expected: universe.subset_count(),
                got: table.len(),
            });
        }
        for &image in &table {
            universe.check(image)?;
        }
        Ok(ClosureTable { universe, table })
    }

    pub fn identity(universe: Universe) -> Self {
        ClosureTable {
            universe,
            table: universe.subsets().collect(),
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn get(&self, a: SubsetCode) -> SubsetCode {
        self.table[a.0 as usize]
    }

    pub fn entries(&self) -> &[SubsetCode] {
        &self.table
    }
}

pub fn closure_table(s: &PrimalSpace) -> ClosureTable {
    let table = s.universe().subsets().map(|a| cl_diamond(a, s)).collect();
    ClosureTable {
        universe: s.universe(),
        table,
    }
}

/// Outcome of each closure axiom; `Err` carries the smallest witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiReport {
    /// `c(∅) = ∅`; witness `[∅]`.
    pub preserves_empty: Result<(), Vec<SubsetCode>>,
    /// `A ⊆ c(A)`; witness `[A]`.
    pub extensive: Result<(), Vec<SubsetCode>>,
    /// `c(A ∪ B) = c(A) ∪ c(B)`; witness `[A, B]` with `A < B`.
    pub additive: Result<(), Vec<SubsetCode>>,
    /// `c(c(A)) = c(A)`; witness `[A]`.
    pub idempotent: Result<(), Vec<SubsetCode>>,
}

impl KuratowskiReport {
    pub fn is_closure_operator(&self) -> bool {
        self.preserves_empty.is_ok()
            && self.extensive.is_ok()
            && self.additive.is_ok()
            && self.idempotent.is_ok()
    }
}

pub fn kuratowski_audit(t: &ClosureTable) -> KuratowskiReport {
    let u = t.universe;
    let preserves_empty = if t.get(SubsetCode::EMPTY).is_empty() {
        Ok(())
    } else {
        Err(alloc::vec![SubsetCode::EMPTY])
    };
    let extensive = match u.subsets().find(|&a| !a.is_subset_of(t.get(a))) {
        None => Ok(()),
        Some(a) => Err(alloc::vec![a]),
    };
    let additive = match u.subsets().find_map(|a| {
        u.subsets()
            .skip(a.0 as usize + 1)
            .find(|&b| t.get(a | b) != (t.get(a) | t.get(b)))
            .map(|b| (a, b))
    }) {
        None => Ok(()),
        Some((a, b)) => Err(alloc::vec![a, b]),
    };
    let idempotent = match u.subsets().find(|&a| t.get(t.get(a)) != t.get(a)) {
        None => Ok(()),
        Some(a) => Err(alloc::vec![a]),
    };
    KuratowskiReport {
        preserves_empty,
        extensive,
        additive,
        idempotent,
    }
}

/// `τ^⋄ = {A : cl^⋄(A^c) = A^c}`.
pub fn primal_topology(s: &PrimalSpace) -> FiniteTopology {
    let u = s.universe();
    let opens = SetFamily::from_fn(u, |a| {
        let closed = u.complement(a);
        cl_diamond(closed, s) == closed
    });
    debug_assert!(check_topology(&opens).is_ok());
    FiniteTopology::trusted(opens)
}

/// Membership in `τ^⋄` by the pointwise criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// For each point of `A` (ascending), the smallest open `U ∋ x` with
    /// `U^c ∪ A ∉ P`. Complete only when `member` holds.
    pub witnesses: Vec<(usize, SubsetCode)>,
    /// The first point of `A` with no such `U`.
    pub blocking_point: Option<usize>,
}

/// Decides `A ∈ τ^⋄` by asking, for each `x ∈ A`, for an open `U ∋ x` with
/// `U^c ∪ A ∉ P`.
pub fn tau_star_membership(a: SubsetCode, s: &PrimalSpace) -> Membership {
    let u = s.universe();
    let mut witnesses = Vec::new();
    for x in a.elements() {
        let found = neighborhoods(x, &s.topology)
            .expect("index in range")
            .into_iter()
            .find(|&open| !s.primal.contains(u.complement(open) | a));
        match found {
            Some(open) => witnesses.push((x, open)),
            None => {
                return Membership {
                    member: false,
                    witnesses,
                    blocking_point: Some(x),
                }
            }
        }
    }
    Membership {
        member: true,
        witnesses,
        blocking_point: None,
    }
}

/// `τ^⋄` assembled from [`tau_star_membership`].
pub fn tau_star_from_membership(s: &PrimalSpace) -> SetFamily {
    SetFamily::from_fn(s.universe(), |a| tau_star_membership(a, s).member)
}

/// `{T ∩ Q : T ∈ τ, Q ∉ P}`.
pub fn base_family(s: &PrimalSpace) -> SetFamily {
    let u = s.universe();
    let outside: Vec<SubsetCode> = u.subsets().filter(|&q| !s.primal.contains(q)).collect();
    let mut out = SetFamily::empty(u);
    for t in s.topology.opens().iter() {
        for &q in &outside {
            out.insert(t & q);
        }
    }
    out
}

/// `τ^⋄` assembled as all unions of [`base_family`].
pub fn tau_star_from_base(s: &PrimalSpace) -> SetFamily {
    base_family(s).union_closure()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseCheck {
    pub is_base: bool,
    /// The first base member that is not open, else the first open set that
    /// is not a union of base members.
    pub witness: Option<SubsetCode>,
}

pub fn is_base_for(b: &SetFamily, t: &FiniteTopology) -> Result<BaseCheck, Error> {
    if b.universe() != t.universe() {
        return Err(Error::UniverseMismatch {
            left: b.universe().size(),
            right: t.universe().size(),
        });
    }
    let fail = |a| {
        Ok(BaseCheck {
            is_base: false,
            witness: Some(a),
        })
    };
    if let Some(a) = b.iter().find(|&a| !t.is_open(a)) {
        return fail(a);
    }
    let members = b.members();
    for open in t.opens().iter() {
        let covered = members
            .iter()
            .filter(|m| m.is_subset_of(open))
            .fold(SubsetCode::EMPTY, |acc, &m| acc | m);
        if covered != open {
            return fail(open);
        }
    }
    Ok(BaseCheck {
        is_base: true,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributionCheck {
    pub holds: bool,
    /// A point of `A ∩ B^⋄` outside `(A ∩ B)^⋄`.
    pub witness: Option<usize>,
}

/// Checks `A ∩ B^⋄ ⊆ (A ∩ B)^⋄` for an open `A`.
pub fn distribution_check(
    a_open: SubsetCode,
    b: SubsetCode,
    s: &PrimalSpace,
) -> Result<DistributionCheck, Error> {
    let u = s.universe();
    u.check(a_open)?;
    u.check(b)?;
    if !s.topology.is_open(a_open) {
        return Err(Error::NotOpen(a_open.0));
    }
    let lhs = a_open & diamond(b, s);
    let rhs = diamond(a_open & b, s);
    let witness = lhs.minus(rhs).elements().next();
    Ok(DistributionCheck {
        holds: witness.is_none(),
        witness,
    })
}
