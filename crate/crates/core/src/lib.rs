//! Primal structures on finite universes.
//!
//! A primal on `X` is a family of subsets that omits `X`, is closed under
//! taking subsets, and whenever it holds `A ∩ B` it holds `A` or `B`. It is
//! the memberwise-complement dual of a grill. Together with a topology it
//! induces the diamond operator, the `cl^⋄` closure and a finer topology
//! `τ^⋄`. This crate computes all of these on universes of up to sixteen
//! points and checks the surrounding theorems by exhaustive enumeration.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats, and the
//! worker pool live in the companion `primal` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod primal_ops;
pub mod setkit;
pub mod structures;
pub mod topology;
pub mod verify;

pub use error::Error;
pub use primal_ops::{
    base_family, cl_diamond, closure_table, diamond, diamond_naive, diamond_table,
    distribution_check, is_base_for, kuratowski_audit, primal_topology, tau_star_from_base,
    tau_star_from_membership, tau_star_membership, ClosureTable, KuratowskiReport, PrimalSpace,
};
pub use setkit::{complement, encode_set, family_members, SetFamily, SubsetCode, Universe};
pub use structures::{
    check_grill, check_primal, elementwise_combine, enumerate_primals, exhaustive_grill_scan,
    exhaustive_primal_scan, grill_to_primal, intersect_families, preimage_family, primal_to_grill,
    pushforward_primal, union_primals, Combine, Grill, PointMap, Primal, StructureViolation,
    ValidatedFamily,
};
pub use topology::{
    check_topology, closure, enumerate_topologies, enumerate_topologies_opt_in, interior,
    minimal_neighborhood, neighborhoods, FiniteTopology, TopologyViolation,
};
pub use verify::{
    all_as_expected, replicate_paper, replication_as_expected, search_counterexample,
    search_counterexample_with, verify_all, verify_all_with, verify_property, verify_property_with,
    Executor, MatchStatus, PropertyId, Quantifier, Replication, ScopeCaps, Sequential, Verdict,
    VerificationReport, Witness, DOCUMENTED_MISMATCH,
};
