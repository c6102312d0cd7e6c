//! Decides whether a function on a finite carrier decomposes into a sum of
//! components invariant under given commuting invertible transformations,
//! in exact rational arithmetic.
//!
//! The verdict comes with evidence either way: a constructive
//! [`decompose::Decomposition`] whose parts are invariant and sum back to the
//! input, or a re-verifiable [`condition::ViolationCertificate`] naming an
//! orbit, a partition of the generators, chosen elements of the block
//! intersections, and a witness point where the iterated difference is
//! nonzero. An independent linear-algebra oracle
//! ([`decompose::oracle_feasible`]) cross-checks both routes and also decides
//! integer-valued decomposability.
//!
//! Translation systems (finite abelian groups, sampled integer windows,
//! symbolic real periods over a rationally independent basis) compile into
//! the same machinery through [`abelian`].

pub mod abelian;
pub mod action;
pub mod condition;
pub mod decompose;
pub mod numeric;

pub use action::{Action, GroupElement, OrbitPartition, SetPartition};
pub use condition::{
    check_condition, difference, iterated_difference, CheckMode, CheckOutcome, FnVec,
    ViolationCertificate,
};
pub use decompose::{
    bezout_combine, decompose, m_bound, oracle_feasible, solve_lift, verify_decomposition,
    BezoutPlan, Decomposition, DecomposeOutcome, MBound, OracleOutcome, Ring, Verification,
};
pub use numeric::{format_rational, parse_rational, Rat};
