//! Exact arithmetic for group rings of abelian grading groups, the natural
//! λ-ring and power structures on them, equivariant Hodge–Deligne polynomials,
//! and orbifold / higher-order spectra of triples `(V, G, φ)`, together with
//! truncated-series verification of the associated Macdonald-type identities.
//!
//! All computations are exact: coefficients are arbitrary-precision integers,
//! gradings are exact rationals, and roots of unity are stored by their
//! exponent in ℚ/ℤ, never as complex approximations.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod group;
pub mod hodge;
pub mod lambda;
pub mod macdonald;
pub mod orbifold;
pub mod rational;
pub mod ring;
pub mod series;

pub use group::{ConjugacyData, FiniteGroup, GroupError, WreathGroup};
pub use hodge::{EquivariantHd, MixedHodgeEigenDatum};
pub use lambda::{Factorization, Mode};
pub use macdonald::{
    normalization_audit, rhs_expand_theorem2, sym_power_pair_oracle, verify_corollary1,
    verify_theorem1, verify_theorem2, verify_theorem2_corollary, wreath_lhs_explicit,
    wreath_lhs_k1_positive_d, AuditReport, ComparisonReport, DegreeRow, ShiftConvention,
    Theorem2Fixture,
};
pub use orbifold::{
    brieskorn_zero_dim, AgeDatum, Child, Dimension, ExplicitGSet, OrbifoldError, TripleNode,
};
pub use rational::{rational_split, CyclicRational, Rat};
pub use ring::{
    Coord, CoordKind, EffectiveMapClass, GradingGroup, GroupElementTuple, GroupRingElement,
    RingError,
};
pub use series::TruncatedSeries;
