//! Constructive flatness witnesses and weighted factorizations on sampled
//! measure spaces, the disk, and the right half-plane.

// Negated comparisons below reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bezout;
pub mod error;
pub mod halfplane;
pub mod hardy;
pub mod io;
pub mod layered;
pub mod sampled;
pub mod seq;
pub mod suite;
pub mod ultralimit;
pub mod witness;

pub use num_complex::Complex64;

pub use bezout::{
    polar_parts, principal_generator, principal_strictness, ulp_distance, verify_generator, BezoutGenerator,
    BezoutReport, StrictnessReport,
};
pub use error::{Error, Result};
pub use halfplane::{
    disk_to_halfplane_h2, halfplane_to_disk_h2, mobius, mobius_inv, transfer_factorization, DiskFunction,
    HalfPlaneFunction, HalfPlaneSamples, Taylor, TransferReport,
};
pub use hardy::{hardy_factor, GridFunction, HardyFactorization, HardyOptions};
pub use layered::{factor, factor_with, FactorizationResult, LayeredSpace, WeightMode};
pub use sampled::SampledFunction;
pub use seq::{tail_profile, verify_olympiad_bound, OlympiadReport, TailModel, TailProfile};
pub use ultralimit::{
    eventual_limit, ideal_membership_nonprincipal, principal_limit, BoundedSequence, EventualLimit, Membership,
};
pub use witness::{synthesize_witness, verify_witness, PointwiseRelation, SynthesisOptions, WitnessCertificate};
