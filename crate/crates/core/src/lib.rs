//! Kulkarni limit sets of real-hyperbolic groups `SO+(m,1)` acting on `P_C^n`
//! through the block embedding into `SU(n,1)`.
//!
//! The limit set `Lambda` is the union of the complex hyperplanes tangent to
//! `dH_C^n` along a real `(m-1)`-sphere; `Omega` is its complement. Membership
//! is decided pointwise by sign conditions on `<z,z>` and the quartic
//! invariant `f(z) = |<z, conj z>|^2 - <z,z>^2` (see [`limit_set`]).
//!
//! * [`hermitian`]: the form on `C^{n,1}`, Gram matrices, span types, `f`.
//! * [`projective`]: canonical representatives, tangent hyperplanes, `Q_m`.
//! * [`limit_set`]: the region taxonomy.
//! * [`fibration`]: the projection `Omega -> H_R^n`, its fibers, isometries.
//! * [`census`], [`slice`], [`verify`]: sampling, rendering and property checks.

pub mod census;
pub mod error;
pub mod fibration;
pub mod hermitian;
pub mod io;
pub mod limit_set;
pub mod projective;
pub mod sampling;
pub mod slice;
pub mod union_find;
pub mod verify;

pub use error::{Error, Result};
pub use fibration::{
    adapted_basis, eta, fiber_point, hyp_matrix, iota_embed, pi_projection, pi_tilde, random_isometry, AdaptedBasis,
    HypCoords, IsometryMatrix,
};
pub use hermitian::{
    classify_vector, conj_dependent, f_value, gram2, herm_inner, span_class_det, span_class_eig, Gram2,
    IndefiniteVector, SpanClass, VectorClass, DEFAULT_TOL,
};
pub use limit_set::{classify, classify_equal_dim, omega2_component, partition_label, PartitionLabel, RegionLabel};
pub use projective::{
    hyperplane_of, in_lambda0, normalize, q_project, real_intersection_kind, ProjectivePoint, RealIntersectionKind,
    TangentHyperplane,
};
