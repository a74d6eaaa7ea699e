//! Exact computation with discriminantal hyperplane arrangements.
//!
//! Given a generic central arrangement A of n hyperplanes in k-space, this
//! crate builds the discriminantal arrangement B(n,k,A) on the space of
//! parallel translations, enumerates its intersection poset, computes
//! canonical presentations and Athanasiadis ranks, and classifies every
//! intersection as very generic, arithmetic non-very-generic (ANVG), or
//! geometric non-very-generic (GNVG). All arithmetic is exact, over the
//! rationals or a single real quadratic extension Q(√d).
//!
//! The companion binary crate exposes the pipeline as a CLI.

pub mod arrangement;
pub mod classify;
pub mod combin;
pub mod constructions;
pub mod discriminantal;
pub mod error;
pub mod gale;
pub mod lattice;
pub mod linalg;
pub mod par;
pub mod scalar;

pub use arrangement::{Arrangement, Label};
pub use classify::{
    anvg_certificate_check, bba_satisfied, classify, ell, is_dense, is_minimal_nvg, is_sparse,
    theorem_b_audit, AuditCheck, ClassificationReport, IntersectionClass,
};
pub use constructions::{
    a2m, dense_uk, example_8_5, rank2_general, rank2_symmetric, u_k_family, ConstructionResult,
    ExpectedCertificate,
};
pub use discriminantal::{
    build_discriminantal, discriminantal_normal, translation_in_dl, Discriminantal,
    DiscriminantalHyperplane, IndexSet,
};
pub use error::{Error, Result};
pub use gale::{
    adjoint_arrangement, falk_rank_equivalence, falk_rank_report, gale_diagram, span_normal,
    PointConfiguration,
};
pub use lattice::{
    closure, components, enumerate_intersections, intersections_above, CanonicalPresentation,
    Intersection,
};
pub use linalg::{dot, primitive_normalize, Matrix, RowSpace};
pub use scalar::{Field, Scalar};
