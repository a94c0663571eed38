//! Exact verification of the linkage duality on quadric and cubic surfaces.
//!
//! Everything here is exact rational arithmetic on small explicit
//! examples: point evaluation matrices, graded pieces of ideals and
//! degreewise colon ideals. There are no Gröbner bases.

pub mod instance;
pub mod linalg;
pub mod points;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod surface;
pub mod verify;

pub use instance::{
    build_quadric_ruled_ci, build_random_ci_through_points, build_seeded, LinkageInstance, Mode, RulingParameter,
    RulingParameters, Split,
};
pub use points::{hilbert_function, PointSet, ProjectivePoint};
pub use poly::{colon_graded, colon_graded_dimension, ideal_graded_dimension, CachedIdeal, GradedIdeal, Polynomial};
pub use quotient::{QuotientColon, SurfaceIdeal, SurfaceRing};
pub use surface::Surface;
pub use verify::{verify_duality, VerificationReport, VerificationRow};
