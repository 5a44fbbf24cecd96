//! Exact log canonical thresholds of ideals generated by monomials and
//! binomials in affine space.
//!
//! The threshold is the minimum of a combinatorial function of the
//! generators' exponent matrices over the nonnegative orthant, attained on
//! the rays of a fan cut out by finitely many hyperplanes. Two independent
//! routes are provided to check it: a toric pseudo-resolution built from
//! two-dimensional star subdivisions, and Howald's formula for monomial
//! ideals.

pub mod error;
pub mod eval;
pub mod extended;
pub mod gamma;
pub mod ideal;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod report;
pub mod resolution;
pub mod torus;

pub use error::{LctError, ParseErrorKind, Result};
pub use eval::{evaluate, evaluate_star, LctBreakdown};
pub use extended::ExtendedRational;
pub use gamma::{enumerate_rays, global_lct, hyperplane_rows, HyperplaneSet, RayTable};
pub use ideal::{parse_ideal, triple_of, GeneralBinomialIdeal, Generator, IdealTriple};
pub use linalg::{IntMatrix, IntVector};
pub use newton::{howald_lct, newton_contains, DivisorShift, NewtonPolyhedron};
pub use resolution::{
    lct_via_resolution, pseudo_resolve, resolve_and_evaluate, PseudoResolution, ResolutionFan,
    ResolutionLct, TransformState,
};
pub use torus::{is_torus_unit, r_zero, TorusVerdict};
