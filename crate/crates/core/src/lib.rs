//! Exact symbolic toolkit for map-germs `(R^2,0) -> (R^3,0)` of pedal
//! unfolding type and for normalized Legendrian fronts.
//!
//! The crate provides:
//!
//! - truncated bivariate power series (jets) over exact rationals ([`jet`]),
//! - a polynomial expression parser with a canonical printer ([`expr`]),
//! - the two germ classes and their validation/decomposition ([`germs`]),
//! - the integration and differentiation transforms between them and their
//!   round-trip checks ([`calculus`]),
//! - normal fields and the Legendrian Jacobian ([`legendrian`]),
//! - recognition of non-singular germs, Whitney umbrellas, swallowtails and
//!   cuspidal edges by exact origin criteria ([`classify`]),
//! - grid sampling, singular-locus tracing and slice fronts with exporters
//!   ([`sampling`]),
//! - and the command-line front end ([`cli`]).
//!
//! Every classification decision is an exact rational "zero / nonzero" test;
//! floats appear only in sampling output.

pub mod calculus;
pub mod classify;
pub mod cli;
pub mod coeff;
pub mod expr;
pub mod germs;
pub mod jet;
pub mod legendrian;
pub mod sampling;

pub use calculus::{
    differentiate_d, integrate_i, roundtrip_di, roundtrip_id, CalculusError, RoundtripReport,
};
pub use classify::{
    classify_legendrian, classify_pedal, correspondence_check, whitney_criterion, Classification,
    Tag,
};
pub use coeff::Coeff;
pub use expr::{parse_expr, ParseError};
pub use germs::{
    assemble_pedal, decompose_pedal, validate_normalized, GermError, MapGerm3,
    NormalizedLegendrianGerm, PedalGerm,
};
pub use jet::{divide, Jet2, JetError, Quotient};
pub use legendrian::{lift_rank_check, lj_det, lj_reduced, normal_field, NormalField};
pub use sampling::{
    sample_surface, singular_locus, slice_front, Locus, Polyline2, Polyline3, Range2, SliceFront,
    SurfaceMesh,
};

/// Default truncation order; the worked fixtures have degree <= 4, so this
/// leaves headroom for products.
pub const DEFAULT_ORDER: u32 = 8;
