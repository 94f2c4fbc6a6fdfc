//! Finite covers of simple surface amalgams.
//!
//! A simple surface amalgam is a collection of at least three compact
//! surfaces, each with one boundary circle and negative Euler characteristic,
//! with all boundary circles glued to one circle. This crate builds explicit
//! finite covers of such spaces and certificates exhibiting one finite cover
//! as a union of pieces of a larger one, with a nonempty complement of
//! negative-χ pieces.
//!
//! * [`surface`]: surfaces, amalgam complexes, validation.
//! * [`perm`], [`surface_cover`]: covers of one surface as permutation
//!   representations; the parity criterion, realization, enumeration.
//! * [`amalgam_cover`]: covering maps of amalgam complexes and their checks.
//! * [`claim`], [`construction`], [`witness`], [`certificate`]: the cover
//!   constructions and certificates.

pub mod amalgam_cover;
pub mod certificate;
pub mod claim;
pub mod construction;
pub mod error;
pub mod mutation;
pub mod perm;
pub mod report;
pub mod surface;
pub mod surface_cover;
pub mod witness;

pub use amalgam_cover::{
    realize_amalgam_cover, verify_amalgam_cover, verify_realizations, AmalgamCover, BoundaryLift,
    CircleLift, CoverPiece, PieceRealization,
};
pub use certificate::{
    build_main_example, certify_not_comm_cohopfian, verify_certificate, Certificate,
    CertifyOptions, CompositeDegrees,
};
pub use claim::{solve_claim_integers, solve_claim_with, ClaimSolution};
pub use error::{ConstructionError, CoverError, PermError};
pub use perm::{CycleType, Permutation};
pub use report::{Check, Report};
pub use surface::{
    euler_char_amalgam, euler_char_surface, validate_amalgam, AmalgamComplex, Surface,
};
pub use surface_cover::{
    analyze_rep, enumerate_covers, for_each_cover, lift_curve, neumann_feasible, oracle_table,
    realize_surface_cover, realize_surface_cover_with_budget, CoverAnalysis, CoverSpec,
    SurfaceCoverRep, Word,
};
pub use witness::{verify_embedding, EmbeddingWitness, WitnessAssignment};
