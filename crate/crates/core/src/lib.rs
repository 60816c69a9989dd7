//! Bimodal collections of disjoint subsets of finite abelian groups.
//!
//! A collection `{A_1, ..., A_m}` of disjoint subsets is *bimodal* when every
//! non-zero `delta` occurs as an external difference `a - b` (`a` in `A_i`,
//! `b` in another set) either never or exactly `|A_i|` times, for each `i`.
//!
//! * [`group`]: cyclic-product groups, subgroups and cosets.
//! * [`bimodal`]: difference profiles and the two deciders.
//! * [`classify`]: the structural report and canonical position.
//! * [`construct`]: every known way to build bimodal collections.
//! * [`enumerate`]: the exhaustive small-group oracle.
//! * [`io`]: the JSON interchange format.
//! * [`golden`]: reference collections.

pub mod bimodal;
pub mod classify;
pub mod construct;
pub mod enumerate;
pub mod golden;
pub mod group;
pub mod io;

pub use bimodal::{
    difference_profile, is_bimodal_by_definition, is_bimodal_by_structure, CollectionError, DifferenceProfile,
    SetCollection, Verdict, Witness,
};
pub use classify::{canonicalize, classify, Canonical, Case, ClassificationReport, ClassifyError};
pub use construct::{ConstructError, StarSpec};
pub use enumerate::{
    cross_validate, enumerate_bimodal, CrossValidation, Dedupe, EnumerateError, EnumerationResult, EnumerationScope,
    RunOptions, SupportMode,
};
pub use group::{CosetDecomposition, Elem, GroupElement, GroupError, GroupSpec, Subgroup};
pub use io::IoError;
