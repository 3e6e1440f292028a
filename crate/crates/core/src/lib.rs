//! Rotation groups of tight chiral polyhedra.
//!
//! Presentations on two generators `s1`, `s2` are realized as permutation
//! groups by coset enumeration, then classified as polytopal, tight,
//! orientably regular or chiral, and atomic. The `classification` module
//! decides which Schläfli types `{p, q}` admit a tight chiral polyhedron,
//! builds a witness group for each, and cross-checks the answer against an
//! exhaustive parameter search.

pub mod analysis;
pub mod classification;
pub mod cli;
pub mod coset;
pub mod error;
pub mod families;
pub mod group;
pub mod perm;
pub mod presentation;
pub mod realization;
pub mod structure;
pub mod util;

pub use analysis::{classify, classify_group, ClassificationReport, Verdict};
pub use coset::{enumerate, explicit_representation, realize, realize_default, CosetTable, ExplicitFamily};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use families::{Built, FamilySpec, MixRecipe, Sign};
pub use group::{comix, covers, cyclic_core, mix, quotient_by_cyclic, same_group, CoreInfo};
pub use perm::Perm;
pub use presentation::{format_presentation, parse_presentation, GpParams, Presentation, Word};
pub use realization::Realization;
