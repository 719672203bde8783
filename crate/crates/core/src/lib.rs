//! Finitely generated FI-sets, equivariant relations between them, and the
//! stable spectral data of the linear maps those relations induce.
//!
//! Everything is computed in exact arithmetic. The main entry points are
//! [`fiset::FISetSpec`] for describing an FI-set, [`relation::RelationSpec`]
//! for a relation, and [`spectra::analyze`] for the eigenvalue families.

pub mod caps;
pub mod character;
pub mod error;
pub mod fiset;
pub mod fixtures;
pub mod group;
pub mod linalg;
pub mod multiplicity;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod relation;
pub mod spectra;

pub use caps::Caps;
pub use error::{Error, Result};
pub use fiset::{ElementRep, Evaluation, FISetSpec, Identification, InducedOrbitSpec, Injection};
pub use group::{ConjugacyClassDatum, PermutationGroup, ProductOutcome};
pub use partition::{PaddedPartition, Partition};
pub use perm::Permutation;
pub use poly::{Rational, RationalPolynomial};
pub use relation::{RelationGenerator, RelationMatrix, RelationSpec};
