pub mod catalog;
pub mod closure;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod fibration;
pub mod group;
pub mod named;
pub mod gset;
pub mod hull;
pub mod json;
pub mod orbital;
pub mod reps;
pub mod sieve;
pub mod sparse;
pub mod transfer;
pub mod vset;
pub mod windex;

pub use error::{Error, Result};
pub use orbital::{BackendSpec, OrbitIx, OrbitalPresentation, SliceIx};
pub use vset::VSet;
pub use family::Family;
pub use windex::{Membership, SparseCollection, WeakIndexingSystem};
