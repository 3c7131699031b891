//! Order dimension of finite posets, organised around the blocks of their
//! cover graphs.
//!
//! * [`poset`] stores a strict order as bitset rows and checks realizers.
//! * [`blocks`] splits the cover graph into blocks, labels them so every
//!   block after the first meets the earlier ones in a single root, and
//!   answers tail queries.
//! * [`reversibility`] decides whether a set of incomparable pairs can be
//!   reversed by one linear extension and builds that extension.
//! * [`merge`] glues size-`d` block realizers into `d` extensions of the
//!   whole poset and adds at most two more to obtain a realizer.
//! * [`solver`] computes exact dimension by covering critical pairs with
//!   reversible classes.
//! * [`generators`] builds the standard families.

pub mod blocks;
pub mod error;
pub mod generators;
pub mod merge;
pub mod poset;
pub mod reversibility;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{BlockError, GeneratorError, MergeError, PosetError, ReversalError, SolverError};
pub use poset::{
    verify_realizer, Counterexample, IncPair, LinearExtension, Poset, Realizer, RelationKind,
    Verdict,
};
