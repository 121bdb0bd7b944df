pub mod error;
pub mod category;
pub mod fp;
pub mod group;
pub mod homology;
pub mod input;
pub mod limits;
pub mod omega;
pub mod pipeline;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};
pub use fp::Prime;
pub use group::{Elem, Permutation, PermutationGroup, Subgroup};
