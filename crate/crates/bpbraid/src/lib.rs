//! Braid monodromy of Brieskorn–Pham singularities: free-group and braid words,
//! multi-index bookkeeping, generator families, Hurwitz actions, discriminant
//! polynomials, Zariski–van Kampen presentations and an identity-checking harness.

pub mod error;
pub mod generators;
pub mod hurwitz;
pub mod multiindex;
pub mod poly;
pub mod presentation;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use multiindex::{ExponentVector, MultiIndex};
pub use words::{braids_equal, BraidWord, FreeEndo, FreeWord, Permutation};
