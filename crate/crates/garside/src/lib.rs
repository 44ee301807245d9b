//! A computational toolkit for the Garside structure of Artin braid groups.
//!
//! The crate provides:
//!
//! - braid words, simple (permutation) braids and the prefix lattice
//!   ([`word`], [`perm`]);
//! - left normal forms with full group arithmetic ([`normal`]);
//! - conjugacy-class invariants: cycling, decycling, cyclic sliding,
//!   transport, and exhaustive enumeration of super summit sets and sets of
//!   sliding circuits ([`conjugacy`]);
//! - the action of braids on round curves in the punctured disk ([`curves`]);
//! - a partial Nielsen–Thurston classifier built on the set of sliding
//!   circuits and round-curve scans ([`classify`]);
//! - a distinguished family of 5-strand pseudo-Anosov braids whose super
//!   summit sets grow exponentially, with a one-shot verification report
//!   ([`family`]).
//!
//! ```
//! use garside::{BraidWord, NormalForm};
//!
//! let w = BraidWord::parse(3, "1 2 1 2").unwrap();
//! let x = NormalForm::from_word(&w);
//! assert_eq!(x.inf(), 1);
//! assert_eq!(x.canonical_length(), 1);
//! ```

pub mod classify;
pub mod conjugacy;
pub mod curves;
pub mod error;
pub mod family;
pub mod normal;
pub mod perm;
pub mod word;

pub use conjugacy::{ConjugacySet, EnumerationConfig, OrbitSet, SetKind};
pub use error::Error;
pub use normal::NormalForm;
pub use perm::PermutationBraid;
pub use word::BraidWord;
