//! Exact iterated sumsets `mA` and numerical-semigroup gap sets, with
//! exhaustive verification of the head / interval / tail structure of `mA`.
//!
//! For a finite set `A` of integers with `min(A) = 0` and `gcd(A) = 1`, the
//! sumset `mA` is, once `m >= l - n + 2`, the interval `[0, ml]` with the gaps
//! of the semigroup generated by `A` removed at the bottom and the reflected
//! gaps of `l - A` removed at the top. The crate computes every piece of that
//! statement exactly and checks it:
//!
//! * [`intset`]: normalization, reflection, bitmap sumsets, `mA` by doubling.
//! * [`semigroup`]: gaps and the Frobenius number, by two independent routes.
//! * [`structure`]: shape parameters, the structure check, decompositions,
//!   and the extremal families where the gap-length bound is attained.
//! * [`stability`]: the exceptional families below the threshold and
//!   exhaustive scans over all sets of a given diameter and size.
//! * [`toolbox`]: small-scale brute-force checks of the supporting results.
//! * [`harness`]: JSON and CSV reports behind the `sumsets` command.
//!
//! ```
//! use sumsets::{intset::normalize, structure::structure_check};
//!
//! let a = normalize(&[10, 13, 15]).unwrap(); // {0, 3, 5}
//! let verdict = structure_check(&a, 4).unwrap();
//! assert!(verdict.holds && verdict.tight);
//! assert_eq!(verdict.gap_length, 10);
//! ```

pub mod enumerate;
pub mod error;
pub mod harness;
pub mod intset;
pub mod parallel;
pub mod semigroup;
pub mod stability;
pub mod structure;
pub mod toolbox;

pub use error::{Error, Result};
pub use intset::{DenseSet, GeneratorSet};
pub use semigroup::GapData;
pub use stability::{StabilityOutcome, StabilityVerdict};
pub use structure::{Decomposition, ShapeParams, StructureVerdict};
