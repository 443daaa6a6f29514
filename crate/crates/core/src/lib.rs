//! Constrained permutation codes for rank modulation.
//!
//! Permutations are stored in one-line notation with 1-based values: `σ(i)`
//! is the rank of cell `i`. The crate covers
//!
//! * permutation and multi-permutation primitives ([`perm`]),
//! * the single-neighbor, two-neighbor and asymmetric two-neighbor
//!   constraints ([`constraints`]),
//! * exact enumeration and counting of constrained sets ([`enumeration`]),
//! * the block-pair construction `C^sym` and the run/partition construction
//!   `C^asym` ([`constructions`]),
//! * Kendall τ, inversion and Manhattan distances and ball sizes ([`metrics`]),
//! * greedy error-correcting codes, their bounds and capacity surfaces
//!   ([`ecc`]).

pub mod constraints;
pub mod constructions;
pub mod count;
pub mod ecc;
pub mod enumeration;
mod error;
pub mod metrics;
pub mod perm;
pub mod text;

pub use constraints::{Constraint, ConstraintKind, IntVector};
pub use constructions::{Code, OrderedPartition};
pub use count::{BigCount, LogValue};
pub use ecc::{CapacityPoint, EccCode, Metric};
pub use enumeration::Budget;
pub use error::{Error, Result};
pub use perm::{BlockPermutation, MultiPermutation, Permutation};
