//! Explicit constrained codes.
//!
//! * [`build_csym`]: words `ρ(γ₁, …, γ_ℓ)` with `ρ` paired (`ρ(2j−1) = ρ(2j)`),
//!   two-neighbor `k`-constrained for odd `k`.
//! * [`build_casym`]: alternating ascending/descending runs over an ordered
//!   set partition, interleaved with value pairs from `C^sym_{·,1}`;
//!   asymmetric two-neighbor 1-constrained.

mod asym;
mod partition;
mod sym;

use std::collections::BTreeSet;

pub use asym::{
    build_casym, build_cr, casym_multiplicities, cr_codeword, cr_ground, for_each_cr_representation,
    lower_bound_casym,
};
pub use partition::{enumerate_set_partitions, stirling2, OrderedPartition, SetPartitions};
pub use sym::{build_csym, cardinality_csym, csym_codewords, enumerate_d, CsymCodewords, PairedMultiPermutations};

use crate::constraints::Constraint;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite set of equal-length permutations with the constraint it targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    n: usize,
    members: BTreeSet<Permutation>,
    constraint: Constraint,
    label: String,
}

impl Code {
    pub fn new(
        n: usize,
        constraint: Constraint,
        label: impl Into<String>,
        members: impl IntoIterator<Item = Permutation>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in members {
            if p.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: p.len(),
                });
            }
            set.insert(p);
        }
        Ok(Code {
            n,
            members: set,
            constraint,
            label: label.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<Permutation> {
        &self.members
    }

    /// Members that fail the declared constraint.
    pub fn violations(&self) -> Vec<&Permutation> {
        self.members
            .iter()
            .filter(|p| !self.constraint.holds(p.values()))
            .collect()
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Permutation;
    type IntoIter = std::collections::btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
