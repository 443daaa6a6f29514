//! Rank-domain constraints on neighboring cells.
//!
//! Every predicate here is vacuous on windows that do not exist: the
//! two-neighbor forms quantify over interior positions `2..=n−1`, so any
//! sequence of length at most 2 satisfies them. Values of `k ≥ n` are
//! accepted and simply never bind.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::perm::{parse_values, write_values, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    /// `|σ(i) − σ(i+1)| ≤ k` for every adjacent pair.
    SingleNeighbor,
    /// At every interior position at least one neighbor is within `k`.
    TwoNeighbor,
    /// At every interior position at least one neighbor exceeds it by at most `k`.
    AsymTwoNeighbor,
}

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 3] = [
        ConstraintKind::SingleNeighbor,
        ConstraintKind::TwoNeighbor,
        ConstraintKind::AsymTwoNeighbor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstraintKind::SingleNeighbor => "single_neighbor",
            ConstraintKind::TwoNeighbor => "two_neighbor",
            ConstraintKind::AsymTwoNeighbor => "asym_two_neighbor",
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstraintKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstraintKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown constraint kind {s:?}")))
    }
}

/// A constraint family together with its threshold `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    kind: ConstraintKind,
    k: u32,
}

impl Constraint {
    pub fn new(kind: ConstraintKind, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(invalid("constraint threshold k must be at least 1"));
        }
        Ok(Constraint { kind, k })
    }

    pub fn single_neighbor(k: u32) -> Result<Self> {
        Constraint::new(ConstraintKind::SingleNeighbor, k)
    }

    pub fn two_neighbor(k: u32) -> Result<Self> {
        Constraint::new(ConstraintKind::TwoNeighbor, k)
    }

    pub fn asym_two_neighbor(k: u32) -> Result<Self> {
        Constraint::new(ConstraintKind::AsymTwoNeighbor, k)
    }

    pub fn kind(&self) -> ConstraintKind {
        self.kind
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Whether the whole sequence satisfies the constraint.
    pub fn holds(&self, values: &[u32]) -> bool {
        match self.kind {
            ConstraintKind::SingleNeighbor => values
                .windows(2)
                .all(|w| w[0].abs_diff(w[1]) <= self.k),
            _ => values
                .windows(3)
                .all(|w| self.window_ok(w[0], w[1], w[2])),
        }
    }

    /// Whether `next` may follow `prefix` without violating a window that
    /// becomes fully determined once `next` is placed.
    #[inline]
    pub(crate) fn admits(&self, prefix: &[u32], next: u32) -> bool {
        let len = prefix.len();
        match self.kind {
            ConstraintKind::SingleNeighbor => {
                len == 0 || prefix[len - 1].abs_diff(next) <= self.k
            }
            _ => len < 2 || self.window_ok(prefix[len - 2], prefix[len - 1], next),
        }
    }

    /// The interior check at the middle value `mid` of a window.
    #[inline]
    pub(crate) fn window_ok(&self, left: u32, mid: u32, right: u32) -> bool {
        let k = self.k;
        match self.kind {
            ConstraintKind::SingleNeighbor => left.abs_diff(mid) <= k && mid.abs_diff(right) <= k,
            ConstraintKind::TwoNeighbor => left.abs_diff(mid) <= k || mid.abs_diff(right) <= k,
            ConstraintKind::AsymTwoNeighbor => {
                left as i64 - mid as i64 <= k as i64 || right as i64 - mid as i64 <= k as i64
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={})", self.kind, self.k)
    }
}

pub fn satisfies_single_neighbor(sigma: &Permutation, k: u32) -> bool {
    Constraint { kind: ConstraintKind::SingleNeighbor, k }.holds(sigma.values())
}

pub fn satisfies_two_neighbor(sigma: &Permutation, k: u32) -> bool {
    Constraint { kind: ConstraintKind::TwoNeighbor, k }.holds(sigma.values())
}

pub fn satisfies_asym_two_neighbor(sigma: &Permutation, k: u32) -> bool {
    Constraint { kind: ConstraintKind::AsymTwoNeighbor, k }.holds(sigma.values())
}

/// A vector of `H_n = [n]^n`; repeated entries are allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector {
    values: Vec<u32>,
}

impl IntVector {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let n = values.len() as u32;
        if let Some(&bad) = values.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::OutOfRange {
                value: bad as i64,
                low: 1,
                high: n as i64,
            });
        }
        Ok(IntVector { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

impl From<&Permutation> for IntVector {
    fn from(p: &Permutation) -> Self {
        IntVector {
            values: p.values().to_vec(),
        }
    }
}

impl AsRef<[u32]> for IntVector {
    fn as_ref(&self) -> &[u32] {
        &self.values
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

impl FromStr for IntVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntVector::new(parse_values(s)?)
    }
}

/// The two-neighbor constraint extended to vectors of `H_n`.
pub fn satisfies_two_neighbor_vector(x: &IntVector, k: u32) -> bool {
    Constraint { kind: ConstraintKind::TwoNeighbor, k }.holds(x.values())
}
