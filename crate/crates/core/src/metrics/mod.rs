//! Distances on permutations and the sizes of their balls.

mod mahonian;
mod manhattan;

use std::fmt;
use std::str::FromStr;

pub use mahonian::{ball_size_inversion, fitted_ball_constant, mahonian_distribution};
pub use manhattan::{
    ball_members_manhattan, count_space_vectors, manhattan_ball_extremes, space_vectors,
    BallExtremes, VectorSpace,
};

use crate::count::BigCount;
use crate::enumeration::Budget;
use crate::error::{invalid, Error, Result};
use crate::constraints::IntVector;
use crate::perm::{count_inversions, Permutation};

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    Ok(())
}

/// Minimum number of adjacent transpositions taking `sigma` to `pi`.
///
/// Equals the number of value pairs whose relative order differs, i.e. the
/// inversion count of `π⁻¹ ∘ σ`.
pub fn kendall_tau(sigma: &Permutation, pi: &Permutation) -> Result<u64> {
    check_lengths(sigma.len(), pi.len())?;
    let pi_inv = pi.inverse();
    let relative: Vec<u32> = sigma.values().iter().map(|&v| pi_inv.at(v as usize)).collect();
    Ok(count_inversions(&relative))
}

/// Kendall τ distance between the inverses.
pub fn inversion_distance(sigma: &Permutation, pi: &Permutation) -> Result<u64> {
    check_lengths(sigma.len(), pi.len())?;
    // d_K(σ⁻¹, π⁻¹) = inv(π ∘ σ⁻¹)
    let sigma_inv = sigma.inverse();
    let relative: Vec<u32> = sigma_inv.values().iter().map(|&i| pi.at(i as usize)).collect();
    Ok(count_inversions(&relative))
}

/// `Σ |x_i − y_i|`.
pub fn manhattan<A: AsRef<[u32]>, B: AsRef<[u32]>>(x: A, y: B) -> Result<u64> {
    let (x, y) = (x.as_ref(), y.as_ref());
    check_lengths(x.len(), y.len())?;
    Ok(x.iter().zip(y).map(|(&a, &b)| a.abs_diff(b) as u64).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub manhattan: u64,
    pub inversion: u64,
    /// `½·d_M ≤ d_I ≤ d_M`
    pub holds: bool,
}

pub fn check_sandwich(sigma: &Permutation, pi: &Permutation) -> Result<Sandwich> {
    let dm = manhattan(sigma, pi)?;
    let di = inversion_distance(sigma, pi)?;
    Ok(Sandwich {
        manhattan: dm,
        inversion: di,
        holds: dm <= 2 * di && di <= dm,
    })
}

/// Which permutation distance a code is measured in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Kendall τ on the inverses.
    Inversion,
    Kendall,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Inversion => "inversion",
            Metric::Kendall => "kendall",
        }
    }

    pub fn distance(self, a: &Permutation, b: &Permutation) -> Result<u64> {
        match self {
            Metric::Inversion => inversion_distance(a, b),
            Metric::Kendall => kendall_tau(a, b),
        }
    }

    /// Permutations at distance exactly one from `p`.
    pub(crate) fn neighbors(self, p: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
        let n = p.len();
        let pos = match self {
            Metric::Inversion => {
                let mut pos = vec![0usize; n + 1];
                for (i, &v) in p.iter().enumerate() {
                    pos[v as usize] = i;
                }
                pos
            }
            Metric::Kendall => Vec::new(),
        };
        (0..n.saturating_sub(1)).map(move |i| {
            let mut q = p.to_vec();
            match self {
                // swap the values i+1 and i+2 wherever they sit
                Metric::Inversion => q.swap(pos[i + 1], pos[i + 2]),
                Metric::Kendall => q.swap(i, i + 1),
            }
            q
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inversion" => Ok(Metric::Inversion),
            "kendall" => Ok(Metric::Kendall),
            _ => Err(Error::Parse(format!("unknown metric {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallSpace {
    /// `S_n` under the inversion distance.
    Inversion,
    Manhattan(VectorSpace),
}

/// A ball of radius `radius` in one of the supported spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallSpec {
    pub n: usize,
    pub radius: u64,
    pub space: BallSpace,
}

impl BallSpec {
    pub fn new(n: usize, radius: u64, space: BallSpace) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        let spec = BallSpec { n, radius, space };
        if radius > spec.max_radius() {
            return Err(invalid(format!(
                "radius {radius} exceeds the diameter {}",
                spec.max_radius()
            )));
        }
        Ok(spec)
    }

    pub fn max_radius(&self) -> u64 {
        let n = self.n as u64;
        match self.space {
            BallSpace::Inversion => n * (n - 1) / 2,
            BallSpace::Manhattan(_) => n * (n - 1),
        }
    }

    /// Ball size; inversion balls ignore the center.
    pub fn size(&self, center: Option<&IntVector>, budget: &Budget) -> Result<BigCount> {
        match self.space {
            BallSpace::Inversion => ball_size_inversion(self.n, self.radius),
            BallSpace::Manhattan(space) => {
                let c = center.ok_or_else(|| invalid("Manhattan balls need a center"))?;
                if c.len() != self.n {
                    return Err(Error::LengthMismatch { left: self.n, right: c.len() });
                }
                ball_members_manhattan(space, c, self.radius, budget)
            }
        }
    }
}
