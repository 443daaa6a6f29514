//! Exact enumeration and counting of constrained permutation sets.
//!
//! Both the streaming enumerator and the counters place `σ(1), σ(2), …` depth
//! first, trying values in increasing order, and reject a candidate as soon
//! as it closes a window that violates the constraint. Output order is
//! therefore lexicographic.

use rayon::prelude::*;

use crate::constraints::Constraint;
use crate::count::{log2_factorial, BigCount, LogValue};
use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;

/// Largest `n` accepted by the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Cap for walks over `S_n`.
    pub enumeration_n: usize,
    /// Cap for scans over all centers in `H_n = [n]^n`.
    pub vector_scan_n: usize,
}

impl Budget {
    pub const DEFAULT_ENUMERATION_N: usize = 13;
    pub const DEFAULT_VECTOR_SCAN_N: usize = 8;

    pub fn with_enumeration_n(mut self, n: usize) -> Self {
        self.enumeration_n = n;
        self
    }

    pub fn with_vector_scan_n(mut self, n: usize) -> Self {
        self.vector_scan_n = n;
        self
    }

    pub fn unlimited() -> Self {
        Budget {
            enumeration_n: MAX_ENUMERATION_N,
            vector_scan_n: usize::MAX,
        }
    }

    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        let budget = self.enumeration_n.min(MAX_ENUMERATION_N);
        if n > budget {
            return Err(Error::BudgetExceeded { n, budget });
        }
        Ok(())
    }

    pub fn check_vector_scan(&self, n: usize) -> Result<()> {
        if n > self.vector_scan_n {
            return Err(Error::BudgetExceeded {
                n,
                budget: self.vector_scan_n,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_n: Self::DEFAULT_ENUMERATION_N,
            vector_scan_n: Self::DEFAULT_VECTOR_SCAN_N,
        }
    }
}

// the used-value mask is a u64 indexed by value
const MAX_ENUMERATION_N: usize = 63;

/// Lexicographic stream of the permutations of `[n]` satisfying a constraint.
pub struct ConstrainedPermutations {
    n: u32,
    constraint: Constraint,
    prefix: Vec<u32>,
    cursor: Vec<u32>,
    used: u64,
    done: bool,
}

impl Iterator for ConstrainedPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.n;
        loop {
            let depth = self.prefix.len();
            if depth == n as usize {
                let out = Permutation::from_vec_unchecked(self.prefix.clone());
                let last = self.prefix.pop().expect("nonempty");
                self.used &= !(1 << last);
                return Some(out);
            }
            let start = self.cursor[depth];
            let found = (start..=n)
                .find(|&v| self.used & (1 << v) == 0 && self.constraint.admits(&self.prefix, v));
            match found {
                Some(v) => {
                    self.cursor[depth] = v + 1;
                    self.prefix.push(v);
                    self.used |= 1 << v;
                    if depth + 1 < n as usize {
                        self.cursor[depth + 1] = 1;
                    }
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    let last = self.prefix.pop().expect("nonempty");
                    self.used &= !(1 << last);
                }
            }
        }
    }
}

/// Streams `{σ ∈ S_n : σ satisfies constraint}` in lexicographic order.
pub fn enumerate_constrained(n: usize, constraint: Constraint) -> Result<ConstrainedPermutations> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    Budget::unlimited().check_enumeration(n)?;
    Ok(ConstrainedPermutations {
        n: n as u32,
        constraint,
        prefix: Vec::with_capacity(n),
        cursor: vec![1; n],
        used: 0,
        done: false,
    })
}

fn count_from(constraint: &Constraint, n: u32, prefix: &mut Vec<u32>, used: u64) -> u64 {
    if prefix.len() == n as usize {
        return 1;
    }
    let mut total = 0;
    for v in 1..=n {
        if used & (1 << v) == 0 && constraint.admits(prefix, v) {
            prefix.push(v);
            total += count_from(constraint, n, prefix, used | (1 << v));
            prefix.pop();
        }
    }
    total
}

fn count_with_first(constraint: &Constraint, n: usize, first: u32) -> u64 {
    let mut prefix = Vec::with_capacity(n);
    prefix.push(first);
    count_from(constraint, n as u32, &mut prefix, 1 << first)
}

/// `|{σ ∈ S_n : σ satisfies constraint}|`, partitioned across threads by `σ(1)`.
pub fn count_constrained(n: usize, constraint: Constraint, budget: &Budget) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    budget.check_enumeration(n)?;
    let parts: Vec<u64> = (1..=n as u32)
        .into_par_iter()
        .map(|first| count_with_first(&constraint, n, first))
        .collect();
    Ok(parts.into_iter().map(BigCount::from).sum())
}

/// Single-threaded variant of [`count_constrained`].
pub fn count_constrained_sequential(
    n: usize,
    constraint: Constraint,
    budget: &Budget,
) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    budget.check_enumeration(n)?;
    let mut prefix = Vec::with_capacity(n);
    Ok(BigCount::from(count_from(&constraint, n as u32, &mut prefix, 0)))
}

/// First value followed by successive differences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffVector(Vec<i64>);

impl DiffVector {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// Partial sums; inverts [`psi`] on its image.
    pub fn reconstruct(&self) -> Result<Permutation> {
        let mut acc = 0i64;
        let mut values = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            acc += x;
            if acc < 1 || acc > u32::MAX as i64 {
                return Err(Error::OutOfRange {
                    value: acc,
                    low: 1,
                    high: self.0.len() as i64,
                });
            }
            values.push(acc as u32);
        }
        Permutation::new(values)
    }

    /// How many of `x₂, …, x_n` lie in `[−k, k] \ {0}`.
    pub fn small_steps(&self, k: u32) -> usize {
        self.0
            .iter()
            .skip(1)
            .filter(|&&x| x != 0 && x.unsigned_abs() <= k as u64)
            .count()
    }
}

/// `x₁ = σ(1)`, `x_i = σ(i) − σ(i−1)`.
pub fn psi(sigma: &Permutation) -> DiffVector {
    let v = sigma.values();
    let mut out = Vec::with_capacity(v.len());
    out.push(v[0] as i64);
    out.extend(v.windows(2).map(|w| w[1] as i64 - w[0] as i64));
    DiffVector(out)
}

/// `log₂(4^{n−1} · k^{n/2} · n^{n/2+1})`, the two-neighbor upper bound.
pub fn upper_bound_a_log(n: usize, k: u32) -> Result<LogValue> {
    if k == 0 || k as usize >= n {
        return Err(invalid(format!("need 1 <= k < n, got n={n} k={k}")));
    }
    let nf = n as f64;
    let log = 2.0 * (nf - 1.0) + (nf / 2.0) * (k as f64).log2() + (nf / 2.0 + 1.0) * nf.log2();
    Ok(LogValue::new(log))
}

/// `log₂(count) / log₂(n!)`.
pub fn capacity_ratio(count: &BigCount, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid("capacity ratio needs n >= 2 (log n! = 0 otherwise)"));
    }
    let log_count = count.log2()?;
    Ok(log_count.value() / log2_factorial(n as u64))
}
