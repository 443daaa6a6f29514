use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::{log2_biguint, BigCount};
use crate::error::{invalid, Result};

/// Coefficients of `∏_{i=1}^{n} (1 + q + … + q^{i−1})` up to degree `max_degree`:
/// the number of permutations of `[n]` with each inversion count.
fn mahonian_truncated(n: usize, max_degree: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let deg = (row.len() - 1 + i - 1).min(max_degree);
        let mut prefix = Vec::with_capacity(row.len() + 1);
        prefix.push(BigUint::zero());
        for c in &row {
            let next = prefix.last().expect("seeded") + c;
            prefix.push(next);
        }
        // new[d] = Σ_{j = d−i+1}^{d} row[j]
        let next: Vec<BigUint> = (0..=deg)
            .map(|d| {
                let hi = d.min(row.len() - 1) + 1;
                let lo = (d + 1).saturating_sub(i);
                if lo >= hi {
                    BigUint::zero()
                } else {
                    &prefix[hi] - &prefix[lo]
                }
            })
            .collect();
        row = next;
    }
    row
}

/// Number of permutations of `[n]` with `0, 1, …, n(n−1)/2` inversions.
pub fn mahonian_distribution(n: usize) -> Vec<BigCount> {
    let max = n * n.saturating_sub(1) / 2;
    mahonian_truncated(n, max).into_iter().map(BigCount::new).collect()
}

/// `b_I(n, r)`: the size of any inversion-distance ball of radius `r` in `S_n`.
/// Radii past the diameter give `n!`.
pub fn ball_size_inversion(n: usize, r: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let max = (n * (n - 1) / 2) as u64;
    let r = r.min(max) as usize;
    Ok(BigCount::new(mahonian_truncated(n, r).into_iter().sum()))
}

/// Smallest `c` with `ln b_I(n, ⌈n^δ⌉) ≤ c·n` over `2 ≤ n ≤ n_max`, i.e.
/// `log₂ b_I ≤ c·n·log₂ e`.
pub fn fitted_ball_constant(n_max: usize, delta: f64) -> Result<f64> {
    if n_max < 2 || !(0.0..=2.0).contains(&delta) {
        return Err(invalid("need n_max >= 2 and 0 <= delta <= 2"));
    }
    let mut best = 0.0f64;
    for n in 2..=n_max {
        let r = (n as f64).powf(delta).ceil() as u64;
        let b = ball_size_inversion(n, r)?;
        let ln_b = log2_biguint(b.value()) * std::f64::consts::LN_2;
        best = best.max(ln_b / n as f64);
    }
    Ok(best)
}
