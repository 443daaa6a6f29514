use rayon::prelude::*;

use crate::constraints::{Constraint, IntVector};
use crate::count::BigCount;
use crate::enumeration::Budget;
use crate::error::{invalid, Error, Result};

/// A subset of `H_n = [n]^n` that Manhattan balls are restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorSpace {
    /// All of `H_n`.
    Full,
    /// Vectors satisfying the two-neighbor `k`-constraint.
    TwoNeighbor { k: u32 },
}

impl VectorSpace {
    pub fn contains(&self, x: &[u32]) -> bool {
        match *self {
            VectorSpace::Full => true,
            VectorSpace::TwoNeighbor { k } => Constraint::two_neighbor(k)
                .map(|c| c.holds(x))
                .unwrap_or(false),
        }
    }

    fn far(&self, a: u32, b: u32) -> bool {
        match *self {
            VectorSpace::Full => false,
            VectorSpace::TwoNeighbor { k } => a.abs_diff(b) > k,
        }
    }

    fn validate(&self) -> Result<()> {
        if let VectorSpace::TwoNeighbor { k: 0 } = self {
            return Err(invalid("constraint threshold k must be at least 1"));
        }
        Ok(())
    }
}

/// Counts `y` in the space with `Σ|x_i − y_i| ≤ radius`.
///
/// Dynamic program over positions with state (last value, whether the last
/// step was wider than `k`, distance so far); two consecutive wide steps
/// would leave the middle position without a close neighbor.
fn ball_count(space: VectorSpace, center: &[u32], radius: usize) -> u128 {
    let n = center.len();
    let mut dp = first_layer(n, center[0], radius);
    for &cx in &center[1..] {
        dp = next_layer(space, n, &dp, cx, radius);
    }
    dp.iter().sum()
}

fn layer_index(width: usize, y: usize, far: usize, d: usize) -> usize {
    (y * 2 + far) * width + d
}

fn first_layer(n: usize, cx: u32, radius: usize) -> Vec<u128> {
    let width = radius + 1;
    let mut dp = vec![0u128; n * 2 * width];
    for y in 0..n {
        let d = cx.abs_diff(y as u32 + 1) as usize;
        if d <= radius {
            dp[layer_index(width, y, 0, d)] = 1;
        }
    }
    dp
}

fn next_layer(space: VectorSpace, n: usize, dp: &[u128], cx: u32, radius: usize) -> Vec<u128> {
    let width = radius + 1;
    let mut next = vec![0u128; dp.len()];
    for y in 0..n {
        for far in 0..2 {
            for d in 0..width {
                let c = dp[layer_index(width, y, far, d)];
                if c == 0 {
                    continue;
                }
                for y2 in 0..n {
                    let nd = d + cx.abs_diff(y2 as u32 + 1) as usize;
                    if nd > radius {
                        continue;
                    }
                    let far2 = space.far(y as u32, y2 as u32) as usize;
                    if far == 1 && far2 == 1 {
                        continue;
                    }
                    next[layer_index(width, y2, far2, nd)] += c;
                }
            }
        }
    }
    next
}

/// `|B_M(space, x, r)|` for a center `x` inside the space.
pub fn ball_members_manhattan(
    space: VectorSpace,
    center: &IntVector,
    radius: u64,
    budget: &Budget,
) -> Result<BigCount> {
    space.validate()?;
    let n = center.len();
    budget.check_vector_scan(n)?;
    if !space.contains(center.values()) {
        return Err(invalid(format!("center {center} is not in the space")));
    }
    let max = (n * (n - 1)) as u64;
    let r = radius.min(max) as usize;
    Ok(count_to_big(ball_count(space, center.values(), r)))
}

fn count_to_big(c: u128) -> BigCount {
    BigCount::new(c.into())
}

/// Number of vectors in the space (`|H_n|` or `|𝒜_{n,k}|`).
pub fn count_space_vectors(space: VectorSpace, n: usize, budget: &Budget) -> Result<BigCount> {
    space.validate()?;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    budget.check_vector_scan(n)?;
    // a ball covering the whole space around the all-ones vector
    let center = vec![1u32; n];
    Ok(count_to_big(ball_count(space, &center, n * (n - 1))))
}

/// All vectors of the space in lexicographic order.
pub fn space_vectors(space: VectorSpace, n: usize, budget: &Budget) -> Result<Vec<IntVector>> {
    space.validate()?;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    budget.check_vector_scan(n)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(space: VectorSpace, n: usize, cur: &mut Vec<u32>, out: &mut Vec<IntVector>) {
        let len = cur.len();
        if len == n {
            out.push(IntVector::new(cur.clone()).expect("entries in [1, n]"));
            return;
        }
        for v in 1..=n as u32 {
            if len >= 2 && space.far(cur[len - 2], cur[len - 1]) && space.far(cur[len - 1], v) {
                continue;
            }
            cur.push(v);
            rec(space, n, cur, out);
            cur.pop();
        }
    }
    rec(space, n, &mut cur, &mut out);
    Ok(out)
}

/// Smallest and largest radius-`r` ball over every center in the space.
/// Ties resolve to the lexicographically first center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallExtremes {
    pub min: BigCount,
    pub argmin: IntVector,
    pub max: BigCount,
    pub argmax: IntVector,
    pub centers: usize,
}

#[derive(Clone)]
struct Extremes {
    min: (u128, Vec<u32>),
    max: (u128, Vec<u32>),
    centers: usize,
}

impl Extremes {
    // `other` covers centers lexicographically after ours
    fn merge(self, other: Extremes) -> Extremes {
        Extremes {
            min: if other.min.0 < self.min.0 { other.min } else { self.min },
            max: if other.max.0 > self.max.0 { other.max } else { self.max },
            centers: self.centers + other.centers,
        }
    }
}

/// Walks the centers depth first so every prefix's DP layer is computed once.
fn scan_subtree(space: VectorSpace, n: usize, radius: usize, first: u32) -> Option<Extremes> {
    fn rec(
        space: VectorSpace,
        n: usize,
        radius: usize,
        cur: &mut Vec<u32>,
        layers: &mut Vec<Vec<u128>>,
        acc: &mut Option<Extremes>,
    ) {
        let len = cur.len();
        if len == n {
            let size: u128 = layers[len - 1].iter().sum();
            match acc {
                None => {
                    *acc = Some(Extremes {
                        min: (size, cur.clone()),
                        max: (size, cur.clone()),
                        centers: 1,
                    })
                }
                Some(e) => {
                    if size < e.min.0 {
                        e.min = (size, cur.clone());
                    }
                    if size > e.max.0 {
                        e.max = (size, cur.clone());
                    }
                    e.centers += 1;
                }
            }
            return;
        }
        for v in 1..=n as u32 {
            if len >= 2 && space.far(cur[len - 2], cur[len - 1]) && space.far(cur[len - 1], v) {
                continue;
            }
            let layer = next_layer(space, n, &layers[len - 1], v, radius);
            cur.push(v);
            layers.push(layer);
            rec(space, n, radius, cur, layers, acc);
            layers.pop();
            cur.pop();
        }
    }
    let mut acc = None;
    let mut cur = vec![first];
    let mut layers = vec![first_layer(n, first, radius)];
    rec(space, n, radius, &mut cur, &mut layers, &mut acc);
    acc
}

pub fn manhattan_ball_extremes(
    space: VectorSpace,
    n: usize,
    radius: u64,
    budget: &Budget,
) -> Result<BallExtremes> {
    space.validate()?;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    budget.check_vector_scan(n)?;
    let r = radius.min((n * (n - 1)) as u64) as usize;
    let parts: Vec<Option<Extremes>> = (1..=n as u32)
        .into_par_iter()
        .map(|first| scan_subtree(space, n, r, first))
        .collect();
    let e = parts
        .into_iter()
        .flatten()
        .reduce(Extremes::merge)
        .ok_or(Error::Empty)?;
    let vector = |v: Vec<u32>| IntVector::new(v).expect("entries in [1, n]");
    Ok(BallExtremes {
        min: count_to_big(e.min.0),
        argmin: vector(e.min.1),
        max: count_to_big(e.max.0),
        argmax: vector(e.max.1),
        centers: e.centers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::satisfies_two_neighbor_vector;
    use crate::metrics::manhattan;

    // depth-first over H_n, cutting any prefix already past the radius
    fn pruned_scan(space: VectorSpace, x: &[u32], r: u64) -> u64 {
        fn rec(space: VectorSpace, x: &[u32], r: u64, cur: &mut Vec<u32>, used: u64) -> u64 {
            let n = x.len();
            if cur.len() == n {
                return space.contains(cur) as u64;
            }
            let mut total = 0;
            for v in 1..=n as u32 {
                let d = used + x[cur.len()].abs_diff(v) as u64;
                if d > r {
                    continue;
                }
                cur.push(v);
                total += rec(space, x, r, cur, d);
                cur.pop();
            }
            total
        }
        rec(space, x, r, &mut Vec::new(), 0)
    }

    fn all_vectors(n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u32>| {
                    (1..=n as u32).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn ball_examples() {
        let b = Budget::default();
        let x = IntVector::new(vec![1, 1]).unwrap();
        assert_eq!(ball_members_manhattan(VectorSpace::Full, &x, 1, &b).unwrap(), 3);
        assert_eq!(ball_members_manhattan(VectorSpace::Full, &x, 0, &b).unwrap(), 1);
        let y = IntVector::new(vec![2, 4, 1, 3]).unwrap();
        let sp = VectorSpace::TwoNeighbor { k: 2 };
        assert_eq!(ball_members_manhattan(sp, &y, 0, &b).unwrap(), 1);
        let bad = IntVector::new(vec![1, 4, 1, 4]).unwrap();
        assert!(ball_members_manhattan(VectorSpace::TwoNeighbor { k: 1 }, &bad, 2, &b).is_err());
        let big = IntVector::new(vec![1; 9]).unwrap();
        assert!(matches!(
            ball_members_manhattan(VectorSpace::Full, &big, 2, &b),
            Err(Error::BudgetExceeded { n: 9, budget: 8 })
        ));
    }

    #[test]
    fn dp_matches_pruned_scan() {
        let b = Budget::default();
        for n in 1..=5usize {
            let vectors = all_vectors(n);
            for k in 1..=n as u32 {
                let sp = VectorSpace::TwoNeighbor { k };
                for x in vectors.iter().step_by(7) {
                    if !sp.contains(x) {
                        continue;
                    }
                    let xv = IntVector::new(x.clone()).unwrap();
                    for r in [0u64, 1, 2, 3, 5, 8] {
                        let dp = ball_members_manhattan(sp, &xv, r, &b).unwrap();
                        let full = ball_members_manhattan(VectorSpace::Full, &xv, r, &b).unwrap();
                        assert_eq!(dp, pruned_scan(sp, x, r), "n={n} k={k} x={x:?} r={r}");
                        assert_eq!(full, pruned_scan(VectorSpace::Full, x, r));
                        assert!(dp <= full);
                    }
                }
            }
        }
    }

    #[test]
    fn dp_matches_direct_definition() {
        let b = Budget::default();
        let n = 4;
        let vectors = all_vectors(n);
        let x = IntVector::new(vec![2, 2, 3, 1]).unwrap();
        for k in 1..=3u32 {
            for r in 0..=6u64 {
                let direct = vectors
                    .iter()
                    .filter(|y| satisfies_two_neighbor_vector(&IntVector::new(y.to_vec()).unwrap(), k))
                    .filter(|y| manhattan(x.values(), y.as_slice()).unwrap() <= r)
                    .count() as u64;
                let sp = VectorSpace::TwoNeighbor { k };
                assert_eq!(ball_members_manhattan(sp, &x, r, &b).unwrap(), direct);
            }
        }
    }

    #[test]
    fn space_sizes() {
        let b = Budget::default();
        for n in 1..=6usize {
            assert_eq!(
                count_space_vectors(VectorSpace::Full, n, &b).unwrap(),
                (n as u64).pow(n as u32)
            );
            for k in 1..=n as u32 {
                let sp = VectorSpace::TwoNeighbor { k };
                let listed = space_vectors(sp, n, &b).unwrap();
                assert_eq!(count_space_vectors(sp, n, &b).unwrap(), listed.len() as u64);
                assert!(listed.iter().all(|x| satisfies_two_neighbor_vector(x, k)));
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn extremes_scan_every_center() {
        let b = Budget::default();
        let sp = VectorSpace::TwoNeighbor { k: 1 };
        let ext = manhattan_ball_extremes(sp, 4, 2, &b).unwrap();
        let sizes: Vec<BigCount> = space_vectors(sp, 4, &b)
            .unwrap()
            .iter()
            .map(|c| ball_members_manhattan(sp, c, 2, &b).unwrap())
            .collect();
        assert_eq!(ext.centers, sizes.len());
        assert_eq!(&ext.min, sizes.iter().min().unwrap());
        assert_eq!(&ext.max, sizes.iter().max().unwrap());
        let centers = space_vectors(sp, 4, &b).unwrap();
        let first_min = sizes.iter().position(|s| s == &ext.min).unwrap();
        let first_max = sizes.iter().position(|s| s == &ext.max).unwrap();
        assert_eq!(ext.argmin, centers[first_min]);
        assert_eq!(ext.argmax, centers[first_max]);
        let full = manhattan_ball_extremes(VectorSpace::Full, 3, 6, &b).unwrap();
        assert_eq!((full.min, full.max, full.centers), (BigCount::from(27), BigCount::from(27), 27));
    }
}
