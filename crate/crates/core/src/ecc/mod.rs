//! Error-correcting constrained codes: greedy construction, distance
//! verification, size bounds and capacity surfaces.

mod capacity;
mod clique;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

pub use capacity::{
    capacity_single_asym, capacity_single_sym, capacity_surface_asym, capacity_surface_sym,
    CapacityPoint,
};
pub use crate::metrics::Metric;

use crate::constraints::{Constraint, IntVector};
use crate::constructions::Code;
use crate::count::{factorial, BigCount};
use crate::enumeration::{count_constrained, enumerate_constrained, Budget};
use crate::error::{invalid, Error, Result};
use crate::metrics::{
    ball_size_inversion, count_space_vectors, manhattan_ball_extremes, VectorSpace,
};
use crate::perm::Permutation;
use clique::{max_clique, Bitset};

/// A code together with the minimum distance it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccCode {
    base: Code,
    min_distance: u64,
    metric: Metric,
}

impl EccCode {
    /// Records the claim without checking it; see [`verify_min_distance`].
    pub fn new(base: Code, min_distance: u64, metric: Metric) -> Result<Self> {
        if min_distance == 0 {
            return Err(invalid("minimum distance must be at least 1"));
        }
        Ok(EccCode { base, min_distance, metric })
    }

    pub fn base(&self) -> &Code {
        &self.base
    }

    pub fn into_base(self) -> Code {
        self.base
    }

    pub fn min_distance(&self) -> u64 {
        self.min_distance
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }
}

/// Members of `S_n` satisfying the constraint, in lexicographic order.
pub fn constrained_universe(n: usize, constraint: Constraint, budget: &Budget) -> Result<Vec<Permutation>> {
    budget.check_enumeration(n)?;
    Ok(enumerate_constrained(n, constraint)?.collect())
}

// everything within distance `radius` of `p`
fn ball_around(p: &[u32], radius: u64, metric: Metric) -> Vec<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(p.to_vec());
    let mut frontier = VecDeque::from([(p.to_vec(), 0u64)]);
    while let Some((q, d)) = frontier.pop_front() {
        if d == radius {
            continue;
        }
        for r in metric.neighbors(&q) {
            if seen.insert(r.clone()) {
                frontier.push_back((r, d + 1));
            }
        }
    }
    seen.into_iter().collect()
}

/// Scans `universe` in order and keeps each permutation whose distance to
/// every kept one is at least `d`.
///
/// The universe must be strictly increasing lexicographically. When balls of
/// radius `d − 1` are smaller than the universe, kept words mark their balls
/// and later candidates are a hash lookup; otherwise each candidate is
/// compared against the kept set in parallel.
pub fn greedy_code(
    universe: impl IntoIterator<Item = Permutation>,
    constraint: Constraint,
    d: u64,
    metric: Metric,
) -> Result<EccCode> {
    if d == 0 {
        return Err(invalid("minimum distance must be at least 1"));
    }
    let words: Vec<Permutation> = universe.into_iter().collect();
    let n = words.first().ok_or(Error::Empty)?.len();
    for w in words.windows(2) {
        if w[0].len() != w[1].len() {
            return Err(Error::LengthMismatch { left: w[0].len(), right: w[1].len() });
        }
        if w[0] >= w[1] {
            return Err(invalid("universe must be in strictly increasing lexicographic order"));
        }
    }
    let ball = ball_size_inversion(n, d - 1)?;
    let marking = ball.to_u64().is_some_and(|b| b <= words.len() as u64);
    let mut kept: Vec<Permutation> = Vec::new();
    if marking {
        let mut covered: HashSet<Vec<u32>> = HashSet::new();
        for w in words {
            if covered.contains(w.values()) {
                continue;
            }
            covered.extend(ball_around(w.values(), d - 1, metric));
            kept.push(w);
        }
    } else {
        for w in words {
            let clash = kept
                .par_iter()
                .any(|c| metric.distance(c, &w).expect("equal lengths") < d);
            if !clash {
                kept.push(w);
            }
        }
    }
    let base = Code::new(n, constraint, format!("greedy(n={n},d={d},metric={metric})"), kept)?;
    EccCode::new(base, d, metric)
}

/// Pairwise comparison without the ball shortcut; the reference for [`greedy_code`].
pub fn greedy_code_pairwise(
    universe: impl IntoIterator<Item = Permutation>,
    constraint: Constraint,
    d: u64,
    metric: Metric,
) -> Result<EccCode> {
    if d == 0 {
        return Err(invalid("minimum distance must be at least 1"));
    }
    let mut kept: Vec<Permutation> = Vec::new();
    for w in universe {
        if kept.iter().all(|c| metric.distance(c, &w).map(|x| x >= d).unwrap_or(false)) {
            kept.push(w);
        }
    }
    let n = kept.first().ok_or(Error::Empty)?.len();
    let base = Code::new(n, constraint, format!("greedy(n={n},d={d},metric={metric})"), kept)?;
    EccCode::new(base, d, metric)
}

/// Two codewords closer than the claimed distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceWitness {
    pub first: Permutation,
    pub second: Permutation,
    pub distance: u64,
}

/// Exact all-pairs check; returns the lexicographically first violating pair.
pub fn verify_min_distance(code: &EccCode) -> Option<DistanceWitness> {
    let words: Vec<&Permutation> = code.base.iter().collect();
    let (d, metric) = (code.min_distance, code.metric);
    (0..words.len()).into_par_iter().find_map_first(|i| {
        words[i + 1..].iter().find_map(|w| {
            let dist = metric.distance(words[i], w).expect("code members share n");
            (dist < d).then(|| DistanceWitness {
                first: words[i].clone(),
                second: (*w).clone(),
                distance: dist,
            })
        })
    })
}

fn two_neighbor_count(n: usize, k: u32, budget: &Budget) -> Result<BigCount> {
    count_constrained(n, Constraint::two_neighbor(k)?, budget)
}

fn check_nd(n: usize, d: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if d == 0 {
        return Err(invalid("minimum distance must be at least 1"));
    }
    Ok(())
}

fn ratio(num: &BigCount, den: &BigCount) -> BigRational {
    BigRational::new(BigInt::from(num.value().clone()), BigInt::from(den.value().clone()))
}

/// `|A_{n,k}| / b_I(n, d−1)`.
pub fn gv_lower_bound(n: usize, k: u32, d: u64, budget: &Budget) -> Result<BigRational> {
    check_nd(n, d)?;
    let a = two_neighbor_count(n, k, budget)?;
    Ok(ratio(&a, &ball_size_inversion(n, d - 1)?))
}

/// A bound divided by an extremal Manhattan ball, with the center attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallBound {
    pub value: BigRational,
    pub radius: u64,
    pub ball: BigCount,
    pub center: IntVector,
}

/// `|𝒜_{n,k}|` over the smallest radius-`⌊(d−1)/2⌋` Manhattan ball in `𝒜_{n,k}`.
pub fn sphere_packing_bound(n: usize, k: u32, d: u64, budget: &Budget) -> Result<BallBound> {
    check_nd(n, d)?;
    let space = VectorSpace::TwoNeighbor { k };
    let total = count_space_vectors(space, n, budget)?;
    let radius = (d - 1) / 2;
    let ext = manhattan_ball_extremes(space, n, radius, budget)?;
    Ok(BallBound {
        value: ratio(&total, &ext.min),
        radius,
        ball: ext.min,
        center: ext.argmin,
    })
}

/// `|A_{n,k}|` over the largest radius-`(2d−1)` Manhattan ball in `𝒜_{n,k}`.
pub fn gv_manhattan_lower_bound(n: usize, k: u32, d: u64, budget: &Budget) -> Result<BallBound> {
    check_nd(n, d)?;
    budget.check_vector_scan(n)?;
    let a = two_neighbor_count(n, k, budget)?;
    let radius = 2 * d - 1;
    let ext = manhattan_ball_extremes(VectorSpace::TwoNeighbor { k }, n, radius, budget)?;
    Ok(BallBound {
        value: ratio(&a, &ext.max),
        radius,
        ball: ext.max,
        center: ext.argmax,
    })
}

/// Largest universe accepted by [`max_code_size_exhaustive`].
pub const MAX_CLIQUE_VERTICES: usize = 512;

/// A largest code with minimum distance `d` inside the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMaximum {
    pub code: EccCode,
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
}

/// `E` for an explicit universe, by maximum clique in the graph joining
/// permutations at distance `≥ d`.
pub fn max_code_size_exhaustive(
    universe: &[Permutation],
    constraint: Constraint,
    d: u64,
    metric: Metric,
) -> Result<ExactMaximum> {
    if universe.len() > MAX_CLIQUE_VERTICES {
        return Err(invalid(format!(
            "universe of {} exceeds the clique search cap of {MAX_CLIQUE_VERTICES}",
            universe.len()
        )));
    }
    let greedy = greedy_code_pairwise(universe.iter().cloned(), constraint, d, metric)?;
    let size = universe.len();
    let adj: Vec<Bitset> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut row = Bitset::empty(size);
            for j in 0..size {
                if j != i && metric.distance(&universe[i], &universe[j]).expect("same n") >= d {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let seed: Vec<usize> = universe
        .iter()
        .enumerate()
        .filter(|(_, p)| greedy.base().contains(p))
        .map(|(i, _)| i)
        .collect();
    let n = universe[0].len();
    // on all of S_n, translations act transitively and preserve either metric
    let transitive = factorial(n as u64) == size.into();
    let (best, nodes) = max_clique(&adj, seed, transitive.then_some(0));
    let base = Code::new(
        n,
        constraint,
        format!("max(n={n},d={d},metric={metric})"),
        best.into_iter().map(|i| universe[i].clone()),
    )?;
    Ok(ExactMaximum { code: EccCode::new(base, d, metric)?, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::rational_to_f64;

    fn a_universe(n: usize, k: u32) -> Vec<Permutation> {
        constrained_universe(n, Constraint::two_neighbor(k).unwrap(), &Budget::default()).unwrap()
    }

    fn greedy(n: usize, k: u32, d: u64, metric: Metric) -> EccCode {
        greedy_code(a_universe(n, k), Constraint::two_neighbor(k).unwrap(), d, metric).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn greedy_examples() {
        let u = a_universe(4, 1);
        assert_eq!(u.len(), 18);
        assert_eq!(greedy(4, 1, 1, Metric::Inversion).len(), 18);
        assert!(greedy(4, 1, 2, Metric::Inversion).len() >= 5);
        assert_eq!(greedy(4, 1, 7, Metric::Inversion).len(), 1);
        let c = Constraint::two_neighbor(1).unwrap();
        assert_eq!(greedy_code(Vec::new(), c, 2, Metric::Inversion), Err(Error::Empty));
        assert!(greedy_code(u.clone(), c, 0, Metric::Inversion).is_err());
        let mut shuffled = u;
        shuffled.swap(0, 1);
        assert!(greedy_code(shuffled, c, 2, Metric::Inversion).is_err());
    }

    #[test]
    fn ball_marking_matches_pairwise() {
        for n in 2..=6 {
            for k in 1..n as u32 {
                let c = Constraint::two_neighbor(k).unwrap();
                let u = a_universe(n, k);
                for d in 1..=(n * (n - 1) / 2 + 1) as u64 {
                    for metric in [Metric::Inversion, Metric::Kendall] {
                        let fast = greedy_code(u.clone(), c, d, metric).unwrap();
                        let slow = greedy_code_pairwise(u.clone(), c, d, metric).unwrap();
                        assert_eq!(fast.base().members(), slow.base().members(), "n={n} k={k} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn verification() {
        let g = greedy(5, 2, 3, Metric::Inversion);
        assert_eq!(verify_min_distance(&g), None);
        let c = Constraint::two_neighbor(2).unwrap();
        let single = EccCode::new(
            Code::new(3, c, "one", [Permutation::identity(3)]).unwrap(),
            5,
            Metric::Inversion,
        )
        .unwrap();
        assert_eq!(verify_min_distance(&single), None);
        // add a word one swap away from an existing codeword
        let first = g.base().iter().next().unwrap().clone();
        let mut v = first.values().to_vec();
        let (a, b) = (v.iter().position(|&x| x == 1).unwrap(), v.iter().position(|&x| x == 2).unwrap());
        v.swap(a, b);
        let near = Permutation::new(v).unwrap();
        let mut members: Vec<Permutation> = g.base().iter().cloned().collect();
        members.push(near.clone());
        let bad = EccCode::new(Code::new(5, c, "bad", members).unwrap(), 2, Metric::Inversion).unwrap();
        let w = verify_min_distance(&bad).expect("a close pair exists");
        assert_eq!(w.distance, 1);
        assert!([&w.first, &w.second].contains(&&near));
    }

    #[test]
    fn gv_examples() {
        let b = Budget::default();
        assert_eq!(gv_lower_bound(4, 1, 2, &b).unwrap(), rat(9, 2));
        assert_eq!(gv_lower_bound(4, 1, 1, &b).unwrap(), rat(18, 1));
        assert!(gv_lower_bound(4, 1, 0, &b).is_err());
    }

    #[test]
    fn greedy_meets_gv_and_packing_bounds() {
        let b = Budget::default();
        for n in 2..=7usize {
            for k in 1..n as u32 {
                let u = a_universe(n, k);
                let c = Constraint::two_neighbor(k).unwrap();
                for d in 1..=6u64 {
                    let g = greedy_code(u.clone(), c, d, Metric::Inversion).unwrap();
                    assert_eq!(verify_min_distance(&g), None);
                    let size = BigRational::from_integer(g.len().into());
                    assert!(gv_lower_bound(n, k, d, &b).unwrap() <= size, "n={n} k={k} d={d}");
                    let sp = sphere_packing_bound(n, k, d, &b).unwrap();
                    assert!(size <= sp.value, "n={n} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn packing_bound_examples() {
        let b = Budget::default();
        let total = count_space_vectors(VectorSpace::TwoNeighbor { k: 1 }, 4, &b).unwrap();
        let sp = sphere_packing_bound(4, 1, 1, &b).unwrap();
        assert_eq!(sp.ball, 1);
        assert_eq!(sp.value, ratio(&total, &BigCount::one()));
        let sp3 = sphere_packing_bound(4, 1, 3, &b).unwrap();
        assert_eq!(sp3.radius, 1);
        assert!(BigRational::from_integer(greedy(4, 1, 3, Metric::Inversion).len().into()) <= sp3.value);
        assert!(rational_to_f64(&sp3.value) > 0.0);
        assert!(sphere_packing_bound(9, 1, 3, &b).is_err());
    }

    #[test]
    fn manhattan_gv_examples() {
        let b = Budget::default();
        // 2d − 1 = 13 > n(n−1) = 12 covers the whole space
        let lb = gv_manhattan_lower_bound(4, 1, 7, &b).unwrap();
        let total = count_space_vectors(VectorSpace::TwoNeighbor { k: 1 }, 4, &b).unwrap();
        assert_eq!(lb.ball, total);
        assert_eq!(lb.value, ratio(&BigCount::from(18), &total));
        let lb2 = gv_manhattan_lower_bound(4, 1, 2, &b).unwrap();
        assert_eq!(lb2.radius, 3);
        assert!(lb2.value <= gv_lower_bound(4, 1, 2, &b).unwrap());
    }

    #[test]
    fn exact_maximum_is_bracketed() {
        let b = Budget::default();
        for n in 2..=5usize {
            for k in 1..n as u32 {
                let u = a_universe(n, k);
                let c = Constraint::two_neighbor(k).unwrap();
                for d in 1..=(n * (n - 1) / 2) as u64 {
                    let exact = max_code_size_exhaustive(&u, c, d, Metric::Inversion).unwrap();
                    assert_eq!(verify_min_distance(&exact.code), None);
                    let e = BigRational::from_integer(exact.code.len().into());
                    let g = greedy_code(u.clone(), c, d, Metric::Inversion).unwrap();
                    assert!(g.len() <= exact.code.len());
                    assert!(gv_manhattan_lower_bound(n, k, d, &b).unwrap().value <= e);
                    assert!(gv_lower_bound(n, k, d, &b).unwrap() <= e);
                    assert!(e <= sphere_packing_bound(n, k, d, &b).unwrap().value, "n={n} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn exact_maximum_small_cases() {
        // S_3 with d = 2: the even permutations
        let u = a_universe(3, 2);
        let c = Constraint::two_neighbor(2).unwrap();
        assert_eq!(max_code_size_exhaustive(&u, c, 2, Metric::Inversion).unwrap().code.len(), 3);
        assert_eq!(max_code_size_exhaustive(&u, c, 3, Metric::Inversion).unwrap().code.len(), 2);
        assert_eq!(max_code_size_exhaustive(&u, c, 4, Metric::Inversion).unwrap().code.len(), 1);
    }

    #[test]
    fn greedy_size_by_distance() {
        for n in 3..=7usize {
            for k in 1..n as u32 {
                let sizes: Vec<usize> = (1..=(n * (n - 1) / 2 + 1) as u64)
                    .map(|d| greedy(n, k, d, Metric::Inversion).len())
                    .collect();
                assert!(sizes.windows(2).all(|w| w[0] >= w[1]), "n={n} k={k} {sizes:?}");
            }
        }
    }
}
