use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::BigCount;
use crate::error::{invalid, Error, Result};

/// An ordered sequence `I₁, …, I_r` of disjoint nonempty sets.
///
/// Each part is kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    parts: Vec<Vec<u32>>,
}

impl OrderedPartition {
    /// Validates that `parts` are nonempty, disjoint and cover exactly `ground`.
    pub fn new(parts: Vec<Vec<u32>>, ground: &[u32]) -> Result<Self> {
        let mut ground_sorted = ground.to_vec();
        ground_sorted.sort_unstable();
        let mut all: Vec<u32> = Vec::new();
        let mut parts = parts;
        for p in &mut parts {
            if p.is_empty() {
                return Err(Error::Empty);
            }
            p.sort_unstable();
            all.extend_from_slice(p);
        }
        all.sort_unstable();
        if all != ground_sorted {
            return Err(invalid("parts are not a partition of the ground set"));
        }
        Ok(OrderedPartition { parts })
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// The 1-based part `I_i`, ascending.
    pub fn part(&self, i: usize) -> &[u32] {
        &self.parts[i - 1]
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }
}

/// Stream of all ordered partitions of a ground set into `r` nonempty parts.
///
/// Partitions correspond to surjections `ground → [r]`; those are walked in
/// lexicographic order of the assignment vector, skipping any prefix that can
/// no longer reach every part.
pub struct SetPartitions {
    ground: Vec<u32>,
    r: usize,
    assign: Vec<usize>,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    fn missing(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }

    /// Fills positions `from..` with the smallest feasible assignments.
    fn fill_from(&mut self, from: usize) {
        let g = self.ground.len();
        for pos in from..g {
            let remaining_after = g - pos - 1;
            let missing = self.missing();
            let v = if missing > remaining_after {
                // must hit an uncovered part now
                (0..self.r).find(|&p| self.counts[p] == 0).expect("some part missing")
            } else {
                0
            };
            self.assign[pos] = v;
            self.counts[v] += 1;
        }
    }

    fn advance(&mut self) -> bool {
        let g = self.ground.len();
        for pos in (0..g).rev() {
            let cur = self.assign[pos];
            self.counts[cur] -= 1;
            // positions after `pos` are released too
            for q in pos + 1..g {
                self.counts[self.assign[q]] -= 1;
            }
            let remaining_after = g - pos - 1;
            for v in cur + 1..self.r {
                self.counts[v] += 1;
                if self.missing() <= remaining_after {
                    self.assign[pos] = v;
                    self.fill_from(pos + 1);
                    return true;
                }
                self.counts[v] -= 1;
            }
            // restore the suffix accounting before moving left
            self.counts[cur] += 1;
            for q in pos + 1..g {
                self.counts[self.assign[q]] += 1;
            }
        }
        false
    }

    fn current(&self) -> OrderedPartition {
        let mut parts = vec![Vec::new(); self.r];
        for (&x, &p) in self.ground.iter().zip(&self.assign) {
            parts[p].push(x);
        }
        OrderedPartition { parts }
    }
}

impl Iterator for SetPartitions {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
            self.fill_from(0);
        }
        Some(self.current())
    }
}

/// All ordered partitions of `ground` into `r` nonempty parts; there are
/// `r! · S(|ground|, r)` of them.
pub fn enumerate_set_partitions(ground: &[u32], r: usize) -> Result<SetPartitions> {
    if r < 1 || r > ground.len() {
        return Err(invalid(format!(
            "need 1 <= r <= |ground| = {}, got r = {r}",
            ground.len()
        )));
    }
    let mut sorted = ground.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Duplicate {
            value: sorted.windows(2).find(|w| w[0] == w[1]).expect("checked")[0],
        });
    }
    Ok(SetPartitions {
        assign: vec![0; sorted.len()],
        counts: vec![0; r],
        ground: sorted,
        r,
        started: false,
        done: false,
    })
}

/// Stirling number of the second kind via `S(ℓ,r) = r·S(ℓ−1,r) + S(ℓ−1,r−1)`.
pub fn stirling2(ell: usize, r: usize) -> Result<BigCount> {
    if r > ell {
        return Err(invalid(format!("S({ell}, {r}) needs r <= ell")));
    }
    let mut row = vec![BigUint::zero(); r + 1];
    row[0] = BigUint::one();
    for i in 1..=ell {
        for j in (1..=r.min(i)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(BigCount::new(row[r].clone()))
}

/// `S(ℓ, r)`, zero when `r > ℓ`.
pub(crate) fn stirling2_or_zero(ell: usize, r: usize) -> BigUint {
    stirling2(ell, r).map(BigCount::into_inner).unwrap_or_default()
}
