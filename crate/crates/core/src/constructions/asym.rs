use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::constraints::Constraint;
use crate::count::factorial;
use crate::error::{invalid, Result};
use crate::perm::Permutation;

use super::partition::{enumerate_set_partitions, stirling2_or_zero, OrderedPartition};
use super::sym::csym_codewords;
use super::Code;

/// Number of interleaved value pairs for `C_r`: `⌊(r−1)/2⌋`.
fn pair_count(r: usize) -> usize {
    (r - 1) / 2
}

/// The value interval partitioned by `C_r`: `[r−1, n]` for even `r`, `[r, n]` for odd `r`.
pub fn cr_ground(n: usize, r: usize) -> Result<(u32, u32)> {
    if r < 1 || 2 * r > n {
        return Err(invalid(format!("need 1 <= r <= n/2, got n={n} r={r}")));
    }
    let low = if r % 2 == 0 { r - 1 } else { r };
    Ok((low as u32, n as u32))
}

// π ranges over C^sym_{2p,1}; with no pairs the only choice is the empty word
fn pair_words(r: usize) -> Vec<Vec<u32>> {
    let len = 2 * pair_count(r);
    if len == 0 {
        return vec![Vec::new()];
    }
    csym_codewords(len, 1)
        .expect("even length, k = 1")
        .map(Permutation::into_values)
        .collect()
}

fn assemble(partition: &OrderedPartition, pi: &[u32], n: usize) -> Vec<u32> {
    let r = partition.r();
    let mut word = Vec::with_capacity(n);
    for j in 0..r / 2 {
        word.extend_from_slice(partition.part(2 * j + 1));
        word.extend(partition.part(2 * j + 2).iter().rev());
        if 2 * j + 1 < pi.len() {
            word.extend_from_slice(&pi[2 * j..2 * j + 2]);
        }
    }
    if r % 2 == 1 {
        word.extend_from_slice(partition.part(r));
    }
    word
}

/// `[I₁↗, I₂↘, π(1), π(2), I₃↗, I₄↘, …]` for one choice of partition and `π`.
pub fn cr_codeword(n: usize, partition: &OrderedPartition, pi: &[u32]) -> Result<Permutation> {
    let r = partition.r();
    let (low, high) = cr_ground(n, r)?;
    let ground: Vec<u32> = (low..=high).collect();
    OrderedPartition::new(partition.parts().to_vec(), &ground)?;
    let expected = 2 * pair_count(r);
    if pi.len() != expected {
        return Err(invalid(format!("π must have length {expected} for r = {r}")));
    }
    if expected > 0 {
        let pi_perm = Permutation::new(pi.to_vec())?;
        let paired = pi_perm
            .values()
            .chunks(2)
            .all(|c| c[0].div_ceil(2) == c[1].div_ceil(2));
        if !paired {
            return Err(invalid("π is not a codeword of C^sym with k = 1"));
        }
    }
    Permutation::new(assemble(partition, pi, n))
}

/// Calls `f` once per generating representation `(partition, π)` of `C_r`,
/// so a codeword reachable in several ways is visited several times.
pub fn for_each_cr_representation(
    n: usize,
    r: usize,
    mut f: impl FnMut(&OrderedPartition, &[u32], Permutation),
) -> Result<()> {
    let (low, high) = cr_ground(n, r)?;
    let ground: Vec<u32> = (low..=high).collect();
    let pis = pair_words(r);
    for partition in enumerate_set_partitions(&ground, r)? {
        for pi in &pis {
            let word = assemble(&partition, pi, n);
            f(&partition, pi, Permutation::from_vec_unchecked(word));
        }
    }
    Ok(())
}

/// `C_r` with duplicate representations stored once.
pub fn build_cr(n: usize, r: usize) -> Result<Code> {
    let mut words = Vec::new();
    for_each_cr_representation(n, r, |_, _, w| words.push(w))?;
    Code::new(n, Constraint::asym_two_neighbor(1)?, format!("Cr(n={n},r={r})"), words)
}

/// `C^asym_n`, the union of `C_r` over `1 ≤ r ≤ ⌊n/2⌋`.
pub fn build_casym(n: usize) -> Result<Code> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let mut words = Vec::new();
    for r in 1..=n / 2 {
        for_each_cr_representation(n, r, |_, _, w| words.push(w))?;
    }
    Code::new(n, Constraint::asym_two_neighbor(1)?, format!("Casym(n={n})"), words)
}

/// Codewords of `C^asym_n` with the number of `(r, partition, π)` triples producing each.
pub fn casym_multiplicities(n: usize) -> Result<BTreeMap<Permutation, usize>> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let mut hits = BTreeMap::new();
    for r in 1..=n / 2 {
        for_each_cr_representation(n, r, |_, _, w| *hits.entry(w).or_insert(0) += 1)?;
    }
    Ok(hits)
}

/// `Σ_{r=1}^{⌊n/2⌋} ½ · r! · S(n − 2⌊(r−1)/2⌋, r) · ⌊(r−1)/2⌋!`, exactly.
pub fn lower_bound_casym(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(invalid("the lower bound is stated for n >= 2"));
    }
    let mut total = BigRational::zero();
    for r in 1..=n / 2 {
        let p = pair_count(r);
        let term = factorial(r as u64) * stirling2_or_zero(n - 2 * p, r) * factorial(p as u64);
        total += BigRational::new(BigInt::from(term), BigInt::from(2));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::satisfies_asym_two_neighbor;
    use crate::perm::valleys;

    #[test]
    fn example_word_from_partition() {
        let ground: Vec<u32> = (5..=15).collect();
        let partition = OrderedPartition::new(
            vec![vec![5, 8, 10], vec![6, 12], vec![7, 15], vec![9, 13], vec![11, 14]],
            &ground,
        )
        .unwrap();
        let sigma = cr_codeword(15, &partition, &[4, 3, 1, 2]).unwrap();
        assert_eq!(
            sigma.values(),
            &[5, 8, 10, 12, 6, 4, 3, 7, 15, 13, 9, 1, 2, 11, 14]
        );
        assert!(satisfies_asym_two_neighbor(&sigma, 1));
        assert_eq!(valleys(&sigma).len(), 2);
        // the alternative split I₁ = {5,8,10,12}, I₂ = {6} gives the same word
        let alt = OrderedPartition::new(
            vec![vec![5, 8, 10, 12], vec![6], vec![7, 15], vec![9, 13], vec![11, 14]],
            &ground,
        )
        .unwrap();
        assert_eq!(cr_codeword(15, &alt, &[4, 3, 1, 2]).unwrap(), sigma);
        assert!(cr_codeword(15, &partition, &[4, 1, 3, 2]).is_err());
        assert!(cr_codeword(14, &partition, &[4, 3, 1, 2]).is_err());
    }

    #[test]
    fn small_codes() {
        let c = build_cr(4, 1).unwrap();
        assert_eq!(c.iter().map(|p| p.values().to_vec()).collect::<Vec<_>>(), vec![vec![1, 2, 3, 4]]);
        let c2 = build_casym(2).unwrap();
        assert!(c2.contains(&Permutation::identity(2)));
        assert!(build_cr(4, 3).is_err());
        assert!(build_cr(4, 0).is_err());
        assert!(build_casym(1).unwrap().is_empty());
    }

    #[test]
    fn casym_members_satisfy_asym_constraint() {
        for n in 2..=9 {
            let code = build_casym(n).unwrap();
            assert!(code.iter().all(|p| satisfies_asym_two_neighbor(p, 1)), "n={n}");
            assert!(code.violations().is_empty());
        }
    }

    #[test]
    fn valley_counts_follow_r() {
        for n in 2..=9 {
            for r in 1..=n / 2 {
                let m = (r - 1) / 2;
                for p in build_cr(n, r).unwrap().iter() {
                    assert_eq!(valleys(p).len(), m, "n={n} r={r} {p}");
                }
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound_casym(4).unwrap(), BigRational::new(15.into(), 2.into()));
        assert_eq!(lower_bound_casym(2).unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(lower_bound_casym(1).is_err());
        for n in 2..=9 {
            let size = BigRational::from_integer(build_casym(n).unwrap().len().into());
            assert!(lower_bound_casym(n).unwrap() <= size, "n={n}");
        }
    }

    #[test]
    fn multiplicity_is_bounded() {
        for n in 2..=9 {
            for (w, hits) in casym_multiplicities(n).unwrap() {
                let m = valleys(&w).len();
                assert!(hits <= 1 << (m + 1), "n={n} {w} hit {hits} times with {m} valleys");
            }
        }
    }
}
