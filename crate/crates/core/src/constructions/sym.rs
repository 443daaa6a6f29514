use num_bigint::BigUint;

use crate::constraints::Constraint;
use crate::count::{factorial, BigCount};
use crate::error::{invalid, Result};
use crate::perm::{next_permutation, MultiPermutation, Permutation};

use super::Code;

/// Stream of `D_{ℓ,m}`: multi-permutations of `{1^m, …, ℓ^m}` whose entries
/// agree on every position pair `(2j−1, 2j)`, in lexicographic order.
pub struct PairedMultiPermutations {
    ell: usize,
    m: usize,
    half: Vec<u32>,
    done: bool,
}

impl Iterator for PairedMultiPermutations {
    type Item = MultiPermutation;

    fn next(&mut self) -> Option<MultiPermutation> {
        if self.done {
            return None;
        }
        let doubled = self.half.iter().flat_map(|&s| [s, s]).collect();
        let out = MultiPermutation::new(self.ell, self.m, doubled).expect("balanced by construction");
        self.done = !next_permutation(&mut self.half);
        Some(out)
    }
}

/// `D_{ℓ,m}` for even `m`; its size equals `|P_{ℓ,m/2}| = (ℓm/2)! / ((m/2)!)^ℓ`.
pub fn enumerate_d(ell: usize, m: usize) -> Result<PairedMultiPermutations> {
    if ell == 0 {
        return Err(invalid("ell must be at least 1"));
    }
    if m == 0 || m % 2 != 0 {
        return Err(invalid(format!("m must be a positive even integer, got {m}")));
    }
    let half = (1..=ell as u32)
        .flat_map(|s| std::iter::repeat_n(s, m / 2))
        .collect();
    Ok(PairedMultiPermutations {
        ell,
        m,
        half,
        done: false,
    })
}

fn csym_shape(n: usize, k: u32) -> Result<(usize, usize)> {
    if k == 0 || k % 2 == 0 {
        return Err(invalid(format!("k must be a positive odd integer, got {k}")));
    }
    let m = k as usize + 1;
    if n == 0 || n % m != 0 {
        return Err(invalid(format!("k + 1 = {m} does not divide n = {n}")));
    }
    Ok((n / m, m))
}

/// Streams the codewords of `C^sym_{n,k}` without materializing the set.
///
/// Words are produced in order of `ρ ∈ D_{ℓ,k+1}` (lexicographic), then of
/// the block permutations `γ₁, …, γ_ℓ` (odometer, last block fastest).
pub struct CsymCodewords {
    rhos: PairedMultiPermutations,
    rho: Option<MultiPermutation>,
    gammas: Vec<Vec<u32>>,
}

impl CsymCodewords {
    fn advance_gammas(&mut self) -> bool {
        for g in self.gammas.iter_mut().rev() {
            if next_permutation(g) {
                return true;
            }
        }
        false
    }
}

impl Iterator for CsymCodewords {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let rho = self.rho.as_ref()?;
        // ρ(γ₁, …, γ_ℓ): position j takes γ_i(r) where ρ(j) = i_r
        let word = (1..=rho.len())
            .map(|j| {
                let (i, r) = rho.occurrence(j);
                self.gammas[i as usize - 1][r as usize - 1]
            })
            .collect();
        if !self.advance_gammas() {
            self.rho = self.rhos.next();
        }
        Some(Permutation::from_vec_unchecked(word))
    }
}

pub fn csym_codewords(n: usize, k: u32) -> Result<CsymCodewords> {
    let (ell, m) = csym_shape(n, k)?;
    let mut rhos = enumerate_d(ell, m)?;
    let rho = rhos.next();
    let gammas = (0..ell as u32)
        .map(|b| (b * m as u32 + 1..=(b + 1) * m as u32).collect())
        .collect();
    Ok(CsymCodewords { rhos, rho, gammas })
}

/// `C^sym_{n,k}` for odd `k` with `(k+1) | n`.
pub fn build_csym(n: usize, k: u32) -> Result<Code> {
    let words = csym_codewords(n, k)?;
    Code::new(
        n,
        Constraint::two_neighbor(k)?,
        format!("Csym(n={n},k={k})"),
        words,
    )
}

/// `(n/2)! · (k+1)!^ℓ / ((k+1)/2)!^ℓ` with `ℓ = n/(k+1)`.
pub fn cardinality_csym(n: usize, k: u32) -> Result<BigCount> {
    let (ell, m) = csym_shape(n, k)?;
    let num = factorial(n as u64 / 2) * factorial(m as u64).pow(ell as u32);
    let den: BigUint = factorial(m as u64 / 2).pow(ell as u32);
    Ok(BigCount::new(num / den))
}
