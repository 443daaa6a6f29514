//! Permutations, balanced multi-permutations and their composition.
//!
//! All public positions and values are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a bijection on `[n]`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::OutOfRange {
                    value: v as i64,
                    low: 1,
                    high: n as i64,
                });
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::Duplicate { value: v });
            }
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity needs n >= 1");
        Permutation {
            values: (1..=n as u32).collect(),
        }
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

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// `σ(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// The inverse permutation: `σ⁻¹(σ(i)) = i`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values: inv }
    }

    /// Positions read right to left.
    pub fn reversed(&self) -> Permutation {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    /// Values mapped by `v ↦ n + 1 − v`.
    pub fn complement(&self) -> Permutation {
        let n1 = self.len() as u32 + 1;
        Permutation {
            values: self.values.iter().map(|&v| n1 - v).collect(),
        }
    }

    /// Number of pairs `i < j` with `σ(i) > σ(j)`, by merge counting.
    pub fn inversions(&self) -> u64 {
        count_inversions(&self.values)
    }

    /// 0-based position in the lexicographic order of `S_n`, for `n ≤ 20`.
    pub fn lex_rank(&self) -> Option<u64> {
        let n = self.len();
        if n > 20 {
            return None;
        }
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_later = self.values[i + 1..]
                .iter()
                .filter(|&&v| v < self.values[i])
                .count() as u64;
            rank = rank * (n - i) as u64 + smaller_later;
        }
        Some(rank)
    }
}

/// Rearranges `values` into the next lexicographically larger arrangement.
/// Returns `false` (leaving `values` sorted ascending) after the last one.
/// Repeated entries are handled, so this walks multi-set permutations too.
pub(crate) fn next_permutation(values: &mut [u32]) -> bool {
    let len = values.len();
    if len < 2 {
        return false;
    }
    let mut i = len - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        values.reverse();
        return false;
    }
    let mut j = len - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

pub(crate) fn count_inversions(values: &[u32]) -> u64 {
    fn sort_count(buf: &mut [u32], scratch: &mut [u32]) -> u64 {
        let len = buf.len();
        if len < 2 {
            return 0;
        }
        let mid = len / 2;
        let mut inv = {
            let (left, right) = buf.split_at_mut(mid);
            let (sl, sr) = scratch.split_at_mut(mid);
            sort_count(left, sl) + sort_count(right, sr)
        };
        let (mut i, mut j, mut out) = (0, mid, 0);
        while i < mid && j < len {
            if buf[i] <= buf[j] {
                scratch[out] = buf[i];
                i += 1;
            } else {
                scratch[out] = buf[j];
                inv += (mid - i) as u64;
                j += 1;
            }
            out += 1;
        }
        scratch[out..out + mid - i].copy_from_slice(&buf[i..mid]);
        out += mid - i;
        scratch[out..out + len - j].copy_from_slice(&buf[j..len]);
        buf.copy_from_slice(&scratch[..len]);
        inv
    }
    let mut buf = values.to_vec();
    let mut scratch = vec![0; values.len()];
    sort_count(&mut buf, &mut scratch)
}

impl AsRef<[u32]> for Permutation {
    fn as_ref(&self) -> &[u32] {
        &self.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_values(s)?)
    }
}

pub(crate) fn write_values(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn parse_values(s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("not a positive integer: {tok:?}")))
        })
        .collect()
}

/// An arrangement of the balanced multi-set `{1^m, …, ℓ^m}`.
///
/// The occurrence index of every position is materialized at construction:
/// position `j` holds the `r`-th occurrence of symbol `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPermutation {
    ell: usize,
    m: usize,
    values: Vec<u32>,
    occurrence: Vec<u32>,
}

impl MultiPermutation {
    pub fn new(ell: usize, m: usize, values: Vec<u32>) -> Result<Self> {
        if ell == 0 || m == 0 {
            return Err(invalid("ell and m must be positive"));
        }
        if values.len() != ell * m {
            return Err(Error::Dimension {
                n: values.len(),
                ell,
                m,
            });
        }
        let mut seen = vec![0u32; ell + 1];
        let mut occurrence = Vec::with_capacity(values.len());
        for &v in &values {
            if v == 0 || v as usize > ell {
                return Err(Error::OutOfRange {
                    value: v as i64,
                    low: 1,
                    high: ell as i64,
                });
            }
            seen[v as usize] += 1;
            occurrence.push(seen[v as usize]);
        }
        for (symbol, &found) in seen.iter().enumerate().skip(1) {
            if found as usize != m {
                return Err(Error::Multiplicity {
                    symbol: symbol as u32,
                    found: found as usize,
                    expected: m,
                });
            }
        }
        Ok(MultiPermutation {
            ell,
            m,
            values,
            occurrence,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `(i, r)` such that position `j` (1-based) holds `i_r`.
    pub fn occurrence(&self, j: usize) -> (u32, u32) {
        (self.values[j - 1], self.occurrence[j - 1])
    }

    /// Parses the two-line text form: `ell=<ℓ> m=<m>` followed by the values.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let fields = crate::text::parse_header(header)?;
        let ell = crate::text::header_usize(&fields, "ell")?;
        let m = crate::text::header_usize(&fields, "m")?;
        let body = lines
            .next()
            .ok_or_else(|| Error::Parse("missing values line".into()))?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after values".into()));
        }
        MultiPermutation::new(ell, m, parse_values(body)?)
    }

    pub fn to_text(&self) -> String {
        format!("ell={} m={}\n{}\n", self.ell, self.m, ValuesDisplay(&self.values))
    }
}

struct ValuesDisplay<'a>(&'a [u32]);

impl fmt::Display for ValuesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, self.0)
    }
}

impl fmt::Display for MultiPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

/// A permutation of the block interval `[(i−1)m+1, i·m]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockPermutation {
    block: u32,
    values: Vec<u32>,
}

impl BlockPermutation {
    pub fn new(block: u32, values: Vec<u32>) -> Result<Self> {
        if block == 0 {
            return Err(invalid("block index is 1-based"));
        }
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let m = values.len() as u32;
        let (low, high) = ((block - 1) * m + 1, block * m);
        let mut seen = vec![false; m as usize];
        for &v in &values {
            if v < low || v > high || std::mem::replace(&mut seen[(v - low) as usize], true) {
                return Err(Error::BlockInterval { block, low, high });
            }
        }
        Ok(BlockPermutation { block, values })
    }

    pub fn block(&self) -> u32 {
        self.block
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `γ(r)` for 1-based `r`.
    pub fn image(&self, r: u32) -> u32 {
        self.values[r as usize - 1]
    }
}

/// `ρ(γ₁, …, γ_ℓ)`: position `j` receives `γ_i(r)` where `ρ(j) = i_r`.
pub fn compose(rho: &MultiPermutation, blocks: &[BlockPermutation]) -> Result<Permutation> {
    if blocks.len() != rho.ell() {
        return Err(Error::BlockCount {
            expected: rho.ell(),
            found: blocks.len(),
        });
    }
    for (idx, b) in blocks.iter().enumerate() {
        let block = idx as u32 + 1;
        if b.block() != block || b.m() != rho.m() {
            let m = rho.m() as u32;
            return Err(Error::BlockInterval {
                block,
                low: (block - 1) * m + 1,
                high: block * m,
            });
        }
    }
    let values = rho
        .values
        .iter()
        .zip(&rho.occurrence)
        .map(|(&i, &r)| blocks[i as usize - 1].image(r))
        .collect();
    Ok(Permutation::from_vec_unchecked(values))
}

/// Splits `σ ∈ S_{ℓm}` into the unique `(ρ, γ₁, …, γ_ℓ)` with `ρ(γ₁, …, γ_ℓ) = σ`.
pub fn decompose(
    sigma: &Permutation,
    ell: usize,
    m: usize,
) -> Result<(MultiPermutation, Vec<BlockPermutation>)> {
    if ell == 0 || m == 0 || sigma.len() != ell * m {
        return Err(Error::Dimension {
            n: sigma.len(),
            ell,
            m,
        });
    }
    let m32 = m as u32;
    let mut rho = Vec::with_capacity(sigma.len());
    let mut gammas: Vec<Vec<u32>> = vec![Vec::with_capacity(m); ell];
    for &v in sigma.values() {
        let block = (v - 1) / m32;
        rho.push(block + 1);
        gammas[block as usize].push(v);
    }
    let rho = MultiPermutation::new(ell, m, rho)?;
    let blocks = gammas
        .into_iter()
        .enumerate()
        .map(|(i, g)| BlockPermutation::new(i as u32 + 1, g))
        .collect::<Result<Vec<_>>>()?;
    Ok((rho, blocks))
}

/// Interior positions `i` with `σ(i−1) > σ(i) < σ(i+1)`.
pub fn valleys(sigma: &Permutation) -> Vec<usize> {
    valleys_of(sigma.values())
}

pub(crate) fn valleys_of(values: &[u32]) -> Vec<usize> {
    values
        .windows(3)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1] && w[1] < w[2])
        .map(|(i, _)| i + 2)
        .collect()
}

/// Interior positions `i` with `σ(i−1) < σ(i) > σ(i+1)`.
pub fn peaks(sigma: &Permutation) -> Vec<usize> {
    sigma
        .values()
        .windows(3)
        .enumerate()
        .filter(|(_, w)| w[0] < w[1] && w[1] > w[2])
        .map(|(i, _)| i + 2)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// The elements of a set listed in increasing or decreasing order.
pub fn ordered_run(set: &BTreeSet<u32>, direction: Direction) -> Result<Vec<u32>> {
    if set.is_empty() {
        return Err(Error::Empty);
    }
    Ok(match direction {
        Direction::Ascending => set.iter().copied().collect(),
        Direction::Descending => set.iter().rev().copied().collect(),
    })
}
