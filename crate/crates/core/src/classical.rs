//! Classical side of the comparison: the share-size lower bound
//! `q̄ ≥ n − k + 2` and an exhaustive search over linear GF(2) schemes with
//! one-bit shares.
//!
//! Only linear schemes are searched. A linear scheme gives share `i` the bit
//! `a_i·s ⊕ ⟨b_i, r⟩` for secret bit `s` and uniform randomness `r ∈ GF(2)^m`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};
use crate::subset::{ShareSubset, MAX_PARTICIPANTS};

/// Largest number of randomness bits a scheme may use.
pub const MAX_RANDOMNESS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdParams {
    n: usize,
    k: usize,
    share_sizes: Vec<u64>,
}

impl ThresholdParams {
    pub fn new(n: usize, k: usize, share_sizes: Vec<u64>) -> Result<Self> {
        if !(1 <= k && k <= n) {
            return Err(domain(format!("threshold k = {k} outside 1..={n}")));
        }
        if share_sizes.len() != n {
            return Err(domain(format!(
                "{} share sizes given for {n} participants",
                share_sizes.len()
            )));
        }
        if let Some(bad) = share_sizes.iter().find(|&&q| q < 2) {
            return Err(domain(format!("share alphabet size {bad} is below 2")));
        }
        Ok(Self { n, k, share_sizes })
    }

    /// Every participant receives one bit.
    pub fn binary(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, vec![2; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn share_sizes(&self) -> &[u64] {
        &self.share_sizes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub mean_share_size: f64,
    /// `n − k + 2`.
    pub required: u64,
    pub satisfied: bool,
    /// The bound only constrains schemes with some privacy, i.e. `k ≥ 2`;
    /// with `k = 1` every share may simply be a copy of the secret.
    pub applies: bool,
}

/// Compares the arithmetic mean of the share alphabet sizes against `n − k + 2`.
pub fn check_bound(p: &ThresholdParams) -> BoundReport {
    let mean = p.share_sizes.iter().map(|&q| q as f64).sum::<f64>() / p.n as f64;
    let required = (p.n - p.k + 2) as u64;
    BoundReport {
        mean_share_size: mean,
        required,
        satisfied: mean >= required as f64,
        applies: p.k >= 2,
    }
}

/// A linear scheme over GF(2). Share vector bit 0 is the secret coefficient
/// `a_i`; bits `1..=m` are the randomness coefficients `b_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearScheme {
    randomness: usize,
    vectors: Vec<u8>,
}

impl LinearScheme {
    pub fn new(randomness: usize, vectors: Vec<u8>) -> Result<Self> {
        if randomness > MAX_RANDOMNESS {
            return Err(domain(format!(
                "{randomness} randomness bits exceeds {MAX_RANDOMNESS}"
            )));
        }
        if vectors.is_empty() || vectors.len() > MAX_PARTICIPANTS {
            return Err(domain(format!(
                "scheme needs 1..={MAX_PARTICIPANTS} shares, got {}",
                vectors.len()
            )));
        }
        if let Some(v) = vectors.iter().find(|&&v| v >> (randomness + 1) != 0) {
            return Err(domain(format!(
                "share vector {v:#b} is longer than {} bits",
                randomness + 1
            )));
        }
        Ok(Self { randomness, vectors })
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn randomness(&self) -> usize {
        self.randomness
    }

    pub fn vectors(&self) -> &[u8] {
        &self.vectors
    }

    /// The share bits for secret `s` and randomness `r` (bit `j − 1` of `r`
    /// is `r_j`).
    pub fn shares(&self, s: u8, r: u8) -> Vec<u8> {
        let input = (s & 1) | (r << 1);
        self.vectors
            .iter()
            .map(|&v| ((v & input).count_ones() % 2) as u8)
            .collect()
    }

    fn format_vector(&self, v: u8) -> String {
        let mut out = String::with_capacity(self.randomness + 2);
        out.push(if v & 1 == 1 { '1' } else { '0' });
        out.push('|');
        for j in 1..=self.randomness {
            out.push(if v >> j & 1 == 1 { '1' } else { '0' });
        }
        out
    }
}

impl fmt::Debug for LinearScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.vectors.iter().map(|&v| self.format_vector(v)))
            .finish()
    }
}

/// Serialized as `a|b1..bm` strings, one per share.
impl Serialize for LinearScheme {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vectors.iter().map(|&v| self.format_vector(v)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubsetStatus {
    Qualified,
    Unqualified,
}

/// Whether `target` lies in the GF(2) span of `columns`.
fn in_span(columns: &mut [u8], target: u8) -> bool {
    let mut target = target;
    let mut rank = 0;
    for bit in (0..8).rev() {
        let mask = 1u8 << bit;
        let Some(pivot) = (rank..columns.len()).find(|&c| columns[c] & mask != 0) else {
            continue;
        };
        columns.swap(rank, pivot);
        let p = columns[rank];
        for (c, col) in columns.iter_mut().enumerate() {
            if c != rank && *col & mask != 0 {
                *col ^= p;
            }
        }
        if target & mask != 0 {
            target ^= p;
        }
        rank += 1;
    }
    target == 0
}

/// Qualified iff `(a_i)_{i∈b}` is outside the column span of the randomness
/// block `(b_i)_{i∈b}`. `members` lists share indices from 0.
fn qualified(vectors: &[u8], randomness: usize, members: u8) -> bool {
    let rows: Vec<u8> = (0..vectors.len())
        .filter(|&i| members & (1 << i) != 0)
        .map(|i| vectors[i])
        .collect();
    let pack = |bit: usize| {
        rows.iter()
            .enumerate()
            .fold(0u8, |acc, (row, &v)| acc | ((v >> bit & 1) << row))
    };
    let target = pack(0);
    let mut columns: Vec<u8> = (1..=randomness).map(pack).collect();
    !in_span(&mut columns, target)
}

pub fn scheme_subset_status(sch: &LinearScheme, b: ShareSubset) -> Result<SubsetStatus> {
    if let Some(max) = b.max_member() {
        if max > sch.n() {
            return Err(domain(format!(
                "subset {b} names a share beyond {}",
                sch.n()
            )));
        }
    }
    Ok(if qualified(&sch.vectors, sch.randomness, b.mask()) {
        SubsetStatus::Qualified
    } else {
        SubsetStatus::Unqualified
    })
}

/// Whether `sch` realizes exactly the `(k, n)` threshold access structure.
pub fn realizes_threshold(sch: &LinearScheme, k: usize) -> bool {
    let n = sch.n();
    (1u8..(1 << n)).all(|mask| {
        qualified(&sch.vectors, sch.randomness, mask) == (mask.count_ones() as usize >= k)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Reject a partial assignment as soon as a fully assigned subset has the
    /// wrong status.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { prune: true }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchCounters {
    /// Partial and complete assignments visited.
    pub assignments_examined: u64,
    /// Partial assignments cut off before completion.
    pub pruned: u64,
    /// Complete schemes tested against the threshold structure.
    pub schemes_enumerated: u64,
    /// Complete schemes realizing the threshold structure.
    pub witnesses: u64,
}

impl std::ops::AddAssign for SearchCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.assignments_examined += rhs.assignments_examined;
        self.pruned += rhs.pruned;
        self.schemes_enumerated += rhs.schemes_enumerated;
        self.witnesses += rhs.witnesses;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    pub max_randomness: usize,
    pub pruned_search: bool,
    /// The search covers linear GF(2) schemes only.
    pub scope: &'static str,
    pub found: bool,
    /// First witness in enumeration order: fewest randomness bits, then
    /// share vectors in lexicographic order.
    pub witness: Option<LinearScheme>,
    pub counters: SearchCounters,
}

/// Exhaustive search with pruning enabled.
pub fn search_linear_schemes(n: usize, k: usize, m_max: usize) -> Result<SearchReport> {
    search_linear_schemes_with(n, k, m_max, SearchOptions::default())
}

pub fn search_linear_schemes_with(
    n: usize,
    k: usize,
    m_max: usize,
    options: SearchOptions,
) -> Result<SearchReport> {
    if !(1..=MAX_PARTICIPANTS).contains(&n) {
        return Err(domain(format!("n = {n} outside 1..={MAX_PARTICIPANTS}")));
    }
    if !(1..=n).contains(&k) {
        return Err(domain(format!("k = {k} outside 1..={n}")));
    }
    if m_max > MAX_RANDOMNESS {
        return Err(domain(format!("m_max = {m_max} exceeds {MAX_RANDOMNESS}")));
    }

    let mut counters = SearchCounters::default();
    let mut witness = None;
    for m in 0..=m_max {
        let choices = 1u16 << (m + 1);
        // Each worker owns one value of the first share's vector.
        let parts: Vec<(SearchCounters, Option<Vec<u8>>)> = (0..choices)
            .into_par_iter()
            .map(|first| {
                let mut walker = Walker {
                    n,
                    k,
                    m,
                    prune: options.prune,
                    vectors: Vec::with_capacity(n),
                    counters: SearchCounters::default(),
                    witness: None,
                };
                walker.push(first as u8);
                (walker.counters, walker.witness)
            })
            .collect();
        for (c, w) in parts {
            counters += c;
            if witness.is_none() {
                if let Some(v) = w {
                    witness = Some(LinearScheme::new(m, v)?);
                }
            }
        }
    }
    Ok(SearchReport {
        n,
        k,
        max_randomness: m_max,
        pruned_search: options.prune,
        scope: "linear schemes over GF(2) with one-bit shares",
        found: witness.is_some(),
        witness,
        counters,
    })
}

struct Walker {
    n: usize,
    k: usize,
    m: usize,
    prune: bool,
    vectors: Vec<u8>,
    counters: SearchCounters,
    witness: Option<Vec<u8>>,
}

impl Walker {
    fn push(&mut self, v: u8) {
        self.vectors.push(v);
        self.counters.assignments_examined += 1;
        let depth = self.vectors.len();
        if self.prune && !self.newest_consistent() {
            self.counters.pruned += 1;
        } else if depth == self.n {
            self.counters.schemes_enumerated += 1;
            if self.complete_is_threshold() {
                self.counters.witnesses += 1;
                if self.witness.is_none() {
                    self.witness = Some(self.vectors.clone());
                }
            }
        } else {
            for next in 0..(1u16 << (self.m + 1)) {
                self.push(next as u8);
            }
        }
        self.vectors.pop();
    }

    /// Checks every subset that contains the newest share.
    fn newest_consistent(&self) -> bool {
        let depth = self.vectors.len();
        let newest = 1u8 << (depth - 1);
        (0u8..(1 << (depth - 1))).all(|rest| {
            let mask = rest | newest;
            qualified(&self.vectors, self.m, mask) == (mask.count_ones() as usize >= self.k)
        })
    }

    fn complete_is_threshold(&self) -> bool {
        (1u8..(1 << self.n)).all(|mask| {
            qualified(&self.vectors, self.m, mask) == (mask.count_ones() as usize >= self.k)
        })
    }
}
