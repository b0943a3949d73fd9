use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Largest participant index a subset may hold.
pub const MAX_PARTICIPANTS: usize = 5;

/// A set of participant indices drawn from `1..=5`, stored as a bitmask
/// where participant `i` occupies bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ShareSubset {
    mask: u8,
}

impl ShareSubset {
    pub const EMPTY: ShareSubset = ShareSubset { mask: 0 };

    /// Builds a subset, rejecting duplicates and indices outside `1..=5`.
    pub fn new(members: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &m in members {
            if !(1..=MAX_PARTICIPANTS).contains(&m) {
                return Err(domain(format!(
                    "participant {m} outside 1..={MAX_PARTICIPANTS}"
                )));
            }
            let bit = 1 << (m - 1);
            if mask & bit != 0 {
                return Err(domain(format!("participant {m} listed twice")));
            }
            mask |= bit;
        }
        Ok(Self { mask })
    }

    pub fn from_mask(mask: u8) -> Result<Self> {
        if mask >> MAX_PARTICIPANTS != 0 {
            return Err(domain(format!("mask {mask:#b} names participants beyond {MAX_PARTICIPANTS}")));
        }
        Ok(Self { mask })
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Result<Self> {
        if n > MAX_PARTICIPANTS {
            return Err(domain(format!("{n} participants exceeds {MAX_PARTICIPANTS}")));
        }
        Ok(Self { mask: ((1u16 << n) - 1) as u8 })
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, member: usize) -> bool {
        (1..=MAX_PARTICIPANTS).contains(&member) && self.mask & (1 << (member - 1)) != 0
    }

    /// Members in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        (1..=MAX_PARTICIPANTS).filter(move |&i| self.mask & (1 << (i - 1)) != 0)
    }

    pub fn max_member(self) -> Option<usize> {
        self.members().last()
    }

    /// `{1..n} \ self`.
    pub fn complement(self, n: usize) -> Result<Self> {
        let full = Self::full(n)?;
        Ok(Self { mask: full.mask & !self.mask })
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self { mask: self.mask | other.mask }
    }

    /// All nonempty subsets of `{1..n}`, ordered by size then lexicographically
    /// by member list.
    pub fn all_nonempty(n: usize) -> Result<Vec<Self>> {
        let full = Self::full(n)?;
        let mut all: Vec<Self> = (1..=full.mask)
            .map(|mask| Self { mask })
            .collect();
        all.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members().cmp(b.members()))
        });
        Ok(all)
    }
}

impl fmt::Display for ShareSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ShareSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShareSubset{self}")
    }
}

/// Accepts `1,2,3`, `{1,2,3}` or `1 2 3`.
impl FromStr for ShareSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let members = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad participant index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&members).map_err(|e| match e {
            Error::Domain(msg) => Error::Parse(msg),
            other => other,
        })
    }
}

impl Serialize for ShareSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}
