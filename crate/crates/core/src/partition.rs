//! Integer partitions in canonical (weakly decreasing) form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u8>);

impl Partition {
    /// Sorts the parts into canonical order; zero parts are dropped.
    pub fn new(mut parts: Vec<u8>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u8] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().map(|&p| p as u32).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, part: u8) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// Appends `count` parts equal to one.
    pub fn pad_ones(&self, count: usize) -> Partition {
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, count));
        Partition::new(parts)
    }

    /// Order of the centralizer of a permutation of this cycle type: `prod i^m_i m_i!`.
    pub fn z_order(&self) -> u64 {
        let mut z = 1u64;
        let max = self.0.first().copied().unwrap_or(0);
        for i in 1..=max {
            let m = self.multiplicity(i) as u64;
            z *= (i as u64).pow(m as u32) * (1..=m).product::<u64>();
        }
        z
    }

    /// True when every part is even.
    pub fn all_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    /// Halves every part; only meaningful when [`Partition::all_even`].
    pub fn halve(&self) -> Partition {
        Partition::new(self.0.iter().map(|p| p / 2).collect())
    }

    /// Compact form such as `[2^2,1^2]`.
    pub fn exponent_notation(&self) -> String {
        let mut out = String::from("[");
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let m = self.multiplicity(part);
            if !first {
                out.push(',');
            }
            first = false;
            if m == 1 {
                out.push_str(&part.to_string());
            } else {
                out.push_str(&format!("{part}^{m}"));
            }
            i += m;
        }
        out.push(']');
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exponent_notation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse partition {0:?}")]
pub struct ParsePartitionError(pub String);

impl FromStr for Partition {
    type Err = ParsePartitionError;

    /// Accepts `[2,2,1,1]`, `2,2,1,1` and `[2^2,1^2]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePartitionError(s.to_string());
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| err())?),
                None => (tok, 1),
            };
            let base: u8 = base.parse().map_err(|_| err())?;
            if base == 0 {
                return Err(err());
            }
            parts.extend(std::iter::repeat_n(base, exp));
        }
        if parts.is_empty() {
            return Err(err());
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n`, largest first part first, then reverse-lexicographic.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first as u8);
            rec(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
