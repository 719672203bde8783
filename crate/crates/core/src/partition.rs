//! Integer partitions, the padding `λ ↦ λ[n]`, hook lengths and horizontal strips.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{Rational, RationalPolynomial};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `max_size`, grouped by size.
    pub fn up_to(max_size: usize) -> Vec<Partition> {
        (0..=max_size).flat_map(Partition::all).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition {
            parts: (0..cols)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// `z_μ = Π i^{a_i} a_i!`, the centralizer order of the cycle type.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut mult = 0usize;
            while i < self.parts.len() && self.parts[i] == part {
                mult += 1;
                i += 1;
                z *= BigUint::from(part) * BigUint::from(mult);
            }
        }
        z
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j - 1 + conj.part(j) - i - 1 + 1);
            }
        }
        hooks
    }

    /// Dimension of the Specht module, `|μ|! / Π hooks`.
    pub fn hook_dimension(&self) -> BigUint {
        let mut num = BigUint::one();
        for k in 2..=self.size() {
            num *= BigUint::from(k);
        }
        let den: BigUint = self.hook_lengths().into_iter().map(BigUint::from).product();
        num / den
    }

    /// `λ[n] = (n - |λ|, λ_1, …)`, or `None` when `n - |λ| < λ_1`.
    pub fn pad(&self, n: usize) -> Option<PaddedPartition> {
        let size = self.size();
        if n < size || n - size < self.part(0) {
            return None;
        }
        Some(PaddedPartition { base: self.clone(), n })
    }

    /// Smallest `n` at which `λ[n]` is defined.
    pub fn padding_start(&self) -> usize {
        self.size() + self.part(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.parts.len() <= self.parts.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }
}

/// The partition `λ[n]`, guaranteed well formed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PaddedPartition {
    base: Partition,
    n: usize,
}

impl PaddedPartition {
    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = vec![self.n - self.base.size()];
        parts.extend_from_slice(&self.base.parts);
        parts.retain(|&p| p > 0);
        Partition { parts }
    }
}

/// Whether `μ / ν` is a horizontal strip: `ν ⊆ μ` with at most one cell per column.
pub fn horizontal_strip(nu: &Partition, mu: &Partition) -> bool {
    if nu.len() > mu.len() {
        return false;
    }
    (0..mu.len()).all(|j| mu.part(j + 1) <= nu.part(j) && nu.part(j) <= mu.part(j))
}

/// Whether `λ[n] / ν` is a horizontal strip for all large `n`:
/// `λ_j ≤ ν_j ≤ λ_{j-1}` with `λ_0 = ∞`.
pub fn stable_strip(lambda: &Partition, nu: &Partition) -> bool {
    let len = nu.len().max(lambda.len());
    (0..len).all(|j| {
        let upper_ok = j == 0 || nu.part(j) <= lambda.part(j - 1);
        lambda.part(j) <= nu.part(j) && upper_ok
    })
}

/// The polynomial `p` with `p(n) = dim 𝕊(λ[n])` wherever `λ[n]` is defined.
pub fn dimension_polynomial(lambda: &Partition) -> Result<RationalPolynomial> {
    let start = lambda.padding_start();
    let value = |n: usize| -> Rational {
        let d = lambda.pad(n).unwrap().to_partition().hook_dimension();
        Rational::from_integer(d.into())
    };
    let fit: Vec<(i64, Rational)> = (start..=start + lambda.size()).map(|n| (n as i64, value(n))).collect();
    let p = RationalPolynomial::interpolate_ints(fit.iter().map(|(n, v)| (*n, v)));
    for n in start + lambda.size() + 1..=start + lambda.size() + 2 {
        if p.eval_int(n as i64) != value(n) {
            return Err(Error::Internal(format!(
                "dimension polynomial of {lambda} fails at n = {n}"
            )));
        }
    }
    Ok(p)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `[3,1,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("{s:?}: expected [a,b,...]")))?;
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("{s:?}: bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigUint {
    (2..=n).map(BigUint::from).product()
}
