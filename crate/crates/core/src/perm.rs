//! Permutations of `[n]` stored as image sequences.
//!
//! Points are 0-based internally and 1-based in cycle notation, so
//! `(1 2)` swaps the points stored at indices 0 and 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A bijection of `[n]`, stored by its image sequence.
///
/// Ordering is lexicographic on the image sequence, which is the order used
/// for every deterministic listing in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of a {n}-element set"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images, as written by hand.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!(
                "{images:?}: points are numbered from 1"
            )));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!("point {p} outside [1, {degree}]")));
                }
                if used[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} appears twice")));
                }
                used[p - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(1 2)(3 4 5)"` or `"()"`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("{text:?}: {msg}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty string (write \"()\" for the identity)"));
        }
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &body_start[..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body_start[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The adjacent transpositions `(i i+1)`, which generate `S_n`.
    pub fn adjacent_transpositions(degree: usize) -> Vec<Permutation> {
        (0..degree.saturating_sub(1))
            .map(|i| Self::transposition(degree, i, i + 1))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Cycles as 0-based point lists, each starting at its smallest point,
    /// including fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn sign(&self) -> i32 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] == point
    }

    /// Restriction to an invariant block, relabelled order-preservingly onto
    /// `[block.len()]`. Returns `None` if the block is not invariant.
    pub fn restrict(&self, block: &[usize]) -> Option<Permutation> {
        let mut images = Vec::with_capacity(block.len());
        for &p in block {
            let q = self.images[p];
            images.push(block.iter().position(|&b| b == q)?);
        }
        Some(Permutation { images })
    }

    /// Embeds a permutation of `[block.len()]` into `[degree]`, acting on
    /// `block` (order-preservingly) and fixing everything else.
    pub fn embed(&self, degree: usize, block: &[usize]) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &p) in block.iter().enumerate() {
            images[p] = block[self.images[i]];
        }
        Permutation { images }
    }

    /// The same permutation viewed in a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree()..degree.max(self.degree()));
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let q = p("(1 3 2)(4 5)", 5);
        assert_eq!(Permutation::identity(5).compose(&q).unwrap(), q);
        assert_eq!(q.compose(&Permutation::identity(5)).unwrap(), q);
    }

    #[test]
    fn transposition_is_involution() {
        let t = p("(1 2)", 2);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // images of (1 2 3) are [2,3,1], of (1 2) are [2,1,3];
        // composing by hand: 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1.
        let r = p("(1 2 3)", 3).compose(&p("(1 2)", 3)).unwrap();
        assert_eq!(r, Permutation::from_one_based(&[3, 2, 1]).unwrap());
        assert_eq!(r.to_string(), "(1 3)");
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = p("(1 2)", 2).compose(&p("(1 2)", 3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn cycle_notation_round_trips() {
        for (s, n) in [("()", 3), ("(1 2)(3 4 5)", 5), ("(2 5 3)", 6)] {
            assert_eq!(p(s, n).to_string(), s);
        }
        assert_eq!(p("(1, 2) (3 4)", 4).to_string(), "(1 2)(3 4)");
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn cycle_type_and_sign() {
        let q = p("(1 2)(3 4 5)", 6);
        assert_eq!(q.cycle_type().parts(), &[3, 2, 1]);
        assert_eq!(q.sign(), -1);
    }

    #[test]
    fn restrict_and_embed_are_inverse_on_invariant_blocks() {
        let q = p("(2 4)(1 3 5)", 6);
        let block = [1, 3];
        let r = q.restrict(&block).unwrap();
        assert_eq!(r.to_string(), "(1 2)");
        assert_eq!(r.embed(6, &block), p("(2 4)", 6));
        assert!(q.restrict(&[0, 1]).is_none());
    }
}
