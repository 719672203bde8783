use std::fmt;

use super::FISetSpec;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An element `(K, σH)` of an induced orbit: a sorted 0-based support and the
/// canonical (lexicographically least) coset representative.
///
/// The derived order (orbit, then support, then coset) is the canonical
/// element order of `X_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementRep {
    pub orbit: usize,
    pub support: Vec<usize>,
    pub coset: Permutation,
}

impl ElementRep {
    /// Support as 1-based points.
    pub fn support_one_based(&self) -> Vec<usize> {
        self.support.iter().map(|k| k + 1).collect()
    }
}

impl fmt::Debug for ElementRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:K={:?}:{}", self.orbit, self.support_one_based(), self.coset)
    }
}

/// An injection `[n] → [p]` stored by 0-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Injection {
    target: usize,
    images: Vec<usize>,
}

impl Injection {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; target];
        for &i in &images {
            if i >= target || seen[i] {
                return Err(Error::InvalidInjection(format!(
                    "{images:?} is not injective into a {target}-element set"
                )));
            }
            seen[i] = true;
        }
        Ok(Injection { target, images })
    }

    pub fn from_one_based(target: usize, images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidInjection("points are numbered from 1".into()));
        }
        Self::new(target, images.iter().map(|i| i - 1).collect())
    }

    /// The standard inclusion `[n] ↪ [p]`.
    pub fn standard(n: usize, p: usize) -> Result<Self> {
        Self::new(p, (0..n).collect())
    }

    pub fn from_permutation(g: &Permutation) -> Self {
        Injection {
            target: g.degree(),
            images: g.images().to_vec(),
        }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Injection) -> Result<Injection> {
        if other.target != self.source() {
            return Err(Error::DegreeMismatch {
                left: self.source(),
                right: other.target,
            });
        }
        Ok(Injection {
            target: self.target,
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }
}

/// Parses `label:K=[1,3]:coset="(1 2)"`. The coset may be any representative
/// and is canonicalised; it defaults to the identity coset when omitted.
pub(super) fn parse_literal(spec: &FISetSpec, text: &str) -> Result<ElementRep> {
    let bad = |msg: &str| Error::InvalidElement(format!("{text:?}: {msg}"));
    let mut parts = text.trim().splitn(2, ':');
    let label = parts.next().unwrap_or("").trim();
    let rest = parts.next().ok_or_else(|| bad("expected label:K=[...]"))?;
    let orbit = spec
        .orbit_index(label)
        .ok_or_else(|| bad(&format!("unknown orbit label {label:?}")))?;
    let m = spec.orbits()[orbit].m;

    let rest = rest.trim();
    let body = rest
        .strip_prefix("K=[")
        .ok_or_else(|| bad("expected K=[...] after the label"))?;
    let close = body.find(']').ok_or_else(|| bad("unclosed support list"))?;
    let support = body[..close]
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(bad("support points are positive integers")),
        })
        .collect::<Result<Vec<_>>>()?;
    let tail = body[close + 1..].trim();
    let coset = if tail.is_empty() {
        Permutation::identity(m)
    } else {
        let quoted = tail
            .strip_prefix(':')
            .map(str::trim)
            .and_then(|t| t.strip_prefix("coset="))
            .map(str::trim)
            .and_then(|t| t.strip_prefix('"'))
            .and_then(|t| t.strip_suffix('"'))
            .ok_or_else(|| bad("expected :coset=\"...\""))?;
        Permutation::parse(quoted, m).map_err(|e| bad(&e.to_string()))?
    };
    let mut sorted = support.clone();
    sorted.sort_unstable();
    if sorted != support {
        return Err(bad("support must be listed in increasing order"));
    }
    let e = ElementRep {
        orbit,
        support,
        coset: spec.canonical_coset(orbit, &coset),
    };
    if e.support.len() != m {
        return Err(bad(&format!("support must have {m} points")));
    }
    Ok(e)
}

pub(super) fn format_literal(spec: &FISetSpec, e: &ElementRep) -> String {
    let label = spec.orbits().get(e.orbit).map_or("?", |o| o.label.as_str());
    let k = e
        .support_one_based()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!("{label}:K=[{k}]:coset=\"{}\"", e.coset)
}
