//! Finitely generated FI-sets given as unions of induced orbits, optionally
//! quotiented by identifications.
//!
//! An induced orbit `(m, H)` contributes, at degree `n`, one element for each
//! pair `(K, σH)` with `K` an `m`-subset of `[n]` and `σH` a left coset of
//! `H` in `S_m`. Identifications glue elements together from a given degree
//! on; the glueing is closed under the `S_n` action and pushed along every
//! standard inclusion, which yields the smallest FI-compatible quotient.

mod decompose;
mod element;
mod evaluation;

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::poly::{Rational, RationalPolynomial};

pub use decompose::{DecomposedOrbit, Decomposition, DegreeObservation, StableRange};
pub use element::{ElementRep, Injection};
pub use evaluation::{Evaluation, Orbit};

/// One induced orbit `M(S_m / H)`.
#[derive(Debug, Clone)]
pub struct InducedOrbitSpec {
    pub m: usize,
    pub h: PermutationGroup,
    pub label: String,
}

impl InducedOrbitSpec {
    pub fn new(m: usize, h: PermutationGroup, label: impl Into<String>) -> Result<Self> {
        if h.degree() != m {
            return Err(Error::InvalidSpec(format!(
                "subgroup has degree {} but the orbit is generated in degree {m}",
                h.degree()
            )));
        }
        Ok(InducedOrbitSpec {
            m,
            h,
            label: label.into(),
        })
    }

    /// Unordered `m`-subsets: `H = S_m`.
    pub fn subsets(m: usize, label: impl Into<String>) -> Self {
        Self::new(m, PermutationGroup::symmetric(m), label).unwrap()
    }

    /// Ordered `m`-tuples of distinct points: `H` trivial.
    pub fn tuples(m: usize, label: impl Into<String>) -> Self {
        Self::new(m, PermutationGroup::trivial(m), label).unwrap()
    }
}

/// Two elements glued together from `degree` on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub degree: usize,
    pub a: ElementRep,
    pub b: ElementRep,
}

#[derive(Debug, Clone, Default)]
pub struct FISetSpec {
    orbits: Vec<InducedOrbitSpec>,
    identifications: Vec<Identification>,
    /// Canonical coset representatives of each orbit, sorted.
    cosets: Vec<Vec<Permutation>>,
}

impl FISetSpec {
    pub fn new(orbits: Vec<InducedOrbitSpec>, identifications: Vec<Identification>) -> Result<Self> {
        let caps = Caps::default();
        let mut labels = HashSet::new();
        for o in &orbits {
            if !labels.insert(o.label.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate orbit label {:?}", o.label)));
            }
            if o.m > caps.subgroup_degree {
                return Err(Error::InvalidSpec(format!(
                    "generation degree {} of {:?} exceeds the cap {}",
                    o.m, o.label, caps.subgroup_degree
                )));
            }
        }
        let mut cosets = Vec::with_capacity(orbits.len());
        for o in &orbits {
            let h = o.h.enumerate(&caps)?;
            let mut reps: Vec<Permutation> = PermutationGroup::symmetric(o.m)
                .enumerate(&caps)?
                .iter()
                .map(|s| canonical_in(s, h))
                .collect();
            reps.sort();
            reps.dedup();
            cosets.push(reps);
        }
        let spec = FISetSpec {
            orbits,
            identifications: Vec::new(),
            cosets,
        };
        for id in &identifications {
            for e in [&id.a, &id.b] {
                spec.validate_element(e, id.degree)?;
            }
        }
        Ok(FISetSpec {
            identifications,
            ..spec
        })
    }

    /// A pure induced FI-set with no identifications.
    pub fn induced(orbits: Vec<InducedOrbitSpec>) -> Result<Self> {
        Self::new(orbits, Vec::new())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn orbits(&self) -> &[InducedOrbitSpec] {
        &self.orbits
    }

    pub fn identifications(&self) -> &[Identification] {
        &self.identifications
    }

    pub fn is_pure_induced(&self) -> bool {
        self.identifications.is_empty()
    }

    /// Largest generation degree `max m_i` (0 for the empty spec).
    pub fn generation_degree(&self) -> usize {
        self.orbits.iter().map(|o| o.m).max().unwrap_or(0)
    }

    pub fn orbit_index(&self, label: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.label == label)
    }

    /// Sorted canonical representatives of `S_m / H` for an orbit.
    pub fn cosets(&self, orbit: usize) -> &[Permutation] {
        &self.cosets[orbit]
    }

    /// Lexicographically least representative of the coset `σH`.
    pub fn canonical_coset(&self, orbit: usize, sigma: &Permutation) -> Permutation {
        let h = self.orbits[orbit]
            .h
            .enumerate(&Caps::default())
            .expect("enumerated at construction");
        canonical_in(sigma, h)
    }

    pub fn validate_element(&self, e: &ElementRep, n: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidElement(msg));
        let Some(orbit) = self.orbits.get(e.orbit) else {
            return bad(format!("orbit index {} out of range", e.orbit));
        };
        if e.support.len() != orbit.m {
            return bad(format!(
                "support {:?} has size {} but {:?} is generated in degree {}",
                e.support,
                e.support.len(),
                orbit.label,
                orbit.m
            ));
        }
        if e.support.windows(2).any(|w| w[0] >= w[1]) || e.support.last().is_some_and(|&k| k >= n) {
            return bad(format!(
                "support {:?} is not an increasing subset of [{n}]",
                e.support.iter().map(|k| k + 1).collect_vec()
            ));
        }
        if e.coset.degree() != orbit.m || self.cosets[e.orbit].binary_search(&e.coset).is_err() {
            return bad(format!("coset {} is not a canonical representative", e.coset));
        }
        Ok(())
    }

    /// Size of the underlying induced set before identifications.
    pub fn induced_size(&self, n: usize) -> usize {
        self.orbits
            .iter()
            .zip(&self.cosets)
            .map(|(o, c)| if n >= o.m { binomial(n, o.m) * c.len() } else { 0 })
            .sum()
    }

    /// `Σ_i binom(n, m_i) [S_{m_i} : H_i]` as a polynomial in `n`.
    pub fn induced_cardinality_polynomial(&self) -> RationalPolynomial {
        self.orbits
            .iter()
            .zip(&self.cosets)
            .fold(RationalPolynomial::zero(), |acc, (o, c)| {
                let term = RationalPolynomial::binomial(0, o.m).scale(&Rational::from_integer(BigInt::from(c.len())));
                &acc + &term
            })
    }

    /// The pushforward `g_*(K, σH) = (h, τσH)` where `g ∘ f = h ∘ τ`, before
    /// any identification is applied.
    pub fn push_raw(&self, x: &ElementRep, g: &Injection) -> ElementRep {
        let images: Vec<usize> = x.support.iter().map(|&k| g.apply(k)).collect();
        self.relabel(x, images)
    }

    /// `g · x` for `g ∈ S_n`, before identifications.
    pub fn act_raw(&self, g: &Permutation, x: &ElementRep) -> ElementRep {
        let images: Vec<usize> = x.support.iter().map(|&k| g.apply(k)).collect();
        self.relabel(x, images)
    }

    fn relabel(&self, x: &ElementRep, images: Vec<usize>) -> ElementRep {
        let m = images.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| images[i]);
        // tau(i) = rank of images[i]
        let mut tau = vec![0; m];
        for (rank, &i) in order.iter().enumerate() {
            tau[i] = rank;
        }
        let support: Vec<usize> = order.iter().map(|&i| images[i]).collect();
        let tau = Permutation::from_images(tau).expect("ranks form a permutation");
        let coset = self.canonical_coset(x.orbit, &tau.compose_unchecked(&x.coset));
        ElementRep {
            orbit: x.orbit,
            support,
            coset,
        }
    }

    /// Transition map `X_n → X_p` along `g`, followed by the canonical
    /// representative lookup in `X_p`.
    pub fn transition(&self, n: usize, x: &ElementRep, g: &Injection, caps: &Caps) -> Result<ElementRep> {
        if g.source() != n {
            return Err(Error::InvalidInjection(format!(
                "injection starts at degree {} but the element lives at degree {n}",
                g.source()
            )));
        }
        self.validate_element(x, n)?;
        let raw = self.push_raw(x, g);
        if self.identifications.is_empty() {
            return Ok(raw);
        }
        let target = self.evaluate(g.target(), caps)?;
        let i = target
            .index_of(&raw)
            .ok_or_else(|| Error::Internal(format!("{raw:?} missing from X_{}", g.target())))?;
        Ok(target.elements()[i].clone())
    }

    /// All elements of the underlying induced set at degree `n`, sorted.
    fn induced_elements(&self, n: usize) -> Vec<ElementRep> {
        let mut out = Vec::with_capacity(self.induced_size(n));
        for (i, o) in self.orbits.iter().enumerate() {
            if n < o.m {
                continue;
            }
            for support in (0..n).combinations(o.m) {
                for c in &self.cosets[i] {
                    out.push(ElementRep {
                        orbit: i,
                        support: support.clone(),
                        coset: c.clone(),
                    });
                }
            }
        }
        out
    }

    /// `X_n` with its canonical element order.
    pub fn evaluate(&self, n: usize, caps: &Caps) -> Result<Evaluation> {
        let size = self.induced_size(n);
        if size > caps.set_size {
            return Err(Error::SetTooLarge {
                n,
                size,
                cap: caps.set_size,
            });
        }
        Evaluation::build(self, n, self.induced_elements(n))
    }

    /// Number of `x ∈ X_n` with `g · x = x`.
    pub fn fixed_points(&self, n: usize, g: &Permutation, caps: &Caps) -> Result<usize> {
        if g.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: g.degree(),
            });
        }
        let ev = self.evaluate(n, caps)?;
        Ok(ev.fixed_points(self, g))
    }

    /// `S_n`-orbits on `X_n`, listed by canonical (least) representative.
    pub fn orbits_at(&self, n: usize, caps: &Caps) -> Result<Vec<Orbit>> {
        Ok(self.evaluate(n, caps)?.orbits(self))
    }

    pub fn parse_element(&self, text: &str) -> Result<ElementRep> {
        element::parse_literal(self, text)
    }

    pub fn format_element(&self, e: &ElementRep) -> String {
        element::format_literal(self, e)
    }
}

fn canonical_in(sigma: &Permutation, h: &[Permutation]) -> Permutation {
    h.iter()
        .map(|x| sigma.compose_unchecked(x))
        .min()
        .expect("a group is never empty")
}
