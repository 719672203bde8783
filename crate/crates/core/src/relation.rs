//! Equivariant relations `R_n ⊆ X_n × Y_n` presented by generating pairs
//! with threshold degrees.
//!
//! A generator `(a, x, y)` contributes, at every degree `n ≥ a`, the
//! `S_n`-orbit of the pair `(x, y)` pushed along `[a] ↪ [n]`. Every injection
//! factors as a standard inclusion followed by a permutation, so the result
//! is closed under all transition maps.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use itertools::Itertools;
use num_integer::binomial;
use petgraph::unionfind::UnionFind;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fiset::{ElementRep, Evaluation, FISetSpec};
use crate::linalg::IntMatrix;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationGenerator {
    pub degree: usize,
    pub x: ElementRep,
    pub y: ElementRep,
}

/// A relation between two FI-sets, or on one FI-set when `target` is absent.
#[derive(Debug, Clone)]
pub struct RelationSpec {
    source: FISetSpec,
    target: Option<FISetSpec>,
    generators: Vec<RelationGenerator>,
    symmetric: bool,
}

/// `R_n` as a set of index pairs `(x, y)` in the canonical element orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    pub n: usize,
    pub source_len: usize,
    pub target_len: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl RelationMatrix {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// The `|Y_n| × |X_n|` matrix of `r_n : e_x ↦ Σ_{x ~ y} e_y`.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target_len, self.source_len);
        for &(x, y) in &self.pairs {
            m.set(y, x, 1);
        }
        m
    }

    /// Sparse triplets `row,col,1` of [`RelationMatrix::to_matrix`].
    pub fn to_triplet_csv(&self) -> String {
        let mut out = String::from("row,col,value\n");
        let mut entries: Vec<(usize, usize)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        entries.sort_unstable();
        for (r, c) in entries {
            let _ = writeln!(out, "{r},{c},1");
        }
        out
    }
}

impl RelationSpec {
    /// A self-relation on `space`.
    pub fn on(space: FISetSpec, generators: Vec<RelationGenerator>, symmetric: bool) -> Result<Self> {
        let spec = RelationSpec {
            source: space,
            target: None,
            generators,
            symmetric,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// A relation from `source` to a different FI-set `target`.
    pub fn between(source: FISetSpec, target: FISetSpec, generators: Vec<RelationGenerator>) -> Result<Self> {
        let spec = RelationSpec {
            source,
            target: Some(target),
            generators,
            symmetric: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        for g in &self.generators {
            self.source.validate_element(&g.x, g.degree)?;
            self.target().validate_element(&g.y, g.degree)?;
        }
        Ok(())
    }

    pub fn source(&self) -> &FISetSpec {
        &self.source
    }

    pub fn target(&self) -> &FISetSpec {
        self.target.as_ref().unwrap_or(&self.source)
    }

    pub fn is_self_relation(&self) -> bool {
        self.target.is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn generators(&self) -> &[RelationGenerator] {
        &self.generators
    }

    /// Largest generator threshold (0 without generators).
    pub fn max_threshold(&self) -> usize {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// Swaps the roles of source and target.
    pub fn transpose(&self) -> RelationSpec {
        let generators = self
            .generators
            .iter()
            .map(|g| RelationGenerator {
                degree: g.degree,
                x: g.y.clone(),
                y: g.x.clone(),
            })
            .collect();
        match &self.target {
            None => RelationSpec {
                source: self.source.clone(),
                target: None,
                generators,
                symmetric: self.symmetric,
            },
            Some(t) => RelationSpec {
                source: t.clone(),
                target: Some(self.source.clone()),
                generators,
                symmetric: false,
            },
        }
    }

    /// Evaluates the endpoints at degree `n`.
    pub fn evaluate(&self, n: usize, caps: &Caps) -> Result<(Evaluation, Option<Evaluation>)> {
        let xs = self.source.evaluate(n, caps)?;
        let ys = match &self.target {
            Some(t) => Some(t.evaluate(n, caps)?),
            None => None,
        };
        Ok((xs, ys))
    }

    pub fn materialize(&self, n: usize, caps: &Caps) -> Result<RelationMatrix> {
        let (xs, ys) = self.evaluate(n, caps)?;
        self.materialize_in(&xs, ys.as_ref().unwrap_or(&xs), caps)
    }

    /// Materializes `R_n` given the endpoint evaluations at degree `n`.
    pub fn materialize_in(&self, xs: &Evaluation, ys: &Evaluation, caps: &Caps) -> Result<RelationMatrix> {
        let n = xs.degree();
        let gens = Permutation::adjacent_transpositions(n);
        let tx: Vec<Vec<usize>> = gens.iter().map(|s| xs.action_table(&self.source, s)).collect();
        let ty: Vec<Vec<usize>> = gens.iter().map(|s| ys.action_table(self.target(), s)).collect();
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for g in self.generators.iter().filter(|g| g.degree <= n) {
            let start = (index_in(xs, &g.x)?, index_in(ys, &g.y)?);
            if !pairs.insert(start) {
                continue;
            }
            let mut stack = vec![start];
            while let Some((x, y)) = stack.pop() {
                for (a, b) in tx.iter().zip(&ty) {
                    let next = (a[x], b[y]);
                    if pairs.insert(next) {
                        if pairs.len() > caps.orbit_size {
                            return Err(Error::OrbitTooLarge { cap: caps.orbit_size });
                        }
                        stack.push(next);
                    }
                }
            }
        }
        if self.symmetric {
            if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| !pairs.contains(&(y, x))) {
                return Err(Error::InvalidRelation(format!(
                    "declared symmetric but {} ~ {} holds at degree {n} while the reverse does not",
                    self.source.format_element(&xs.elements()[x]),
                    self.target().format_element(&ys.elements()[y]),
                )));
            }
        }
        Ok(RelationMatrix {
            n,
            source_len: xs.len(),
            target_len: ys.len(),
            pairs,
        })
    }

    /// The `|Y_n| × |X_n|` 0/1 matrix of `r_n`.
    pub fn linearize(&self, n: usize, caps: &Caps) -> Result<IntMatrix> {
        Ok(self.materialize(n, caps)?.to_matrix())
    }

    /// Builds a relation from a predicate on element pairs, probing the
    /// degrees in `probes`.
    ///
    /// At each probe degree the predicate must be constant on diagonal
    /// orbits, and the relation generated so far must agree with it; a new
    /// generator is recorded for every true orbit not yet generated. A pair
    /// that was generated earlier but is false now means the predicate turns
    /// off, which no FI-subset does. Passing these checks on finitely many
    /// degrees is necessary, not sufficient, for the predicate to define an
    /// FI-subset.
    pub fn from_predicate<P>(
        endpoints: RelationSpec,
        predicate: P,
        probes: RangeInclusive<usize>,
        caps: &Caps,
    ) -> Result<RelationSpec>
    where
        P: Fn(&ElementRep, &ElementRep) -> bool,
    {
        Self::from_graded_predicate(endpoints, |_, x, y| predicate(x, y), probes, caps)
    }

    /// [`RelationSpec::from_predicate`] for a predicate that also sees the
    /// degree.
    pub fn from_graded_predicate<P>(
        endpoints: RelationSpec,
        predicate: P,
        probes: RangeInclusive<usize>,
        caps: &Caps,
    ) -> Result<RelationSpec>
    where
        P: Fn(usize, &ElementRep, &ElementRep) -> bool,
    {
        let mut spec = RelationSpec {
            generators: Vec::new(),
            ..endpoints
        };
        for n in probes {
            let (xs, ys_own) = spec.evaluate(n, caps)?;
            let ys = ys_own.as_ref().unwrap_or(&xs);
            let (nx, ny) = (xs.len(), ys.len());
            let truth: Vec<bool> = (0..nx * ny)
                .map(|k| predicate(n, &xs.elements()[k / ny], &ys.elements()[k % ny]))
                .collect();

            let gens = Permutation::adjacent_transpositions(n);
            let mut uf = UnionFind::<usize>::new(nx * ny);
            for s in &gens {
                let ax = xs.action_table(&spec.source, s);
                let ay = ys.action_table(spec.target(), s);
                for k in 0..nx * ny {
                    let image = ax[k / ny] * ny + ay[k % ny];
                    if truth[k] != truth[image] {
                        return Err(Error::NotEquivariant {
                            n,
                            x: spec.source.format_element(&xs.elements()[k / ny]),
                            y: spec.target().format_element(&ys.elements()[k % ny]),
                            sigma: s.to_string(),
                        });
                    }
                    uf.union(k, image);
                }
            }

            let generated = spec.materialize_in(&xs, ys, caps)?;
            if let Some((x, y)) = generated.pairs().find(|&(x, y)| !truth[x * ny + y]) {
                let from = spec.generators.iter().map(|g| g.degree).min().unwrap_or(n);
                return Err(Error::NotPersistent {
                    from,
                    to: n,
                    x: spec.source.format_element(&xs.elements()[x]),
                    y: spec.target().format_element(&ys.elements()[y]),
                });
            }
            let mut covered: HashSet<usize> = generated.pairs().map(|(x, y)| uf.find_mut(x * ny + y)).collect();
            for k in 0..nx * ny {
                if truth[k] && covered.insert(uf.find_mut(k)) {
                    spec.generators.push(RelationGenerator {
                        degree: n,
                        x: xs.elements()[k / ny].clone(),
                        y: ys.elements()[k % ny].clone(),
                    });
                }
            }
            if spec.symmetric {
                spec.materialize_in(&xs, ys, caps)?;
            }
        }
        Ok(spec)
    }

    /// `#{T : (K, c) ~ (T, d), T ∩ [m] = S}` at degree `n`, counting target
    /// elements of orbit `target_orbit` with coset `d`.
    ///
    /// `x` must live in `[m]`. The count is `0` for all `n ≥ m` or
    /// `binom(n - m, t - |S|)` for all `n ≥ m` once `m` reaches every
    /// generator threshold; below that a later generator can still switch on.
    #[allow(clippy::too_many_arguments)]
    pub fn counting_profile(
        &self,
        n: usize,
        m: usize,
        x: &ElementRep,
        target_orbit: usize,
        d: &Permutation,
        s: &[usize],
        caps: &Caps,
    ) -> Result<u64> {
        if n < m {
            return Err(Error::DegreeMismatch { left: n, right: m });
        }
        self.source.validate_element(x, m)?;
        if s.iter().any(|&p| p >= m) {
            return Err(Error::InvalidElement(format!("S = {s:?} is not a subset of [{m}]")));
        }
        let target = self.target();
        let t = target
            .orbits()
            .get(target_orbit)
            .ok_or_else(|| Error::InvalidElement(format!("no target orbit {target_orbit}")))?
            .m;
        let d = target.canonical_coset(target_orbit, d);
        let (xs, ys_own) = self.evaluate(n, caps)?;
        let ys = ys_own.as_ref().unwrap_or(&xs);
        let r = self.materialize_in(&xs, ys, caps)?;
        let ix = index_in(&xs, x)?;
        let s: BTreeSet<usize> = s.iter().copied().collect();
        let mut count = 0;
        for support in (0..n).combinations(t) {
            if support.iter().filter(|&&p| p < m).copied().collect::<BTreeSet<_>>() != s {
                continue;
            }
            let y = ElementRep {
                orbit: target_orbit,
                support,
                coset: d.clone(),
            };
            if r.contains(ix, index_in(ys, &y)?) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// The two values the counting lemma allows: `0` or `binom(n - m, t - |S|)`.
pub fn counting_lemma_value(n: usize, m: usize, t: usize, s_len: usize) -> u64 {
    if t < s_len || n < m {
        return 0;
    }
    binomial((n - m) as u64, (t - s_len) as u64)
}

fn index_in(ev: &Evaluation, x: &ElementRep) -> Result<usize> {
    ev.index_of(x)
        .ok_or_else(|| Error::InvalidElement(format!("{x:?} is not an element at degree {}", ev.degree())))
}
