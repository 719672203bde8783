//! Stable range detection and the orbit decomposition
//! `X_n ≅ ⊔ S_n / (H_i × S_{n-m_i})`.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;

use super::{ElementRep, Evaluation, FISetSpec};
use crate::caps::Caps;
use crate::error::Result;
use crate::group::{split_symmetric_factor, PermutationGroup, ProductOutcome};
use crate::partition::factorial;
use crate::perm::Permutation;

/// What was seen at one degree while looking for the stable range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeObservation {
    pub n: usize,
    pub size: usize,
    pub orbit_count: usize,
    /// `ι_n : X_n → X_{n+1}` is injective (`None` at the last degree).
    pub injective: Option<bool>,
    /// `ι_n` induces a bijection on orbits.
    pub orbit_bijective: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct StableRange {
    /// Least `N_0` from which every observed transition is injective and
    /// bijective on orbits, or `None` when the window could not be filled.
    pub start: Option<usize>,
    pub window: usize,
    pub observations: Vec<DegreeObservation>,
}

/// One orbit `S_n / (H × S_{n-m})`, with `H ≤ S_m`.
#[derive(Debug, Clone)]
pub struct DecomposedOrbit {
    /// Least element of the orbit at the stable start.
    pub representative: ElementRep,
    pub m: usize,
    pub h: PermutationGroup,
    /// First degree of the run of agreeing observations.
    pub certified_from: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub stable: StableRange,
    pub orbits: Vec<ProductOutcome<DecomposedOrbit>>,
}

impl Decomposition {
    pub fn is_certified(&self) -> bool {
        self.stable.start.is_some() && self.orbits.iter().all(|o| matches!(o, ProductOutcome::Found(_)))
    }

    pub fn found(&self) -> Vec<&DecomposedOrbit> {
        self.orbits
            .iter()
            .filter_map(|o| match o {
                ProductOutcome::Found(d) => Some(d),
                _ => None,
            })
            .collect()
    }
}

impl FISetSpec {
    /// Degree from which identifications and generators are all in play.
    pub fn declared_degree(&self) -> usize {
        self.identifications()
            .iter()
            .map(|id| id.degree)
            .chain(std::iter::once(self.generation_degree()))
            .max()
            .unwrap_or(0)
    }

    /// Evaluates `X_0, ..., X_{n_max}` in parallel.
    pub fn evaluate_range(&self, n_max: usize, caps: &Caps) -> Result<Vec<Evaluation>> {
        (0..=n_max).into_par_iter().map(|n| self.evaluate(n, caps)).collect()
    }

    /// Finds the least `N_0 ≤ n_max - window` such that every transition
    /// `ι_n` with `N_0 ≤ n < n_max` is injective and bijective on orbits.
    ///
    /// The range must also extend `window` degrees past the largest declared
    /// degree; otherwise `start` is `None`.
    pub fn detect_stable_range(&self, n_max: usize, window: usize, caps: &Caps) -> Result<StableRange> {
        Ok(self.stable_range_of(&self.evaluate_range(n_max, caps)?, window))
    }

    fn stable_range_of(&self, evals: &[Evaluation], window: usize) -> StableRange {
        let n_max = evals.len() - 1;
        let labels: Vec<Vec<usize>> = evals.par_iter().map(|e| e.orbit_labels(self)).collect();
        let mut observations = Vec::with_capacity(evals.len());
        for n in 0..=n_max {
            let orbit_count = labels[n].iter().max().map_or(0, |m| m + 1);
            let (injective, orbit_bijective) = if n < n_max {
                let next = &evals[n + 1];
                let images: Vec<usize> = evals[n]
                    .elements()
                    .iter()
                    .map(|x| next.index_of(x).expect("X_n embeds in the induced set"))
                    .collect();
                let injective = images.iter().collect::<HashSet<_>>().len() == images.len();
                let next_count = labels[n + 1].iter().max().map_or(0, |m| m + 1);
                let mut orbit_map: HashMap<usize, usize> = HashMap::new();
                let mut well_defined = true;
                for (i, &img) in images.iter().enumerate() {
                    let target = labels[n + 1][img];
                    if *orbit_map.entry(labels[n][i]).or_insert(target) != target {
                        well_defined = false;
                    }
                }
                let hit: HashSet<usize> = orbit_map.values().copied().collect();
                let bijective = well_defined
                    && orbit_map.len() == orbit_count
                    && hit.len() == orbit_count
                    && next_count == orbit_count;
                (Some(injective), Some(bijective))
            } else {
                (None, None)
            };
            observations.push(DegreeObservation {
                n,
                size: evals[n].len(),
                orbit_count,
                injective,
                orbit_bijective,
            });
        }
        let good = |o: &DegreeObservation| o.injective == Some(true) && o.orbit_bijective == Some(true);
        let mut start = n_max;
        while start > 0 && good(&observations[start - 1]) {
            start -= 1;
        }
        let filled = n_max >= start + window && n_max >= self.declared_degree() + window;
        StableRange {
            start: filled.then_some(start),
            window,
            observations,
        }
    }

    /// Decomposes each stable orbit as `S_n / (H × S_{n-m})`.
    ///
    /// For every orbit representative the stabilizer `G_n` is generated by
    /// Schreier generators, split as `Sym(A) × H` with `A` the orbit of the
    /// last point, and the pair `(m, H up to conjugacy)` must agree on
    /// `window` consecutive degrees. The orbit size `binom(n, m) [S_m : H]`
    /// is checked at each of those degrees.
    pub fn decompose(&self, n_max: usize, window: usize, caps: &Caps) -> Result<Decomposition> {
        let evals = self.evaluate_range(n_max, caps)?;
        let stable = self.stable_range_of(&evals, window);
        let Some(n0) = stable.start else {
            return Ok(Decomposition {
                stable,
                orbits: Vec::new(),
            });
        };
        let reps: Vec<ElementRep> = evals[n0].orbits(self).into_iter().map(|o| o.representative).collect();
        let orbits = reps
            .par_iter()
            .map(|x| decompose_orbit(self, &evals[n0..], x, window, caps))
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { stable, orbits })
    }
}

type SplitKey = (usize, Vec<Permutation>);

fn decompose_orbit(
    spec: &FISetSpec,
    evals: &[Evaluation],
    x: &ElementRep,
    window: usize,
    caps: &Caps,
) -> Result<ProductOutcome<DecomposedOrbit>> {
    let mut run: Option<(SplitKey, usize, usize, PermutationGroup)> = None;
    let mut last_absent = false;
    let mut why = String::from("no run of agreeing degrees");
    for ev in evals {
        let n = ev.degree();
        let y = ev.index_of(x).expect("pushed-forward representative exists");
        let (orbit, gens) = schreier_generators(spec, ev, y);
        let split = split_symmetric_factor(n, &gens, |t| ev.act(spec, t, y) == y);
        let s = match split {
            ProductOutcome::Found(s) => s,
            ProductOutcome::Absent => {
                last_absent = true;
                run = None;
                continue;
            }
            ProductOutcome::Undecided(w) => {
                why = w;
                run = None;
                continue;
            }
        };
        last_absent = false;
        let m = s.block.len();
        if m > caps.subgroup_degree {
            why = format!("block of size {m} at degree {n} exceeds the subgroup cap");
            run = None;
            continue;
        }
        let h_order = s.h.order(caps)?;
        let expected = BigUint::from(binomial(n, m)) * factorial(m) / BigUint::from(h_order);
        if expected != BigUint::from(orbit) {
            why = format!("orbit size {orbit} at degree {n} disagrees with the split");
            run = None;
            continue;
        }
        let key = (m, s.h.conjugacy_key(caps)?);
        run = match run {
            Some((k, from, len, h)) if k == key => Some((k, from, len + 1, h)),
            _ => Some((key, n, 1, s.h)),
        };
        if let Some((k, from, len, h)) = &run {
            if *len >= window {
                return Ok(ProductOutcome::Found(DecomposedOrbit {
                    representative: x.clone(),
                    m: k.0,
                    h: h.clone(),
                    certified_from: *from,
                }));
            }
        }
    }
    Ok(if last_absent {
        ProductOutcome::Absent
    } else {
        ProductOutcome::Undecided(why)
    })
}

/// Orbit size of `y` and Schreier generators of its stabilizer in `S_n`.
fn schreier_generators(spec: &FISetSpec, ev: &Evaluation, y: usize) -> (usize, Vec<Permutation>) {
    let n = ev.degree();
    let gens = Permutation::adjacent_transpositions(n);
    let mut transversal: HashMap<usize, Permutation> = HashMap::from([(y, Permutation::identity(n))]);
    let mut queue = vec![y];
    let mut head = 0;
    let mut out: BTreeSet<Permutation> = BTreeSet::new();
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        let up = transversal[&p].clone();
        for s in &gens {
            let q = ev.act(spec, s, p);
            let su = s.compose_unchecked(&up);
            match transversal.get(&q) {
                Some(uq) => {
                    let g = uq.inverse().compose_unchecked(&su);
                    if !g.is_identity() {
                        out.insert(g);
                    }
                }
                None => {
                    transversal.insert(q, su);
                    queue.push(q);
                }
            }
        }
    }
    (queue.len(), out.into_iter().collect())
}
