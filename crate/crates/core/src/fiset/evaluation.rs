use petgraph::unionfind::UnionFind;

use super::{ElementRep, FISetSpec};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `X_n` as a finite set with a fixed element order.
///
/// Elements of a quotient are represented by the least induced element of
/// their class; `elements` is sorted, so indices are canonical.
#[derive(Debug, Clone)]
pub struct Evaluation {
    n: usize,
    elements: Vec<ElementRep>,
    base: Vec<ElementRep>,
    class_of: Vec<usize>,
}

/// One `S_n`-orbit of `X_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: ElementRep,
    /// Indices into [`Evaluation::elements`], increasing.
    pub members: Vec<usize>,
}

impl Evaluation {
    pub(super) fn build(spec: &FISetSpec, n: usize, base: Vec<ElementRep>) -> Result<Self> {
        let glue: Vec<_> = spec.identifications().iter().filter(|id| id.degree <= n).collect();
        if glue.is_empty() {
            return Ok(Evaluation {
                n,
                class_of: (0..base.len()).collect(),
                elements: base.clone(),
                base,
            });
        }

        let find = |x: &ElementRep| {
            base.binary_search(x)
                .map_err(|_| Error::Internal(format!("{x:?} is not an element of X_{n}")))
        };
        let gens = Permutation::adjacent_transpositions(n);
        let tables = gens
            .iter()
            .map(|s| {
                base.iter()
                    .map(|x| find(&spec.act_raw(s, x)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let mut uf = UnionFind::<usize>::new(base.len());
        for id in glue {
            uf.union(find(&id.a)?, find(&id.b)?);
        }
        // Close under the action: x ~ y implies s x ~ s y. Comparing every
        // element with its class root suffices, iterated to a fixed point.
        loop {
            let mut changed = false;
            for i in 0..base.len() {
                let r = uf.find_mut(i);
                if r == i {
                    continue;
                }
                for t in &tables {
                    changed |= uf.union(t[i], t[r]);
                }
            }
            if !changed {
                break;
            }
        }

        let mut slot = vec![usize::MAX; base.len()];
        let mut elements = Vec::new();
        let mut class_of = vec![0; base.len()];
        for i in 0..base.len() {
            let r = uf.find_mut(i);
            if slot[r] == usize::MAX {
                // first member met in index order is the least one
                slot[r] = elements.len();
                elements.push(base[i].clone());
            }
            class_of[i] = slot[r];
        }
        Ok(Evaluation {
            n,
            elements,
            base,
            class_of,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementRep] {
        &self.elements
    }

    /// Size of the induced set before identification.
    pub fn induced_len(&self) -> usize {
        self.base.len()
    }

    /// Index of the class containing an induced element.
    pub fn index_of(&self, x: &ElementRep) -> Option<usize> {
        self.base.binary_search(x).ok().map(|i| self.class_of[i])
    }

    /// `g · x_i` as an index.
    pub fn act(&self, spec: &FISetSpec, g: &Permutation, i: usize) -> usize {
        self.index_of(&spec.act_raw(g, &self.elements[i]))
            .expect("the action preserves X_n")
    }

    /// The permutation of indices induced by `g`.
    pub fn action_table(&self, spec: &FISetSpec, g: &Permutation) -> Vec<usize> {
        (0..self.len()).map(|i| self.act(spec, g, i)).collect()
    }

    pub fn fixed_points(&self, spec: &FISetSpec, g: &Permutation) -> usize {
        (0..self.len()).filter(|&i| self.act(spec, g, i) == i).count()
    }

    /// Orbits under `S_n`, listed by least member.
    pub fn orbits(&self, spec: &FISetSpec) -> Vec<Orbit> {
        let mut uf = UnionFind::<usize>::new(self.len());
        for s in Permutation::adjacent_transpositions(self.n) {
            for i in 0..self.len() {
                uf.union(i, self.act(spec, &s, i));
            }
        }
        let mut slot = vec![usize::MAX; self.len()];
        let mut out: Vec<Orbit> = Vec::new();
        for i in 0..self.len() {
            let r = uf.find_mut(i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Orbit {
                    representative: self.elements[i].clone(),
                    members: Vec::new(),
                });
            }
            out[slot[r]].members.push(i);
        }
        out
    }

    /// Orbit index of every element, matching [`Evaluation::orbits`].
    pub fn orbit_labels(&self, spec: &FISetSpec) -> Vec<usize> {
        let mut label = vec![0; self.len()];
        for (k, o) in self.orbits(spec).iter().enumerate() {
            for &i in &o.members {
                label[i] = k;
            }
        }
        label
    }
}
