//! Operator matrices and the traces `tr(A_λ(n)^k)` of their blocks.
//!
//! The `λ[n]`-isotypic part of `kX_n` is `𝕊(λ[n]) ⊗ k^{m_λ}` and an
//! equivariant operator `M` acts there as `1 ⊗ A_λ(n)`. Applying the central
//! idempotent of `λ[n]` gives
//! `tr(A_λ(n)^k) = (1/n!) Σ_g χ_{λ[n]}(g) tr(M^k P_g)`, a sum over classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::character::mn_character;
use crate::error::{Error, Result};
use crate::fiset::Evaluation;
use crate::group::{conjugacy_classes, ConjugacyClassDatum};
use crate::linalg::IntMatrix;
use crate::partition::{factorial, Partition};
use crate::poly::{Rational, RationalPolynomial};
use crate::relation::RelationSpec;

/// Which equivariant operator on `kX_n` a relation defines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    /// `r_n` itself; needs a self-relation.
    #[default]
    Adjacency,
    /// `D - A` for a symmetric loop-free self-relation.
    Laplacian,
    /// `r_nᵀ r_n` on `kX_n`, for any relation.
    Gram,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Adjacency => "adjacency",
            Operator::Laplacian => "laplacian",
            Operator::Gram => "gram",
        }
    }
}

/// The operator at degree `n` together with the evaluation of `X_n` that
/// indexes its rows and columns.
pub fn operator_matrix(rel: &RelationSpec, op: Operator, n: usize, caps: &Caps) -> Result<(Evaluation, IntMatrix)> {
    let (xs, ys) = rel.evaluate(n, caps)?;
    for len in std::iter::once(xs.len()).chain(ys.as_ref().map(Evaluation::len)) {
        if len > caps.matrix_size {
            return Err(Error::MatrixTooLarge {
                n,
                size: len,
                cap: caps.matrix_size,
            });
        }
    }
    let r = rel.materialize_in(&xs, ys.as_ref().unwrap_or(&xs), caps)?.to_matrix();
    let m = match op {
        Operator::Adjacency => {
            if !rel.is_self_relation() {
                return Err(Error::InvalidRelation(
                    "the adjacency operator needs a self-relation; use the Gram operator".into(),
                ));
            }
            r
        }
        Operator::Laplacian => {
            if !rel.is_self_relation() || !r.is_symmetric() {
                return Err(Error::InvalidRelation(format!(
                    "the Laplacian needs a symmetric self-relation (asymmetric at degree {n})"
                )));
            }
            if let Some(i) = (0..r.rows()).find(|&i| r.get(i, i) != 0) {
                return Err(Error::InvalidRelation(format!(
                    "the Laplacian needs a relation without loops; element {i} is related to itself at degree {n}"
                )));
            }
            let mut d = IntMatrix::zeros(r.rows(), r.cols());
            for (i, s) in r.row_sums().into_iter().enumerate() {
                d.set(i, i, s);
            }
            d.sub(&r)?
        }
        Operator::Gram => r.transpose().mul(&r)?,
    };
    Ok((xs, m))
}

/// Everything the pipeline needs from one degree.
#[derive(Debug, Clone)]
pub struct DegreeTraces {
    pub n: usize,
    pub size: usize,
    /// Largest absolute row sum, a bound on every eigenvalue.
    pub row_bound: u64,
    pub classes: Vec<ConjugacyClassDatum>,
    /// `tr(M^k P_g)` for each class and `k = 1..=k_max`.
    pub class_traces: Vec<Vec<BigInt>>,
}

impl DegreeTraces {
    pub fn compute(rel: &RelationSpec, op: Operator, n: usize, k_max: usize, caps: &Caps) -> Result<Self> {
        let (ev, m) = operator_matrix(rel, op, n, caps)?;
        let mut powers = Vec::with_capacity(k_max);
        if k_max > 0 {
            powers.push(m.clone());
        }
        for _ in 1..k_max {
            let next = m.mul(powers.last().unwrap())?;
            powers.push(next);
        }
        let classes = conjugacy_classes(n, caps)?;
        let class_traces = classes
            .iter()
            .map(|c| {
                let table = ev.action_table(rel.source(), &c.representative);
                powers
                    .iter()
                    .map(|p| {
                        table
                            .iter()
                            .enumerate()
                            .map(|(x, &gx)| BigInt::from(p.get(x, gx)))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(DegreeTraces {
            n,
            size: ev.len(),
            row_bound: m.max_abs_row_sum(),
            classes,
            class_traces,
        })
    }

    pub fn k_max(&self) -> usize {
        self.class_traces.first().map_or(0, Vec::len)
    }

    /// `tr(M^k)`, `k = 1..=k_max`.
    pub fn total_traces(&self) -> Vec<BigInt> {
        let id = self
            .classes
            .iter()
            .position(|c| c.representative.is_identity())
            .expect("the identity class is listed");
        self.class_traces[id].clone()
    }

    /// `tr(A_λ(n)^k)` for `k = 1..=k_max`, or nothing when `λ[n]` is undefined.
    pub fn isotypic(&self, lambda: &Partition) -> Result<Vec<Rational>> {
        let Some(padded) = lambda.pad(self.n) else {
            return Ok(Vec::new());
        };
        let mu = padded.to_partition();
        let order = BigInt::from(factorial(self.n));
        let mut sums = vec![BigInt::zero(); self.k_max()];
        for (class, traces) in self.classes.iter().zip(&self.class_traces) {
            let chi = mn_character(&mu, &class.cycle_type)?;
            if chi == 0 {
                continue;
            }
            let weight = BigInt::from(class.class_size.clone()) * chi;
            for (s, t) in sums.iter_mut().zip(traces) {
                *s += &weight * t;
            }
        }
        sums.into_iter()
            .map(|s| {
                let (q, r) = s.div_rem(&order);
                if !r.is_zero() {
                    return Err(Error::Internal(format!(
                        "non-integral block trace for {lambda} at degree {}",
                        self.n
                    )));
                }
                Ok(Rational::from_integer(q))
            })
            .collect()
    }
}

/// `tr(A_λ(n)^k)` for `k = 1..=k_max` of the adjacency operator.
pub fn isotypic_traces(
    rel: &RelationSpec,
    n: usize,
    lambda: &Partition,
    k_max: usize,
    caps: &Caps,
) -> Result<Vec<Rational>> {
    if lambda.pad(n).is_none() {
        return Ok(Vec::new());
    }
    DegreeTraces::compute(rel, Operator::Adjacency, n, k_max, caps)?.isotypic(lambda)
}

/// The monic characteristic polynomial of a `size × size` matrix from the
/// traces of its powers, by Newton's identities. Traces beyond `size` are
/// used as a check: the corresponding elementary symmetric values vanish.
pub fn charpoly_from_traces(traces: &[Rational], size: usize) -> Result<RationalPolynomial> {
    if traces.len() < size {
        return Err(Error::Internal(format!(
            "{} traces given for a block of size {size}",
            traces.len()
        )));
    }
    let mut e = vec![Rational::one()];
    for k in 1..=traces.len() {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rational::from_integer(BigInt::from(k)));
    }
    if let Some(k) = (size + 1..e.len()).find(|&k| !e[k].is_zero()) {
        return Err(Error::Internal(format!(
            "traces are inconsistent with a block of size {size} (e_{k} = {})",
            e[k]
        )));
    }
    let coeffs = (0..=size)
        .map(|i| {
            let k = size - i;
            if k.is_multiple_of(2) {
                e[k].clone()
            } else {
                -e[k].clone()
            }
        })
        .collect();
    Ok(RationalPolynomial::new(coeffs))
}
