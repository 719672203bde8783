//! Interpolation of block characteristic polynomials in `n` and their
//! splitting into eigenvalue families.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::bivariate::{derivative_x, resultant_in_n, BiPoly};
use crate::error::{Error, Result};
use crate::partition::{dimension_polynomial, Partition};
use crate::poly::{rat, Rational, RationalPolynomial};

/// Cartesian products of per-degree root choices larger than this are
/// rejected as ambiguous.
const MAX_ROOT_COMBINATIONS: usize = 100_000;
/// Coincidence degrees are searched up to this value.
const COINCIDENCE_LIMIT: u64 = 1_000_000;

/// `det(x - A_λ(n))` with coefficients interpolated as polynomials in `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyFamily {
    pub lambda: Partition,
    /// Stable multiplicity `m_λ`, the size of `A_λ(n)`.
    pub size: usize,
    pub coefficients: BiPoly,
    pub valid_from: usize,
    pub degree_bound: usize,
    /// Degrees used for the fit.
    pub samples: Vec<usize>,
    /// Held-out degrees reproduced exactly.
    pub verified_at: Vec<usize>,
}

impl CharPolyFamily {
    pub fn at(&self, n: usize) -> RationalPolynomial {
        self.coefficients.at_int(n as i64)
    }
}

/// Fits a family through per-degree characteristic polynomials. The first
/// `degree_bound + 1` samples are interpolated and the rest are held out.
pub fn interpolate_family(
    lambda: &Partition,
    size: usize,
    samples: &[(usize, RationalPolynomial)],
    degree_bound: usize,
) -> Result<CharPolyFamily> {
    if samples.len() < degree_bound + 3 {
        return Err(Error::Internal(format!(
            "{} samples for degree bound {degree_bound}; need {}",
            samples.len(),
            degree_bound + 3
        )));
    }
    let (fit, held) = samples.split_at(degree_bound + 1);
    let coefficients = BiPoly::interpolate(fit)?;
    for (n, p) in held {
        if &coefficients.at_int(*n as i64) != p {
            return Err(Error::InterpolationFailed { degree: *n });
        }
    }
    Ok(CharPolyFamily {
        lambda: lambda.clone(),
        size,
        coefficients,
        valid_from: samples[0].0,
        degree_bound,
        samples: fit.iter().map(|(n, _)| *n).collect(),
        verified_at: held.iter().map(|(n, _)| *n).collect(),
    })
}

/// How a family or residual factor meets one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockShare {
    pub lambda: Partition,
    /// Multiplicity as a root of the block's characteristic polynomial.
    pub multiplicity: usize,
}

/// An eigenvalue that is a polynomial in `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenFamily {
    pub value: RationalPolynomial,
    pub multiplicity: RationalPolynomial,
    pub blocks: Vec<BlockShare>,
}

/// Per-degree facts about a residual factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEvidence {
    pub n: usize,
    pub distinct_real_roots: usize,
    pub square_free: bool,
    pub integer_roots: usize,
}

/// A factor of a block polynomial with no root polynomial in `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualFactor {
    pub factor: BiPoly,
    /// Multiplicity of each root in `kX_n`.
    pub multiplicity: RationalPolynomial,
    pub blocks: Vec<BlockShare>,
    /// Whether the discriminant in `x` is a nonzero polynomial in `n`.
    pub square_free: bool,
    pub evidence: Vec<ResidualEvidence>,
}

impl ResidualFactor {
    pub fn degree(&self) -> usize {
        self.factor.degree_x().unwrap_or(0)
    }
}

/// Degrees `n` at which two families, or two roots of residual factors,
/// take the same value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coincidence {
    pub first: String,
    pub second: String,
    /// Nonnegative integer degrees of coincidence.
    pub degrees: Vec<u64>,
    /// The two never separate.
    #[serde(default)]
    pub identical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyAnalysis {
    pub families: Vec<EigenFamily>,
    pub residuals: Vec<ResidualFactor>,
    pub coincidences: Vec<Coincidence>,
    /// Eventual number of distinct eigenvalues.
    pub distinct_count: usize,
    /// Degree from which exactly `distinct_count` distinct values occur.
    pub distinct_from: usize,
}

/// `binom(n, m)`-style bound on the degree in `n` of the block coefficients:
/// `m_λ · t` with `t` the generation degree of the target.
pub fn default_degree_bound(multiplicity: usize, target_generation_degree: usize) -> usize {
    multiplicity * target_generation_degree
}

/// Splits every block into polynomial eigenvalue families and residual
/// factors, merges equal ones across blocks and locates coincidences.
pub fn eigenvalue_families(blocks: &[CharPolyFamily]) -> Result<FamilyAnalysis> {
    let mut families: Vec<EigenFamily> = Vec::new();
    let mut residuals: Vec<ResidualFactor> = Vec::new();
    let mut start = 0;
    for block in blocks.iter().filter(|b| b.size > 0) {
        start = start.max(block.valid_from);
        let dim = dimension_polynomial(&block.lambda)?;
        let (roots, rest) = split_block(block)?;
        for (value, e) in roots {
            let share = BlockShare {
                lambda: block.lambda.clone(),
                multiplicity: e,
            };
            let extra = dim.scale(&rat(e as i64));
            match families.iter_mut().find(|f| f.value == value) {
                Some(f) => {
                    f.multiplicity = &f.multiplicity + &extra;
                    f.blocks.push(share);
                }
                None => families.push(EigenFamily {
                    value,
                    multiplicity: extra,
                    blocks: vec![share],
                }),
            }
        }
        if rest.degree_x().unwrap_or(0) == 0 {
            continue;
        }
        let probe: Vec<usize> = block.samples.iter().chain(&block.verified_at).copied().collect();
        for (factor, e) in square_free_split(&rest, block.valid_from)? {
            let share = BlockShare {
                lambda: block.lambda.clone(),
                multiplicity: e,
            };
            let extra = dim.scale(&rat(e as i64));
            match residuals.iter_mut().find(|r| r.factor == factor) {
                Some(r) => {
                    r.multiplicity = &r.multiplicity + &extra;
                    r.blocks.push(share);
                }
                None => {
                    let disc = resultant_in_n(&factor, &derivative_x(&factor), 0)?;
                    let evidence = probe.iter().map(|&n| residual_evidence(&factor, n)).collect();
                    residuals.push(ResidualFactor {
                        factor,
                        multiplicity: extra,
                        blocks: vec![share],
                        square_free: !disc.is_zero(),
                        evidence,
                    });
                }
            }
        }
    }

    let mut coincidences = Vec::new();
    let mut distinct_count = families.len();
    for (a, b) in families.iter().tuple_combinations() {
        let diff = &a.value - &b.value;
        coincidences.push(Coincidence {
            first: a.value.to_string(),
            second: b.value.to_string(),
            degrees: diff.nonnegative_integer_roots(COINCIDENCE_LIMIT),
            identical: false,
        });
    }
    for r in &residuals {
        let label = format!("roots of {}", r.factor.display());
        for f in &families {
            let q = r.factor.substitute(&f.value);
            coincidences.push(Coincidence {
                first: f.value.to_string(),
                second: label.clone(),
                degrees: q.nonnegative_integer_roots(COINCIDENCE_LIMIT),
                identical: q.is_zero(),
            });
        }
        let disc = resultant_in_n(&r.factor, &derivative_x(&r.factor), 0)?;
        coincidences.push(Coincidence {
            first: label.clone(),
            second: label.clone(),
            degrees: disc.nonnegative_integer_roots(COINCIDENCE_LIMIT),
            identical: disc.is_zero(),
        });
        distinct_count += if r.square_free {
            r.degree()
        } else {
            let n = start + r.factor.degree_n() + 10;
            r.factor
                .at_int(n as i64)
                .square_free()
                .iter()
                .map(|(f, _)| f.degree().unwrap_or(0))
                .sum()
        };
    }
    for (a, b) in residuals.iter().tuple_combinations() {
        let res = resultant_in_n(&a.factor, &b.factor, 0)?;
        if res.is_zero() {
            // a shared factor over Q(n): count its roots once
            let n = start + a.factor.degree_n() + b.factor.degree_n() + 10;
            let g = a.factor.at_int(n as i64).gcd(&b.factor.at_int(n as i64));
            distinct_count -= g.degree().unwrap_or(0);
        }
        coincidences.push(Coincidence {
            first: format!("roots of {}", a.factor.display()),
            second: format!("roots of {}", b.factor.display()),
            degrees: res.nonnegative_integer_roots(COINCIDENCE_LIMIT),
            identical: res.is_zero(),
        });
    }
    let last = coincidences
        .iter()
        .filter_map(|c| c.degrees.last())
        .max()
        .map_or(0, |&d| d as usize + 1);
    Ok(FamilyAnalysis {
        families,
        residuals,
        coincidences,
        distinct_count,
        distinct_from: start.max(last),
    })
}

/// Root families of one block with their multiplicities, and the cofactor.
fn split_block(block: &CharPolyFamily) -> Result<(Vec<(RationalPolynomial, usize)>, BiPoly)> {
    let p = &block.coefficients;
    let mut rest = p.clone();
    let mut found = Vec::new();
    for f in polynomial_roots(p, block.valid_from)? {
        let mut e = 0;
        loop {
            let (q, r) = rest.div_linear(&f);
            if !r.is_zero() || rest.degree_x().unwrap_or(0) == 0 {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            found.push((f, e));
        }
    }
    Ok((found, rest))
}

/// Every `f ∈ Q[n]` with `P(n, f(n)) = 0`.
///
/// A polynomial root takes integer values at integer `n` (it is a rational
/// root of a monic integer polynomial), and its degree is at most
/// `max_j deg c_{m-j} / j`. Integer roots are collected at that many plus
/// one consecutive degrees, each choice of one root per degree is
/// interpolated, and candidates are kept when `P(n, f(n))` vanishes
/// identically.
fn polynomial_roots(p: &BiPoly, start: usize) -> Result<Vec<RationalPolynomial>> {
    let Some(m) = p.degree_x() else {
        return Ok(Vec::new());
    };
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut droot = 0;
    for j in 1..=m {
        if let Some(d) = p.coeff(m - j).degree() {
            droot = droot.max(d.div_ceil(j));
        }
    }
    let degrees: Vec<usize> = (start..=start + droot).collect();
    let mut choices: Vec<Vec<BigInt>> = Vec::with_capacity(degrees.len());
    let mut combos = 1usize;
    for &n in &degrees {
        let at = p.at_int(n as i64);
        let roots: Vec<BigInt> = at
            .integer_roots_within(root_bound(&at))
            .0
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        if roots.is_empty() {
            return Ok(Vec::new());
        }
        combos = combos.saturating_mul(roots.len());
        choices.push(roots);
    }
    if combos > MAX_ROOT_COMBINATIONS {
        return Err(Error::AmbiguousRoots(degrees));
    }
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let pts: Vec<(Rational, Rational)> = degrees
            .iter()
            .zip(pick)
            .map(|(&n, r)| (rat(n as i64), Rational::from_integer(r.clone())))
            .collect();
        let f = RationalPolynomial::interpolate(&pts);
        if p.substitute(&f).is_zero() {
            out.insert(f.coeffs().to_vec());
        }
    }
    Ok(out.into_iter().map(RationalPolynomial::new).collect())
}

/// A bound on the absolute value of the roots of a monic polynomial:
/// `2 max_j |c_{m-j}|^{1/j}`.
fn root_bound(p: &RationalPolynomial) -> u64 {
    let Some(m) = p.degree() else {
        return 0;
    };
    let mut best = BigInt::zero();
    for j in 1..=m {
        let c = p.coeff(m - j).abs().ceil().to_integer();
        best = best.max(ceil_root(&c, j as u32));
    }
    (best * 2u32).to_u64().unwrap_or(u64::MAX)
}

fn ceil_root(c: &BigInt, k: u32) -> BigInt {
    let (mut lo, mut hi) = (BigInt::zero(), c.clone() + 1u32);
    // least r with r^k >= c
    while lo < hi {
        let mid: BigInt = (&lo + &hi) / 2u32;
        if mid.pow(k) >= *c {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    lo
}

/// Square-free decomposition over `Q(n)`: Yun's algorithm at successive
/// degrees, with the factors interpolated in `n` and multiplied back for a
/// check. Falls back to the undecomposed factor if the shapes disagree.
fn square_free_split(r: &BiPoly, start: usize) -> Result<Vec<(BiPoly, usize)>> {
    let bound = r.degree_n();
    let degrees: Vec<usize> = (start..=start + bound + 2).collect();
    let per_n: Vec<Vec<(RationalPolynomial, usize)>> =
        degrees.iter().map(|&n| r.at_int(n as i64).square_free()).collect();
    let shape = |v: &Vec<(RationalPolynomial, usize)>| -> Vec<(usize, usize)> {
        v.iter().map(|(s, i)| (s.degree().unwrap_or(0), *i)).collect()
    };
    let first = shape(&per_n[0]);
    if first == vec![(r.degree_x().unwrap_or(0), 1)] || per_n.iter().any(|v| shape(v) != first) {
        return Ok(vec![(r.clone(), 1)]);
    }
    let mut out = Vec::new();
    let mut product = BiPoly::one();
    for (idx, &(_, i)) in first.iter().enumerate() {
        let samples: Vec<(usize, RationalPolynomial)> = degrees
            .iter()
            .zip(&per_n)
            .map(|(&n, v)| (n, v[idx].0.clone()))
            .collect();
        let s = BiPoly::interpolate(&samples)?;
        for _ in 0..i {
            product = product.mul(&s);
        }
        out.push((s, i));
    }
    if &product != r {
        return Ok(vec![(r.clone(), 1)]);
    }
    Ok(out)
}

fn residual_evidence(factor: &BiPoly, n: usize) -> ResidualEvidence {
    let p = factor.at_int(n as i64);
    let sf = p.square_free();
    let (roots, _) = p.integer_roots_within(root_bound(&p));
    ResidualEvidence {
        n,
        distinct_real_roots: p.distinct_real_roots(),
        square_free: sf.len() == 1 && sf[0].1 == 1,
        integer_roots: roots.len(),
    }
}
