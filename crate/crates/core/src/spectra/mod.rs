//! Stable spectra of the operators defined by equivariant relations.
//!
//! Nothing here builds the blocks `A_λ(n)` themselves. Their power traces
//! come from the class sums in [`traces`], Newton's identities turn those
//! into characteristic polynomials at each degree, and the coefficients are
//! interpolated as polynomials in `n` and checked at held-out degrees.
//! [`families`] then splits the result into eigenvalue families.

pub mod bivariate;
pub mod families;
pub mod oracle;
pub mod traces;


use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use bivariate::BiPoly;
pub use families::{
    default_degree_bound, eigenvalue_families, interpolate_family, BlockShare, CharPolyFamily, Coincidence,
    EigenFamily, FamilyAnalysis, ResidualEvidence, ResidualFactor,
};
pub use oracle::{brute_force_spectrum, consistency_check, predicted_charpoly, BruteSpectrum, OracleCheck};
pub use traces::{charpoly_from_traces, isotypic_traces, operator_matrix, DegreeTraces, Operator};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fiset::FISetSpec;
use crate::multiplicity::{stable_from, stable_multiplicity};
use crate::partition::Partition;
use crate::poly::{rat, rational_string, RationalPolynomial};
use crate::relation::RelationSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Degrees scanned past the declared degree when a quotient needs its
/// stable range.
const STABILITY_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectrumOptions {
    pub operator: Operator,
    /// Degrees at which every block is recomputed from traces and compared
    /// with its family.
    pub verify: Option<RangeInclusive<usize>>,
    /// Degrees for the brute-force comparison.
    pub oracle_degrees: Vec<usize>,
}

/// Per-degree comparison of the families with freshly computed blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub n: usize,
    pub checked: Vec<Partition>,
    /// Blocks whose family starts above `n`.
    pub skipped: Vec<Partition>,
    pub agrees: bool,
    /// `Σ_λ dim 𝕊(λ[n]) tr(A_λ(n)^k) = tr(M_n^k)` for every computed `k`;
    /// not checked when a block was skipped.
    pub trace_identity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub schema: u32,
    pub operator: Operator,
    pub caps: Caps,
    /// First degree at which every generator and identification is in play.
    pub stable_start: usize,
    pub blocks: Vec<CharPolyFamily>,
    pub families: Vec<EigenFamily>,
    pub residuals: Vec<ResidualFactor>,
    pub coincidences: Vec<Coincidence>,
    pub distinct_count: usize,
    pub distinct_from: usize,
    /// Sum of all multiplicity polynomials; equals `|X_n|`.
    pub cardinality: RationalPolynomial,
    pub verification: Vec<VerificationRecord>,
    pub oracle: Vec<OracleCheck>,
    pub notes: Vec<String>,
}

impl SpectralReport {
    pub fn block(&self, lambda: &Partition) -> Option<&CharPolyFamily> {
        self.blocks.iter().find(|b| &b.lambda == lambda)
    }

    pub fn is_verified(&self) -> bool {
        self.verification
            .iter()
            .all(|v| v.agrees && v.trace_identity != Some(false))
            && self.oracle.iter().all(|o| o.agrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("cannot read report: {e}")))
    }

    /// `n,eigenvalue,multiplicity` rows; residual roots are named by their
    /// factor at that degree.
    pub fn to_csv(&self, degrees: RangeInclusive<usize>) -> String {
        let mut out = String::from("n,eigenvalue,multiplicity\n");
        for n in degrees {
            let t = rat(n as i64);
            for f in &self.families {
                let _ = writeln!(out, "{n},{},{}", f.value.eval(&t), f.multiplicity.eval(&t));
            }
            for r in &self.residuals {
                let _ = writeln!(
                    out,
                    "{n},\"root of {}\",{}",
                    r.factor.at(&t).display_in("x"),
                    r.multiplicity.eval(&t)
                );
            }
        }
        out
    }
}

/// Runs the whole pipeline for the chosen operator of `rel`.
pub fn analyze(rel: &RelationSpec, opts: &SpectrumOptions, caps: &Caps) -> Result<SpectralReport> {
    let op = opts.operator;
    if op != Operator::Gram && !rel.is_self_relation() {
        return Err(Error::InvalidRelation(format!(
            "the {} operator needs a self-relation; use the Gram operator",
            op.name()
        )));
    }
    let space = rel.source();
    let t = match op {
        Operator::Gram => rel.target().generation_degree(),
        _ => space.generation_degree(),
    };
    let mut stable_start = rel.max_threshold();
    for s in std::iter::once(space).chain((!rel.is_self_relation()).then(|| rel.target())) {
        stable_start = stable_start.max(quotient_start(s, caps)?);
    }

    let mut plans = Vec::new();
    for lambda in Partition::up_to(space.generation_degree()) {
        let m = stable_multiplicity(space, &lambda, caps)? as usize;
        if m == 0 {
            continue;
        }
        let from = stable_start.max(stable_from(space, &lambda, caps)?);
        plans.push((lambda, m, from));
    }
    let k_max = plans.iter().map(|p| p.1).max().unwrap_or(0) + 1;

    let mut cache = DegreeCache::new(rel, op, k_max, caps);
    let mut blocks = Vec::with_capacity(plans.len());
    for (lambda, m, from) in &plans {
        let mut bound = default_degree_bound(*m, t);
        let mut attempt = 0;
        let family = loop {
            let degrees: Vec<usize> = (*from..=from + bound + 2).collect();
            cache.ensure(&degrees)?;
            let samples = degrees
                .iter()
                .map(|&n| Ok((n, cache.block_charpoly(n, lambda, *m)?)))
                .collect::<Result<Vec<_>>>()?;
            match interpolate_family(lambda, *m, &samples, bound) {
                Err(Error::InterpolationFailed { .. }) if attempt == 0 => {
                    attempt += 1;
                    bound = (2 * bound).max(1);
                }
                other => break other?,
            }
        };
        blocks.push(family);
    }

    let analysis = eigenvalue_families(&blocks)?;
    let mut cardinality = RationalPolynomial::zero();
    for f in &analysis.families {
        cardinality = &cardinality + &f.multiplicity;
    }
    for r in &analysis.residuals {
        cardinality = &cardinality + &r.multiplicity.scale(&rat(r.degree() as i64));
    }
    check_cardinality(space, &cardinality, &blocks, &cache)?;

    let mut verification = Vec::new();
    if let Some(range) = opts.verify.clone() {
        let degrees: Vec<usize> = range.collect();
        cache.ensure(&degrees)?;
        for n in degrees {
            verification.push(cache.verify(n, &blocks)?);
        }
    }

    let mut notes = Vec::new();
    match op {
        Operator::Gram => notes.push(
            "Gram operator r^T r: eigenvalues are squared singular values of the blocks of r only when those blocks are 1x1; \
             larger blocks mix singular values across copies."
                .to_string(),
        ),
        Operator::Laplacian => notes.push("Laplacian D - A with D the diagonal of row sums.".to_string()),
        Operator::Adjacency => {}
    }
    if !rel.is_self_relation() || !rel.is_symmetric() {
        notes.push("families are listed unordered; the spectrum need not be real".to_string());
    }

    let mut report = SpectralReport {
        schema: SCHEMA_VERSION,
        operator: op,
        caps: *caps,
        stable_start,
        blocks,
        families: analysis.families,
        residuals: analysis.residuals,
        coincidences: analysis.coincidences,
        distinct_count: analysis.distinct_count,
        distinct_from: analysis.distinct_from,
        cardinality,
        verification,
        oracle: Vec::new(),
        notes,
    };
    let checks = opts
        .oracle_degrees
        .par_iter()
        .map(|&n| consistency_check(&report, rel, n, caps))
        .collect::<Result<Vec<_>>>()?;
    report.oracle = checks;
    Ok(report)
}

/// Stable start of a quotient spec, 0 for a pure induced one.
fn quotient_start(spec: &FISetSpec, caps: &Caps) -> Result<usize> {
    if spec.is_pure_induced() {
        return Ok(0);
    }
    let n_max = spec.declared_degree() + 2 * STABILITY_WINDOW;
    spec.detect_stable_range(n_max, STABILITY_WINDOW, caps)?
        .start
        .ok_or(Error::Unstable(n_max))
}

/// `Σ` of the multiplicity polynomials must be the size of `X_n`.
fn check_cardinality(
    space: &FISetSpec,
    total: &RationalPolynomial,
    blocks: &[CharPolyFamily],
    cache: &DegreeCache<'_>,
) -> Result<()> {
    if space.is_pure_induced() {
        let expected = space.induced_cardinality_polynomial();
        if &expected != total {
            return Err(Error::Internal(format!(
                "multiplicities sum to {total}, expected {expected}"
            )));
        }
        return Ok(());
    }
    let from = blocks.iter().map(|b| b.valid_from).max().unwrap_or(0);
    for (n, d) in cache.degrees.range(from..) {
        if total.eval_int(*n as i64) != rat(d.size as i64) {
            return Err(Error::Internal(format!(
                "multiplicities sum to {} at degree {n}, but |X_n| = {}",
                rational_string(&total.eval_int(*n as i64)),
                d.size
            )));
        }
    }
    Ok(())
}

struct DegreeCache<'a> {
    rel: &'a RelationSpec,
    op: Operator,
    k_max: usize,
    caps: &'a Caps,
    degrees: BTreeMap<usize, DegreeTraces>,
}

impl<'a> DegreeCache<'a> {
    fn new(rel: &'a RelationSpec, op: Operator, k_max: usize, caps: &'a Caps) -> Self {
        DegreeCache {
            rel,
            op,
            k_max,
            caps,
            degrees: BTreeMap::new(),
        }
    }

    fn ensure(&mut self, degrees: &[usize]) -> Result<()> {
        let missing: Vec<usize> = degrees
            .iter()
            .copied()
            .filter(|n| !self.degrees.contains_key(n))
            .collect();
        let computed = missing
            .par_iter()
            .map(|&n| DegreeTraces::compute(self.rel, self.op, n, self.k_max, self.caps))
            .collect::<Result<Vec<_>>>()?;
        for d in computed {
            self.degrees.insert(d.n, d);
        }
        Ok(())
    }

    fn block_charpoly(&self, n: usize, lambda: &Partition, size: usize) -> Result<RationalPolynomial> {
        let traces = self.degrees[&n].isotypic(lambda)?;
        charpoly_from_traces(&traces, size)
    }

    fn verify(&self, n: usize, blocks: &[CharPolyFamily]) -> Result<VerificationRecord> {
        let d = &self.degrees[&n];
        let (mut checked, mut skipped) = (Vec::new(), Vec::new());
        let mut agrees = true;
        let mut sums = vec![BigInt::from(0); d.k_max()];
        for b in blocks {
            if n < b.valid_from {
                skipped.push(b.lambda.clone());
                continue;
            }
            let traces = d.isotypic(&b.lambda)?;
            let dim: BigUint = b
                .lambda
                .pad(n)
                .map_or(BigUint::from(0u32), |p| p.to_partition().hook_dimension());
            for (s, tr) in sums.iter_mut().zip(&traces) {
                *s += BigInt::from(dim.clone()) * tr.to_integer();
            }
            let actual = charpoly_from_traces(&traces, b.size)?;
            agrees &= actual == b.at(n);
            checked.push(b.lambda.clone());
        }
        let trace_identity = skipped.is_empty().then(|| sums == d.total_traces());
        Ok(VerificationRecord {
            n,
            checked,
            skipped,
            agrees,
            trace_identity,
        })
    }
}
