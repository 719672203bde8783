//! Brute-force spectra of the full operator, for cross-checking the block
//! pipeline.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::traces::{operator_matrix, Operator};
use super::SpectralReport;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poly::{rational_string, Rational, RationalPolynomial};
use crate::relation::RelationSpec;

/// `det(x - M_n)` for the whole operator, with its factorization over `Q`
/// into linear factors and leftover square-free pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteSpectrum {
    pub n: usize,
    pub size: usize,
    pub charpoly: RationalPolynomial,
    /// Monic factors with exponents: integer roots first (largest root
    /// first), then nonlinear pieces.
    pub factors: Vec<(RationalPolynomial, usize)>,
}

impl BruteSpectrum {
    /// Number of distinct complex eigenvalues.
    pub fn distinct_eigenvalues(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.degree().unwrap_or(0)).sum()
    }

    /// Integer eigenvalues with multiplicities.
    pub fn integer_eigenvalues(&self) -> Vec<(BigInt, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, e)| ((-f.coeff(0)).to_integer(), *e))
            .collect()
    }

    /// The factored form, e.g. `(x - 3)(x - 1)^5(x + 2)^4`.
    pub fn factored(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(f, e)| {
                let base = if f.degree() == Some(1) && f.coeff(0).is_zero() {
                    "x".to_string()
                } else {
                    format!("({})", f.display_in("x"))
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect()
    }
}

/// Exact characteristic polynomial of the operator at degree `n`, computed
/// modulo word-sized primes and lifted, then factored by a square-free
/// decomposition and integer-root extraction. Rational eigenvalues of an
/// integer matrix are integers bounded by the largest absolute row sum.
pub fn brute_force_spectrum(rel: &RelationSpec, op: Operator, n: usize, caps: &Caps) -> Result<BruteSpectrum> {
    let oracle_caps = Caps {
        matrix_size: caps.oracle_size,
        ..*caps
    };
    let (_, m) = operator_matrix(rel, op, n, &oracle_caps).map_err(|e| match e {
        Error::MatrixTooLarge { n, size, .. } => Error::MatrixTooLarge {
            n,
            size,
            cap: caps.oracle_size,
        },
        other => other,
    })?;
    let charpoly = m.charpoly_rational()?;
    let bound = m.max_abs_row_sum();
    let mut linear = Vec::new();
    let mut other = Vec::new();
    for (piece, e) in charpoly.square_free() {
        let (roots, rest) = piece.integer_roots_within(bound);
        for (r, _) in roots {
            linear.push((RationalPolynomial::linear(&Rational::from_integer(r)), e));
        }
        if rest.degree().unwrap_or(0) > 0 {
            other.push((rest.monic(), e));
        }
    }
    linear.sort_by_key(|a| a.0.coeff(0));
    linear.extend(other);
    Ok(BruteSpectrum {
        n,
        size: m.rows(),
        charpoly,
        factors: linear,
    })
}

/// Outcome of comparing the block prediction with the brute-force spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub n: usize,
    pub agrees: bool,
    pub brute_force: String,
    pub diagnostic: Option<String>,
}

/// `Π_λ det(x - A_λ(n))^{dim 𝕊(λ[n])}` from the report.
pub fn predicted_charpoly(report: &SpectralReport, n: usize) -> RationalPolynomial {
    let mut out = RationalPolynomial::one();
    for block in &report.blocks {
        if let Some(p) = block.lambda.pad(n) {
            let dim = p.to_partition().hook_dimension();
            let e = dim.to_usize().expect("dimension fits in usize");
            out = &out * &block.at(n).pow(e);
        }
    }
    out
}

/// Checks `Π_λ charpoly(A_λ(n))^{dim 𝕊(λ[n])} = det(x - M_n)` exactly.
pub fn consistency_check(report: &SpectralReport, rel: &RelationSpec, n: usize, caps: &Caps) -> Result<OracleCheck> {
    let brute = brute_force_spectrum(rel, report.operator, n, caps)?;
    let predicted = predicted_charpoly(report, n);
    let diagnostic = first_difference(&predicted, &brute.charpoly);
    Ok(OracleCheck {
        n,
        agrees: diagnostic.is_none(),
        brute_force: brute.factored(),
        diagnostic,
    })
}

fn first_difference(predicted: &RationalPolynomial, actual: &RationalPolynomial) -> Option<String> {
    if predicted.degree() != actual.degree() {
        return Some(format!(
            "degree {} predicted, {} observed",
            predicted.degree().map_or(-1, |d| d as i64),
            actual.degree().map_or(-1, |d| d as i64)
        ));
    }
    let len = actual.coeffs().len();
    (0..len).rev().find_map(|k| {
        let (p, a) = (predicted.coeff(k), actual.coeff(k));
        (p != a).then(|| {
            format!(
                "coefficient of x^{k}: predicted {}, observed {}",
                rational_string(&p),
                rational_string(&a)
            )
        })
    })
}
