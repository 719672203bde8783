//! Polynomials in `x` whose coefficients are polynomials in `n`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, Rational, RationalPolynomial};

/// An element of `Q[n][x]`, lowest power of `x` first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BiPoly {
    coeffs: Vec<RationalPolynomial>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<RationalPolynomial>) -> Self {
        while coeffs.last().is_some_and(RationalPolynomial::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn one() -> Self {
        BiPoly::new(vec![RationalPolynomial::one()])
    }

    /// `x - f(n)`.
    pub fn linear(f: &RationalPolynomial) -> Self {
        BiPoly::new(vec![-f.clone(), RationalPolynomial::one()])
    }

    pub fn coeffs(&self) -> &[RationalPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalPolynomial {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree in `x`; `None` for zero.
    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest degree in `n` of any coefficient.
    pub fn degree_n(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(RationalPolynomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c == &RationalPolynomial::one())
    }

    /// The polynomial in `x` obtained by fixing `n`.
    pub fn at(&self, n: &Rational) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| c.eval(n)).collect())
    }

    pub fn at_int(&self, n: i64) -> RationalPolynomial {
        self.at(&rat(n))
    }

    /// `P(n, f(n))` as a polynomial in `n`.
    pub fn substitute(&self, f: &RationalPolynomial) -> RationalPolynomial {
        let mut acc = RationalPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * f) + c;
        }
        acc
    }

    /// Division by `x - f(n)`: quotient and the remainder `P(n, f(n))`.
    pub fn div_linear(&self, f: &RationalPolynomial) -> (BiPoly, RationalPolynomial) {
        let Some(d) = self.degree_x() else {
            return (BiPoly::default(), RationalPolynomial::zero());
        };
        if d == 0 {
            return (BiPoly::default(), self.coeffs[0].clone());
        }
        let mut quot = vec![RationalPolynomial::zero(); d];
        let mut carry = self.coeffs[d].clone();
        for i in (0..d).rev() {
            quot[i] = carry.clone();
            carry = &(&carry * f) + &self.coeffs[i];
        }
        (BiPoly::new(quot), carry)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return BiPoly::default();
        }
        let mut out = vec![RationalPolynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }

    /// Fits each coefficient through samples of the polynomial in `x` at
    /// integer degrees. Samples must share one `x`-degree.
    pub fn interpolate(samples: &[(usize, RationalPolynomial)]) -> Result<BiPoly> {
        let Some(width) = samples.iter().map(|(_, p)| p.coeffs().len()).max() else {
            return Ok(BiPoly::default());
        };
        let coeffs = (0..width)
            .map(|i| {
                let pts: Vec<(Rational, Rational)> =
                    samples.iter().map(|(n, p)| (rat(*n as i64), p.coeff(i))).collect();
                RationalPolynomial::interpolate(&pts)
            })
            .collect();
        Ok(BiPoly::new(coeffs))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.coeffs.iter().map(RationalPolynomial::to_strings).collect()
    }

    /// Human-readable form with `n` inside the coefficients.
    pub fn display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coeff = c.display_in("n");
            terms.push(match (mono.is_empty(), c == &RationalPolynomial::one()) {
                (true, _) => format!("({coeff})"),
                (false, true) => mono,
                (false, false) => format!("({coeff})*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display())
    }
}

/// Resultant of two polynomials over `Q`, by elimination on the Sylvester
/// matrix.
pub fn resultant(a: &RationalPolynomial, b: &RationalPolynomial) -> Rational {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Rational::zero();
    };
    let size = da + db;
    if size == 0 {
        return Rational::one();
    }
    let mut m = vec![vec![Rational::zero(); size]; size];
    for r in 0..db {
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            m[db + r][r + j] = c.clone();
        }
    }
    determinant(m)
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let size = m.len();
    let mut det = Rational::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..size {
                let v = &factor * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

/// `Res_x(P, Q)` as a polynomial in `n`, by evaluation at integer degrees
/// from `start` and interpolation under the degree bound
/// `deg_x P · deg_n Q + deg_x Q · deg_n P`, checked at two further degrees.
pub fn resultant_in_n(p: &BiPoly, q: &BiPoly, start: usize) -> Result<RationalPolynomial> {
    let dx = (p.degree_x().unwrap_or(0), q.degree_x().unwrap_or(0));
    let bound = dx.0 * q.degree_n() + dx.1 * p.degree_n();
    let value = |n: usize| {
        let t = rat(n as i64);
        resultant(&p.at(&t), &q.at(&t))
    };
    let pts: Vec<(Rational, Rational)> = (start..=start + bound).map(|n| (rat(n as i64), value(n))).collect();
    let r = RationalPolynomial::interpolate(&pts);
    for n in start + bound + 1..=start + bound + 2 {
        if r.eval_int(n as i64) != value(n) {
            return Err(Error::Internal(format!("resultant interpolation failed at degree {n}")));
        }
    }
    Ok(r)
}

/// The derivative in `x`.
pub fn derivative_x(p: &BiPoly) -> BiPoly {
    BiPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&rat(i as i64)))
            .collect(),
    )
}
