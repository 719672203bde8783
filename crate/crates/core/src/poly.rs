//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first; the vector is empty for the
//! zero polynomial and its last entry is nonzero otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats a rational as `p/q` (denominator always written).
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Internal(format!("malformed rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x - root`.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    /// The polynomial `binom(n - shift, k)` in the indeterminate `n`.
    pub fn binomial(shift: i64, k: usize) -> Self {
        let mut p = Self::one();
        for j in 0..k as i64 {
            p = &p * &Self::new(vec![rat(-shift - j), Rational::one()]);
        }
        let mut fact = BigInt::one();
        for j in 2..=k {
            fact *= BigInt::from(j);
        }
        p.scale(&Rational::new(BigInt::one(), fact))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&rat(t))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            // keep coefficients small between steps
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: monic `s_i` with `self = lc · Π s_i^i`.
    /// Constant factors are omitted.
    pub fn square_free(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            b = b.div_rem(&g).0;
            c = d.div_rem(&g).0;
            if g.degree().unwrap_or(0) > 0 {
                out.push((g, i));
            }
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Primitive integer multiple (content removed, positive leading coefficient).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if !g.is_zero() {
            if ints.last().is_some_and(Signed::is_negative) {
                g = -g;
            }
            for c in &mut ints {
                *c /= &g;
            }
        }
        ints
    }

    /// Integer roots `r` with `|r| <= bound`, with multiplicities, in
    /// increasing order. Also returns the cofactor left after dividing them out.
    pub fn integer_roots_within(&self, bound: u64) -> (Vec<(BigInt, usize)>, Self) {
        let mut rest = self.clone();
        let mut roots = Vec::new();
        if rest.is_zero() {
            return (roots, rest);
        }
        let strip = |rest: &mut Self, r: &Rational| -> usize {
            let lin = Self::linear(r);
            let mut e = 0;
            while rest.degree().unwrap_or(0) > 0 {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                *rest = q;
                e += 1;
            }
            e
        };
        let e0 = strip(&mut rest, &Rational::zero());
        if e0 > 0 {
            roots.push((BigInt::zero(), e0));
        }
        let ints = rest.primitive_integer();
        let c0 = ints.first().cloned().unwrap_or_default();
        for mag in 1..=bound {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let m = BigInt::from(mag);
            if !(&c0 % &m).is_zero() {
                continue;
            }
            for r in [-m.clone(), m.clone()] {
                let q = Rational::from_integer(r.clone());
                if rest.eval(&q).is_zero() {
                    let e = strip(&mut rest, &q);
                    roots.push((r, e));
                }
            }
        }
        roots.sort();
        (roots, rest)
    }

    /// An upper bound on the absolute value of every complex root.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lc) = self.leading() else {
            return Rational::zero();
        };
        let lc = lc.abs();
        let mut best = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = c.abs() / &lc;
            if v > best {
                best = v;
            }
        }
        best + Rational::one()
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn distinct_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let len = seq.len();
            let r = seq[len - 2].div_rem(&seq[len - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        let changes = |signs: Vec<i32>| {
            let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sign = |q: &Rational| -> i32 {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        };
        let at_pos: Vec<i32> = seq.iter().map(|p| sign(p.leading().unwrap())).collect();
        let at_neg: Vec<i32> = seq
            .iter()
            .map(|p| {
                let s = sign(p.leading().unwrap());
                if p.degree().unwrap() % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect();
        changes(at_neg) - changes(at_pos)
    }

    /// Exact interpolation through `(t_i, v_i)` with distinct nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        // Newton divided differences
        let k = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
        for level in 1..k {
            for i in (level..k).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num / den;
            }
        }
        let mut out = Self::zero();
        for i in (0..k).rev() {
            out = &(&out * &Self::linear(&points[i].0)) + &Self::constant(dd[i].clone());
        }
        out
    }

    /// Interpolates samples indexed by integers.
    pub fn interpolate_ints<'a>(points: impl IntoIterator<Item = (i64, &'a Rational)>) -> Self {
        let pts: Vec<(Rational, Rational)> = points.into_iter().map(|(t, v)| (rat(t), v.clone())).collect();
        Self::interpolate(&pts)
    }

    /// Nonnegative integer roots up to `limit`.
    pub fn nonnegative_integer_roots(&self, limit: u64) -> Vec<u64> {
        if self.is_zero() {
            return Vec::new();
        }
        let bound = self.cauchy_bound().ceil().to_integer().to_u64().unwrap_or(u64::MAX);
        (0..=bound.min(limit))
            .filter(|&t| self.eval(&Rational::from_integer(BigInt::from(t))).is_zero())
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        Ok(Self::new(
            items
                .iter()
                .map(|s| parse_rational(s.as_ref()))
                .collect::<Result<_>>()?,
        ))
    }

    /// Human-readable form in the named variable, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("n"))
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.display_in("t"))
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn binomial_polynomial_matches_counts() {
        let b = RationalPolynomial::binomial(2, 2);
        for n in 4..12i64 {
            let m = n - 2;
            assert_eq!(b.eval_int(n), rat(m * (m - 1) / 2));
        }
        assert_eq!(RationalPolynomial::binomial(0, 0), RationalPolynomial::one());
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(q, &p(&[-1, 1]) * &p(&[-1, 1]));
    }

    #[test]
    fn square_free_of_petersen_polynomial() {
        let f = &(&p(&[-3, 1]) * &p(&[-1, 1]).pow(5)) * &p(&[2, 1]).pow(4);
        let sf = f.square_free();
        assert_eq!(sf, vec![(p(&[-3, 1]), 1), (p(&[2, 1]), 4), (p(&[-1, 1]), 5)]);
    }

    #[test]
    fn integer_roots_with_multiplicity() {
        let f = &(&p(&[-3, 1]) * &p(&[-1, 1]).pow(5)) * &(&p(&[2, 1]).pow(4) * &p(&[-2, 0, 1]));
        let (roots, rest) = f.integer_roots_within(10);
        let got: Vec<(i64, usize)> = roots.iter().map(|(r, e)| (r.to_i64().unwrap(), *e)).collect();
        assert_eq!(got, vec![(-2, 4), (1, 5), (3, 1)]);
        assert_eq!(rest, p(&[-2, 0, 1]));
        assert_eq!(rest.distinct_real_roots(), 2);
        assert_eq!(p(&[1, 0, 1]).distinct_real_roots(), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[6, -5, 1]).scale(&ratio(1, 2));
        let pts: Vec<(Rational, Rational)> = (7..10).map(|n| (rat(n), f.eval_int(n))).collect();
        assert_eq!(RationalPolynomial::interpolate(&pts), f);
    }

    #[test]
    fn display_and_strings() {
        let f = p(&[6, -5, 1]).scale(&ratio(1, 2));
        assert_eq!(f.display_in("n"), "1/2*n^2 - 5/2*n + 3");
        assert_eq!(f.to_strings(), vec!["3/1", "-5/2", "1/2"]);
        assert_eq!(RationalPolynomial::from_strings(&f.to_strings()).unwrap(), f);
        assert_eq!(p(&[0, -1]).display_in("x"), "-x");
    }

    #[test]
    fn nonnegative_roots() {
        // (n-3)(n-7)(n+2)
        let f = &(&p(&[-3, 1]) * &p(&[-7, 1])) * &p(&[2, 1]);
        assert_eq!(f.nonnegative_integer_roots(1000), vec![3, 7]);
    }
}
