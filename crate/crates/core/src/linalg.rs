//! Dense integer matrices and an exact characteristic polynomial.
//!
//! The characteristic polynomial is computed modulo enough word-sized primes
//! (Hessenberg reduction over each prime field) and lifted by the Chinese
//! remainder theorem. Every coefficient `c_k` is a signed sum of principal
//! `k`-minors, so `|c_k| ≤ C(N,k) R^k ≤ (1 + R)^N` with `R` the largest
//! absolute row sum; primes are added until their product exceeds twice
//! that bound.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;

/// A dense row-major matrix of machine integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Internal("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    /// Largest `Σ_c |a_rc|` over the rows.
    pub fn max_abs_row_sum(&self) -> u64 {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|v| v.unsigned_abs()).sum())
            .max()
            .unwrap_or(0)
    }

    /// `self · other` with overflow checking.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b == 0 {
                        continue;
                    }
                    let v = a
                        .checked_mul(b)
                        .and_then(|p| p.checked_add(out.get(r, c)))
                        .ok_or(Error::Overflow("multiplying integer matrices"))?;
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DegreeMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("subtracting integer matrices")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    /// Nonzero entries of each row as `(column, value)`.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, i64)>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, *v))
                    .collect()
            })
            .collect()
    }

    /// Exact characteristic polynomial `det(xI - A)`, lowest coefficient first.
    pub fn charpoly(&self) -> Result<Vec<BigInt>> {
        if !self.is_square() {
            return Err(Error::DegreeMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(vec![BigInt::one()]);
        }
        let bound = BigUint::from(self.max_abs_row_sum() + 1).pow(n as u32);
        let needed = bound * 2u32 + 1u32;
        let mut primes = Vec::new();
        let mut modulus = BigUint::one();
        let mut p = 1u64 << 31;
        while modulus <= needed {
            p = previous_prime(p);
            primes.push(p);
            modulus *= p;
        }
        let residues: Vec<Vec<u64>> = primes.par_iter().map(|&p| charpoly_mod(self, p)).collect();
        let modulus = BigInt::from(modulus);
        let half = &modulus / 2;
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut x = BigInt::zero();
            let mut m = BigInt::one();
            for (res, &p) in residues.iter().zip(&primes) {
                // Garner step: x ≡ previous mod m, x ≡ res[k] mod p
                let pb = BigInt::from(p);
                let cur = x.mod_floor(&pb);
                let diff = (BigInt::from(res[k]) - cur).mod_floor(&pb);
                let inv = BigInt::from(inv_mod(m.mod_floor(&pb).try_into().unwrap(), p));
                let t = (diff * inv).mod_floor(&pb);
                x += &m * t;
                m *= pb;
            }
            if x > half {
                x -= &modulus;
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn charpoly_rational(&self) -> Result<RationalPolynomial> {
        Ok(RationalPolynomial::new(
            self.charpoly()?
                .into_iter()
                .map(crate::poly::Rational::from_integer)
                .collect(),
        ))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn previous_prime(mut p: u64) -> u64 {
    loop {
        p -= 1;
        if is_prime(p) {
            return p;
        }
    }
}

/// Characteristic polynomial over `F_p` by reduction to upper Hessenberg
/// form and the standard column recurrence.
fn charpoly_mod(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let pi = p as i64;
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|r| a.row(r).iter().map(|&v| v.rem_euclid(pi) as u64).collect())
        .collect();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = inv_mod(h[col + 1][col], p);
        for r in col + 2..n {
            if h[r][col] == 0 {
                continue;
            }
            let f = mul_mod(h[r][col], inv, p);
            // row_r -= f row_{col+1}
            for c in 0..n {
                let sub = mul_mod(f, h[col + 1][c], p);
                h[r][c] = (h[r][c] + p - sub) % p;
            }
            // column_{col+1} += f column_r keeps the similarity
            for row in h.iter_mut() {
                let add = mul_mod(f, row[r], p);
                row[col + 1] = (row[col + 1] + add) % p;
            }
        }
    }
    // polys[m] = charpoly of the leading m×m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        // (x - h[m][m]) * polys[m]
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - mul_mod(h[m][m], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(prod, h[i][m], p);
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = (next[j] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Oracle: `det(xI - A)` by Laplace expansion over rational points and
    /// Lagrange interpolation; feasible for tiny matrices only.
    fn charpoly_by_cofactors(a: &IntMatrix) -> Vec<BigInt> {
        fn det(m: &[Vec<BigInt>]) -> BigInt {
            if m.is_empty() {
                return BigInt::one();
            }
            let mut total = BigInt::zero();
            for (j, v) in m[0].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = v * det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
        let n = a.rows();
        let points: Vec<(crate::poly::Rational, crate::poly::Rational)> = (0..=n as i64)
            .map(|x| {
                let m: Vec<Vec<BigInt>> = (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| BigInt::from(if r == c { x } else { 0 } - a.get(r, c)))
                            .collect()
                    })
                    .collect();
                (crate::poly::rat(x), crate::poly::Rational::from_integer(det(&m)))
            })
            .collect();
        RationalPolynomial::interpolate(&points)
            .coeffs()
            .iter()
            .map(|c| c.to_integer())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(IntMatrix::zeros(3, 3).charpoly().unwrap(), ints(&[0, 0, 0, 1]));
        assert_eq!(IntMatrix::zeros(0, 0).charpoly().unwrap(), ints(&[1]));
        let j = IntMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        // (x - 2)(x + 1)^2 = x^3 - 3x - 2
        assert_eq!(j.charpoly().unwrap(), ints(&[-2, -3, 0, 1]));
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let mut seed = 7u64;
        for n in 1..7 {
            let mut rows = vec![vec![0i64; n]; n];
            for row in rows.iter_mut() {
                for v in row.iter_mut() {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    *v = ((seed >> 33) % 11) as i64 - 5;
                }
            }
            let a = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(a.charpoly().unwrap(), charpoly_by_cofactors(&a), "{a:?}");
        }
    }

    #[test]
    fn large_coefficients_are_lifted() {
        // 12 × 12 all-ones times 1000: charpoly x^11 (x - 12000)
        let a = IntMatrix::from_rows(&vec![vec![1000; 12]; 12]).unwrap();
        let cp = a.charpoly().unwrap();
        assert_eq!(cp[12], BigInt::one());
        assert_eq!(cp[11], BigInt::from(-12000));
        assert!(cp[..11].iter().all(Zero::is_zero));
    }

    #[test]
    fn products_and_transposes() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4], vec![5, 6]]).unwrap();
        let g = a.transpose().mul(&a).unwrap();
        assert_eq!(g.to_rows(), vec![vec![35, 44], vec![44, 56]]);
        assert!(g.is_symmetric());
        assert_eq!(a.max_abs_row_sum(), 11);
        let big = IntMatrix::from_rows(&[vec![i64::MAX]]).unwrap();
        assert!(big.mul(&big).is_err());
        assert!(a.mul(&a).is_err());
        assert!(g.charpoly().unwrap()[0].is_positive());
    }
}
