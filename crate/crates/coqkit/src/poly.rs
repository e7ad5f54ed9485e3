//! Exact polynomials: integer polynomials (constant term first), rational
//! polynomials for Euclidean division, Lagrange interpolation from exact
//! sample points, characteristic polynomials via fraction-free determinants,
//! and invariant factors (rational canonical form data) of integer matrices.

use crate::matrix::IMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Integer polynomial; `coeffs[k]` is the coefficient of t^k. Normalized so
/// the last stored coefficient is nonzero (empty = zero polynomial).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention of callers
    /// that guard on `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division; panics if the division is not exact.
    pub fn div_exact(&self, other: &IntPoly) -> IntPoly {
        let (q, r) = RatPoly::from_int(self).div_rem(&RatPoly::from_int(other));
        assert!(r.is_zero(), "polynomial division is not exact");
        q.to_int().expect("exact quotient has non-integer coefficients")
    }

    /// Exact Lagrange interpolation through (x_k, y_k); panics if the
    /// interpolant has non-integer coefficients.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> IntPoly {
        let rat: Vec<(BigRational, BigRational)> = points
            .iter()
            .map(|(x, y)| (BigRational::from(x.clone()), BigRational::from(y.clone())))
            .collect();
        RatPoly::interpolate(&rat).to_int().expect("interpolant is not integral")
    }

    /// Pretty form like "t^6 - t^5 - t + 1" (highest degree first).
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = if k == 0 {
                format!("{mag}")
            } else {
                let pow = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if mag.is_one() {
                    pow
                } else {
                    format!("{mag}*{pow}")
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{term}") } else { term });
            } else if c.is_negative() {
                parts.push(format!("- {term}"));
            } else {
                parts.push(format!("+ {term}"));
            }
        }
        parts.join(" ")
    }
}

/// Rational polynomial (constant term first), for Euclidean division and the
/// invariant-factor computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        RatPoly::new(out)
    }

    /// Euclidean division: self = q * other + r with deg r < deg other.
    pub fn div_rem(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = RatPoly::zero();
        let dlead = other.coeffs.last().unwrap().clone();
        let dd = other.degree();
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let c = r.coeffs.last().unwrap() / &dlead;
            let term = RatPoly::new(vec![c]).shift(k);
            q = q.add(&term);
            r = r.sub(&term.mul(other));
        }
        (q, r)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        self.scale(&lead.recip())
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Characteristic polynomial det(tI − M) of an integer matrix, computed by
/// interpolating exact determinants at t = 0..n.
pub fn char_poly(m: &IMat) -> IntPoly {
    assert!(m.is_square());
    let n = m.nrows;
    let points: Vec<(BigInt, BigInt)> = (0..=n as i64)
        .map(|t| {
            let tb = BigInt::from(t);
            let a = IMat::from_fn(n, n, |i, j| {
                if i == j {
                    &tb - &m[(i, j)]
                } else {
                    -m[(i, j)].clone()
                }
            });
            (tb, a.det())
        })
        .collect();
    IntPoly::interpolate(&points)
}

/// Invariant factors of the ℚ[t]-module given by tI − M: the non-unit
/// diagonal entries of the Smith form of tI − M over ℚ[t], made monic,
/// ordered so each divides the next; their product is the characteristic
/// polynomial. For an integer matrix these are integer polynomials.
pub fn invariant_factors(m: &IMat) -> Vec<IntPoly> {
    assert!(m.is_square());
    let n = m.nrows;
    // a[i][j] = (tI - M)[i][j] as rational polynomials.
    let mut a: Vec<Vec<RatPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c0 = BigRational::from(-m[(i, j)].clone());
                    if i == j {
                        RatPoly::new(vec![c0, BigRational::one()])
                    } else {
                        RatPoly::new(vec![c0])
                    }
                })
                .collect()
        })
        .collect();
    let mut factors: Vec<RatPoly> = Vec::new();
    let mut top = 0usize;
    while top < n {
        // Find a nonzero entry of minimal degree in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in top..n {
            for j in top..n {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| a[i][j].degree() < a[bi][bj].degree()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            factors.push(RatPoly::one());
            top += 1;
            continue;
        };
        a.swap(top, bi);
        for row in a.iter_mut() {
            row.swap(top, bj);
        }
        // Eliminate row/column `top`; restart whenever a remainder drops
        // the minimal degree.
        'reduce: loop {
            for i in top + 1..n {
                if a[i][top].is_zero() {
                    continue;
                }
                let (q, r) = a[i][top].div_rem(&a[top][top]);
                for j in top..n {
                    let s = q.mul(&a[top][j]);
                    a[i][j] = a[i][j].sub(&s);
                }
                if !r.is_zero() {
                    a.swap(top, i);
                    continue 'reduce;
                }
            }
            for j in top + 1..n {
                if a[top][j].is_zero() {
                    continue;
                }
                let (q, r) = a[top][j].div_rem(&a[top][top]);
                for i in top..n {
                    let s = q.mul(&a[i][top]);
                    a[i][j] = a[i][j].sub(&s);
                }
                if !r.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(top, j);
                    }
                    continue 'reduce;
                }
            }
            // Row and column are clear; ensure the pivot divides every
            // remaining entry (Smith condition).
            for i in top + 1..n {
                for j in top + 1..n {
                    let (_, r) = a[i][j].div_rem(&a[top][top]);
                    if !r.is_zero() {
                        // Add row i to row top and restart the elimination.
                        for jj in top..n {
                            let add = a[i][jj].clone();
                            a[top][jj] = a[top][jj].add(&add);
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        factors.push(a[top][top].monic());
        top += 1;
    }
    factors.sort_by_key(|f| f.degree());
    let out: Vec<IntPoly> = factors
        .into_iter()
        .filter(|f| f.degree() > 0)
        .map(|f| f.to_int().expect("invariant factor of an integer matrix must be integral"))
        .collect();
    // Sanity: divisibility chain and product = characteristic polynomial.
    for w in out.windows(2) {
        let (_, r) = RatPoly::from_int(&w[1]).div_rem(&RatPoly::from_int(&w[0]));
        debug_assert!(r.is_zero(), "invariant factors do not form a divisibility chain");
    }
    debug_assert_eq!(
        out.iter().fold(IntPoly::from_i64(&[1]), |acc, f| acc.mul(f)),
        char_poly(m)
    );
    out
}

impl RatPoly {
    /// Exact Lagrange interpolation.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> RatPoly {
        let mut acc = RatPoly::zero();
        for (k, (xk, yk)) in points.iter().enumerate() {
            let mut term = RatPoly::new(vec![yk.clone()]);
            for (j, (xj, _)) in points.iter().enumerate() {
                if j == k {
                    continue;
                }
                let denom = xk - xj;
                assert!(!denom.is_zero(), "duplicate interpolation nodes");
                // term *= (t - xj) / (xk - xj)
                let lin = RatPoly::new(vec![-xj / &denom, denom.recip()]);
                term = term.mul(&lin);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolate_recovers_poly() {
        let p = IntPoly::from_i64(&[1, -1, 0, 1, 1]); // 1 - t + t^3 + t^4
        let pts: Vec<(BigInt, BigInt)> =
            (0..5).map(|x| (BigInt::from(x), p.eval(&BigInt::from(x)))).collect();
        assert_eq!(IntPoly::interpolate(&pts), p);
    }

    #[test]
    fn char_poly_examples() {
        // Companion matrix of t^2 - t - 1.
        let m = IMat::from_rows_i64(&[&[0, 1], &[1, 1]]);
        assert_eq!(char_poly(&m), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(char_poly(&IMat::identity(3)), IntPoly::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn div_exact_cyclotomic_like() {
        // (t^5 + 1) / (t + 1) = t^4 - t^3 + t^2 - t + 1
        let num = IntPoly::from_i64(&[1, 0, 0, 0, 0, 1]);
        let den = IntPoly::from_i64(&[1, 1]);
        assert_eq!(num.div_exact(&den), IntPoly::from_i64(&[1, -1, 1, -1, 1]));
    }

    #[test]
    fn invariant_factors_identity_and_companion() {
        // Identity: n copies of (t - 1).
        let f = invariant_factors(&IMat::identity(3));
        assert_eq!(f, vec![IntPoly::from_i64(&[-1, 1]); 3]);
        // A companion matrix has a single invariant factor = char poly.
        let m = IMat::from_rows_i64(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, -1]]);
        let f = invariant_factors(&m);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0], char_poly(&m));
    }

    #[test]
    fn invariant_factors_diag_blocks() {
        // diag(1, -1, -1): factors (t+1), (t+1)(t-1).
        let m = IMat::from_rows_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let f = invariant_factors(&m);
        assert_eq!(
            f,
            vec![IntPoly::from_i64(&[1, 1]), IntPoly::from_i64(&[-1, 0, 1])]
        );
    }

    #[test]
    fn pretty_printing() {
        let p = IntPoly::from_i64(&[1, -1, 0, 0, 0, -1, 1]);
        assert_eq!(p.pretty("t"), "t^6 - t^5 - t + 1");
        assert_eq!(IntPoly::zero().pretty("t"), "0");
        assert_eq!(IntPoly::from_i64(&[-2, 3]).pretty("t"), "3*t - 2");
    }
}
