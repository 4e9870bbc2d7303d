//! Integer binary forms in `(x0, x1)` and their resultants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use crate::arith::Rational;

/// Homogeneous form of a fixed degree. `coeffs[i]` multiplies
/// `x0^i · x1^(degree − i)`; the top entries may be zero, so the degree is
/// carried by the vector length rather than by the leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![BigInt::zero(); degree + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn x0() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn x1() -> Self {
        Self::from_i64(&[1, 0])
    }

    /// The linear form `a1·x0 − a0·x1`, vanishing at `[a0:a1]`.
    pub fn vanishing_at(a0: &BigInt, a1: &BigInt) -> Self {
        Self::from_coeffs(vec![-a0.clone(), a1.clone()])
    }

    /// Homogenize `p(t)` to degree `degree ≥ deg p`.
    pub fn homogenize(p: &[BigInt], degree: usize) -> Self {
        assert!(p.len() <= degree + 1);
        let mut coeffs = p.to_vec();
        coeffs.resize(degree + 1, BigInt::zero());
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x0^i x1^(d−i)`.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn div_scalar(&self, c: &BigInt) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Power of `x1` dividing the form: the number of vanishing top coefficients.
    pub fn x1_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// `t ↦ F(t, 1)`, coefficients ascending and trimmed.
    pub fn dehomogenize(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_ints(&self.coeffs)
    }

    pub fn eval(&self, a0: &BigInt, a1: &BigInt) -> BigInt {
        // Horner in x0 with powers of x1 folded in from the bottom.
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut x1_pow = BigInt::one();
        let mut pows = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            pows.push(x1_pow.clone());
            x1_pow *= a1;
        }
        for i in (0..=d).rev() {
            acc = acc * a0 + &self.coeffs[i] * &pows[d - i];
        }
        acc
    }

    pub fn mul(&self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn add(&self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), rhs.degree());
        BinaryForm { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), rhs.degree());
        BinaryForm { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::from_i64(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `F(A, B)` for forms `A`, `B` of a common degree.
    pub fn compose(&self, a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
        assert_eq!(a.degree(), b.degree());
        let d = self.degree();
        let e = a.degree();
        let mut a_pows = vec![BinaryForm::from_i64(&[1])];
        let mut b_pows = vec![BinaryForm::from_i64(&[1])];
        for k in 1..=d {
            a_pows.push(a_pows[k - 1].mul(a));
            b_pows.push(b_pows[k - 1].mul(b));
        }
        let mut out = BinaryForm::zero(d * e);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = a_pows[i].mul(&b_pows[d - i]);
            for (k, t) in term.coeffs.iter().enumerate() {
                out.coeffs[k] += c * t;
            }
        }
        out
    }

    /// `∂/∂x0`.
    pub fn d_x0(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            coeffs: (1..=d).map(|i| &self.coeffs[i] * BigInt::from(i)).collect(),
        }
    }

    /// `∂/∂x1`.
    pub fn d_x1(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            coeffs: (0..d).map(|i| &self.coeffs[i] * BigInt::from(d - i)).collect(),
        }
    }

    /// Whether the binary form `q` divides `self` (both nonzero).
    pub fn divisible_by(&self, q: &BinaryForm) -> bool {
        if self.is_zero() {
            return true;
        }
        let (mx_s, mx_q) = (self.x1_multiplicity(), q.x1_multiplicity());
        if mx_q > mx_s {
            return false;
        }
        let s = self.to_qpoly();
        let qq = q.to_qpoly();
        s.div_rem(&qq).1.is_zero()
    }

    pub fn display_with(&self, v0: &str, v1: &str) -> String {
        let d = self.degree();
        let mut out = String::new();
        for i in (0..=d).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push(v0.to_string()),
                _ => mono.push(format!("{v0}^{i}")),
            }
            match d - i {
                0 => {}
                1 => mono.push(v1.to_string()),
                k => mono.push(format!("{v1}^{k}")),
            }
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x0", "x1"))
    }
}

/// Sylvester matrix of forms of degrees `m` and `n`, rows ordered from the
/// `x0^(m+n−1)` coefficient downward.
pub fn sylvester(p: &BinaryForm, q: &BinaryForm) -> Vec<Vec<BigInt>> {
    let (m, n) = (p.degree(), q.degree());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for i in 0..=m {
            row[shift + i] = p.coeffs[m - i].clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for i in 0..=n {
            row[shift + i] = q.coeffs[n - i].clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Homogeneous resultant `Res(P, Q)`; `Res(x0^m, x1^n) = 1`.
pub fn resultant(p: &BinaryForm, q: &BinaryForm) -> BigInt {
    determinant(sylvester(p, q))
}

/// Solve `M v = rhs` over Q by Gaussian elimination; `None` if singular.
pub fn solve_rational(m: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            row.iter()
                .cloned()
                .map(Rational::from_integer)
                .chain(std::iter::once(Rational::from_integer(r.clone())))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = BigRational::one() / &a[col][col];
        for v in a[col][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c)
    }

    #[test]
    fn resultant_examples() {
        // Res(x0², x1²) = 1
        assert_eq!(resultant(&f(&[0, 0, 1]), &f(&[1, 0, 0])), BigInt::one());
        // Res(2x0² + x1², 2x1²) = 2² · (2)² = 16
        assert_eq!(resultant(&f(&[1, 0, 2]), &f(&[2, 0, 0])), BigInt::from(16));
        // Res(x0² − x1², x0x1) = ±1
        assert_eq!(resultant(&f(&[-1, 0, 1]), &f(&[0, 1, 0])).abs(), BigInt::one());
        // common root [1:1]
        assert!(resultant(&f(&[-1, 0, 1]), &f(&[-1, 1])).is_zero());
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(P, Q) = lc(P)^n ∏ Q(roots of P) for monic-in-x0 forms.
        // P = (x0 − 2x1)(x0 + 3x1) = x0² + x0x1 − 6x1², Q = x0 − 5x1
        let p = f(&[-6, 1, 1]);
        let q = f(&[-5, 1]);
        // Q(2) · Q(−3) = (−3)(−8) = 24
        assert_eq!(resultant(&p, &q).abs(), BigInt::from(24));
    }

    #[test]
    fn compose_and_eval() {
        // P = x0² + x1², composed with itself via (P, x1²)
        let p = f(&[1, 0, 1]);
        let q = f(&[1, 0, 0]);
        let p2 = p.compose(&p, &q);
        assert_eq!(p2, f(&[2, 0, 2, 0, 1]));
        assert_eq!(p2.eval(&BigInt::from(1), &BigInt::from(1)), BigInt::from(5));
        assert_eq!(p.eval(&BigInt::from(3), &BigInt::from(2)), BigInt::from(13));
    }

    #[test]
    fn derivatives() {
        // F = x0³ + 2x0x1²
        let g = f(&[0, 2, 0, 1]);
        assert_eq!(g.d_x0(), f(&[2, 0, 3]));
        assert_eq!(g.d_x1(), f(&[0, 4, 0]));
    }

    #[test]
    fn display() {
        assert_eq!(f(&[1, 0, 1]).to_string(), "x0^2 + x1^2");
        assert_eq!(f(&[0, -3, 0]).to_string(), "-3*x0*x1");
    }

    #[test]
    fn divisibility() {
        let q = f(&[2, 0, 1]); // x0² + 2x1²
        let p = q.mul(&f(&[1, 1, 1]));
        assert!(p.divisible_by(&q));
        assert!(!f(&[1, 1, 1]).divisible_by(&q));
        assert!(f(&[0, 1, 0]).divisible_by(&BinaryForm::x1()));
        assert!(!f(&[1, 1, 0]).divisible_by(&BinaryForm::x1().pow(2)));
    }
}
