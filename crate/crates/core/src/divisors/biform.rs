//! Bihomogeneous integer forms in `(x0, x1; y0, y1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::BinaryForm;

/// Exponents `(i, j, k, l)` of `x0^i x1^j y0^k y1^l`.
pub type Exponents = (usize, usize, usize, usize);

/// Dense form of bidegree `(a, b)`: `c[i][k]` multiplies
/// `x0^i x1^(a−i) y0^k y1^(b−k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiForm {
    a: usize,
    b: usize,
    c: Vec<Vec<BigInt>>,
}

impl BiForm {
    pub fn zero(a: usize, b: usize) -> Self {
        BiForm { a, b, c: vec![vec![BigInt::zero(); b + 1]; a + 1] }
    }

    /// Build from `(i, k, coefficient)` triples.
    pub fn from_terms(a: usize, b: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut f = Self::zero(a, b);
        for &(i, k, c) in terms {
            f.c[i][k] += BigInt::from(c);
        }
        f
    }

    /// `x0·y1 − x1·y0`.
    pub fn diagonal() -> Self {
        Self::from_terms(1, 1, &[(1, 0, 1), (0, 1, -1)])
    }

    /// `F(x)·G(y)`.
    pub fn outer(f: &BinaryForm, g: &BinaryForm) -> Self {
        let mut out = Self::zero(f.degree(), g.degree());
        for (i, fi) in f.coeffs().iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (k, gk) in g.coeffs().iter().enumerate() {
                out.c[i][k] = fi * gk;
            }
        }
        out
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Coefficient of `x0^i x1^(a−i) y0^k y1^(b−k)`.
    pub fn coeff(&self, i: usize, k: usize) -> &BigInt {
        &self.c[i][k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().flatten().fold(BigInt::zero(), |acc, v| acc.gcd(v))
    }

    /// Nonzero terms as `((i, j, k, l), coefficient)` in ascending lexicographic order.
    pub fn terms(&self) -> Vec<(Exponents, &BigInt)> {
        let mut out = Vec::new();
        for i in 0..=self.a {
            for k in 0..=self.b {
                let v = &self.c[i][k];
                if !v.is_zero() {
                    out.push(((i, self.a - i, k, self.b - k), v));
                }
            }
        }
        out
    }

    /// Coefficient of the lexicographically largest monomial present.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms().last().map(|(_, v)| *v)
    }

    /// Content 1 with a positive lexicographically leading coefficient.
    pub fn normalized(&self) -> Self {
        let mut g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        if self.leading_coeff().is_some_and(|v| v.is_negative()) {
            g = -g;
        }
        self.map_coeffs(|v| v / &g)
    }

    fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        BiForm { a: self.a, b: self.b, c: self.c.iter().map(|row| row.iter().map(&f).collect()).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|v| -v)
    }

    /// `F(y; x)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.b, self.a);
        for i in 0..=self.a {
            for k in 0..=self.b {
                out.c[k][i] = self.c[i][k].clone();
            }
        }
        out
    }

    pub fn sub(&self, rhs: &BiForm) -> Self {
        assert_eq!(self.bidegree(), rhs.bidegree());
        let mut out = self.clone();
        for i in 0..=self.a {
            for k in 0..=self.b {
                out.c[i][k] -= &rhs.c[i][k];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &BiForm) -> Self {
        let mut out = Self::zero(self.a + rhs.a, self.b + rhs.b);
        for i in 0..=self.a {
            for k in 0..=self.b {
                let v = &self.c[i][k];
                if v.is_zero() {
                    continue;
                }
                for (i2, row) in rhs.c.iter().enumerate() {
                    for (k2, w) in row.iter().enumerate() {
                        if !w.is_zero() {
                            out.c[i + i2][k + k2] += v * w;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, x: (&BigInt, &BigInt), y: (&BigInt, &BigInt)) -> BigInt {
        let pows = |v: &BigInt, n: usize| {
            let mut out = Vec::with_capacity(n + 1);
            let mut acc = BigInt::one();
            for _ in 0..=n {
                out.push(acc.clone());
                acc *= v;
            }
            out
        };
        let (x0, x1, y0, y1) = (pows(x.0, self.a), pows(x.1, self.a), pows(y.0, self.b), pows(y.1, self.b));
        let mut acc = BigInt::zero();
        for i in 0..=self.a {
            for k in 0..=self.b {
                let v = &self.c[i][k];
                if !v.is_zero() {
                    acc += v * &x0[i] * &x1[self.a - i] * &y0[k] * &y1[self.b - k];
                }
            }
        }
        acc
    }

    /// `F(x0, x1; x0, x1)` as a binary form of degree `a + b`.
    pub fn restrict_to_diagonal(&self) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.a + self.b + 1];
        for i in 0..=self.a {
            for k in 0..=self.b {
                out[i + k] += &self.c[i][k];
            }
        }
        BinaryForm::from_coeffs(out)
    }

    /// Coefficients `c[i][k]` of the affine chart `x1 = y1 = 1`, as a
    /// polynomial `Σ c[i][k] s^i t^k`.
    pub fn affine(&self) -> &[Vec<BigInt>] {
        &self.c
    }

    /// Exact quotient `self / rhs`; errors if the division leaves a remainder.
    pub fn exact_div(&self, rhs: &BiForm) -> Result<BiForm> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fail = || Error::Invariant("bihomogeneous division is not exact".into());
        if rhs.a > self.a || rhs.b > self.b {
            return Err(fail());
        }
        let (qa, qb) = (self.a - rhs.a, self.b - rhs.b);
        // Work in the affine chart: polynomials in s with coefficients in Z[t].
        let row = |f: &BiForm, i: usize| -> Vec<BigInt> { trim(f.c[i].clone()) };
        let mut rem: Vec<Vec<BigInt>> = (0..=self.a).map(|i| row(self, i)).collect();
        let div: Vec<Vec<BigInt>> = (0..=rhs.a).map(|i| row(rhs, i)).collect();
        let ds = (0..=rhs.a).rev().find(|&i| !div[i].is_empty()).unwrap();
        let lead = &div[ds];
        let mut quot: Vec<Vec<BigInt>> = vec![Vec::new(); self.a + 1];
        while let Some(top) = (0..rem.len()).rev().find(|&i| !rem[i].is_empty()) {
            if top < ds {
                return Err(fail());
            }
            let qc = poly_exact_div(&rem[top], lead).ok_or_else(fail)?;
            let shift = top - ds;
            for (i, di) in div.iter().enumerate().take(ds + 1) {
                if di.is_empty() {
                    continue;
                }
                let prod = poly_mul(&qc, di);
                rem[shift + i] = poly_sub(&rem[shift + i], &prod);
            }
            quot[shift] = qc;
        }
        let mut out = BiForm::zero(qa, qb);
        for (i, r) in quot.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            if i > qa || r.len() > qb + 1 {
                return Err(fail());
            }
            for (k, v) in r.iter().enumerate() {
                out.c[i][k] = v.clone();
            }
        }
        Ok(out)
    }

    /// Sparse text `(i,j,k,l):c; …` in ascending lexicographic order.
    pub fn to_sparse_string(&self) -> String {
        let parts: Vec<String> =
            self.terms().into_iter().map(|((i, j, k, l), v)| format!("({i},{j},{k},{l}):{v}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j, k, l), v) in self.terms().into_iter().rev() {
            let mut mono = Vec::new();
            for (name, e) in [("x0", i), ("x1", j), ("y0", k), ("y1", l)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            let mag = v.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            if first {
                if v.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if v.is_negative() { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Exact quotient in Z[t], or `None` if `b` does not divide `a`.
fn poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    while !rem.is_empty() {
        if rem.len() < b.len() {
            return None;
        }
        let top = rem.len() - 1;
        let (q, r) = rem[top].div_rem(&b[db]);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[top - db + j] -= &q * bj;
        }
        quot[top - db] = q;
        rem = trim(rem);
    }
    Some(trim(quot))
}
