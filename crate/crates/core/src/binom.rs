//! Exact integer kernels: binomial coefficients over all integer arguments,
//! dense univariate integer polynomials and truncated power series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `a choose b` for arbitrary integers.
///
/// Zero when `b < 0`, otherwise the falling factorial
/// `a (a-1) ... (a-b+1) / b!`, which is meaningful for negative `a` too.
/// With this single definition Pascal's rule holds on all of `Z^2`.
pub fn gbinom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 && b > a {
        return BigInt::zero();
    }
    // C(a, b) = C(a, a - b) shortens the product when 0 <= b <= a.
    let b = if a >= 0 && b > a / 2 { a - b } else { b };
    match gbinom_i128(a, b) {
        Some(v) => BigInt::from(v),
        None => gbinom_big(a, b),
    }
}

fn gbinom_i128(a: i64, b: i64) -> Option<i128> {
    let mut acc: i128 = 1;
    for k in 1..=b as i128 {
        // acc is C(a, k-1); acc * (a-k+1) is divisible by k.
        acc = acc.checked_mul(a as i128 - k + 1)? / k;
    }
    Some(acc)
}

fn gbinom_big(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 1..=b {
        acc *= BigInt::from(a - k + 1);
        acc /= BigInt::from(k);
    }
    acc
}

/// `(-1)^e` as a small integer.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `k`-th coefficient of the series `(1 - z)^(-t)`, i.e. `C(t+k-1, k)`.
pub fn geometric_inverse_coeff(t: u32, k: i64) -> BigInt {
    assert!(t >= 1, "geometric_inverse_coeff needs t >= 1");
    gbinom(t as i64 + k - 1, k)
}

/// Dense univariate polynomial in `z` with integer coefficients.
///
/// Index `i` of the coefficient vector holds the coefficient of `z^i`; the
/// highest stored coefficient is never zero, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `c * z^exp`.
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact quotient by `1 - z`, or `None` when `1 - z` does not divide.
    pub fn div_one_minus_z(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // p = (1 - z) q  <=>  q_i = p_0 + ... + p_i, with the full sum zero.
        let mut q = Vec::with_capacity(self.coeffs.len() - 1);
        let mut running = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            running += c;
            q.push(running.clone());
        }
        running += &self.coeffs[self.coeffs.len() - 1];
        running.is_zero().then(|| Self::new(q))
    }

    /// Largest `k` with `(1 - z)^k` dividing `self`; `None` for zero.
    pub fn one_minus_z_order(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut p = self.clone();
        while let Some(q) = p.div_one_minus_z() {
            k += 1;
            p = q;
        }
        Some(k)
    }

    /// `Some(values)` when every coefficient fits an `i64`.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// `(1 - z)^t`.
pub fn one_minus_z_pow(t: u32) -> IntPolynomial {
    IntPolynomial::new(
        (0..=t as i64)
            .map(|k| gbinom(t as i64, k) * sign(k))
            .collect(),
    )
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        poly_mul(self, rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// Exact schoolbook product.
pub fn poly_mul(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    if p.is_zero() || q.is_zero() {
        return IntPolynomial::zero();
    }
    let mut out = vec![BigInt::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    IntPolynomial::new(out)
}

/// Power series with integer coefficients, exact modulo `z^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigInt) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn from_poly(p: &IntPolynomial, order: usize) -> Self {
        Self::from_fn(order, |i| p.coeff(i))
    }

    /// Expansion of `(1 - z)^(-t)`.
    pub fn geometric_inverse(t: u32, order: usize) -> Self {
        Self::from_fn(order, |k| geometric_inverse_coeff(t, k as i64))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Product modulo `z^(k+1)` where `k` is the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Power-series quotient `self / other`; the divisor's constant term must
    /// be a unit of `Z`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let c0 = &other.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::OutOfRange(format!(
                "series divisor has non-unit constant term {c0}"
            )));
        }
        let order = self.order().min(other.order());
        let mut q: Vec<BigInt> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &q[k - j];
            }
            // c0 is +-1, so dividing is multiplying.
            q.push(acc * c0);
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}
