//! Sparse multivariate polynomials over `Q` under degree-reverse-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector. Missing trailing entries read as zero, so vectors of
/// different lengths compare and hash consistently.
#[derive(Clone, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars.max(i + 1)];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let len = self.len().max(other.len());
        Monomial((0..len).map(|i| f(self.exp(i), other.exp(i))).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::min)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.len()).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| self.zip_with(other, |a, b| a - b))
    }

    /// `self / gcd(self, other)`.
    pub fn div_gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.saturating_sub(b))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.len().min(other.len())).all(|i| self.exp(i) == 0 || other.exp(i) == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u64 {
        self.support().fold(0, |m, i| m | (1u64 << i))
    }

    fn padded(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars.max(e.len()), 0);
        Monomial(e)
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        (0..self.len().max(other.len())).all(|i| self.exp(i) == other.exp(i))
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let end = self.0.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        self.0[..end].hash(state);
    }
}

impl Ord for Monomial {
    /// Degree reverse lexicographic: higher degree first; ties go to the
    /// monomial with the smaller exponent in the last differing variable.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.len().max(other.len())).rev() {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables with rational coefficients. Terms are kept
/// sorted by the term order; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero_in(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational, nvars: usize) -> Self {
        Self::term(Monomial::one(nvars), c, nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Self::term(Monomial::var(i, nvars), BigRational::one(), nvars)
    }

    pub fn term(m: Monomial, c: BigRational, nvars: usize) -> Self {
        let mut p = Self::zero_in(nvars.max(m.len()));
        if !c.is_zero() {
            let nv = p.nvars;
            p.terms.insert(m.padded(nv), c);
        }
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero_in(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let nvars = coeffs.len();
        Self::from_terms(
            nvars,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i, nvars), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    /// `Some(d)` when every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if m.len() > self.nvars {
            self.widen(m.len());
        }
        let m = m.padded(self.nvars);
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn remove_leading_term(&mut self) -> Option<(Monomial, BigRational)> {
        self.terms.pop_last()
    }

    fn widen(&mut self, nvars: usize) {
        if nvars <= self.nvars {
            return;
        }
        self.nvars = nvars;
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| (m.padded(nvars), c))
            .collect();
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        let nvars = self.nvars.max(m.len());
        if c.is_zero() {
            return Self::zero_in(nvars);
        }
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m).padded(nvars), x * c))
                .collect(),
        }
    }

    /// `self - c * m * other`, in place.
    pub fn sub_scaled(&mut self, other: &MultiPoly, m: &Monomial, c: &BigRational) {
        for (k, x) in &other.terms {
            self.add_term(k.mul(m), -(x * c));
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Clears denominators and content so coefficients are coprime integers
    /// with a positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading_coeff().unwrap().is_negative() {
            content = -content;
        }
        self.scale(&BigRational::new(lcm_den, content))
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps().iter().enumerate().fold(c.clone(), |acc, (i, &e)| {
                    if e == 0 {
                        acc
                    } else {
                        acc * num_traits::pow(point[i].clone(), e as usize)
                    }
                })
            })
            .sum()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        Self::zero_in(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(BigRational::one(), 0)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        out.widen(small.nvars);
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.widen(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero_in(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl PolyDisplay<'_> {
    fn name(&self, i: usize) -> String {
        self.names
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("x{}", i + 1))
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for i in m.support() {
                match m.exp(i) {
                    1 => factors.push(self.name(i)),
                    e => factors.push(format!("{}^{e}", self.name(i))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_order() {
        // x > y > z in degree 1
        assert!(mono(&[1, 0, 0]) > mono(&[0, 1, 0]));
        assert!(mono(&[0, 1, 0]) > mono(&[0, 0, 1]));
        // degree first
        assert!(mono(&[0, 0, 2]) > mono(&[1, 0, 0]));
        // x*z vs y^2: last differing variable z; x*z has more z, so it is smaller
        assert!(mono(&[0, 2, 0]) > mono(&[1, 0, 1]));
        // padding does not change comparison
        assert_eq!(mono(&[1, 0]).cmp(&mono(&[1])), Ordering::Equal);
        assert_eq!(mono(&[1, 0]), mono(&[1]));
    }

    #[test]
    fn monomial_arith() {
        let a = mono(&[2, 1, 0]);
        let b = mono(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), mono(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), mono(&[1, 1, 0]));
        assert!(mono(&[1, 1]).divides(&a));
        assert_eq!(a.div(&mono(&[1, 1, 0])), Some(mono(&[1, 0, 0])));
        assert_eq!(a.div(&b), None);
        assert!(mono(&[1, 0]).is_coprime(&mono(&[0, 4])));
        assert_eq!(b.support().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn ring_ops() {
        let x = MultiPoly::var(0, 2);
        let y = MultiPoly::var(1, 2);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expected);
        assert_eq!(prod.homogeneous_degree(), Some(2));
        assert!((&prod - &expected).is_zero());
        assert_eq!(prod.leading_monomial(), Some(&mono(&[2, 0])));
    }

    #[test]
    fn elastic_constants() {
        let x = MultiPoly::var(2, 3);
        let one = MultiPoly::one();
        assert_eq!(&x * &one, x);
        assert_eq!((&x + &MultiPoly::zero()).nvars(), 3);
    }

    #[test]
    fn primitive_integer_normalizes() {
        let p = MultiPoly::from_terms(
            2,
            [
                (
                    mono(&[1, 0]),
                    -BigRational::new(BigInt::from(2), BigInt::from(3)),
                ),
                (
                    mono(&[0, 1]),
                    BigRational::new(BigInt::from(4), BigInt::from(9)),
                ),
            ],
        );
        let r = p.primitive_integer();
        assert_eq!(r.coeff(&mono(&[1, 0])), q(3));
        assert_eq!(r.coeff(&mono(&[0, 1])), q(-2));
    }

    #[test]
    fn display() {
        let x = MultiPoly::var(0, 2);
        let y = MultiPoly::var(1, 2);
        let p = &(&(&x * &x).scale(&q(3)) - &y) + &MultiPoly::constant(q(-1), 2);
        assert_eq!(p.to_string(), "3*x1^2 - x2 - 1");
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(p.display_with(&names).to_string(), "3*a^2 - b - 1");
    }
}
