//! The binomial identity family behind the closed-form numerator.
//!
//! All functions return residuals (left side minus right side) rather than
//! booleans, so a failing case reports its magnitude and sign.
//!
//! Sums that are formally indexed by all integers, or by `i <= w`, are
//! evaluated over a support interval derived from where the binomial
//! factors vanish: `C(a, b) = 0` for `b < 0`, and for `b > a` when `a >= 0`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binom::{gbinom, sign};
use crate::error::{Error, Result};

/// Arguments `(w, t, I, alpha)` of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QArgs {
    pub w: i64,
    pub t: i64,
    pub big_i: i64,
    pub alpha: u32,
}

impl QArgs {
    pub fn new(w: i64, t: i64, big_i: i64, alpha: u32) -> Self {
        QArgs { w, t, big_i, alpha }
    }
}

/// `chi(S)`: 1 if the statement holds, else 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Indicator(u8);

impl Indicator {
    pub fn of(holds: bool) -> Self {
        Indicator(holds as u8)
    }

    pub fn value(self) -> BigInt {
        BigInt::from(self.0)
    }
}

/// `[lo, hi]`, either end possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Interval {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl Interval {
    const ALL: Interval = Interval { lo: None, hi: None };

    fn upto(hi: i64) -> Self {
        Interval {
            lo: None,
            hi: Some(hi),
        }
    }

    fn closed(lo: i64, hi: i64) -> Self {
        Interval {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    fn at_least(lo: i64) -> Self {
        Interval {
            lo: Some(lo),
            hi: None,
        }
    }

    fn at_most(hi: i64) -> Self {
        Self::upto(hi)
    }

    fn empty() -> Self {
        Self::closed(1, 0)
    }

    fn meet(self, other: Interval) -> Interval {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Interval { lo, hi }
    }
}

/// `C(top0 + top1*i, bot0 + bot1*i)`.
#[derive(Clone, Copy, Debug)]
struct AffineBinom {
    top: (i64, i64),
    bot: (i64, i64),
}

fn binom_of(top: (i64, i64), bot: (i64, i64)) -> AffineBinom {
    AffineBinom { top, bot }
}

/// `{i : c0 + c1*i >= 0}`.
fn half_line(c0: i64, c1: i64) -> Interval {
    match c1.signum() {
        0 if c0 >= 0 => Interval::ALL,
        0 => Interval::empty(),
        1 => Interval::at_least((-c0).div_euclid(c1) + i64::from((-c0).rem_euclid(c1) != 0)),
        _ => Interval::at_most(c0.div_euclid(-c1)),
    }
}

impl AffineBinom {
    fn at(&self, i: i64) -> BigInt {
        gbinom(self.top.0 + self.top.1 * i, self.bot.0 + self.bot.1 * i)
    }

    /// Interval outside which the coefficient is certainly zero.
    fn support(&self) -> Interval {
        let mut s = half_line(self.bot.0, self.bot.1);
        if self.top.1 == 0 && self.top.0 >= 0 {
            // bottom <= top
            s = s.meet(half_line(self.top.0 - self.bot.0, -self.bot.1));
        }
        s
    }
}

/// `sum_i (-1)^(sign0 + sign1*i) * prod factors(i)` over `range`.
#[derive(Clone, Debug)]
struct IndexedSum {
    sign: (i64, i64),
    factors: Vec<AffineBinom>,
    range: Interval,
}

/// A summation whose support the vanishing rules fail to bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportViolation {
    pub index: i64,
    pub value: BigInt,
}

impl IndexedSum {
    fn term(&self, i: i64) -> BigInt {
        let mut v = BigInt::from(sign(self.sign.0 + self.sign.1 * i));
        for f in &self.factors {
            if v.is_zero() {
                break;
            }
            v *= f.at(i);
        }
        v
    }

    fn support(&self) -> (i64, i64) {
        let s = self
            .factors
            .iter()
            .fold(self.range, |acc, f| acc.meet(f.support()));
        match (s.lo, s.hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => panic!("unbounded support for {self:?}"),
        }
    }

    fn eval(&self) -> BigInt {
        let (lo, hi) = self.support();
        (lo..=hi).map(|i| self.term(i)).sum()
    }

    /// Sums over the derived support widened by `widen` on each side (still
    /// inside the explicit range) and fails if a term outside the support
    /// is nonzero.
    fn eval_widened(&self, widen: i64) -> std::result::Result<BigInt, SupportViolation> {
        let (lo, hi) = self.support();
        let (lo, hi) = if lo > hi { (hi, lo) } else { (lo, hi) };
        let wide = Interval::closed(lo - widen, hi + widen).meet(self.range);
        let (wlo, whi) = (wide.lo.unwrap(), wide.hi.unwrap());
        let (slo, shi) = self.support();
        let mut acc = BigInt::zero();
        for i in wlo..=whi {
            let v = self.term(i);
            if i < slo || i > shi {
                if !v.is_zero() {
                    return Err(SupportViolation { index: i, value: v });
                }
            } else {
                acc += v;
            }
        }
        Ok(acc)
    }
}

/// The three sums making up `Q(w, t, I, alpha)`.
fn q_sums(args: &QArgs) -> [IndexedSum; 3] {
    let QArgs { w, t, big_i, alpha } = *args;
    let a = alpha as i64;
    if alpha == 0 {
        [
            // -sum_i C(I-1, w-i) C(i+I-w-2, i) C(t, I-i)
            IndexedSum {
                sign: (1, 0),
                factors: vec![
                    binom_of((big_i - 1, 0), (w, -1)),
                    binom_of((big_i - w - 2, 1), (0, 1)),
                    binom_of((t, 0), (big_i, -1)),
                ],
                range: Interval::ALL,
            },
            // sum_{i<=w} (-1)^(i+w+1) C(2i-w-2+t, 2i-w-1) C(t, I-i)
            IndexedSum {
                sign: (w + 1, 1),
                factors: vec![
                    binom_of((t - w - 2, 2), (-w - 1, 2)),
                    binom_of((t, 0), (big_i, -1)),
                ],
                range: Interval::upto(w),
            },
            // sum_{i<=w} (-1)^(i+w) C(t+i-1, i) C(t, I-i)
            IndexedSum {
                sign: (w, 1),
                factors: vec![binom_of((t - 1, 1), (0, 1)), binom_of((t, 0), (big_i, -1))],
                range: Interval::upto(w),
            },
        ]
    } else {
        [
            // -sum_i C(I-1, w-i) C(i+I-w-2, i) C(t, I-i-alpha)
            IndexedSum {
                sign: (1, 0),
                factors: vec![
                    binom_of((big_i - 1, 0), (w, -1)),
                    binom_of((big_i - w - 2, 1), (0, 1)),
                    binom_of((t, 0), (big_i - a, -1)),
                ],
                range: Interval::ALL,
            },
            // sum_{i<=w} (-1)^(i+w+1+alpha) C(2i-w-2+t+alpha, 2i-w-1+alpha) C(t, I-i-alpha)
            IndexedSum {
                sign: (w + 1 + a, 1),
                factors: vec![
                    binom_of((t + a - w - 2, 2), (a - w - 1, 2)),
                    binom_of((t, 0), (big_i - a, -1)),
                ],
                range: Interval::upto(w),
            },
            // sum_{i=1}^{alpha-1} (-1)^(i+1) C(I-1, w+i) C(t+w+i, I-alpha+i)
            IndexedSum {
                sign: (1, 1),
                factors: vec![
                    binom_of((big_i - 1, 0), (w, 1)),
                    binom_of((t + w, 1), (big_i - a, 1)),
                ],
                range: Interval::closed(1, a - 1),
            },
        ]
    }
}

/// `Q(w, t, I, alpha)`, exact.
pub fn q_value(args: &QArgs) -> BigInt {
    q_sums(args).iter().map(IndexedSum::eval).sum()
}

/// [`q_value`] with every derived support widened by `widen`; errors if a
/// term outside a derived support is nonzero.
pub fn q_value_widened(args: &QArgs, widen: i64) -> std::result::Result<BigInt, SupportViolation> {
    let mut acc = BigInt::zero();
    for s in q_sums(args) {
        acc += s.eval_widened(widen)?;
    }
    Ok(acc)
}

/// `alpha, t, w + alpha, I - 1` all non-negative.
pub fn prop_hypotheses_hold(args: &QArgs) -> bool {
    args.t >= 0 && args.w + args.alpha as i64 >= 0 && args.big_i >= 1
}

/// `Q(w, t+1, I, alpha) - Q(w, t, I, alpha) - Q(w, t, I, alpha+1)`.
pub fn recurrence_residual(w: i64, t: i64, big_i: i64, alpha: u32) -> BigInt {
    q_value(&QArgs::new(w, t + 1, big_i, alpha))
        - q_value(&QArgs::new(w, t, big_i, alpha))
        - q_value(&QArgs::new(w, t, big_i, alpha + 1))
}

/// `sum_{l <= b} (-1)^l C(a, l)`, summed directly over `0 <= l <= b`.
pub fn alternating_partial_sum(a: i64, b: i64) -> BigInt {
    (0..=b).map(|l| gbinom(a, l) * sign(l)).sum()
}

/// `sum_k (-1)^k C(b+k, c+k) C(a, k) - (-1)^a C(b, a+c)` for `a >= 0`.
pub fn alternating_convolution_residual(a: i64, b: i64, c: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::OutOfRange(format!(
            "alternating convolution needs a >= 0, got {a}"
        )));
    }
    let lhs: BigInt = (0..=a)
        .map(|k| gbinom(b + k, c + k) * gbinom(a, k) * sign(k))
        .sum();
    Ok(lhs - gbinom(b, a + c) * sign(a))
}

fn check_index_range(name: &str, big_i: i64, lo: i64, hi: i64) -> Result<()> {
    if big_i < lo || big_i > hi {
        return Err(Error::OutOfRange(format!(
            "{name}: I = {big_i} outside [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// `sum_{i=ceil(n/2)}^{n} (-1)^(I-i) C(t, I-i) C(t+2i-n-1, 2i-n) - C(t, 2I-n)`
/// for `ceil(n/2) <= I <= n`.
pub fn convolution_residual(n: i64, t: i64, big_i: i64) -> Result<BigInt> {
    let lo = (n + 1) / 2;
    check_index_range("convolution", big_i, lo, n)?;
    let rhs: BigInt = (lo..=n)
        .map(|i| gbinom(t, big_i - i) * gbinom(t + 2 * i - n - 1, 2 * i - n) * sign(big_i - i))
        .sum();
    Ok(rhs - gbinom(t, 2 * big_i - n))
}

/// Coefficient of `z^I` in the truncation of `(1-z)^t (1-z)^(-t)` minus the
/// coefficient of `z^I` in `1`, for `0 <= I <= n`.
pub fn unit_series_residual(n: i64, t: i64, big_i: i64) -> Result<BigInt> {
    check_index_range("unit series", big_i, 0, n)?;
    let lhs: BigInt = (0..=n)
        .map(|i| gbinom(t, big_i - i) * gbinom(t + i - 1, i) * sign(big_i - i))
        .sum();
    Ok(lhs - Indicator::of(big_i == 0).value())
}

/// `(-1)^b C(a-1, b)`, the closed form of [`alternating_partial_sum`].
pub fn alternating_partial_sum_closed(a: i64, b: i64) -> BigInt {
    gbinom(a - 1, b) * sign(b)
}

/// `Q(n-1, t, I, 0)` is, up to the sign `(-1)^(I+n+1)`, the `z^I` coefficient
/// of `(1-z)^t hn(z) - HN(z)` for `n+1 <= I <= n+t-1`. Below `n+1` the same
/// coefficient splits into the unit-series and convolution residuals.
pub fn predicted_factorization_residual(n: i64, t: i64, big_i: i64) -> Result<BigInt> {
    if big_i < 0 {
        return Err(Error::OutOfRange(format!("I = {big_i} is negative")));
    }
    if big_i <= n {
        let mut r = unit_series_residual(n, t, big_i)?;
        if big_i >= (n + 1) / 2 {
            r -= convolution_residual(n, t, big_i)?;
        }
        Ok(r)
    } else {
        Ok(q_value(&QArgs::new(n - 1, t, big_i, 0)) * sign(big_i + n + 1))
    }
}
