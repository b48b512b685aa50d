use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair of a monomial `X^x Y^y`. Ordered by `y` first, then `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    pub y: i64,
    pub x: i64,
}

impl Exponent {
    pub fn new(x: i64, y: i64) -> Self {
        Exponent { y, x }
    }
}

/// Sparse Laurent polynomial in `X, Y` with integer coefficients.
///
/// Zero coefficients are never stored; terms iterate in `(y, x)` order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c X^x Y^y`.
    pub fn monomial(x: i64, y: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(x, y, c.into());
        p
    }

    /// `1 - X^x Y^y`.
    pub fn one_minus(x: i64, y: i64) -> Self {
        let mut p = Self::one();
        p.add_term(x, y, BigInt::from(-1));
        p
    }

    /// Sums `(x, y, c)` triples; repeated exponents are merged.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, i64, C)>) -> Self {
        let mut p = Self::zero();
        for (x, y, c) in terms {
            p.add_term(x, y, c.into());
        }
        p
    }

    /// Pure polynomial in `Y` from coefficients of `Y^0, Y^1, ...`.
    pub fn from_y_coefficients<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| (0, k as i64, c)))
    }

    pub fn add_term(&mut self, x: i64, y: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = Exponent::new(x, y);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(x, y, coefficient)` in canonical `(y, x)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.x, e.y, c))
    }

    pub fn coefficient(&self, x: i64, y: i64) -> BigInt {
        self.terms.get(&Exponent::new(x, y)).cloned().unwrap_or_default()
    }

    /// Smallest `X` and `Y` exponents occurring, or `None` for zero.
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let min_x = self.terms.keys().map(|e| e.x).min()?;
        let min_y = self.terms.keys().map(|e| e.y).min()?;
        Some((min_x, min_y))
    }

    pub fn has_nonnegative_exponents(&self) -> bool {
        self.min_exponents().is_none_or(|(x, y)| x >= 0 && y >= 0)
    }

    /// True when every term has `X`-exponent zero.
    pub fn is_pure_y(&self) -> bool {
        self.terms.keys().all(|e| e.x == 0)
    }

    /// Multiplies by `c X^x Y^y`.
    pub fn mul_monomial(&self, x: i64, y: i64, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (Exponent::new(e.x + x, e.y + y), v * c)).collect(),
        }
    }

    /// `P(X^{-1}, Y^{-1})`.
    pub fn invert_variables(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (Exponent::new(-e.x, -e.y), v.clone())).collect() }
    }

    /// `P(X^{-1}, Y)`.
    pub fn invert_x(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (Exponent::new(-e.x, e.y), v.clone())).collect() }
    }

    /// Replaces `Y` by `X^{dx} Y^{dy}` (a monomial substitution).
    pub fn substitute_y(&self, dx: i64, dy: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (e.x + dx * e.y, dy * e.y, v.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at rational `X`, `Y`. Zero arguments with negative
    /// exponents are a domain error.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += BigRational::from(c.clone()) * rational_pow(x, e.x)? * rational_pow(y, e.y)?;
        }
        Ok(acc)
    }

    /// Coefficients `a_0..a_K` of `Y^0..Y^K` after substituting `X = p`.
    /// Terms with negative exponents are rejected.
    pub fn y_coefficients_at(&self, p: u64, max_y: usize) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); max_y + 1];
        let base = BigInt::from(p);
        for (e, c) in &self.terms {
            if e.y < 0 {
                return Err(Error::IllFormedSeries(format!("numerator term with Y-exponent {}", e.y)));
            }
            if e.x < 0 {
                return Err(Error::IllFormedSeries(format!("numerator term with X-exponent {}", e.x)));
            }
            if e.y as usize <= max_y {
                out[e.y as usize] += c * base.pow(e.x as u32);
            }
        }
        Ok(out)
    }

    /// Exact division of two polynomials in `Y` alone. A nonzero remainder
    /// is a contract violation.
    pub fn div_exact_y(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if !self.is_pure_y() || !divisor.is_pure_y() {
            return Err(crate::error::contract("div_exact_y needs polynomials in Y only"));
        }
        let (Some(num), Some(den)) = (dense_y(self)?, dense_y(divisor)?) else {
            return if divisor.is_zero() {
                Err(crate::error::contract("division by zero polynomial"))
            } else {
                Ok(LaurentPoly::zero())
            };
        };
        let (q, r) = divrem_dense(&num, &den)?;
        if r.iter().any(|c| !c.is_zero()) {
            return Err(crate::error::contract("polynomial division left a remainder"));
        }
        Ok(LaurentPoly::from_y_coefficients(q))
    }
}

fn rational_pow(base: &BigRational, exp: i64) -> Result<BigRational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::Domain("negative power of zero".into()));
    }
    Ok(num_traits::pow::Pow::pow(base, exp as i32))
}

fn dense_y(p: &LaurentPoly) -> Result<Option<Vec<BigInt>>> {
    let Some((_, min_y)) = p.min_exponents() else {
        return Ok(None);
    };
    if min_y < 0 {
        return Err(crate::error::contract("negative Y-exponent in polynomial division"));
    }
    let deg = p.terms.keys().map(|e| e.y).max().unwrap_or(0) as usize;
    let mut v = vec![BigInt::zero(); deg + 1];
    for (e, c) in &p.terms {
        v[e.y as usize] = c.clone();
    }
    Ok(Some(v))
}

fn divrem_dense(num: &[BigInt], den: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let lead = den.last().expect("nonzero divisor");
    if num.len() < den.len() {
        return Ok((vec![BigInt::zero()], num.to_vec()));
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - den.len() + 1];
    for shift in (0..quot.len()).rev() {
        let top = &rem[shift + den.len() - 1];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return Err(crate::error::contract("non-integral quotient in polynomial division"));
        }
        let q = top / lead;
        for (k, d) in den.iter().enumerate() {
            rem[shift + k] -= &q * d;
        }
        quot[shift] = q;
    }
    Ok((quot, rem))
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Plain-text rendering such as `1 + X^7*Y^5 - 2*Y`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = monomial_text(e.x, e.y);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn monomial_text(x: i64, y: i64) -> String {
    let var = |name: &str, e: i64| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let parts: Vec<String> = [var("X", x), var("Y", y)].into_iter().filter(|s| !s.is_empty()).collect();
    parts.join("*")
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.x, e.y, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.x, e.y, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (small, large) = if self.num_terms() <= rhs.num_terms() { (self, rhs) } else { (rhs, self) };
        let mut acc: std::collections::HashMap<Exponent, BigInt> = std::collections::HashMap::new();
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                *acc.entry(Exponent::new(ea.x + eb.x, ea.y + eb.y)).or_default() += ca * cb;
            }
        }
        LaurentPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_operations() {
        let a = LaurentPoly::monomial(2, 3, 1);
        let b = LaurentPoly::monomial(0, 1, 1);
        assert_eq!(&a * &b, LaurentPoly::monomial(2, 4, 1));

        let p = LaurentPoly::from_terms([(1, -2, 3), (0, 0, -1), (4, 1, 7)]);
        assert!((&p + &(-&p)).is_zero());
        assert_eq!((&p - &p).num_terms(), 0);

        let u = LaurentPoly::one_minus(1, 1);
        let v = &LaurentPoly::one() + &LaurentPoly::monomial(1, 1, 1);
        assert_eq!(&u * &v, LaurentPoly::one_minus(2, 2));
    }

    #[test]
    fn canonical_order_is_y_then_x() {
        let p = LaurentPoly::from_terms([(5, 0, 1), (0, 1, 1), (1, 0, 1), (-3, 1, 1)]);
        let order: Vec<_> = p.terms().map(|(x, y, _)| (x, y)).collect();
        assert_eq!(order, vec![(1, 0), (5, 0), (-3, 1), (0, 1)]);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(0, 0, 1), (7, 5, 1), (0, 1, -2), (1, 0, -1)]);
        assert_eq!(p.to_string(), "1 - X - 2*Y + X^7*Y^5");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::monomial(-1, -1, -1).to_string(), "-X^-1*Y^-1");
    }

    #[test]
    fn exact_division() {
        // (1 - Y^3) / (1 - Y) = 1 + Y + Y^2
        let q = LaurentPoly::one_minus(0, 3).div_exact_y(&LaurentPoly::one_minus(0, 1)).unwrap();
        assert_eq!(q, LaurentPoly::from_y_coefficients([1, 1, 1]));
        let bad = LaurentPoly::one_minus(0, 3).div_exact_y(&LaurentPoly::one_minus(0, 2));
        assert!(bad.is_err());
        assert!(LaurentPoly::one().div_exact_y(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn evaluation_and_coefficients() {
        let p = LaurentPoly::from_terms([(1, 0, 1), (0, 2, 3), (2, 1, -1)]);
        let two = BigRational::from_integer(2.into());
        let half = BigRational::new(1.into(), 2.into());
        // 2 + 3/4 - 4/2 = 3/4
        assert_eq!(p.eval(&two, &half).unwrap(), BigRational::new(3.into(), 4.into()));
        let c = p.y_coefficients_at(2, 3).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(-4), BigInt::from(3), BigInt::from(0)]);
        assert!(LaurentPoly::monomial(0, -1, 1).y_coefficients_at(2, 1).is_err());
    }
}
