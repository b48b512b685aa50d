use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::LaurentPoly;
use crate::error::{contract, Error, Result};

/// The factor `1 - X^a Y^b` with `a >= 0`, `b >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeometricFactor {
    // field order gives the canonical (b, a) sort
    b: i64,
    a: i64,
}

impl GeometricFactor {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 0 || b < 1 {
            return Err(contract(format!("geometric factor 1 - X^{a} Y^{b} needs a >= 0, b >= 1")));
        }
        Ok(GeometricFactor { b, a })
    }

    pub fn x_exponent(&self) -> i64 {
        self.a
    }

    pub fn y_exponent(&self) -> i64 {
        self.b
    }

    pub fn as_poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(self.a, self.b)
    }
}

/// A Laurent polynomial over a product of geometric factors.
///
/// No cancellation is ever attempted; equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct ProductRationalFunction {
    numerator: LaurentPoly,
    denominator: Vec<GeometricFactor>,
}

impl ProductRationalFunction {
    pub fn new(numerator: LaurentPoly, mut denominator: Vec<GeometricFactor>) -> Self {
        denominator.sort_unstable();
        ProductRationalFunction { numerator, denominator }
    }

    /// Convenience constructor from `(a, b)` pairs.
    pub fn from_pairs(numerator: LaurentPoly, pairs: &[(i64, i64)]) -> Result<Self> {
        let factors = pairs.iter().map(|&(a, b)| GeometricFactor::new(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(numerator, factors))
    }

    pub fn polynomial(numerator: LaurentPoly) -> Self {
        Self::new(numerator, Vec::new())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// Denominator factors in sorted order.
    pub fn denominator(&self) -> &[GeometricFactor] {
        &self.denominator
    }

    pub fn expanded_denominator(&self) -> LaurentPoly {
        self.denominator.iter().map(GeometricFactor::as_poly).product()
    }

    /// Multiplies the numerator by `p`, leaving the denominator alone.
    pub fn scale(&self, p: &LaurentPoly) -> Self {
        ProductRationalFunction { numerator: &self.numerator * p, denominator: self.denominator.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.denominator.clone();
        den.extend_from_slice(&other.denominator);
        Self::new(&self.numerator * &other.numerator, den)
    }

    /// Exact equality as rational functions. Shared denominator factors are
    /// cancelled from both sides before cross-multiplying, which is valid
    /// since every factor is a nonzero polynomial.
    pub fn rf_equal(&self, other: &Self) -> bool {
        let (only_self, only_other) = multiset_difference(&self.denominator, &other.denominator);
        let lhs = only_other.iter().fold(self.numerator.clone(), |acc, f| &acc * &f.as_poly());
        let rhs = only_self.iter().fold(other.numerator.clone(), |acc, f| &acc * &f.as_poly());
        lhs == rhs
    }

    /// `F(X^{-1}, Y^{-1})` over the same denominator, using
    /// `1 - X^{-a} Y^{-b} = -X^{-a} Y^{-b} (1 - X^a Y^b)`.
    pub fn invert_variables(&self) -> Self {
        let sum_a: i64 = self.denominator.iter().map(|f| f.a).sum();
        let sum_b: i64 = self.denominator.iter().map(|f| f.b).sum();
        let sign = if self.denominator.len() % 2 == 0 { 1 } else { -1 };
        let numerator = self.numerator.invert_variables().mul_monomial(sum_a, sum_b, &BigInt::from(sign));
        ProductRationalFunction { numerator, denominator: self.denominator.clone() }
    }

    /// First `max_k + 1` coefficients of the expansion of `F(p, Y)` as a power
    /// series in `Y`.
    pub fn series_y(&self, p: u64, max_k: usize) -> Result<Vec<BigInt>> {
        let mut series = self.numerator.y_coefficients_at(p, max_k)?;
        let base = BigInt::from(p);
        for f in &self.denominator {
            // divide by (1 - c Y^b): s_j += c s_{j-b}, ascending
            let c = base.pow(f.a as u32);
            let b = f.b as usize;
            for j in b..=max_k {
                let prev = series[j - b].clone();
                if !prev.is_zero() {
                    series[j] += &c * prev;
                }
            }
        }
        Ok(series)
    }

    /// Checks that `series_y` is well defined, i.e. the numerator has no
    /// negative exponents.
    pub fn check_series_form(&self) -> Result<()> {
        match self.numerator.min_exponents() {
            Some((x, y)) if x < 0 || y < 0 => Err(Error::IllFormedSeries(format!(
                "numerator has minimal exponents X^{x}, Y^{y}"
            ))),
            _ => Ok(()),
        }
    }
}

fn multiset_difference(a: &[GeometricFactor], b: &[GeometricFactor]) -> (Vec<GeometricFactor>, Vec<GeometricFactor>) {
    // both inputs sorted
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                only_a.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    only_a.extend_from_slice(&a[i..]);
    only_b.extend_from_slice(&b[j..]);
    (only_a, only_b)
}

impl fmt::Display for ProductRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.denominator.is_empty() {
            return Ok(());
        }
        f.write_str(" / (")?;
        for (k, g) in self.denominator.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "(1 - {})", super::laurent::monomial_text(g.a, g.b))?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: LaurentPoly, pairs: &[(i64, i64)]) -> ProductRationalFunction {
        ProductRationalFunction::from_pairs(num, pairs).unwrap()
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let n = LaurentPoly::from_terms([(1, 0, 2), (0, 3, -1)]);
        let one_plus_y = LaurentPoly::from_y_coefficients([1, 1]);
        let a = rf(n.clone(), &[(0, 1)]);
        let b = rf(&n * &one_plus_y, &[(0, 2)]);
        assert!(a.rf_equal(&b));
        assert!(!rf(LaurentPoly::one(), &[(1, 1)]).rf_equal(&rf(LaurentPoly::one(), &[(2, 1)])));
    }

    #[test]
    fn invert_one_factor() {
        // 1 / (1 - 1/(XY)) = -XY / (1 - XY)
        let f = rf(LaurentPoly::one(), &[(1, 1)]);
        let g = f.invert_variables();
        assert_eq!(g.numerator(), &LaurentPoly::monomial(1, 1, -1));
        assert_eq!(g.denominator(), f.denominator());
    }

    #[test]
    fn invert_three_factors() {
        let f = rf(LaurentPoly::one(), &[(0, 1), (1, 1), (2, 3)]);
        let g = f.invert_variables();
        assert_eq!(g.numerator(), &LaurentPoly::monomial(3, 5, -1));
        assert!(g.invert_variables().rf_equal(&f));
    }

    #[test]
    fn invert_constant() {
        let f = ProductRationalFunction::polynomial(LaurentPoly::constant(5));
        assert!(f.invert_variables().rf_equal(&f));
    }

    #[test]
    fn series_basics() {
        let f = rf(LaurentPoly::one(), &[(0, 1), (1, 1), (2, 3)]);
        assert_eq!(f.series_y(2, 0).unwrap(), vec![BigInt::from(1)]);
        let s: Vec<i64> = f.series_y(2, 4).unwrap().into_iter().map(|c| c.try_into().unwrap()).collect();
        // 1/((1-Y)(1-2Y)) = 1,3,7,15,31 ; plus 4Y^3/(...) shifts
        assert_eq!(s, vec![1, 3, 7, 19, 43]);
        let bad = rf(LaurentPoly::monomial(0, -1, 1), &[(0, 1)]);
        assert!(matches!(bad.series_y(2, 3), Err(Error::IllFormedSeries(_))));
    }

    #[test]
    fn factor_validation() {
        assert!(GeometricFactor::new(-1, 1).is_err());
        assert!(GeometricFactor::new(0, 0).is_err());
    }
}
