//! Gaussian binomials and multinomials as polynomials in `Y`.

use super::LaurentPoly;
use crate::coxeter::ParabolicIndexSet;
use crate::error::{contract, Result};

/// `binom(a, b)_Y = ∏_{i=a-b+1}^{a} (1 - Y^i) / ∏_{i=1}^{b} (1 - Y^i)`,
/// computed by exact long division.
pub fn gaussian_binomial(a: usize, b: usize) -> Result<LaurentPoly> {
    if b > a {
        return Err(contract(format!("gaussian_binomial({a}, {b}) needs a >= b")));
    }
    let numerator: LaurentPoly = (a - b + 1..=a).map(|i| LaurentPoly::one_minus(0, i as i64)).product();
    let denominator: LaurentPoly = (1..=b).map(|i| LaurentPoly::one_minus(0, i as i64)).product();
    numerator
        .div_exact_y(&denominator)
        .map_err(|e| contract(format!("gaussian_binomial({a}, {b}): internal division failure: {e}")))
}

/// `binom(n, I)_Y = binom(n, i_l)_Y binom(i_l, i_{l-1})_Y ... binom(i_2, i_1)_Y`.
pub fn gaussian_multinomial(n: usize, i_set: &ParabolicIndexSet) -> Result<LaurentPoly> {
    if i_set.degree() != n {
        return Err(contract(format!("index set of degree {} used with n = {n}", i_set.degree())));
    }
    let mut tops: Vec<usize> = i_set.iter().collect();
    tops.reverse();
    let mut acc = LaurentPoly::one();
    let mut upper = n;
    for i in tops {
        acc = &acc * &gaussian_binomial(upper, i)?;
        upper = i;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(gaussian_binomial(4, 2).unwrap(), LaurentPoly::from_y_coefficients([1, 1, 2, 1, 1]));
        for a in 0..6 {
            assert_eq!(gaussian_binomial(a, 0).unwrap(), LaurentPoly::one());
            assert_eq!(gaussian_binomial(a, a).unwrap(), LaurentPoly::one());
        }
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn binomial_at_two_counts_lines() {
        // Lines in F_2^3 by listing nonzero vectors: each line has one.
        let lines = (1u32..8).count();
        let b = gaussian_binomial(3, 1).unwrap();
        let v: i64 = b.terms().map(|(_, y, c)| i64::try_from(c.clone()).unwrap() << y).sum();
        assert_eq!(v, lines as i64);
    }

    #[test]
    fn small_multinomials() {
        let full = ParabolicIndexSet::new(3, [1, 2]).unwrap();
        assert_eq!(gaussian_multinomial(3, &full).unwrap(), LaurentPoly::from_y_coefficients([1, 2, 2, 1]));
        let mid = ParabolicIndexSet::new(4, [2]).unwrap();
        assert_eq!(gaussian_multinomial(4, &mid).unwrap(), gaussian_binomial(4, 2).unwrap());
        for n in 1..6 {
            let empty = ParabolicIndexSet::empty(n).unwrap();
            assert_eq!(gaussian_multinomial(n, &empty).unwrap(), LaurentPoly::one());
        }
    }
}
