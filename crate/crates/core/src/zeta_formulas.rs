//! Closed forms for `W(X, Y)`, the local normal zeta function of `H(R)`
//! for `R` with ramification index `e` and inertia degree `f`.
//!
//! Four constructors are provided: the main sum over `S_n`, the inert
//! (unramified) formula via Gaussian multinomials, the reduced sum over
//! `S_n^{(f)} = {w : w(1) <= f}`, and the totally ramified sum over
//! `S_{n-1}`. All of them funnel through [`assemble`], which fixes the
//! denominator multiset and performs the shared nonnegativity check.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coxeter::{
    compose, descent_mask, enumerate_permutations, last_letter_length, length, power_of_cycle, Permutation,
};
use crate::error::{contract, Error, Result};
use crate::polyrat::{GeometricFactor, LaurentPoly, ProductRationalFunction};

/// Default cap on `n = ef` for the `S_n` sums.
pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Cap for the totally ramified formula, whose sum runs over `S_{n-1}`.
pub const TOTALLY_RAMIFIED_DEGREE_CAP: usize = 9;

/// Ramification data `(e, f)` of the coefficient ring, with `n = ef`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionShape {
    e: usize,
    f: usize,
}

impl ExtensionShape {
    pub fn new(e: usize, f: usize) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(contract(format!("shape (e, f) = ({e}, {f}) needs positive entries")));
        }
        Ok(ExtensionShape { e, f })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn n(&self) -> usize {
        self.e * self.f
    }

    /// Every shape with `ef <= max_n`, ordered by `n` then `e`.
    pub fn all_up_to(max_n: usize) -> Vec<ExtensionShape> {
        (1..=max_n)
            .flat_map(|n| (1..=n).filter(move |e| n % e == 0).map(move |e| ExtensionShape { e, f: n / e }))
            .collect()
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Capacity { what: "degree n = ef", requested: n as u128, limit: cap as u128 });
    }
    Ok(())
}

/// Exponents `(a, b)` of `x_i = X^a Y^b` with `a = (2n+i)(n-i)`, `b = 3n-i`.
fn numerical_exponents(n: usize, i: usize) -> (i64, i64) {
    let (n, i) = (n as i64, i as i64);
    ((2 * n + i) * (n - i), 3 * n - i)
}

/// The numerical datum `x_i = X^{(2n+i)(n-i)} Y^{3n-i}`, `0 <= i <= n-1`.
pub fn numerical_data(n: usize, i: usize) -> Result<LaurentPoly> {
    if n == 0 || i >= n {
        return Err(contract(format!("x_{i} is undefined for n = {n}")));
    }
    let (a, b) = numerical_exponents(n, i);
    Ok(LaurentPoly::monomial(a, b, 1))
}

/// Denominator factors of `ζ_{Z_p^d}(s) = ∏_{i<d} 1/(1 - X^i Y)`.
fn free_abelian_factors(d: usize) -> Vec<GeometricFactor> {
    (0..d as i64).map(|i| GeometricFactor::new(i, 1).expect("valid factor")).collect()
}

/// `ζ_{Z_p^d}(s) = ∏_{i=0}^{d-1} 1/(1 - X^i Y)`.
pub fn zeta_free_abelian(d: usize) -> Result<ProductRationalFunction> {
    if d == 0 {
        return Err(contract("free abelian rank must be positive"));
    }
    Ok(ProductRationalFunction::new(LaurentPoly::one(), free_abelian_factors(d)))
}

/// Which factor stands in for `1 - x_0` in the denominator.
#[derive(Clone, Copy)]
enum LeadingFactor {
    /// `1 - x_0` itself.
    X0,
    /// `1 - X^{2nf} Y^{3f}`.
    Reduced { f: usize },
}

/// Shared assembly: `ζ_{Z_p^{2n}}(s) · numerator / (lead · ∏_{i=1}^{n-1}(1 - x_i))`.
fn assemble(n: usize, numerator: LaurentPoly, lead: LeadingFactor) -> Result<ProductRationalFunction> {
    if !numerator.has_nonnegative_exponents() {
        let (x, y) = numerator.min_exponents().unwrap_or_default();
        return Err(Error::IllFormedSeries(format!(
            "assembled numerator for n = {n} has minimal exponents X^{x}, Y^{y}"
        )));
    }
    let mut factors = free_abelian_factors(2 * n);
    let (a, b) = match lead {
        LeadingFactor::X0 => numerical_exponents(n, 0),
        LeadingFactor::Reduced { f } => (2 * (n * f) as i64, 3 * f as i64),
    };
    factors.push(GeometricFactor::new(a, b)?);
    for i in 1..n {
        let (a, b) = numerical_exponents(n, i);
        factors.push(GeometricFactor::new(a, b)?);
    }
    Ok(ProductRationalFunction::new(numerator, factors))
}

/// Precomputed `(a, b)` of `x_j` for `j = 1..n-1`, indexed by `j - 1`.
fn descent_weights(n: usize) -> Vec<(i64, i64)> {
    (1..n).map(|j| numerical_exponents(n, j)).collect()
}

/// `X^{-ℓ(w)} Y^{-2f⌊ℓ^{[n-2]}(w)/f⌋} ∏_{j ∈ Des(w)} x_j` as an exponent pair.
#[inline]
fn main_term(w: &Permutation, f: usize, weights: &[(i64, i64)]) -> (i64, i64) {
    let floor_stat = (last_letter_length(w) / f * f) as i64;
    let mut a = -(length(w) as i64);
    let mut b = -2 * floor_stat;
    let mut mask = descent_mask(w);
    while mask != 0 {
        let j = mask.trailing_zeros() as usize;
        a += weights[j].0;
        b += weights[j].1;
        mask &= mask - 1;
    }
    (a, b)
}

/// Sums `main_term` over a stream of permutations.
fn sum_terms(perms: impl Iterator<Item = Permutation>, f: usize, weights: &[(i64, i64)]) -> LaurentPoly {
    let mut acc: std::collections::HashMap<(i64, i64), i64> = std::collections::HashMap::new();
    for w in perms {
        *acc.entry(main_term(&w, f, weights)).or_default() += 1;
    }
    LaurentPoly::from_terms(acc.into_iter().map(|((a, b), c)| (a, b, c)))
}

/// The main formula: a sum over all of `S_n` over `∏_{i=0}^{n-1}(1 - x_i)`,
/// times `ζ_{Z_p^{2n}}`.
pub fn zeta_main(shape: ExtensionShape) -> Result<ProductRationalFunction> {
    zeta_main_capped(shape, DEFAULT_DEGREE_CAP)
}

pub fn zeta_main_capped(shape: ExtensionShape, cap: usize) -> Result<ProductRationalFunction> {
    let n = shape.n();
    check_cap(n, cap)?;
    let numerator = sum_terms(enumerate_permutations(n)?, shape.f(), &descent_weights(n));
    assemble(n, numerator, LeadingFactor::X0)
}

/// The reduced formula: the same summand restricted to `w(1) <= f`, over
/// `(1 - X^{2nf} Y^{3f}) ∏_{i=1}^{n-1}(1 - x_i)`.
pub fn zeta_snf(shape: ExtensionShape) -> Result<ProductRationalFunction> {
    let n = shape.n();
    check_cap(n, DEFAULT_DEGREE_CAP)?;
    let f = shape.f();
    let perms = enumerate_permutations(n)?.filter(|w| w.apply(1) <= f);
    let numerator = sum_terms(perms, f, &descent_weights(n));
    assemble(n, numerator, LeadingFactor::Reduced { f })
}

/// The unramified formula
/// `ζ_{Z_p^{2n}} / (1 - x_0) · Σ_{I ⊆ [n-1]} binom(n, I)_{X^{-1}} ∏_{i ∈ I} x_i / (1 - x_i)`
/// brought over `∏_{i=0}^{n-1}(1 - x_i)`. The multinomial is realized as
/// `Σ_{Des(w) ⊆ I} X^{-ℓ(w)}`.
pub fn zeta_inert(n: usize) -> Result<ProductRationalFunction> {
    if n == 0 {
        return Err(contract("degree must be positive"));
    }
    check_cap(n, DEFAULT_DEGREE_CAP)?;
    let subsets = 1usize << (n - 1);
    // X^{-ℓ(w)} grouped by exact descent set
    let mut by_descent = vec![LaurentPoly::zero(); subsets];
    for w in enumerate_permutations(n)? {
        by_descent[descent_mask(&w) as usize].add_term(-(length(&w) as i64), 0, BigInt::from(1));
    }
    let x: Vec<LaurentPoly> = (0..n).map(|i| numerical_data(n, i)).collect::<Result<_>>()?;
    let mut numerator = LaurentPoly::zero();
    for mask in 0..subsets {
        let multinomial: LaurentPoly =
            (0..subsets).filter(|&d| d & !mask == 0).map(|d| by_descent[d].clone()).sum();
        let mut term = multinomial;
        for i in 1..n {
            let factor =
                if mask >> (i - 1) & 1 == 1 { x[i].clone() } else { &LaurentPoly::one() - &x[i] };
            term = &term * &factor;
        }
        numerator += &term;
    }
    assemble(n, numerator, LeadingFactor::X0)
}

/// The totally ramified formula: a sum over `S_{n-1}`, embedded in `S_n` as
/// the stabilizer of the letter 1, with shifted data `x_{j+1}`.
pub fn zeta_totally_ramified(n: usize) -> Result<ProductRationalFunction> {
    if n == 0 {
        return Err(contract("degree must be positive"));
    }
    check_cap(n, TOTALLY_RAMIFIED_DEGREE_CAP)?;
    let numerator = if n == 1 {
        LaurentPoly::one()
    } else {
        let m = n - 1;
        let weights = descent_weights(n);
        let mut acc: std::collections::HashMap<(i64, i64), i64> = std::collections::HashMap::new();
        for w in enumerate_permutations(m)? {
            // ℓ^{[m-2]} on S_m is m - w(m)
            let mut a = -(length(&w) as i64);
            let mut b = -2 * last_letter_length(&w) as i64;
            let mut mask = descent_mask(&w);
            while mask != 0 {
                // descent j of w contributes x_{j+1}; weights[j] holds x_{j+1}
                let j = mask.trailing_zeros() as usize + 1;
                a += weights[j].0;
                b += weights[j].1;
                mask &= mask - 1;
            }
            *acc.entry((a, b)).or_default() += 1;
        }
        LaurentPoly::from_terms(acc.into_iter().map(|((a, b), c)| (a, b, c)))
    };
    assemble(n, numerator, LeadingFactor::Reduced { f: 1 })
}

/// Outcome of comparing `W(X^{-1}, Y^{-1})` against
/// `(-1)^{3n} X^{C(3n,2)} Y^{5n+2(e-1)f} W(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEquationReport {
    pub e: usize,
    pub f: usize,
    pub holds: bool,
    pub sign: i32,
    pub x_exponent: i64,
    pub y_exponent: i64,
}

/// Expected constants `(sign, x_exponent, y_exponent)` of the functional
/// equation for a shape.
pub fn functional_equation_constants(shape: ExtensionShape) -> (i32, i64, i64) {
    let n = shape.n() as i64;
    let sign = if (3 * n) % 2 == 0 { 1 } else { -1 };
    let x_exp = 3 * n * (3 * n - 1) / 2;
    let y_exp = 5 * n + 2 * (shape.e() as i64 - 1) * shape.f() as i64;
    (sign, x_exp, y_exp)
}

pub fn check_functional_equation(shape: ExtensionShape) -> Result<FunctionalEquationReport> {
    let w = zeta_main(shape)?;
    let inverted = w.invert_variables();
    let (sign, x_exponent, y_exponent) = functional_equation_constants(shape);
    let expected = w.scale(&LaurentPoly::monomial(x_exponent, y_exponent, sign));
    Ok(FunctionalEquationReport {
        e: shape.e(),
        f: shape.f(),
        holds: inverted.rf_equal(&expected),
        sign,
        x_exponent,
        y_exponent,
    })
}

/// Which of the two cycle-shift identities to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftVariant {
    /// `term(c^m w) = (X^{2n} Y^3)^m term(w)` with the unfloored statistic,
    /// valid when `w(1) <= n - m`.
    Plain,
    /// `term(c^{mf} w) = (X^{2n} Y^3)^{mf} term(w)` with the floored
    /// statistic, valid when `w(1) <= f` and `m <= ⌊(n-f)/f⌋`.
    Floored { f: usize },
}

/// Summand `X^{-ℓ(w)} Y^{-2 s(w)} ∏_{j ∈ Des(w)} x_j`, where `s` is either
/// `ℓ^{[n-2]}` or its `f`-floor.
fn shift_term(w: &Permutation, variant: ShiftVariant) -> LaurentPoly {
    let n = w.degree();
    let stat = match variant {
        ShiftVariant::Plain => last_letter_length(w),
        ShiftVariant::Floored { f } => last_letter_length(w) / f * f,
    };
    let mut poly = LaurentPoly::monomial(-(length(w) as i64), -2 * stat as i64, 1);
    for j in crate::coxeter::descent_set(w).iter() {
        poly = &poly * &numerical_data(n, j).expect("descent index below n");
    }
    poly
}

/// Evaluates both sides of the cycle-shift identity for `w` and `m` and
/// reports whether they agree.
pub fn shift_identity_check(w: &Permutation, m: usize, variant: ShiftVariant) -> Result<bool> {
    let n = w.degree();
    let steps = match variant {
        ShiftVariant::Plain => {
            if m >= n || w.apply(1) + m > n {
                return Err(contract(format!("shift identity needs w(1) <= n - m, got w(1) = {}, m = {m}", w.apply(1))));
            }
            m
        }
        ShiftVariant::Floored { f } => {
            if f == 0 || f > n || w.apply(1) > f || m > (n - f) / f {
                return Err(contract(format!(
                    "floored shift identity needs w(1) <= f and m <= (n-f)/f, got w(1) = {}, f = {f}, m = {m}",
                    w.apply(1)
                )));
            }
            m * f
        }
    };
    let shifted = compose(&power_of_cycle(n, steps), w)?;
    let lhs = shift_term(&shifted, variant);
    let rhs = &LaurentPoly::monomial(2 * (n * steps) as i64, 3 * steps as i64, 1) * &shift_term(w, variant);
    Ok(lhs == rhs)
}

/// Checks that every `w ∈ S_n` is `c^{mf} u` for exactly one
/// `m ∈ [e-1]_0` and `u` with `u(1) <= f`.
pub fn coset_partition_holds(shape: ExtensionShape) -> Result<bool> {
    let (n, e, f) = (shape.n(), shape.e(), shape.f());
    let inverse_shifts: Vec<Permutation> = (0..e).map(|m| power_of_cycle(n, (n - m * f) % n)).collect();
    for w in enumerate_permutations(n)? {
        let mut hits = 0;
        for shift in &inverse_shifts {
            if compose(shift, &w)?.apply(1) <= f {
                hits += 1;
            }
        }
        if hits != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `1 - x_0 = (1 - X^{2nf} Y^{3f}) Σ_{m=0}^{e-1} X^{2nfm} Y^{3fm}`.
pub fn leading_factor_identity_holds(shape: ExtensionShape) -> bool {
    let (n, e, f) = (shape.n() as i64, shape.e() as i64, shape.f() as i64);
    let lhs = LaurentPoly::one_minus(2 * n * n, 3 * n);
    let geometric: LaurentPoly = (0..e).map(|m| LaurentPoly::monomial(2 * n * f * m, 3 * f * m, 1)).sum();
    lhs == &LaurentPoly::one_minus(2 * n * f, 3 * f) * &geometric
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(e: usize, f: usize) -> ExtensionShape {
        ExtensionShape::new(e, f).unwrap()
    }

    fn gss_cubic() -> ProductRationalFunction {
        let num = LaurentPoly::from_terms([(0, 0, 1), (7, 5, 1)]);
        let mut pairs: Vec<(i64, i64)> = (0..6).map(|i| (i, 1)).collect();
        pairs.extend([(6, 3), (8, 7), (14, 8)]);
        ProductRationalFunction::from_pairs(num, &pairs).unwrap()
    }

    #[test]
    fn numerical_data_values() {
        assert_eq!(numerical_data(3, 1).unwrap(), LaurentPoly::monomial(14, 8, 1));
        assert_eq!(numerical_data(3, 2).unwrap(), LaurentPoly::monomial(8, 7, 1));
        assert_eq!(numerical_data(3, 0).unwrap(), LaurentPoly::monomial(18, 9, 1));
        assert_eq!(numerical_data(1, 0).unwrap(), LaurentPoly::monomial(2, 3, 1));
        assert!(numerical_data(3, 3).is_err());
    }

    #[test]
    fn free_abelian() {
        let z1 = zeta_free_abelian(1).unwrap();
        assert!(z1.rf_equal(&ProductRationalFunction::from_pairs(LaurentPoly::one(), &[(0, 1)]).unwrap()));
        let z6 = zeta_free_abelian(6).unwrap();
        assert_eq!(z6.series_y(2, 1).unwrap(), vec![BigInt::from(1), BigInt::from(63)]);
        assert!(zeta_free_abelian(0).is_err());
    }

    #[test]
    fn degree_one() {
        let expected = ProductRationalFunction::from_pairs(LaurentPoly::one(), &[(0, 1), (1, 1), (2, 3)]).unwrap();
        let main = zeta_main(shape(1, 1)).unwrap();
        assert_eq!(main.numerator(), &LaurentPoly::one());
        assert!(main.rf_equal(&expected));
        assert!(zeta_inert(1).unwrap().rf_equal(&expected));
        assert!(zeta_totally_ramified(1).unwrap().rf_equal(&expected));
        assert!(zeta_snf(shape(1, 1)).unwrap().rf_equal(&expected));
    }

    #[test]
    fn cubic_totally_ramified_matches_published_form() {
        assert!(zeta_main(shape(3, 1)).unwrap().rf_equal(&gss_cubic()));
        assert!(zeta_totally_ramified(3).unwrap().rf_equal(&gss_cubic()));
        let snf = zeta_snf(shape(3, 1)).unwrap();
        assert_eq!(snf.numerator(), &LaurentPoly::from_terms([(0, 0, 1), (7, 5, 1)]));
    }

    #[test]
    fn series_prefixes() {
        let s = zeta_main(shape(1, 1)).unwrap().series_y(2, 2).unwrap();
        assert_eq!(s, vec![BigInt::from(1), BigInt::from(3), BigInt::from(7)]);
        let s = zeta_main(shape(3, 1)).unwrap().series_y(2, 1).unwrap();
        assert_eq!(s, vec![BigInt::from(1), BigInt::from(63)]);
    }

    #[test]
    fn small_consistency() {
        for n in 2..=4 {
            let main = zeta_main(shape(1, n)).unwrap();
            assert!(main.rf_equal(&zeta_inert(n).unwrap()), "inert n={n}");
            assert!(main.rf_equal(&zeta_snf(shape(1, n)).unwrap()), "snf e=1 n={n}");
        }
        assert!(zeta_main(shape(2, 2)).unwrap().rf_equal(&zeta_snf(shape(2, 2)).unwrap()));
        assert!(zeta_main(shape(4, 1)).unwrap().rf_equal(&zeta_totally_ramified(4).unwrap()));
    }

    #[test]
    fn functional_equation_examples() {
        let r = check_functional_equation(shape(1, 1)).unwrap();
        assert_eq!((r.holds, r.sign, r.x_exponent, r.y_exponent), (true, -1, 3, 5));
        let r = check_functional_equation(shape(3, 1)).unwrap();
        assert_eq!((r.holds, r.sign, r.x_exponent, r.y_exponent), (true, -1, 36, 19));
        let r = check_functional_equation(shape(2, 2)).unwrap();
        assert_eq!((r.holds, r.sign, r.x_exponent, r.y_exponent), (true, 1, 66, 24));
    }

    #[test]
    fn capacity_limits() {
        assert!(matches!(zeta_main(shape(9, 1)), Err(Error::Capacity { .. })));
        assert!(matches!(zeta_inert(9), Err(Error::Capacity { .. })));
        assert!(matches!(zeta_totally_ramified(10), Err(Error::Capacity { .. })));
        assert!(zeta_main_capped(shape(3, 1), 2).is_err());
        assert!(ExtensionShape::new(0, 1).is_err());
    }

    #[test]
    fn shift_identity_examples() {
        let id2 = Permutation::identity(2);
        assert!(shift_identity_check(&id2, 1, ShiftVariant::Plain).unwrap());
        // both sides are X^4 Y^3 here
        let c = power_of_cycle(2, 1);
        assert_eq!(shift_term(&c, ShiftVariant::Plain), LaurentPoly::monomial(4, 3, 1));
        for w in enumerate_permutations(4).unwrap() {
            assert!(shift_identity_check(&w, 0, ShiftVariant::Plain).unwrap());
        }
        let w = Permutation::new(vec![2, 1, 3, 4]).unwrap();
        assert!(shift_identity_check(&w, 1, ShiftVariant::Floored { f: 2 }).unwrap());
        assert!(shift_identity_check(&Permutation::new(vec![2, 1]).unwrap(), 1, ShiftVariant::Plain).is_err());
        assert!(shift_identity_check(&w, 2, ShiftVariant::Floored { f: 2 }).is_err());
    }

    #[test]
    fn snf_ingredients() {
        for s in ExtensionShape::all_up_to(6) {
            assert!(coset_partition_holds(s).unwrap(), "{s:?}");
            assert!(leading_factor_identity_holds(s), "{s:?}");
        }
    }

    #[test]
    fn shapes_enumeration() {
        let shapes = ExtensionShape::all_up_to(4);
        let pairs: Vec<_> = shapes.iter().map(|s| (s.e(), s.f())).collect();
        assert_eq!(pairs, vec![(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (2, 2), (4, 1)]);
    }
}
