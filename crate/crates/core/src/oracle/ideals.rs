//! Counting ideals of `p`-power index in the Heisenberg Lie ring `L(R)`.
//!
//! `L(R) = Z_p^{3n}` with basis `(a_1, ..., a_{2n}, c_1, ..., c_n)`, where the
//! `c_t` span the centre `L'` and `[a_i, a_j] = Σ_t M(ε_t)_{ij} c_t`.
//!
//! A Hermite basis of `Λ ≤ L` in this ordering splits into a Hermite basis of
//! the projection `Λ̄ ≤ Z^{2n}`, a Hermite basis of `Λ ∩ L' ≤ Z^n`, and free
//! lifts of the first `2n` rows into the centre. Only the first two pieces
//! enter the ideal condition `[L, Λ] ⊆ Λ ∩ L'`, and every lift choice gives
//! a distinct lattice, so each admissible pair contributes
//! `|Z^n : Λ ∩ L'|^{2n}` ideals.

use num_bigint::BigInt;

use super::hnf::{enumerate_hnf_with_budget, hnf_count, LatticeBasis, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::local_ring::{commutator_m, LocalRingSpec, ResidueVector};

/// How `count_ideals` walks the lattices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IdealEnumeration {
    /// Pairs `(Λ̄, Λ ∩ L')` weighted by the number of lifts.
    #[default]
    Factorized,
    /// Every Hermite basis of `Z^{3n}`, tested one by one.
    Exhaustive,
}

/// Result of an ideal count and the budget it consumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCount {
    pub count: BigInt,
    /// Lattice pairs (factorized) or bases (exhaustive) examined.
    pub budget_used: u128,
}

/// `brackets[t][i][j] = M(ε_t)_{ij}` modulo `p^k`.
fn bracket_tensor(spec: &LocalRingSpec) -> Vec<Vec<Vec<u64>>> {
    (1..=spec.n()).map(|t| commutator_m(spec, &ResidueVector::unit_vector(spec, t))).collect()
}

/// The vectors `[a_i, v]` for every generator `a_i` and row `v` of `Λ̄`,
/// as `c`-coordinates modulo `p^k`.
fn bracket_images(spec: &LocalRingSpec, brackets: &[Vec<Vec<u64>>], quotient: &LatticeBasis) -> Vec<Vec<u64>> {
    let r = spec.ring();
    let m = 2 * spec.n();
    let mut out = Vec::with_capacity(m * m);
    for row in quotient.rows() {
        for i in 0..m {
            let image: Vec<u64> = brackets
                .iter()
                .map(|mt| row.iter().zip(&mt[i]).fold(0, |acc, (&x, &y)| r.add(acc, r.mul(x % r.modulus(), y))))
                .collect();
            if image.iter().any(|&x| x != 0) {
                out.push(image);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn check_precision(spec: &LocalRingSpec, k: u32) -> Result<()> {
    if spec.k() < k {
        return Err(Error::Precision { needed: k, available: spec.k() });
    }
    Ok(())
}

/// Work needed by the factorized count: `Σ_b h(2n, k-b) h(n, b)`.
pub fn factorized_cost(n: usize, k: u32, p: u64) -> u128 {
    (0..=k).map(|b| hnf_count(2 * n, k - b, p).saturating_mul(hnf_count(n, b, p))).fold(0u128, u128::saturating_add)
}

/// `#{Λ ≤ L(R) : |L : Λ| = p^k, [L, Λ] ⊆ Λ}` with the default budget.
pub fn count_ideals(spec: &LocalRingSpec, k: u32) -> Result<BigInt> {
    Ok(count_ideals_with(spec, k, IdealEnumeration::Factorized, DEFAULT_BUDGET)?.count)
}

pub fn count_ideals_with(spec: &LocalRingSpec, k: u32, mode: IdealEnumeration, budget: u128) -> Result<IdealCount> {
    check_precision(spec, k)?;
    let working = spec.with_precision(k.max(1))?;
    match mode {
        IdealEnumeration::Factorized => count_factorized(&working, k, budget),
        IdealEnumeration::Exhaustive => count_exhaustive(&working, k, budget),
    }
}

fn count_factorized(spec: &LocalRingSpec, k: u32, budget: u128) -> Result<IdealCount> {
    let (n, p) = (spec.n(), spec.p());
    let cost = factorized_cost(n, k, p);
    if cost > budget {
        return Err(Error::Capacity { what: "lattice pairs", requested: cost, limit: budget });
    }
    let brackets = bracket_tensor(spec);
    let mut total = BigInt::from(0);
    for b in 0..=k {
        let centres: Vec<LatticeBasis> = enumerate_hnf_with_budget(n, b, p, budget)?.collect();
        let lifts = BigInt::from(p).pow(b * 2 * n as u32);
        let mut admissible: u128 = 0;
        for quotient in enumerate_hnf_with_budget(2 * n, k - b, p, budget)? {
            let images = bracket_images(spec, &brackets, &quotient);
            admissible += centres.iter().filter(|m| images.iter().all(|v| m.contains(v))).count() as u128;
        }
        total += lifts * admissible;
    }
    Ok(IdealCount { count: total, budget_used: cost })
}

fn count_exhaustive(spec: &LocalRingSpec, k: u32, budget: u128) -> Result<IdealCount> {
    let (n, p) = (spec.n(), spec.p());
    let m = 2 * n;
    let brackets = bracket_tensor(spec);
    let r = spec.ring();
    let mut count: u128 = 0;
    let mut used: u128 = 0;
    for lattice in enumerate_hnf_with_budget(3 * n, k, p, budget)? {
        used += 1;
        let is_ideal = lattice.rows().iter().all(|row| {
            (0..m).all(|i| {
                let mut image = vec![0u64; 3 * n];
                for (t, mt) in brackets.iter().enumerate() {
                    image[m + t] = row[..m].iter().zip(&mt[i]).fold(0, |acc, (&x, &y)| r.add(acc, r.mul(x % r.modulus(), y)));
                }
                lattice.contains(&image)
            })
        });
        if is_ideal {
            count += 1;
        }
    }
    Ok(IdealCount { count: BigInt::from(count), budget_used: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_ring::make_ring_spec;

    fn spec(p: u64, e: usize, f: usize, k: u32) -> LocalRingSpec {
        make_ring_spec(p, e, f, k).unwrap()
    }

    #[test]
    fn trivial_index() {
        assert_eq!(count_ideals(&spec(2, 2, 1, 2), 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn index_p() {
        assert_eq!(count_ideals(&spec(2, 1, 1, 2), 1).unwrap(), BigInt::from(3));
        assert_eq!(count_ideals(&spec(2, 3, 1, 2), 1).unwrap(), BigInt::from(63));
    }

    #[test]
    fn heisenberg_over_z2() {
        let s = spec(2, 1, 1, 4);
        let counts: Vec<BigInt> = (0..=4).map(|k| count_ideals(&s, k).unwrap()).collect();
        assert_eq!(counts, [1, 3, 7, 19, 43].map(BigInt::from));
    }

    #[test]
    fn modes_agree() {
        for (p, e, f, k) in [(2, 1, 1, 4), (3, 1, 1, 3), (2, 2, 1, 2), (2, 1, 2, 2), (2, 2, 1, 3)] {
            let s = spec(p, e, f, k);
            let a = count_ideals_with(&s, k, IdealEnumeration::Factorized, DEFAULT_BUDGET).unwrap();
            let b = count_ideals_with(&s, k, IdealEnumeration::Exhaustive, DEFAULT_BUDGET).unwrap();
            assert_eq!(a.count, b.count, "(p,e,f,k) = ({p},{e},{f},{k})");
        }
    }

    #[test]
    fn precision_and_budget() {
        assert!(matches!(count_ideals(&spec(2, 1, 1, 2), 3), Err(Error::Precision { .. })));
        let r = count_ideals_with(&spec(2, 2, 2, 3), 3, IdealEnumeration::Factorized, 10);
        assert!(matches!(r, Err(Error::Capacity { .. })));
    }
}
