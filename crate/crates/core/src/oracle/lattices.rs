//! Maximal sublattices of `Z_p^n` of a given type, by exhaustive scan.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::hnf::{enumerate_hnf_with_budget, LatticeBasis, DEFAULT_BUDGET};
use crate::coxeter::ParabolicIndexSet;
use crate::error::{contract, Result};
use crate::polyrat::gaussian_multinomial;
use crate::residue::{smith_valuations, ResidueRing};

/// A lattice type `(I, r_I)` with `r` listed in increasing order of `ι`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeType {
    type_i: ParabolicIndexSet,
    r: Vec<u32>,
}

impl LatticeType {
    pub fn new(type_i: ParabolicIndexSet, r: Vec<u32>) -> Result<Self> {
        if r.len() != type_i.len() || r.contains(&0) {
            return Err(contract(format!("r = {r:?} does not match |I| = {} with positive entries", type_i.len())));
        }
        Ok(LatticeType { type_i, r })
    }

    pub fn n(&self) -> usize {
        self.type_i.degree()
    }

    pub fn weight(&self) -> u32 {
        self.r.iter().sum()
    }

    pub fn top(&self) -> usize {
        self.type_i.max().unwrap_or(0)
    }

    /// Elementary divisor exponents `ν_1 <= ... <= ν_n`.
    pub fn nu(&self) -> Vec<u32> {
        let mut nu = Vec::with_capacity(self.n());
        let (mut level, mut prev) = (0, 0);
        for (iota, r) in self.type_i.iter().zip(&self.r) {
            nu.extend(std::iter::repeat_n(level, iota - prev));
            level += r;
            prev = iota;
        }
        nu.extend(std::iter::repeat_n(level, self.n() - prev));
        nu
    }

    /// `log_p` of the index, `Σ_ι (n - ι) r_ι`.
    pub fn index_exponent(&self) -> u32 {
        self.type_i.iter().zip(&self.r).map(|(iota, r)| (self.n() - iota) as u32 * r).sum()
    }

    /// Every type of degree `n` with `Σ r <= max_weight`.
    pub fn all(n: usize, max_weight: u32) -> Result<Vec<LatticeType>> {
        let mut out = Vec::new();
        for set in ParabolicIndexSet::all_subsets(n)? {
            let len = set.len();
            let mut r = vec![1u32; len];
            loop {
                if r.iter().sum::<u32>() <= max_weight {
                    out.push(LatticeType { type_i: set.clone(), r: r.clone() });
                }
                // odometer over r with entries in [1, max_weight]
                let Some(pos) = (0..len).find(|&i| r[i] < max_weight) else { break };
                r[pos] += 1;
                r[..pos].iter_mut().for_each(|x| *x = 1);
            }
        }
        Ok(out)
    }
}

/// `binom(n, I)_{p^{-1}} p^{Σ_ι r_ι ι (n - ι)}`.
pub fn maximal_lattice_formula(lattice_type: &LatticeType, p: u64) -> Result<BigRational> {
    let n = lattice_type.n();
    let binom = gaussian_multinomial(n, &lattice_type.type_i)?;
    let value = binom.eval(&BigRational::one(), &BigRational::new(BigInt::from(1), BigInt::from(p)))?;
    let exp: u32 =
        lattice_type.type_i.iter().zip(&lattice_type.r).map(|(iota, r)| r * (iota * (n - iota)) as u32).sum();
    Ok(value * BigRational::from_integer(BigInt::from(p).pow(exp)))
}

fn type_lattices(lattice_type: &LatticeType, p: u64, budget: u128) -> Result<Vec<LatticeBasis>> {
    let n = lattice_type.n();
    let nu = lattice_type.nu();
    let ring = ResidueRing::new(p, lattice_type.weight() + 1)?;
    Ok(enumerate_hnf_with_budget(n, lattice_type.index_exponent(), p, budget)?
        .filter(|b| smith_valuations(b.rows(), &ring) == nu)
        .collect())
}

/// Number of sublattices of `Z_p^n` of the given type, by scanning all
/// Hermite bases of the right index and classifying them by Smith form.
pub fn count_maximal_lattices(lattice_type: &LatticeType, p: u64) -> Result<u128> {
    Ok(type_lattices(lattice_type, p, DEFAULT_BUDGET)?.len() as u128)
}

/// The subspace `φ(Λ)`: reductions mod `p` of `{x : x·y ≡ 0 mod p^S, y ∈ Λ}`,
/// as a sorted list of base-`p` encoded vectors.
fn phi_image(basis: &LatticeBasis, p: u64, s: u32) -> Vec<u64> {
    let n = basis.dim();
    let big = p.pow(s);
    let mut image = std::collections::BTreeSet::new();
    let total = big.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let x: Vec<u64> = (0..n)
            .map(|_| {
                let d = c % big;
                c /= big;
                d
            })
            .collect();
        let orthogonal =
            basis.rows().iter().all(|row| row.iter().zip(&x).map(|(&a, &b)| a % big * b).sum::<u64>() % big == 0);
        if orthogonal {
            image.insert(x.iter().rev().fold(0, |acc, &d| acc * p + d % p));
        }
    }
    image.into_iter().collect()
}

/// Fibre sizes of `φ` over the subspaces it hits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFibres {
    pub fibres: BTreeMap<Vec<u64>, u128>,
    pub formula: BigRational,
}

impl PhiFibres {
    /// Whether every fibre has the size predicted by the formula.
    pub fn uniform(&self) -> bool {
        self.fibres.values().all(|&c| BigRational::from_integer(BigInt::from(c)) == self.formula)
    }
}

/// Groups the lattices of one type by `φ` and compares the fibre sizes with
/// `p^{-i(n-i)} binom(i, I∖{i})_{p^{-1}} p^{Σ_ι r_ι ι(n-ι)}`.
pub fn phi_fibres(lattice_type: &LatticeType, p: u64) -> Result<PhiFibres> {
    let n = lattice_type.n();
    let s = lattice_type.weight();
    let mut fibres = BTreeMap::new();
    for basis in type_lattices(lattice_type, p, DEFAULT_BUDGET)? {
        *fibres.entry(phi_image(&basis, p, s)).or_insert(0u128) += 1;
    }
    let i = lattice_type.top();
    let mut formula = maximal_lattice_formula(lattice_type, p)?;
    if i > 0 {
        let grass = LatticeType::new(ParabolicIndexSet::new(n, [i])?, vec![1])?;
        formula /= maximal_lattice_formula(&grass, p)?;
    }
    Ok(PhiFibres { fibres, formula })
}
