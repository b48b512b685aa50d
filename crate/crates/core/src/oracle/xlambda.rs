//! Direct solution of the congruence systems that determine `|L : X(Λ')|`
//! for maximal lattices `Λ' ≤ L'`.
//!
//! A sample is an invertible `α` and a type `(I, r_I)`. It stands for the
//! lattice `{y : y α^j ≡ 0 mod p^{ν_j} for all j}`, whose elementary divisors
//! are `p^ν`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coxeter::ParabolicIndexSet;
use crate::error::{contract, Error, Result};
use crate::local_ring::{ceiling_alpha, commutator_m, LocalRingSpec, ResidueVector};
use crate::residue::{is_invertible_mod_p, smith_valuations};

/// Largest `Σ r_ι` drawn by [`verify_xlambda`].
pub const MAX_SAMPLE_WEIGHT: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalLatticeSample {
    alpha: Vec<Vec<u64>>,
    type_i: ParabolicIndexSet,
    r: Vec<u32>,
}

impl MaximalLatticeSample {
    /// `r` lists `r_ι` for `ι ∈ I` in increasing order of `ι`.
    pub fn new(alpha: Vec<Vec<u64>>, type_i: ParabolicIndexSet, r: Vec<u32>, p: u64) -> Result<Self> {
        let n = alpha.len();
        if n == 0 || alpha.iter().any(|row| row.len() != n) {
            return Err(contract("α must be a nonempty square matrix"));
        }
        if type_i.degree() != n {
            return Err(contract(format!("type of degree {} used with n = {n}", type_i.degree())));
        }
        if r.len() != type_i.len() || r.contains(&0) {
            return Err(contract(format!("r = {r:?} does not match |I| = {} with positive entries", type_i.len())));
        }
        if !is_invertible_mod_p(&alpha, p) {
            return Err(contract("α is not invertible modulo p"));
        }
        Ok(MaximalLatticeSample { alpha, type_i, r })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Vec<u64>] {
        &self.alpha
    }

    pub fn type_i(&self) -> &ParabolicIndexSet {
        &self.type_i
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    /// `Σ_{ι ∈ I} r_ι`.
    pub fn weight(&self) -> u32 {
        self.r.iter().sum()
    }

    /// `i = max I`, or 0 for the empty type.
    pub fn top(&self) -> usize {
        self.type_i.max().unwrap_or(0)
    }

    /// The exponents `ν_1 <= ... <= ν_n` of the elementary divisors.
    pub fn nu(&self) -> Vec<u32> {
        let mut nu = Vec::with_capacity(self.n());
        let mut level = 0;
        let mut prev = 0;
        for (iota, r) in self.type_i.iter().zip(&self.r) {
            nu.extend(std::iter::repeat_n(level, iota - prev));
            level += r;
            prev = iota;
        }
        nu.extend(std::iter::repeat_n(level, self.n() - prev));
        nu
    }

    /// Column `j` of `α`, one-based.
    pub fn column(&self, j: usize) -> Vec<u64> {
        self.alpha.iter().map(|row| row[j - 1]).collect()
    }

    /// Draws a type with `Σ r <= max_weight` and a uniform `α` modulo `p^k`
    /// that is invertible modulo `p`.
    pub fn random(spec: &LocalRingSpec, max_weight: u32, rng: &mut impl Rng) -> Self {
        let n = spec.n();
        let modulus = spec.ring().modulus();
        let (type_i, r) = loop {
            let mask = if n > 1 { rng.gen_range(0..1u64 << (n - 1)) } else { 0 };
            let set = ParabolicIndexSet::from_mask(n, mask).expect("mask within degree");
            if set.len() as u32 > max_weight {
                continue;
            }
            let r: Vec<u32> = (0..set.len()).map(|_| rng.gen_range(1..=max_weight)).collect();
            if r.iter().sum::<u32>() <= max_weight {
                break (set, r);
            }
        };
        let alpha = loop {
            let a: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..modulus)).collect()).collect();
            if is_invertible_mod_p(&a, spec.p()) {
                break a;
            }
        };
        MaximalLatticeSample { alpha, type_i, r }
    }
}

/// `log_p |Z_p^{2n} : {g : g M(α^j) ≡ 0 mod p^{ν_j} for all j}|`.
///
/// The systems are brought to the common modulus `p^S`, `S = Σ r`, by
/// scaling block `j` by `p^{S - ν_j}`; the index is then read off the Smith
/// form over `Z/p^k`.
pub fn x_lambda_index(spec: &LocalRingSpec, sample: &MaximalLatticeSample) -> Result<u32> {
    let n = spec.n();
    if sample.n() != n {
        return Err(contract(format!("sample of size {} used with n = {n}", sample.n())));
    }
    let s = sample.weight();
    if spec.k() <= 2 * s {
        return Err(Error::Precision { needed: 2 * s + 1, available: spec.k() });
    }
    let ring = spec.ring();
    let nu = sample.nu();
    let mut stacked = vec![Vec::with_capacity(2 * n * n); 2 * n];
    for (j, &nu_j) in nu.iter().enumerate() {
        let column = sample.column(j + 1).into_iter().map(|x| x as i128);
        let m = commutator_m(spec, &ResidueVector::new(spec, column)?);
        let scale = ring.pow_p(s - nu_j);
        for (target, row) in stacked.iter_mut().zip(m) {
            target.extend(row.into_iter().map(|x| ring.mul(x, scale)));
        }
    }
    let valuations = smith_valuations(&stacked, ring);
    Ok(valuations.into_iter().map(|v| s - v.min(s)).sum())
}

/// `κ = e - max{⌈α^j⌉ : j > i}` over the last `n - i` columns.
pub fn kappa_of(spec: &LocalRingSpec, sample: &MaximalLatticeSample) -> Result<usize> {
    let n = sample.n();
    let mut best = 0;
    for j in sample.top() + 1..=n {
        let (_, ceil) = ceiling_alpha(&sample.column(j), spec.p(), spec.f())?;
        best = best.max(ceil);
    }
    Ok(spec.e() - best)
}

/// `2(n Σ r - κ f)`.
pub fn predicted_x_lambda_index(spec: &LocalRingSpec, sample: &MaximalLatticeSample) -> Result<u32> {
    let kappa = kappa_of(spec, sample)?;
    Ok(2 * (spec.n() as u32 * sample.weight() - (kappa * spec.f()) as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XLambdaMismatch {
    pub trial: usize,
    pub type_i: Vec<usize>,
    pub r: Vec<u32>,
    pub alpha: Vec<Vec<u64>>,
    pub kappa: usize,
    pub expected: u32,
    pub observed: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XLambdaReport {
    pub spec: LocalRingSpec,
    pub trials: usize,
    pub seed: u64,
    pub mismatches: Vec<XLambdaMismatch>,
}

impl XLambdaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares [`x_lambda_index`] with `2(n Σ r - κ f)` on seeded random samples.
pub fn verify_xlambda(spec: &LocalRingSpec, trials: usize, seed: u64) -> Result<XLambdaReport> {
    let needed = 2 * MAX_SAMPLE_WEIGHT + 1;
    let working = if spec.k() < needed { spec.with_precision(needed)? } else { spec.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for trial in 0..trials {
        let sample = MaximalLatticeSample::random(&working, MAX_SAMPLE_WEIGHT, &mut rng);
        let observed = x_lambda_index(&working, &sample)?;
        let expected = predicted_x_lambda_index(&working, &sample)?;
        if observed != expected {
            mismatches.push(XLambdaMismatch {
                trial,
                type_i: sample.type_i().iter().collect(),
                r: sample.r().to_vec(),
                alpha: sample.alpha().to_vec(),
                kappa: kappa_of(&working, &sample)?,
                expected,
                observed,
            });
        }
    }
    Ok(XLambdaReport { spec: spec.clone(), trials, seed, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_ring::make_ring_spec;

    fn sample(alpha: Vec<Vec<u64>>, members: &[usize], r: Vec<u32>) -> MaximalLatticeSample {
        let n = alpha.len();
        MaximalLatticeSample::new(alpha, ParabolicIndexSet::new(n, members.iter().copied()).unwrap(), r, 2).unwrap()
    }

    /// Counts `g ∈ (Z/p^S)^{2n}` solving the congruences directly.
    fn brute_force_index(spec: &LocalRingSpec, s: &MaximalLatticeSample) -> u32 {
        let n = spec.n();
        let p = spec.p();
        let big = p.pow(s.weight());
        let nu = s.nu();
        let ms: Vec<Vec<Vec<u64>>> = (1..=n)
            .map(|j| commutator_m(spec, &ResidueVector::new(spec, s.column(j).into_iter().map(|x| x as i128)).unwrap()))
            .collect();
        let total = big.pow(2 * n as u32);
        let mut solutions = 0u64;
        for code in 0..total {
            let mut c = code;
            let g: Vec<u64> = (0..2 * n)
                .map(|_| {
                    let x = c % big;
                    c /= big;
                    x
                })
                .collect();
            let ok = ms.iter().zip(&nu).all(|(m, &nu_j)| {
                let modulus = p.pow(nu_j);
                (0..2 * n).all(|col| (0..2 * n).map(|row| g[row] * m[row][col]).sum::<u64>() % modulus == 0)
            });
            if ok {
                solutions += 1;
            }
        }
        (total / solutions).ilog(p)
    }

    #[test]
    fn nu_sequence() {
        let s = sample(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[1, 2], vec![2, 1]);
        assert_eq!(s.nu(), vec![0, 2, 3]);
        assert_eq!(s.top(), 2);
        let e = sample(vec![vec![1]], &[], vec![]);
        assert_eq!(e.nu(), vec![0]);
    }

    #[test]
    fn ramified_quadratic_examples() {
        let spec = make_ring_spec(2, 2, 1, 4).unwrap();
        let id = sample(vec![vec![1, 0], vec![0, 1]], &[1], vec![1]);
        assert_eq!(x_lambda_index(&spec, &id).unwrap(), 4);
        assert_eq!(kappa_of(&spec, &id).unwrap(), 0);
        assert_eq!(brute_force_index(&spec, &id), 4);
        let swap = sample(vec![vec![0, 1], vec![1, 0]], &[1], vec![1]);
        assert_eq!(x_lambda_index(&spec, &swap).unwrap(), 2);
        assert_eq!(kappa_of(&spec, &swap).unwrap(), 1);
        assert_eq!(brute_force_index(&spec, &swap), 2);
    }

    #[test]
    fn degree_one() {
        let spec = make_ring_spec(3, 1, 1, 3).unwrap();
        let s = MaximalLatticeSample::new(vec![vec![2]], ParabolicIndexSet::empty(1).unwrap(), vec![], 3).unwrap();
        assert_eq!(x_lambda_index(&spec, &s).unwrap(), 0);
    }

    #[test]
    fn random_samples_match_brute_force() {
        let spec = make_ring_spec(2, 2, 1, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let s = MaximalLatticeSample::random(&spec, 2, &mut rng);
            assert_eq!(x_lambda_index(&spec, &s).unwrap(), brute_force_index(&spec, &s), "{s:?}");
        }
    }

    #[test]
    fn verification_reports() {
        let spec = make_ring_spec(2, 2, 1, 3).unwrap();
        let r = verify_xlambda(&spec, 100, 1).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(verify_xlambda(&spec, 0, 1).unwrap().mismatches.is_empty());
        let e1 = make_ring_spec(3, 1, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let s = MaximalLatticeSample::random(&e1, 3, &mut rng);
            assert_eq!(kappa_of(&e1, &s).unwrap(), 0);
            assert_eq!(x_lambda_index(&e1, &s).unwrap(), 2 * 3 * s.weight());
        }
    }

    #[test]
    fn precision_is_checked() {
        let spec = make_ring_spec(2, 2, 1, 2).unwrap();
        let id = sample(vec![vec![1, 0], vec![0, 1]], &[1], vec![1]);
        assert!(matches!(x_lambda_index(&spec, &id), Err(Error::Precision { .. })));
    }
}
