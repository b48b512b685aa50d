//! A concrete model of the coefficient ring `R` modulo `p^k`.
//!
//! `R` is realized as `U[π]/(π^e - pη)` where `U = Z_p[t]/(g)` is unramified
//! of degree `f`. The `Z_p`-basis is `d_{i+fj} = t^{i-1} π^j` for
//! `i ∈ [f]`, `j ∈ [e-1]_0`, so `d_1 = 1`. Structure constants `γ^{ij}_l`
//! are computed once at construction.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::residue::{is_invertible_mod_p, is_prime, ResidueRing};

/// Largest inertia degree for which irreducibles are found by trial division.
pub const MAX_INERTIA_DEGREE: usize = 8;

/// Cap on `p^f` for the exhaustive no-rational-points check.
pub const PFAFFIAN_POINT_CAP: u64 = 1 << 16;

/// Choice of the Eisenstein unit `η` in `π^e = pη`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Realization {
    /// `η = 1`.
    #[default]
    Standard,
    /// `η` = the least integer greater than 1 that is prime to `p`.
    AlternateUnit,
}

impl Realization {
    fn unit(self, p: u64) -> u64 {
        match self {
            Realization::Standard => 1,
            Realization::AlternateUnit => (2..).find(|u| u % p != 0).expect("some integer is prime to p"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct LocalRingSpecJson {
    p: u64,
    e: usize,
    f: usize,
    k: u32,
    unramified_poly: Vec<u64>,
    eisenstein_unit: u64,
}

/// The ring `R / p^k R` together with its structure constants.
///
/// `unramified_poly` holds the coefficients of the defining polynomial over
/// `F_p`, leading coefficient first. Its lift to `Z/p^k` is
/// `t^f - Σ_i r_i t^i`, where `r_i ∈ [0, p)` is the residue of `-g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LocalRingSpecJson", into = "LocalRingSpecJson")]
pub struct LocalRingSpec {
    ring: ResidueRing,
    e: usize,
    f: usize,
    unramified_poly: Vec<u64>,
    eisenstein_unit: u64,
    /// `t^f = Σ_{i<f} reduction[i] t^i`.
    reduction: Vec<u64>,
    /// `γ^{ij}_l` at `(i * n + j) * n + l`, zero-based.
    gamma: Vec<u64>,
}

impl From<LocalRingSpec> for LocalRingSpecJson {
    fn from(s: LocalRingSpec) -> Self {
        LocalRingSpecJson {
            p: s.p(),
            e: s.e,
            f: s.f,
            k: s.k(),
            unramified_poly: s.unramified_poly,
            eisenstein_unit: s.eisenstein_unit,
        }
    }
}

impl TryFrom<LocalRingSpecJson> for LocalRingSpec {
    type Error = Error;

    fn try_from(j: LocalRingSpecJson) -> Result<Self> {
        LocalRingSpec::from_parts(j.p, j.e, j.f, j.k, j.unramified_poly, j.eisenstein_unit)
    }
}

/// `R / p^k R` for the standard realization.
pub fn make_ring_spec(p: u64, e: usize, f: usize, k: u32) -> Result<LocalRingSpec> {
    make_ring_spec_realized(p, e, f, k, Realization::Standard)
}

pub fn make_ring_spec_realized(p: u64, e: usize, f: usize, k: u32, realization: Realization) -> Result<LocalRingSpec> {
    if !is_prime(p) {
        return Err(contract(format!("{p} is not prime")));
    }
    if f == 0 || f > MAX_INERTIA_DEGREE {
        return Err(contract(format!("inertia degree {f} outside [1, {MAX_INERTIA_DEGREE}]")));
    }
    let poly = least_irreducible(p, f);
    LocalRingSpec::from_parts(p, e, f, k, poly, realization.unit(p))
}

/// Polynomials over `F_p` are coefficient vectors, leading coefficient first.
fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // b is monic
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let c = r[0];
        if c != 0 {
            for (x, &y) in r.iter_mut().zip(b) {
                *x = (*x + p - c * y % p) % p;
            }
        }
        r.remove(0);
    }
    r
}

fn monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut code| {
        let mut coeffs = vec![0; deg + 1];
        coeffs[0] = 1;
        for slot in coeffs[1..].iter_mut().rev() {
            *slot = code % p;
            code /= p;
        }
        coeffs
    })
}

fn is_irreducible_mod_p(g: &[u64], p: u64) -> bool {
    let deg = g.len() - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|h| poly_rem_mod_p(g, &h, p).iter().any(|&c| c != 0)))
}

/// The lexicographically least monic irreducible of degree `f` over `F_p`.
fn least_irreducible(p: u64, f: usize) -> Vec<u64> {
    monic_polys(p, f).find(|g| is_irreducible_mod_p(g, p)).expect("irreducibles exist in every degree")
}

impl LocalRingSpec {
    /// Builds a spec from an explicit defining polynomial and unit.
    pub fn from_parts(p: u64, e: usize, f: usize, k: u32, unramified_poly: Vec<u64>, eisenstein_unit: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(contract(format!("{p} is not prime")));
        }
        if e == 0 || f == 0 || k == 0 {
            return Err(contract(format!("(e, f, k) = ({e}, {f}, {k}) needs positive entries")));
        }
        if f > MAX_INERTIA_DEGREE {
            return Err(contract(format!("inertia degree {f} exceeds {MAX_INERTIA_DEGREE}")));
        }
        if unramified_poly.len() != f + 1 || unramified_poly[0] != 1 || unramified_poly.iter().any(|&c| c >= p) {
            return Err(contract(format!("{unramified_poly:?} is not a monic degree-{f} polynomial over F_{p}")));
        }
        if !is_irreducible_mod_p(&unramified_poly, p) {
            return Err(contract(format!("{unramified_poly:?} is reducible over F_{p}")));
        }
        if eisenstein_unit % p == 0 {
            return Err(contract(format!("Eisenstein unit {eisenstein_unit} is divisible by {p}")));
        }
        let ring = ResidueRing::new(p, k)?;
        let reduction = (0..f).map(|i| (p - unramified_poly[f - i]) % p).collect();
        let mut spec = LocalRingSpec {
            ring,
            e,
            f,
            unramified_poly,
            eisenstein_unit,
            reduction,
            gamma: Vec::new(),
        };
        spec.gamma = spec.compute_gamma();
        Ok(spec)
    }

    /// The same ring at another precision.
    pub fn with_precision(&self, k: u32) -> Result<Self> {
        Self::from_parts(self.p(), self.e, self.f, k, self.unramified_poly.clone(), self.eisenstein_unit)
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
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

    pub fn k(&self) -> u32 {
        self.ring.k()
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn unramified_poly(&self) -> &[u64] {
        &self.unramified_poly
    }

    pub fn eisenstein_unit(&self) -> u64 {
        self.eisenstein_unit
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    /// `γ^{ij}_l` with one-based indices.
    pub fn gamma(&self, i: usize, j: usize, l: usize) -> u64 {
        let n = self.n();
        assert!((1..=n).contains(&i) && (1..=n).contains(&j) && (1..=n).contains(&l), "index outside [{n}]");
        self.gamma[((i - 1) * n + (j - 1)) * n + (l - 1)]
    }

    /// Product of two elements of `U` (length-`f` coefficient vectors in `t`).
    fn mul_unramified(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = &self.ring;
        let f = self.f;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = r.add(prod[i + j], r.mul(x, y));
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &red) in self.reduction.iter().enumerate() {
                prod[d - f + i] = r.add(prod[d - f + i], r.mul(c, red));
            }
        }
        prod.truncate(f);
        prod
    }

    /// Product in `R / p^k R` of coordinate vectors with respect to `(d_1, ..., d_n)`.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (e, f, n) = (self.e, self.f, self.n());
        assert!(a.len() == n && b.len() == n, "ring elements have {n} coordinates");
        let r = &self.ring;
        let p_eta = r.mul(self.p() % r.modulus(), self.eisenstein_unit);
        let mut out = vec![0u64; n];
        for j1 in 0..e {
            let u1 = &a[j1 * f..(j1 + 1) * f];
            if u1.iter().all(|&x| x == 0) {
                continue;
            }
            for j2 in 0..e {
                let u2 = &b[j2 * f..(j2 + 1) * f];
                if u2.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut prod = self.mul_unramified(u1, u2);
                let mut j = j1 + j2;
                if j >= e {
                    j -= e;
                    for x in prod.iter_mut() {
                        *x = r.mul(*x, p_eta);
                    }
                }
                for (i, x) in prod.into_iter().enumerate() {
                    out[j * f + i] = r.add(out[j * f + i], x);
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.n()];
        v[i] = 1;
        v
    }

    fn compute_gamma(&self) -> Vec<u64> {
        let n = self.n();
        let mut gamma = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                gamma.extend(self.mul(&self.basis_vector(i), &self.basis_vector(j)));
            }
        }
        gamma
    }
}

/// A length-`n` vector over `Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueVector {
    entries: Vec<u64>,
}

impl ResidueVector {
    /// Reduces the entries modulo `p^k` of `spec`.
    pub fn new(spec: &LocalRingSpec, entries: impl IntoIterator<Item = i128>) -> Result<Self> {
        let entries: Vec<u64> = entries.into_iter().map(|x| spec.ring().reduce(x)).collect();
        if entries.len() != spec.n() {
            return Err(contract(format!("vector of length {} used with n = {}", entries.len(), spec.n())));
        }
        Ok(ResidueVector { entries })
    }

    pub fn zero(spec: &LocalRingSpec) -> Self {
        ResidueVector { entries: vec![0; spec.n()] }
    }

    /// The standard basis vector `ε_i`, one-based.
    pub fn unit_vector(spec: &LocalRingSpec, i: usize) -> Self {
        let mut entries = vec![0; spec.n()];
        entries[i - 1] = 1;
        ResidueVector { entries }
    }

    /// Uniformly random vector that is nonzero modulo `p`.
    pub fn random_primitive(spec: &LocalRingSpec, rng: &mut impl Rng) -> Self {
        let m = spec.ring().modulus();
        loop {
            let entries: Vec<u64> = (0..spec.n()).map(|_| rng.gen_range(0..m)).collect();
            if entries.iter().any(|&x| x % spec.p() != 0) {
                return ResidueVector { entries };
            }
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `B(v)_{ij} = Σ_l γ^{ij}_l v_l`.
pub fn commutator_b(spec: &LocalRingSpec, v: &ResidueVector) -> Vec<Vec<u64>> {
    let n = spec.n();
    let r = spec.ring();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = (i * n + j) * n;
                    v.entries.iter().enumerate().fold(0, |acc, (l, &x)| r.add(acc, r.mul(spec.gamma[base + l], x)))
                })
                .collect()
        })
        .collect()
}

/// `M(v) = [[0, B(v)], [-B(v), 0]]`.
pub fn commutator_m(spec: &LocalRingSpec, v: &ResidueVector) -> Vec<Vec<u64>> {
    let n = spec.n();
    let r = spec.ring();
    let b = commutator_b(spec, v);
    let mut m = vec![vec![0u64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            m[i][n + j] = b[i][j];
            m[n + i][j] = r.neg(b[i][j]);
        }
    }
    m
}

/// The `f × f` block `B^{(μ)}(v)`, `μ ∈ [2e-2]_0`.
///
/// Blocks with `μ >= e` occur in `B(v)` multiplied by `p`; here the factor
/// `p` is removed symbolically, so they are exact modulo `p^k`.
pub fn block(spec: &LocalRingSpec, v: &ResidueVector, mu: usize) -> Result<Vec<Vec<u64>>> {
    let (e, f) = (spec.e(), spec.f());
    if mu > 2 * e - 2 {
        return Err(contract(format!("block index {mu} outside [0, {}]", 2 * e - 2)));
    }
    let r = spec.ring();
    let n = spec.n();
    let (shift, scale) = if mu < e { (mu, 1) } else { (mu - e, spec.eisenstein_unit()) };
    Ok((0..f)
        .map(|a| {
            (0..f)
                .map(|b| {
                    let base = (a * n + b) * n;
                    let s = (0..f).fold(0, |acc, kk| r.add(acc, r.mul(spec.gamma[base + kk], v.entries[kk + f * shift])));
                    r.mul(s, scale)
                })
                .collect()
        })
        .collect())
}

/// Checks that the blocks reassemble to `B(v)`: block `(r, c)` equals
/// `B^{(r+c-2)}(v)`, multiplied by `p` when `r + c - 2 >= e`.
pub fn blocks_reassemble(spec: &LocalRingSpec, v: &ResidueVector) -> Result<bool> {
    let (e, f) = (spec.e(), spec.f());
    let r = spec.ring();
    let b = commutator_b(spec, v);
    let blocks: Vec<Vec<Vec<u64>>> = (0..=2 * e - 2).map(|mu| block(spec, v, mu)).collect::<Result<_>>()?;
    let p = spec.p() % r.modulus();
    for rb in 0..e {
        for cb in 0..e {
            let mu = rb + cb;
            for a in 0..f {
                for c in 0..f {
                    let mut expected = blocks[mu][a][c];
                    if mu >= e {
                        expected = r.mul(expected, p);
                    }
                    if b[rb * f + a][cb * f + c] != expected {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `(μ(v), ⌈v⌉)`: the largest index of a unit entry and its block `⌈μ/f⌉`.
pub fn ceiling_alpha(v: &[u64], p: u64, f: usize) -> Result<(usize, usize)> {
    let mu = v
        .iter()
        .rposition(|&x| x % p != 0)
        .ok_or_else(|| Error::Domain("ceiling undefined for a vector divisible by p".into()))?
        + 1;
    Ok((mu, mu.div_ceil(f)))
}

/// Individual assertions of the unit lemma for one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitLemmaReport {
    pub ceiling: usize,
    /// `B^{(m-1)}(v)` invertible mod `p`.
    pub leading_block_unit: bool,
    /// `B^{(μ)}(v) ≡ 0` for `μ ∈ [m, e-1]`.
    pub upper_blocks_vanish: bool,
    /// `B^{(m+e-1)}(v)` invertible mod `p` (vacuous when `m = e`).
    pub wrapped_block_unit: bool,
    /// `B^{(μ)}(v) ≡ 0` for `μ ∈ [m+e, 2e-2]`.
    pub wrapped_blocks_vanish: bool,
    /// `B(v) J_m` is invertible mod `p`.
    pub scaled_unimodular: bool,
}

impl UnitLemmaReport {
    pub fn holds(&self) -> bool {
        self.leading_block_unit
            && self.upper_blocks_vanish
            && self.wrapped_block_unit
            && self.wrapped_blocks_vanish
            && self.scaled_unimodular
    }
}

fn vanishes_mod_p(m: &[Vec<u64>], p: u64) -> bool {
    m.iter().flatten().all(|&x| x % p == 0)
}

pub fn unit_lemma_report(spec: &LocalRingSpec, v: &ResidueVector) -> Result<UnitLemmaReport> {
    if spec.k() < 2 {
        return Err(Error::Precision { needed: 2, available: spec.k() });
    }
    let (e, f, p) = (spec.e(), spec.f(), spec.p());
    let (_, m) = ceiling_alpha(v.entries(), p, f)?;
    let leading_block_unit = is_invertible_mod_p(&block(spec, v, m - 1)?, p);
    let upper_blocks_vanish =
        (m..e).map(|mu| block(spec, v, mu)).collect::<Result<Vec<_>>>()?.iter().all(|b| vanishes_mod_p(b, p));
    let wrapped_block_unit = m + e - 1 > 2 * e - 2 || is_invertible_mod_p(&block(spec, v, m + e - 1)?, p);
    let wrapped_blocks_vanish = (m + e..=2 * e - 2)
        .map(|mu| block(spec, v, mu))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|b| vanishes_mod_p(b, p));

    // B(v) J_m up to a column permutation: divide the last (e-m)f columns by p
    let b = commutator_b(spec, v);
    let split = m * f;
    let mut scaled_unimodular = true;
    let mut scaled = b.clone();
    'outer: for row in scaled.iter_mut() {
        for x in row[split..].iter_mut() {
            if *x % p != 0 {
                scaled_unimodular = false;
                break 'outer;
            }
            *x /= p;
        }
    }
    scaled_unimodular = scaled_unimodular && is_invertible_mod_p(&scaled, p);
    Ok(UnitLemmaReport {
        ceiling: m,
        leading_block_unit,
        upper_blocks_vanish,
        wrapped_block_unit,
        wrapped_blocks_vanish,
        scaled_unimodular,
    })
}

/// Whether all assertions of the unit lemma hold for `v`.
pub fn check_unit_lemma(spec: &LocalRingSpec, v: &ResidueVector) -> Result<bool> {
    Ok(unit_lemma_report(spec, v)?.holds())
}

/// For `e = 1`, checks `det B(v) ≢ 0 mod p` for every nonzero `v ∈ F_p^n`.
pub fn check_pfaffian_no_points(spec: &LocalRingSpec) -> Result<bool> {
    if spec.e() != 1 {
        return Err(contract("the no-rational-points check needs e = 1"));
    }
    let p = spec.p();
    let total = p
        .checked_pow(spec.f() as u32)
        .filter(|&t| t <= PFAFFIAN_POINT_CAP)
        .ok_or(Error::Capacity { what: "points of F_p^f", requested: u128::MAX, limit: PFAFFIAN_POINT_CAP as u128 })?;
    let n = spec.n();
    for code in 1..total {
        let mut c = code;
        let entries: Vec<u64> = (0..n)
            .map(|_| {
                let x = c % p;
                c /= p;
                x
            })
            .collect();
        if !is_invertible_mod_p(&commutator_b(spec, &ResidueVector { entries }), p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symmetry `γ^{ij} = γ^{ji}` and `γ^{1j}_l = δ_{jl}`.
pub fn check_commutativity_and_identity(spec: &LocalRingSpec) -> bool {
    let n = spec.n();
    (1..=n).all(|i| (1..=n).all(|j| (1..=n).all(|l| spec.gamma(i, j, l) == spec.gamma(j, i, l))))
        && (1..=n).all(|j| (1..=n).all(|l| spec.gamma(1, j, l) == u64::from(j == l)))
}

/// The block structure of the structure constants: writing
/// `i = i_1 f + i_0`, `j = j_1 f + j_0` with `i_0, j_0 ∈ [f]` and
/// `i_1 + j_1 = l_1 e + l_0` with `l_0 < e`,
/// `γ^{ij}_{l_0 f + k} = (pη)^{l_1} γ^{i_0 j_0}_k` for `k ∈ [(e - l_0) f]`
/// and `γ^{ij}_k ∈ p^{l_1+1} Z_p` for `k ∈ [l_0 f]`.
pub fn check_structure_constant_blocks(spec: &LocalRingSpec) -> bool {
    let (e, f, n) = (spec.e(), spec.f(), spec.n());
    let r = spec.ring();
    let p_eta = r.mul(spec.p() % r.modulus(), spec.eisenstein_unit());
    let split = |i: usize| ((i - 1) / f, (i - 1) % f + 1);
    for i in 1..=n {
        let (i1, i0) = split(i);
        for j in 1..=n {
            let (j1, j0) = split(j);
            let (l1, l0) = ((i1 + j1) / e, (i1 + j1) % e);
            let factor = if l1 == 1 { p_eta } else { 1 };
            for kk in 1..=(e - l0) * f {
                let base = if kk <= f { spec.gamma(i0, j0, kk) } else { 0 };
                if spec.gamma(i, j, l0 * f + kk) != r.mul(factor, base) {
                    return false;
                }
            }
            let low_modulus = r.pow_p(l1 as u32 + 1);
            for kk in 1..=l0 * f {
                let g = spec.gamma(i, j, kk);
                if low_modulus != 0 && g % low_modulus != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `(d_i d_j) d_l = d_i (d_j d_l)` for all basis triples.
pub fn check_associativity(spec: &LocalRingSpec) -> bool {
    let n = spec.n();
    let basis: Vec<Vec<u64>> = (0..n).map(|i| spec.basis_vector(i)).collect();
    let products: Vec<Vec<Vec<u64>>> =
        (0..n).map(|i| (0..n).map(|j| spec.mul(&basis[i], &basis[j])).collect()).collect();
    (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|l| spec.mul(&products[i][j], &basis[l]) == spec.mul(&basis[i], &products[j][l])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vector(spec: &LocalRingSpec, entries: &[i128]) -> ResidueVector {
        ResidueVector::new(spec, entries.iter().copied()).unwrap()
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 1), vec![1, 0]);
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(5, 2), vec![1, 0, 2]);
        assert!(!is_irreducible_mod_p(&[1, 0, 1], 2));
    }

    #[test]
    fn ramified_quadratic_constants() {
        let s = make_ring_spec(2, 2, 1, 3).unwrap();
        assert_eq!((s.gamma(2, 2, 1), s.gamma(2, 2, 2)), (2, 0));
        assert_eq!((s.gamma(1, 2, 1), s.gamma(1, 2, 2)), (0, 1));
    }

    #[test]
    fn unramified_quadratic_constants() {
        let s = make_ring_spec(2, 1, 2, 3).unwrap();
        assert_eq!(s.unramified_poly(), &[1, 1, 1]);
        assert_eq!((s.gamma(2, 2, 1), s.gamma(2, 2, 2)), (1, 1));
    }

    #[test]
    fn identity_row_and_symmetry() {
        for (p, e, f) in [(2, 2, 2), (3, 3, 1), (2, 1, 3), (5, 2, 2)] {
            let s = make_ring_spec(p, e, f, 4).unwrap();
            assert!(check_commutativity_and_identity(&s));
            assert!(check_associativity(&s));
            assert!(check_structure_constant_blocks(&s));
            let alt = make_ring_spec_realized(p, e, f, 4, Realization::AlternateUnit).unwrap();
            assert!(check_structure_constant_blocks(&alt));
        }
    }

    #[test]
    fn alternate_units() {
        assert_eq!(Realization::AlternateUnit.unit(2), 3);
        assert_eq!(Realization::AlternateUnit.unit(3), 2);
        assert_eq!(Realization::AlternateUnit.unit(5), 2);
    }

    #[test]
    fn commutator_examples() {
        let s = make_ring_spec(2, 2, 1, 3).unwrap();
        assert_eq!(commutator_b(&s, &ResidueVector::zero(&s)), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(commutator_b(&s, &vector(&s, &[1, 0])), vec![vec![1, 0], vec![0, 2]]);
        assert_eq!(commutator_b(&s, &vector(&s, &[0, 1])), vec![vec![0, 1], vec![1, 0]]);
        let m = commutator_m(&s, &vector(&s, &[1, 0]));
        assert_eq!(m[0][2], 1);
        assert_eq!(m[2][0], 7);
        assert_eq!(m[3][1], 6);
    }

    #[test]
    fn block_examples() {
        let s = make_ring_spec(2, 2, 1, 3).unwrap();
        let v = vector(&s, &[1, 0]);
        assert_eq!(block(&s, &v, 0).unwrap(), vec![vec![1]]);
        assert_eq!(block(&s, &v, 2).unwrap(), vec![vec![1]]);
        assert!(block(&s, &v, 3).is_err());
        assert!(blocks_reassemble(&s, &v).unwrap());
        let e1 = make_ring_spec(3, 1, 2, 3).unwrap();
        let w = vector(&e1, &[2, 1]);
        assert_eq!(block(&e1, &w, 0).unwrap(), commutator_b(&e1, &w));
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceiling_alpha(&[1, 0, 0], 2, 1).unwrap(), (1, 1));
        assert_eq!(ceiling_alpha(&[0, 0, 0, 1], 2, 2).unwrap(), (4, 2));
        assert_eq!(ceiling_alpha(&[0, 3, 1, 0, 3, 0], 3, 2).unwrap(), (3, 2));
        assert!(matches!(ceiling_alpha(&[2, 4], 2, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn unit_lemma_examples() {
        let s = make_ring_spec(2, 2, 1, 3).unwrap();
        let r = unit_lemma_report(&s, &vector(&s, &[1, 0])).unwrap();
        assert_eq!(r.ceiling, 1);
        assert!(r.holds());
        assert!(check_unit_lemma(&s, &vector(&s, &[0, 1])).unwrap());
        let low = make_ring_spec(2, 2, 1, 1).unwrap();
        assert!(matches!(check_unit_lemma(&low, &vector(&low, &[1, 0])), Err(Error::Precision { .. })));
    }

    #[test]
    fn unit_lemma_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, e, f) in [(2, 3, 1), (3, 2, 2), (2, 2, 3)] {
            let s = make_ring_spec(p, e, f, 3).unwrap();
            for _ in 0..50 {
                let v = ResidueVector::random_primitive(&s, &mut rng);
                assert!(check_unit_lemma(&s, &v).unwrap(), "{v:?}");
                assert!(blocks_reassemble(&s, &v).unwrap());
            }
        }
    }

    #[test]
    fn no_rational_points() {
        for (p, f) in [(2, 1), (2, 2), (3, 3), (5, 2)] {
            assert!(check_pfaffian_no_points(&make_ring_spec(p, 1, f, 2).unwrap()).unwrap());
        }
        assert!(check_pfaffian_no_points(&make_ring_spec(2, 2, 1, 2).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = make_ring_spec_realized(3, 2, 2, 4, Realization::AlternateUnit).unwrap();
        let v = s.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"e":2,"eisenstein_unit":2,"f":2,"k":4,"p":3,"unramified_poly":[1,0,1]}"#
        );
        let back: LocalRingSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::json!({"p":2,"e":1,"f":2,"k":2,"unramified_poly":[1,0,1],"eisenstein_unit":1});
        assert!(serde_json::from_value::<LocalRingSpec>(bad).is_err());
    }

    #[test]
    fn contract_violations() {
        assert!(make_ring_spec(4, 1, 1, 2).is_err());
        assert!(make_ring_spec(2, 0, 1, 2).is_err());
        assert!(make_ring_spec(2, 1, 1, 0).is_err());
    }
}
