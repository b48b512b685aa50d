//! Sublattices of `Z^d` of `p`-power index via Hermite normal forms.

use crate::error::{contract, Error, Result};

/// Default cap on the number of bases an enumeration may produce.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A row-style Hermite basis: upper triangular, diagonal `p^{a_c}`, and
/// entries above each pivot reduced modulo that pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    p: u64,
    rows: Vec<Vec<u64>>,
    exponents: Vec<u32>,
}

impl LatticeBasis {
    /// Validates the Hermite shape.
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let d = rows.len();
        let mut exponents = Vec::with_capacity(d);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(contract(format!("row {r} has length {} in dimension {d}", row.len())));
            }
            if row[..r].iter().any(|&x| x != 0) {
                return Err(contract(format!("row {r} is nonzero below the diagonal")));
            }
            let mut a = 0;
            let mut x = row[r];
            while x > 1 && x % p == 0 {
                x /= p;
                a += 1;
            }
            if x != 1 {
                return Err(contract(format!("pivot {} is not a power of {p}", row[r])));
            }
            exponents.push(a);
        }
        for c in 0..d {
            if (0..c).any(|r| rows[r][c] >= rows[c][c]) {
                return Err(contract(format!("column {c} is not reduced modulo its pivot")));
            }
        }
        Ok(LatticeBasis { p, rows, exponents })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivot_exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn index_exponent(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Membership of an integer vector, by back-substitution modulo `p^K`
    /// with `K` the index exponent (the lattice contains `p^K Z^d`).
    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim(), "vector dimension mismatch");
        let modulus = self.p.pow(self.index_exponent()) as u128;
        let mut w: Vec<u128> = v.iter().map(|&x| x as u128 % modulus).collect();
        for (c, row) in self.rows.iter().enumerate() {
            let pivot = row[c] as u128;
            if w[c] % pivot != 0 {
                return false;
            }
            let q = w[c] / pivot;
            if q == 0 {
                continue;
            }
            for (x, &y) in w[c..].iter_mut().zip(&row[c..]) {
                *x = (*x + modulus - q * y as u128 % modulus) % modulus;
            }
        }
        true
    }
}

/// Number of Hermite bases of index `p^k` in `Z^d`:
/// `Σ_{a_1+...+a_d = k} ∏_c p^{(c-1) a_c}`.
pub fn hnf_count(d: usize, k: u32, p: u64) -> u128 {
    // counts[j] = weighted compositions of j over the columns so far
    let mut counts = vec![0u128; k as usize + 1];
    counts[0] = 1;
    for c in 0..d {
        let weight = (p as u128).pow(c as u32);
        let mut next = vec![0u128; k as usize + 1];
        for (j, &base) in counts.iter().enumerate() {
            if base == 0 {
                continue;
            }
            let mut w = 1u128;
            for a in 0..=k as usize - j {
                next[j + a] = next[j + a].saturating_add(base.saturating_mul(w));
                w = w.saturating_mul(weight);
            }
        }
        counts = next;
    }
    counts[k as usize]
}

/// Every Hermite basis of index exactly `p^k`, each once, ordered by pivot
/// exponents (lexicographically) and then by the free entries.
pub fn enumerate_hnf(d: usize, k: u32, p: u64) -> Result<HnfIter> {
    enumerate_hnf_with_budget(d, k, p, DEFAULT_BUDGET)
}

pub fn enumerate_hnf_with_budget(d: usize, k: u32, p: u64, budget: u128) -> Result<HnfIter> {
    if d == 0 || p < 2 {
        return Err(contract(format!("cannot enumerate lattices with d = {d}, p = {p}")));
    }
    if p.checked_pow(k).is_none_or(|m| m > u64::MAX >> 8) {
        return Err(contract(format!("{p}^{k} is too large for enumeration")));
    }
    let total = hnf_count(d, k, p);
    if total > budget {
        return Err(Error::Capacity { what: "Hermite bases", requested: total, limit: budget });
    }
    Ok(HnfIter::new(d, k, p))
}

/// Stream of Hermite bases; see [`enumerate_hnf`].
#[derive(Clone, Debug)]
pub struct HnfIter {
    p: u64,
    d: usize,
    k: u32,
    exponents: Option<Vec<u32>>,
    /// Positions `(r, c)` with `r < c` of the free entries and their radix.
    slots: Vec<(usize, usize, u64)>,
    current: Vec<Vec<u64>>,
    fresh: bool,
}

impl HnfIter {
    fn new(d: usize, k: u32, p: u64) -> Self {
        let mut exponents = vec![0; d];
        exponents[0] = k;
        let mut it = HnfIter { p, d, k, exponents: Some(exponents), slots: Vec::new(), current: Vec::new(), fresh: true };
        it.load_shape();
        it
    }

    fn load_shape(&mut self) {
        let Some(exps) = &self.exponents else { return };
        let d = self.d;
        self.current = vec![vec![0; d]; d];
        self.slots.clear();
        for c in 0..d {
            let pivot = self.p.pow(exps[c]);
            self.current[c][c] = pivot;
            if pivot > 1 {
                self.slots.extend((0..c).map(|r| (r, c, pivot)));
            }
        }
        self.fresh = true;
    }

    /// Next composition of `k` into `d` parts in lexicographically
    /// decreasing order.
    fn advance_shape(&mut self) {
        let Some(exps) = self.exponents.as_mut() else { return };
        let d = self.d;
        // find rightmost position (excluding last) with a positive part
        let Some(pos) = (0..d.saturating_sub(1)).rev().find(|&i| exps[i] > 0) else {
            self.exponents = None;
            return;
        };
        exps[pos] -= 1;
        let rest: u32 = exps[pos + 1..].iter().sum::<u32>() + 1;
        for x in exps[pos + 1..].iter_mut() {
            *x = 0;
        }
        exps[pos + 1] = rest;
        debug_assert_eq!(exps.iter().sum::<u32>(), self.k);
        self.load_shape();
    }

    fn advance_entries(&mut self) -> bool {
        for &(r, c, radix) in &self.slots {
            let x = &mut self.current[r][c];
            *x += 1;
            if *x < radix {
                return true;
            }
            *x = 0;
        }
        false
    }
}

impl Iterator for HnfIter {
    type Item = LatticeBasis;

    fn next(&mut self) -> Option<LatticeBasis> {
        loop {
            let exps = self.exponents.as_ref()?;
            if self.fresh {
                self.fresh = false;
                return Some(LatticeBasis { p: self.p, rows: self.current.clone(), exponents: exps.clone() });
            }
            if self.advance_entries() {
                let exps = self.exponents.as_ref()?.clone();
                return Some(LatticeBasis { p: self.p, rows: self.current.clone(), exponents: exps });
            }
            self.advance_shape();
        }
    }
}
