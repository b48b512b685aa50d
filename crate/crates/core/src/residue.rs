//! Arithmetic in `Z/p^k` and the few linear-algebra routines the ring and
//! oracle modules need: rank over `F_p` and Smith normal form valuations.

use crate::error::{contract, Result};

/// The residue ring `Z/p^k`, with elements as canonical `u64` in `[0, p^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    k: u32,
    modulus: u64,
}

impl ResidueRing {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 2 {
            return Err(contract(format!("{p} is not a prime")));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|&m| m <= u64::MAX >> 2)
            .ok_or_else(|| contract(format!("{p}^{k} does not fit the residue representation")))?;
        Ok(ResidueRing { p, k, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// p-adic valuation of a residue, with `v(0) = k`.
    pub fn valuation(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    /// Inverse of a unit; `None` if `a` is divisible by `p`.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Some(self.reduce(old_s))
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        if e >= self.k {
            0
        } else {
            self.p.pow(e)
        }
    }
}

/// Rank of an integer matrix reduced modulo a prime `p`.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let f = ResidueRing::new(p, 1).expect("prime modulus");
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inverse(m[rank][col]).expect("nonzero mod p");
        for c in col..ncols {
            m[rank][c] = f.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..ncols {
                    let t = f.mul(factor, m[rank][c]);
                    m[r][c] = f.sub(m[r][c], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Square matrix invertible modulo `p`.
pub fn is_invertible_mod_p(rows: &[Vec<u64>], p: u64) -> bool {
    rows.iter().all(|r| r.len() == rows.len()) && rank_mod_p(rows, p) == rows.len()
}

/// Valuations of the Smith normal form diagonal of a matrix over `Z/p^k`,
/// in nondecreasing order, one per row of the shorter side. Zero entries
/// report valuation `k`.
///
/// Pivoting picks the entry of least valuation, ties broken row-major.
pub fn smith_valuations(matrix: &[Vec<u64>], ring: &ResidueRing) -> Vec<u32> {
    let mut m: Vec<Vec<u64>> = matrix.iter().map(|r| r.iter().map(|&x| x % ring.modulus()).collect()).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let size = nrows.min(ncols);
    let mut out = Vec::with_capacity(size);
    for t in 0..size {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(t) {
            for (c, &x) in row.iter().enumerate().skip(t) {
                if x == 0 {
                    continue;
                }
                let v = ring.valuation(x);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((v, r, c)) = best else {
            out.extend(std::iter::repeat_n(ring.k(), size - t));
            break;
        };
        m.swap(t, r);
        for row in m.iter_mut() {
            row.swap(t, c);
        }
        // normalize pivot to p^v
        let unit = m[t][t] / ring.p().pow(v);
        let inv = ring.inverse(unit % ring.modulus()).expect("pivot cofactor is a unit");
        for x in m[t].iter_mut() {
            *x = ring.mul(*x, inv);
        }
        let pv = ring.p().pow(v);
        for r2 in t + 1..nrows {
            let x = m[r2][t];
            if x != 0 {
                let q = x / pv;
                for c2 in t..ncols {
                    let s = ring.mul(q, m[t][c2]);
                    m[r2][c2] = ring.sub(m[r2][c2], s);
                }
            }
        }
        for c2 in t + 1..ncols {
            let x = m[t][c2];
            if x != 0 {
                let q = x / pv;
                for row in m.iter_mut().skip(t) {
                    let s = ring.mul(q, row[t]);
                    row[c2] = ring.sub(row[c2], s);
                }
            }
        }
        out.push(v);
    }
    out
}

/// Whether `p` is prime, by trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_basics() {
        let r = ResidueRing::new(3, 4).unwrap();
        assert_eq!(r.modulus(), 81);
        assert_eq!(r.reduce(-1), 80);
        assert_eq!(r.valuation(18), 2);
        assert_eq!(r.valuation(0), 4);
        let inv = r.inverse(5).unwrap();
        assert_eq!(r.mul(inv, 5), 1);
        assert!(r.inverse(6).is_none());
    }

    #[test]
    fn rank_over_fp() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, 2]], 2), 2);
        assert!(is_invertible_mod_p(&[vec![0, 1], vec![1, 0]], 2));
        assert!(!is_invertible_mod_p(&[vec![2, 0], vec![0, 1]], 2));
    }

    #[test]
    fn smith_form() {
        let r = ResidueRing::new(2, 6).unwrap();
        // diag(2, 12) ~ diag(2, 4) over Z_2
        assert_eq!(smith_valuations(&[vec![2, 0], vec![0, 12]], &r), vec![1, 2]);
        // [[2,4],[6,8]] has det -8 and gcd 2: valuations 1, 2
        assert_eq!(smith_valuations(&[vec![2, 4], vec![6, 8]], &r), vec![1, 2]);
        assert_eq!(smith_valuations(&[vec![0, 0], vec![0, 0]], &r), vec![6, 6]);
        let r3 = ResidueRing::new(3, 5).unwrap();
        assert_eq!(smith_valuations(&[vec![9, 3, 0]], &r3), vec![1]);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
