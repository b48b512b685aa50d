//! Subspaces of `F_p^n`: brute-force enumeration, Schubert cell tallies and
//! the block filtration statistic `ψ`.

use std::collections::HashSet;

use super::hnf::DEFAULT_BUDGET;
use crate::coxeter::{descent_mask, enumerate_permutations, last_letter_length, length};
use crate::error::{contract, Error, Result};

/// Cap on `p^n` for closure-based subspace enumeration.
pub const MAX_AMBIENT_POINTS: u64 = 1024;

/// `F_p^n` with vectors encoded as base-`p` integers, coordinate 1 lowest.
#[derive(Clone, Copy, Debug)]
struct Ambient {
    p: u64,
    n: usize,
}

impl Ambient {
    fn decode(&self, mut x: u64) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn combine(&self, c: u64, x: u64, y: u64) -> u64 {
        let (a, b) = (self.decode(x), self.decode(y));
        self.encode(&a.iter().zip(&b).map(|(&s, &t)| (c * s + t) % self.p).collect::<Vec<_>>())
    }
}

/// Every subspace of `F_p^n`, grouped by dimension, each given by the sorted
/// list of its elements.
pub fn all_subspaces(n: usize, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let size = p
        .checked_pow(n as u32)
        .filter(|&s| s <= MAX_AMBIENT_POINTS)
        .ok_or(Error::Capacity { what: "points of F_p^n", requested: u128::MAX, limit: MAX_AMBIENT_POINTS as u128 })?;
    let amb = Ambient { p, n };
    let size_us = size as usize;
    let add: Vec<u16> =
        (0..size).flat_map(|x| (0..size).map(move |y| amb.combine(1, x, y) as u16)).collect();
    let multiples: Vec<Vec<u64>> = (0..size).map(|v| (0..p).map(|c| amb.combine(c, v, 0)).collect()).collect();
    let mut levels: Vec<Vec<Vec<u64>>> = vec![vec![vec![0]]];
    for _ in 0..n {
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        for w in levels.last().expect("nonempty") {
            let mut member = vec![false; size_us];
            for &x in w {
                member[x as usize] = true;
            }
            for v in 0..size {
                if member[v as usize] {
                    continue;
                }
                let mut span: Vec<u64> = w
                    .iter()
                    .flat_map(|&x| multiples[v as usize].iter().map(move |&cv| (x, cv)))
                    .map(|(x, cv)| add[x as usize * size_us + cv as usize] as u64)
                    .collect();
                span.sort_unstable();
                next.insert(span);
            }
        }
        let mut level: Vec<Vec<u64>> = next.into_iter().collect();
        level.sort_unstable();
        levels.push(level);
    }
    Ok(levels)
}

/// `min{d : W ⊆ ⟨ε_1, ..., ε_{fd}⟩}` for a subspace given by its elements.
pub fn psi_of_elements(elements: &[u64], n: usize, p: u64, f: usize) -> usize {
    let amb = Ambient { p, n };
    let top = elements
        .iter()
        .map(|&x| amb.decode(x).iter().rposition(|&d| d != 0).map_or(0, |i| i + 1))
        .max()
        .unwrap_or(0);
    top.div_ceil(f)
}

/// `Σ_{Des(w) ⊆ {i}} p^{i(n-i) - ℓ(w)}`, the Schubert cell count of
/// `Gr(n, n-i; F_p)`.
pub fn grassmannian_cell_count(n: usize, i: usize, p: u64) -> Result<u128> {
    Ok(psi_cell_tally(n, i, n.max(1), p)?.iter().sum())
}

fn check_psi_args(n: usize, i: usize, f: usize) -> Result<usize> {
    if n == 0 || i >= n || f == 0 || n % f != 0 {
        return Err(contract(format!("ψ tally needs i < n and f | n, got n = {n}, i = {i}, f = {f}")));
    }
    Ok(n / f)
}

/// The Schubert side of the `ψ` tally: entry `λ - 1` is
/// `Σ p^{i(n-i) - ℓ(w)}` over `w` with `Des(w) ⊆ {i}` and
/// `⌊(n - w(n))/f⌋ = e - λ`.
pub fn psi_cell_tally(n: usize, i: usize, f: usize, p: u64) -> Result<Vec<u128>> {
    let e = check_psi_args(n, i, f)?;
    let allowed = if i == 0 { 0 } else { 1u64 << (i - 1) };
    let dim = (i * (n - i)) as u32;
    let mut tally = vec![0u128; e];
    for w in enumerate_permutations(n)? {
        if descent_mask(&w) & !allowed != 0 {
            continue;
        }
        let lambda = e - last_letter_length(&w) / f;
        tally[lambda - 1] += (p as u128).pow(dim - length(&w) as u32);
    }
    Ok(tally)
}

/// Tallies `ψ(W)` over all `(n-i)`-dimensional `W ≤ F_p^n`, walking
/// reduced column-echelon representatives: column `c` has a 1 in pivot row
/// `q_c`, zeros below it and in the other pivot rows, free entries elsewhere.
pub fn count_subspaces_by_psi(n: usize, i: usize, f: usize, p: u64) -> Result<Vec<u128>> {
    count_subspaces_by_psi_with_budget(n, i, f, p, DEFAULT_BUDGET)
}

pub fn count_subspaces_by_psi_with_budget(n: usize, i: usize, f: usize, p: u64, budget: u128) -> Result<Vec<u128>> {
    let e = check_psi_args(n, i, f)?;
    let total = grassmannian_cell_count(n, i, p)?;
    if total > budget {
        return Err(Error::Capacity { what: "subspaces", requested: total, limit: budget });
    }
    let d = n - i;
    let mut tally = vec![0u128; e];
    for pivots in combinations(n, d) {
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        // free positions (row, column)
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(c, &q)| (0..q).filter(|r| !pivot_set.contains(r)).map(move |r| (r, c)))
            .collect();
        let mut matrix = vec![vec![0u64; d]; n];
        for (c, &q) in pivots.iter().enumerate() {
            matrix[q][c] = 1;
        }
        loop {
            let top = (0..n).rev().find(|&r| matrix[r].iter().any(|&x| x != 0)).map_or(0, |r| r + 1);
            tally[top.div_ceil(f) - 1] += 1;
            // odometer over the free entries
            let mut carried = true;
            for &(r, c) in &slots {
                matrix[r][c] += 1;
                if matrix[r][c] < p {
                    carried = false;
                    break;
                }
                matrix[r][c] = 0;
            }
            if carried {
                break;
            }
        }
    }
    Ok(tally)
}

/// Increasing `k`-subsets of `{0, ..., n-1}`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..n {
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_in_plane() {
        assert_eq!(count_subspaces_by_psi(2, 1, 1, 2).unwrap(), vec![1, 2]);
        assert_eq!(psi_cell_tally(2, 1, 1, 2).unwrap(), vec![1, 2]);
    }

    #[test]
    fn whole_space() {
        assert_eq!(count_subspaces_by_psi(3, 0, 1, 3).unwrap(), vec![0, 0, 1]);
        assert_eq!(psi_cell_tally(3, 0, 1, 3).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn planes_in_four_space() {
        let t = count_subspaces_by_psi(4, 2, 2, 2).unwrap();
        assert_eq!(t.iter().sum::<u128>(), 35);
        assert_eq!(t, psi_cell_tally(4, 2, 2, 2).unwrap());
    }

    #[test]
    fn closure_enumeration() {
        let levels = all_subspaces(3, 2).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 7, 7, 1]);
        let levels = all_subspaces(2, 3).unwrap();
        assert_eq!(levels[1].len(), 4);
        assert!(all_subspaces(11, 2).is_err());
    }

    #[test]
    fn psi_from_elements() {
        // span of ε_1 + ε_3 in F_2^4
        assert_eq!(psi_of_elements(&[0, 5], 4, 2, 2), 2);
        assert_eq!(psi_of_elements(&[0, 1], 4, 2, 2), 1);
    }

    #[test]
    fn argument_checks() {
        assert!(psi_cell_tally(4, 1, 3, 2).is_err());
        assert!(count_subspaces_by_psi(3, 3, 1, 2).is_err());
        assert!(matches!(count_subspaces_by_psi_with_budget(4, 2, 1, 2, 5), Err(Error::Capacity { .. })));
    }
}
