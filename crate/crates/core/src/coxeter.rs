//! Permutation statistics on the symmetric group `S_n`, viewed as the
//! Coxeter group of type `A_{n-1}` with generators `s_i = (i i+1)`.
//!
//! Permutations are stored in one-line notation with 1-based images:
//! position `i` holds `w(i)`. Composition follows function composition,
//! `(u ∘ w)(i) = u(w(i))`.

use std::fmt;

use crate::error::{contract, Error, Result};

/// Largest degree accepted by [`enumerate_permutations`].
pub const MAX_ENUMERATION_DEGREE: usize = 12;

/// Largest degree a [`ParabolicIndexSet`] can describe.
pub const MAX_INDEX_SET_DEGREE: usize = 64;

/// An element of `S_n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line images `w(1), ..., w(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(contract("permutation degree must be at least 1"));
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(contract(format!("{images:?} is not a permutation of [{n}]")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation degree must be at least 1");
        Permutation { images: (1..=n).collect() }
    }

    /// The simple reflection `s_i`, swapping the letters `i` and `i + 1`.
    pub fn simple_reflection(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(contract(format!("s_{i} is not a generator of S_{n}")));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for `i` in `1..=n`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (pos, &img) in self.images.iter().enumerate() {
            inv[img - 1] = pos + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// A subset `I` of `[n-1]`, indexing the parabolic subgroup `W_I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParabolicIndexSet {
    degree: usize,
    mask: u64,
}

impl ParabolicIndexSet {
    pub fn new(degree: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(degree)?;
        for i in members {
            if i == 0 || i >= degree {
                return Err(contract(format!("{i} is not in [{}]", degree - 1)));
            }
            set.mask |= 1 << (i - 1);
        }
        Ok(set)
    }

    pub fn empty(degree: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_INDEX_SET_DEGREE {
            return Err(contract(format!("index set degree {degree} out of range")));
        }
        Ok(ParabolicIndexSet { degree, mask: 0 })
    }

    /// `[m] = {1, ..., m}` as a subset of `[n-1]`; requires `m < n`.
    pub fn initial_segment(degree: usize, m: usize) -> Result<Self> {
        Self::new(degree, 1..=m)
    }

    /// Builds a set from a bitmask where bit `i - 1` marks member `i`.
    pub fn from_mask(degree: usize, mask: u64) -> Result<Self> {
        let set = Self::empty(degree)?;
        let full = set.full_mask();
        if mask & !full != 0 {
            return Err(contract(format!("mask {mask:#b} exceeds [{}]", degree - 1)));
        }
        Ok(ParabolicIndexSet { degree, mask })
    }

    fn full_mask(&self) -> u64 {
        if self.degree - 1 == 64 {
            u64::MAX
        } else {
            (1u64 << (self.degree - 1)) - 1
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.degree && self.mask >> (i - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// `[n-1] \ I`.
    pub fn complement(&self) -> Self {
        ParabolicIndexSet { degree: self.degree, mask: !self.mask & self.full_mask() }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.degree).filter(move |&i| self.contains(i))
    }

    pub fn max(&self) -> Option<usize> {
        (self.mask != 0).then(|| 64 - self.mask.leading_zeros() as usize)
    }

    /// Every subset of `[n-1]`, ordered by bitmask.
    pub fn all_subsets(degree: usize) -> Result<impl Iterator<Item = ParabolicIndexSet>> {
        let base = Self::empty(degree)?;
        if degree > 32 {
            return Err(Error::Capacity {
                what: "subset enumeration degree",
                requested: degree as u128,
                limit: 32,
            });
        }
        Ok((0..1u64 << (degree - 1)).map(move |mask| ParabolicIndexSet { degree, mask: mask & base.full_mask() }))
    }
}

impl fmt::Debug for ParabolicIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Number of inversions `#{(i, j) : i < j, w(i) > w(j)}`, which is the
/// Coxeter length of `w`.
pub fn length(w: &Permutation) -> usize {
    let im = &w.images;
    let mut inv = 0;
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            if im[i] > im[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Right descent set `{i : w(i+1) < w(i)}`.
pub fn descent_set(w: &Permutation) -> ParabolicIndexSet {
    ParabolicIndexSet { degree: w.degree(), mask: descent_mask(w) }
}

/// Bitmask form of [`descent_set`]; bit `i - 1` is set iff `i` is a descent.
/// Degrees above 64 are truncated, callers in this crate never exceed 12.
#[inline]
pub fn descent_mask(w: &Permutation) -> u64 {
    let im = &w.images;
    let mut mask = 0u64;
    for i in 0..im.len().saturating_sub(1).min(64) {
        if im[i + 1] < im[i] {
            mask |= 1 << i;
        }
    }
    mask
}

/// Maximal runs of positions joined by `I`: `i` and `i + 1` lie in the same
/// block iff `i ∈ I`. Returned as half-open 0-based ranges.
fn index_blocks(i_set: &ParabolicIndexSet) -> Vec<std::ops::Range<usize>> {
    let n = i_set.degree();
    let mut blocks = Vec::new();
    let mut start = 0;
    for pos in 1..=n {
        if pos == n || !i_set.contains(pos) {
            blocks.push(start..pos);
            start = pos;
        }
    }
    blocks
}

/// Factors `w = w^I w_I` with `w_I ∈ W_I` and `w^I` the shortest element of
/// the coset `w W_I`. Returns `(w^I, w_I)`.
pub fn coset_decomposition(w: &Permutation, i_set: &ParabolicIndexSet) -> Result<(Permutation, Permutation)> {
    if i_set.degree() != w.degree() {
        return Err(contract(format!(
            "index set of degree {} used with a permutation of degree {}",
            i_set.degree(),
            w.degree()
        )));
    }
    let mut reduced = w.images.clone();
    for block in index_blocks(i_set) {
        reduced[block].sort_unstable();
    }
    let min_rep = Permutation { images: reduced };
    let w_i = compose(&min_rep.inverse(), w)?;
    Ok((min_rep, w_i))
}

/// The right parabolic length `ℓ^I(w) = ℓ(w^I)`.
pub fn parabolic_length(w: &Permutation, i_set: &ParabolicIndexSet) -> Result<usize> {
    let (min_rep, _) = coset_decomposition(w, i_set)?;
    Ok(length(&min_rep))
}

/// `ℓ^{[n-2]}(w) = n - w(n)`, the closed form of the parabolic length for
/// the maximal proper initial segment.
#[inline]
pub fn last_letter_length(w: &Permutation) -> usize {
    let n = w.degree();
    n - w.apply(n)
}

/// The longest element `w_0 : i ↦ n + 1 - i`.
pub fn longest_element(n: usize) -> Permutation {
    assert!(n >= 1, "permutation degree must be at least 1");
    Permutation { images: (1..=n).rev().collect() }
}

/// `(u ∘ w)(i) = u(w(i))`.
pub fn compose(u: &Permutation, w: &Permutation) -> Result<Permutation> {
    if u.degree() != w.degree() {
        return Err(contract(format!("cannot compose S_{} with S_{}", u.degree(), w.degree())));
    }
    Ok(Permutation { images: w.images.iter().map(|&x| u.images[x - 1]).collect() })
}

/// `c^m` for the n-cycle `c = (1 2 ... n)`, i.e. `c(i) = i + 1`, `c(n) = 1`.
pub fn power_of_cycle(n: usize, m: usize) -> Permutation {
    assert!(n >= 1, "permutation degree must be at least 1");
    Permutation { images: (0..n).map(|i| (i + m) % n + 1).collect() }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Permutations of `[n]` in lexicographic one-line order.
///
/// Supports restriction to a range of lexicographic ranks so that sweeps over
/// `S_n` can be partitioned.
#[derive(Clone, Debug)]
pub struct Permutations {
    current: Option<Vec<usize>>,
    remaining: u64,
}

impl Permutations {
    /// Ranks `start..end` (clamped to `n!`).
    pub fn range(n: usize, start: u64, end: u64) -> Result<Self> {
        check_enumeration_degree(n)?;
        let total = factorial(n);
        let end = end.min(total);
        if start >= end {
            return Ok(Permutations { current: None, remaining: 0 });
        }
        Ok(Permutations { current: Some(unrank(n, start)?.images), remaining: end - start })
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let cur = self.current.as_mut()?;
        let out = Permutation { images: cur.clone() };
        self.remaining -= 1;
        if self.remaining > 0 && !next_lexicographic(cur) {
            self.remaining = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Permutations {}

fn next_lexicographic(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn check_enumeration_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_DEGREE {
        return Err(Error::Capacity {
            what: "permutation degree",
            requested: n as u128,
            limit: MAX_ENUMERATION_DEGREE as u128,
        });
    }
    Ok(())
}

/// All `n!` permutations of `[n]` in lexicographic order, identity first and
/// `w_0` last.
pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    Permutations::range(n, 0, u64::MAX)
}

/// The permutation of lexicographic rank `rank` (0-based).
pub fn unrank(n: usize, rank: u64) -> Result<Permutation> {
    check_enumeration_degree(n)?;
    if rank >= factorial(n) {
        return Err(contract(format!("rank {rank} out of range for S_{n}")));
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut images = Vec::with_capacity(n);
    let mut r = rank;
    for k in (0..n).rev() {
        let f = factorial(k);
        let idx = (r / f) as usize;
        r %= f;
        images.push(pool.remove(idx));
    }
    Ok(Permutation { images })
}

/// Lexicographic rank of `w`; inverse of [`unrank`].
pub fn rank(w: &Permutation) -> u64 {
    let n = w.degree();
    let mut r = 0;
    for i in 0..n {
        let smaller_later = w.images[i + 1..].iter().filter(|&&x| x < w.images[i]).count() as u64;
        r += smaller_later * factorial(n - 1 - i);
    }
    r
}
