//! Column representation of cyclic Latin squares.
//!
//! A cyclic Latin square of order `n` satisfies `(r, c, e) in L` iff
//! `(r, c+1, e+1) in L` (indices mod `n`), so it is determined by its first
//! column: `L(r, c) = col[r] + c (mod n)`. Everything in this crate works on
//! first columns; full squares are only materialized on demand.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Largest supported order. Entries are stored as `u8`.
pub const MAX_ORDER: usize = 254;

/// An even order `n >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Order(usize);

impl Order {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        if n % 2 != 0 {
            return Err(Error::OddOrder(n));
        }
        Ok(Order(n))
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0
    }

    /// The half period `n/2`; symbol pairs at this distance occur twice in a
    /// nearly orthogonal superimposition.
    #[inline]
    pub fn half(self) -> usize {
        self.0 / 2
    }

    /// Euler's totient of `n`.
    pub fn phi(self) -> usize {
        self.units().len()
    }

    /// All units modulo `n`, ascending.
    pub fn units(self) -> Vec<usize> {
        (1..self.0).filter(|&x| gcd(x, self.0) == 1).collect()
    }

    /// Multiplicative inverse of the unit `x` modulo `n`.
    pub fn inv_unit(self, x: usize) -> Result<usize> {
        let n = self.0;
        if gcd(x % n, n) != 1 {
            return Err(Error::NotAUnit { x, n });
        }
        Ok((1..n).find(|&y| (x * y) % n == 1).expect("unit has an inverse"))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// First column of a cyclic Latin square: a permutation of `{0,..,n-1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicColumn {
    entries: Vec<u8>,
}

impl CyclicColumn {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        Order::new(n)?;
        if !is_permutation(&entries) {
            return Err(Error::NotAPermutation(entries, n));
        }
        Ok(CyclicColumn { entries })
    }

    /// Caller guarantees `entries` is a permutation of a valid order.
    pub(crate) fn from_vec_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(Order::new(entries.len()).is_ok() && is_permutation(&entries));
        CyclicColumn { entries }
    }

    pub fn identity(order: Order) -> Self {
        CyclicColumn {
            entries: (0..order.n() as u8).collect(),
        }
    }

    pub fn order(&self) -> Order {
        Order(self.entries.len())
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize) -> usize {
        self.entries[row] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e as usize == i)
    }

    /// The full square: row `r` is `(col[r], col[r]+1, .., col[r]+n-1)` mod n.
    pub fn expand(&self) -> Vec<Vec<u8>> {
        let n = self.entries.len();
        (0..n)
            .map(|r| {
                let base = self.entries[r] as usize;
                (0..n).map(|c| ((base + c) % n) as u8).collect()
            })
            .collect()
    }

    /// Inverse permutation: `inverse()[e] = r` iff `self[r] = e`.
    pub fn inverse(&self) -> CyclicColumn {
        CyclicColumn {
            entries: perm_inverse(&self.entries),
        }
    }
}

impl fmt::Debug for CyclicColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicColumn({self})")
    }
}

impl fmt::Display for CyclicColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CyclicColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        CyclicColumn::new(entries)
    }
}

pub(crate) fn is_permutation(entries: &[u8]) -> bool {
    let n = entries.len();
    if n > MAX_ORDER {
        return false;
    }
    let mut seen = [false; 256];
    for &e in entries {
        if (e as usize) >= n || seen[e as usize] {
            return false;
        }
        seen[e as usize] = true;
    }
    true
}

/// `perm_inverse(p)[e] = r` iff `p[r] = e`.
pub(crate) fn perm_inverse(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (r, &e) in p.iter().enumerate() {
        inv[e as usize] = r as u8;
    }
    inv
}

/// Right-to-left composition: `perm_compose(f, g)[r] = f[g[r]]` (apply `g`, then `f`).
pub(crate) fn perm_compose(f: &[u8], g: &[u8]) -> Vec<u8> {
    g.iter().map(|&r| f[r as usize]).collect()
}

/// Row-wise symbol differences `b[r] - a[r] (mod n)` with multiplicities.
///
/// Superimposing the squares generated by `a` and `b` places the ordered pair
/// `(l, l+d)` exactly `counts[d]` times for every symbol `l`, so this multiset
/// decides near-orthogonality in O(n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceMultiset {
    counts: Vec<u32>,
}

impl DifferenceMultiset {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, d: usize) -> u32 {
        self.counts[d]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// The profile required for near-orthogonality: no zero difference, the
    /// half period twice, every other difference once.
    pub fn is_near_orthogonal_profile(&self) -> bool {
        let n = self.counts.len();
        let half = n / 2;
        self.counts
            .iter()
            .enumerate()
            .all(|(d, &c)| c == if d == 0 { 0 } else if d == half { 2 } else { 1 })
    }
}

pub fn difference_multiset(a: &CyclicColumn, b: &CyclicColumn) -> Result<DifferenceMultiset> {
    let n = a.entries.len();
    if n != b.entries.len() {
        return Err(Error::OrderMismatch(n, b.entries.len()));
    }
    let mut counts = vec![0u32; n];
    for r in 0..n {
        let d = (b.entries[r] as usize + n - a.entries[r] as usize) % n;
        counts[d] += 1;
    }
    Ok(DifferenceMultiset { counts })
}

/// Whether the cyclic squares generated by `a` and `b` are nearly orthogonal.
pub fn nearly_orthogonal(a: &CyclicColumn, b: &CyclicColumn) -> Result<bool> {
    let n = a.entries.len();
    if n != b.entries.len() {
        return Err(Error::OrderMismatch(n, b.entries.len()));
    }
    Ok(nearly_orthogonal_entries(&a.entries, &b.entries))
}

/// Hot-path form on raw entry slices of equal, valid length.
#[inline]
pub(crate) fn nearly_orthogonal_entries(a: &[u8], b: &[u8]) -> bool {
    let n = a.len();
    let half = n / 2;
    let mut counts = [0u8; 256];
    counts[..n].fill(0);
    for r in 0..n {
        let d = (b[r] as usize + n - a[r] as usize) % n;
        if d == 0 {
            return false;
        }
        let cap = if d == half { 2 } else { 1 };
        if counts[d] == cap {
            return false;
        }
        counts[d] += 1;
    }
    // All n differences placed without exceeding any cap; the caps sum to
    // exactly n, so the profile is met.
    true
}

/// Lexicographic comparison of entry sequences. For cyclic squares this
/// coincides with row-major comparison of the expanded squares.
pub fn compare_columns(a: &CyclicColumn, b: &CyclicColumn) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(s: &str) -> CyclicColumn {
        s.parse().unwrap()
    }

    #[test]
    fn order_rejects_odd_and_accepts_two() {
        assert!(matches!(Order::new(7), Err(Error::OddOrder(7))));
        assert!(matches!(Order::new(0), Err(Error::OrderOutOfRange { .. })));
        assert!(Order::new(2).is_ok());
        assert_eq!(Order::new(12).unwrap().phi(), 4);
        assert_eq!(Order::new(14).unwrap().units(), vec![1, 3, 5, 9, 11, 13]);
    }

    #[test]
    fn expand_identity_column() {
        let sq = col("0,1,2,3").expand();
        assert_eq!(
            sq,
            vec![
                vec![0, 1, 2, 3],
                vec![1, 2, 3, 0],
                vec![2, 3, 0, 1],
                vec![3, 0, 1, 2]
            ]
        );
    }

    #[test]
    fn expand_order_two() {
        let sq = col("1,0").expand();
        assert_eq!(sq, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn expand_row_follows_cyclic_rule() {
        let sq = col("1,3,0,2").expand();
        assert_eq!(sq[1], vec![3, 0, 1, 2]);
    }

    #[test]
    fn difference_multiset_examples() {
        let i = col("0,1,2,3");
        assert_eq!(difference_multiset(&i, &i).unwrap().counts(), &[4, 0, 0, 0]);
        let d = difference_multiset(&i, &col("2,3,1,0")).unwrap();
        assert_eq!(d.counts(), &[0, 1, 2, 1]);
        let d = difference_multiset(&i, &col("1,2,3,0")).unwrap();
        assert_eq!(d.counts(), &[0, 4, 0, 0]);
        assert_eq!(d.total(), 4);
    }

    #[test]
    fn nearly_orthogonal_examples() {
        let i = col("0,1,2,3");
        assert!(nearly_orthogonal(&i, &col("2,3,1,0")).unwrap());
        assert!(!nearly_orthogonal(&i, &col("1,2,3,0")).unwrap());
        assert!(!nearly_orthogonal(&i, &i).unwrap());
    }

    #[test]
    fn nearly_orthogonal_rejects_order_mismatch() {
        let a = col("0,1,2,3");
        let b = col("1,0");
        assert!(matches!(
            nearly_orthogonal(&a, &b),
            Err(Error::OrderMismatch(4, 2))
        ));
    }

    #[test]
    fn column_rejects_non_permutation() {
        assert!(matches!(
            CyclicColumn::new(vec![0, 0, 1, 2]),
            Err(Error::NotAPermutation(..))
        ));
        assert!("0,1,2".parse::<CyclicColumn>().is_err()); // odd order
    }

    #[test]
    fn compare_columns_examples() {
        assert_eq!(compare_columns(&col("1,3,0,2"), &col("2,0,3,1")), Ordering::Less);
        assert_eq!(compare_columns(&col("1,3,0,2"), &col("1,3,0,2")), Ordering::Equal);
        assert_eq!(
            compare_columns(&col("2,3,1,0"), &col("2,0,3,1")),
            Ordering::Greater
        );
    }

    #[test]
    fn column_text_round_trip() {
        let c = col("1,3,0,2");
        assert_eq!(c.to_string(), "1,3,0,2");
        assert_eq!(c.to_string().parse::<CyclicColumn>().unwrap(), c);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let c = col("2,0,3,1");
        let inv = c.inverse();
        let composed = perm_compose(c.entries(), inv.entries());
        assert_eq!(composed, vec![0, 1, 2, 3]);
    }
}
