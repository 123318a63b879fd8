//! Finite semigroups given by Cayley tables, involutions, centers and
//! the index/period structure of monogenic subsemigroups.
//!
//! Elements are plain indices `0..n`. Labels, when present, belong to the
//! CLI layer only.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite semigroup with a validated associative Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    /// Validates a row-major `n × n` table.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    expected: n * n,
                    found: rows.iter().map(Vec::len).sum(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    /// Validates a flat row-major table of length `order²`.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptySemigroup);
        }
        if table.len() != order * order {
            return Err(Error::NotSquare {
                expected: order * order,
                found: table.len(),
            });
        }
        for (k, &value) in table.iter().enumerate() {
            if value >= order {
                return Err(Error::EntryOutOfRange {
                    row: k / order,
                    col: k % order,
                    value,
                    order,
                });
            }
        }
        let s = FiniteSemigroup { order, table };
        // Full O(n³) scan, triples visited in lexicographic order.
        for x in 0..order {
            for y in 0..order {
                let xy = s.mul(x, y);
                for z in 0..order {
                    if s.mul(xy, z) != s.mul(x, s.mul(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    /// Left-to-right product of a nonempty word.
    pub fn product(&self, word: &[usize]) -> usize {
        let (&first, rest) = word.split_first().expect("empty word");
        rest.iter().fold(first, |acc, &w| self.mul(acc, w))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z))
    }

    /// `{ z : z·x = x·z for all x }`, ascending.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| self.is_central(z)).collect()
    }

    /// The two-sided identity, if there is one.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Inverse map when the semigroup is a group.
    pub fn inverses(&self) -> Option<Vec<usize>> {
        let e = self.identity()?;
        (0..self.order)
            .map(|x| (0..self.order).find(|&y| self.mul(x, y) == e && self.mul(y, x) == e))
            .collect()
    }

    pub fn orbit(&self, x: usize) -> Orbit {
        orbit(self, x)
    }
}

/// Index and period of an element: the lexicographically least `(i, p)`
/// with `x^(i+p) = x^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub element: usize,
    pub index: usize,
    pub period: usize,
}

pub fn orbit(s: &FiniteSemigroup, x: usize) -> Orbit {
    assert!(x < s.order(), "element {x} out of range");
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut power = x;
    let mut exponent = 1;
    loop {
        if let Some(&first) = seen.get(&power) {
            return Orbit {
                element: x,
                index: first,
                period: exponent - first,
            };
        }
        seen.insert(power, exponent);
        power = s.mul(power, x);
        exponent += 1;
    }
}

/// A map `τ` with `τ(xy) = τ(y)τ(x)` and `τ(τ(x)) = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    perm: Vec<usize>,
}

impl Involution {
    pub fn new(s: &FiniteSemigroup, perm: Vec<usize>) -> Result<Self> {
        let n = s.order();
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                found: perm.len(),
                order: n,
            });
        }
        let mut hit = vec![false; n];
        for &v in &perm {
            if v >= n || hit[v] {
                return Err(Error::NotPermutation { value: v });
            }
            hit[v] = true;
        }
        for x in 0..n {
            if perm[perm[x]] != x {
                return Err(Error::NotInvolutive { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if perm[s.mul(x, y)] != s.mul(perm[y], perm[x]) {
                    return Err(Error::NotAntiHomomorphism { x, y });
                }
            }
        }
        Ok(Involution { perm })
    }

    pub fn identity(s: &FiniteSemigroup) -> Result<Self> {
        Self::new(s, (0..s.order()).collect())
    }

    /// Group inversion; `None` if `s` is not a group.
    pub fn group_inverse(s: &FiniteSemigroup) -> Option<Self> {
        let inv = s.inverses()?;
        Some(Self::new(s, inv).expect("group inversion is an involution"))
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| k == v)
    }
}

/// `ℤ_n` under addition.
pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    assert!(n > 0);
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    FiniteSemigroup::from_flat(n, table).expect("cyclic group is a semigroup")
}

/// Pairs `(a, b)` indexed as `a·|S₂| + b`, so the order is lexicographic.
pub fn direct_product(a: &FiniteSemigroup, b: &FiniteSemigroup) -> FiniteSemigroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            table.push(a.mul(xa, ya) * nb + b.mul(xb, yb));
        }
    }
    FiniteSemigroup::from_flat(n, table).expect("direct product is a semigroup")
}

/// Permutations of `{0,1,2}` in lexicographic order of their one-line
/// notation; index 0 is the identity. The product is composition,
/// `(σ·π)(k) = σ(π(k))`.
pub fn symmetric_group_3() -> FiniteSemigroup {
    let perms = s3_permutations();
    let position = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mut table = Vec::with_capacity(36);
    for s in &perms {
        for p in &perms {
            table.push(position([s[p[0]], s[p[1]], s[p[2]]]));
        }
    }
    FiniteSemigroup::from_flat(6, table).expect("S3 is a semigroup")
}

/// One-line notation of the elements of [`symmetric_group_3`], by index.
pub fn s3_permutations() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// `x·y = x`.
pub fn left_zero(n: usize) -> FiniteSemigroup {
    assert!(n > 0);
    let table = (0..n * n).map(|k| k / n).collect();
    FiniteSemigroup::from_flat(n, table).expect("left-zero band is a semigroup")
}

/// The monoid `{1, x, x², …, x^(i+p−1)}` with `x^(i+p) = x^i`; element `k`
/// is `x^k` and element 0 is the adjoined identity. The generator has index
/// `i` and period `p`; the order is `i + p`.
pub fn cyclic_semigroup(index: usize, period: usize) -> FiniteSemigroup {
    assert!(index > 0 && period > 0);
    let n = index + period;
    let reduce = |m: usize| {
        if m < n {
            m
        } else {
            index + (m - index) % period
        }
    };
    let table = (0..n * n).map(|k| reduce(k / n + k % n)).collect();
    FiniteSemigroup::from_flat(n, table).expect("cyclic monoid is a semigroup")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_and_z2_are_valid() {
        let z4: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| (x + y) % 4).collect()).collect();
        assert_eq!(FiniteSemigroup::from_rows(&z4).unwrap().order(), 4);
        assert!(FiniteSemigroup::from_rows(&[vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn first_non_associative_triple_is_reported() {
        // Exhaustive scan over the 8 triples, in lexicographic order.
        let rows = vec![vec![1, 0], vec![0, 0]];
        let m = |x: usize, y: usize| rows[x][y];
        let mut expected = None;
        'scan: for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        expected = Some((x, y, z));
                        break 'scan;
                    }
                }
            }
        }
        let (x, y, z) = expected.unwrap();
        assert_eq!((x, y, z), (0, 0, 1));
        assert_eq!(
            FiniteSemigroup::from_rows(&rows),
            Err(Error::NotAssociative { x, y, z })
        );
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            FiniteSemigroup::from_rows(&[vec![0, 1], vec![0]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            FiniteSemigroup::from_rows(&[vec![0, 2], vec![1, 0]]),
            Err(Error::EntryOutOfRange { row: 0, col: 1, value: 2, order: 2 })
        ));
        assert_eq!(FiniteSemigroup::from_flat(0, vec![]), Err(Error::EmptySemigroup));
    }

    #[test]
    fn involutions_on_z4_and_s3() {
        let z4 = cyclic_group(4);
        assert!(Involution::new(&z4, vec![0, 3, 2, 1]).is_ok());
        assert!(Involution::identity(&z4).is_ok());
        let s3 = symmetric_group_3();
        assert!(matches!(
            Involution::identity(&s3),
            Err(Error::NotAntiHomomorphism { .. })
        ));
        assert!(Involution::group_inverse(&s3).is_some());
        assert!(matches!(
            Involution::new(&cyclic_group(4), vec![1, 2, 3, 0]),
            Err(Error::NotInvolutive { x: 0 })
        ));
        assert!(matches!(
            Involution::new(&z4, vec![0, 0, 2, 1]),
            Err(Error::NotPermutation { value: 0 })
        ));
    }

    #[test]
    fn centers() {
        assert_eq!(cyclic_group(4).center(), vec![0, 1, 2, 3]);
        assert_eq!(symmetric_group_3().center(), vec![0]);
        assert!(left_zero(2).center().is_empty());
    }

    #[test]
    fn s3_identity_map_fails_on_some_pair() {
        // brute-force: identity is anti-homomorphic iff the table is symmetric
        let s3 = symmetric_group_3();
        let bad = (0..6)
            .flat_map(|x| (0..6).map(move |y| (x, y)))
            .find(|&(x, y)| s3.mul(x, y) != s3.mul(y, x));
        let (x, y) = bad.unwrap();
        assert_eq!(Involution::identity(&s3), Err(Error::NotAntiHomomorphism { x, y }));
    }

    #[test]
    fn orbits() {
        let z4 = cyclic_group(4);
        assert_eq!((z4.orbit(1).index, z4.orbit(1).period), (1, 4));
        assert_eq!((z4.orbit(0).index, z4.orbit(0).period), (1, 1));
        let c = cyclic_semigroup(2, 1);
        assert_eq!(c.order(), 3);
        assert_eq!((c.orbit(1).index, c.orbit(1).period), (2, 1));
        assert_eq!((c.orbit(0).index, c.orbit(0).period), (1, 1));
    }

    #[test]
    fn builders() {
        assert_eq!(cyclic_group(1).order(), 1);
        let v4 = direct_product(&cyclic_group(2), &cyclic_group(2));
        assert_eq!(v4.order(), 4);
        assert!((0..4).all(|x| v4.mul(x, x) == 0));
        let c = cyclic_semigroup(2, 1);
        // powers x, x², x³ = x²
        assert_eq!(c.mul(1, 1), 2);
        assert_eq!(c.mul(2, 1), 2);
        assert_eq!(c.identity(), Some(0));
        let c22 = cyclic_semigroup(2, 2);
        assert_eq!(c22.mul(2, 2), 2); // x⁴ = x²
        assert_eq!(c22.mul(3, 1), 2);
        assert_eq!(symmetric_group_3().identity(), Some(0));
        assert!(!symmetric_group_3().is_commutative());
    }
}
