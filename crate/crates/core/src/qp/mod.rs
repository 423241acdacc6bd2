//! Finite quasi-posets (reflexive, transitive relations) on `{1..n}`.
//!
//! Vertices are 0-based internally and 1-based in the text format. A vertex
//! subset is a `u64` bitmask where bit `i` stands for vertex `i + 1`.

mod canonical;
mod enumerate;
mod equivalence;
mod text;

pub use canonical::CanonicalKey;
pub use enumerate::{enumerate_connected_iso, enumerate_iso, enumerate_labeled};
pub use equivalence::{set_partitions, Equivalence};

use crate::error::{Error, Result};

/// Largest supported vertex count (one `u64` row per vertex).
pub const MAX_VERTICES: usize = 64;

/// Kind of a generating relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelKind {
    /// `i ≤ j`
    Le,
    /// `i ≤ j` and `j ≤ i`
    Equiv,
}

/// A quasi-poset on `{1..n}`, stored as its closed relation.
///
/// `rows[i]` has bit `j` set iff `i ≤ j`. Construction always closes the
/// relation, so structural equality is relation equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiPoset {
    n: usize,
    rows: Vec<u64>,
}

/// The poset of `∼_P` classes of a quasi-poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientView {
    /// Classes ordered by their smallest vertex.
    pub classes: Vec<u64>,
    /// `order[c]` has bit `d` set iff class `c` is strictly below class `d`.
    pub order: Vec<u64>,
    pub cl: usize,
    pub cc: usize,
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn close(rows: &mut [u64]) {
    let n = rows.len();
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= 1 << i;
    }
    for k in 0..n {
        let rk = rows[k];
        for row in rows.iter_mut() {
            if *row >> k & 1 == 1 {
                *row |= rk;
            }
        }
    }
}

impl QuasiPoset {
    /// The empty quasi-poset, unit of both products.
    pub fn empty() -> Self {
        QuasiPoset {
            n: 0,
            rows: Vec::new(),
        }
    }

    pub fn point() -> Self {
        Self::antichain(1)
    }

    /// `n` pairwise incomparable vertices.
    pub fn antichain(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        QuasiPoset {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// The chain `1 < 2 < … < n`.
    pub fn chain(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let full = full_mask(n);
        QuasiPoset {
            n,
            rows: (0..n).map(|i| full & !full_mask(i)).collect(),
        }
    }

    /// One class containing all `n` vertices.
    pub fn single_class(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        QuasiPoset {
            n,
            rows: vec![full_mask(n); n],
        }
    }

    /// The corolla with `k` leaves: `1 ≤ 2, …, k+1`.
    pub fn corolla(k: usize) -> Self {
        assert!(k < MAX_VERTICES);
        let mut rows: Vec<u64> = (0..=k).map(|i| 1u64 << i).collect();
        rows[0] = full_mask(k + 1);
        QuasiPoset { n: k + 1, rows }
    }

    /// Closes an arbitrary relation given by rows of bitmasks.
    pub fn from_relation(n: usize, rows: &[u64]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        if rows.len() != n {
            return Err(Error::LengthMismatch {
                left: rows.len(),
                right: n,
            });
        }
        let full = full_mask(n);
        if let Some(bad) = rows.iter().find(|r| **r & !full != 0) {
            let vertex = 64 - bad.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        let mut rows = rows.to_vec();
        close(&mut rows);
        Ok(QuasiPoset { n, rows })
    }

    /// Smallest quasi-order containing the 1-based generators.
    pub fn from_generators(n: usize, rels: &[(usize, usize, RelKind)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut rows = vec![0u64; n];
        for &(i, j, kind) in rels {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            rows[i - 1] |= 1 << (j - 1);
            if kind == RelKind::Equiv {
                rows[j - 1] |= 1 << (i - 1);
            }
        }
        close(&mut rows);
        Ok(QuasiPoset { n, rows })
    }

    /// Builds from rows that are already reflexive and transitive.
    pub(crate) fn from_closed_rows(rows: Vec<u64>) -> Self {
        debug_assert!({
            let mut c = rows.clone();
            close(&mut c);
            c == rows
        });
        QuasiPoset { n: rows.len(), rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// `i ≤ j`, 0-based.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// `{j : i ≤ j}`
    pub fn up_set(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// `{j : j ≤ i}`
    pub fn down_set(&self, i: usize) -> u64 {
        (0..self.n)
            .filter(|&j| self.le(j, i))
            .fold(0, |m, j| m | 1 << j)
    }

    /// The `∼_P` class of vertex `i`.
    pub fn class_of(&self, i: usize) -> u64 {
        bits(self.rows[i])
            .filter(|&j| self.le(j, i))
            .fold(0, |m, j| m | 1 << j)
    }

    /// `∼_P` classes ordered by smallest vertex.
    pub fn classes(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for i in 0..self.n {
            if seen >> i & 1 == 0 {
                let c = self.class_of(i);
                seen |= c;
                out.push(c);
            }
        }
        out
    }

    pub fn quotient(&self) -> QuotientView {
        let classes = self.classes();
        let reps: Vec<usize> = classes.iter().map(|c| c.trailing_zeros() as usize).collect();
        let order = reps
            .iter()
            .enumerate()
            .map(|(c, &a)| {
                reps.iter()
                    .enumerate()
                    .filter(|&(d, &b)| d != c && self.le(a, b))
                    .fold(0u64, |m, (d, _)| m | 1 << d)
            })
            .collect();
        QuotientView {
            cl: classes.len(),
            cc: self.components().len(),
            classes,
            order,
        }
    }

    /// The quotient poset `P̅` as a quasi-poset on `cl(P)` vertices.
    pub fn quotient_poset(&self) -> QuasiPoset {
        let q = self.quotient();
        let rows = q
            .order
            .iter()
            .enumerate()
            .map(|(c, o)| o | 1 << c)
            .collect();
        QuasiPoset::from_closed_rows(rows)
    }

    /// Number of `∼_P` classes.
    pub fn cl(&self) -> usize {
        self.classes().len()
    }

    /// Number of connected components.
    pub fn cc(&self) -> usize {
        self.components().len()
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for i in 0..self.n {
            if seen >> i & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << i;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.rows[v] | self.down_set(v);
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Whether `≤_P` coincides with `∼_P`.
    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|i| bits(self.rows[i]).all(|j| self.le(j, i)))
    }

    /// Whether the relation is antisymmetric.
    pub fn is_poset(&self) -> bool {
        (0..self.n).all(|i| self.class_of(i).count_ones() == 1)
    }

    /// Whether `set` is up-closed.
    pub fn is_open(&self, set: u64) -> bool {
        bits(set).all(|i| self.rows[i] & !set == 0)
    }

    /// All open (up-closed) sets, ordered by size then lexicographically.
    pub fn open_sets(&self) -> Vec<u64> {
        let q = self.quotient();
        // classes sorted by decreasing up-set size come after all their strict upper bounds
        let mut topo: Vec<usize> = (0..q.cl).collect();
        topo.sort_by_key(|&c| q.order[c].count_ones());
        fn rec(q: &QuotientView, topo: &[usize], chosen: u64, set: u64, out: &mut Vec<u64>) {
            let Some((&c, rest)) = topo.split_first() else {
                out.push(set);
                return;
            };
            rec(q, rest, chosen, set, out);
            if q.order[c] & !chosen == 0 {
                rec(q, rest, chosen | 1 << c, set | q.classes[c], out);
            }
        }
        let mut out = Vec::new();
        rec(&q, &topo, 0, 0, &mut out);
        sort_subsets(&mut out);
        out
    }

    /// `Std(P_|set)`: restriction relabelled increasingly to `1..|set|`.
    pub fn restrict(&self, set: u64) -> QuasiPoset {
        let set = set & self.vertex_mask();
        let verts: Vec<usize> = bits(set).collect();
        let rows = verts
            .iter()
            .map(|&i| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.le(i, j))
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        QuasiPoset::from_closed_rows(rows)
    }

    /// Disjoint union with `other` shifted by `n`.
    pub fn product(&self, other: &QuasiPoset) -> QuasiPoset {
        self.join(other, false)
    }

    /// Disjoint union plus every vertex of `self` below every vertex of `other`.
    pub fn ordinal(&self, other: &QuasiPoset) -> QuasiPoset {
        self.join(other, true)
    }

    fn join(&self, other: &QuasiPoset, below: bool) -> QuasiPoset {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES, "product exceeds {MAX_VERTICES} vertices");
        let upper = if below {
            full_mask(n) & !full_mask(self.n)
        } else {
            0
        };
        let rows = self
            .rows
            .iter()
            .map(|r| r | upper)
            .chain(other.rows.iter().map(|r| r << self.n))
            .collect();
        QuasiPoset::from_closed_rows(rows)
    }

    /// `P/∼`: closure of `≤_P ∪ ∼` on the same vertex set.
    pub fn contract(&self, eq: &Equivalence) -> QuasiPoset {
        assert_eq!(eq.n(), self.n);
        let mut rows = self.rows.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= eq.block_of(i);
        }
        close(&mut rows);
        QuasiPoset { n: self.n, rows }
    }

    /// `P|∼`: intersection of `≤_P` with `∼`, on the same vertex set.
    pub fn restrict_by(&self, eq: &Equivalence) -> QuasiPoset {
        assert_eq!(eq.n(), self.n);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r & eq.block_of(i))
            .collect();
        QuasiPoset::from_closed_rows(rows)
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> QuasiPoset {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            rows[perm[i]] = bits(self.rows[i]).fold(0u64, |m, j| m | 1 << perm[j]);
        }
        QuasiPoset { n: self.n, rows }
    }

    /// The opposite quasi-order.
    pub fn opposite(&self) -> QuasiPoset {
        let rows = (0..self.n).map(|i| self.down_set(i)).collect();
        QuasiPoset { n: self.n, rows }
    }

    /// Minimal `∼_P` classes, as vertex sets.
    pub fn minimal_classes(&self) -> Vec<u64> {
        self.classes()
            .into_iter()
            .filter(|c| {
                let i = c.trailing_zeros() as usize;
                self.down_set(i) == *c
            })
            .collect()
    }
}

/// Sorts subsets by size, then by their sorted vertex lists.
pub(crate) fn sort_subsets(sets: &mut [u64]) {
    sets.sort_by_key(|&s| (s.count_ones(), bits(s).collect::<Vec<_>>()));
}
