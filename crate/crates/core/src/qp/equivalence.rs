use std::fmt;

use super::{bits, full_mask, MAX_VERTICES};
use crate::error::{Error, Result};

/// An equivalence relation on `{1..n}`, stored as its blocks.
///
/// Blocks are disjoint, cover all vertices and are kept ordered by their
/// smallest element, so structural equality is relation equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equivalence {
    n: usize,
    blocks: Vec<u64>,
}

impl Equivalence {
    /// Builds from block masks; they must partition `{0..n-1}`.
    pub fn from_masks(n: usize, mut blocks: Vec<u64>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut seen = 0u64;
        for &b in &blocks {
            if b == 0 || b & seen != 0 || b & !full_mask(n) != 0 {
                return Err(Error::Invalid(format!(
                    "blocks do not partition {n} vertices"
                )));
            }
            seen |= b;
        }
        if seen != full_mask(n) {
            return Err(Error::Invalid(format!(
                "blocks do not partition {n} vertices"
            )));
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Equivalence { n, blocks })
    }

    /// Builds from 1-based vertex lists.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut m = 0u64;
            for &v in block {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                m |= 1 << (v - 1);
            }
            masks.push(m);
        }
        Self::from_masks(n, masks)
    }

    /// Every vertex alone.
    pub fn discrete(n: usize) -> Self {
        Equivalence {
            n,
            blocks: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// A single block (no blocks when `n == 0`).
    pub fn whole(n: usize) -> Self {
        Equivalence {
            n,
            blocks: if n == 0 { vec![] } else { vec![full_mask(n)] },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn cl(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, i: usize) -> u64 {
        self.blocks
            .iter()
            .copied()
            .find(|b| b >> i & 1 == 1)
            .expect("vertex outside the equivalence")
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.block_of(i) >> j & 1 == 1
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Equivalence) -> bool {
        self.blocks
            .iter()
            .all(|&b| other.block_of(b.trailing_zeros() as usize) & b == b)
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            let items: Vec<String> = bits(*b).map(|i| (i + 1).to_string()).collect();
            f.write_str(&items.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Equivalence({self})")
    }
}

/// All set partitions of `atoms`, each returned as a list of unions of atoms.
///
/// Uses restricted growth strings, so each partition appears exactly once.
pub fn set_partitions(atoms: &[u64]) -> Vec<Vec<u64>> {
    fn rec(atoms: &[u64], idx: usize, blocks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if idx == atoms.len() {
            out.push(blocks.clone());
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] |= atoms[idx];
            rec(atoms, idx + 1, blocks, out);
            blocks[k] &= !atoms[idx];
        }
        blocks.push(atoms[idx]);
        rec(atoms, idx + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(atoms, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7)
            .map(|n| {
                let atoms: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
                set_partitions(&atoms).len()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn partitions_cover_atoms() {
        let atoms = [0b0011u64, 0b0100, 0b1000];
        for p in set_partitions(&atoms) {
            assert_eq!(p.iter().fold(0, |m, b| m | b), 0b1111);
            for b in &p {
                for a in &atoms {
                    assert!(b & a == 0 || b & a == *a);
                }
            }
        }
    }

    #[test]
    fn construction_is_validated() {
        assert!(Equivalence::from_blocks(3, &[vec![1, 2]]).is_err());
        assert!(Equivalence::from_blocks(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Equivalence::from_blocks(2, &[vec![1, 3]]).is_err());
        let e = Equivalence::from_blocks(3, &[vec![3], vec![1, 2]]).unwrap();
        assert_eq!(e.blocks(), &[0b011, 0b100]);
        assert_eq!(e.to_string(), "1,2 | 3");
        assert!(e.related(0, 1) && !e.related(1, 2));
        assert!(Equivalence::discrete(3).refines(&e));
        assert!(e.refines(&Equivalence::whole(3)));
        assert!(!Equivalence::whole(3).refines(&e));
    }
}
