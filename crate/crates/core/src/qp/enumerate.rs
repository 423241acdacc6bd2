//! Exhaustive generation of quasi-posets and posets.

use std::collections::BTreeMap;

use super::{full_mask, QuasiPoset};
use crate::error::{Error, Result};

/// Largest `n` for labelled enumeration.
pub const MAX_LABELED: usize = 6;
/// Largest `n` for enumeration up to isomorphism.
pub const MAX_ISO: usize = 7;

/// All extensions of `q` by a new last vertex.
///
/// The new vertex sits above a down-set `D` and below an up-set `U` with
/// `D × U ⊆ ≤_q`; each quasi-order on `n + 1` vertices arises once.
fn extensions(q: &QuasiPoset, posets_only: bool) -> Vec<QuasiPoset> {
    let m = q.n();
    let all = full_mask(m);
    let downs: Vec<u64> = (0..=all)
        .filter(|&d| super::bits(d).all(|i| q.down_set(i) & !d == 0))
        .collect();
    let ups: Vec<u64> = (0..=all).filter(|&u| q.is_open(u)).collect();
    let new = 1u64 << m;
    let mut out = Vec::new();
    for &d in &downs {
        // vertices lying above all of D
        let above_d = super::bits(d).fold(all, |acc, i| acc & q.up_set(i));
        for &u in &ups {
            if u & !above_d != 0 || (posets_only && d & u != 0) {
                continue;
            }
            let mut rows: Vec<u64> = q.rows().to_vec();
            for i in super::bits(d) {
                rows[i] |= new | u;
            }
            rows.push(new | u);
            out.push(QuasiPoset::from_closed_rows(rows));
        }
    }
    out
}

fn check(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Capacity(format!(
            "enumeration limited to n <= {max}, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Every quasi-order (or partial order) on `{1..n}`, sorted.
pub fn enumerate_labeled(n: usize, posets_only: bool) -> Result<Vec<QuasiPoset>> {
    check(n, MAX_LABELED)?;
    let mut level = vec![QuasiPoset::empty()];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|q| extensions(q, posets_only))
            .collect();
    }
    level.sort();
    Ok(level)
}

/// Canonical representatives of the isomorphism classes, sorted by key.
pub fn enumerate_iso(n: usize, posets_only: bool) -> Result<Vec<QuasiPoset>> {
    check(n, MAX_ISO)?;
    let mut level = vec![QuasiPoset::empty()];
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for q in &level {
            for e in extensions(q, posets_only) {
                next.entry(e.canonical_key()).or_insert_with(|| e.canonical_form());
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// Connected canonical representatives on `n` vertices.
pub fn enumerate_connected_iso(n: usize, posets_only: bool) -> Result<Vec<QuasiPoset>> {
    Ok(enumerate_iso(n, posets_only)?
        .into_iter()
        .filter(|p| p.is_connected())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_labeled(n: usize, posets_only: bool) -> usize {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        (0u64..1 << cells.len())
            .filter(|mask| {
                let le = |i: usize, j: usize| {
                    i == j || {
                        let k = cells.iter().position(|&c| c == (i, j)).unwrap();
                        mask >> k & 1 == 1
                    }
                };
                let transitive = (0..n).all(|i| {
                    (0..n).all(|j| (0..n).all(|k| !(le(i, j) && le(j, k)) || le(i, k)))
                });
                let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(le(i, j) && le(j, i))));
                transitive && (!posets_only || antisym)
            })
            .count()
    }

    #[test]
    fn labeled_counts_match_brute_force() {
        for n in 0..=3 {
            assert_eq!(enumerate_labeled(n, false).unwrap().len(), brute_labeled(n, false));
            assert_eq!(enumerate_labeled(n, true).unwrap().len(), brute_labeled(n, true));
        }
    }

    #[test]
    fn labeled_counts() {
        let qp: Vec<usize> = (0..=5).map(|n| enumerate_labeled(n, false).unwrap().len()).collect();
        assert_eq!(qp, vec![1, 1, 4, 29, 355, 6942]);
        let p: Vec<usize> = (0..=5).map(|n| enumerate_labeled(n, true).unwrap().len()).collect();
        assert_eq!(p, vec![1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn labeled_entries_are_distinct() {
        let mut all = enumerate_labeled(4, false).unwrap();
        let len = all.len();
        all.dedup();
        assert_eq!(all.len(), len);
    }

    #[test]
    fn iso_counts() {
        let qp: Vec<usize> = (0..=6).map(|n| enumerate_iso(n, false).unwrap().len()).collect();
        assert_eq!(qp, vec![1, 1, 3, 9, 33, 139, 718]);
        let p: Vec<usize> = (0..=6).map(|n| enumerate_iso(n, true).unwrap().len()).collect();
        assert_eq!(p, vec![1, 1, 2, 5, 16, 63, 318]);
        let connected: Vec<usize> =
            (1..=5).map(|n| enumerate_connected_iso(n, true).unwrap().len()).collect();
        assert_eq!(connected, vec![1, 1, 3, 10, 44]);
    }

    #[test]
    fn iso_classes_agree_with_labeled_orbits() {
        for n in 0..=4 {
            let mut keys: Vec<_> = enumerate_labeled(n, false)
                .unwrap()
                .iter()
                .map(|p| p.canonical_key())
                .collect();
            keys.sort();
            keys.dedup();
            let iso: Vec<_> = enumerate_iso(n, false).unwrap().iter().map(|p| p.canonical_key()).collect();
            assert_eq!(keys, iso);
        }
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(enumerate_labeled(7, false), Err(Error::Capacity(_))));
        assert!(matches!(enumerate_iso(8, true), Err(Error::Capacity(_))));
    }
}
