//! Canonical representatives of isomorphism classes.
//!
//! Connected quasi-posets are labelled by a branch-and-bound search over
//! class orderings consistent with a colour refinement, with interchangeable
//! classes kept in a fixed relative order. Disconnected ones are the product
//! of their canonical components sorted by key.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use super::{bits, QuasiPoset};
use crate::error::{Error, Result};
use crate::linear::BasisText;

/// Byte encoding of a canonical representative: `n`, then each row
/// little-endian in `⌈n/8⌉` bytes. Orders first by vertex count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

const CACHE_LIMIT: usize = 1 << 18;

fn cache() -> &'static RwLock<HashMap<QuasiPoset, QuasiPoset>> {
    static CACHE: OnceLock<RwLock<HashMap<QuasiPoset, QuasiPoset>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn row_bytes(n: usize) -> usize {
    n.div_ceil(8)
}

impl CanonicalKey {
    fn encode(p: &QuasiPoset) -> Self {
        let w = row_bytes(p.n());
        let mut bytes = Vec::with_capacity(1 + w * p.n());
        bytes.push(p.n() as u8);
        for r in p.rows() {
            bytes.extend_from_slice(&r.to_le_bytes()[..w]);
        }
        CanonicalKey(bytes)
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Decodes a hex key, checking that it is a canonical representative.
    pub fn from_hex(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("malformed canonical key {s:?}"));
        if !s.len().is_multiple_of(2) || s.is_empty() {
            return Err(bad());
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2).ok_or_else(bad)?, 16).map_err(|_| bad()))
            .collect::<Result<Vec<u8>>>()?;
        let n = bytes[0] as usize;
        let w = row_bytes(n);
        if bytes.len() != 1 + n * w {
            return Err(bad());
        }
        let rows: Vec<u64> = bytes[1..]
            .chunks(w.max(1))
            .take(n)
            .map(|c| {
                let mut buf = [0u8; 8];
                buf[..c.len()].copy_from_slice(c);
                u64::from_le_bytes(buf)
            })
            .collect();
        let p = QuasiPoset::from_relation(n, &rows).map_err(|_| bad())?;
        if p.rows() != rows.as_slice() || p.canonical_form() != p {
            return Err(bad());
        }
        Ok(CanonicalKey(bytes))
    }

    /// The canonical representative this key encodes.
    pub fn representative(&self) -> QuasiPoset {
        let n = self.n();
        let w = row_bytes(n);
        let rows = (0..n)
            .map(|i| {
                let mut buf = [0u8; 8];
                buf[..w].copy_from_slice(&self.0[1 + i * w..1 + (i + 1) * w]);
                u64::from_le_bytes(buf)
            })
            .collect();
        QuasiPoset::from_closed_rows(rows)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.representative())
    }
}

impl BasisText for CanonicalKey {
    fn basis_text(&self) -> String {
        format!("{{{}}}", self.representative())
    }
}

impl QuasiPoset {
    /// The canonical representative of the isomorphism class.
    pub fn canonical_form(&self) -> QuasiPoset {
        if let Some(c) = cache().read().expect("cache poisoned").get(self) {
            return c.clone();
        }
        let c = compute_canonical(self);
        let mut guard = cache().write().expect("cache poisoned");
        if guard.len() >= CACHE_LIMIT {
            guard.clear();
        }
        guard.insert(self.clone(), c.clone());
        c
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey::encode(&self.canonical_form())
    }

    pub fn is_isomorphic(&self, other: &QuasiPoset) -> bool {
        self.n() == other.n() && self.canonical_form() == other.canonical_form()
    }
}

fn compute_canonical(p: &QuasiPoset) -> QuasiPoset {
    let comps = p.components();
    if comps.len() <= 1 {
        return canonical_connected(p);
    }
    let mut parts: Vec<QuasiPoset> = comps
        .iter()
        .map(|&c| p.restrict(c).canonical_form())
        .collect();
    parts.sort_by_key(CanonicalKey::encode);
    parts
        .iter()
        .fold(QuasiPoset::empty(), |acc, q| acc.product(q))
}

fn rank<T: Ord + Clone>(values: &[T]) -> (Vec<usize>, usize) {
    let mut distinct = values.to_vec();
    distinct.sort();
    distinct.dedup();
    let ranks = values
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect();
    (ranks, distinct.len())
}

/// Isomorphism-invariant colours of the classes.
fn refine(sizes: &[u32], up: &[u64], down: &[u64]) -> Vec<usize> {
    let initial: Vec<(u32, u32, u32)> = (0..sizes.len())
        .map(|c| (sizes[c], down[c].count_ones(), up[c].count_ones()))
        .collect();
    let (mut colors, mut count) = rank(&initial);
    loop {
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..sizes.len())
            .map(|c| {
                let mut u: Vec<usize> = bits(up[c]).map(|d| colors[d]).collect();
                let mut d: Vec<usize> = bits(down[c]).map(|d| colors[d]).collect();
                u.sort_unstable();
                d.sort_unstable();
                (colors[c], u, d)
            })
            .collect();
        let (next, next_count) = rank(&sig);
        if next_count == count {
            return colors;
        }
        colors = next;
        count = next_count;
    }
}

struct Search<'a> {
    up: &'a [u64],
    slots: Vec<Vec<usize>>,
    twins_before: Vec<u64>,
    placed: Vec<usize>,
    used: u64,
    code: Vec<u128>,
    best: Option<(Vec<u128>, Vec<usize>)>,
}

impl Search<'_> {
    fn step_code(&self, x: usize) -> u128 {
        self.placed.iter().enumerate().fold(0u128, |acc, (s, &y)| {
            let xy = (self.up[x] >> y & 1) as u128;
            let yx = (self.up[y] >> x & 1) as u128;
            acc | xy << (2 * s) | yx << (2 * s + 1)
        })
    }

    fn run(&mut self) {
        let t = self.placed.len();
        if t == self.slots.len() {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.code < *b,
            };
            if better {
                self.best = Some((self.code.clone(), self.placed.clone()));
            }
            return;
        }
        let candidates = self.slots[t].clone();
        for x in candidates {
            if self.used >> x & 1 == 1 || self.twins_before[x] & !self.used != 0 {
                continue;
            }
            let c = self.step_code(x);
            self.code.push(c);
            let prune = match &self.best {
                Some((b, _)) => self.code.as_slice() > &b[..=t],
                None => false,
            };
            if !prune {
                self.placed.push(x);
                self.used |= 1 << x;
                self.run();
                self.used &= !(1 << x);
                self.placed.pop();
            }
            self.code.pop();
        }
    }
}

fn canonical_connected(p: &QuasiPoset) -> QuasiPoset {
    if p.n() <= 1 {
        return p.clone();
    }
    let q = p.quotient();
    let up = &q.order;
    let down: Vec<u64> = (0..q.cl)
        .map(|c| (0..q.cl).filter(|&d| up[d] >> c & 1 == 1).fold(0, |m, d| m | 1 << d))
        .collect();
    let sizes: Vec<u32> = q.classes.iter().map(|c| c.count_ones()).collect();
    let colors = refine(&sizes, up, &down);

    let mut by_color: Vec<usize> = (0..q.cl).collect();
    by_color.sort_by_key(|&c| colors[c]);
    let slots: Vec<Vec<usize>> = by_color
        .iter()
        .map(|&c| {
            by_color
                .iter()
                .copied()
                .filter(|&d| colors[d] == colors[c])
                .collect()
        })
        .collect();
    let twins_before: Vec<u64> = (0..q.cl)
        .map(|y| {
            (0..y)
                .filter(|&x| sizes[x] == sizes[y] && up[x] == up[y] && down[x] == down[y])
                .fold(0, |m, x| m | 1 << x)
        })
        .collect();

    let mut search = Search {
        up,
        slots,
        twins_before,
        placed: Vec::with_capacity(q.cl),
        used: 0,
        code: Vec::with_capacity(q.cl),
        best: None,
    };
    search.run();
    let (_, order) = search.best.expect("at least one arrangement");

    let mut perm = vec![0usize; p.n()];
    let mut next = 0;
    for c in order {
        for v in bits(q.classes[c]) {
            perm[v] = next;
            next += 1;
        }
    }
    p.permuted(&perm)
}
