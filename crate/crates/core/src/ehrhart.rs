//! Weak and strict order-preserving maps, surjection words, the two Ehrhart
//! polynomials, heap statistics, linear extensions and the corolla route to
//! Bernoulli numbers.

use std::collections::{BTreeSet, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{binomial, factorial};
use crate::qp::{bits, full_mask};
use crate::{int, CanonicalKey, PackedWord, Polynomial, QuasiPoset, QuotientView, Rational};

/// Weak maps satisfy `i ≤ j ⟹ f(i) ≤ f(j)`; strict maps additionally send
/// only equivalent vertices to equal values along the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountMode {
    Weak,
    Strict,
}

/// Largest `k^n` the brute-force counter will scan.
pub const MAX_BRUTE_MAPS: u64 = 20_000_000;

fn respects(p: &QuasiPoset, f: &[usize], mode: CountMode) -> bool {
    let n = p.n();
    (0..n).all(|i| {
        bits(p.up_set(i)).all(|j| {
            f[i] < f[j] || (f[i] == f[j] && (mode == CountMode::Weak || p.le(j, i)))
        })
    })
}

/// `|L_P(k)|` or `|L^str_P(k)|` by scanning all `k^n` maps.
pub fn count_maps(p: &QuasiPoset, k: usize, mode: CountMode) -> Result<u64> {
    let n = p.n();
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|t| *t <= MAX_BRUTE_MAPS)
        .ok_or_else(|| Error::Capacity(format!("{k}^{n} maps exceed the brute-force limit")))?;
    if n == 0 {
        return Ok(1);
    }
    let mut f = vec![0usize; n];
    let mut count = 0;
    for _ in 0..total {
        if respects(p, &f, mode) {
            count += 1;
        }
        for d in f.iter_mut() {
            *d += 1;
            if *d < k {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}

/// Candidate level sets for the lowest remaining level.
///
/// `remaining` is a set of classes. Weak levels are non-empty down-sets of
/// the remaining poset; strict levels are non-empty sets of its minimal
/// classes.
fn levels(q: &QuotientView, remaining: u64, mode: CountMode) -> Vec<u64> {
    let below = |c: usize| -> u64 {
        (0..q.cl)
            .filter(|&d| q.order[d] >> c & 1 == 1)
            .fold(0u64, |m, d| m | 1 << d)
    };
    let mut out = Vec::new();
    match mode {
        CountMode::Weak => {
            let mut sub = remaining;
            while sub != 0 {
                if bits(sub).all(|c| below(c) & remaining & !sub == 0) {
                    out.push(sub);
                }
                sub = (sub - 1) & remaining;
            }
        }
        CountMode::Strict => {
            let minimal = bits(remaining)
                .filter(|&c| below(c) & remaining == 0)
                .fold(0u64, |m, c| m | 1 << c);
            let mut sub = minimal;
            while sub != 0 {
                out.push(sub);
                sub = (sub - 1) & minimal;
            }
        }
    }
    out
}

/// `W_P(i)` (or its strict analogue) for `i = 0..=n`, as words on vertices.
///
/// Index 0 holds the empty word exactly when `P` is empty.
pub fn surjection_words(p: &QuasiPoset, mode: CountMode) -> Vec<BTreeSet<PackedWord>> {
    let q = p.quotient();
    let mut out = vec![BTreeSet::new(); p.n() + 1];
    fn rec(
        q: &QuotientView,
        mode: CountMode,
        remaining: u64,
        word: &mut Vec<usize>,
        level: usize,
        out: &mut [BTreeSet<PackedWord>],
    ) {
        if remaining == 0 {
            out[level].insert(PackedWord::from_packed(word.clone()));
            return;
        }
        for set in levels(q, remaining, mode) {
            for c in bits(set) {
                for v in bits(q.classes[c]) {
                    word[v] = level + 1;
                }
            }
            rec(q, mode, remaining & !set, word, level + 1, out);
        }
    }
    let mut word = vec![0usize; p.n()];
    rec(&q, mode, full_mask(q.cl), &mut word, 0, &mut out);
    out
}

/// `|W_P(i)|` for `i = 0..=cl(P)`, by dynamic programming over remaining sets.
pub fn surjection_counts(p: &QuasiPoset, mode: CountMode) -> Vec<BigInt> {
    let q = p.quotient();
    let mut memo: HashMap<u64, Vec<BigInt>> = HashMap::new();
    fn rec(
        q: &QuotientView,
        mode: CountMode,
        remaining: u64,
        memo: &mut HashMap<u64, Vec<BigInt>>,
    ) -> Vec<BigInt> {
        if remaining == 0 {
            return vec![BigInt::one()];
        }
        if let Some(v) = memo.get(&remaining) {
            return v.clone();
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); remaining.count_ones() as usize + 1];
        for set in levels(q, remaining, mode) {
            for (i, c) in rec(q, mode, remaining & !set, memo).into_iter().enumerate() {
                acc[i + 1] += c;
            }
        }
        memo.insert(remaining, acc.clone());
        acc
    }
    rec(&q, mode, full_mask(q.cl), &mut memo)
}

type EhrMemo = RwLock<HashMap<(CanonicalKey, CountMode), Polynomial>>;

fn ehr_memo() -> &'static EhrMemo {
    static MEMO: OnceLock<EhrMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn recursive_memo() -> &'static EhrMemo {
    static MEMO: OnceLock<EhrMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn ehr_connected(p: &QuasiPoset, mode: CountMode) -> Polynomial {
    let key = (p.quotient_poset().canonical_key(), mode);
    if let Some(e) = ehr_memo().read().expect("memo poisoned").get(&key) {
        return e.clone();
    }
    let coords: Vec<Rational> = surjection_counts(p, mode)
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    let e = Polynomial::from_hilbert(&coords);
    ehr_memo()
        .write()
        .expect("memo poisoned")
        .insert(key, e.clone());
    e
}

/// `ehr_P = Σ_i |W_P(i)| H_i`, multiplied over connected components.
pub fn ehr_polynomial(p: &QuasiPoset, mode: CountMode) -> Polynomial {
    p.components()
        .into_iter()
        .fold(Polynomial::one(), |acc, c| &acc * &ehr_connected(&p.restrict(c), mode))
}

/// The same polynomial through `ehr_P = L(Σ_{O≠∅} ehr_{P|[n]∖O})`; the
/// strict variant keeps only open sets inducing discrete restrictions.
pub fn ehr_recursive(p: &QuasiPoset, mode: CountMode) -> Polynomial {
    if p.is_empty() {
        return Polynomial::one();
    }
    let key = (p.canonical_key(), mode);
    if let Some(e) = recursive_memo().read().expect("memo poisoned").get(&key) {
        return e.clone();
    }
    let all = p.vertex_mask();
    let sum: Polynomial = p
        .open_sets()
        .into_iter()
        .filter(|&o| o != 0 && (mode == CountMode::Weak || p.restrict(o).is_discrete()))
        .map(|o| ehr_recursive(&p.restrict(all & !o), mode))
        .sum();
    let e = sum.l_operator();
    recursive_memo()
        .write()
        .expect("memo poisoned")
        .insert(key, e.clone());
    e
}

/// Heap-ordering count, `P!` and `λ_P`, all on the quotient poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapStats {
    pub mu: BigInt,
    pub p_factorial: BigInt,
    pub lambda: Rational,
}

/// Number of linear extensions of the quotient poset.
pub fn count_linear_extensions(p: &QuasiPoset) -> BigInt {
    let q = p.quotient();
    let below: Vec<u64> = (0..q.cl)
        .map(|c| (0..q.cl).filter(|&d| q.order[d] >> c & 1 == 1).fold(0, |m, d| m | 1 << d))
        .collect();
    let mut memo: HashMap<u64, BigInt> = HashMap::new();
    fn rec(below: &[u64], placed: u64, full: u64, memo: &mut HashMap<u64, BigInt>) -> BigInt {
        if placed == full {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&placed) {
            return v.clone();
        }
        let total = bits(full & !placed)
            .filter(|&c| below[c] & !placed == 0)
            .map(|c| rec(below, placed | 1 << c, full, memo))
            .sum();
        memo.insert(placed, total);
        memo[&placed].clone()
    }
    rec(&below, 0, full_mask(q.cl), &mut memo)
}

pub fn heap_stats(p: &QuasiPoset) -> HeapStats {
    let q = p.quotient();
    let mu = count_linear_extensions(p);
    let p_factorial = q
        .order
        .iter()
        .map(|o| BigInt::from(o.count_ones() + 1))
        .product();
    let lambda = Rational::from_integer(mu.clone()) / factorial(q.cl);
    HeapStats {
        mu,
        p_factorial,
        lambda,
    }
}

/// Whether the quotient poset has no induced `Λ` (two incomparable classes
/// below a common one), i.e. it is a forest rooted at its minima.
pub fn is_lambda_free(p: &QuasiPoset) -> bool {
    let q = p.quotient();
    (0..q.cl).all(|top| {
        let lower: Vec<usize> = (0..q.cl).filter(|&c| q.order[c] >> top & 1 == 1).collect();
        lower.iter().all(|&a| {
            lower
                .iter()
                .all(|&b| a == b || q.order[a] >> b & 1 == 1 || q.order[b] >> a & 1 == 1)
        })
    })
}

/// Strict surjective words whose fibres are exactly the `∼_P` classes.
pub fn linear_extensions(p: &QuasiPoset) -> BTreeSet<PackedWord> {
    let q = p.quotient();
    let mut out = BTreeSet::new();
    fn rec(
        q: &QuotientView,
        remaining: u64,
        word: &mut Vec<usize>,
        level: usize,
        out: &mut BTreeSet<PackedWord>,
    ) {
        if remaining == 0 {
            out.insert(PackedWord::from_packed(word.clone()));
            return;
        }
        for c in bits(remaining) {
            let blocked = (0..q.cl).any(|d| remaining >> d & 1 == 1 && q.order[d] >> c & 1 == 1);
            if blocked {
                continue;
            }
            for v in bits(q.classes[c]) {
                word[v] = level + 1;
            }
            rec(q, remaining & !(1 << c), word, level + 1, out);
        }
    }
    let mut word = vec![0usize; p.n()];
    rec(&q, full_mask(q.cl), &mut word, 0, &mut out);
    out
}

/// The quasi-order with `i ≤ j` iff every word has `w(i) ≤ w(j)`.
pub fn reconstruct_order<'a, I>(words: I, n: usize) -> Result<QuasiPoset>
where
    I: IntoIterator<Item = &'a PackedWord>,
{
    let mut rows = vec![full_mask(n); n];
    let mut seen = false;
    for w in words {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: n,
            });
        }
        seen = true;
        let l = w.letters();
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                if l[i] > l[j] {
                    *row &= !(1 << j);
                }
            }
        }
    }
    if !seen {
        return Err(Error::Invalid("no words to reconstruct from".into()));
    }
    QuasiPoset::from_relation(n, &rows)
}

/// `b_k` as `α^str` of the corolla with `k` leaves (`b₁ = −1/2`).
pub fn bernoulli(k: usize) -> Rational {
    ehr_polynomial(&QuasiPoset::corolla(k), CountMode::Strict).derivative_at_zero()
}

/// `S_k` with `S_k(n) = 1^k + … + (n−1)^k`.
pub fn faulhaber(k: usize) -> Polynomial {
    let mut s: Polynomial = (0..=k)
        .map(|i| {
            let c = binomial(k, i) * bernoulli(i) / int((k - i + 1) as i64);
            Polynomial::monomial(c, k - i + 1)
        })
        .sum();
    if k == 0 {
        // the closed form counts 0^0 once
        s = &s - &Polynomial::one();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{enumerate_iso, enumerate_labeled};
    use crate::rat;

    fn qp(s: &str) -> QuasiPoset {
        s.parse().unwrap()
    }
    fn w(s: &str) -> PackedWord {
        s.parse().unwrap()
    }
    fn poly(cs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_coeffs(cs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    /// Every function `[n] → [k]` with surjective image, filtered by the map condition.
    fn brute_words(p: &QuasiPoset, mode: CountMode) -> BTreeSet<PackedWord> {
        let n = p.n();
        let mut out = BTreeSet::new();
        for k in 1..=n {
            let total = k.pow(n as u32);
            for mut code in 0..total {
                let f: Vec<usize> = (0..n)
                    .map(|_| {
                        let d = code % k;
                        code /= k;
                        d
                    })
                    .collect();
                let surjective = (0..k).all(|v| f.contains(&v));
                if surjective && respects(p, &f, mode) {
                    out.insert(PackedWord::from_packed(f.iter().map(|d| d + 1).collect()));
                }
            }
        }
        out
    }

    #[test]
    fn count_map_examples() {
        assert_eq!(count_maps(&QuasiPoset::chain(2), 2, CountMode::Weak).unwrap(), 3);
        assert_eq!(count_maps(&qp("3: 1<2 1<3"), 2, CountMode::Strict).unwrap(), 1);
        for p in enumerate_labeled(3, false).unwrap() {
            let expected = u64::from(p.is_discrete());
            assert_eq!(count_maps(&p, 1, CountMode::Strict).unwrap(), expected);
        }
        assert_eq!(count_maps(&QuasiPoset::empty(), 0, CountMode::Weak).unwrap(), 1);
        assert_eq!(count_maps(&QuasiPoset::point(), 0, CountMode::Weak).unwrap(), 0);
        assert!(count_maps(&QuasiPoset::antichain(20), 10, CountMode::Weak).is_err());
    }

    #[test]
    fn surjection_word_examples() {
        let c2 = surjection_words(&QuasiPoset::chain(2), CountMode::Weak);
        assert_eq!(c2[1], [w("(11)")].into());
        assert_eq!(c2[2], [w("(12)")].into());
        let v = qp("3: 1<2 1<3");
        let strict = surjection_words(&v, CountMode::Strict);
        assert_eq!(strict[2], [w("(122)")].into());
        assert_eq!(strict[3], [w("(123)"), w("(132)")].into());
        let weak: BTreeSet<PackedWord> =
            surjection_words(&v, CountMode::Weak).into_iter().flatten().collect();
        let expected: BTreeSet<PackedWord> = ["(123)", "(132)", "(122)", "(112)", "(121)", "(111)"]
            .iter()
            .map(|s| w(s))
            .collect();
        assert_eq!(weak, expected);
    }

    #[test]
    fn surjection_words_match_brute_force() {
        for n in 0..=4 {
            for p in enumerate_labeled(n, false).unwrap().iter().step_by(3) {
                for mode in [CountMode::Weak, CountMode::Strict] {
                    let words = surjection_words(p, mode);
                    let flat: BTreeSet<PackedWord> = words.iter().flatten().cloned().collect();
                    if n > 0 {
                        assert_eq!(flat, brute_words(p, mode), "{p} {mode:?}");
                    }
                    for (i, set) in words.iter().enumerate() {
                        assert!(set.iter().all(|w| w.max_letter() == i));
                    }
                    let counts = surjection_counts(p, mode);
                    for (i, set) in words.iter().enumerate() {
                        let c = counts.get(i).cloned().unwrap_or_default();
                        assert_eq!(BigInt::from(set.len()), c);
                    }
                }
            }
        }
    }

    #[test]
    fn ehr_examples() {
        let v = qp("3: 1<2 1<3");
        assert_eq!(ehr_polynomial(&v, CountMode::Weak), poly(&[(0, 1), (1, 6), (1, 2), (1, 3)]));
        assert_eq!(
            ehr_polynomial(&QuasiPoset::chain(3), CountMode::Strict),
            poly(&[(0, 1), (1, 3), (-1, 2), (1, 6)])
        );
        assert_eq!(
            ehr_polynomial(&QuasiPoset::antichain(2), CountMode::Weak),
            poly(&[(0, 1), (0, 1), (1, 1)])
        );
        assert_eq!(ehr_polynomial(&QuasiPoset::empty(), CountMode::Strict), Polynomial::one());
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(
            ehr_recursive(&QuasiPoset::chain(2), CountMode::Weak),
            poly(&[(0, 1), (1, 2), (1, 2)])
        );
        for mode in [CountMode::Weak, CountMode::Strict] {
            assert_eq!(ehr_recursive(&QuasiPoset::point(), mode), Polynomial::x());
        }
        assert_eq!(
            ehr_recursive(&qp("3: 1<2 1<3"), CountMode::Strict),
            poly(&[(0, 1), (1, 6), (-1, 2), (1, 3)])
        );
    }

    #[test]
    fn polynomial_paths_agree_with_counting() {
        for n in 0..=4 {
            for p in enumerate_iso(n, false).unwrap() {
                for mode in [CountMode::Weak, CountMode::Strict] {
                    let e = ehr_polynomial(&p, mode);
                    assert_eq!(e, ehr_recursive(&p, mode), "{p}");
                    assert_eq!(e.degree(), Some(p.cl()));
                    for k in 0..=4 {
                        let count = count_maps(&p, k, mode).unwrap();
                        assert_eq!(e.eval_int(k as i64), int(count as i64), "{p} {mode:?} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn heap_stat_examples() {
        let lam = qp("3: 1<3 2<3");
        let h = heap_stats(&lam);
        assert_eq!(h.mu, BigInt::from(2));
        assert_eq!(h.lambda, rat(1, 3));
        assert_eq!(h.p_factorial, BigInt::from(4));
        let c3 = heap_stats(&QuasiPoset::chain(3));
        assert_eq!(c3.p_factorial, BigInt::from(6));
        assert_eq!(c3.lambda, rat(1, 6));
        assert!(is_lambda_free(&QuasiPoset::chain(3)));
        assert!(!is_lambda_free(&lam));
    }

    #[test]
    fn forest_dichotomy() {
        for n in 1..=5 {
            for p in enumerate_iso(n, true).unwrap() {
                let h = heap_stats(&p);
                let bound = Rational::new(BigInt::one(), h.p_factorial.clone());
                assert!(h.lambda >= bound);
                assert_eq!(h.lambda == bound, is_lambda_free(&p), "{p}");
            }
        }
    }

    #[test]
    fn linear_extension_examples() {
        let v = qp("3: 1<2 1<3");
        assert_eq!(linear_extensions(&v), [w("(123)"), w("(132)")].into());
        assert_eq!(linear_extensions(&QuasiPoset::single_class(2)), [w("(11)")].into());
        assert_eq!(linear_extensions(&QuasiPoset::chain(3)), [w("(123)")].into());
        for p in enumerate_iso(4, false).unwrap() {
            assert_eq!(BigInt::from(linear_extensions(&p).len()), heap_stats(&p).mu);
        }
    }

    #[test]
    fn reconstruction_examples() {
        let v = qp("3: 1<2 1<3");
        let strict = surjection_words(&v, CountMode::Strict);
        assert_eq!(reconstruct_order(strict.iter().flatten(), 3).unwrap(), v);
        assert_eq!(
            reconstruct_order([w("(11)")].iter(), 2).unwrap(),
            QuasiPoset::single_class(2)
        );
        let all = [w("(11)"), w("(12)"), w("(21)")];
        assert_eq!(reconstruct_order(all.iter(), 2).unwrap(), QuasiPoset::antichain(2));
        assert!(reconstruct_order([w("(1)")].iter(), 2).is_err());
        assert!(reconstruct_order(std::iter::empty(), 2).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
    }

    #[test]
    fn faulhaber_values() {
        assert_eq!(faulhaber(1), poly(&[(0, 1), (-1, 2), (1, 2)]));
        assert_eq!(faulhaber(0), poly(&[(-1, 1), (1, 1)]));
        assert_eq!(faulhaber(3).eval_int(5), int(100));
    }
}
