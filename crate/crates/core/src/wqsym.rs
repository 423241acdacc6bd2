//! The Hopf algebra of packed words and the morphisms into it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::ehrhart::{surjection_words, CountMode};
use crate::error::{Error, Result};
use crate::linear::BasisText;
use crate::{LinComb, Polynomial, QuasiPoset, Rational};

/// A word on `1..=max` using every letter at least once.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedWord(Vec<usize>);

pub type WordComb = LinComb<PackedWord>;

impl PackedWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let max = letters.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; max + 1];
        for &l in &letters {
            if l == 0 {
                return Err(Error::NotPacked("letters must be positive".into()));
            }
            seen[l] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::NotPacked(format!("{letters:?} skips a letter")));
        }
        Ok(PackedWord(letters))
    }

    pub(crate) fn from_packed(letters: Vec<usize>) -> Self {
        debug_assert!(PackedWord::new(letters.clone()).is_ok());
        PackedWord(letters)
    }

    /// Relabels the letters increasingly onto `1..=k`.
    pub fn pack(word: &[usize]) -> Self {
        let mut values = word.to_vec();
        values.sort_unstable();
        values.dedup();
        PackedWord(
            word.iter()
                .map(|x| values.binary_search(x).expect("present") + 1)
                .collect(),
        )
    }

    pub fn empty() -> Self {
        PackedWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter; zero for the empty word.
    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `w_I`: the subword of letters in `I`, unpacked.
    pub fn restrict_letters(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.0.iter().copied().filter(|&l| keep(l)).collect()
    }

    /// `σ ∘ w` for a word `σ` of length `max(w)`.
    pub fn compose(&self, sigma: &[usize]) -> PackedWord {
        debug_assert_eq!(sigma.len(), self.max_letter());
        PackedWord::pack(&self.0.iter().map(|&l| sigma[l - 1]).collect::<Vec<_>>())
    }

    fn shifted_concat(&self, other: &PackedWord, shift: usize) -> PackedWord {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().map(|l| l + shift));
        PackedWord(letters)
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.max_letter() > 9 { "," } else { "" };
        let body: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(sep))
    }
}

impl fmt::Debug for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl BasisText for PackedWord {
    fn basis_text(&self) -> String {
        self.to_string()
    }
}

/// Parses `(122)`, `(1,2,2,10)` or `()`; the parentheses are optional.
impl FromStr for PackedWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        let letters: Result<Vec<usize>> = if inner.contains(',') {
            inner
                .split(',')
                .map(|x| {
                    x.trim().parse().map_err(|_| Error::Syntax {
                        pos: 0,
                        msg: format!("bad letter {x:?}"),
                    })
                })
                .collect()
        } else {
            inner
                .chars()
                .enumerate()
                .filter(|(_, c)| !c.is_whitespace())
                .map(|(i, c)| {
                    c.to_digit(10).map(|d| d as usize).ok_or(Error::Syntax {
                        pos: i,
                        msg: format!("bad letter {c:?}"),
                    })
                })
                .collect()
        };
        PackedWord::new(letters?)
    }
}

/// All packed words of length `n`, sorted.
pub fn packed_words(n: usize) -> Vec<PackedWord> {
    // restricted growth strings, one per set partition of the positions
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<PackedWord>) {
        if cur.len() == n {
            out.push(PackedWord(cur.clone()));
            return;
        }
        for l in 1..=max + 1 {
            cur.push(l);
            rec(n, max.max(l), cur, out);
            cur.pop();
        }
    }
    let mut growth = Vec::new();
    rec(n, 0, &mut Vec::new(), &mut growth);
    let mut all: Vec<PackedWord> = growth.iter().flat_map(value_permutations).collect();
    all.sort();
    all
}

fn value_permutations(w: &PackedWord) -> Vec<PackedWord> {
    let k = w.max_letter();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for i in 1..=k {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=p.len()).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    q
                })
            })
            .collect();
    }
    perms
        .into_iter()
        .map(|sigma| PackedWord(w.0.iter().map(|&l| sigma[l - 1]).collect()))
        .collect()
}

/// Non-decreasing surjections `[k] → [l]`, one per composition of `k`.
pub fn nondecreasing_surjections(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0u64..1 << (k - 1))
        .map(|cuts| {
            let mut sigma = vec![1usize];
            for i in 1..k {
                let next = sigma[i - 1] + (cuts >> (i - 1) & 1) as usize;
                sigma.push(next);
            }
            sigma
        })
        .collect()
}

/// Quasi-shuffle of the value axes of `u` and `v`.
pub fn product(u: &PackedWord, v: &PackedWord) -> WordComb {
    let (a, b) = (u.max_letter(), v.max_letter());
    let mut out = WordComb::zero();
    let mut f = vec![0usize; a];
    let mut g = vec![0usize; b];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        u: &PackedWord,
        v: &PackedWord,
        i: usize,
        j: usize,
        m: usize,
        f: &mut [usize],
        g: &mut [usize],
        out: &mut WordComb,
    ) {
        if i == f.len() && j == g.len() {
            let mut letters: Vec<usize> = u.0.iter().map(|&l| f[l - 1]).collect();
            letters.extend(v.0.iter().map(|&l| g[l - 1]));
            out.add_term(PackedWord(letters), Rational::one());
            return;
        }
        if i < f.len() {
            f[i] = m + 1;
            rec(u, v, i + 1, j, m + 1, f, g, out);
        }
        if j < g.len() {
            g[j] = m + 1;
            rec(u, v, i, j + 1, m + 1, f, g, out);
        }
        if i < f.len() && j < g.len() {
            f[i] = m + 1;
            g[j] = m + 1;
            rec(u, v, i + 1, j + 1, m + 1, f, g, out);
        }
    }
    rec(u, v, 0, 0, 0, &mut f, &mut g, &mut out);
    out
}

pub fn product_comb(x: &WordComb, y: &WordComb) -> WordComb {
    x.bilinear(y, product)
}

/// `Δ(w) = Σ_k w_{1..k} ⊗ Pack(w_{k+1..max})`.
pub fn coproduct(w: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
    (0..=w.max_letter())
        .map(|k| {
            (
                PackedWord(w.restrict_letters(|l| l <= k)),
                PackedWord::pack(&w.restrict_letters(|l| l > k)),
            )
        })
        .collect()
}

pub fn coproduct_comb(x: &WordComb) -> LinComb<(PackedWord, PackedWord)> {
    x.map_linear(coproduct)
}

/// `δ(w) = Σ (σ∘w) ⊗ (τ∘w)` over `σ` non-decreasing and `τ` increasing on
/// each fibre of `σ`.
pub fn internal_coproduct(w: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
    let k = w.max_letter();
    let taus = packed_words(k);
    let mut out = LinComb::zero();
    for sigma in nondecreasing_surjections(k) {
        let left = w.compose(&sigma);
        for tau in &taus {
            let t = tau.letters();
            let ok = (0..k).all(|i| (i + 1..k).all(|j| sigma[i] != sigma[j] || t[i] < t[j]));
            if ok {
                out.add_term((left.clone(), w.compose(t)), Rational::one());
            }
        }
    }
    out
}

pub fn internal_coproduct_comb(x: &WordComb) -> LinComb<(PackedWord, PackedWord)> {
    x.map_linear(internal_coproduct)
}

/// Counit of `Δ`: one on the empty word.
pub fn counit(x: &WordComb) -> Rational {
    x.pair(|w| if w.is_empty() { Rational::one() } else { Rational::zero() })
}

/// Counit of `δ`: one on the constant words `(1…1)`, the empty word included.
pub fn internal_counit(x: &WordComb) -> Rational {
    x.pair(|w| if w.max_letter() <= 1 { Rational::one() } else { Rational::zero() })
}

/// The three ordinal products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordinal {
    /// Shift the right word by `max(u)`.
    Down,
    /// Shift the right word by `max(u) − 1`; zero if either word is empty.
    Star,
    /// `Down + Star`.
    Lightning,
}

pub fn ordinal_product(u: &PackedWord, v: &PackedWord, mode: Ordinal) -> WordComb {
    let down = || LinComb::basis(u.shifted_concat(v, u.max_letter()));
    let star = || {
        if u.is_empty() || v.is_empty() {
            WordComb::zero()
        } else {
            LinComb::basis(u.shifted_concat(v, u.max_letter() - 1))
        }
    };
    match mode {
        Ordinal::Down => down(),
        Ordinal::Star => star(),
        Ordinal::Lightning => &down() + &star(),
    }
}

pub fn ordinal_comb(x: &WordComb, y: &WordComb, mode: Ordinal) -> WordComb {
    x.bilinear(y, |u, v| ordinal_product(u, v, mode))
}

/// `EHR` / `EHR^str`: each quasi-poset goes to the sum of its surjection words.
pub fn ehr_morphism(x: &LinComb<QuasiPoset>, mode: CountMode) -> WordComb {
    x.map_linear(|p| surjection_words(p, mode).into_iter().flatten().collect())
}

/// `Φ_λ(w) = Σ_σ Π_p H_{|σ⁻¹(p)|}(λ) · σ∘w` over non-decreasing surjections.
pub fn phi_automorphism(x: &WordComb, lambda: &Rational) -> WordComb {
    let mut h_cache: HashMap<usize, Rational> = HashMap::new();
    let mut h = |k: usize| {
        h_cache
            .entry(k)
            .or_insert_with(|| Polynomial::hilbert(k).eval(lambda))
            .clone()
    };
    x.map_linear(|w| {
        let mut out = WordComb::zero();
        for sigma in nondecreasing_surjections(w.max_letter()) {
            let l = sigma.last().copied().unwrap_or(0);
            let coeff = (1..=l).fold(Rational::one(), |acc, p| {
                acc * h(sigma.iter().filter(|&&s| s == p).count())
            });
            out.add_term(w.compose(&sigma), coeff);
        }
        out
    })
}

/// `H(w) = H_{max(w)}(X)`.
pub fn h_morphism(x: &WordComb) -> Polynomial {
    x.iter()
        .map(|(w, c)| Polynomial::hilbert(w.max_letter()).scale(c))
        .sum()
}

/// `w ≤ w′` iff `w(i) < w(j) ⟹ w′(i) < w′(j)`.
pub fn word_leq(w: &PackedWord, w2: &PackedWord) -> Result<bool> {
    if w.len() != w2.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: w2.len(),
        });
    }
    let (a, b) = (w.letters(), w2.letters());
    Ok((0..a.len()).all(|i| (0..a.len()).all(|j| a[i] >= a[j] || b[i] < b[j])))
}

/// The poset with `i ≤ j` iff `i = j` or `w(i) < w(j)`.
pub fn poset_from_word(w: &PackedWord) -> QuasiPoset {
    let l = w.letters();
    let rows: Vec<u64> = (0..l.len())
        .map(|i| {
            (0..l.len())
                .filter(|&j| i == j || l[i] < l[j])
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();
    QuasiPoset::from_relation(l.len(), &rows).expect("word length within capacity")
}

/// An element of the poset algebra whose `EHR^str` image is exactly `w`.
///
/// Solves the triangular system `EHR^str(P_w) = Σ_{w ≤ w′} w′` downward
/// from the maximal words.
pub fn preimage(w: &PackedWord) -> LinComb<QuasiPoset> {
    fn rec(w: &PackedWord, memo: &mut HashMap<PackedWord, LinComb<QuasiPoset>>) -> LinComb<QuasiPoset> {
        if let Some(x) = memo.get(w) {
            return x.clone();
        }
        let mut x = LinComb::basis(poset_from_word(w));
        for w2 in packed_words(w.len()) {
            if &w2 != w && word_leq(w, &w2).expect("equal lengths") {
                x -= &rec(&w2, memo);
            }
        }
        memo.insert(w.clone(), x.clone());
        x
    }
    rec(w, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn w(s: &str) -> PackedWord {
        s.parse().unwrap()
    }
    fn sum(words: &[&str]) -> WordComb {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn packing() {
        assert_eq!(PackedWord::pack(&[4, 2, 5]), w("(213)"));
        assert_eq!(PackedWord::pack(&[1, 1]), w("(11)"));
        assert_eq!(PackedWord::pack(&[]), PackedWord::empty());
        assert!(PackedWord::new(vec![1, 3]).is_err());
        assert!(PackedWord::new(vec![0]).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(w("(122)").to_string(), "(122)");
        assert_eq!(PackedWord::empty().to_string(), "()");
        let long = PackedWord::pack(&(1..=10).collect::<Vec<_>>());
        assert_eq!(long.to_string(), "(1,2,3,4,5,6,7,8,9,10)");
        assert_eq!(long.to_string().parse::<PackedWord>().unwrap(), long);
        assert_eq!(w("122"), w("(122)"));
        assert!("(1x)".parse::<PackedWord>().is_err());
    }

    #[test]
    fn letter_restriction() {
        assert_eq!(w("(212)").restrict_letters(|l| l == 1), vec![1]);
        assert_eq!(w("(312)").restrict_letters(|l| l <= 2), vec![1, 2]);
        let x = w("(2132)");
        assert_eq!(x.restrict_letters(|l| l <= x.max_letter()), x.letters());
    }

    #[test]
    fn fubini_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| packed_words(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 13, 75, 541]);
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(&w("11"), &w("11")), sum(&["1111", "1122", "2211"]));
        assert_eq!(
            product(&w("12"), &w("11")),
            sum(&["1211", "1222", "1233", "1322", "2311"])
        );
        assert_eq!(product(&PackedWord::empty(), &w("21")), sum(&["21"]));
    }

    #[test]
    fn coproduct_examples() {
        let e = PackedWord::empty();
        let pair = |a: PackedWord, b: PackedWord| LinComb::basis((a, b));
        assert_eq!(
            coproduct(&w("212")),
            &(&pair(w("212"), e.clone()) + &pair(w("1"), w("11"))) + &pair(e.clone(), w("212"))
        );
        assert_eq!(coproduct(&e), pair(e.clone(), e.clone()));
    }

    #[test]
    fn internal_coproduct_examples() {
        let pair = |a: &str, b: &str| LinComb::basis((w(a), w(b)));
        assert_eq!(internal_coproduct(&w("11")), pair("11", "11"));
        let expected = &(&(&pair("12", "11") + &pair("12", "12")) + &pair("12", "21")) + &pair("11", "12");
        assert_eq!(internal_coproduct(&w("12")), expected);
    }

    #[test]
    fn ordinal_examples() {
        let one = w("1");
        assert_eq!(ordinal_product(&one, &one, Ordinal::Down), sum(&["12"]));
        assert_eq!(ordinal_product(&one, &one, Ordinal::Star), sum(&["11"]));
        assert_eq!(ordinal_product(&one, &one, Ordinal::Lightning), sum(&["12", "11"]));
    }

    #[test]
    fn ehr_morphism_examples() {
        let b = |s: &str| LinComb::basis(s.parse::<QuasiPoset>().unwrap());
        assert_eq!(ehr_morphism(&b("2: 1<2"), CountMode::Weak), sum(&["12", "11"]));
        assert_eq!(ehr_morphism(&b("2: 1<2"), CountMode::Strict), sum(&["12"]));
        assert_eq!(ehr_morphism(&b("2:"), CountMode::Weak), sum(&["12", "21", "11"]));
        assert_eq!(ehr_morphism(&b("2: 1~2"), CountMode::Weak), sum(&["11"]));
    }

    #[test]
    fn phi_examples() {
        let m1 = -Rational::one();
        assert_eq!(phi_automorphism(&sum(&["12"]), &m1), sum(&["12", "11"]));
        assert_eq!(phi_automorphism(&sum(&["1"]), &m1), -sum(&["1"]));
        let x = sum(&["12"]);
        assert_eq!(phi_automorphism(&phi_automorphism(&x, &m1), &m1), x);
        assert_eq!(phi_automorphism(&x, &Rational::one()), x);
    }

    #[test]
    fn h_examples() {
        let c2 = Polynomial::from_coeffs(vec![int(0), rat(1, 2), rat(1, 2)]);
        assert_eq!(h_morphism(&sum(&["12", "11"])), c2);
        assert_eq!(h_morphism(&sum(&[""])), Polynomial::one());
        assert_eq!(h_morphism(&sum(&["212"])), Polynomial::hilbert(2));
    }

    #[test]
    fn order_examples() {
        assert!(word_leq(&w("122"), &w("123")).unwrap());
        assert!(!word_leq(&w("123"), &w("122")).unwrap());
        for x in packed_words(3) {
            assert!(word_leq(&x, &x).unwrap());
        }
        assert!(word_leq(&w("12"), &w("123")).is_err());
    }

    #[test]
    fn poset_from_word_examples() {
        let p = poset_from_word(&w("122"));
        assert_eq!(p, "3: 1<2 1<3".parse().unwrap());
        assert_eq!(
            ehr_morphism(&LinComb::basis(p), CountMode::Strict),
            sum(&["122", "123", "132"])
        );
        assert_eq!(poset_from_word(&w("11")), QuasiPoset::antichain(2));
        assert_eq!(poset_from_word(&w("12")), QuasiPoset::chain(2));
    }

    #[test]
    fn preimages_hit_their_words() {
        for n in 0..=3 {
            for x in packed_words(n) {
                let pre = preimage(&x);
                assert!(pre.basis_elements().all(QuasiPoset::is_poset));
                assert_eq!(ehr_morphism(&pre, CountMode::Strict), LinComb::basis(x));
            }
        }
    }
}
