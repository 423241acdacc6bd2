//! Characters of the quasi-poset bialgebra for the contraction coproduct.
//!
//! A character is stored through its values on connected canonical forms
//! and extended multiplicatively over components.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::ehrhart::{ehr_polynomial, heap_stats, CountMode};
use crate::error::{Error, Result};
use crate::hopf::{compatible_equivalences, sign};
use crate::qp::enumerate_connected_iso;
use crate::{CanonicalKey, Polynomial, QuasiPoset, Rational};

/// Default generation bound for inversion checks and extensional equality.
pub const DEFAULT_BOUND: usize = 6;

/// Named characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// One on discrete quasi-posets, the counit of `δ`.
    EpsPrime,
    /// One everywhere.
    Iota,
    /// `λ_P = μ_P / cl(P)!`, with `μ` the number of linear extensions.
    Lambda,
    /// Derivative at zero of `ehr`.
    Alpha,
    /// Derivative at zero of `ehr^str`.
    AlphaStr,
    /// `(−1)^{cl+cc} λ`.
    Beta,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::EpsPrime,
        Builtin::Iota,
        Builtin::Lambda,
        Builtin::Alpha,
        Builtin::AlphaStr,
        Builtin::Beta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::EpsPrime => "eps-prime",
            Builtin::Iota => "iota",
            Builtin::Lambda => "lambda",
            Builtin::Alpha => "alpha",
            Builtin::AlphaStr => "alpha-str",
            Builtin::Beta => "beta",
        }
    }

    fn connected_value(self, p: &QuasiPoset) -> Rational {
        match self {
            Builtin::EpsPrime => {
                if p.cl() == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Builtin::Iota => Rational::one(),
            Builtin::Lambda => heap_stats(p).lambda,
            Builtin::Alpha => ehr_polynomial(p, CountMode::Weak).derivative_at_zero(),
            Builtin::AlphaStr => ehr_polynomial(p, CountMode::Strict).derivative_at_zero(),
            Builtin::Beta => sign(p.cl() + p.cc()) * heap_stats(p).lambda,
        }
    }
}

type ValueFn = dyn Fn(&QuasiPoset) -> Rational + Send + Sync;

enum Definition {
    Builtin(Builtin),
    Custom(Box<ValueFn>),
    Convolution(Character, Character),
    Inverse(Character),
}

struct Inner {
    name: String,
    definition: Definition,
    memo: RwLock<HashMap<CanonicalKey, Rational>>,
}

/// A multiplicative rational functional on quasi-posets. Cloning shares the
/// memo table.
#[derive(Clone)]
pub struct Character(Arc<Inner>);

impl Character {
    fn from_definition(name: String, definition: Definition) -> Self {
        Character(Arc::new(Inner {
            name,
            definition,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    /// The shared instance of a named character.
    pub fn builtin(b: Builtin) -> Self {
        static TABLE: OnceLock<Vec<Character>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            Builtin::ALL
                .iter()
                .map(|&b| Character::from_definition(b.name().to_string(), Definition::Builtin(b)))
                .collect()
        });
        table[Builtin::ALL.iter().position(|&x| x == b).expect("listed")].clone()
    }

    pub fn eps_prime() -> Self {
        Self::builtin(Builtin::EpsPrime)
    }
    pub fn iota() -> Self {
        Self::builtin(Builtin::Iota)
    }
    pub fn lambda() -> Self {
        Self::builtin(Builtin::Lambda)
    }
    pub fn alpha() -> Self {
        Self::builtin(Builtin::Alpha)
    }
    pub fn alpha_str() -> Self {
        Self::builtin(Builtin::AlphaStr)
    }
    pub fn beta() -> Self {
        Self::builtin(Builtin::Beta)
    }

    /// A character given by its values on connected quasi-posets.
    pub fn from_fn<F>(name: &str, f: F) -> Self
    where
        F: Fn(&QuasiPoset) -> Rational + Send + Sync + 'static,
    {
        Self::from_definition(name.to_string(), Definition::Custom(Box::new(f)))
    }

    /// `(a * b)(P) = Σ_{∼◁P} a(P/∼) b(P|∼)`.
    pub fn convolve(&self, other: &Character) -> Self {
        Self::from_definition(
            format!("{}*{}", self.name(), other.name()),
            Definition::Convolution(self.clone(), other.clone()),
        )
    }

    /// The convolution inverse, after checking `a(•ₙ) ≠ 0` for `n ≤ bound`.
    /// Larger single-class values are checked lazily by [`Character::try_eval`].
    pub fn inverse(&self, bound: usize) -> Result<Self> {
        for n in 1..=bound {
            if self.eval(&QuasiPoset::single_class(n)).is_zero() {
                return Err(Error::NotInvertible { n });
            }
        }
        Ok(Self::from_definition(
            format!("inverse({})", self.name()),
            Definition::Inverse(self.clone()),
        ))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Evaluates on any quasi-poset.
    ///
    /// # Panics
    /// If the character is an inverse that meets a zero on some `•ₙ`.
    pub fn eval(&self, p: &QuasiPoset) -> Rational {
        self.try_eval(p).expect("character evaluation")
    }

    pub fn try_eval(&self, p: &QuasiPoset) -> Result<Rational> {
        let mut out = Rational::one();
        for c in p.components() {
            out *= self.connected(&p.restrict(c))?;
            if out.is_zero() {
                break;
            }
        }
        Ok(out)
    }

    fn connected(&self, p: &QuasiPoset) -> Result<Rational> {
        let key = p.canonical_key();
        if let Some(v) = self.0.memo.read().expect("memo poisoned").get(&key) {
            return Ok(v.clone());
        }
        let rep = key.representative();
        let value = match &self.0.definition {
            Definition::Builtin(b) => b.connected_value(&rep),
            Definition::Custom(f) => f(&rep),
            Definition::Convolution(a, b) => {
                let mut sum = Rational::zero();
                for eq in compatible_equivalences(&rep) {
                    let left = a.try_eval(&rep.contract(&eq))?;
                    if !left.is_zero() {
                        sum += left * b.try_eval(&rep.restrict_by(&eq))?;
                    }
                }
                sum
            }
            Definition::Inverse(a) => {
                // the coarsest equivalence contributes a(•ₙ)·b(P); every
                // other term involves strictly smaller quasi-posets on the right
                let n = rep.n();
                let pivot = a.try_eval(&QuasiPoset::single_class(n))?;
                if pivot.is_zero() {
                    return Err(Error::NotInvertible { n });
                }
                let mut rest = if rep.cl() == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                for eq in compatible_equivalences(&rep) {
                    if eq.cl() == 1 {
                        continue;
                    }
                    let left = a.try_eval(&rep.contract(&eq))?;
                    if !left.is_zero() {
                        rest -= left * self.try_eval(&rep.restrict_by(&eq))?;
                    }
                }
                rest / pivot
            }
        };
        self.0
            .memo
            .write()
            .expect("memo poisoned")
            .insert(key, value.clone());
        Ok(value)
    }

    /// Compares values on every connected iso-class with `1 ≤ n ≤ max_n`.
    pub fn agrees_with(&self, other: &Character, max_n: usize) -> Result<bool> {
        for n in 1..=max_n {
            for p in enumerate_connected_iso(n, false)? {
                if self.try_eval(&p)? != other.try_eval(&p)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Memoized connected values, sorted by key.
    pub fn memo_entries(&self) -> Vec<(CanonicalKey, Rational)> {
        let mut out: Vec<_> = self
            .0
            .memo
            .read()
            .expect("memo poisoned")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.sort();
        out
    }

    /// Preloads a connected value, e.g. from a cache file.
    pub fn seed(&self, key: CanonicalKey, value: Rational) {
        self.0.memo.write().expect("memo poisoned").insert(key, value);
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({})", self.name())
    }
}

/// `Σ_{∼◁P} λ(P/∼) χ(P|∼) X^{cl(∼)}`: the polynomial morphism attached to `χ`.
pub fn morphism_from_character(p: &QuasiPoset, chi: &Character) -> Polynomial {
    let lambda = Character::lambda();
    compatible_equivalences(p)
        .iter()
        .map(|eq| {
            let c = lambda.eval(&p.contract(eq)) * chi.eval(&p.restrict_by(eq));
            Polynomial::monomial(c, eq.cl())
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::enumerate_iso;
    use crate::{int, rat};

    fn qp(s: &str) -> QuasiPoset {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_values() {
        let l = Character::lambda();
        assert_eq!(l.eval(&qp("2: 1<2")), rat(1, 2));
        assert_eq!(l.eval(&qp("3: 1<2 1<3")), rat(1, 3));
        assert_eq!(l.eval(&qp("3: 1<3 2<3")), rat(1, 3));
        assert_eq!(l.eval(&QuasiPoset::chain(3)), rat(1, 6));
        let a = Character::alpha();
        assert_eq!(a.eval(&QuasiPoset::chain(3)), rat(1, 3));
        assert_eq!(a.eval(&qp("3: 1<2 1<3")), rat(1, 6));
        assert_eq!(a.eval(&QuasiPoset::corolla(3)), int(0));
        assert_eq!(Character::eps_prime().eval(&QuasiPoset::chain(2)), int(0));
        assert_eq!(Character::iota().eval(&QuasiPoset::chain(2)), int(1));
        assert_eq!(Character::beta().eval(&QuasiPoset::chain(3)), rat(1, 6));
    }

    #[test]
    fn multiplicative_over_components() {
        let p = qp("5: 1<2 3<4");
        let l = Character::lambda();
        assert_eq!(l.eval(&p), rat(1, 4));
        assert_eq!(l.eval(&QuasiPoset::empty()), int(1));
    }

    #[test]
    fn convolution_examples() {
        let l = Character::lambda();
        let iota = Character::iota();
        let la = l.convolve(&Character::alpha());
        let ls = l.convolve(&Character::alpha_str());
        for n in 0..=4 {
            for p in enumerate_iso(n, false).unwrap() {
                assert_eq!(la.eval(&p), iota.eval(&p), "{p}");
                assert_eq!(ls.eval(&p), Character::eps_prime().eval(&p), "{p}");
            }
        }
        assert_eq!(ls.eval(&QuasiPoset::chain(2)), int(0));
    }

    #[test]
    fn unit_and_associativity() {
        let e = Character::eps_prime();
        let (a, b, c) = (Character::lambda(), Character::alpha(), Character::beta());
        let left = a.convolve(&b).convolve(&c);
        let right = a.convolve(&b.convolve(&c));
        for n in 0..=4 {
            for p in enumerate_iso(n, false).unwrap() {
                assert_eq!(e.convolve(&a).eval(&p), a.eval(&p));
                assert_eq!(a.convolve(&e).eval(&p), a.eval(&p));
                assert_eq!(left.eval(&p), right.eval(&p), "{p}");
            }
        }
    }

    #[test]
    fn inverses() {
        let inv = Character::lambda().inverse(DEFAULT_BOUND).unwrap();
        assert_eq!(inv.eval(&QuasiPoset::chain(2)), rat(-1, 2));
        assert!(inv.agrees_with(&Character::alpha_str(), 4).unwrap());
        let e = Character::eps_prime();
        assert!(e.inverse(4).unwrap().agrees_with(&e, 4).unwrap());
        let b = Character::alpha().inverse(DEFAULT_BOUND).unwrap();
        assert_eq!(b.eval(&QuasiPoset::chain(3)), rat(1, 6));
        assert!(b.agrees_with(&Character::beta(), 4).unwrap());
        let back = inv.convolve(&Character::lambda());
        assert!(back.agrees_with(&e, 4).unwrap());
    }

    #[test]
    fn non_invertible() {
        let zero_on_two = Character::from_fn("z", |p| if p.n() == 2 { int(0) } else { int(1) });
        assert!(matches!(zero_on_two.inverse(3), Err(Error::NotInvertible { n: 2 })));
        let lazy = zero_on_two.inverse(1).unwrap();
        assert!(lazy.try_eval(&QuasiPoset::single_class(2)).is_err());
    }

    #[test]
    fn morphism_examples() {
        let c2 = QuasiPoset::chain(2);
        assert_eq!(
            morphism_from_character(&c2, &Character::alpha()),
            Polynomial::from_coeffs(vec![int(0), rat(1, 2), rat(1, 2)])
        );
        assert_eq!(
            morphism_from_character(&c2, &Character::eps_prime()),
            Polynomial::monomial(rat(1, 2), 2)
        );
        let v = qp("3: 1<2 1<3");
        assert_eq!(
            morphism_from_character(&v, &Character::alpha_str()),
            Polynomial::from_coeffs(vec![int(0), rat(1, 6), rat(-1, 2), rat(1, 3)])
        );
    }

    #[test]
    fn morphisms_match_ehrhart() {
        for n in 0..=4 {
            for p in enumerate_iso(n, false).unwrap() {
                let weak = morphism_from_character(&p, &Character::alpha());
                let strict = morphism_from_character(&p, &Character::alpha_str());
                assert_eq!(weak, ehr_polynomial(&p, CountMode::Weak), "{p}");
                assert_eq!(strict, ehr_polynomial(&p, CountMode::Strict), "{p}");
                assert_eq!(weak.eval(&int(1)), int(1));
                assert_eq!(strict.eval(&int(1)), Character::eps_prime().eval(&p));
            }
        }
    }

    #[test]
    fn lambda_symmetries() {
        let l = Character::lambda();
        for n in 0..=4 {
            for p in enumerate_iso(n, false).unwrap() {
                assert_eq!(l.eval(&p), l.eval(&p.quotient_poset()));
                assert_eq!(l.eval(&p), l.eval(&p.opposite()));
                assert_eq!(
                    Character::alpha().eval(&p),
                    sign(p.cl() + p.cc()) * Character::alpha_str().eval(&p)
                );
            }
        }
    }

    #[test]
    fn seeded_values_are_used() {
        let c = Character::from_fn("seeded", |_| int(7));
        let key = QuasiPoset::chain(2).canonical_key();
        c.seed(key.clone(), int(3));
        assert_eq!(c.eval(&QuasiPoset::chain(2)), int(3));
        assert_eq!(c.memo_entries(), vec![(key, int(3))]);
    }
}
