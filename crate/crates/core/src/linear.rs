//! Finite formal linear combinations with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A finite linear combination `Σ c_b · b` over an ordered basis `B`.
///
/// Zero coefficients are never stored, so two combinations are equal exactly
/// when their term maps are equal. Tensors are combinations over tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `b` with coefficient one.
    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `scale · other` in place.
    pub fn add_scaled(&mut self, other: &LinComb<B>, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * scale);
        }
    }

    pub fn coefficient(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements with a non-zero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    /// Extends `f : B → LinComb<C>` linearly.
    pub fn map_linear<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> LinComb<C>,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabels basis elements through `f`, merging collisions.
    pub fn map_basis<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> C,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Extends `f : B × C → LinComb<D>` bilinearly.
    pub fn bilinear<C, D, F>(&self, other: &LinComb<C>, mut f: F) -> LinComb<D>
    where
        C: Ord + Clone,
        D: Ord + Clone,
        F: FnMut(&B, &C) -> LinComb<D>,
    {
        let mut out = LinComb::zero();
        for (b, cb) in &self.terms {
            for (c, cc) in &other.terms {
                out.add_scaled(&f(b, c), &(cb * cc));
            }
        }
        out
    }

    /// Evaluates a scalar-valued linear form.
    pub fn pair<F>(&self, mut f: F) -> Rational
    where
        F: FnMut(&B) -> Rational,
    {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (b, c)| acc + f(b) * c)
    }

    /// `self ⊗ other`.
    pub fn tensor<C: Ord + Clone>(&self, other: &LinComb<C>) -> LinComb<(B, C)> {
        self.bilinear(other, |b, c| LinComb::basis((b.clone(), c.clone())))
    }
}

impl<B: Ord + Clone> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<B> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = B>>(iter: I) -> Self {
        iter.into_iter().map(|b| (b, Rational::one())).collect()
    }
}

impl<B: Ord + Clone> IntoIterator for LinComb<B> {
    type Item = (B, Rational);
    type IntoIter = btree_map::IntoIter<B, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<B: Ord + Clone> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &Rational::one());
    }
}

impl<B: Ord + Clone> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &-Rational::one());
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: Self) -> LinComb<B> {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: Self) -> LinComb<B> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&-Rational::one())
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        -&self
    }
}

impl<B: Ord + Clone> Mul<&Rational> for &LinComb<B> {
    type Output = LinComb<B>;
    fn mul(self, rhs: &Rational) -> LinComb<B> {
        self.scale(rhs)
    }
}

/// How a basis element is written inside a rendered combination.
pub trait BasisText {
    fn basis_text(&self) -> String;
}

impl<A: BasisText, B: BasisText> BasisText for (A, B) {
    fn basis_text(&self) -> String {
        format!("{} ⊗ {}", self.0.basis_text(), self.1.basis_text())
    }
}

impl<A: BasisText, B: BasisText, C: BasisText> BasisText for (A, B, C) {
    fn basis_text(&self) -> String {
        format!(
            "{} ⊗ {} ⊗ {}",
            self.0.basis_text(),
            self.1.basis_text(),
            self.2.basis_text()
        )
    }
}

/// Renders `c*b` terms in basis order; unit coefficients are omitted.
impl<B: Ord + Clone + BasisText> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            f.write_str(&b.basis_text())?;
        }
        Ok(())
    }
}

impl<B: Ord + Clone + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(b, c)| (b, c.to_string())))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    impl BasisText for u8 {
        fn basis_text(&self) -> String {
            format!("e{self}")
        }
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut x = LinComb::term(1u8, rat(1, 2));
        x.add_term(1, rat(-1, 2));
        assert!(x.is_zero());
        assert_eq!(x, LinComb::zero());
    }

    #[test]
    fn rendering() {
        let x: LinComb<u8> = [(2u8, int(-1)), (1, rat(1, 3)), (3, int(1))]
            .into_iter()
            .collect();
        assert_eq!(x.to_string(), "1/3*e1 - e2 + e3");
        assert_eq!(LinComb::<u8>::zero().to_string(), "0");
        assert_eq!(LinComb::term(4u8, int(-2)).to_string(), "-2*e4");
    }

    #[test]
    fn tensor_is_bilinear() {
        let x: LinComb<u8> = [(1u8, int(2)), (2, int(1))].into_iter().collect();
        let y = LinComb::term(7u8, rat(1, 2));
        let t = x.tensor(&y);
        assert_eq!(t.coefficient(&(1, 7)), int(1));
        assert_eq!(t.coefficient(&(2, 7)), rat(1, 2));
        assert_eq!(t.len(), 2);
    }
}
