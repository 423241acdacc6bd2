//! Exact univariate polynomials in `X` and the Hilbert basis `H_k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::{int, Rational};

/// A polynomial with rational coefficients, ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

pub(crate) fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · X^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p'(0)`
    pub fn derivative_at_zero(&self) -> Rational {
        self.coeff(1)
    }

    /// `p(X) ↦ p(−X)`
    pub fn reflect_negate(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(X) ↦ p(X + a)`
    pub fn shift(&self, a: &Rational) -> Self {
        let xa = Polynomial::from_coeffs(vec![a.clone(), Rational::one()]);
        self.compose(&xa)
    }

    /// `p(q(X))`
    pub fn compose(&self, q: &Polynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &(&acc * q) + &Polynomial::constant(c.clone()))
    }

    /// `H_k(X) = X(X−1)…(X−k+1)/k!`
    pub fn hilbert(k: usize) -> Self {
        let mut p = Polynomial::one();
        for i in 0..k {
            let factor = Polynomial::from_coeffs(vec![int(-(i as i64)), Rational::one()]);
            p = &p * &factor;
        }
        p.scale(&(Rational::one() / factorial(k)))
    }

    /// Coordinates `c_i` with `p = Σ c_i H_i`: the forward differences `Δ^i p(0)`.
    pub fn to_hilbert(&self) -> Vec<Rational> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut values: Vec<Rational> = (0..=d as i64).map(|j| self.eval_int(j)).collect();
        let mut out = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            out.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    pub fn from_hilbert(coords: &[Rational]) -> Self {
        coords
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (k, c)| {
                &acc + &Polynomial::hilbert(k).scale(c)
            })
    }

    /// The summation operator `H_k ↦ H_{k+1}`, so `L(p)(n+1) = p(0) + … + p(n)`.
    pub fn l_operator(&self) -> Self {
        let mut coords = vec![Rational::zero()];
        coords.extend(self.to_hilbert());
        Polynomial::from_hilbert(&coords)
    }

    /// The unique polynomial of degree ≤ `values.len() − 1` with `p(j) = values[j]`.
    pub fn interpolate(values: &[Rational]) -> Self {
        let mut diffs = values.to_vec();
        let mut coords = Vec::with_capacity(values.len());
        while !diffs.is_empty() {
            coords.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Polynomial::from_hilbert(&coords)
    }
}

pub(crate) fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &-rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

/// Renders `a0 + a1*X + a2*X^2`, skipping zero terms.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let m = c.abs();
            match k {
                0 => write!(f, "{m}")?,
                _ => {
                    if !m.is_one() {
                        write!(f, "{m}*")?;
                    }
                    if k == 1 {
                        f.write_str("X")?;
                    } else {
                        write!(f, "X^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn p(cs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_coeffs(cs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(Polynomial::hilbert(0), Polynomial::one());
        assert_eq!(Polynomial::hilbert(1), Polynomial::x());
        assert_eq!(Polynomial::hilbert(2), p(&[(0, 1), (-1, 2), (1, 2)]));
        for k in 0..6 {
            for j in 0..8 {
                assert_eq!(Polynomial::hilbert(k).eval_int(j as i64), binomial(j, k));
            }
        }
    }

    #[test]
    fn hilbert_coordinates() {
        let c2 = p(&[(0, 1), (1, 2), (1, 2)]);
        assert_eq!(c2.to_hilbert(), vec![int(0), int(1), int(1)]);
        assert_eq!(Polynomial::x().to_hilbert(), vec![int(0), int(1)]);
        let v = p(&[(0, 1), (1, 6), (1, 2), (1, 3)]);
        assert_eq!(v.to_hilbert(), vec![int(0), int(1), int(3), int(2)]);
        assert!(Polynomial::zero().to_hilbert().is_empty());
    }

    #[test]
    fn l_operator_examples() {
        assert_eq!(Polynomial::one().l_operator(), Polynomial::x());
        let x1 = p(&[(1, 1), (1, 1)]);
        assert_eq!(x1.l_operator(), p(&[(0, 1), (1, 2), (1, 2)]));
        for k in 0..=5 {
            assert_eq!(Polynomial::hilbert(k).l_operator(), Polynomial::hilbert(k + 1));
        }
    }

    #[test]
    fn evaluation_and_reflection() {
        let c2 = p(&[(0, 1), (1, 2), (1, 2)]);
        assert_eq!(c2.eval_int(2), int(3));
        assert_eq!(c2.eval_int(0), int(0));
        let c2s = p(&[(0, 1), (-1, 2), (1, 2)]);
        assert_eq!(c2s.eval_int(-1), int(1));
        assert_eq!(c2.reflect_negate(), c2s);
        assert_eq!(Polynomial::x().reflect_negate(), -Polynomial::x());
        assert_eq!(c2.reflect_negate().reflect_negate(), c2);
        assert_eq!(c2.shift(&int(1)).eval_int(1), c2.eval_int(2));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[(0, 1), (1, 2), (1, 2)]).to_string(), "1/2*X + 1/2*X^2");
        assert_eq!(p(&[(-1, 1), (1, 1)]).to_string(), "-1 + X");
        assert_eq!(p(&[(0, 1), (-1, 1)]).to_string(), "-X");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p(&[(0, 1), (1, 6), (-1, 2), (1, 3)]).to_string(), "1/6*X - 1/2*X^2 + 1/3*X^3");
    }

    #[test]
    fn interpolation() {
        let vals: Vec<Rational> = [0, 1, 3, 6].iter().map(|&v| int(v)).collect();
        assert_eq!(Polynomial::interpolate(&vals), p(&[(0, 1), (1, 2), (1, 2)]));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-20i64..20, 1i64..7), 0..=max_deg + 1)
            .prop_map(|cs| Polynomial::from_coeffs(cs.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn hilbert_round_trip(q in arb_poly(10)) {
            prop_assert_eq!(Polynomial::from_hilbert(&q.to_hilbert()), q);
        }

        #[test]
        fn l_operator_sums(q in arb_poly(6), n in 0i64..=10) {
            let lhs = q.l_operator().eval_int(n + 1);
            let rhs = (0..=n).fold(Rational::zero(), |acc, j| acc + q.eval_int(j));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn arithmetic_matches_evaluation(a in arb_poly(4), b in arb_poly(4), x in -5i64..5) {
            let x = int(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
        }
    }
}
