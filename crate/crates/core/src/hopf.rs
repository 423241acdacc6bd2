//! The two coproducts on quasi-posets, the coaction, counits, antipode and
//! the endomorphisms induced by characters.
//!
//! Elements of the labelled algebra are `LinComb<QuasiPoset>`; the
//! isomorphism-class algebra uses `LinComb<CanonicalKey>`. Tensors are
//! combinations over pairs.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::character::Character;
use crate::qp::set_partitions;
use crate::{CanonicalKey, Equivalence, LinComb, QuasiPoset, Rational};

pub type QpComb = LinComb<QuasiPoset>;
pub type IsoComb = LinComb<CanonicalKey>;
pub type QpTensor = LinComb<(QuasiPoset, QuasiPoset)>;

/// Whether `eq` indexes a term of the extraction–contraction coproduct.
///
/// Blocks must induce connected restrictions and the classes of `P/∼` must
/// be exactly the blocks.
pub fn is_compatible(p: &QuasiPoset, eq: &Equivalence) -> bool {
    eq.blocks().iter().all(|&b| p.restrict(b).is_connected())
        && p.contract(eq).classes() == eq.blocks()
}

/// All `∼ ◁ P`, built from set partitions of the `∼_P` classes.
pub fn compatible_equivalences(p: &QuasiPoset) -> Vec<Equivalence> {
    let classes = p.classes();
    set_partitions(&classes)
        .into_iter()
        .filter_map(|blocks| Equivalence::from_masks(p.n(), blocks).ok())
        .filter(|eq| is_compatible(p, eq))
        .collect()
}

/// `Δ(P) = Σ_O Std(P|[n]∖O) ⊗ Std(P|O)` over open sets `O`.
pub fn coproduct_basis(p: &QuasiPoset) -> QpTensor {
    let all = p.vertex_mask();
    p.open_sets()
        .into_iter()
        .map(|o| (p.restrict(all & !o), p.restrict(o)))
        .collect()
}

pub fn coproduct(x: &QpComb) -> QpTensor {
    x.map_linear(coproduct_basis)
}

/// `δ(P) = Σ_{∼◁P} P/∼ ⊗ P|∼`, both legs on the vertex set of `P`.
pub fn internal_coproduct_basis(p: &QuasiPoset) -> QpTensor {
    compatible_equivalences(p)
        .iter()
        .map(|eq| (p.contract(eq), p.restrict_by(eq)))
        .collect()
}

pub fn internal_coproduct(x: &QpComb) -> QpTensor {
    x.map_linear(internal_coproduct_basis)
}

/// `ρ = (Id ⊗ ⟦·⟧) ∘ δ`.
pub fn coaction_basis(p: &QuasiPoset) -> LinComb<(QuasiPoset, CanonicalKey)> {
    internal_coproduct_basis(p).map_basis(|(a, b)| (a.clone(), b.canonical_key()))
}

pub fn coaction(x: &QpComb) -> LinComb<(QuasiPoset, CanonicalKey)> {
    x.map_linear(coaction_basis)
}

/// Image in the isomorphism-class algebra.
pub fn canonicalize(x: &QpComb) -> IsoComb {
    x.map_basis(QuasiPoset::canonical_key)
}

pub fn canonicalize_pairs(x: &QpTensor) -> LinComb<(CanonicalKey, CanonicalKey)> {
    x.map_basis(|(a, b)| (a.canonical_key(), b.canonical_key()))
}

/// Product of isomorphism classes.
pub fn iso_product(a: &CanonicalKey, b: &CanonicalKey) -> CanonicalKey {
    a.representative().product(&b.representative()).canonical_key()
}

/// Disjoint product `m`, extended bilinearly.
pub fn product(x: &QpComb, y: &QpComb) -> QpComb {
    x.bilinear(y, |a, b| LinComb::basis(a.product(b)))
}

/// Ordinal product `↓`, extended bilinearly.
pub fn ordinal_product(x: &QpComb, y: &QpComb) -> QpComb {
    x.bilinear(y, |a, b| LinComb::basis(a.ordinal(b)))
}

/// Componentwise product in the tensor square.
pub fn tensor_product(x: &QpTensor, y: &QpTensor) -> QpTensor {
    x.bilinear(y, |(a1, a2), (b1, b2)| {
        LinComb::basis((a1.product(b1), a2.product(b2)))
    })
}

/// The two counits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counit {
    /// Counit of `Δ`: picks the coefficient of the empty quasi-poset.
    Eps,
    /// Counit of `δ`: one on discrete quasi-posets.
    EpsPrime,
}

pub fn counit_basis(p: &QuasiPoset, mode: Counit) -> Rational {
    let hit = match mode {
        Counit::Eps => p.is_empty(),
        Counit::EpsPrime => p.is_discrete(),
    };
    if hit {
        Rational::one()
    } else {
        Rational::zero()
    }
}

pub fn counit(x: &QpComb, mode: Counit) -> Rational {
    x.pair(|p| counit_basis(p, mode))
}

fn antipode_memo() -> &'static RwLock<HashMap<QuasiPoset, QpComb>> {
    static MEMO: OnceLock<RwLock<HashMap<QuasiPoset, QpComb>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `S(P) = −P − Σ S(P′)P″` over the reduced coproduct.
pub fn antipode_basis(p: &QuasiPoset) -> QpComb {
    if p.is_empty() {
        return LinComb::basis(QuasiPoset::empty());
    }
    if let Some(s) = antipode_memo().read().expect("memo poisoned").get(p) {
        return s.clone();
    }
    let mut out = -LinComb::basis(p.clone());
    for ((left, right), c) in coproduct_basis(p) {
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let term = product(&antipode_basis(&left), &LinComb::basis(right));
        out.add_scaled(&term, &-c);
    }
    antipode_memo()
        .write()
        .expect("memo poisoned")
        .insert(p.clone(), out.clone());
    out
}

pub fn antipode(x: &QpComb) -> QpComb {
    x.map_linear(antipode_basis)
}

/// `φ_χ(P) = Σ_{∼◁P} χ(P|∼) · P/∼`.
pub fn phi_basis(p: &QuasiPoset, chi: &Character) -> QpComb {
    compatible_equivalences(p)
        .iter()
        .map(|eq| (p.contract(eq), chi.eval(&p.restrict_by(eq))))
        .collect()
}

pub fn phi(x: &QpComb, chi: &Character) -> QpComb {
    x.map_linear(|p| phi_basis(p, chi))
}

/// `Θ(P) = Σ_{∼◁P} P/∼`.
pub fn theta(x: &QpComb) -> QpComb {
    x.map_linear(|p| {
        compatible_equivalences(p)
            .iter()
            .map(|eq| p.contract(eq))
            .collect()
    })
}

/// `Θ⁻¹(P) = Σ_{∼◁P} (−1)^{cl(P)+cl(∼)} P/∼`.
pub fn theta_inverse(x: &QpComb) -> QpComb {
    x.map_linear(|p| {
        let cl = p.cl();
        compatible_equivalences(p)
            .iter()
            .map(|eq| (p.contract(eq), sign(cl + eq.cl())))
            .collect()
    })
}

/// `Ψ(P) = (−1)^{cl(P)} P`.
pub fn psi(x: &QpComb) -> QpComb {
    x.map_linear(|p| LinComb::term(p.clone(), sign(p.cl())))
}

pub(crate) fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Degree functions on basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Vertices,
    Classes,
}

impl Grading {
    pub fn degree(self, p: &QuasiPoset) -> usize {
        match self {
            Grading::Vertices => p.n(),
            Grading::Classes => p.cl(),
        }
    }

    /// The homogeneous component of degree `d`.
    pub fn component(self, x: &QpComb, d: usize) -> QpComb {
        x.iter()
            .filter(|(p, _)| self.degree(p) == d)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect()
    }
}
