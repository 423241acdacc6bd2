//! Named batches of identity checks over exhaustive families of inputs.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::character::{morphism_from_character, Character, DEFAULT_BOUND};
use crate::ehrhart::{
    bernoulli, ehr_polynomial, ehr_recursive, faulhaber, heap_stats, is_lambda_free,
    linear_extensions, reconstruct_order, surjection_words, CountMode,
};
use crate::error::{Error, Result};
use crate::hopf::{self, Counit, QpComb};
use crate::qp::{enumerate_connected_iso, enumerate_iso, enumerate_labeled};
use crate::wqsym::{self, Ordinal, WordComb};
use crate::{int, rat, CanonicalKey, LinComb, PackedWord, Polynomial, QuasiPoset, Rational};

const MAX_REPORTED: usize = 3;

/// One identity and its outcome over all tested cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    Cointeraction,
    Duality,
    Characters,
    Wqsym,
    PaperTables,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "hopf",
        "cointeraction",
        "duality",
        "characters",
        "wqsym",
        "paper-tables",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Cointeraction => "cointeraction",
            Suite::Duality => "duality",
            Suite::Characters => "characters",
            Suite::Wqsym => "wqsym",
            Suite::PaperTables => "paper-tables",
            Suite::All => "all",
        }
    }

    /// Size bound used when none is given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Hopf | Suite::Cointeraction | Suite::Wqsym => 3,
            Suite::Duality => 4,
            Suite::Characters => 5,
            Suite::PaperTables | Suite::All => 4,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hopf" => Suite::Hopf,
            "cointeraction" => Suite::Cointeraction,
            "duality" => Suite::Duality,
            "characters" => Suite::Characters,
            "wqsym" => Suite::Wqsym,
            "paper-tables" => Suite::PaperTables,
            "all" => Suite::All,
            _ => {
                return Err(Error::Invalid(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "PASS  {}  ({} cases)", c.name, c.cases)?;
            } else {
                writeln!(f, "FAIL  {}  ({} of {} cases failed)", c.name, c.failed, c.cases)?;
                for d in &c.failures {
                    writeln!(f, "        {d}")?;
                }
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        write!(
            f,
            "{}: {ok}/{} checks passed, {} cases",
            self.suite.name(),
            self.checks.len(),
            self.cases()
        )
    }
}

/// Runs `suite` with bound `max_n`, or the suite's default.
pub fn run(suite: Suite, max_n: Option<usize>) -> Result<Report> {
    let n = max_n.unwrap_or(suite.default_max_n());
    let checks = match suite {
        Suite::Hopf => hopf_suite(n)?,
        Suite::Cointeraction => cointeraction_suite(n)?,
        Suite::Duality => duality_suite(n)?,
        Suite::Characters => characters_suite(n)?,
        Suite::Wqsym => wqsym_suite(n)?,
        Suite::PaperTables => paper_tables(),
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Hopf,
                Suite::Cointeraction,
                Suite::Duality,
                Suite::Characters,
                Suite::Wqsym,
                Suite::PaperTables,
            ] {
                for mut c in run(s, max_n)?.checks {
                    c.name = format!("{}: {}", s.name(), c.name);
                    all.push(c);
                }
            }
            all
        }
    };
    Ok(Report { suite, checks })
}

fn labeled_up_to(max_n: usize) -> Result<Vec<QuasiPoset>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_labeled(n, false)?);
    }
    Ok(out)
}

fn iso_up_to(max_n: usize) -> Result<Vec<QuasiPoset>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_iso(n, false)?);
    }
    Ok(out)
}

fn connected_up_to(max_n: usize) -> Result<Vec<QuasiPoset>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_connected_iso(n, false)?);
    }
    Ok(out)
}

fn pairs_up_to(max_total: usize) -> Result<Vec<(QuasiPoset, QuasiPoset)>> {
    let all = labeled_up_to(max_total)?;
    let mut out = Vec::new();
    for p in &all {
        for q in &all {
            if p.n() + q.n() <= max_total {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    Ok(out)
}

fn basis(p: &QuasiPoset) -> QpComb {
    LinComb::basis(p.clone())
}

type Triple<A, B, C> = LinComb<(A, B, C)>;

fn delta_left(x: &hopf::QpTensor) -> Triple<QuasiPoset, QuasiPoset, QuasiPoset> {
    x.map_linear(|(a, b)| {
        hopf::coproduct_basis(a).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
    })
}

fn delta_right(x: &hopf::QpTensor) -> Triple<QuasiPoset, QuasiPoset, QuasiPoset> {
    x.map_linear(|(a, b)| {
        hopf::coproduct_basis(b).map_basis(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
    })
}

fn hopf_suite(max_n: usize) -> Result<Vec<Check>> {
    let small = labeled_up_to(max_n)?;
    let big = labeled_up_to(max_n + 1)?;
    let mut out = Vec::new();

    let mut c = Check::new("Delta coassociative");
    for p in &big {
        let d = hopf::coproduct_basis(p);
        c.case(delta_left(&d) == delta_right(&d), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("Delta counit laws");
    for p in &big {
        let d = hopf::coproduct_basis(p);
        let left = d.map_linear(|(a, b)| LinComb::term(b.clone(), hopf::counit_basis(a, Counit::Eps)));
        let right = d.map_linear(|(a, b)| LinComb::term(a.clone(), hopf::counit_basis(b, Counit::Eps)));
        c.case(left == basis(p) && right == basis(p), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("antipode both sides");
    for p in &big {
        let d = hopf::coproduct_basis(p);
        let unit = LinComb::term(QuasiPoset::empty(), hopf::counit_basis(p, Counit::Eps));
        let left = d.map_linear(|(a, b)| hopf::product(&hopf::antipode_basis(a), &basis(b)));
        let right = d.map_linear(|(a, b)| hopf::product(&basis(a), &hopf::antipode_basis(b)));
        c.case(left == unit && right == unit, || p.to_string());
    }
    out.push(c);

    let pairs = pairs_up_to(max_n + 1)?;
    let mut c = Check::new("Delta multiplicative");
    for (p, q) in &pairs {
        let lhs = hopf::coproduct_basis(&p.product(q));
        let rhs = hopf::tensor_product(&hopf::coproduct_basis(p), &hopf::coproduct_basis(q));
        c.case(lhs == rhs, || format!("{p} * {q}"));
    }
    out.push(c);

    let mut c = Check::new("delta multiplicative");
    for (p, q) in &pairs {
        let lhs = hopf::internal_coproduct_basis(&p.product(q));
        let rhs = hopf::tensor_product(
            &hopf::internal_coproduct_basis(p),
            &hopf::internal_coproduct_basis(q),
        );
        c.case(lhs == rhs, || format!("{p} * {q}"));
    }
    out.push(c);

    let mut c = Check::new("delta coassociative");
    for p in &small {
        let d = hopf::internal_coproduct_basis(p);
        let left = d.map_linear(|(a, b)| {
            hopf::internal_coproduct_basis(a).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
        });
        let right = d.map_linear(|(a, b)| {
            hopf::internal_coproduct_basis(b).map_basis(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
        });
        c.case(left == right, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("delta counit laws");
    for p in &big {
        let d = hopf::internal_coproduct_basis(p);
        let left = d.map_linear(|(a, b)| LinComb::term(b.clone(), hopf::counit_basis(a, Counit::EpsPrime)));
        let right = d.map_linear(|(a, b)| LinComb::term(a.clone(), hopf::counit_basis(b, Counit::EpsPrime)));
        c.case(left == basis(p) && right == basis(p), || p.to_string());
    }
    out.push(c);

    let (la, al) = (Character::lambda(), Character::alpha());
    let composite = la.convolve(&al);
    let mut c = Check::new("phi_a o phi_b = phi_(a*b)");
    for p in &small {
        let lhs = hopf::phi(&hopf::phi_basis(p, &al), &la);
        c.case(lhs == hopf::phi_basis(p, &composite), || p.to_string());
    }
    out.push(c);

    let iota_inv = Character::iota().inverse(DEFAULT_BOUND)?;
    let mut c = Check::new("Theta = phi_iota, Theta^-1 = phi_(iota^-1), mutually inverse");
    for p in &big {
        let x = basis(p);
        let ok = hopf::theta(&x) == hopf::phi(&x, &Character::iota())
            && hopf::theta_inverse(&x) == hopf::phi(&x, &iota_inv)
            && hopf::theta_inverse(&hopf::theta(&x)) == x
            && hopf::theta(&hopf::theta_inverse(&x)) == x
            && hopf::psi(&hopf::psi(&x)) == x;
        c.case(ok, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("phi_lambda is a Delta-morphism");
    for p in &small {
        let lhs = hopf::coproduct(&hopf::phi_basis(p, &la));
        let rhs = hopf::coproduct_basis(p).map_linear(|(a, b)| {
            hopf::phi_basis(a, &la).tensor(&hopf::phi_basis(b, &la))
        });
        c.case(lhs == rhs, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("coproducts descend to isomorphism classes");
    for p in &big {
        let q = p.canonical_form();
        let ok = hopf::canonicalize_pairs(&hopf::coproduct_basis(p))
            == hopf::canonicalize_pairs(&hopf::coproduct_basis(&q))
            && hopf::canonicalize_pairs(&hopf::internal_coproduct_basis(p))
                == hopf::canonicalize_pairs(&hopf::internal_coproduct_basis(&q))
            && hopf::canonicalize(&hopf::antipode_basis(p))
                == hopf::canonicalize(&hopf::antipode_basis(&q));
        c.case(ok, || p.to_string());
    }
    out.push(c);

    Ok(out)
}

fn iso_delta(k: &CanonicalKey) -> LinComb<(CanonicalKey, CanonicalKey)> {
    hopf::canonicalize_pairs(&hopf::internal_coproduct_basis(&k.representative()))
}

fn cointeraction_suite(max_n: usize) -> Result<Vec<Check>> {
    let all = labeled_up_to(max_n)?;
    let empty_key = QuasiPoset::empty().canonical_key();
    let mut out = Vec::new();

    let mut c = Check::new("rho(1) = 1 (x) 1");
    c.case(
        hopf::coaction_basis(&QuasiPoset::empty())
            == LinComb::basis((QuasiPoset::empty(), empty_key.clone())),
        String::new,
    );
    out.push(c);

    let mut c = Check::new("rho multiplicative");
    for (p, q) in pairs_up_to(max_n)? {
        let lhs = hopf::coaction_basis(&p.product(&q));
        let rhs = hopf::coaction_basis(&p).bilinear(&hopf::coaction_basis(&q), |(a, k), (b, l)| {
            LinComb::basis((a.product(b), hopf::iso_product(k, l)))
        });
        c.case(lhs == rhs, || format!("{p} * {q}"));
    }
    out.push(c);

    let mut c = Check::new("(Delta x Id) rho = m_{2,4} (rho x rho) Delta");
    for p in &all {
        let lhs = hopf::coaction_basis(p).map_linear(|(a, k)| {
            hopf::coproduct_basis(a).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), k.clone()))
        });
        let rhs = hopf::coproduct_basis(p).map_linear(|(x, y)| {
            hopf::coaction_basis(x).bilinear(&hopf::coaction_basis(y), |(x1, k1), (y1, k2)| {
                LinComb::basis((x1.clone(), y1.clone(), hopf::iso_product(k1, k2)))
            })
        });
        c.case(lhs == rhs, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("(eps x Id) rho = eps 1");
    for p in &all {
        let lhs = hopf::coaction_basis(p)
            .map_linear(|(a, k)| LinComb::term(k.clone(), hopf::counit_basis(a, Counit::Eps)));
        let rhs = LinComb::term(empty_key.clone(), hopf::counit_basis(p, Counit::Eps));
        c.case(lhs == rhs, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("(rho x Id) rho = (Id x delta) rho");
    for p in &all {
        let r = hopf::coaction_basis(p);
        let lhs = r.map_linear(|(a, k)| {
            hopf::coaction_basis(a).map_basis(|(a1, k1)| (a1.clone(), k1.clone(), k.clone()))
        });
        let rhs = r.map_linear(|(a, k)| iso_delta(k).map_basis(|(k1, k2)| (a.clone(), k1.clone(), k2.clone())));
        c.case(lhs == rhs, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("(Id x eps') rho = Id");
    for p in &all {
        let lhs = hopf::coaction_basis(p).map_linear(|(a, k)| {
            LinComb::term(a.clone(), hopf::counit_basis(&k.representative(), Counit::EpsPrime))
        });
        c.case(lhs == basis(p), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("rho S = (S x Id) rho");
    for p in &all {
        let lhs = hopf::coaction(&hopf::antipode_basis(p));
        let rhs = hopf::coaction_basis(p).map_linear(|(a, k)| {
            hopf::antipode_basis(a).map_basis(|s| (s.clone(), k.clone()))
        });
        c.case(lhs == rhs, || p.to_string());
    }
    out.push(c);

    Ok(out)
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn duality_suite(max_n: usize) -> Result<Vec<Check>> {
    let iso = iso_up_to(max_n)?;
    let mut out = Vec::new();

    let mut c = Check::new("ehr_str(X) = (-1)^cl ehr(-X)");
    for p in &iso {
        let weak = ehr_polynomial(p, CountMode::Weak);
        let strict = ehr_polynomial(p, CountMode::Strict);
        c.case(strict == weak.reflect_negate().scale(&sign(p.cl())), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("(-1)^cl ehr(-1) = ehr_str(1) = eps'");
    for p in &iso {
        let e = hopf::counit_basis(p, Counit::EpsPrime);
        let weak = ehr_polynomial(p, CountMode::Weak).eval_int(-1) * sign(p.cl());
        let strict = ehr_polynomial(p, CountMode::Strict).eval_int(1);
        c.case(weak == e && strict == e, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("ehr_P = ehr of the quotient poset");
    for p in &iso {
        let q = p.quotient_poset();
        let ok = [CountMode::Weak, CountMode::Strict]
            .iter()
            .all(|&m| ehr_polynomial(p, m) == ehr_polynomial(&q, m));
        c.case(ok, || p.to_string());
    }
    out.push(c);

    let (a, s) = (Character::alpha(), Character::alpha_str());
    let mut c = Check::new("alpha = (-1)^(cl+cc) alpha_str");
    for p in &iso {
        c.case(a.eval(p) == sign(p.cl() + p.cc()) * s.eval(p), || p.to_string());
    }
    out.push(c);

    let beta_inv = a.inverse(DEFAULT_BOUND)?;
    let mut c = Check::new("inverse(alpha) = beta = (-1)^(cl+cc) lambda");
    for p in &iso {
        let expected = sign(p.cl() + p.cc()) * heap_stats(p).lambda;
        let b = Character::beta().eval(p);
        c.case(beta_inv.eval(p) == b && b == expected, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("ehr_str o theta = ehr");
    for p in &iso {
        let t = hopf::theta(&basis(p));
        let lhs: Polynomial = t
            .iter()
            .map(|(q, k)| ehr_polynomial(q, CountMode::Strict).scale(k))
            .sum();
        c.case(lhs == ehr_polynomial(p, CountMode::Weak), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("EHR = (-1)^cl Phi_-1 EHR_str and symmetrically");
    let m1 = -Rational::one();
    for p in labeled_up_to(max_n.min(3))? {
        let weak = wqsym::ehr_morphism(&basis(&p), CountMode::Weak);
        let strict = wqsym::ehr_morphism(&basis(&p), CountMode::Strict);
        let s = sign(p.cl());
        let ok = weak == wqsym::phi_automorphism(&strict, &m1).scale(&s)
            && strict == wqsym::phi_automorphism(&weak, &m1).scale(&s);
        c.case(ok, || p.to_string());
    }
    out.push(c);

    Ok(out)
}

fn characters_suite(max_n: usize) -> Result<Vec<Check>> {
    let connected = connected_up_to(max_n)?;
    let small = iso_up_to(max_n.min(4))?;
    let (la, al, st) = (Character::lambda(), Character::alpha(), Character::alpha_str());
    let eps = Character::eps_prime();
    let inv = la.inverse(DEFAULT_BOUND)?;
    let (ls, sl) = (la.convolve(&st), st.convolve(&la));
    let mut out = Vec::new();

    let mut c = Check::new("lambda * alpha_str = alpha_str * lambda = eps'");
    for p in &connected {
        let e = eps.eval(p);
        c.case(ls.eval(p) == e && sl.eval(p) == e, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("inverse(lambda) = alpha_str");
    for p in &connected {
        c.case(inv.eval(p) == st.eval(p), || p.to_string());
    }
    out.push(c);

    let la_al = la.convolve(&al);
    let mut c = Check::new("lambda * alpha = iota");
    for p in &small {
        c.case(la_al.eval(p).is_one(), || p.to_string());
    }
    out.push(c);

    let b_inv = al.inverse(DEFAULT_BOUND)?;
    let mut c = Check::new("inverse(alpha) = beta");
    for p in &small {
        c.case(b_inv.eval(p) == Character::beta().eval(p), || p.to_string());
    }
    out.push(c);

    let left = la.convolve(&al).convolve(&st);
    let right = la.convolve(&al.convolve(&st));
    let (el, er) = (eps.convolve(&la), la.convolve(&eps));
    let mut c = Check::new("convolution associative with unit eps'");
    for p in &small {
        let l = la.eval(p);
        c.case(left.eval(p) == right.eval(p) && el.eval(p) == l && er.eval(p) == l, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("character morphisms recover ehr, ehr_str and phi_0");
    for p in &small {
        let weak = morphism_from_character(p, &al);
        let strict = morphism_from_character(p, &st);
        let phi0 = morphism_from_character(p, &eps);
        let ok = weak == ehr_polynomial(p, CountMode::Weak)
            && strict == ehr_polynomial(p, CountMode::Strict)
            && phi0 == Polynomial::monomial(la.eval(p), p.cl())
            && weak.eval_int(1).is_one()
            && strict.eval_int(1) == eps.eval(p);
        c.case(ok, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("lambda invariant under quotient and opposite");
    for p in &small {
        let l = la.eval(p);
        c.case(l == la.eval(&p.quotient_poset()) && l == la.eval(&p.opposite()), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("lambda = 1/P! exactly when no induced Lambda");
    for n in 0..=max_n {
        for p in enumerate_iso(n, true)? {
            let h = heap_stats(&p);
            let forest = h.lambda == Rational::new(1.into(), h.p_factorial.clone());
            c.case(forest == is_lambda_free(&p), || p.to_string());
        }
    }
    out.push(c);

    Ok(out)
}

fn words_up_to(max_len: usize) -> Vec<PackedWord> {
    (0..=max_len).flat_map(wqsym::packed_words).collect()
}

fn word(w: &PackedWord) -> WordComb {
    LinComb::basis(w.clone())
}

fn eval2(x: &LinComb<(PackedWord, PackedWord)>, a: i64, b: i64) -> Rational {
    x.pair(|(u, v)| Polynomial::hilbert(u.max_letter()).eval_int(a) * Polynomial::hilbert(v.max_letter()).eval_int(b))
}

fn wqsym_suite(max_n: usize) -> Result<Vec<Check>> {
    let words = words_up_to(max_n);
    let word_pairs: Vec<(PackedWord, PackedWord)> = words
        .iter()
        .flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone())))
        .filter(|(u, v)| u.len() + v.len() <= max_n)
        .collect();
    let small = labeled_up_to(max_n)?;
    let big = labeled_up_to(max_n + 1)?;
    let mut out = Vec::new();

    let mut c = Check::new("product associative");
    for (u, v) in &word_pairs {
        for w in words.iter().filter(|w| u.len() + v.len() + w.len() <= max_n) {
            let lhs = wqsym::product_comb(&wqsym::product(u, v), &word(w));
            let rhs = wqsym::product_comb(&word(u), &wqsym::product(v, w));
            c.case(lhs == rhs, || format!("{u} {v} {w}"));
        }
    }
    out.push(c);

    let mut c = Check::new("Delta coassociative with counit");
    for w in &words {
        let d = wqsym::coproduct(w);
        let left = d.map_linear(|(a, b)| wqsym::coproduct(a).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), b.clone())));
        let right = d.map_linear(|(a, b)| wqsym::coproduct(b).map_basis(|(b1, b2)| (a.clone(), b1.clone(), b2.clone())));
        let cl = d.map_linear(|(a, b)| word(b).scale(&wqsym::counit(&word(a))));
        let cr = d.map_linear(|(a, b)| word(a).scale(&wqsym::counit(&word(b))));
        c.case(left == right && cl == word(w) && cr == word(w), || w.to_string());
    }
    out.push(c);

    let mut c = Check::new("delta coassociative with counit");
    for w in &words {
        let d = wqsym::internal_coproduct(w);
        let left = d.map_linear(|(a, b)| {
            wqsym::internal_coproduct(a).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
        });
        let right = d.map_linear(|(a, b)| {
            wqsym::internal_coproduct(b).map_basis(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
        });
        let cl = d.map_linear(|(a, b)| word(b).scale(&wqsym::internal_counit(&word(a))));
        let cr = d.map_linear(|(a, b)| word(a).scale(&wqsym::internal_counit(&word(b))));
        c.case(left == right && cl == word(w) && cr == word(w), || w.to_string());
    }
    out.push(c);

    let tensor_words = |x: &LinComb<(PackedWord, PackedWord)>, y: &LinComb<(PackedWord, PackedWord)>| {
        x.bilinear(y, |(a1, a2), (b1, b2)| {
            wqsym::product(a1, b1).tensor(&wqsym::product(a2, b2))
        })
    };
    let mut c = Check::new("Delta and delta multiplicative");
    for (u, v) in &word_pairs {
        let uv = wqsym::product(u, v);
        let ok = wqsym::coproduct_comb(&uv) == tensor_words(&wqsym::coproduct(u), &wqsym::coproduct(v))
            && wqsym::internal_coproduct_comb(&uv)
                == tensor_words(&wqsym::internal_coproduct(u), &wqsym::internal_coproduct(v));
        c.case(ok, || format!("{u} {v}"));
    }
    out.push(c);

    let mut c = Check::new("EHR and EHR_str are Hopf morphisms; EHR_str respects delta");
    for p in &small {
        let x = basis(p);
        let mut ok = true;
        for mode in [CountMode::Weak, CountMode::Strict] {
            let e = |y: &QpComb| wqsym::ehr_morphism(y, mode);
            let lhs = wqsym::coproduct_comb(&e(&x));
            let rhs = hopf::coproduct_basis(p).map_linear(|(a, b)| e(&basis(a)).tensor(&e(&basis(b))));
            ok &= lhs == rhs;
        }
        let es = |y: &QpComb| wqsym::ehr_morphism(y, CountMode::Strict);
        let lhs = wqsym::internal_coproduct_comb(&es(&x));
        let rhs = hopf::internal_coproduct_basis(p).map_linear(|(a, b)| es(&basis(a)).tensor(&es(&basis(b))));
        ok &= lhs == rhs;
        c.case(ok, || p.to_string());
    }
    for (p, q) in pairs_up_to(max_n)? {
        let ok = [CountMode::Weak, CountMode::Strict].iter().all(|&m| {
            wqsym::ehr_morphism(&basis(&p.product(&q)), m)
                == wqsym::product_comb(&wqsym::ehr_morphism(&basis(&p), m), &wqsym::ehr_morphism(&basis(&q), m))
        });
        c.case(ok, || format!("{p} * {q}"));
    }
    out.push(c);

    let mut c = Check::new("EHR_str o Theta = EHR");
    for p in &big {
        let lhs = wqsym::ehr_morphism(&hopf::theta(&basis(p)), CountMode::Strict);
        c.case(lhs == wqsym::ehr_morphism(&basis(p), CountMode::Weak), || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("H o EHR = ehr, H o EHR_str = ehr_str");
    for p in &big {
        let ok = [CountMode::Weak, CountMode::Strict].iter().all(|&m| {
            wqsym::h_morphism(&wqsym::ehr_morphism(&basis(p), m)) == ehr_polynomial(p, m)
        });
        c.case(ok, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("H is compatible with product, Delta and delta");
    for (u, v) in &word_pairs {
        let lhs = wqsym::h_morphism(&wqsym::product(u, v));
        c.case(lhs == &wqsym::h_morphism(&word(u)) * &wqsym::h_morphism(&word(v)), || format!("{u} {v}"));
    }
    for w in &words {
        let h = wqsym::h_morphism(&word(w));
        let (d, i) = (wqsym::coproduct(w), wqsym::internal_coproduct(w));
        let ok = (0..=4).all(|a| {
            (0..=4).all(|b| eval2(&d, a, b) == h.eval_int(a + b) && eval2(&i, a, b) == h.eval_int(a * b))
        });
        c.case(ok, || w.to_string());
    }
    out.push(c);

    let m1 = -Rational::one();
    let mut c = Check::new("Phi_-1 involutive Hopf automorphism, Phi_a o Phi_b = Phi_ab");
    let params = [int(2), m1.clone(), rat(1, 2), int(0)];
    for w in &words {
        let x = word(w);
        let mut ok = wqsym::phi_automorphism(&wqsym::phi_automorphism(&x, &m1), &m1) == x
            && wqsym::phi_automorphism(&x, &Rational::one()) == x;
        for a in &params {
            for b in &params {
                ok &= wqsym::phi_automorphism(&wqsym::phi_automorphism(&x, b), a)
                    == wqsym::phi_automorphism(&x, &(a * b));
            }
        }
        let lhs = wqsym::coproduct_comb(&wqsym::phi_automorphism(&x, &m1));
        let rhs = wqsym::coproduct(w).map_linear(|(a, b)| {
            wqsym::phi_automorphism(&word(a), &m1).tensor(&wqsym::phi_automorphism(&word(b), &m1))
        });
        ok &= lhs == rhs;
        c.case(ok, || w.to_string());
    }
    for (u, v) in &word_pairs {
        let phi = |y: &WordComb| wqsym::phi_automorphism(y, &m1);
        let lhs = phi(&wqsym::product(u, v));
        c.case(lhs == wqsym::product_comb(&phi(&word(u)), &phi(&word(v))), || format!("{u} {v}"));
    }
    out.push(c);

    let mut c = Check::new("EHR_str(P v Q) = down, EHR(P v Q) = lightning");
    for (p, q) in pairs_up_to(max_n + 1)? {
        let pq = basis(&p.ordinal(&q));
        let e = |y: &QpComb, m| wqsym::ehr_morphism(y, m);
        let ok = e(&pq, CountMode::Strict)
            == wqsym::ordinal_comb(&e(&basis(&p), CountMode::Strict), &e(&basis(&q), CountMode::Strict), Ordinal::Down)
            && e(&pq, CountMode::Weak)
                == wqsym::ordinal_comb(&e(&basis(&p), CountMode::Weak), &e(&basis(&q), CountMode::Weak), Ordinal::Lightning);
        c.case(ok, || format!("{p} v {q}"));
    }
    out.push(c);

    let mut c = Check::new("Phi_-1 exchanges down and lightning");
    let short = words_up_to(2);
    for u in &short {
        for v in &short {
            let phi = |y: &WordComb| wqsym::phi_automorphism(y, &m1);
            let (pu, pv) = (phi(&word(u)), phi(&word(v)));
            let ok = phi(&wqsym::ordinal_product(u, v, Ordinal::Down))
                == wqsym::ordinal_comb(&pu, &pv, Ordinal::Lightning)
                && phi(&wqsym::ordinal_product(u, v, Ordinal::Lightning))
                    == wqsym::ordinal_comb(&pu, &pv, Ordinal::Down);
            c.case(ok, || format!("{u} {v}"));
        }
    }
    out.push(c);

    let mut c = Check::new("EHR_str(poset of w) = sum of w' >= w, preimages exist");
    for w in &words {
        let p = wqsym::poset_from_word(w);
        let above: WordComb = wqsym::packed_words(w.len())
            .into_iter()
            .filter(|v| wqsym::word_leq(w, v).unwrap_or(false))
            .collect();
        let pre = wqsym::preimage(w);
        let ok = wqsym::ehr_morphism(&basis(&p), CountMode::Strict) == above
            && wqsym::ehr_morphism(&pre, CountMode::Strict) == word(w);
        c.case(ok, || w.to_string());
    }
    out.push(c);

    let mut c = Check::new("W_P is the down-closure of E_P, whose elements are its maxima");
    for p in iso_up_to(max_n + 1)? {
        let weak: Vec<PackedWord> = surjection_words(&p, CountMode::Weak).into_iter().flatten().collect();
        let ext = linear_extensions(&p);
        let leq = |a: &PackedWord, b: &PackedWord| wqsym::word_leq(a, b).unwrap_or(false);
        let maxima: std::collections::BTreeSet<PackedWord> = weak
            .iter()
            .filter(|w| !weak.iter().any(|v| v != *w && leq(w, v)))
            .cloned()
            .collect();
        let closure: std::collections::BTreeSet<PackedWord> = wqsym::packed_words(p.n())
            .into_iter()
            .filter(|w| ext.iter().any(|e| leq(w, e)))
            .collect();
        let ok = maxima == ext && closure == weak.iter().cloned().collect();
        c.case(ok, || p.to_string());
    }
    out.push(c);

    let mut c = Check::new("order reconstructed from strict words");
    for p in &big {
        let strict = surjection_words(p, CountMode::Strict);
        let rebuilt = reconstruct_order(strict.iter().flatten(), p.n());
        c.case(rebuilt.as_ref() == Ok(p), || p.to_string());
    }
    out.push(c);

    Ok(out)
}

/// `u·v` as the sum of packed words whose prefix packs to `u` and suffix to `v`.
pub fn product_by_definition(u: &PackedWord, v: &PackedWord) -> WordComb {
    wqsym::packed_words(u.len() + v.len())
        .into_iter()
        .filter(|w| {
            let (a, b) = w.letters().split_at(u.len());
            &PackedWord::pack(a) == u && &PackedWord::pack(b) == v
        })
        .collect()
}

fn qp(s: &str) -> QuasiPoset {
    s.parse().expect("fixture parses")
}

fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
    Polynomial::from_coeffs(coeffs.iter().map(|&(a, b)| rat(a, b)).collect())
}

fn word_sum(words: &[&str]) -> WordComb {
    words
        .iter()
        .map(|s| s.parse::<PackedWord>().expect("fixture parses"))
        .collect()
}

fn word_pairs(pairs: &[(&str, &str)]) -> LinComb<(PackedWord, PackedWord)> {
    pairs
        .iter()
        .map(|(a, b)| {
            (
                a.parse::<PackedWord>().expect("fixture parses"),
                b.parse::<PackedWord>().expect("fixture parses"),
            )
        })
        .collect()
}

/// Table row: quasi-poset text, `λ`, `P!`, `α`, fractions as `(num, den)`.
pub type CharacterRow = (&'static str, (i64, i64), i64, (i64, i64));

/// The connected classes on at most four vertices with `λ`, `P!` and `α`.
pub const CHARACTER_TABLE: [CharacterRow; 15] = [
    ("1:", (1, 1), 1, (1, 1)),
    ("2: 1<2", (1, 2), 2, (1, 2)),
    ("3: 1<2 1<3", (1, 3), 3, (1, 6)),
    ("3: 1<3 2<3", (1, 3), 4, (1, 6)),
    ("3: 1<2 2<3", (1, 6), 6, (1, 3)),
    ("4: 1<2 1<3 1<4", (1, 4), 4, (0, 1)),
    ("4: 1<4 2<4 3<4", (1, 4), 8, (0, 1)),
    ("4: 1<2 1<3 3<4", (1, 8), 8, (1, 12)),
    ("4: 1<4 2<4 3<2", (1, 8), 12, (1, 12)),
    ("4: 1<2 2<3 2<4", (1, 12), 12, (1, 6)),
    ("4: 1<3 2<3 3<4", (1, 12), 18, (1, 6)),
    ("4: 1<2 2<3 3<4", (1, 24), 24, (1, 4)),
    ("4: 1<3 2<3 2<4", (5, 24), 6, (1, 12)),
    ("4: 1<3 1<4 2<3 2<4", (1, 6), 9, (1, 6)),
    ("4: 1<2 1<3 2<4 3<4", (1, 12), 16, (1, 6)),
];

fn paper_tables() -> Vec<Check> {
    let mut out = Vec::new();

    let mut c = Check::new("ehr and ehr_str closed forms");
    let forms: [(&str, Polynomial, Polynomial); 5] = [
        ("1:", poly(&[(0, 1), (1, 1)]), poly(&[(0, 1), (1, 1)])),
        ("2: 1<2", poly(&[(0, 1), (1, 2), (1, 2)]), poly(&[(0, 1), (-1, 2), (1, 2)])),
        (
            "3: 1<2 1<3",
            poly(&[(0, 1), (1, 6), (1, 2), (1, 3)]),
            poly(&[(0, 1), (1, 6), (-1, 2), (1, 3)]),
        ),
        (
            "3: 1<3 2<3",
            poly(&[(0, 1), (1, 6), (1, 2), (1, 3)]),
            poly(&[(0, 1), (1, 6), (-1, 2), (1, 3)]),
        ),
        (
            "3: 1<2 2<3",
            poly(&[(0, 1), (1, 3), (1, 2), (1, 6)]),
            poly(&[(0, 1), (1, 3), (-1, 2), (1, 6)]),
        ),
    ];
    for (text, weak, strict) in &forms {
        let p = qp(text);
        c.case(
            &ehr_polynomial(&p, CountMode::Weak) == weak && &ehr_polynomial(&p, CountMode::Strict) == strict,
            || text.to_string(),
        );
    }
    out.push(c);

    let mut c = Check::new("lambda, P! and alpha tables");
    let mut keys = Vec::new();
    for (text, (ln, ld), pf, (an, ad)) in CHARACTER_TABLE {
        let p = qp(text);
        keys.push(p.canonical_key());
        let h = heap_stats(&p);
        let ok = h.lambda == rat(ln, ld)
            && h.p_factorial == pf.into()
            && Character::lambda().eval(&p) == rat(ln, ld)
            && Character::alpha().eval(&p) == rat(an, ad);
        c.case(ok, || text.to_string());
    }
    keys.sort();
    keys.dedup();
    c.case(keys.len() == CHARACTER_TABLE.len(), || "table rows are pairwise non-isomorphic".into());
    out.push(c);

    let mut c = Check::new("packed word products");
    // the last list holds terms that are easy to drop by hand
    let products: [(&str, &str, &[&str], &[&str]); 6] = [
        ("11", "11", &["1111", "1122", "2211"], &[]),
        ("11", "12", &["1112", "1123", "2212", "2213", "3312"], &[]),
        ("11", "21", &["1121", "1132", "2231", "3321"], &["2221"]),
        ("12", "11", &["1211", "1222", "1233", "1322", "2311"], &[]),
        (
            "12",
            "12",
            &["1212", "1213", "1223", "1234", "1323", "1324", "1423", "2312", "2313", "2314", "2413", "3412"],
            &["1312"],
        ),
        (
            "12",
            "21",
            &["1221", "1231", "1232", "1243", "1332", "1342", "1432", "2321", "2331", "2341", "2431", "3421"],
            &["1321"],
        ),
    ];
    for (u, v, terms, extra) in products {
        let (u, v): (PackedWord, PackedWord) = (u.parse().expect("fixture"), v.parse().expect("fixture"));
        let lhs = wqsym::product(&u, &v);
        let expected = &word_sum(terms) + &word_sum(extra);
        c.case(lhs == expected && lhs == product_by_definition(&u, &v), || format!("{u}{v}"));
    }
    out.push(c);

    let mut c = Check::new("packed word coproducts");
    let coproducts: [(&str, &[(&str, &str)]); 3] = [
        ("212", &[("212", "()"), ("1", "11"), ("()", "212")]),
        ("312", &[("312", "()"), ("1", "21"), ("12", "1"), ("()", "312")]),
        ("111", &[("111", "()"), ("()", "111")]),
    ];
    for (w, expected) in coproducts {
        c.case(wqsym::coproduct(&w.parse().expect("fixture")) == word_pairs(expected), || w.into());
    }
    out.push(c);

    let mut c = Check::new("packed word internal coproducts");
    let internals: [(&str, &[(&str, &str)]); 3] = [
        ("11", &[("11", "11")]),
        ("12", &[("12", "11"), ("12", "12"), ("12", "21"), ("11", "12")]),
        ("21", &[("21", "11"), ("21", "12"), ("21", "21"), ("11", "21")]),
    ];
    for (w, expected) in internals {
        c.case(wqsym::internal_coproduct(&w.parse().expect("fixture")) == word_pairs(expected), || w.into());
    }
    out.push(c);

    let mut c = Check::new("EHR and EHR_str examples");
    let ehrs: [(&str, &[&str], &[&str]); 5] = [
        ("1:", &["1"], &["1"]),
        ("2: 1<2", &["12", "11"], &["12"]),
        ("2: 2<1", &["21", "11"], &["21"]),
        ("2:", &["12", "21", "11"], &["12", "21", "11"]),
        ("2: 1~2", &["11"], &["11"]),
    ];
    for (text, weak, strict) in ehrs {
        let x = basis(&qp(text));
        let ok = wqsym::ehr_morphism(&x, CountMode::Weak) == word_sum(weak)
            && wqsym::ehr_morphism(&x, CountMode::Strict) == word_sum(strict);
        c.case(ok, || text.into());
    }
    out.push(c);

    let mut c = Check::new("Bernoulli numbers from corollas");
    let b = [(1, 1), (-1, 2), (1, 6), (0, 1), (-1, 30), (0, 1), (1, 42)];
    for (k, &(n, d)) in b.iter().enumerate() {
        let ok = bernoulli(k) == rat(n, d)
            && Character::alpha_str().eval(&QuasiPoset::corolla(k)) == rat(n, d);
        c.case(ok, || format!("k = {k}"));
    }
    c.case(
        faulhaber(2) == poly(&[(0, 1), (1, 6), (-1, 2), (1, 3)]),
        || "faulhaber(2)".into(),
    );
    out.push(c);

    let mut c = Check::new("recursive and surjection-count ehr agree");
    for (text, ..) in CHARACTER_TABLE {
        let p = qp(text);
        let ok = [CountMode::Weak, CountMode::Strict]
            .iter()
            .all(|&m| ehr_polynomial(&p, m) == ehr_recursive(&p, m));
        c.case(ok, || text.into());
    }
    out.push(c);

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Hopf, Suite::Cointeraction, Suite::Duality, Suite::Wqsym] {
            let r = run(suite, Some(2)).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.cases() > 0);
        }
        let r = run(Suite::Characters, Some(3)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn paper_tables_pass() {
        let r = run(Suite::PaperTables, None).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn failing_cases_are_reported() {
        let mut c = Check::new("demo");
        for i in 0..10 {
            c.case(i % 2 == 0, || format!("case {i}"));
        }
        assert_eq!((c.cases, c.failed, c.failures.len()), (10, 5, MAX_REPORTED));
        let r = Report { suite: Suite::Hopf, checks: vec![c] };
        assert!(!r.passed());
        assert!(r.to_string().contains("FAIL  demo  (5 of 10 cases failed)"));
    }
}
