//! `qpehr`: command-line access to quasi-poset bialgebras, Ehrhart
//! polynomials, characters and packed words.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qpehr_core::cache::Cache;
use qpehr_core::character::{Builtin, DEFAULT_BOUND};
use qpehr_core::ehrhart::{bernoulli, ehr_polynomial, faulhaber, CountMode};
use qpehr_core::json::{lincomb_to_json, parse_rational, polynomial_to_json, rational_to_json, JsonBasis};
use qpehr_core::linear::BasisText;
use qpehr_core::qp::{enumerate_connected_iso, enumerate_iso, enumerate_labeled};
use qpehr_core::verify::{self, Suite};
use qpehr_core::{hopf, wqsym, Character, LinComb, PackedWord, Polynomial, QuasiPoset, Rational};

#[derive(Parser)]
#[command(name = "qpehr", version, about = "Quasi-posets, Ehrhart polynomials and packed words")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Persistent store for character values.
    #[arg(long, env = "QPEHR_CACHE", global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weak Ehrhart polynomial of a quasi-poset, e.g. "2: 1<2".
    Ehr(EhrArgs),
    /// Strict Ehrhart polynomial.
    EhrStr(EhrArgs),
    /// Topological (Delta) or extraction-contraction (delta) coproduct.
    Coproduct {
        #[arg(value_enum)]
        kind: CoproductKind,
        qp: String,
    },
    /// Value of a character, or its table on connected classes when no
    /// quasi-poset is given.
    Char {
        #[arg(value_enum)]
        name: CharName,
        qp: Option<String>,
        /// Use the convolution inverse.
        #[arg(long)]
        inverse: bool,
        /// Largest class size in the table.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Sum over contractions by compatible equivalences.
    Theta {
        qp: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Antipode for the topological coproduct.
    Antipode { qp: String },
    /// Packed word operations.
    Wqsym {
        #[command(subcommand)]
        op: WqsymOp,
    },
    /// List quasi-posets (qp) or posets (p) on N vertices.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        n: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        /// Keep only connected classes (with --iso).
        #[arg(long, requires = "iso")]
        connected: bool,
    },
    /// Bernoulli number b_K.
    Bernoulli { k: usize },
    /// Polynomial S_K with S_K(n) = 1^K + ... + (n-1)^K for n >= 1.
    Faulhaber { k: usize },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(clap::Args)]
struct EhrArgs {
    qp: String,
    /// Shift to ehr(X + 1).
    #[arg(long)]
    classical: bool,
    /// Evaluate at this integer instead of printing the polynomial.
    #[arg(long, allow_negative_numbers = true)]
    eval: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoproductKind {
    #[value(name = "Delta")]
    Delta,
    #[value(name = "delta")]
    DeltaInternal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharName {
    Lambda,
    Alpha,
    AlphaStr,
    Beta,
    EpsPrime,
    Iota,
}

impl CharName {
    fn builtin(self) -> Builtin {
        match self {
            CharName::Lambda => Builtin::Lambda,
            CharName::Alpha => Builtin::Alpha,
            CharName::AlphaStr => Builtin::AlphaStr,
            CharName::Beta => Builtin::Beta,
            CharName::EpsPrime => Builtin::EpsPrime,
            CharName::Iota => Builtin::Iota,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Qp,
    P,
}

#[derive(Subcommand)]
enum WqsymOp {
    /// EHR of a quasi-poset as a sum of packed words.
    Ehr { qp: String },
    /// EHR^str of a quasi-poset.
    EhrStr { qp: String },
    /// The automorphism Phi_LAMBDA applied to a word.
    #[command(allow_negative_numbers = true)]
    Phi { lambda: String, word: String },
    /// Product of two words.
    Product { u: String, v: String },
    /// Deconcatenation-type coproduct.
    Coproduct { word: String },
    /// Internal coproduct.
    Internal { word: String },
}

/// Failure kinds mapped onto exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<qpehr_core::Error> for Failure {
    fn from(e: qpehr_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    format: Format,
}

impl Output {
    fn emit(&self, text: impl std::fmt::Display, json: impl FnOnce() -> Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Json => println!("{}", json()),
        }
    }

    fn lincomb<B: Ord + Clone + BasisText + JsonBasis>(&self, x: &LinComb<B>) {
        self.emit(x, || lincomb_to_json(x));
    }

    fn rational(&self, r: &Rational) {
        self.emit(r, || rational_to_json(r));
    }

    fn polynomial(&self, p: &Polynomial) {
        self.emit(p, || polynomial_to_json(p));
    }
}

fn parse_qp(s: &str) -> Result<QuasiPoset, Failure> {
    s.parse()
        .map_err(|e| Failure::Usage(format!("cannot parse quasi-poset {s:?}: {e}")))
}

fn parse_word(s: &str) -> Result<PackedWord, Failure> {
    s.parse()
        .map_err(|e| Failure::Usage(format!("cannot parse packed word {s:?}: {e}")))
}

/// Loads the cache into the builtin characters; returns it for saving.
fn open_cache(path: &Option<PathBuf>) -> Option<Cache> {
    let path = path.as_ref()?;
    let loaded = Cache::load(path);
    if let Some(w) = loaded.warning {
        eprintln!("warning: {w}");
    }
    for b in Builtin::ALL {
        loaded.cache.seed(&Character::builtin(b));
    }
    Some(loaded.cache)
}

fn close_cache(cache: Option<Cache>, extra: &[&Character]) {
    let Some(mut cache) = cache else { return };
    for b in Builtin::ALL {
        cache.absorb(&Character::builtin(b));
    }
    for chi in extra {
        cache.absorb(chi);
    }
    if let Err(e) = cache.save() {
        eprintln!("warning: could not write cache: {e}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Output { format: cli.format };
    match cli.command {
        Command::Ehr(args) => ehr(&out, &args, CountMode::Weak)?,
        Command::EhrStr(args) => ehr(&out, &args, CountMode::Strict)?,
        Command::Coproduct { kind, qp } => {
            let p = parse_qp(&qp)?;
            let x = match kind {
                CoproductKind::Delta => hopf::coproduct_basis(&p),
                CoproductKind::DeltaInternal => hopf::internal_coproduct_basis(&p),
            };
            out.lincomb(&x);
        }
        Command::Char {
            name,
            qp,
            inverse,
            max_n,
        } => {
            let cache = open_cache(&cli.cache);
            let base = Character::builtin(name.builtin());
            let chi = if inverse {
                let inv = base.inverse(DEFAULT_BOUND)?;
                if let Some(c) = &cache {
                    c.seed(&inv);
                }
                inv
            } else {
                base
            };
            match qp {
                Some(text) => out.rational(&chi.try_eval(&parse_qp(&text)?)?),
                None => {
                    let mut rows = Vec::new();
                    for n in 1..=max_n {
                        for p in enumerate_connected_iso(n, false)? {
                            let v = chi.try_eval(&p)?;
                            rows.push((p, v));
                        }
                    }
                    let text: Vec<String> = rows.iter().map(|(p, v)| format!("{p} → {v}")).collect();
                    out.emit(text.join("\n"), || {
                        rows.iter()
                            .map(|(p, v)| json!({"b": p.to_json(), "c": rational_to_json(v)}))
                            .collect()
                    });
                }
            }
            close_cache(cache, &[&chi]);
        }
        Command::Theta { qp, inverse } => {
            let x = LinComb::basis(parse_qp(&qp)?);
            out.lincomb(&if inverse {
                hopf::theta_inverse(&x)
            } else {
                hopf::theta(&x)
            });
        }
        Command::Antipode { qp } => out.lincomb(&hopf::antipode_basis(&parse_qp(&qp)?)),
        Command::Wqsym { op } => match op {
            WqsymOp::Ehr { qp } => out.lincomb(&wqsym::ehr_morphism(
                &LinComb::basis(parse_qp(&qp)?),
                CountMode::Weak,
            )),
            WqsymOp::EhrStr { qp } => out.lincomb(&wqsym::ehr_morphism(
                &LinComb::basis(parse_qp(&qp)?),
                CountMode::Strict,
            )),
            WqsymOp::Phi { lambda, word } => {
                let l = parse_rational(&lambda)?;
                out.lincomb(&wqsym::phi_automorphism(&LinComb::basis(parse_word(&word)?), &l));
            }
            WqsymOp::Product { u, v } => {
                out.lincomb(&wqsym::product(&parse_word(&u)?, &parse_word(&v)?))
            }
            WqsymOp::Coproduct { word } => out.lincomb(&wqsym::coproduct(&parse_word(&word)?)),
            WqsymOp::Internal { word } => {
                out.lincomb(&wqsym::internal_coproduct(&parse_word(&word)?))
            }
        },
        Command::Enumerate {
            kind,
            n,
            iso,
            connected,
        } => {
            let posets = matches!(kind, EnumKind::P);
            let list = match (iso, connected) {
                (false, _) => enumerate_labeled(n, posets)?,
                (true, false) => enumerate_iso(n, posets)?,
                (true, true) => enumerate_connected_iso(n, posets)?,
            };
            let text: Vec<String> = list.iter().map(ToString::to_string).collect();
            out.emit(text.join("\n"), || json!(text));
        }
        Command::Bernoulli { k } => out.rational(&bernoulli(k)),
        Command::Faulhaber { k } => out.polynomial(&faulhaber(k)),
        Command::Verify { suite, max_n } => {
            let suite: Suite = suite.parse()?;
            let cache = open_cache(&cli.cache);
            let report = verify::run(suite, max_n)?;
            close_cache(cache, &[]);
            out.emit(&report, || {
                json!({
                    "suite": suite.name(),
                    "passed": report.passed(),
                    "checks": report.checks.iter().map(|c| json!({
                        "name": c.name,
                        "cases": c.cases,
                        "failed": c.failed,
                        "failures": c.failures,
                    })).collect::<Vec<_>>(),
                })
            });
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn ehr(out: &Output, args: &EhrArgs, mode: CountMode) -> Result<(), Failure> {
    let p = parse_qp(&args.qp)?;
    let mut e = ehr_polynomial(&p, mode);
    if args.classical {
        e = e.shift(&Rational::from_integer(1.into()));
    }
    match args.eval {
        Some(k) => out.rational(&e.eval_int(k)),
        None => out.polynomial(&e),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
