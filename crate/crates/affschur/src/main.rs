use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use affschur::algebra::Combo;
use affschur::canonical::Canonical;
use affschur::corpus::{self, Check};
use affschur::iqg::{check_all, Kind};
use affschur::matrices::CodedMatrix;
use affschur::report::{canonical_json, combo_latex};
use affschur::ring::{Scalar, SpecScalar, WeightFunction};
use affschur::schur::appendix::{mul_fl19, mul_type_d, spec_c, spec_d};
use affschur::schur::chevalley::{generator_matrix, mul_chevalley, Generator};
use affschur::schur::{mul_formula, standard_scale, Oracle};
use affschur::stab::canonical::{BarSource, StabCanonical};
use affschur::stab::{stab_mul_symbolic, Stab, Variant};
use affschur::weyl::WeylElement;
use affschur::{Error, Result};

/// Affine quantum Schur algebras of type C.
#[derive(Parser)]
#[command(name = "affschur", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weyl group computations.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// The product e_B e_A (or [B][A]).
    SchurMul(SchurMul),
    /// The canonical basis element {A}^L.
    Canonical(CanonicalArgs),
    /// Products in the stabilization algebra.
    StabMul(StabMul),
    /// Stably canonical basis elements.
    StabCanonical(StabCanonicalArgs),
    /// Checks the relations of a modified iquantum group under aleph.
    IqgCheck(IqgCheck),
    /// The golden oracle corpus.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Length statistics (l, #s0, #sd, rest) of a word in s0, ..., sd.
    Length {
        #[arg(long)]
        d: usize,
        /// Comma-separated simple reflections.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Formula,
    Chevalley,
    Fl19,
    #[value(name = "typeD")]
    TypeD,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    E,
    Standard,
}

#[derive(Args)]
struct Output {
    /// JSON output (the default).
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct SchurMul {
    #[arg(long, value_enum, default_value = "formula")]
    method: Method,
    #[arg(long, value_enum, default_value = "e")]
    basis: BasisArg,
    /// Left factor, as JSON {"r": .., "entries": [[i, j, a], ..]} or @file.
    #[arg(long)]
    b: String,
    /// Right factor.
    #[arg(long)]
    a: String,
    /// Compare against the Hecke oracle.
    #[arg(long)]
    diff: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Weight {
    #[arg(long = "L0")]
    l0: i64,
    #[arg(long = "L1")]
    l1: i64,
    #[arg(long = "Ld")]
    ld: i64,
}

#[derive(Args)]
struct CanonicalArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    w: Weight,
    #[arg(long)]
    matrix: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct StabMul {
    #[arg(long, default_value = "jj")]
    variant: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    a: String,
    /// Evaluate at pi = q^{-p} (tridiagonal B only) instead of pi = 1.
    #[arg(long)]
    level: Option<i64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct StabCanonicalArgs {
    #[arg(long, default_value = "jj")]
    variant: String,
    #[command(flatten)]
    w: Weight,
    #[arg(long)]
    matrix: String,
    /// Use the bar built from level-p Schur bars.
    #[arg(long)]
    empirical: bool,
    /// Restrict the bar to the variant span.
    #[arg(long)]
    restricted: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct IqgCheck {
    #[arg(long = "type", default_value = "jj")]
    kind: String,
    #[arg(long)]
    r: usize,
    /// `w` for [-w..w], or `a..b`.
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    window: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CorpusCmd {
    Generate {
        /// Defaults to $AFFSCHUR_CORPUS_DIR, then ./corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Families as r:d, comma-separated.
        #[arg(long, default_value = "1:2,2:3")]
        families: String,
    },
    Verify {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "formula")]
        against: Against,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Against {
    Hashes,
    Formula,
    Oracle,
}

#[derive(Deserialize)]
struct MatrixIn {
    r: usize,
    entries: Vec<[i64; 3]>,
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Domain(format!("{p}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn parse_matrix(s: &str) -> Result<CodedMatrix> {
    let m: MatrixIn = serde_json::from_str(&read_arg(s)?).map_err(|e| Error::Domain(format!("matrix: {e} (expected {{\"r\": n, \"entries\": [[i, j, a], ...]}})")))?;
    let items: Vec<_> = m.entries.iter().map(|e| (e[0], e[1], e[2])).collect();
    let a = CodedMatrix::from_entries(m.r, &items)?;
    if !a.is_xitilde() {
        return Err(Error::Domain(format!("{} has an even special diagonal entry or a negative off-diagonal entry", a.compact())));
    }
    Ok(a)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.trim().parse().map_err(|_| Error::Domain(format!("bad index {x:?}")))).collect()
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Domain(format!("bad window {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        return Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
    }
    let w: i64 = s.trim().parse().map_err(|_| bad())?;
    Ok((-w, w))
}

fn weight(w: &Weight) -> Result<WeightFunction> {
    WeightFunction::new(w.l0, w.l1, w.ld)
}

fn print_json<T: Serialize>(x: &T) -> Result<()> {
    println!("{}", canonical_json(x)?);
    Ok(())
}

fn emit<const N: usize>(out: &Output, standard: bool, head: serde_json::Value, x: &Combo<N>) -> Result<()> {
    if out.latex {
        println!("{}", combo_latex(x, standard));
        return Ok(());
    }
    let mut v = head;
    v["basis"] = json!(if standard { "standard" } else { "e" });
    v["product"] = serde_json::to_value(x.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
    print_json(&v)
}

fn chevalley_shape(b: &CodedMatrix) -> Result<(Generator, i64)> {
    let r = b.r();
    for i in 0..=r {
        for (g, (x, y)) in [(Generator::E(i), (i, i + 1)), (Generator::F(i), (i + 1, i))] {
            let units = b.get(x as i64, y as i64);
            if units > 0 && generator_matrix(g, &b.col_c(), units).ok().as_ref() == Some(b) {
                return Ok((g, units));
            }
        }
    }
    Err(Error::Domain(format!("{} is not a Chevalley generator matrix", b.compact())))
}

fn d_of(a: &CodedMatrix) -> Result<usize> {
    if !a.is_xi() {
        return Err(Error::Domain(format!("{} is not in Ξ", a.compact())));
    }
    a.d_value().ok_or_else(|| Error::Domain("no d".into()))
}

// three-parameter product in the e-basis
fn generic_product(m: Method, b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
    match m {
        Method::Oracle => Oracle::new(d_of(a)?)?.mul(b, a),
        Method::Formula => mul_formula(b, a),
        Method::Chevalley => {
            let (g, k) = chevalley_shape(b)?;
            mul_chevalley(g, k, a)
        }
        _ => unreachable!(),
    }
}

fn rescale_spec(x: &Combo<1>, b: &CodedMatrix, a: &CodedMatrix, f: fn(&Scalar) -> Result<SpecScalar>) -> Result<Combo<1>> {
    let k = &standard_scale(b) * &standard_scale(a);
    x.try_map_coeffs(|c, y| Ok(y * &f(&(&k * &standard_scale(c).bar()))?))
}

fn in_basis(x: &Combo<3>, b: &CodedMatrix, a: &CodedMatrix, standard: bool) -> Combo<3> {
    if standard {
        affschur::schur::standard_product(b, a, x)
    } else {
        x.clone()
    }
}

fn diff_report<const N: usize>(x: &Combo<N>, y: &Combo<N>) -> Result<()> {
    let mut diffs = Vec::new();
    for m in x.terms.keys().chain(y.terms.keys()) {
        if x.coeff(m) != y.coeff(m) && !diffs.contains(&m.compact()) {
            diffs.push(m.compact());
        }
    }
    print_json(&json!({ "equal": diffs.is_empty(), "reference": "oracle", "differing": diffs }))?;
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{} coefficients differ from the oracle", diffs.len())))
    }
}

fn schur_mul(s: &SchurMul) -> Result<()> {
    let b = parse_matrix(&s.b)?;
    let a = parse_matrix(&s.a)?;
    if b.col_c() != a.row_c() {
        return Err(Error::Domain("col_c(B) != row_c(A)".into()));
    }
    let standard = s.basis == BasisArg::Standard;
    let head = json!({ "b": b.to_json(), "a": a.to_json() });
    match s.method {
        Method::Fl19 | Method::TypeD => {
            let (x, f): (Combo<1>, fn(&Scalar) -> Result<SpecScalar>) = match s.method {
                Method::Fl19 => (mul_fl19(&b, &a)?, spec_c),
                _ => (mul_type_d(&b, &a)?, spec_d),
            };
            let x = if standard { rescale_spec(&x, &b, &a, f)? } else { x };
            if s.diff {
                let o = generic_product(Method::Oracle, &b, &a)?;
                let o = in_basis(&o, &b, &a, standard).try_map_coeffs(|_, c| f(c))?;
                return diff_report(&x, &o);
            }
            emit(&s.out, standard, head, &x)
        }
        m => {
            let x = in_basis(&generic_product(m, &b, &a)?, &b, &a, standard);
            if s.diff {
                let o = in_basis(&generic_product(Method::Oracle, &b, &a)?, &b, &a, standard);
                return diff_report(&x, &o);
            }
            emit(&s.out, standard, head, &x)
        }
    }
}

fn canonical(c: &CanonicalArgs) -> Result<()> {
    let a = parse_matrix(&c.matrix)?;
    if a.r() != c.r || d_of(&a)? != c.d {
        return Err(Error::Domain(format!("{} is not in Ξ_(n,d) for r = {}, d = {}", a.compact(), c.r, c.d)));
    }
    let oracle = Oracle::new(c.d)?;
    let can = Canonical::new(&oracle, weight(&c.w)?);
    let x = can.canonical(&a)?;
    emit_element(&c.out, json!({ "matrix": a.to_json() }), &x)
}

fn emit_element<const N: usize>(out: &Output, head: serde_json::Value, x: &Combo<N>) -> Result<()> {
    if out.latex {
        println!("{}", combo_latex(x, true));
        return Ok(());
    }
    let mut v = head;
    v["element"] = serde_json::to_value(x.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
    print_json(&v)
}

fn stab_mul(s: &StabMul) -> Result<()> {
    let v: Variant = s.variant.parse()?;
    let b = parse_matrix(&s.b)?;
    let a = parse_matrix(&s.a)?;
    if b.col_c() != a.row_c() {
        return Err(Error::Domain("col_c(B) != row_c(A)".into()));
    }
    let head = json!({ "b": b.to_json(), "a": a.to_json(), "variant": v.to_string() });
    let x = match s.level {
        Some(p) => {
            if !b.is_tridiagonal() {
                return Err(Error::Domain("--level needs a tridiagonal B".into()));
            }
            stab_mul_symbolic(v, &b, &a)?.at_level(v, p)?
        }
        None => Stab::new(v).mul_basis(&b, &a)?,
    };
    emit(&s.out, true, head, &x)
}

fn stab_canonical(s: &StabCanonicalArgs) -> Result<()> {
    let v: Variant = s.variant.parse()?;
    let a = parse_matrix(&s.matrix)?;
    let w = weight(&s.w)?;
    let sc = if s.empirical { StabCanonical::with_source(v, w, BarSource::Empirical { p_max: affschur::stab::bar::DEFAULT_P_MAX }) } else { StabCanonical::new(v, w) };
    let x = if s.restricted { sc.variant_canonical(&a)? } else { sc.canonical(&a)? };
    emit_element(&s.out, json!({ "matrix": a.to_json(), "variant": v.to_string() }), &x)
}

fn iqg_check(c: &IqgCheck) -> Result<()> {
    let kind: Kind = c.kind.parse()?;
    let s = check_all(kind, c.r, parse_window(&c.window)?)?;
    if c.json {
        print_json(&s)?;
    } else {
        for w in &s.warnings {
            eprintln!("warning: {w}");
        }
        for rep in s.relations.iter().filter(|x| x.failures > 0) {
            println!("FAIL {}: {} of {} ({})", rep.name, rep.failures, rep.tested, rep.first_counterexample.as_deref().unwrap_or(""));
        }
        if s.passed() {
            println!("all relations hold ({kind}, r = {}, {} relations, {} weights)", c.r, s.relations.len(), s.weights);
        }
    }
    if s.passed() {
        Ok(())
    } else {
        Err(Error::Domain("some relations fail".into()))
    }
}

fn corpus_dir(d: &Option<PathBuf>) -> PathBuf {
    d.clone().or_else(|| std::env::var_os("AFFSCHUR_CORPUS_DIR").map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("corpus"))
}

fn parse_families(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|x| {
            let (r, d) = x.split_once(':').ok_or_else(|| Error::Domain(format!("bad family {x:?}")))?;
            let p = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Domain(format!("bad family {x:?}")));
            Ok((p(r)?, p(d)?))
        })
        .collect()
}

fn corpus_cmd(c: &CorpusCmd) -> Result<()> {
    match c {
        CorpusCmd::Generate { dir, families } => {
            let dir = corpus_dir(dir);
            let index = corpus::generate(&dir, &parse_families(families)?)?;
            print_json(&index)
        }
        CorpusCmd::Verify { dir, against } => {
            let check = match against {
                Against::Hashes => Check::Hashes,
                Against::Formula => Check::Formula,
                Against::Oracle => Check::Oracle,
            };
            let rep = corpus::verify(&corpus_dir(dir), check)?;
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            print_json(&rep)?;
            if rep.ok() {
                Ok(())
            } else {
                Err(Error::Domain("corpus verification failed".into()))
            }
        }
    }
}

fn weyl_length(d: usize, word: &str, json_out: bool) -> Result<()> {
    let g = WeylElement::from_word(d, &parse_list(word)?)?;
    let l = g.lengths();
    if json_out {
        print_json(&l)
    } else {
        println!("({},{},{},{})", l.l, l.c0, l.cd, l.a);
        Ok(())
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Weyl { cmd: WeylCmd::Length { d, word, json } } => weyl_length(d, &word, json),
        Cmd::SchurMul(s) => schur_mul(&s),
        Cmd::Canonical(c) => canonical(&c),
        Cmd::StabMul(s) => stab_mul(&s),
        Cmd::StabCanonical(s) => stab_canonical(&s),
        Cmd::IqgCheck(c) => iqg_check(&c),
        Cmd::Corpus { cmd } => corpus_cmd(&cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
