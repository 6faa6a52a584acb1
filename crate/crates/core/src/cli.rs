//! The `twbv` command line: argument parsing, size guards and report output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 size
//! refusal.

use crate::algebra::{check_algebra, Bicharacter, Degree};
use crate::bv::{check_bv_axioms, gerstenhaber_bracket, BVContext};
use crate::comparison::{decomposition_dims, verify_main_theorem, DecompositionTable, ProductComplex, TheoremReport};
use crate::error::{Error, Result};
use crate::format::{parse_matrix, AlgebraFile};
use crate::frobenius::{check_nakayama_product_formula, nakayama_semisimple, twisted_frobenius_product, FrobeniusStructure};
use crate::hochschild::{BarIndex, Cochain};
use crate::linalg::{display_scalar, parse_scalar, Matrix, Scalar};
use crate::zoo::{build_truncated, qci_report, QciReport};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twbv", version, about = "Exact Hochschild cohomology and BV operators of graded Frobenius algebras")]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse computations whose estimated cochain dimension exceeds this.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_size: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra definition: axioms, Frobenius form, Nakayama automorphism.
    Check { file: String },
    /// Graded dimensions of Hochschild cohomology.
    Hh(LevelArgs),
    /// BV operator on cohomology classes and the BV axiom check.
    Bv(LevelArgs),
    /// Gerstenhaber brackets of cohomology basis classes.
    Bracket(LevelArgs),
    /// Write the definition of a twisted tensor product.
    Twist(PairArgs),
    /// Check the cohomology decomposition and the BV formula for a twisted product.
    VerifyBvTensor {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Built-in examples.
    #[command(subcommand)]
    Example(Example),
}

#[derive(Args, Debug)]
struct LevelArgs {
    /// Algebra definition file, or `truncated:N`.
    algebra: String,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Left factor: a definition file or `truncated:N`.
    #[arg(long)]
    left: String,
    /// Right factor: a definition file or `truncated:N`.
    #[arg(long)]
    right: String,
    /// Bicharacter matrix, rows separated by `;`, entries by `,` (e.g. `2`).
    #[arg(long, allow_hyphen_values = true)]
    bichar: String,
}

#[derive(Subcommand, Debug)]
enum Example {
    /// Report on the quantum complete intersection Λ_q(m, n).
    Qci {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Print the definition of the product algebra instead of the report.
        #[arg(long)]
        definition: bool,
    },
    /// Print the definition of Λ(n) = k[x]/(x^n).
    Truncated {
        #[arg(long)]
        n: usize,
    },
}

/// Outcome of a subcommand: text, JSON and a verdict.
struct Report {
    text: String,
    json: Value,
    passed: bool,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("json");
                s.push('\n');
                s
            } else {
                report.text
            };
            let _ = out.write_all(body.as_bytes());
            if report.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let code = match e {
                Error::TooLarge { .. } => EXIT_SIZE,
                _ => EXIT_INPUT,
            };
            if cli.json {
                let v = json!({ "error": e.to_string(), "exit_code": code });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let cap = cli.max_size;
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Hh(a) => {
            let frob = load(&a.algebra)?;
            guard(&frob, a.max_degree, cap)?;
            hh(&frob, a.max_degree)
        }
        Command::Bv(a) => {
            let frob = load(&a.algebra)?;
            guard(&frob, a.max_degree, cap)?;
            bv(&frob, a.max_degree)
        }
        Command::Bracket(a) => {
            let frob = load(&a.algebra)?;
            guard(&frob, a.max_degree, cap)?;
            bracket(&frob, a.max_degree)
        }
        Command::Twist(p) => {
            let (fr, fs, t) = load_pair(p)?;
            twist(&fr, &fs, &t)
        }
        Command::VerifyBvTensor { pair, max_degree } => {
            let (fr, fs, t) = load_pair(pair)?;
            let prod = twisted_frobenius_product(&fr, &fs, &t)?;
            guard(&prod, *max_degree, cap)?;
            verify(&ProductComplex::new(&fr, &fs, &t)?, *max_degree)
        }
        Command::Example(Example::Truncated { n }) => {
            let text = AlgebraFile::from_frobenius(&build_truncated(*n)?).to_toml();
            Ok(Report { json: json!({ "definition": text }), text, passed: true })
        }
        Command::Example(Example::Qci { m, n, q, max_degree, definition }) => {
            let q = parse_scalar(q).ok_or_else(|| Error::Invalid(format!("q: \"{q}\" is not a rational")))?;
            let (fr, fs, t) = crate::zoo::build_qci(*m, *n, &q)?;
            let prod = twisted_frobenius_product(&fr, &fs, &t)?;
            if *definition {
                let text = AlgebraFile::from_frobenius(&prod).to_toml();
                return Ok(Report { json: json!({ "definition": text }), text, passed: true });
            }
            guard(&prod, *max_degree, cap)?;
            Ok(qci(&qci_report(*m, *n, &q, *max_degree)?))
        }
    }
}

/// Reads `truncated:N` or a definition file.
fn load(spec: &str) -> Result<FrobeniusStructure> {
    if let Some(n) = spec.strip_prefix("truncated:") {
        let n = n.parse().map_err(|_| Error::Invalid(format!("bad truncation degree in \"{spec}\"")))?;
        return build_truncated(n);
    }
    load_file(spec)?.frobenius()
}

fn load_file(path: &str) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    AlgebraFile::parse(&text, path)
}

fn load_pair(p: &PairArgs) -> Result<(FrobeniusStructure, FrobeniusStructure, Bicharacter)> {
    let fr = load(&p.left)?;
    let fs = load(&p.right)?;
    let t = Bicharacter::new(parse_matrix(&p.bichar)?)?;
    Ok((fr, fs, t))
}

/// Refuses before allocating if `(dim Ā)^{P+1} · dim A` exceeds the cap.
fn guard(frob: &FrobeniusStructure, max_level: usize, cap: u128) -> Result<()> {
    let bar = BarIndex::new(&frob.algebra);
    let estimated = bar
        .checked_count(max_level + 1)
        .and_then(|c| c.checked_mul(frob.dim() as u128))
        .unwrap_or(u128::MAX);
    if estimated > cap {
        return Err(Error::TooLarge { estimated, cap });
    }
    Ok(())
}

fn s(x: &Scalar) -> String {
    display_scalar(x)
}

fn deg(d: &Degree) -> String {
    format!("({})", d.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| json!(s(x))).collect())).collect())
}

fn matrix_text(m: &Matrix) -> String {
    m.to_rows().iter().map(|r| format!("  [{}]\n", r.iter().map(s).collect::<Vec<_>>().join(", "))).collect()
}

fn check(file: &str) -> Result<Report> {
    let def = load_file(file)?;
    let alg = def.algebra()?;
    let violations: Vec<String> = check_algebra(&alg).iter().map(|v| v.to_string()).collect();
    let frob = if violations.is_empty() { Some(def.frobenius()) } else { None };
    let mut text = format!("algebra: dimension {}, grading rank {}\n", alg.dim(), alg.rank());
    let mut j = json!({ "file": file, "dimension": alg.dim(), "rank": alg.rank(), "violations": violations });
    for v in &violations {
        text.push_str(&format!("violation: {v}\n"));
    }
    let passed = match frob {
        None => false,
        Some(Err(e)) => {
            text.push_str(&format!("frobenius: {e}\n"));
            j["frobenius_error"] = json!(e.to_string());
            false
        }
        Some(Ok(f)) => {
            let semisimple = nakayama_semisimple(&f);
            text.push_str(&format!("frobenius: ok, sigma {}\n", deg(f.sigma())));
            text.push_str(&format!("nakayama (columns are images):\n{}", matrix_text(f.nakayama())));
            text.push_str(&format!("nakayama semisimple: {semisimple}\n"));
            j["sigma"] = json!(f.sigma().0);
            j["nakayama"] = matrix_json(f.nakayama());
            j["nakayama_semisimple"] = json!(semisimple);
            true
        }
    };
    text.push_str(if passed { "result: ok\n" } else { "result: FAILED\n" });
    j["passed"] = json!(passed);
    Ok(Report { text, json: j, passed })
}

fn hh(frob: &FrobeniusStructure, max_level: usize) -> Result<Report> {
    let ctx = BVContext::untwisted(frob)?;
    let mut text = String::new();
    let mut levels = Vec::new();
    for level in 0..=max_level {
        let h = ctx.cohomology(level)?;
        let graded: Vec<String> = h.graded_dims.iter().map(|(d, k)| format!("{}:{k}", deg(d))).collect();
        text.push_str(&format!("HH^{level}: dim {}  {}\n", h.dimension, graded.join(" ")));
        levels.push(json!({
            "level": level,
            "dimension": h.dimension,
            "graded": h.graded_dims.iter().map(|(d, k)| json!({ "degree": d.0, "dimension": k })).collect::<Vec<_>>(),
        }));
    }
    Ok(Report { text, json: json!({ "levels": levels }), passed: true })
}

fn coords(ctx: &BVContext, c: &Cochain) -> Result<Vec<Scalar>> {
    ctx.cohomology(c.level)?.coordinates(c)
}

fn coords_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| json!(s(x))).collect())
}

fn coords_text(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(s).collect::<Vec<_>>().join(", "))
}

fn bv(frob: &FrobeniusStructure, max_level: usize) -> Result<Report> {
    let ctx = BVContext::untwisted(frob)?;
    let mut text = String::from("Δ on cohomology basis classes (coordinates one level down):\n");
    let mut deltas = Vec::new();
    for level in 1..=max_level {
        for (i, f) in ctx.invariant_classes(level)?.iter().enumerate() {
            let d = ctx.delta_class(f)?.expect("level ≥ 1");
            let c = coords(&ctx, &d)?;
            text.push_str(&format!("Δ(HH^{level}[{i}]) = {}\n", coords_text(&c)));
            deltas.push(json!({ "level": level, "index": i, "delta": coords_json(&c) }));
        }
    }
    let axioms = check_bv_axioms(&ctx, max_level)?;
    text.push_str(&format!("BV axioms: {} checks, {} failures\n", axioms.checked, axioms.failures.len()));
    for f in &axioms.failures {
        text.push_str(&format!("  {f}\n"));
    }
    let j = json!({
        "deltas": deltas,
        "axioms": {
            "checked": axioms.checked,
            "failures": axioms.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "passed": axioms.passed(),
        },
    });
    Ok(Report { text, json: j, passed: axioms.passed() })
}

fn bracket(frob: &FrobeniusStructure, max_level: usize) -> Result<Report> {
    let ctx = BVContext::untwisted(frob)?;
    let classes: Vec<Vec<Cochain>> = (0..=max_level).map(|l| ctx.invariant_classes(l)).collect::<Result<_>>()?;
    let mut text = String::from("Gerstenhaber brackets of basis classes (coordinates):\n");
    let mut rows = Vec::new();
    for (p, fs) in classes.iter().enumerate() {
        for (q, gs) in classes.iter().enumerate() {
            if p + q == 0 || p + q > max_level + 1 {
                continue;
            }
            for (i, f) in fs.iter().enumerate() {
                for (j, g) in gs.iter().enumerate() {
                    let b = gerstenhaber_bracket(&ctx, f, g)?.expect("positive total level");
                    let c = coords(&ctx, &b)?;
                    text.push_str(&format!("[HH^{p}[{i}], HH^{q}[{j}]] = {}\n", coords_text(&c)));
                    rows.push(json!({ "left": [p, i], "right": [q, j], "bracket": coords_json(&c) }));
                }
            }
        }
    }
    Ok(Report { text, json: json!({ "brackets": rows }), passed: true })
}

fn twist(fr: &FrobeniusStructure, fs: &FrobeniusStructure, t: &Bicharacter) -> Result<Report> {
    let prod = twisted_frobenius_product(fr, fs, t)?;
    let formula = check_nakayama_product_formula(fr, fs, t);
    let text = AlgebraFile::from_frobenius(&prod).to_toml();
    let j = json!({
        "definition": text,
        "nakayama_formula": formula,
        "nakayama_semisimple": nakayama_semisimple(&prod),
    });
    Ok(Report { text, json: j, passed: formula })
}

fn decomposition_text(table: &DecompositionTable) -> String {
    let mut text = String::from("decomposition (level, a, b): product vs components\n");
    for r in &table.rows {
        let mark = if r.product == r.components { "ok" } else { "MISMATCH" };
        text.push_str(&format!("  {} {} {}: {} vs {} {mark}\n", r.level, deg(&r.a), deg(&r.b), r.product, r.components));
    }
    text.push_str(&format!("totals: {:?}\n", table.totals));
    text
}

fn decomposition_json(table: &DecompositionTable) -> Value {
    json!({
        "rows": table.rows.iter().map(|r| json!({
            "level": r.level, "a": r.a.0, "b": r.b.0, "product": r.product, "components": r.components,
        })).collect::<Vec<_>>(),
        "totals": table.totals,
        "agrees": table.agrees(),
    })
}

fn theorem_text(report: &TheoremReport) -> String {
    let mut text = String::from("BV formula on component class pairs (n, m, |f|, |g|, f#, g#):\n");
    for p in &report.precondition_failures {
        text.push_str(&format!("  precondition: {p}\n"));
    }
    for p in &report.pairs {
        text.push_str(&format!(
            "  {} {} {} {} {} {} {}{}\n",
            p.levels.0,
            p.levels.1,
            deg(&p.degrees.0),
            deg(&p.degrees.1),
            p.indices.0,
            p.indices.1,
            if p.passed { "pass" } else { "FAIL" },
            p.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        ));
    }
    text
}

fn theorem_json(report: &TheoremReport) -> Value {
    json!({
        "pairs": report.pairs.iter().map(|p| json!({
            "levels": [p.levels.0, p.levels.1],
            "degrees": [p.degrees.0 .0, p.degrees.1 .0],
            "indices": [p.indices.0, p.indices.1],
            "passed": p.passed,
            "detail": p.detail,
        })).collect::<Vec<_>>(),
        "precondition_failures": report.precondition_failures,
        "passed": report.passed(),
    })
}

fn verify(pc: &ProductComplex, max_level: usize) -> Result<Report> {
    let table = decomposition_dims(pc, max_level)?;
    let theorem = verify_main_theorem(pc, max_level)?;
    let passed = table.agrees() && theorem.passed();
    let mut text = decomposition_text(&table);
    text.push_str(&theorem_text(&theorem));
    text.push_str(if passed { "result: ok\n" } else { "result: FAILED\n" });
    let j = json!({ "decomposition": decomposition_json(&table), "theorem": theorem_json(&theorem), "passed": passed });
    Ok(Report { text, json: j, passed })
}

fn qci(r: &QciReport) -> Report {
    let passed = r.v_is_box_class && r.w_is_box_class && r.decomposition.agrees() && r.theorem.passed();
    let mut text = format!("Λ_q(m, n) with m = {}, n = {}, q = {}\n", r.m, r.n, s(&r.q));
    text.push_str(&format!("dim HH^0..{}: {:?}\n", r.max_level, r.totals));
    for (level, d, k) in &r.graded {
        text.push_str(&format!("  HH^{level} {}: {k}\n", deg(d)));
    }
    text.push_str(&format!("U = x^{} y^{} in HH^0\n", r.m - 1, r.n - 1));
    text.push_str("V = Euler derivation of x (from the left factor), W = Euler derivation of y\n");
    text.push_str(&format!("V = [E_x ⊠ 1]: {}, W = [1 ⊠ E_y]: {}\n", r.v_is_box_class, r.w_is_box_class));
    text.push_str(&format!(
        "Δ(U) = {}, Δ(V) = {}, Δ(W) = {}\n[V, U] = {} U\n",
        s(&r.delta_u),
        s(&r.delta_v),
        s(&r.delta_w),
        s(&r.bracket_vu)
    ));
    text.push_str(&decomposition_text(&r.decomposition));
    text.push_str(&theorem_text(&r.theorem));
    text.push_str(if passed { "result: ok\n" } else { "result: FAILED\n" });
    let j = json!({
        "m": r.m,
        "n": r.n,
        "q": s(&r.q),
        "max_level": r.max_level,
        "totals": r.totals,
        "graded": r.graded.iter().map(|(l, d, k)| json!({ "level": l, "degree": d.0, "dimension": k })).collect::<Vec<_>>(),
        "classes": {
            "U": { "level": 0, "degree": r.u.degree.as_ref().map(|d| d.0.clone()), "delta": s(&r.delta_u) },
            "V": { "level": 1, "degree": r.v.degree.as_ref().map(|d| d.0.clone()), "delta": s(&r.delta_v), "box_class": r.v_is_box_class },
            "W": { "level": 1, "degree": r.w.degree.as_ref().map(|d| d.0.clone()), "delta": s(&r.delta_w), "box_class": r.w_is_box_class },
        },
        "bracket_VU": s(&r.bracket_vu),
        "decomposition": decomposition_json(&r.decomposition),
        "theorem": theorem_json(&r.theorem),
        "passed": passed,
    });
    Report { text, json: j, passed }
}
