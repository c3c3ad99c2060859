//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification or oracle mismatch, 2 usage
//! error (including refused size guards), 3 internal invariant failure.

pub mod cache;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::rat_to_string;
use crate::fforacle::{self, FieldSpec, MonicPoly};
use crate::partitions::Partition;
use crate::pipeline::{verify_g1_product, verify_kwi_with, CountingPolynomial, Kind, Pipeline, VerificationReport};
use crate::ENGINE_VERSION;
use cache::{Cache, CacheKey, Lookup};
use output::{canonical_json, csv_rows, PolyEntry};

#[derive(Parser, Debug)]
#[command(name = "nilorb", version, about = "Counting polynomials for orbits of nilpotent matrix tuples")]
pub struct Cli {
    /// Add wall-clock time to the output (JSON field `timing_ms`, otherwise on stderr).
    #[arg(long, global = true)]
    timing: bool,

    /// Directory for cached polynomials.
    #[arg(long, global = true, env = "NILORB_CACHE")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute A, I, M or H for one n (`--n`) or for 1..=N (`--N`).
    Compute(ComputeArgs),
    /// Check an identity in a truncated ring.
    Verify(VerifyArgs),
    /// Compare pipeline values with brute-force enumeration over F_q.
    Oracle(OracleArgs),
    /// Report negative coefficients of A_g(n,q) for n <= Nmax.
    Scan(ScanArgs),
    /// Store or load cache entries explicitly.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("size").required(true).args(["n", "big_n"])))]
struct ComputeArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    #[arg(long)]
    g: usize,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    #[value(name = "thm5-routes")]
    Thm5Routes,
    Kwi,
    #[value(name = "g1-product")]
    G1Product,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: Identity,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long = "N")]
    big_n: usize,
    #[arg(long = "Q")]
    big_q: Option<usize>,
    /// Negative control for `kwi`: add 1 to the exponent a_{n,s}, given as `n,s`.
    #[arg(long)]
    perturb: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum Check {
    #[value(name = "M")]
    #[serde(rename = "M")]
    M,
    #[value(name = "IA")]
    #[serde(rename = "IA")]
    Ia,
    #[serde(rename = "nilcount")]
    Nilcount,
    #[serde(rename = "nilcount-total")]
    NilcountTotal,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    check: Check,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: usize,
    /// Partition for `nilcount`, e.g. `2,1`.
    #[arg(long)]
    lambda: Option<String>,
    /// Monic irreducible polynomial for `nilcount`, e.g. `x`, `x-1`, `x^2+x+1`.
    #[arg(long)]
    f: Option<String>,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    g: usize,
    #[arg(long = "Nmax")]
    nmax: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Compute and write an entry.
    Store(CacheArgs),
    /// Read an entry, recomputing on a miss.
    Load(CacheArgs),
}

#[derive(Args, Debug)]
struct CacheArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    #[arg(long)]
    g: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of a command: text for stdout, exit code, and the JSON payload
/// when the chosen format is JSON.
struct Output {
    text: String,
    code: u8,
    json: Option<Map<String, Value>>,
}

impl Output {
    fn json(payload: Value, code: u8) -> Self {
        let Value::Object(map) = payload else {
            unreachable!("payloads are objects")
        };
        Output {
            text: String::new(),
            code,
            json: Some(map),
        }
    }

    fn text(text: String, code: u8) -> Self {
        Output { text, code, json: None }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli, err);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(o) => {
            let text = match o.json {
                Some(mut map) => {
                    map.insert("engine_version".into(), json!(ENGINE_VERSION));
                    if cli.timing {
                        map.insert("timing_ms".into(), json!(elapsed_ms));
                    }
                    canonical_json(&Value::Object(map)) + "\n"
                }
                None => {
                    if cli.timing {
                        let _ = writeln!(err, "elapsed: {elapsed_ms} ms");
                    }
                    o.text
                }
            };
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::SizeGuard(_) => 2,
        _ => 3,
    }
}

fn dispatch(cli: &Cli, err: &mut dyn Write) -> Result<Output> {
    let cache = cli.cache_dir.as_ref().map(Cache::new);
    match &cli.command {
        Command::Compute(a) => cmd_compute(a, cache.as_ref(), err),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Cache { action } => {
            let cache = cache.ok_or_else(|| {
                Error::InvalidArgument("cache commands need --cache-dir or NILORB_CACHE".into())
            })?;
            match action {
                CacheAction::Store(a) => cmd_cache_store(a, &cache),
                CacheAction::Load(a) => cmd_cache_load(a, &cache, err),
            }
        }
    }
}

fn check_positive(v: usize, name: &str) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidArgument(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn compute_one(p: &mut Pipeline, kind: Kind, n: usize) -> Result<CountingPolynomial> {
    match kind {
        Kind::A => p.compute_a(n),
        Kind::I => p.compute_i(n),
        Kind::H => p.h(n),
        Kind::M => Ok(p.compute_m(n)?.pop().expect("n >= 1")),
    }
}

fn compute_range(p: &mut Pipeline, kind: Kind, ns: &[usize]) -> Result<Vec<CountingPolynomial>> {
    match kind {
        Kind::M => {
            let all = p.compute_m(*ns.iter().max().expect("non-empty"))?;
            Ok(ns.iter().map(|&n| all[n - 1].clone()).collect())
        }
        _ => ns.iter().map(|&n| compute_one(p, kind, n)).collect(),
    }
}

fn warn(err: &mut dyn Write, msg: &str) {
    let _ = writeln!(err, "warning: {msg}");
}

/// Serves `ns` from the cache when possible, computing and storing the rest.
fn obtain(g: usize, kind: Kind, ns: &[usize], cache: Option<&Cache>, err: &mut dyn Write) -> Result<Vec<PolyEntry>> {
    let mut pipeline = Pipeline::new(g)?;
    let mut found: Vec<Option<PolyEntry>> = vec![None; ns.len()];
    if let Some(c) = cache {
        for (slot, &n) in found.iter_mut().zip(ns) {
            match c.load(&CacheKey { kind, g, n }) {
                Lookup::Hit(e) => *slot = Some(e),
                Lookup::Miss => {}
                Lookup::Corrupt(why) => warn(err, &format!("ignoring cache entry ({why}); recomputing")),
            }
        }
    }
    let missing: Vec<usize> = ns.iter().zip(&found).filter(|(_, f)| f.is_none()).map(|(&n, _)| n).collect();
    if !missing.is_empty() {
        let computed = compute_range(&mut pipeline, kind, &missing)?;
        let mut computed = computed.into_iter();
        for slot in found.iter_mut().filter(|f| f.is_none()) {
            let c = computed.next().expect("one value per missing n");
            let entry = PolyEntry::from_counting(&c);
            if let Some(cache) = cache {
                if let Err(e) = cache.store(&CacheKey { kind, g, n: c.n }, &entry) {
                    warn(err, &format!("could not write cache entry: {e}"));
                }
            }
            *slot = Some(entry);
        }
    }
    Ok(found.into_iter().map(|e| e.expect("filled")).collect())
}

fn cmd_compute(a: &ComputeArgs, cache: Option<&Cache>, err: &mut dyn Write) -> Result<Output> {
    check_positive(a.g, "g")?;
    let (ns, mut params) = match (a.n, a.big_n) {
        (Some(n), None) => {
            check_positive(n, "n")?;
            (vec![n], json!({ "g": a.g, "kind": a.kind, "n": n }))
        }
        (None, Some(big)) => {
            check_positive(big, "N")?;
            ((1..=big).collect(), json!({ "g": a.g, "kind": a.kind, "N": big }))
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --n and --N".into())),
    };
    let mut entries = obtain(a.g, a.kind, &ns, cache, err)?;
    if a.kind == Kind::M && a.big_n.is_some() {
        entries.insert(0, PolyEntry::m_constant(a.g));
    }
    params["format"] = json!(a.format);
    Ok(match a.format {
        Format::Json => Output::json(
            json!({ "command": "compute", "parameters": params, "polynomials": entries }),
            0,
        ),
        Format::Csv => Output::text(csv_rows(&entries)?, 0),
        Format::Pretty => {
            let text = if a.n.is_some() {
                format!("{}\n", entries[0].pretty_value())
            } else {
                entries
                    .iter()
                    .map(|e| format!("{}_{}({}, q) = {}\n", e.kind, e.g, e.n, e.pretty_value()))
                    .collect()
            };
            Output::text(text, 0)
        }
    })
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("expected `n,s`, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn require<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{what} needs {flag}")))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Output> {
    check_positive(a.big_n, "N")?;
    if a.perturb.is_some() && a.identity != Identity::Kwi {
        return Err(Error::InvalidArgument("--perturb only applies to kwi".into()));
    }
    let report: VerificationReport = match a.identity {
        Identity::Thm5Routes => {
            let g = require(a.g, "--g", "thm5-routes")?;
            Pipeline::new(g)?.verify_m_routes(a.big_n)?
        }
        Identity::Kwi => {
            let g = require(a.g, "--g", "kwi")?;
            let q_order = require(a.big_q, "--Q", "kwi")?;
            check_positive(q_order, "Q")?;
            match &a.perturb {
                None => Pipeline::new(g)?.verify_kwi(a.big_n, q_order)?,
                Some(pair) => {
                    let (pn, ps) = parse_pair(pair)?;
                    if pn == 0 || pn > a.big_n {
                        return Err(Error::InvalidArgument(format!("perturbed n = {pn} outside 1..={}", a.big_n)));
                    }
                    let mut p = Pipeline::new(g)?;
                    let mut coeffs = (1..=a.big_n)
                        .map(|n| {
                            p.compute_a(n)?
                                .a_coefficients()
                                .ok_or_else(|| Error::NonIntegral { what: format!("A_{g}({n}, q)") })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let row = &mut coeffs[pn - 1];
                    if row.len() <= ps {
                        row.resize(ps + 1, BigInt::from(0));
                    }
                    row[ps] += 1;
                    verify_kwi_with(&p.p_series(a.big_n), &coeffs, g, q_order, "kwi")
                }
            }
        }
        Identity::G1Product => {
            let q_order = require(a.big_q, "--Q", "g1-product")?;
            verify_g1_product(a.big_n, q_order)?
        }
    };
    let code = if report.passed { 0 } else { 1 };
    let mut params = json!({ "N": a.big_n, "format": a.format, "identity": identity_name(a.identity) });
    if let Some(g) = a.g {
        params["g"] = json!(g);
    }
    if let Some(q) = a.big_q {
        params["Q"] = json!(q);
    }
    if let Some(p) = &a.perturb {
        params["perturb"] = json!(p);
    }
    Ok(match a.format {
        Format::Json => Output::json(json!({ "command": "verify", "parameters": params, "report": report }), code),
        Format::Pretty => Output::text(pretty_report(&report), code),
        Format::Csv => return Err(Error::InvalidArgument("verify supports json and pretty output".into())),
    })
}

fn identity_name(i: Identity) -> &'static str {
    match i {
        Identity::Thm5Routes => "thm5-routes",
        Identity::Kwi => "kwi",
        Identity::G1Product => "g1-product",
    }
}

fn pretty_report(r: &VerificationReport) -> String {
    let q = r.q_order.map(|q| format!(" Q={q}")).unwrap_or_default();
    match &r.mismatch {
        None => format!("{} g={} N={}{q}: PASS\n", r.identity, r.g, r.x_order),
        Some(m) => {
            let at = match m.q_degree {
                Some(k) => format!("X^{} q^{}", m.x_degree, k),
                None => format!("X^{}", m.x_degree),
            };
            format!(
                "{} g={} N={}{q}: FAIL at {at}\n  lhs: {}\n  rhs: {}\n",
                r.identity, r.g, r.x_order, m.lhs, m.rhs
            )
        }
    }
}

#[derive(Serialize)]
struct OracleRow {
    quantity: String,
    pipeline: String,
    oracle: String,
    #[serde(rename = "match")]
    matched: bool,
}

impl OracleRow {
    fn new(quantity: &str, pipeline: String, oracle: String) -> Self {
        OracleRow {
            quantity: quantity.into(),
            matched: pipeline == oracle,
            pipeline,
            oracle,
        }
    }
}

fn eval_at(c: &CountingPolynomial, q: usize) -> Result<String> {
    Ok(rat_to_string(&c.eval(q as u64)?))
}

fn cmd_oracle(a: &OracleArgs) -> Result<Output> {
    let field = FieldSpec::new(a.q)?;
    let q = a.q;
    let mut params = json!({ "check": a.check, "format": a.format, "q": q });
    let rows = match a.check {
        Check::M => {
            let g = require(a.g, "--g", "check M")?;
            let n = require(a.n, "--n", "check M")?;
            check_positive(g, "g")?;
            check_positive(n, "n")?;
            params["g"] = json!(g);
            params["n"] = json!(n);
            let burnside = fforacle::burnside_m(g, n, &field)?;
            let orbits = fforacle::enumerate_orbits(g, n, &field)?.len();
            let m = compute_one(&mut Pipeline::new(g)?, Kind::M, n)?;
            let pipeline = eval_at(&m, q)?;
            vec![
                OracleRow::new("M (Burnside)", pipeline.clone(), burnside.to_string()),
                OracleRow::new("M (orbits)", pipeline, orbits.to_string()),
            ]
        }
        Check::Ia => {
            let g = require(a.g, "--g", "check IA")?;
            let n = require(a.n, "--n", "check IA")?;
            check_positive(g, "g")?;
            check_positive(n, "n")?;
            params["g"] = json!(g);
            params["n"] = json!(n);
            let (i_count, a_count) = fforacle::bruteforce_i_a(g, n, &field)?;
            let mut p = Pipeline::new(g)?;
            let i = eval_at(&p.compute_i(n)?, q)?;
            let av = eval_at(&p.compute_a(n)?, q)?;
            vec![
                OracleRow::new("I", i, i_count.to_string()),
                OracleRow::new("A", av, a_count.to_string()),
            ]
        }
        Check::Nilcount => {
            let lambda_s = a
                .lambda
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("check nilcount needs --lambda".into()))?;
            let f_s = a
                .f
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("check nilcount needs --f".into()))?;
            let lambda = parse_partition(lambda_s)?;
            let poly = MonicPoly::parse(f_s, &field)?;
            params["lambda"] = json!(lambda_s);
            params["f"] = json!(f_s);
            let counted = fforacle::count_nilpotent_commutant(&lambda, &poly, &field)?;
            let formula = fforacle::nilcount_formula(&lambda, poly.degree(), q as u64);
            vec![OracleRow::new("nilcount", formula.to_string(), counted.to_string())]
        }
        Check::NilcountTotal => {
            let n = require(a.n, "--n", "check nilcount-total")?;
            params["n"] = json!(n);
            let counted = fforacle::enumerate_nilpotent(n, &field)?.len();
            let formula = (q as u64).pow((n * n - n) as u32);
            vec![OracleRow::new("nilpotent total", formula.to_string(), counted.to_string())]
        }
    };
    let passed = rows.iter().all(|r| r.matched);
    let code = if passed { 0 } else { 1 };
    Ok(match a.format {
        Format::Json => Output::json(
            json!({ "command": "oracle", "parameters": params, "passed": passed, "rows": rows }),
            code,
        ),
        Format::Csv => {
            let mut text = String::from("quantity,pipeline,oracle,match\n");
            for r in &rows {
                text.push_str(&format!("{},{},{},{}\n", r.quantity, r.pipeline, r.oracle, r.matched));
            }
            Output::text(text, code)
        }
        Format::Pretty => {
            let mut text = format!("{:<16} {:>12} {:>12}  match\n", "quantity", "pipeline", "oracle");
            for r in &rows {
                let flag = if r.matched { "yes" } else { "NO" };
                text.push_str(&format!("{:<16} {:>12} {:>12}  {flag}\n", r.quantity, r.pipeline, r.oracle));
            }
            Output::text(text, code)
        }
    })
}

fn parse_partition(s: &str) -> Result<Partition> {
    let bad = || Error::InvalidArgument(format!("cannot parse partition {s:?}"));
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Partition::from_unsorted(parts).filter(|p| p.weight() > 0).ok_or_else(bad)
}

fn cmd_scan(a: &ScanArgs) -> Result<Output> {
    check_positive(a.nmax, "Nmax")?;
    let report = Pipeline::new(a.g)?.conjecture_scan(a.nmax)?;
    let entries: Vec<PolyEntry> = report.polynomials.iter().map(PolyEntry::from_counting).collect();
    Ok(match a.format {
        Format::Json => Output::json(
            json!({
                "command": "scan",
                "negatives": report.negatives,
                "parameters": { "Nmax": a.nmax, "format": a.format, "g": a.g },
                "polynomials": entries,
            }),
            0,
        ),
        Format::Pretty => {
            let text = if report.negatives.is_empty() {
                format!("A_{}(n, q) for n <= {}: no negative coefficients\n", a.g, a.nmax)
            } else {
                report
                    .negatives
                    .iter()
                    .map(|c| format!("A_{}({}, q): coefficient of q^{} is {}\n", a.g, c.n, c.s, c.value))
                    .collect()
            };
            Output::text(text, 0)
        }
        Format::Csv => return Err(Error::InvalidArgument("scan supports json and pretty output".into())),
    })
}

fn entry_output(command: &str, a: &CacheArgs, entry: &PolyEntry, extra: (&str, Value)) -> Result<Output> {
    Ok(match a.format {
        Format::Json => {
            let mut v = json!({
                "command": command,
                "entry": entry,
                "parameters": { "format": a.format, "g": a.g, "kind": a.kind, "n": a.n },
            });
            v[extra.0] = extra.1;
            Output::json(v, 0)
        }
        Format::Csv => Output::text(csv_rows(std::slice::from_ref(entry))?, 0),
        Format::Pretty => Output::text(format!("{}\n", entry.pretty_value()), 0),
    })
}

fn cmd_cache_store(a: &CacheArgs, cache: &Cache) -> Result<Output> {
    check_positive(a.g, "g")?;
    check_positive(a.n, "n")?;
    let c = compute_one(&mut Pipeline::new(a.g)?, a.kind, a.n)?;
    let entry = PolyEntry::from_counting(&c);
    let path = cache
        .store(&CacheKey { kind: a.kind, g: a.g, n: a.n }, &entry)
        .map_err(|e| Error::InvalidArgument(format!("cannot write cache entry: {e}")))?;
    entry_output("cache-store", a, &entry, ("path", json!(path.display().to_string())))
}

fn cmd_cache_load(a: &CacheArgs, cache: &Cache, err: &mut dyn Write) -> Result<Output> {
    check_positive(a.g, "g")?;
    check_positive(a.n, "n")?;
    let key = CacheKey { kind: a.kind, g: a.g, n: a.n };
    let hit = matches!(cache.load(&key), Lookup::Hit(_));
    let entry = obtain(a.g, a.kind, &[a.n], Some(cache), err)?.remove(0);
    entry_output("cache-load", a, &entry, ("hit", json!(hit)))
}
