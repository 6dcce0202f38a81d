mod cache;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use nilcover::covering::{nilpotent_verdict_with, sigma_with};
use nilcover::lie::{parse_spec, zsigmondy, LieFamilySpec};
use nilcover::structure::{Analyzer, LATTICE_BOUND};
use nilcover::verifier::{parse_instance, run_suite, Manifest, SuiteConfig, Verdict};
use nilcover::{Error, PermGroup};
use serde_json::{json, Value};

use cache::DiskCache;

const FORMAT_VERSION: u32 = 1;
const DEFAULT_MANIFEST: &str = include_str!("../../../default.toml");

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_OUT_OF_SCALE: u8 = 3;
const EXIT_CYCLIC: u8 = 4;

#[derive(Parser)]
#[command(name = "nilcover", version, about = "Covering numbers and nilpotent coverings of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Covering number with a minimal covering.
    Sigma(GroupArgs),
    /// Smallest nilpotent covering compared with the covering number.
    Nilcover(GroupArgs),
    /// Run the checks of a manifest.
    Verify(VerifyArgs),
    /// Closed-form data for a Lie-type spec such as `psu3:3`.
    Formulas {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a group file for a descriptor such as `psl2:9.pgammal`.
    Construct { spec: String },
}

#[derive(Args)]
struct Common {
    /// Emit a JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Largest group order for lattice computations.
    #[arg(long, default_value_t = LATTICE_BOUND)]
    max_order: u128,
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Neither read nor write the lattice cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct GroupArgs {
    /// Group descriptor: `sym:5`, `alt:6`, `psl2:7`, `psl3:2.graph`, ...
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    spec: Option<String>,
    /// Group file: `degree N` then one generator per line.
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Manifest file; the built-in roster when omitted.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Run only these check ids (repeatable).
    #[arg(long)]
    only: Vec<String>,
    #[command(flatten)]
    common: Common,
}

/// A command result: text for stdout, the JSON alternative, and the exit status.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Timeout>() {
        return EXIT_OUT_OF_SCALE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::CyclicGroup) => EXIT_CYCLIC,
        Some(err) if err.is_out_of_scale() => EXIT_OUT_OF_SCALE,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug)]
struct Timeout(u64);

impl std::fmt::Display for Timeout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "timed out after {} s", self.0)
    }
}

impl std::error::Error for Timeout {}

fn run(cli: Cli) -> Result<u8> {
    let (common, job): (Option<&Common>, Box<dyn FnOnce() -> Result<Output> + Send>) = match &cli.command {
        Command::Sigma(a) => {
            let (g, name) = load_group(a)?;
            let an = analyzer(&a.common);
            (Some(&a.common), Box::new(move || cmd_sigma(&an, &g, &name)))
        }
        Command::Nilcover(a) => {
            let (g, name) = load_group(a)?;
            let an = analyzer(&a.common);
            (Some(&a.common), Box::new(move || cmd_nilcover(&an, &g, &name)))
        }
        Command::Verify(a) => {
            let config = suite_config(a)?;
            (Some(&a.common), Box::new(move || cmd_verify(&config)))
        }
        Command::Formulas { spec, json } => {
            let out = cmd_formulas(spec)?;
            emit(&out, *json);
            return Ok(out.code);
        }
        Command::Construct { spec } => {
            let inst = parse_instance(spec, None)?;
            let text = format!("# {}\n{}", inst.name, inst.group.to_file_string());
            emit(&Output { text, json: Value::Null, code: 0 }, false);
            return Ok(0);
        }
    };
    let common = common.expect("group commands carry common flags");
    let out = with_timeout(common.timeout_secs, job)?;
    emit(&out, common.json);
    Ok(out.code)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(out: &Output, json: bool) {
    let body = if json {
        serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n"
    } else {
        out.text.clone()
    };
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn with_timeout(secs: Option<u64>, job: Box<dyn FnOnce() -> Result<Output> + Send>) -> Result<Output> {
    let Some(secs) = secs else {
        return job();
    };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    match rx.recv_timeout(Duration::from_secs(secs)) {
        Ok(r) => r,
        // The worker is abandoned; the process exits right after.
        Err(_) => Err(Timeout(secs).into()),
    }
}

fn analyzer(common: &Common) -> Analyzer {
    let an = Analyzer::new().with_max_order(common.max_order);
    if common.no_cache {
        return an;
    }
    match DiskCache::default_dir() {
        Some(dir) => an.with_store(Arc::new(DiskCache::new(dir))),
        None => an,
    }
}

fn load_group(a: &GroupArgs) -> Result<(Arc<PermGroup>, String)> {
    if let Some(path) = &a.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        return Ok((Arc::new(PermGroup::parse(&text)?), path.display().to_string()));
    }
    let spec = a.spec.as_deref().ok_or_else(|| anyhow!("one of --spec or --file is required"))?;
    let inst = parse_instance(spec, None)?;
    Ok((inst.group, inst.name))
}

fn suite_config(a: &VerifyArgs) -> Result<SuiteConfig> {
    let (text, base) = match &a.manifest {
        Some(p) => (
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
            p.parent().map(Path::to_path_buf),
        ),
        None => (DEFAULT_MANIFEST.to_string(), None),
    };
    let mut config = SuiteConfig::new(Manifest::parse(&text)?);
    config.only = a.only.clone();
    config.analyzer = analyzer(&a.common);
    config.base_dir = base;
    Ok(config)
}

fn group_json(g: &PermGroup, name: &str) -> Value {
    json!({
        "name": name,
        "degree": g.degree(),
        "order": g.order(),
        "generators": g.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn computed(v: impl serde::Serialize) -> Value {
    nilcover::verifier::computed(v)
}

fn cmd_sigma(an: &Analyzer, g: &Arc<PermGroup>, name: &str) -> Result<Output> {
    let (size, cert) = sigma_with(an, g)?;
    let mut text = format!("sigma = {size}\n");
    for (i, m) in cert.members.iter().enumerate() {
        let gens: Vec<String> = m.generators().iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("  {i}: order {}  <{}>\n", m.order(), gens.join(", ")));
    }
    Ok(Output {
        text,
        json: json!({
            "format_version": FORMAT_VERSION,
            "command": "sigma",
            "group": group_json(g, name),
            "sigma": computed(size),
            "certificate": cert.to_document(),
        }),
        code: 0,
    })
}

fn cmd_nilcover(an: &Analyzer, g: &Arc<PermGroup>, name: &str) -> Result<Output> {
    let v = nilpotent_verdict_with(an, g)?;
    let (nil, sigma) = (v.nilpotent.size, v.sigma.size);
    let verdict = if v.has_nilpotent_minimal_covering() {
        format!("nilpotent minimal covering exists ({nil} = {sigma})")
    } else {
        format!("no nilpotent minimal covering ({nil} vs {sigma})")
    };
    Ok(Output {
        text: format!("min nilpotent cover = {nil}\nsigma = {sigma}\n{verdict}\n"),
        json: json!({
            "format_version": FORMAT_VERSION,
            "command": "nilcover",
            "group": group_json(g, name),
            "sigma": computed(sigma),
            "min_nilpotent_cover": computed(nil),
            "has_nilpotent_minimal_covering": computed(v.has_nilpotent_minimal_covering()),
            "sigma_certificate": v.sigma.to_document(),
            "nilpotent_certificate": v.nilpotent.to_document(),
            "witness": v.witness().map(|w| w.to_document()),
        }),
        code: 0,
    })
}

fn cmd_verify(config: &SuiteConfig) -> Result<Output> {
    let reports = run_suite(config);
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (pass, fail, skip) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Skipped));
    let mut text: String = reports.iter().map(|r| r.line() + "\n").collect();
    text.push_str(&format!("{pass} passed, {fail} failed, {skip} skipped\n"));
    Ok(Output {
        text,
        json: json!({
            "format_version": FORMAT_VERSION,
            "command": "verify",
            "reports": reports,
            "summary": { "passed": pass, "failed": fail, "skipped": skip },
        }),
        code: if fail > 0 { EXIT_CHECK_FAILED } else { 0 },
    })
}

/// `(p, z·f)` and the least primitive prime divisor of `p^(zf) − 1` when in range.
fn zsigmondy_entry(spec: &LieFamilySpec) -> Option<(u64, u32, Option<u128>)> {
    let n = spec.z? * spec.f;
    let in_range = (spec.p as u128).checked_pow(n).is_some_and(|v| v < 1u128 << 127);
    in_range.then(|| (spec.p, n, zsigmondy(spec.p, n)))
}

fn cmd_formulas(text: &str) -> Result<Output> {
    let spec = parse_spec(text)?;
    let np = spec.np_count().ok();
    let out = spec.out_order().ok();
    let tori = spec.torus_orders().ok();
    let zs = zsigmondy_entry(&spec);
    let show = |v: Option<u128>| v.map_or("n/a".to_string(), |x| x.to_string());
    let mut t = format!(
        "{}: p = {}, f = {}, q = {}, d = {}\norder = {}\nn_p = {}\n|Out| = {}\n",
        spec.name(),
        spec.p,
        spec.f,
        spec.q,
        spec.d,
        spec.group_order()?,
        show(np),
        show(out),
    );
    t.push_str(&match &tori {
        Some(ts) => format!("torus orders = {ts:?}\n"),
        None => "torus orders = n/a\n".to_string(),
    });
    t.push_str(&match zs {
        Some((p, n, Some(r))) => format!("zsigmondy({p}, {n}) = {r}\n"),
        Some((p, n, None)) => format!("zsigmondy({p}, {n}) = none\n"),
        None => "zsigmondy = n/a\n".to_string(),
    });
    let formula = |v: Value| nilcover::verifier::formula(v);
    Ok(Output {
        text: t,
        json: json!({
            "format_version": FORMAT_VERSION,
            "command": "formulas",
            "spec": spec,
            "group_order": formula(json!(spec.group_order()?)),
            "np": np.map(|v| formula(json!(v))),
            "out": out.map(|v| formula(json!(v))),
            "torus_orders": tori.map(|v| formula(json!(v))),
            "zsigmondy": zs.map(|(p, n, r)| json!({
                "p": p,
                "n": n,
                "prime": computed(r.map(|x| x.to_string())),
            })),
        }),
        code: 0,
    })
}
