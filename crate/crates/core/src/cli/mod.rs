//! Command-line front end.
//!
//! Primary output goes to `--out` or standard output; diagnostics go to
//! standard error. Exit status is 0 on success, 1 when a claim, search or
//! replay fails, and 2 on usage or input errors.
//!
//! File formats:
//! - complex JSON: `{"version":1,"universe":[..],"maximal_faces":[[..],..]}`
//! - points text: one point per line, coordinates separated by whitespace,
//!   each an integer, a decimal or `num/den`; `#` starts a comment line
//! - colors JSON: `{"mode":"rainbow"|"equal_coefficient","classes":[[0,1],..]}`
//!   with 0-based point indices
//! - reports: CSV (see [`report`]) or JSON; every JSON artifact carries a
//!   `version` field and writes rationals as strings

pub mod cache;
pub mod manifest;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::homology::{certify_claims, connectivity_verdict, homology, Claim, ClaimGrid, Coefficients};
use crate::planner::plan;
use crate::tverberg::{
    birch_certificate, optimality_witness, run_trials, shift_to_avoid, sigma_constrained_cover, tverberg_partition,
    ColorConstraint, ColorMode, PointConfiguration, TrialKind, TrialSpec, DEFAULT_ASSIGNMENT_CAP,
};
use cache::{sha256_hex, BettiCache, Lookup};
use manifest::{replayable_argv, InputDigest, RunManifest, MANIFEST_VERSION};
use report::Report;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;
const OUTPUT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "qstable", version, about = "q-stable complexes, homology certificates and Tverberg-type partitions")]
struct Cli {
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record a replayable run manifest here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a complex of one of the stable families as JSON.
    Build(BuildArgs),
    /// Reduced homology of a complex file.
    Homology(HomologyArgs),
    /// Certify a claim on a parameter grid.
    Certify(CertifyArgs),
    /// Search a Tverberg-type partition of a points file.
    Tverberg(TverbergArgs),
    /// Search q disjoint triangles around a common point.
    Birch(BirchArgs),
    /// Points with no q-part Tverberg partition.
    Witness(WitnessArgs),
    /// Prime and parameter plan for (q, d).
    Plan(PlanArgs),
    /// Least rotation of an independent set avoiding a face.
    Shift(ShiftArgs),
    /// Seeded random trials.
    Trials(TrialsArgs),
    /// Rerun a manifest and compare its output digest.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Linear,
    LinearExt,
    Cyclic,
    CyclicExt,
    Truncated,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(short = 'q', long = "q")]
    q: u32,
    #[arg(short = 'r', long = "r")]
    r: Option<u32>,
    #[arg(short = 'p', long = "p")]
    p: Option<u32>,
    #[arg(short = 'a', long = "a")]
    a: Option<u32>,
    #[arg(short = 'k', long = "k")]
    k: Option<u32>,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    #[arg(long)]
    complex: PathBuf,
    /// int, q or gf:P
    #[arg(long, default_value = "int")]
    coeffs: String,
    /// Integral verdict with field and Euler cross-checks instead of a table.
    #[arg(long)]
    verdict: bool,
    /// Betti cache directory (falls back to QSTABLE_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// 5.1, 5.3, 5.4, 5.5, 5.6, thm5.1, kozlov or kl
    #[arg(long)]
    claim: String,
    #[arg(short = 'q', long = "q", value_delimiter = ',')]
    q: Option<Vec<u32>>,
    #[arg(long)]
    a_max: Option<u32>,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long)]
    p_max: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct TverbergArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(short = 'q', long = "q")]
    q: usize,
    #[arg(long)]
    colors: Option<PathBuf>,
    /// Constraint complex on [1..=p]; p is its vertex count.
    #[arg(long, conflicts_with = "colors")]
    sigma: Option<PathBuf>,
    /// Treat the color classes as equal-coefficient classes.
    #[arg(long, requires = "colors")]
    equal_coeff: bool,
    /// Label assignments examined in Σ mode.
    #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
    cap: u64,
}

#[derive(Args, Debug)]
struct BirchArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(short = 'q', long = "q")]
    q: usize,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(short = 'q', long = "q")]
    q: usize,
    #[arg(short = 'd', long = "d")]
    d: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct PlanArgs {
    #[arg(short = 'q', long = "q")]
    q: u64,
    #[arg(short = 'd', long = "d")]
    d: u64,
    #[arg(short = 'c', long = "c", default_value_t = 4)]
    c: u64,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    #[arg(short = 'p', long = "p")]
    p: u32,
    #[arg(short = 'q', long = "q")]
    q: u32,
    /// Use C_p^a built from q-stable sets; ignored with --sigma.
    #[arg(short = 'a', long = "a", default_value_t = 1)]
    a: u32,
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// Comma-separated face σ⁺ (empty for ∅).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    sigma_plus: Vec<Vertex>,
    /// Comma-separated independent set; defaults to {1..q}.
    #[arg(long, value_delimiter = ',')]
    independent: Option<Vec<Vertex>>,
}

#[derive(Args, Debug)]
struct TrialsArgs {
    #[arg(long)]
    kind: String,
    #[arg(short = 'q', long = "q")]
    q: usize,
    #[arg(short = 'd', long = "d", default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    colors: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    manifest_file: PathBuf,
}

/// Result of one subcommand: primary bytes plus claim status.
struct Outcome {
    bytes: Vec<u8>,
    pass: bool,
}

struct Ctx<'a> {
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|_| Error::Malformed(format!("{} is not UTF-8", path.display())))
    }

    fn warn(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {msg}");
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("outputs serialize");
    v.push(b'\n');
    v
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Exhausted(_) | Error::Overflow(_) => 1,
        _ => 2,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn dispatch(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut ctx = Ctx { inputs: Vec::new(), seed: None, err };
    let subcommand = args.get(1).cloned().unwrap_or_default();
    let result = match &cli.command {
        Command::Replay(r) => replay(&r.manifest_file, &mut ctx),
        cmd => run(cmd, &mut ctx),
    };
    let (bytes, code) = match result {
        Ok(o) => (o.bytes, if o.pass { 0 } else { 1 }),
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    if let Some(path) = &cli.manifest {
        let m = RunManifest {
            version: MANIFEST_VERSION,
            subcommand,
            argv: replayable_argv(&args[1..]),
            inputs: std::mem::take(&mut ctx.inputs),
            seed: ctx.seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            exit_code: code,
            output_sha256: sha256_hex(&bytes),
        };
        if let Err(e) = fs::write(path, json_bytes(&m)) {
            let _ = writeln!(ctx.err, "error: cannot write manifest {}: {e}", path.display());
            return 2;
        }
    }
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes),
        None => out.write_all(&bytes),
    };
    if let Err(e) = written {
        let _ = writeln!(ctx.err, "error: cannot write output: {e}");
        return 2;
    }
    code
}

fn run(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    let ok = |bytes| Ok(Outcome { bytes, pass: true });
    match cmd {
        Command::Build(b) => ok(build(b)?.to_json().into_bytes().into_iter().chain(*b"\n").collect()),
        Command::Homology(h) => run_homology(h, ctx),
        Command::Certify(c) => run_certify(c),
        Command::Tverberg(t) => run_tverberg(t, ctx),
        Command::Birch(b) => {
            let config = PointConfiguration::parse(&ctx.read(&b.points)?)?;
            let cert = birch_certificate(&config, b.q)?;
            if let Some(c) = &cert {
                c.verify(&config).map_err(|m| Error::Malformed(format!("certificate failed verification: {m}")))?;
            }
            Ok(Outcome { pass: cert.is_some(), bytes: json_bytes(&json!({ "version": OUTPUT_VERSION, "found": cert.is_some(), "certificate": cert })) })
        }
        Command::Witness(w) => {
            ctx.seed = Some(w.seed);
            let witness = optimality_witness(w.q, w.d, w.seed)?;
            ok(json_bytes(&json!({ "version": OUTPUT_VERSION, "witness": witness })))
        }
        Command::Plan(p) => ok(json_bytes(&plan(p.q, p.d, p.c)?)),
        Command::Shift(s) => run_shift(s, ctx),
        Command::Trials(t) => {
            ctx.seed = Some(t.seed);
            let mut spec = TrialSpec::new(t.kind.parse::<TrialKind>()?, t.q, t.d, t.trials, t.seed);
            spec.colors = t.colors;
            let report = Report::from_trials(&run_trials(&spec)?);
            let bytes = match t.format {
                Format::Csv => report.to_csv()?,
                Format::Json => json_bytes(&report),
            };
            Ok(Outcome { pass: report.all_pass(), bytes })
        }
        Command::Replay(_) => unreachable!("replay is handled by dispatch"),
    }
}

fn required(v: Option<u32>, name: &str) -> Result<u32> {
    v.ok_or_else(|| Error::domain(format!("this family needs --{name}")))
}

fn build(b: &BuildArgs) -> Result<SimplicialComplex> {
    let q = b.q;
    let family = match b.family {
        FamilyKind::Linear => Family::Linear { r: required(b.r, "r")?, q },
        FamilyKind::LinearExt => Family::LinearExtendable { r: required(b.r, "r")?, q, a: required(b.a, "a")? },
        FamilyKind::Cyclic => Family::Cyclic { p: required(b.p, "p")?, q },
        FamilyKind::CyclicExt => Family::CyclicExtendable { p: required(b.p, "p")?, q, a: required(b.a, "a")? },
        FamilyKind::Truncated => Family::Truncated { q, a: required(b.a, "a")?, k: required(b.k, "k")? },
    };
    family.build()
}

fn run_homology(h: &HomologyArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let complex = SimplicialComplex::from_json(&ctx.read(&h.complex)?)?;
    if h.verdict {
        let v = connectivity_verdict(&complex)?;
        let pass = v.field_consistent && v.euler_consistent;
        return Ok(Outcome { pass, bytes: json_bytes(&json!({ "version": OUTPUT_VERSION, "verdict": v })) });
    }
    let coefficients: Coefficients = h.coeffs.parse()?;
    let cache = if h.no_cache { None } else { BettiCache::configured(h.cache_dir.as_deref()) };
    let key = BettiCache::key(&complex, coefficients);
    if let Some(c) = &cache {
        match c.lookup(&key) {
            Lookup::Hit(table) if table.f_vector == complex.f_vector() => {
                return Ok(Outcome { pass: true, bytes: json_bytes(&table) });
            }
            Lookup::Hit(_) => ctx.warn(format!("cache entry {key} does not fit the complex; recomputing")),
            Lookup::Corrupt(why) => ctx.warn(format!("cache entry {key} ignored ({why}); recomputing")),
            Lookup::Miss => {}
        }
    }
    let table = homology(&complex, coefficients)?;
    if let Some(c) = &cache {
        if let Err(e) = c.store(&key, &table) {
            ctx.warn(format!("cache not written: {e}"));
        }
    }
    Ok(Outcome { pass: true, bytes: json_bytes(&table) })
}

fn run_certify(c: &CertifyArgs) -> Result<Outcome> {
    let claim: Claim = c.claim.parse()?;
    let default = ClaimGrid::default();
    let grid = ClaimGrid {
        q: c.q.clone().unwrap_or(default.q),
        a_max: c.a_max.unwrap_or(default.a_max),
        r_max: c.r_max.unwrap_or(default.r_max),
        p_max: c.p_max.unwrap_or(default.p_max),
    };
    let rows = certify_claims(claim, &grid)?;
    let report = Report::from_claims(claim.name(), &rows);
    let bytes = match c.format {
        Format::Csv => report.to_csv()?,
        Format::Json => json_bytes(&report),
    };
    Ok(Outcome { pass: report.all_pass(), bytes })
}

fn run_tverberg(t: &TverbergArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let config = PointConfiguration::parse(&ctx.read(&t.points)?)?;
    let invalid = |m: String| Error::Malformed(format!("certificate failed verification: {m}"));
    if let Some(path) = &t.sigma {
        let sigma = SimplicialComplex::from_json(&ctx.read(path)?)?;
        let p = sigma.universe().len() as u32;
        let found = sigma_constrained_cover(&config, &sigma, p, t.cap)?;
        if let Some(f) = &found {
            f.certificate.verify_common_point(&config).map_err(invalid)?;
            if !f.cover.verify(&sigma) {
                return Err(invalid("label sets are not faces of Σ".into()));
            }
        }
        let doc = json!({ "version": OUTPUT_VERSION, "found": found.is_some(), "p": p, "cover": found });
        return Ok(Outcome { pass: found.is_some(), bytes: json_bytes(&doc) });
    }
    let mut constraint = match &t.colors {
        Some(path) => Some(serde_json::from_str::<ColorConstraint>(&ctx.read(path)?)?),
        None => None,
    };
    if let Some(c) = constraint.as_mut().filter(|_| t.equal_coeff) {
        c.mode = ColorMode::EqualCoefficient;
    }
    let cert = tverberg_partition(&config, t.q, constraint.as_ref())?;
    if let Some(c) = &cert {
        c.verify(&config).map_err(invalid)?;
    }
    let doc = json!({ "version": OUTPUT_VERSION, "found": cert.is_some(), "certificate": cert });
    Ok(Outcome { pass: cert.is_some(), bytes: json_bytes(&doc) })
}

fn run_shift(s: &ShiftArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let sigma = match &s.sigma {
        Some(path) => SimplicialComplex::from_json(&ctx.read(path)?)?,
        None => Family::CyclicExtendable { p: s.p, q: s.q, a: s.a }.build()?,
    };
    let independent = Face::new(s.independent.clone().unwrap_or_else(|| (1..=s.q).collect()))?;
    let sigma_plus = Face::new(s.sigma_plus.clone())?;
    let m = shift_to_avoid(&independent, &sigma_plus, &sigma, s.p)?;
    let rotated = crate::complex::RotationAction::new(s.p)?.apply_face(&independent, m as u64);
    let doc = json!({
        "version": OUTPUT_VERSION,
        "p": s.p,
        "independent": independent.vertices(),
        "sigma_plus": sigma_plus.vertices(),
        "m": m,
        "rotated": rotated.vertices(),
    });
    Ok(Outcome { pass: true, bytes: json_bytes(&doc) })
}

fn replay(path: &Path, ctx: &mut Ctx) -> Result<Outcome> {
    let m: RunManifest = serde_json::from_str(&fs::read_to_string(path)?)?;
    if m.argv.first().is_some_and(|s| s == "replay") {
        return Err(Error::domain("manifests of replays cannot be replayed"));
    }
    for input in &m.inputs {
        let now = fs::read(&input.path).map(|b| sha256_hex(&b));
        if now.as_deref().ok() != Some(input.sha256.as_str()) {
            ctx.warn(format!("input {} changed since the manifest was written", input.path));
        }
    }
    let mut argv = vec!["qstable".to_string()];
    argv.extend(m.argv.iter().cloned());
    let mut bytes = Vec::new();
    let code = dispatch(&argv, &mut bytes, ctx.err);
    let digest = sha256_hex(&bytes);
    let identical = digest == m.output_sha256 && code == m.exit_code;
    let _ = writeln!(
        ctx.err,
        "replay: {} (output sha256 {digest}, recorded {})",
        if identical { "identical" } else { "DIFFERENT" },
        m.output_sha256
    );
    Ok(Outcome { bytes, pass: identical })
}
