//! `trichain` command line.

mod battery;
mod schema;

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use trichain::sample::{random_alpha, random_projective};
use trichain::{
    action_angle, construct_from_projective, coordinate_map, flow_trajectory, moment_mu, to_chain, validate_chain,
    DtRepresentation, Error, PointH,
};

use battery::{default_tolerances, roundtrip_trial, sharded, verify_trial, Metrics};
use schema::{geodesic_arc, pick, read_alpha, xy, ChainJson, CoordsJson, PointJson, RepJson};

const ARC_SEGMENTS: usize = 32;

#[derive(Parser, Debug)]
#[command(name = "trichain", version, about = "Triangle chains and action-angle coordinates for DT representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Number of punctures.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random trials.
    #[arg(long, global = true)]
    count: Option<u64>,
    /// Threads for `roundtrip` and `verify`; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Tolerance override, also accepted as `--tol.<name> <value>`.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random angle vector with λ > 0.05.
    SampleAlpha,
    /// Representation from angles and a point of ℂP^{n−3}.
    Construct {
        /// JSON file with `{"alpha": [...]}`; sampled from `--n` when absent.
        #[arg(long)]
        alpha: Option<PathBuf>,
        /// JSON file with `{"z": [[re, im], ...]}`.
        #[arg(long, conflicts_with = "random")]
        point: Option<PathBuf>,
        #[arg(long)]
        random: bool,
    },
    /// Action-angle coordinates and the point of ℂP^{n−3}.
    Coords {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Largest round-trip residuals over random trials.
    Roundtrip,
    /// Volume from the cocycle and from the chain.
    Volume {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Coordinates along the flow in one direction.
    Flow {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 1)]
        direction: usize,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// Invariant battery; exits 5 when a check fails.
    Verify {
        /// Every n from 3 to 8.
        #[arg(long)]
        all: bool,
    },
    /// Chain vertices and triangle outlines for plotting.
    ExportChain {
        #[arg(long)]
        rep: PathBuf,
    },
}

#[derive(Debug)]
pub struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    pub fn usage(msg: impl Display) -> Self {
        CliError { code: 2, msg: msg.to_string() }
    }

    pub fn malformed(msg: impl Display) -> Self {
        CliError { code: 4, msg: msg.to_string() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfeasibleAngles { .. } | Error::EmptyVariety { .. } | Error::InfeasibleTriangle(_) => 3,
            _ => 4,
        };
        CliError { code, msg: e.to_string() }
    }
}

/// A command result: JSON always, TSV when the command has a table.
struct Output {
    json: String,
    tsv: String,
    /// Set by `roundtrip` and `verify` when a check fails.
    failed: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, tsv: String) -> Self {
        let mut json = serde_json::to_string_pretty(value).expect("serializable");
        json.push('\n');
        Output { json, tsv, failed: false }
    }

    /// TSV as `key<TAB>value` lines from the top-level fields.
    fn flat<T: Serialize>(value: &T) -> Self {
        let mut tsv = String::new();
        if let Ok(Value::Object(map)) = serde_json::to_value(value) {
            for (k, v) in map {
                let _ = writeln!(tsv, "{k}\t{v}");
            }
        }
        Output::new(value, tsv)
    }
}

/// Rewrites `--tol.<name>=v` and `--tol.<name> v` as `--tol <name>=v`.
fn expand_tol_flags(args: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        match a.strip_prefix("--tol.") {
            Some(rest) if rest.contains('=') => out.extend(["--tol".to_string(), rest.to_string()]),
            Some(rest) => {
                let value = it.next().unwrap_or_default();
                out.extend(["--tol".to_string(), format!("{rest}={value}")]);
            }
            None => out.push(a),
        }
    }
    out
}

fn tolerances(overrides: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut tol = default_tolerances();
    for o in overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("tolerance override `{o}` is not NAME=VALUE")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::usage(format!("tolerance `{name}`: `{value}` is not a number")))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(CliError::usage(format!("tolerance `{name}` must be positive")));
        }
        match tol.get_mut(name) {
            Some(slot) => *slot = value,
            None => {
                let known: Vec<&str> = tol.keys().map(String::as_str).collect();
                return Err(CliError::usage(format!("unknown tolerance `{name}`; known: {}", known.join(", "))));
            }
        }
    }
    Ok(tol)
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::malformed(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    }
    serde_json::from_str(&text).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))
}

fn read_rep(path: &Path) -> Result<DtRepresentation, CliError> {
    pick::<RepJson>(&read_json(path)?, "representation")?.to_rep()
}

fn need_n(g: &Global, default: Option<usize>) -> Result<usize, CliError> {
    let n = g.n.or(default).ok_or_else(|| CliError::usage("--n is required"))?;
    if n < 3 {
        return Err(CliError::usage(format!("n = {n}: need at least 3 punctures")));
    }
    Ok(n)
}

#[derive(Serialize)]
struct SampleAlphaOut {
    n: usize,
    alpha: Vec<f64>,
    lambda: f64,
}

fn cmd_sample_alpha(g: &Global) -> Result<Output, CliError> {
    let n = need_n(g, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let alpha = random_alpha(n, 0.05, &mut rng)?;
    let out = SampleAlphaOut {
        n,
        alpha: alpha.as_slice().to_vec(),
        lambda: alpha.lambda(),
    };
    let tsv = out.alpha.iter().enumerate().fold(String::from("i\talpha\n"), |mut s, (i, a)| {
        let _ = writeln!(s, "{}\t{a}", i + 1);
        s
    });
    Ok(Output::new(&out, tsv))
}

#[derive(Serialize)]
struct ConstructOut {
    representation: RepJson,
    chain: ChainJson,
    coordinates: CoordsJson,
    point: PointJson,
    mu: Vec<f64>,
    volume: f64,
}

fn describe(rep: &DtRepresentation) -> Result<ConstructOut, CliError> {
    Ok(ConstructOut {
        representation: RepJson::from_rep(rep),
        chain: ChainJson::from_chain(&to_chain(rep)?),
        coordinates: CoordsJson::from_coords(&action_angle(rep)?),
        point: PointJson::from_point(&coordinate_map(rep)?),
        mu: moment_mu(rep)?.mu,
        volume: rep.volume_chain()?,
    })
}

fn cmd_construct(g: &Global, alpha: &Option<PathBuf>, point: &Option<PathBuf>, random: bool) -> Result<Output, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let alpha = match alpha {
        Some(path) => read_alpha(&read_json(path)?)?,
        None => random_alpha(need_n(g, None)?, 0.05, &mut rng)?,
    };
    let p = match (point, random) {
        (Some(path), _) => pick::<PointJson>(&read_json(path)?, "point")?.to_point()?,
        (None, true) => random_projective(alpha.n() - 2, &mut rng),
        (None, false) => return Err(CliError::usage("give --point FILE or --random")),
    };
    let rep = construct_from_projective(&alpha, &p)?;
    Ok(Output::flat(&describe(&rep)?))
}

#[derive(Serialize)]
struct CoordsOut {
    coordinates: CoordsJson,
    point: PointJson,
    mu: Vec<f64>,
}

fn cmd_coords(rep: &Path) -> Result<Output, CliError> {
    let rep = read_rep(rep)?;
    let c = action_angle(&rep)?;
    let out = CoordsOut {
        coordinates: CoordsJson::from_coords(&c),
        point: PointJson::from_point(&coordinate_map(&rep)?),
        mu: moment_mu(&rep)?.mu,
    };
    Ok(Output::flat(&out))
}

#[derive(Serialize)]
struct RoundtripOut {
    n: usize,
    count: u64,
    seed: u64,
    max_fs: f64,
    max_conjugacy: f64,
    max_relator: f64,
    errors: Vec<String>,
    passed: bool,
}

fn cmd_roundtrip(g: &Global) -> Result<Output, CliError> {
    let n = need_n(g, Some(5))?;
    let count = g.count.unwrap_or(100);
    let tol = tolerances(&g.tol)?;
    let mut total = Metrics::default();
    for m in sharded(count, g.workers, |i| roundtrip_trial(g.seed, n, i)) {
        total.merge(m);
    }
    let get = |k: &str| total.max.get(k).copied().unwrap_or(0.0);
    let failed = total.failed_checks(&tol);
    let out = RoundtripOut {
        n,
        count,
        seed: g.seed,
        max_fs: get("fs"),
        max_conjugacy: get("conjugacy"),
        max_relator: get("relator"),
        errors: total.errors.clone(),
        passed: failed.is_empty(),
    };
    let mut o = Output::flat(&out);
    o.failed = !out.passed;
    Ok(o)
}

#[derive(Serialize)]
struct VolumeOut {
    lambda: f64,
    expected: f64,
    cocycle: f64,
    chain: f64,
    difference: f64,
    euler_class: i64,
}

fn cmd_volume(rep: &Path) -> Result<Output, CliError> {
    let rep = read_rep(rep)?;
    let cocycle = rep.volume_cocycle(PointH::I)?;
    let chain = rep.volume_chain()?;
    let out = VolumeOut {
        lambda: rep.lambda(),
        expected: -rep.lambda(),
        cocycle,
        chain,
        difference: (cocycle - chain).abs(),
        euler_class: rep.euler_class()?.euler_class,
    };
    Ok(Output::flat(&out))
}

#[derive(Serialize)]
struct FlowSample {
    t: f64,
    a: Vec<f64>,
    gamma: Vec<f64>,
    sigma: Vec<f64>,
}

#[derive(Serialize)]
struct FlowOut {
    direction: usize,
    dt: f64,
    near_boundary: bool,
    samples: Vec<FlowSample>,
}

fn cmd_flow(rep: &Path, direction: usize, steps: usize, dt: f64) -> Result<Output, CliError> {
    let rep = read_rep(rep)?;
    if !(dt.is_finite()) {
        return Err(CliError::usage("--dt must be finite"));
    }
    let traj = flow_trajectory(&rep, direction, steps, dt).map_err(|e| match e {
        Error::Index { .. } => CliError::usage(e),
        e => e.into(),
    })?;
    let samples: Vec<FlowSample> = traj
        .samples
        .into_iter()
        .map(|(t, c)| FlowSample {
            t,
            a: c.a,
            gamma: c.gamma,
            sigma: c.sigma,
        })
        .collect();
    let m = rep.n() - 3;
    let mut tsv = String::from("t");
    for i in 0..=m {
        let _ = write!(tsv, "\ta_{i}");
    }
    for i in 1..=m {
        let _ = write!(tsv, "\tsigma_{i}");
    }
    tsv.push('\n');
    for s in &samples {
        let _ = write!(tsv, "{}", s.t);
        for v in s.a.iter().chain(&s.sigma) {
            let _ = write!(tsv, "\t{v}");
        }
        tsv.push('\n');
    }
    let out = FlowOut {
        direction,
        dt,
        near_boundary: traj.near_boundary,
        samples,
    };
    Ok(Output::new(&out, tsv))
}

#[derive(Serialize)]
struct VerifyRow {
    n: usize,
    trials: u64,
    max: BTreeMap<String, f64>,
    chain_failures: u64,
    euler_failures: u64,
    errors: Vec<String>,
    failed: Vec<String>,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyOut {
    seed: u64,
    tolerances: BTreeMap<String, f64>,
    results: Vec<VerifyRow>,
    passed: bool,
}

fn cmd_verify(g: &Global, all: bool) -> Result<Output, CliError> {
    let tol = tolerances(&g.tol)?;
    let ns: Vec<usize> = match (all, g.n) {
        (false, Some(_)) => vec![need_n(g, None)?],
        _ => (3..=8).collect(),
    };
    let count = g.count.unwrap_or(200);
    let mut results = Vec::new();
    for n in ns {
        let mut total = Metrics::default();
        for m in sharded(count, g.workers, |i| verify_trial(g.seed, n, i)) {
            total.merge(m);
        }
        let failed = total.failed_checks(&tol);
        results.push(VerifyRow {
            n,
            trials: count,
            passed: failed.is_empty(),
            failed,
            max: total.max,
            chain_failures: total.chain_failures,
            euler_failures: total.euler_failures,
            errors: total.errors,
        });
    }
    let passed = results.iter().all(|r| r.passed);
    let names: Vec<&String> = tol.keys().collect();
    let mut tsv = String::from("n\ttrials");
    for k in &names {
        let _ = write!(tsv, "\t{k}");
    }
    tsv.push_str("\tchain_failures\teuler_failures\terrors\tpassed\n");
    for r in &results {
        let _ = write!(tsv, "{}\t{}", r.n, r.trials);
        for k in &names {
            match r.max.get(*k) {
                Some(v) => {
                    let _ = write!(tsv, "\t{v:e}");
                }
                None => tsv.push_str("\t-"),
            }
        }
        let _ = writeln!(tsv, "\t{}\t{}\t{}\t{}", r.chain_failures, r.euler_failures, r.errors.len(), r.passed);
    }
    let out = VerifyOut {
        seed: g.seed,
        tolerances: tol,
        results,
        passed,
    };
    let mut o = Output::new(&out, tsv);
    o.failed = !passed;
    Ok(o)
}

#[derive(Serialize)]
struct TriangleOut {
    index: usize,
    vertices: [[f64; 2]; 3],
    area: f64,
    degenerate: bool,
    polyline: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct ExportOut {
    #[serde(flatten)]
    chain: ChainJson,
    segments: usize,
    triangles: Vec<TriangleOut>,
}

fn cmd_export_chain(rep: &Path) -> Result<Output, CliError> {
    let rep = read_rep(rep)?;
    let chain = to_chain(&rep)?;
    let diag = validate_chain(&chain);
    let triangles: Vec<TriangleOut> = chain
        .triangles()
        .iter()
        .zip(&diag.triangles)
        .map(|(t, d)| {
            let v = t.vertices();
            let mut polyline = Vec::with_capacity(3 * ARC_SEGMENTS + 1);
            for k in 0..3 {
                let arc = geodesic_arc(v[k], v[(k + 1) % 3], ARC_SEGMENTS);
                polyline.extend_from_slice(&arc[..ARC_SEGMENTS]);
            }
            polyline.push(xy(&v[0]));
            TriangleOut {
                index: d.index,
                vertices: v.map(|p| xy(&p)),
                area: d.area,
                degenerate: d.degenerate,
                polyline,
            }
        })
        .collect();
    let mut tsv = String::from("triangle\tk\tx\ty\n");
    for t in &triangles {
        for (k, [x, y]) in t.polyline.iter().enumerate() {
            let _ = writeln!(tsv, "{}\t{k}\t{x}\t{y}", t.index);
        }
    }
    let out = ExportOut {
        chain: ChainJson::from_chain(&chain),
        segments: ARC_SEGMENTS,
        triangles,
    };
    Ok(Output::new(&out, tsv))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    tolerances(&g.tol)?;
    if g.workers == 0 {
        return Err(CliError::usage("--workers must be at least 1"));
    }
    if g.count == Some(0) {
        return Err(CliError::usage("--count must be at least 1"));
    }
    match &cli.command {
        Command::SampleAlpha => cmd_sample_alpha(g),
        Command::Construct { alpha, point, random } => cmd_construct(g, alpha, point, *random),
        Command::Coords { rep } => cmd_coords(rep),
        Command::Roundtrip => cmd_roundtrip(g),
        Command::Volume { rep } => cmd_volume(rep),
        Command::Flow { rep, direction, steps, dt } => cmd_flow(rep, *direction, *steps, *dt),
        Command::Verify { all } => cmd_verify(g, *all),
        Command::ExportChain { rep } => cmd_export_chain(rep),
    }
}

fn main() -> ExitCode {
    let args = expand_tol_flags(std::env::args());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            return ExitCode::from(e.code);
        }
    };
    let text = match cli.global.format {
        Format::Json => &out.json,
        Format::Tsv => &out.tsv,
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(4);
    }
    if out.failed {
        eprintln!("error: verification failed");
        return ExitCode::from(5);
    }
    ExitCode::SUCCESS
}
