//! `berman`: command-line access to Berman code construction, decoding,
//! DFT verification and erasure-channel simulation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use berman::bec::{self, SimConfig, SimMode};
use berman::code::{self, checked_parameters, CodeSpec, Family};
use berman::decode;
use berman::dft::{self, GroupSpec, ZeroSet};
use berman::numfmt::round_significant;
use berman::rates;
use berman::symmetry::{self, DirectProductSubset};
use berman::{BitMatrix, BitVector, CoordTuple};
use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "berman", version, about = "Berman and dual Berman codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension, minimum distance and rate.
    Info(CodeArgs),
    /// Minimum-weight generator matrix.
    Genmat(CodeArgs),
    /// Encode a message bitstring.
    Encode(WordArgs),
    /// Decode a received bitstring with the recursive decoder.
    Decode(WordArgs),
    /// Puncture onto a direct-product subset and identify the result.
    Puncture(PunctureArgs),
    /// Weight-class lower bound on the orbit of a coordinate.
    Orbit(OrbitArgs),
    /// Exact and Gaussian rates, or the r closest to a target rate.
    Rate(RateArgs),
    /// Check the DFT construction against the recursive one.
    DftVerify(DftArgs),
    /// Check closure conditions of a zero-set and report its code dimension.
    ZerosetCheck(ZeroSetArgs),
    /// Monte Carlo EXIT and block-erasure estimates on the BEC.
    Simulate(SimArgs),
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[arg(long, default_value = "dual")]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct PunctureArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Pinned positions K, comma separated.
    #[arg(long, default_value = "")]
    positions: String,
    /// Values b for the pinned positions, comma separated.
    #[arg(long, default_value = "")]
    values: String,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Coordinate tuple, comma separated.
    #[arg(long)]
    tuple: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RateArgs {
    #[arg(long, default_value = "dual")]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: usize,
    /// Select the r whose rate is closest to this value.
    #[arg(long)]
    target: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DftArgs {
    /// Cyclic orders of G, comma separated.
    #[arg(long)]
    group: String,
    #[arg(long)]
    m: usize,
    /// Check one r only; default is every r in 0..=m.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZeroSetArgs {
    #[arg(long = "zero-set")]
    zero_set: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value = "dual")]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Simulate the abelian code of this zero-set instead of (n, r, m).
    #[arg(long = "zero-set")]
    zero_set: Option<PathBuf>,
    #[arg(long = "epsilon-grid")]
    epsilon_grid: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "bitmap_at_zero")]
    mode: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit 1 for bad input, 2 for failures of the tool itself.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<berman::Error> for Failure {
    fn from(e: berman::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Outcome<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| usage(format!("invalid {what} entry {x:?}"))))
        .collect()
}

fn family(s: &str) -> Outcome<Family> {
    Ok(s.parse::<Family>()?)
}

fn spec(a: &CodeArgs) -> Outcome<CodeSpec> {
    let f = family(&a.family)?;
    checked_parameters(a.n, a.r, a.m, f)?;
    Ok(CodeSpec::new(a.n, a.r, a.m, f)?)
}

fn big(x: &num_bigint::BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn rate6(x: f64) -> Value {
    json!(round_significant(x, 6))
}

fn manifest(command: &str, params: Value, seed: Option<u64>) -> Value {
    json!({
        "command": command,
        "params": params,
        "seed": seed,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn emit(text: String, out: Option<&Path>, manifest: Option<&Value>) -> Outcome<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
            if let Some(m) = manifest {
                let mut m = m.clone();
                let ts = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                m["timestamp_unix"] = json!(ts);
                let side = PathBuf::from(format!("{}.manifest.json", path.display()));
                let body = serde_json::to_string_pretty(&m).expect("json value serializes") + "\n";
                std::fs::write(&side, body).map_err(|e| Failure::Internal(format!("{}: {e}", side.display())))?;
            }
            Ok(())
        }
    }
}

fn emit_json(mut body: Value, command: &str, params: Value, seed: Option<u64>, out: Option<&Path>) -> Outcome<()> {
    let m = manifest(command, params, seed);
    body["manifest"] = m.clone();
    let text = serde_json::to_string_pretty(&body).expect("json value serializes") + "\n";
    emit(text, out, Some(&m))
}

fn code_params(a: &CodeArgs) -> Value {
    json!({"family": a.family, "n": a.n, "r": a.r, "m": a.m})
}

fn info(a: &CodeArgs) -> Outcome<()> {
    let f = family(&a.family)?;
    // Closed forms only, so lengths beyond memory are fine here.
    let p = checked_parameters(a.n, a.r, a.m, f)?;
    let rate = rates::to_f64(&rates::exact_rate(a.n, a.r, a.m, f)?);
    let body = json!({
        "code": format!("{}_{}({},{})", if f == Family::Berman { "D" } else { "C" }, a.n, a.r, a.m),
        "length": big(&p.length),
        "dimension": big(&p.dimension),
        "dmin": p.min_distance.as_ref().map(big),
        "rate": rate6(rate),
    });
    emit_json(body, "info", code_params(a), None, a.out.as_deref())
}

fn genmat(a: &CodeArgs) -> Outcome<()> {
    let s = spec(a)?;
    let g = code::generator_matrix(&s);
    let rows: Vec<String> = g.rows().iter().map(BitVector::to_bitstring).collect();
    let body = json!({"num_rows": g.num_rows(), "num_cols": g.num_cols(), "rows": rows});
    emit_json(body, "genmat", code_params(a), None, a.code_out())
}

impl CodeArgs {
    fn code_out(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

fn encode_cmd(a: &WordArgs) -> Outcome<()> {
    let s = spec(&a.code)?;
    let msg = BitVector::from_bitstring(&a.word)?;
    let c = code::encode(&s, &msg)?;
    let mut params = code_params(&a.code);
    params["word"] = json!(a.word);
    emit_json(
        json!({"codeword": c.to_bitstring()}),
        "encode",
        params,
        None,
        a.code.code_out(),
    )
}

fn decode_cmd(a: &WordArgs) -> Outcome<()> {
    let s = spec(&a.code)?;
    let y = BitVector::from_bitstring(&a.word)?;
    let d = decode::decode(&s, &y)?;
    let body = json!({
        "codeword": d.codeword.to_bitstring(),
        "corrected_positions": d.corrected_positions,
        "num_corrected": d.corrected_positions.len(),
    });
    let mut params = code_params(&a.code);
    params["word"] = json!(a.word);
    emit_json(body, "decode", params, None, a.code.code_out())
}

fn puncture_cmd(a: &PunctureArgs) -> Outcome<()> {
    let s = spec(&a.code)?;
    let k: Vec<usize> = parse_list(&a.positions, "position")?;
    let b: Vec<usize> = parse_list(&a.values, "value")?;
    let h = DirectProductSubset::new(s.n(), s.m(), &k, &b)?;
    let p = symmetry::puncture_code(&s, &h)?;
    let target = if k.is_empty() {
        s
    } else {
        symmetry::punctured_spec(&s, &h)?
    };
    let matches = p.row_space_equal(&code::generator_matrix(&target))?;
    let rows: Vec<String> = p.rows().iter().map(BitVector::to_bitstring).collect();
    let body = json!({
        "punctured_code": target.to_string(),
        "length": p.num_cols(),
        "dimension": p.num_rows(),
        "matches_family_member": matches,
        "rows": rows,
    });
    let mut params = code_params(&a.code);
    params["positions"] = json!(k);
    params["values"] = json!(b);
    emit_json(body, "puncture", params, None, a.code.code_out())
}

fn orbit_cmd(a: &OrbitArgs) -> Outcome<()> {
    let t: Vec<usize> = parse_list(&a.tuple, "tuple")?;
    if t.len() != a.m {
        return Err(usage(format!("tuple has {} entries, expected m = {}", t.len(), a.m)));
    }
    checked_parameters(a.n, 0, a.m, Family::DualBerman)?;
    let tuple = CoordTuple::new(t.clone());
    let orbit = symmetry::weight_class_orbit(&tuple, a.n, a.m)?;
    let body = json!({
        "tuple": t,
        "weight": tuple.weight(),
        "orbit_lower_bound_size": orbit.len(),
        "at_least_2m": orbit.len() >= 2 * a.m,
        "members": orbit.iter().map(|x| x.entries().to_vec()).collect::<Vec<_>>(),
    });
    let params = json!({"n": a.n, "m": a.m, "tuple": t});
    emit_json(body, "orbit", params, None, a.out.as_deref())
}

fn rate_cmd(a: &RateArgs) -> Outcome<()> {
    let f = family(&a.family)?;
    let params = json!({"family": a.family, "n": a.n, "r": a.r, "m": a.m, "target": a.target});
    let body = match (a.r, a.target) {
        (_, Some(target)) => {
            let s = rates::select_r_for_target_rate(a.n, a.m, target, f)?;
            json!({"r": s.r, "rate": rate6(s.rate), "gaussian_r": s.gaussian_r})
        }
        (Some(r), None) => {
            let exact = rates::exact_rate(a.n, r, a.m, f)?;
            let dual_gauss = rates::gaussian_rate_approx(a.n, r, a.m)?;
            let gauss = if f == Family::Berman {
                1.0 - dual_gauss
            } else {
                dual_gauss
            };
            json!({
                "rate": rate6(rates::to_f64(&exact)),
                "rate_exact": exact.to_string(),
                "gaussian_approx": rate6(gauss),
            })
        }
        (None, None) => return Err(usage("rate needs --r or --target")),
    };
    emit_json(body, "rate", params, None, a.out.as_deref())
}

fn dft_cmd(a: &DftArgs) -> Outcome<()> {
    let orders: Vec<usize> = parse_list(&a.group, "group order")?;
    let g = GroupSpec::new(orders.clone(), a.m)?;
    let rs: Vec<usize> = match a.r {
        Some(r) if r > a.m => return Err(usage(format!("r must satisfy 0 <= r <= m, got r={r}, m={}", a.m))),
        Some(r) => vec![r],
        None => (0..=a.m).collect(),
    };
    let reports = rs
        .iter()
        .map(|&r| dft::equivalence_check(&g, r))
        .collect::<Result<Vec<_>, _>>()?;
    let f = dft::build_field(&g)?;
    let body = json!({
        "equivalent": reports.iter().all(|x| x.equivalent),
        "field_degree": f.degree(),
        "field_modulus": format!("{:#b}", f.field().modulus()),
        "reports": reports,
    });
    let params = json!({"group": orders, "m": a.m, "r": a.r});
    emit_json(body, "dft-verify", params, None, a.out.as_deref())
}

fn read_zero_set(path: &Path) -> Outcome<ZeroSet> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(ZeroSet::from_json(&text)?)
}

fn zeroset_cmd(a: &ZeroSetArgs) -> Outcome<()> {
    let z = read_zero_set(&a.zero_set)?;
    let report = dft::validate_capacity_family_zero_set(&z);
    let dimension = if report.doubling {
        let f = dft::build_field(z.group())?;
        Some(dft::code_from_zero_set(&z, &f)?.num_rows())
    } else {
        None
    };
    let body = json!({
        "group": z.group().orders(),
        "m": z.group().m(),
        "zero_set_size": z.len(),
        "closure": report,
        "dimension": dimension,
        "length": z.group().size(),
    });
    let params = json!({"zero_set": a.zero_set.display().to_string()});
    emit_json(body, "zeroset-check", params, None, a.out.as_deref())
}

fn resolve_seed(flag: Option<u64>) -> Outcome<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("TOOL_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("TOOL_SEED={v:?} is not an integer"))),
        Err(_) => Ok(0),
    }
}

fn simulate_cmd(a: &SimArgs) -> Outcome<()> {
    let seed = resolve_seed(a.seed)?;
    let mode: SimMode = a.mode.parse()?;
    let epsilons: Vec<f64> = parse_list(&a.epsilon_grid, "epsilon")?;
    let (g, params): (BitMatrix, Value) = match (&a.zero_set, a.n, a.r, a.m) {
        (Some(path), _, _, _) => {
            let z = read_zero_set(path)?;
            let f = dft::build_field(z.group())?;
            (
                dft::code_from_zero_set(&z, &f)?,
                json!({"zero_set": path.display().to_string()}),
            )
        }
        (None, Some(n), Some(r), Some(m)) => {
            let code = CodeArgs {
                family: a.family.clone(),
                n,
                r,
                m,
                out: None,
            };
            (code::generator_matrix(&spec(&code)?), code_params(&code))
        }
        _ => return Err(usage("simulate needs --n, --r and --m, or --zero-set")),
    };
    let cfg = SimConfig {
        epsilons,
        trials: a.trials,
        seed,
        mode,
    };
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let result = pool.install(|| bec::exit_and_erasure_rates(&g, &cfg))?;
    let mut params = params;
    params["epsilon_grid"] = json!(cfg.epsilons);
    params["trials"] = json!(cfg.trials);
    params["mode"] = json!(cfg.mode);
    let m = manifest("simulate", params, Some(seed));
    emit(bec::to_csv(&result), a.out.as_deref(), Some(&m))
}

fn run(cli: Cli) -> Outcome<()> {
    match &cli.command {
        Command::Info(a) => info(a),
        Command::Genmat(a) => genmat(a),
        Command::Encode(a) => encode_cmd(a),
        Command::Decode(a) => decode_cmd(a),
        Command::Puncture(a) => puncture_cmd(a),
        Command::Orbit(a) => orbit_cmd(a),
        Command::Rate(a) => rate_cmd(a),
        Command::DftVerify(a) => dft_cmd(a),
        Command::ZerosetCheck(a) => zeroset_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
