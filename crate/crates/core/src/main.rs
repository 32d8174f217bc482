//! Command-line front end. Every command prints a single JSON report with
//! sorted keys, suitable for golden tests and scripting.
//!
//! Exit codes: 0 success, 2 user error, 3 resource limit, 4 internal
//! invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use comarr::arrangement::Arrangement;
use comarr::error::Error;
use comarr::geometry::{
    find_parallelogram, graded_collision, in_modified_complement, sum_collision, Configuration,
};
use comarr::lattice::{
    build_lattice, char_poly, finite_field_charpoly_auto, poincare_poly, region_count,
    DEFAULT_FLAT_CAP,
};
use comarr::maps::{stabilize, subset_sums, verify_pullback};
use comarr::sampler::{
    draw_configuration, grid_census, sample, SampleMode, SamplerSpec, DEFAULT_CENSUS_CAP,
    GENERATOR_ID,
};
use comarr::GaussianRational;

const FORMAT_VERSION: &str = "1";

/// Exact computations on center-of-mass hyperplane arrangements.
#[derive(Parser)]
#[command(name = "comarr", version, about)]
struct Cli {
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpaceArgs {
    /// Subset size t.
    #[arg(long)]
    t: usize,

    /// Number of points k.
    #[arg(long)]
    k: usize,

    /// Use the modified space (all subset sizes up to t at once).
    #[arg(long)]
    modified: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the defining hyperplane arrangement.
    Build {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Intersection-lattice invariants: characteristic and Poincare
    /// polynomials, region counts, flats per codimension.
    Invariants {
        #[command(flatten)]
        space: SpaceArgs,

        /// Also run the finite-field counting oracle and require agreement.
        #[arg(long)]
        oracle: bool,

        /// Include the full lattice export (flats, Mobius values, covers).
        #[arg(long)]
        flats: bool,
    },
    /// Decide membership of a configuration file, with witnesses.
    Check {
        /// Configuration JSON file: {"k": n, "points": [["p/q","r/s"], ...]}.
        #[arg(long)]
        file: PathBuf,

        #[arg(long)]
        t: usize,

        #[arg(long)]
        modified: bool,
    },
    /// Bulk property run: pullback equivalence, symmetric-group
    /// equivariance, and stabilization landing on seeded samples.
    Verify {
        #[arg(long)]
        t: usize,

        #[arg(long)]
        k: usize,

        /// Configurations per property.
        #[arg(long, default_value_t = 100)]
        count: usize,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Coordinate bound for drawn rationals.
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
    /// Append the stabilization point to a configuration file.
    Stabilize {
        #[arg(long)]
        file: PathBuf,

        #[arg(long)]
        t: usize,
    },
    /// Draw seeded configurations satisfying a membership predicate.
    Sample {
        #[arg(long)]
        t: usize,

        #[arg(long)]
        k: usize,

        /// One of: conf, M, M_prime.
        #[arg(long)]
        mode: String,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        #[arg(long, default_value_t = 10)]
        count: usize,

        #[arg(long, default_value_t = 20)]
        bound: i64,

        #[arg(long, default_value_t = 100_000)]
        max_rejections: u64,
    },
    /// Exhaustively census ordered tuples over a finite grid.
    Census {
        #[arg(long)]
        t: usize,

        #[arg(long)]
        k: usize,

        /// JSON array of grid points; entries are "p/q" or ["p/q","r/s"].
        #[arg(long)]
        grid: String,

        #[arg(long, default_value_t = DEFAULT_CENSUS_CAP)]
        cap: u128,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command_name, parameters, outcome) = run(&cli.command);
    match outcome {
        Ok(result) => {
            let report = json!({
                "command": command_name,
                "deterministic": true,
                "parameters": parameters,
                "result": result,
                "versions": {"format": FORMAT_VERSION, "tool": env!("CARGO_PKG_VERSION")},
            });
            print_json(&report, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let code = failure.exit_code();
            let report = json!({
                "command": command_name,
                "error": {"code": code, "message": failure.message()},
                "versions": {"format": FORMAT_VERSION, "tool": env!("CARGO_PKG_VERSION")},
            });
            print_json(&report, cli.pretty);
            ExitCode::from(code)
        }
    }
}

fn print_json(value: &Value, pretty: bool) {
    let rendered = if pretty {
        serde_json::to_string_pretty(value).expect("report serializes")
    } else {
        serde_json::to_string(value).expect("report serializes")
    };
    println!("{rendered}");
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        self.code
    }

    fn message(&self) -> &str {
        &self.message
    }

    fn user(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn defect(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::LatticeCapExceeded { .. }
            | Error::SamplerExhausted { .. }
            | Error::CensusCapExceeded { .. }
            | Error::BadPrimes(_) => 3,
            Error::Defect(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn run(command: &Command) -> (&'static str, Value, Result<Value, Failure>) {
    match command {
        Command::Build { space } => (
            "build",
            json!({"t": space.t, "k": space.k, "modified": space.modified}),
            cmd_build(space),
        ),
        Command::Invariants {
            space,
            oracle,
            flats,
        } => (
            "invariants",
            json!({
                "t": space.t, "k": space.k, "modified": space.modified,
                "oracle": oracle, "flats": flats,
            }),
            cmd_invariants(space, *oracle, *flats),
        ),
        Command::Check { file, t, modified } => (
            "check",
            json!({"file": file.display().to_string(), "t": t, "modified": modified}),
            cmd_check(file, *t, *modified),
        ),
        Command::Verify {
            t,
            k,
            count,
            seed,
            bound,
        } => (
            "verify",
            json!({"t": t, "k": k, "count": count, "seed": seed, "bound": bound}),
            cmd_verify(*t, *k, *count, *seed, *bound),
        ),
        Command::Stabilize { file, t } => (
            "stabilize",
            json!({"file": file.display().to_string(), "t": t}),
            cmd_stabilize(file, *t),
        ),
        Command::Sample {
            t,
            k,
            mode,
            seed,
            count,
            bound,
            max_rejections,
        } => (
            "sample",
            json!({
                "t": t, "k": k, "mode": mode, "seed": seed, "count": count,
                "bound": bound, "max_rejections": max_rejections,
            }),
            cmd_sample(*t, *k, mode, *seed, *count, *bound, *max_rejections),
        ),
        Command::Census { t, k, grid, cap } => (
            "census",
            json!({"t": t, "k": k, "grid": grid, "cap": u128_value(*cap)}),
            cmd_census(*t, *k, grid, *cap),
        ),
    }
}

/// Integers render as JSON numbers when they fit and decimal strings
/// otherwise; nothing ever degrades to floating point.
fn bigint_value(v: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn u128_value(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn build_space(space: &SpaceArgs) -> Result<Arrangement, Failure> {
    let arrangement = if space.modified {
        Arrangement::build_modified(space.t, space.k)?
    } else {
        Arrangement::build(space.t, space.k)?
    };
    Ok(arrangement)
}

fn flat_cap() -> Result<usize, Failure> {
    match std::env::var("COMARR_MAX_FLATS") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Failure::user(format!("COMARR_MAX_FLATS={raw} is not a number"))),
        Err(_) => Ok(DEFAULT_FLAT_CAP),
    }
}

fn cmd_build(space: &SpaceArgs) -> Result<Value, Failure> {
    let arrangement = build_space(space)?;
    let mut value = serde_json::to_value(&arrangement).expect("arrangement serializes");
    value["count"] = json!(arrangement.len());
    Ok(value)
}

fn cmd_invariants(space: &SpaceArgs, oracle: bool, flats: bool) -> Result<Value, Failure> {
    let arrangement = build_space(space)?;
    let lattice = build_lattice(&arrangement, flat_cap()?)?;
    let chi = char_poly(&lattice);
    let pi = poincare_poly(&lattice);
    let (regions, bounded) = region_count(&lattice);

    let mut result = json!({
        "bounded": bigint_value(&bounded),
        "charpoly": chi,
        "flats_by_codim": lattice.flats_by_codim(),
        "hyperplanes": arrangement.len(),
        "poincare": pi,
        "regions": bigint_value(&regions),
    });

    if flats {
        result["lattice"] = serde_json::to_value(&lattice).expect("lattice serializes");
    }

    if oracle {
        let counted = finite_field_charpoly_auto(&arrangement)?;
        if counted != chi {
            return Err(Failure::defect(format!(
                "finite-field oracle disagrees with the lattice route: {} vs {}",
                serde_json::to_string(&counted).unwrap_or_default(),
                serde_json::to_string(&chi).unwrap_or_default(),
            )));
        }
        result["oracle_agrees"] = json!(true);
    }
    Ok(result)
}

fn read_configuration(path: &PathBuf) -> Result<Configuration, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|err| Failure::user(format!("cannot read {}: {err}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|err| Failure::user(format!("cannot parse {}: {err}", path.display())))
}

fn cmd_check(file: &PathBuf, t: usize, modified: bool) -> Result<Value, Failure> {
    if t < 1 {
        return Err(Failure::user("subset size t must be >= 1"));
    }
    let configuration = read_configuration(file)?;
    let witness = if modified {
        graded_collision(t, &configuration)?
    } else {
        sum_collision(t, &configuration)?
    };
    let mut result = json!({
        "k": configuration.len(),
        "member": witness.is_none(),
        "witness": witness,
    });
    if t == 2 {
        result["parallelogram"] = serde_json::to_value(find_parallelogram(&configuration))
            .expect("parallelogram serializes");
    }
    Ok(result)
}

fn cmd_verify(t: usize, k: usize, count: usize, seed: u64, bound: i64) -> Result<Value, Failure> {
    if t < 1 || k < t {
        return Err(Failure::user(format!(
            "verify requires 1 <= t <= k (got t={t}, k={k})"
        )));
    }
    if count < 1 {
        return Err(Failure::user("count must be >= 1"));
    }
    if bound < 1 {
        return Err(Failure::user("bound must be >= 1"));
    }

    // pullback and equivariance run on raw draws so both membership outcomes
    // occur; landing runs on rejection samples from the modified complement
    let mut raw_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm_rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));

    let mut pullback_failures = 0usize;
    let mut equivariance_failures = 0usize;
    for _ in 0..count {
        let configuration = draw_configuration(&mut raw_rng, k, bound);

        let report = verify_pullback(t, &configuration)?;
        if !report.consistent {
            pullback_failures += 1;
        }

        let mut permutation: Vec<usize> = (0..k).collect();
        permutation.shuffle(&mut perm_rng);
        let permuted = comarr::geometry::permute(&configuration, &permutation)?;
        let member = sum_collision(t, &configuration)?.is_none();
        let permuted_member = sum_collision(t, &permuted)?.is_none();
        let mut sums_a = subset_sums(t, &configuration)?.entries;
        let mut sums_b = subset_sums(t, &permuted)?.entries;
        sums_a.sort();
        sums_b.sort();
        if member != permuted_member || sums_a != sums_b {
            equivariance_failures += 1;
        }
    }

    let spec = SamplerSpec {
        k,
        t,
        mode: SampleMode::ModifiedComplement,
        seed,
        coordinate_bound: bound,
        max_rejections: 100_000,
    };
    let mut landing_failures = 0usize;
    for configuration in sample(&spec, count)? {
        let stabilized = stabilize(t, &configuration)?;
        if !in_modified_complement(t, &stabilized)? {
            landing_failures += 1;
        }
    }

    let result = json!({
        "checked": count,
        "equivariance_failures": equivariance_failures,
        "generator_id": GENERATOR_ID,
        "landing_failures": landing_failures,
        "pullback_failures": pullback_failures,
    });
    if pullback_failures + landing_failures + equivariance_failures > 0 {
        return Err(Failure::defect(format!(
            "property run found failures: {result}"
        )));
    }
    Ok(result)
}

fn cmd_stabilize(file: &PathBuf, t: usize) -> Result<Value, Failure> {
    if t < 1 {
        return Err(Failure::user("subset size t must be >= 1"));
    }
    let configuration = read_configuration(file)?;
    let input_member = in_modified_complement(t, &configuration)?;
    let stabilized = stabilize(t, &configuration)?;
    let landing = in_modified_complement(t, &stabilized)?;
    Ok(json!({
        "appended": stabilized.point(stabilized.len() - 1),
        "configuration": stabilized,
        "input_member": input_member,
        "landing": landing,
    }))
}

fn cmd_sample(
    t: usize,
    k: usize,
    mode: &str,
    seed: u64,
    count: usize,
    bound: i64,
    max_rejections: u64,
) -> Result<Value, Failure> {
    let mode = match mode {
        "conf" => SampleMode::Conf,
        "M" => SampleMode::Complement,
        "M_prime" => SampleMode::ModifiedComplement,
        other => {
            return Err(Failure::user(format!(
                "unknown mode {other:?}; expected conf, M, or M_prime"
            )))
        }
    };
    let spec = SamplerSpec {
        k,
        t,
        mode,
        seed,
        coordinate_bound: bound,
        max_rejections,
    };
    let configurations = sample(&spec, count)?;
    let entries: Vec<Value> = configurations
        .iter()
        .enumerate()
        .map(|(index, configuration)| {
            json!({
                "configuration": configuration,
                "index": index,
            })
        })
        .collect();
    Ok(json!({
        "configurations": entries,
        "generator_id": GENERATOR_ID,
        "spec": spec,
    }))
}

fn parse_grid(raw: &str) -> Result<Vec<GaussianRational>, Failure> {
    let value: Value = serde_json::from_str(raw)
        .map_err(|err| Failure::user(format!("grid is not valid JSON: {err}")))?;
    let Value::Array(entries) = value else {
        return Err(Failure::user("grid must be a JSON array"));
    };
    let mut grid = Vec::with_capacity(entries.len());
    for entry in entries {
        let point = match &entry {
            Value::String(s) => {
                let re = s
                    .parse()
                    .map_err(|err| Failure::user(format!("bad grid entry {s:?}: {err}")))?;
                GaussianRational::real(re)
            }
            Value::Array(_) => serde_json::from_value(entry.clone())
                .map_err(|err| Failure::user(format!("bad grid entry: {err}")))?,
            other => {
                return Err(Failure::user(format!(
                    "grid entries must be \"p/q\" strings or [re, im] pairs, got {other}"
                )))
            }
        };
        grid.push(point);
    }
    Ok(grid)
}

fn cmd_census(t: usize, k: usize, raw_grid: &str, cap: u128) -> Result<Value, Failure> {
    let grid = parse_grid(raw_grid)?;
    let (total, members) = grid_census(k, t, &grid, cap)?;
    Ok(json!({
        "grid_size": grid.len(),
        "members": u128_value(members),
        "total": u128_value(total),
    }))
}
