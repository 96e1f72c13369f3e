use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use coble::config::{covariant_vector, genericity_check, proportional, PointConfig};
use coble::covariants::coble_basis;
use coble::cuspidal::{d5_fields, x_hat};
use coble::lattice::{cached_subsystems, s7_orbit_split, CacheStatus, CartanType, RootSubsystem, RootSystem};
use coble::suites::{run_suites, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(name = "coble", version, about = "Coble covariants of Del Pezzo surfaces of degree 2 to 5")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON result to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "COBLE_CACHE_DIR", default_value = ".coble-cache", value_name = "PATH")]
    cache_dir: PathBuf,
    /// Do not read or write the enumeration cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate roots, or root subsystems of a given type.
    Roots {
        d: i64,
        /// Subsystem type such as 3A2, 7A1, D4, 2A1+A2.
        #[arg(long = "type", value_name = "T")]
        kind: Option<String>,
        /// Split 7A1 systems into the two orbits of the permutations of e1..e7.
        #[arg(long)]
        split_s7: bool,
    },
    /// Export the covariants of degree d and their span.
    Covariants { d: i64 },
    /// Evaluate all covariants on a configuration of 9 − d points.
    Eval {
        d: i64,
        config: Option<PathBuf>,
        /// Compare two configurations up to a common scalar.
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "config")]
        compare: Option<Vec<PathBuf>>,
    },
    /// Export the vector fields on the E6 and D5 Cartan algebras.
    Fields,
    /// Run verification suites; `all` runs everything.
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Roots { d, kind, split_s7 } => roots(&cli, *d, kind.as_deref(), *split_s7),
        Command::Covariants { d } => covariants(&cli, *d),
        Command::Eval { d, config, compare } => match (config, compare) {
            (_, Some(pair)) => compare_configs(&cli, *d, &pair[0], &pair[1]),
            (Some(c), None) => eval(&cli, *d, c),
            (None, None) => Err(Failure::Usage("eval needs a configuration file or --compare A B".into())),
        },
        Command::Fields => fields(&cli),
        Command::Verify { suites } => verify(&cli, suites),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn cache(cli: &Cli) -> Option<&Path> {
    (!cli.no_cache).then_some(cli.cache_dir.as_path())
}

/// Print `text` or the JSON, and write the JSON to `--out` if given.
fn emit(cli: &Cli, v: &Value, text: &str) -> Outcome {
    let pretty = serde_json::to_string_pretty(v)?;
    if let Some(path) = &cli.out {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| format!("{}: {e}", parent.display()))?;
        }
        fs::write(path, format!("{pretty}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let body = if cli.json { format!("{pretty}\n") } else { text.to_string() };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(body.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Usage(e.to_string())),
        _ => Ok(()),
    }
}

fn system_name(d: i64) -> &'static str {
    match d {
        5 => "A4",
        4 => "D5",
        3 => "E6",
        _ => "E7",
    }
}

fn root_json(rs: &RootSystem, i: usize) -> Value {
    json!({ "label": rs.label(i).to_string(), "coords": rs.root(i).coords() })
}

fn subsystem_json(rs: &RootSystem, s: &RootSubsystem) -> Value {
    let pos: Vec<String> =
        rs.positive_part(s.mask).iter().map(|i| rs.label(i).to_string()).collect();
    json!({ "type": s.cartan_type.to_string(), "positive_roots": pos })
}

fn roots(cli: &Cli, d: i64, kind: Option<&str>, split: bool) -> Outcome {
    let rs = RootSystem::for_degree(d)?;
    let Some(kind) = kind else {
        if split {
            return Err(Failure::Usage("--split-s7 needs --type 7A1".into()));
        }
        let v = json!({
            "d": d,
            "system": system_name(d),
            "count": rs.len(),
            "positive": (0..rs.len()).filter(|&i| rs.is_positive(i)).count(),
            "roots": (0..rs.len()).map(|i| root_json(&rs, i)).collect::<Vec<_>>(),
        });
        return emit(cli, &v, &format!("{}: {} roots\n", system_name(d), rs.len()));
    };
    let t: CartanType = kind.parse()?;
    let (systems, status) = cached_subsystems(&rs, &t, cache(cli))?;
    match status {
        CacheStatus::Hit => eprintln!("cache: hit"),
        CacheStatus::Written => eprintln!("cache: written"),
        CacheStatus::Disabled => {}
    }
    let mut v = json!({
        "d": d,
        "system": system_name(d),
        "type": t.to_string(),
        "count": systems.len(),
        "subsystems": systems.iter().map(|s| subsystem_json(&rs, s)).collect::<Vec<_>>(),
    });
    let mut text = format!("{} in {}: {}\n", t, system_name(d), systems.len());
    if split {
        if t.to_string() != "7A1" || d != 2 {
            return Err(Failure::Usage("--split-s7 applies to `roots 2 --type 7A1`".into()));
        }
        let sp = s7_orbit_split(&rs, &systems)?;
        v["split_s7"] = json!({ "type_a": sp.type_a.len(), "type_b": sp.type_b.len() });
        text.push_str(&format!("type (A): {}\ntype (B): {}\n", sp.type_a.len(), sp.type_b.len()));
    }
    emit(cli, &v, &text)
}

fn covariants(cli: &Cli, d: i64) -> Outcome {
    let (rc, space) = coble_basis(d)?;
    let v = space.to_json(&rc);
    let text = format!(
        "d={d}: degree {}, count {}, dimension {}\n",
        space.degree,
        space.covariants.len(),
        space.dimension
    );
    emit(cli, &v, &text)
}

fn read_config(path: &Path) -> Result<PointConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(PointConfig::from_json(&v).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn eval(cli: &Cli, d: i64, path: &Path) -> Outcome {
    let c = read_config(path)?;
    let g = genericity_check(&c)?;
    let vec = covariant_vector(&c, d)?;
    let v = json!({
        "d": d,
        "config": c.to_json(),
        "generic": g.is_generic(),
        "collinear": g.collinear,
        "conconic": g.conconic,
        "vector": vec.to_json(),
    });
    let mut text = format!("d={d}: {} covariant values\n", vec.values.len());
    if !g.is_generic() {
        text.push_str(&format!(
            "not generic: {} collinear triples, {} conconic sextuples\n",
            g.collinear.len(),
            g.conconic.len()
        ));
    }
    for (s, x) in vec.structures.iter().zip(&vec.values) {
        text.push_str(&format!("{s} = {x}\n"));
    }
    emit(cli, &v, &text)
}

fn compare_configs(cli: &Cli, d: i64, a: &Path, b: &Path) -> Outcome {
    let va = covariant_vector(&read_config(a)?, d)?;
    let vb = covariant_vector(&read_config(b)?, d)?;
    let same = proportional(&va.values, &vb.values);
    let v = json!({ "d": d, "proportional": same, "a": va.to_json(), "b": vb.to_json() });
    let text = format!("d={d}: vectors {}\n", if same { "proportional" } else { "not proportional" });
    emit(cli, &v, &text)?;
    if same {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn fields(cli: &Cli) -> Outcome {
    let x = x_hat()?;
    let (x2, x3) = d5_fields()?;
    let v = json!({ "e6": { "x_hat": x.to_json() }, "d5": { "x2": x2.to_json(), "x3": x3.to_json() } });
    let mut text = String::new();
    for (name, f) in [("X̂", &x), ("X̂2", &x2), ("X̂3", &x3)] {
        text.push_str(&format!("{name}:\n"));
        for (i, c) in f.coefficients().iter().enumerate() {
            text.push_str(&format!("  ∂/∂t{}: {c}\n", i + 1));
        }
    }
    emit(cli, &v, &text)
}

fn verify(cli: &Cli, names: &[String]) -> Outcome {
    let opts = SuiteOptions { seed: cli.seed, cache_dir: cache(cli).map(Path::to_path_buf), ..SuiteOptions::default() };
    let reports = run_suites(names, &opts)
        .map_err(|e| format!("{e}; available: all, {}", SUITES.join(", ")))?;
    let passed = reports.iter().all(|r| r.passed());
    let v = json!({
        "passed": passed,
        "suites": reports.iter().map(|r| r.to_json(cli.timing)).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.render());
        if cli.timing {
            text.push_str(&format!("{}: {:.2}s\n", r.suite, r.elapsed.as_secs_f64()));
        }
    }
    emit(cli, &v, &text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
