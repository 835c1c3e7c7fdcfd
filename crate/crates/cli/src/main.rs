//! arrspec: exact spectral analysis of chamber walks on hyperplane
//! arrangements.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 desk-scale limit exceeded.

use arrspec_core::cochains::OrientationData;
use arrspec_core::error::Error;
use arrspec_core::generators;
use arrspec_core::io::{ArrangementFile, SpectrumFile, WeightsSpec};
use arrspec_core::rational::{format_rational, parse_rational, to_f64, Rational};
use arrspec_core::sim;
use arrspec_core::spectra::{
    self, full_spectrum, q_vector, stationary_exact, WeightAssignment,
};
use arrspec_core::verify;
use arrspec_core::{Arrangement, FaceComplex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "arrspec", version, about = "Exact chamber-walk spectra of central hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct InputArgs {
    /// Arrangement JSON file ({"dim": .., "hyperplanes": [["1","0"], ..]}).
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Built-in generator: three-lines, point-on-line, boolean, braid, random.
    #[arg(long = "gen")]
    gen: Option<String>,
    /// Ambient dimension for boolean/random generators.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Braid parameter m (hyperplanes x_i - x_j in R^m).
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Hyperplane count for the random generator.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Seed for random weights, random generator, and simulation. Falls
    /// back to the ARRSPEC_SEED environment variable.
    #[arg(long)]
    seed: Option<u64>,
    /// Weights: "uniform", "random", a comma list of rationals in
    /// canonical face order, or a path to a weights JSON file.
    #[arg(long, default_value = "uniform")]
    weights: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for per-flat eigen computations (output identical).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the faces and chambers of the arrangement.
    Faces(InputArgs),
    /// Print the intersection lattice with Mobius values and Betti numbers.
    Lattice(InputArgs),
    /// Full eigen-decomposition: one table row per eigenvector.
    Spectrum(InputArgs),
    /// Eigenvectors of a single flat.
    Eigenvectors {
        #[command(flatten)]
        input: InputArgs,
        /// Flat as a comma list of hyperplane indices ("" or "W" for the
        /// whole space).
        #[arg(long, default_value = "W")]
        flat: String,
    },
    /// Exact stationary distribution and its reference-normalized form.
    Stationary(InputArgs),
    /// Seeded Monte Carlo walk with total-variation reporting.
    Simulate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 100)]
        burn_in: u64,
        /// Write "steps,tv" checkpoints as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run every invariant suite; exits 2 on any failure.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Skip the 20-arrangement random eigen sweep.
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap help/version go to stdout with success.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::DeskScaleExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Faces(args) => cmd_faces(&args),
        Command::Lattice(args) => cmd_lattice(&args),
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Eigenvectors { input, flat } => cmd_eigenvectors(&input, &flat),
        Command::Stationary(args) => cmd_stationary(&args),
        Command::Simulate {
            input,
            steps,
            burn_in,
            csv,
        } => cmd_simulate(&input, steps, burn_in, csv.as_deref()),
        Command::Verify { input, quick } => cmd_verify(&input, quick),
    }
}

fn effective_seed(args: &InputArgs) -> Option<u64> {
    args.seed.or_else(|| {
        std::env::var("ARRSPEC_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
}

fn load_complex(args: &InputArgs) -> Result<FaceComplex, Error> {
    if let Some(n) = args.threads {
        // Ignore failure when a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let arrangement: Arrangement = if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)?;
        ArrangementFile::parse(&text)?.to_arrangement()?
    } else {
        let name = args.gen.as_deref().unwrap_or("three-lines");
        let seed = effective_seed(args).unwrap_or(0);
        generators::by_name(name, args.dim, args.m, args.n, seed)?
    };
    Ok(FaceComplex::build(arrangement))
}

fn load_weights(args: &InputArgs, complex: &FaceComplex) -> Result<WeightAssignment, Error> {
    let spec = args.weights.trim();
    let seed = effective_seed(args);
    match spec {
        "uniform" => Ok(WeightAssignment::uniform(complex)),
        "random" => {
            let seed = seed.ok_or_else(|| {
                Error::Parse("random weights need --seed or ARRSPEC_SEED".into())
            })?;
            Ok(WeightAssignment::random(complex, seed, 1000, 1000))
        }
        other if other.contains(',') => {
            let weights: Result<Vec<Rational>, Error> =
                other.split(',').map(parse_rational).collect();
            let weights = weights?;
            if weights.len() != complex.n_faces() {
                return Err(Error::Parse(format!(
                    "{} weights for {} faces (canonical face order: {})",
                    weights.len(),
                    complex.n_faces(),
                    complex
                        .faces()
                        .iter()
                        .map(|f| f.sign_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )));
            }
            WeightAssignment::new(weights)
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Parse(format!(
                    "weights {path:?} is neither a mode, a comma list, nor a readable file: {e}"
                ))
            })?;
            WeightsSpec::parse(&text)?.resolve(complex, seed)
        }
    }
}

fn flat_set_string(contains: &[usize]) -> String {
    if contains.is_empty() {
        "W".to_string()
    } else {
        format!(
            "{{{}}}",
            contains
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn flag_string(complex: &FaceComplex, flats: &[usize]) -> String {
    flats
        .iter()
        .map(|&x| flat_set_string(&complex.lattice().flat(x).contains))
        .collect::<Vec<_>>()
        .join(" < ")
}

fn cmd_faces(args: &InputArgs) -> Result<ExitCode, Error> {
    let complex = load_complex(args)?;
    let faces: Vec<String> = complex.faces().iter().map(|f| f.sign_string()).collect();
    let chambers: Vec<String> = complex
        .chambers()
        .iter()
        .map(|&c| complex.face(c).sign_string())
        .collect();
    match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "dim": complex.arrangement().dim(),
                "n_hyperplanes": complex.arrangement().n_hyperplanes(),
                "faces": faces,
                "chambers": chambers,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Table => {
            println!("{} faces, {} chambers", faces.len(), chambers.len());
            for f in complex.faces() {
                let kind = if f.is_chamber() { "chamber" } else { "face" };
                println!(
                    "  {}  codim {}  flat {}  {}",
                    f.sign_string(),
                    f.codim,
                    flat_set_string(&complex.lattice().flat(f.flat).contains),
                    kind
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lattice(args: &InputArgs) -> Result<ExitCode, Error> {
    let complex = load_complex(args)?;
    let lattice = complex.lattice();
    match args.format {
        Format::Json => {
            let flats: Vec<serde_json::Value> = lattice
                .flats()
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "id": f.id,
                        "contains": f.contains,
                        "codim": f.codim,
                        "mobius": f.mobius,
                        "chambers_of_restriction": complex.chambers_of_flat(f.id).len(),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "flats": flats,
                "betti": lattice.betti(),
                "chambers": complex.n_chambers(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Table => {
            println!("{} flats; Betti {:?}; {} chambers", lattice.n_flats(), lattice.betti(), complex.n_chambers());
            for f in lattice.flats() {
                println!(
                    "  {}  codim {}  mu = {}  |C(A^X)| = {}",
                    flat_set_string(&f.contains),
                    f.codim,
                    f.mobius,
                    complex.chambers_of_flat(f.id).len()
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn spectrum_table(complex: &FaceComplex, report: &spectra::SpectrumReport) {
    let chambers: Vec<String> = complex
        .chambers()
        .iter()
        .map(|&c| complex.face(c).sign_string())
        .collect();
    println!("chamber order: [{}]", chambers.join(", "));
    for pkg in &report.packages {
        println!(
            "flat {}  lambda = {}  multiplicity {}",
            flat_set_string(&complex.lattice().flat(pkg.flat).contains),
            format_rational(&pkg.lambda),
            pkg.multiplicity
        );
        for (flag, vec) in pkg.spanning_flags.iter().zip(&pkg.basis) {
            let coords: Vec<String> = vec.coeffs.iter().map(format_rational).collect();
            println!(
                "  {}  ->  ({})",
                flag_string(complex, &flag.flats),
                coords.join(", ")
            );
        }
    }
}

fn cmd_spectrum(args: &InputArgs) -> Result<ExitCode, Error> {
    let complex = load_complex(args)?;
    let weights = load_weights(args, &complex)?;
    let orient = OrientationData::deterministic(&complex);
    let report = full_spectrum(&complex, &weights, &orient)?;
    match args.format {
        Format::Json => {
            println!("{}", SpectrumFile::from_report(&complex, &report).render());
        }
        Format::Table => spectrum_table(&complex, &report),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eigenvectors(args: &InputArgs, flat_spec: &str) -> Result<ExitCode, Error> {
    let complex = load_complex(args)?;
    let weights = load_weights(args, &complex)?;
    let orient = OrientationData::deterministic(&complex);
    let contains: Vec<usize> = match flat_spec.trim() {
        "" | "W" | "w" => Vec::new(),
        list => {
            let parsed: Result<Vec<usize>, _> =
                list.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let mut v = parsed.map_err(|e| Error::Parse(format!("bad flat spec: {e}")))?;
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let flat = complex
        .lattice()
        .find(&contains)
        .ok_or_else(|| Error::FlatNotFound(contains.clone()))?;
    let pkg = spectra::eigenvectors_for_flat(&complex, &weights, flat, &orient)?;
    match args.format {
        Format::Json => {
            let vectors: Vec<Vec<String>> = pkg
                .basis
                .iter()
                .map(|v| v.coeffs.iter().map(format_rational).collect())
                .collect();
            let value = serde_json::json!({
                "flat": complex.lattice().flat(flat).contains,
                "lambda": format_rational(&pkg.lambda),
                "multiplicity": pkg.multiplicity,
                "eigenvectors": vectors,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Table => {
            println!(
                "flat {}  lambda = {}  multiplicity {}",
                flat_set_string(&complex.lattice().flat(flat).contains),
                format_rational(&pkg.lambda),
                pkg.multiplicity
            );
            for (flag, vec) in pkg.spanning_flags.iter().zip(&pkg.basis) {
                let coords: Vec<String> = vec.coeffs.iter().map(format_rational).collect();
                println!(
                    "  {}  ->  ({})",
                    flag_string(&complex, &flag.flats),
                    coords.join(", ")
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stationary(args: &InputArgs) -> Result<ExitCode, Error> {
    let complex = load_complex(args)?;
    let weights = load_weights(args, &complex)?;
    let pi = stationary_exact(&complex, &weights)?;
    let q = q_vector(&complex, &weights)?;
    let chambers: Vec<String> = complex
        .chambers()
        .iter()
        .map(|&c| complex.face(c).sign_string())
        .collect();
    match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "chambers": chambers,
                "stationary": pi.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
                "q": q.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Table => {
            println!("chamber      stationary      q");
            for ((c, p), qv) in chambers.iter().zip(&pi.coeffs).zip(&q.coeffs) {
                println!(
                    "  {:<10} {:<15} {}",
                    c,
                    format_rational(p),
                    format_rational(qv)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(
    args: &InputArgs,
    steps: u64,
    burn_in: u64,
    csv: Option<&std::path::Path>,
) -> Result<ExitCode, Error> {
    let complex = load_complex(args)?;
    let weights = load_weights(args, &complex)?;
    let seed = effective_seed(args).unwrap_or(0);
    let exact = stationary_exact(&complex, &weights)?;
    let emp = sim::run(&complex, &weights, steps, burn_in, seed)?;
    let tv = sim::tv_distance(&emp, &exact)?;

    // Spectral-gap context: the second-largest eigenvalue controls the
    // empirical convergence envelope (lambda_2 / lambda_W)^t.
    let lambda_w = weights.total();
    let lambda_2 = verify::all_lambdas(&complex, &weights)?
        .into_iter()
        .map(|(_, l)| l)
        .filter(|l| l < &lambda_w)
        .max();
    let gap = lambda_2.as_ref().map(|l2| {
        let ratio = l2 / &lambda_w;
        (to_f64(&ratio), 1.0 - to_f64(&ratio))
    });

    if let Some(path) = csv {
        let mut rows = String::from("steps,tv\n");
        for checkpoint in checkpoints(steps, burn_in) {
            let part = sim::run(&complex, &weights, checkpoint, burn_in, seed)?;
            let tv_c = sim::tv_distance(&part, &exact)?;
            rows.push_str(&format!("{},{}\n", checkpoint - burn_in, to_f64(&tv_c)));
        }
        std::fs::write(path, rows)?;
    }

    let counts: serde_json::Map<String, serde_json::Value> = complex
        .chambers()
        .iter()
        .zip(&emp.counts)
        .map(|(&c, &n)| {
            (
                complex.face(c).sign_string(),
                serde_json::Value::from(n),
            )
        })
        .collect();
    match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "counts": counts,
                "total": emp.total,
                "seed": seed,
                "tv_distance": format_rational(&tv),
                "tv_distance_decimal": to_f64(&tv),
                "lambda2_over_lambdaW": gap.map(|g| g.0),
                "spectral_gap": gap.map(|g| g.1),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Table => {
            println!("{} recorded steps (seed {seed})", emp.total);
            for (&c, &n) in complex.chambers().iter().zip(&emp.counts) {
                println!("  {}  {}", complex.face(c).sign_string(), n);
            }
            println!("TV distance to exact stationary: {:.6}", to_f64(&tv));
            if let Some((ratio, gap)) = gap {
                println!("spectral gap 1 - lambda_2/lambda_W = {gap:.6} (ratio {ratio:.6})");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn checkpoints(steps: u64, burn_in: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 1000u64.max(burn_in + 1);
    while c < steps {
        out.push(c);
        c *= 4;
    }
    out.push(steps);
    out
}

fn cmd_verify(args: &InputArgs, quick: bool) -> Result<ExitCode, Error> {
    if let Some(n) = args.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let seed = effective_seed(args).unwrap_or(2024);
    let report = verify::run_all(seed, !quick);
    let mut failed = 0usize;
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {} ({} ms) — {}", check.name, check.millis, check.detail);
        if !check.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} check(s) failed");
        return Ok(ExitCode::from(2));
    }
    println!("all {} checks passed", report.checks.len());
    Ok(ExitCode::SUCCESS)
}
