//! Reproducibility front-end: one subcommand per experiment, JSON report on
//! stdout, diagnostics on stderr. Exit codes: 0 = all checks pass, 1 = a
//! mathematical check failed, 2 = usage or I/O error.

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use serde_json::json;
use simplex_obstruction::error::Error;
use simplex_obstruction::linalg::{solve_field, Field};
use simplex_obstruction::obstruction::{build_matrix, export_system, ObstructionSystem};
use simplex_obstruction::paths::{edge_path, face_loop, BlockUnitaryPath};
use simplex_obstruction::report::RunReport;
use simplex_obstruction::skeleton::{enumerate_cells, Subsimplex};
use simplex_obstruction::{dynsys, Result};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "simplex-obstruction", version, about = "Builds and checks the obstruction system of the S_n-simplex 2-skeleton")]
struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Gf2,
    Gfp,
    Rational,
    Integer,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Gf2 => Field::Gf2,
            FieldArg::Gfp => Field::Gfp,
            FieldArg::Rational => Field::Rational,
            FieldArg::Integer => Field::Integer,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the system M x = D and export it as files.
    Build {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Output directory for M.mtx, delta.json, D.json, indices.json,
        /// report.json.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Decide solvability of M x = D over a coefficient domain.
    Solve {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum)]
        field: FieldArg,
        /// Prime modulus; required exactly for --field gfp.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Cross-validate the winding identity on random face loops.
    VerifyPaths {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Number of random faces to check.
        #[arg(long, default_value_t = 50)]
        faces: usize,
        /// Samples per edge path (at least 64).
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum allowed |numeric winding − exact residual|.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Sweep the exact grid certifying piecewise equivalence.
    Counterexample {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        grid_depth: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, passed)) => {
            emit(&report, cli.format);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::LiftingResolution { .. }
                | Error::CompositionMismatch { .. }
                | Error::Internal(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn emit(report: &RunReport, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
        }
        Format::Text => {
            println!("command: {} (n = {}, v{})", report.command, report.n, report.version);
            for (key, value) in &report.parameters {
                println!("  param {key} = {value}");
            }
            for (module, value) in &report.results {
                println!("  [{module}] {value}");
            }
            for (phase, ms) in &report.timings_ms {
                println!("  time {phase}: {ms} ms");
            }
        }
    }
}

fn run(command: &Command) -> Result<(RunReport, bool)> {
    match command {
        Command::Build { n, out } => cmd_build(*n, out),
        Command::Solve { n, field, p } => cmd_solve(*n, (*field).into(), *p),
        Command::VerifyPaths {
            n,
            faces,
            samples,
            seed,
            tol,
        } => cmd_verify_paths(*n, *faces, *samples, *seed, *tol),
        Command::Counterexample { n, grid_depth } => cmd_counterexample(*n, *grid_depth),
    }
}

fn cmd_build(n: usize, out: &PathBuf) -> Result<(RunReport, bool)> {
    let mut report = RunReport::new("build", n);
    report.parameter("out", out.display().to_string());
    let sys = report.timed("build", || build_matrix(n))?;
    report.result(
        "obstruction",
        json!({
            "columns": sys.num_cols(),
            "rows": sys.num_rows(),
        }),
    );
    report.timed("export", || export_system(&sys, out))?;
    std::fs::write(
        out.join("report.json"),
        serde_json::to_string_pretty(&report).expect("serializable"),
    )
    .map_err(|source| Error::Io {
        path: out.join("report.json"),
        source,
    })?;
    Ok((report, true))
}

fn cmd_solve(n: usize, field: Field, p: Option<u64>) -> Result<(RunReport, bool)> {
    let mut report = RunReport::new("solve", n);
    report.parameter("field", field);
    if let Some(p) = p {
        report.parameter("p", p);
    }
    let sys = report.timed("build", || build_matrix(n))?;
    let solve = report.timed("solve", || solve_field(sys.rows(), sys.rhs(), field, p))?;
    report.result("exact-linalg", &solve);
    Ok((report, true))
}

fn cmd_verify_paths(
    n: usize,
    faces: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<(RunReport, bool)> {
    if faces < 1 {
        return Err(Error::InvalidInput("need at least one face".into()));
    }
    if samples < 64 {
        return Err(Error::InvalidInput(
            "need at least 64 samples per edge".into(),
        ));
    }
    let mut report = RunReport::new("verify-paths", n);
    report
        .parameter("faces", faces)
        .parameter("samples", samples)
        .parameter("seed", seed)
        .parameter("tol", tol);

    let sys = report.timed("build", || build_matrix(n))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let all_faces = enumerate_cells(n, 2)?;
    let chosen: Vec<&Subsimplex> = (0..faces.min(all_faces.len()))
        .map(|_| &all_faces[rng.gen_range(0..all_faces.len())])
        .collect();

    let max_deviation = report.timed("verify", || {
        verify_face_loops(&sys, &chosen, samples, &mut rng)
    })?;
    let pass = max_deviation < tol;
    report.result(
        "unitary-paths",
        json!({
            "faces_checked": chosen.len(),
            "max_deviation": max_deviation,
            "pass": pass,
        }),
    );
    Ok((report, pass))
}

/// Draws seeded integer winding targets per edge (shared across faces so
/// the global vector ŵ is consistent), builds the face loops, and returns
/// the largest |numeric block winding − (M ŵ − D) entry|.
fn verify_face_loops(
    sys: &ObstructionSystem,
    faces: &[&Subsimplex],
    samples: usize,
    rng: &mut impl Rng,
) -> Result<f64> {
    let mut cache: BTreeMap<Subsimplex, (Vec<i64>, BlockUnitaryPath)> = BTreeMap::new();
    let mut max_deviation = 0.0f64;
    for face in faces {
        let edges = face
            .boundary_edges()
            .ok_or_else(|| Error::Internal("a 2-face must have boundary edges".into()))?;
        for edge in &edges {
            if !cache.contains_key(edge) {
                let targets: Vec<i64> = (0..edge.partition().len())
                    .map(|_| rng.gen_range(-2i64..=2))
                    .collect();
                let path = edge_path(edge, &targets, samples)?;
                cache.insert(edge.clone(), (targets, path));
            }
        }
        let gamma = {
            let get = |e: &Subsimplex| &cache[e].1;
            face_loop(face, get(&edges[0]), get(&edges[1]), get(&edges[2]))?
        };
        // ŵ restricted to this face's boundary: all other coordinates are 0
        let mut w_hat = vec![0i64; sys.num_cols()];
        for edge in &edges {
            let (targets, _) = &cache[edge];
            for (block, &t) in edge.partition().blocks().iter().zip(targets) {
                let ordinal = sys
                    .col_index
                    .ordinal(edge, block)
                    .ok_or_else(|| Error::Internal("edge block missing from index".into()))?;
                w_hat[ordinal] = t;
            }
        }
        for block in face.partition().blocks() {
            let row = sys
                .row_index
                .ordinal(face, block)
                .ok_or_else(|| Error::Internal("face block missing from index".into()))?;
            let residual: i64 = sys
                .row(row)
                .iter()
                .zip(&w_hat)
                .map(|(&m, &w)| i64::from(m) * w)
                .sum::<i64>()
                - sys.rhs()[row];
            let numeric = gamma.winding(block)?.w;
            max_deviation = max_deviation.max((numeric - residual as f64).abs());
        }
    }
    Ok(max_deviation)
}

fn cmd_counterexample(n: usize, grid_depth: u32) -> Result<(RunReport, bool)> {
    let mut report = RunReport::new("counterexample", n);
    report.parameter("grid_depth", grid_depth);
    let sweep = report.timed("sweep", || {
        dynsys::check_piecewise_equivalence(n, grid_depth)
    })?;
    let pass = sweep.passed();
    report.result("counterexample", &sweep);
    Ok((report, pass))
}
