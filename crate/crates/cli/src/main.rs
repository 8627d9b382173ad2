use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kulkarni::census::{run_census, CensusConfig, DEFAULT_SEED};
use kulkarni::fibration::random_isometry;
use kulkarni::hermitian::{f_value, DEFAULT_TOL};
use kulkarni::io::{parse_point, write_matrix_csv};
use kulkarni::slice::{render_slice, SliceFormat, SliceSpec};
use kulkarni::verify::{verify_suite, ISOMETRY_ROUNDS};
use kulkarni::{classify, IndefiniteVector};

#[derive(Parser)]
#[command(name = "kulkarni", version, about = "Kulkarni limit sets of SO+(m,1) acting on complex projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one point of P_C^n.
    Classify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// JSON array of [re, im] pairs.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Monte Carlo count of the connected components of Omega.
    Census {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 20000)]
        edges: usize,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// JSON report path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rasterize the labels on a real 2-plane through a point.
    Slice {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long, allow_hyphen_values = true)]
        dir_u: String,
        #[arg(long, allow_hyphen_values = true)]
        dir_v: String,
        #[arg(long)]
        half_width: f64,
        #[arg(long)]
        res: usize,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the randomized invariant checks.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// JSON report path; the text table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write sample isometries as CSV matrices into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ppm,
    Csv,
}

fn point(text: &str, what: &str) -> Result<IndefiniteVector> {
    parse_point(text).with_context(|| format!("invalid {what}"))
}

fn write_json(out: Option<&PathBuf>, json: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn dump_isometries(dir: &PathBuf, seed: u64) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for m in [2, 3] {
        let a = random_isometry(m, seed, ISOMETRY_ROUNDS);
        let path = dir.join(format!("isometry_m{m}.csv"));
        let mut out = BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?);
        write_matrix_csv(&mut out, &a)?;
        out.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { m, n, point: text, tol } => {
            let z = point(&text, "point")?;
            anyhow::ensure!(z.n() == n, "point has {} coordinates, expected {}", z.n() + 1, n + 1);
            let label = classify(&z, m, tol)?;
            println!("{label}");
            println!("f = {:?}", f_value(&z));
            println!("<z,z> = {:?}", z.self_inner());
        }
        Command::Census { m, n, samples, edges, steps, seed, tol, out } => {
            let cfg = CensusConfig { m, n, samples, edge_candidates: edges, segment_steps: steps, seed, tol };
            let report = run_census(&cfg)?;
            write_json(out.as_ref(), &serde_json::to_string_pretty(&report)?)?;
            eprintln!("components: {} sizes: {:?}", report.component_count, report.component_sizes);
        }
        Command::Slice { m, n, center, dir_u, dir_v, half_width, res, format, out, tol } => {
            let spec = SliceSpec {
                m,
                n,
                center: point(&center, "center")?,
                dir_u: point(&dir_u, "dir-u")?,
                dir_v: point(&dir_v, "dir-v")?,
                half_width,
                resolution: res,
                output: Some(out),
                format: match format {
                    Format::Ppm => SliceFormat::Ppm,
                    Format::Csv => SliceFormat::Csv,
                },
            };
            render_slice(&spec, tol)?;
        }
        Command::Verify { trials, seed, tol, out, dump_dir } => {
            anyhow::ensure!(trials >= 1, "trials must be >= 1");
            let report = verify_suite(trials, seed, tol);
            print!("{}", report.to_table());
            if let Some(path) = &out {
                write_json(Some(path), &serde_json::to_string_pretty(&report)?)?;
            }
            if let Some(dir) = &dump_dir {
                dump_isometries(dir, seed)?;
            }
            if !report.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
