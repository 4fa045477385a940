//! Command-line driver.
//!
//! Exit codes: 0 success, 2 validation error (bad file, bad terrain,
//! unsupported measure), 3 infeasible configuration (k < 2 for `kgon`).
//! `kgon -k 2` is routed to the diameter with a notice.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diameter::compute_diameter;
use crate::fptas::{approximate_largest_kgon, build_grid, ApproxConfig, Grid, Measure};
use crate::io::svg::render_svg;
use crate::io::{parse_terrain_file, ConfigEcho, MeasureKind, OracleEcho, Problem, ResultRecord};
use crate::oracle;
use crate::terrain::Terrain;
use crate::tol;
use crate::triangle::largest_perimeter_triangle;

#[derive(Parser, Debug)]
#[command(
    name = "terrain-peel",
    about = "Largest inscribed segments, triangles and convex k-gons in 1.5D terrains",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Write an SVG rendering of the terrain and the result.
    #[arg(long, global = true, value_name = "OUT")]
    svg: Option<PathBuf>,
    /// Write the JSON result record to a file (it is always printed).
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Run the brute-force oracle side by side and echo its value.
    #[arg(long, global = true)]
    oracle: bool,
    /// Boundary sample spacing for the oracle.
    #[arg(long, global = true, default_value_t = 0.05)]
    delta: f64,
    /// Seed for randomized test tooling; the algorithms are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Geometric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Include the fine-cell grid in the SVG output.
    #[arg(long, global = true)]
    grid: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Longest line segment inside the terrain.
    Diameter { file: PathBuf },
    /// Exact largest-perimeter inscribed triangle.
    Triangle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MeasureArg::Perimeter)]
        measure: MeasureArg,
    },
    /// (1-eps)-approximate largest convex polygon of at most k vertices.
    Kgon {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = MeasureArg::Perimeter)]
        measure: MeasureArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Perimeter,
    Area,
}

const EXIT_OK: i32 = 0;
const EXIT_VALIDATION: i32 = 2;
const EXIT_INFEASIBLE: i32 = 3;

pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    tol::set_tol(cli.global.tolerance);

    let file = match &cli.command {
        Command::Diameter { file } => file,
        Command::Triangle { file, .. } => file,
        Command::Kgon { file, .. } => file,
    };
    let terrain = match parse_terrain_file(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VALIDATION;
        }
    };

    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Diameter { .. } => run_diameter(&terrain, &cli.global),
        Command::Triangle { measure, .. } => {
            if *measure == MeasureArg::Area {
                eprintln!("error: the exact triangle supports only the perimeter measure");
                return EXIT_INFEASIBLE;
            }
            run_triangle(&terrain, &cli.global)
        }
        Command::Kgon {
            k,
            epsilon,
            measure,
            ..
        } => match *k {
            2 => {
                eprintln!("notice: k = 2 is the diameter problem; computing the diameter");
                run_diameter(&terrain, &cli.global)
            }
            k => run_kgon(&terrain, k, *epsilon, *measure, &cli.global),
        },
    };

    match outcome {
        Ok((mut record, grid)) => {
            record.wall_time_ms = started.elapsed().as_millis() as u64;
            let json = record.to_json();
            println!("{json}");
            if let Some(path) = &cli.global.json {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: {e}");
                    return EXIT_VALIDATION;
                }
            }
            if let Some(path) = &cli.global.svg {
                let grid_ref = if cli.global.grid { grid.as_ref() } else { None };
                if let Err(e) = render_svg(&terrain, &record, grid_ref, path) {
                    eprintln!("error: {e}");
                    return EXIT_VALIDATION;
                }
            }
            EXIT_OK
        }
        Err(code) => code,
    }
}

type Outcome = Result<(ResultRecord, Option<Grid>), i32>;

fn config_echo(k: Option<usize>, epsilon: Option<f64>) -> ConfigEcho {
    ConfigEcho {
        k,
        epsilon,
        tie_break: "lexicographic".into(),
        tolerance: tol::tol(),
    }
}

fn run_diameter(t: &Terrain, g: &GlobalArgs) -> Outcome {
    let chord = compute_diameter(t);
    let oracle = g.oracle.then(|| OracleEcho {
        value: oracle::oracle_diameter(t, g.delta),
        delta: g.delta,
    });
    let record = ResultRecord {
        problem: Problem::Diameter,
        measure: MeasureKind::Length,
        value: chord.length,
        vertices: vec![
            [chord.seg.a.x, chord.seg.a.y],
            [chord.seg.b.x, chord.seg.b.y],
        ],
        config: config_echo(None, None),
        wall_time_ms: 0,
        oracle,
    };
    Ok((record, None))
}

fn run_triangle(t: &Terrain, g: &GlobalArgs) -> Outcome {
    let tri = match largest_perimeter_triangle(t) {
        Ok(tri) => tri,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_VALIDATION);
        }
    };
    let oracle = g.oracle.then(|| OracleEcho {
        value: oracle::oracle_best_kgon(t, 3, g.delta, oracle::OracleMeasure::Perimeter),
        delta: g.delta,
    });
    let record = ResultRecord {
        problem: Problem::Triangle,
        measure: MeasureKind::Perimeter,
        value: tri.perimeter,
        vertices: tri.vertices.iter().map(|p| [p.x, p.y]).collect(),
        config: config_echo(None, None),
        wall_time_ms: 0,
        oracle,
    };
    Ok((record, None))
}

fn run_kgon(t: &Terrain, k: usize, epsilon: f64, measure: MeasureArg, g: &GlobalArgs) -> Outcome {
    let measure = match measure {
        MeasureArg::Perimeter => Measure::Perimeter,
        MeasureArg::Area => Measure::Area,
    };
    let cfg = match ApproxConfig::new(k, epsilon, measure) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_INFEASIBLE);
        }
    };
    let poly = match approximate_largest_kgon(t, &cfg) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_INFEASIBLE);
        }
    };
    let oracle = g.oracle.then(|| {
        let om = match measure {
            Measure::Perimeter => oracle::OracleMeasure::Perimeter,
            Measure::Area => oracle::OracleMeasure::Area,
        };
        OracleEcho {
            value: oracle::oracle_best_kgon(t, k, g.delta, om),
            delta: g.delta,
        }
    });
    let grid = g.svg.is_some().then(|| {
        let scale = crate::fptas::seed_scale(t, k);
        let eps_routed = match measure {
            Measure::Perimeter => epsilon,
            Measure::Area => 1.0 - (1.0 - epsilon).sqrt(),
        };
        build_grid(t, k, eps_routed / 2.0, scale)
    });
    let record = ResultRecord {
        problem: Problem::Kgon,
        measure: measure.into(),
        value: poly.measure_value,
        vertices: poly.vertices.iter().map(|p| [p.x, p.y]).collect(),
        config: config_echo(Some(k), Some(epsilon)),
        wall_time_ms: 0,
        oracle,
    };
    Ok((record, grid))
}
