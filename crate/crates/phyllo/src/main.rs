use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phyllo::config::{parse_lambda, parse_number, DEFAULT_N_CAP};
use phyllo::json::{analysis_json, pattern_json, read_pattern, tessellation_json, thresholds_json};
use phyllo::report::analyze;
use phyllo::svg::render;
use phyllo::tables;
use phyllo::thresholds::threshold_report;
use phyllo::{CliError, ColorMap, Command, Format, Geometry, PatternParams, Projection, RunConfig};
use phyllo_core::generator::PhylloPattern;

#[derive(Parser)]
#[command(name = "phyllo", version, about = "Phyllotactic patterns on the plane, the sphere and the hyperbolic plane")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Generate a pattern and write it as JSON or CSV.
    Generate(Common),
    /// Tessellate a pattern and run every analysis.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Pattern file written by `generate`, instead of inline parameters.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also write the tessellation JSON to this file.
        #[arg(long)]
        tessellation: Option<PathBuf>,
    },
    /// Sphere sizes at which new grain boundaries reach the equator.
    Thresholds {
        #[arg(long, default_value_t = 12)]
        u_max: u32,
        /// Tessellate spheres on both sides of each threshold.
        #[arg(long)]
        empirical: bool,
        /// Largest sphere the empirical check may build.
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        n_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: Format,
    },
    /// Draw the Voronoi cells as SVG.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: Option<PathBuf>,
        /// disc (plane), poincare (hyperbolic), orthographic or stereographic (sphere).
        #[arg(long, value_parser = parse_projection)]
        projection: Option<Projection>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "plane", value_parser = parse_geometry)]
    geometry: Geometry,
    /// Number of sites; 3000 on the open surfaces and 4001 on the sphere.
    #[arg(long)]
    n: Option<usize>,
    /// Spacing scale; accepts fractions such as 1/40.
    #[arg(long, value_parser = parse_number)]
    a: Option<f64>,
    /// Divergence in turns, or `golden`.
    #[arg(long, default_value = "golden", value_parser = parse_lambda)]
    lambda: f64,
    /// Place sites at half-integer spiral parameters (plane and hyperbolic).
    #[arg(long)]
    half_integer: bool,
    /// Output file (a directory for multi-table CSV); stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
}

fn parse_geometry(s: &str) -> Result<Geometry, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_projection(s: &str) -> Result<Projection, String> {
    s.parse()
}

fn config(command: Command, common: Common, input: Option<PathBuf>) -> RunConfig {
    RunConfig {
        command,
        params: PatternParams::new(common.geometry, common.n.unwrap_or_else(|| common.geometry.default_n()), common.a, common.lambda, common.half_integer),
        input,
        out: common.out,
        format: common.format,
        colors: ColorMap::default(),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn table_file(dir: &Path, name: &str) -> Result<fs::File, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::File::create(&path).map_err(|e| CliError::io(path, e))
}

fn load(config: &RunConfig) -> Result<PhylloPattern, CliError> {
    match &config.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            read_pattern(&text, &path.display().to_string())
        }
        None => config.params.generate(),
    }
}

fn mean_spacing(pattern: &PhylloPattern) -> f64 {
    (pattern.site_area() / std::f64::consts::PI).sqrt()
}

fn cmd_generate(config: &RunConfig) -> Result<(), CliError> {
    let pattern = config.params.generate()?;
    match config.format {
        Format::Json => emit(config.out.as_deref(), &pattern_json(&pattern)?)?,
        Format::Csv => match &config.out {
            Some(path) => {
                let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
                tables::write_pattern(&pattern, file)?;
            }
            None => tables::write_pattern(&pattern, io::stdout().lock())?,
        },
    }
    eprintln!(
        "generated n = {}, geometry {}, R = {}, mean spacing {:.6}",
        pattern.n,
        pattern.surface.kind.name(),
        pattern.surface.radius,
        mean_spacing(&pattern)
    );
    Ok(())
}

fn cmd_analyze(config: &RunConfig, tessellation_out: Option<&Path>) -> Result<(), CliError> {
    let pattern = load(config)?;
    let analysis = analyze(&pattern)?;
    match config.format {
        Format::Json => emit(config.out.as_deref(), &analysis_json(&analysis)?)?,
        Format::Csv => match &config.out {
            Some(dir) => {
                tables::write_boundaries(&analysis, table_file(dir, "boundaries.csv")?)?;
                tables::write_sites(&analysis, table_file(dir, "sites.csv")?)?;
                tables::write_links(&analysis, table_file(dir, "links.csv")?)?;
            }
            None => tables::write_boundaries(&analysis, io::stdout().lock())?,
        },
    }
    if let Some(path) = tessellation_out {
        write_file(path, &tessellation_json(&analysis)?)?;
    }
    eprintln!("analyzed n = {}, geometry {}", pattern.n, pattern.surface.kind.name());
    for b in analysis.boundaries.iter().map(|r| &r.boundary) {
        eprintln!(
            "  boundary {:?} {} sites {}..={}: {:?}",
            b.status, phyllo::report::hemisphere_name(b.hemisphere), b.s_range.0, b.s_range.1, b.counts
        );
    }
    for inv in &analysis.invariants {
        eprintln!("  {} {}: {}", if inv.pass { "PASS" } else { "FAIL" }, inv.name, inv.detail);
    }
    let anomalies: Vec<String> =
        analysis.anomalies().iter().map(|i| format!("{} ({})", i.name, i.detail)).collect();
    if anomalies.is_empty() {
        Ok(())
    } else {
        Err(CliError::Anomaly(anomalies.join("; ")))
    }
}

fn cmd_thresholds(config: &RunConfig) -> Result<(), CliError> {
    let Command::Thresholds { u_max, empirical, n_cap } = config.command else {
        unreachable!()
    };
    let report = threshold_report(u_max, empirical, n_cap)?;
    match config.format {
        Format::Json => emit(config.out.as_deref(), &thresholds_json(&report)?)?,
        Format::Csv => match &config.out {
            Some(dir) => {
                tables::write_thresholds(&report, table_file(dir, "thresholds.csv")?)?;
                tables::write_curves(&report, table_file(dir, "curves.csv")?)?;
            }
            None => tables::write_thresholds(&report, io::stdout().lock())?,
        },
    }
    for row in &report.rows {
        let check = match row.bracket {
            Some(b) => match b.first {
                Some(first) => format!(
                    "  {}: {} defects at n = {}, first {} at n = {first} ({:+})",
                    if b.born() { "born" } else { "NOT CONFIRMED" },
                    b.defects_below,
                    b.below,
                    b.defects_first,
                    first as i64 - b.threshold as i64
                ),
                None => "  NOT CONFIRMED: no equatorial defects up to the search limit".to_string(),
            },
            None => String::new(),
        };
        eprintln!("u = {:>2}  f_u = {:>5}  n = {:>7}{check}", row.u, row.dipoles, row.n);
    }
    Ok(())
}

fn cmd_render(config: &RunConfig) -> Result<(), CliError> {
    let Command::Render { projection } = config.command else {
        unreachable!()
    };
    let pattern = load(config)?;
    let geometry = Geometry::from_kind(pattern.surface.kind);
    let projection = projection.unwrap_or_else(|| Projection::default_for(geometry));
    let tess = phyllo_core::tessellate(&pattern)?;
    emit(config.out.as_deref(), &render(&tess, projection, &config.colors)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Sub::Generate(common) => cmd_generate(&config(Command::Generate, common, None)),
        Sub::Analyze { common, input, tessellation } => {
            cmd_analyze(&config(Command::Analyze, common, input), tessellation.as_deref())
        }
        Sub::Thresholds { u_max, empirical, n_cap, out, format } => {
            let config = config(
                Command::Thresholds { u_max, empirical, n_cap },
                Common {
                    geometry: Geometry::Sphere,
                    n: None,
                    a: None,
                    lambda: phyllo_core::GOLDEN_DIVERGENCE,
                    half_integer: false,
                    out,
                    format,
                },
                None,
            );
            cmd_thresholds(&config)
        }
        Sub::Render { common, input, projection } => {
            cmd_render(&config(Command::Render { projection }, common, input))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
