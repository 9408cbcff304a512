//! The `capforge` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 non-positive cap angle, 3 cap not
//! closed (`check`), 4 result is not a valid polygon (`solve`, `project`).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use capforge_core::cap::report_for_curve;
use capforge_core::shapes::SweepSeries;
use capforge_core::solve::assemble;
use capforge_core::{
    cap_report, classify_quadrilateral, classify_triangle, construct_cap, gap_sweep, project_to_closed,
    satisfies_closed_cap, solve_free_vertex, BoundaryShape, CapError, DefectProfile, Polygon,
    PolygonOptions, DEFAULT_TOLERANCE,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::{self, CapCurveJson, CapReportJson, PartialPolygonJson, PolygonJson, SolvedJson, VerdictJson};
use crate::svg::{self, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_POSITIVITY: i32 = 2;
pub const EXIT_NOT_CLOSED: i32 = 3;
pub const EXIT_INVALID_RESULT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "capforge", version, about = "Cap construction for polygons with uniform angular defects")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Closure tolerance relative to the perimeter.
    #[arg(long, global = true, env = "CAPFORGE_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    /// "uniform" or a comma-separated list of per-vertex defects (radians) summing to 4 pi.
    #[arg(long, global = true, default_value = "uniform")]
    pub defects: String,

    /// Keep drawing the cap past non-positive cap angles.
    #[arg(long, global = true)]
    pub continue_on_negative_angle: bool,

    /// Reverse clockwise input instead of rejecting it.
    #[arg(long, global = true)]
    pub normalize_orientation: bool,

    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, default_value_t = 600)]
    pub width: u32,
    #[arg(long, default_value_t = 600)]
    pub height: u32,
    /// Label polygon and cap vertices.
    #[arg(long)]
    pub labels: bool,
    /// Omit the dashed gap segment.
    #[arg(long)]
    pub no_gap_marker: bool,
}

impl RenderArgs {
    fn spec(&self) -> Result<RenderSpec> {
        let mut spec = RenderSpec::new(self.width, self.height)?;
        spec.labels = self.labels;
        spec.gap_marker = !self.no_gap_marker;
        Ok(spec)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the cap construction and write the cap curve with its report.
    Cap {
        input: PathBuf,
        /// Also write an SVG figure here.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Report whether the cap closes.
    Check { input: PathBuf },
    /// Solve for the vertex left as null (or named by --index) that closes the cap.
    Solve {
        input: PathBuf,
        /// 1-based index of the free vertex.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Move the vertices the least amount needed to close the cap.
    Project { input: PathBuf },
    /// Classify a triangle or quadrilateral.
    Classify { input: PathBuf },
    /// Gap of the uniform cap over a range of sample counts.
    Sweep {
        /// circle, circle:R, ellipse:A,B or resample:PATH
        #[arg(long)]
        shape: String,
        /// Comma-separated counts and inclusive ranges, e.g. 3..64 or 8,16,32
        #[arg(long = "n-list")]
        n_list: String,
    },
    /// Draw a polygon and its cap curve as SVG.
    Render {
        input: PathBuf,
        #[command(flatten)]
        render: RenderArgs,
    },
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        return Ok(buf);
    }
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

impl Cli {
    fn polygon_options(&self) -> PolygonOptions {
        PolygonOptions { normalize_orientation: self.normalize_orientation, ..Default::default() }
    }

    fn read_polygon(&self, path: &Path) -> Result<Polygon> {
        let bytes = read_input(path)?;
        format::read_polygon(bytes.as_slice(), self.polygon_options())
            .with_context(|| format!("loading polygon from {}", path.display()))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn format_or(&self, default: OutputFormat, allowed: &[OutputFormat]) -> Result<OutputFormat> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("--format {:?} is not available for this command", f);
        }
        Ok(f)
    }
}

/// `uniform` or a comma list of defects.
pub fn parse_defects(spec: &str, n: usize) -> Result<DefectProfile> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("uniform") {
        return Ok(DefectProfile::uniform(n));
    }
    let values = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad defect value {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != n {
        bail!("--defects has {} entries but the polygon has {n} vertices", values.len());
    }
    Ok(DefectProfile::new(values)?)
}

/// `circle`, `circle:R`, `ellipse:A,B` or `resample:PATH`.
pub fn parse_shape(spec: &str, opts: PolygonOptions) -> Result<BoundaryShape> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<f64>> {
        args.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad shape parameter {s:?}")))
            .collect()
    };
    match kind {
        "circle" => match nums()?.as_slice() {
            [] => Ok(BoundaryShape::Circle { radius: 1.0 }),
            [r] => Ok(BoundaryShape::Circle { radius: *r }),
            _ => bail!("circle takes one radius"),
        },
        "ellipse" => match nums()?.as_slice() {
            [a, b] => Ok(BoundaryShape::Ellipse { a: *a, b: *b }),
            _ => bail!("ellipse takes two semi-axes, e.g. ellipse:2,1"),
        },
        "resample" => {
            let bytes = read_input(Path::new(args))?;
            let base = format::read_polygon(bytes.as_slice(), opts)?;
            Ok(BoundaryShape::PolygonResample { base })
        }
        _ => bail!("unknown shape {kind:?}; expected circle, ellipse or resample"),
    }
}

/// Comma-separated integers and inclusive `a..b` ranges.
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let hi = hi.trim_start_matches('=');
            let lo: usize = lo.trim().parse().with_context(|| format!("bad range {item:?}"))?;
            let hi: usize = hi.trim().parse().with_context(|| format!("bad range {item:?}"))?;
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().with_context(|| format!("bad sample count {item:?}"))?);
        }
    }
    if out.is_empty() {
        bail!("--n-list is empty");
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<i32> {
    if !(cli.tolerance >= 0.0 && cli.tolerance.is_finite()) {
        bail!("tolerance must be a non-negative number");
    }
    match &cli.command {
        Command::Cap { input, svg: svg_path, render } => {
            let fmt = cli.format_or(OutputFormat::Json, &[OutputFormat::Json, OutputFormat::Svg])?;
            let spec = render.spec()?;
            let p = cli.read_polygon(input)?;
            let d = parse_defects(&cli.defects, p.len())?;
            let curve = match construct_cap(&p, &d, cli.continue_on_negative_angle) {
                Ok(curve) => curve,
                Err(e @ CapError::NonPositiveAngle { .. }) => {
                    eprintln!("error: {e}");
                    return Ok(EXIT_POSITIVITY);
                }
                Err(e) => return Err(e.into()),
            };
            let report = report_for_curve(&p, &curve, cli.tolerance);
            let figure = svg::render(&p, &curve, cli.tolerance, &spec);
            match fmt {
                OutputFormat::Svg => cli.emit(&figure)?,
                _ => cli.emit(&format::to_json(&CapCurveJson::new(&curve, Some(&report))))?,
            }
            if let Some(path) = svg_path {
                fs::write(path, &figure).with_context(|| format!("writing {}", path.display()))?;
            }
            if !curve.positivity_ok() {
                let bad: Vec<usize> = curve
                    .flags
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_ok())
                    .map(|(j, _)| j + 2)
                    .collect();
                eprintln!("warning: non-positive cap angle at vertices {bad:?}");
                return Ok(EXIT_POSITIVITY);
            }
            Ok(EXIT_OK)
        }
        Command::Check { input } => {
            cli.format_or(OutputFormat::Json, &[OutputFormat::Json])?;
            let p = cli.read_polygon(input)?;
            let d = parse_defects(&cli.defects, p.len())?;
            let report = cap_report(&p, &d, cli.tolerance)?;
            cli.emit(&format::to_json(&CapReportJson::from(&report)))?;
            if report.closed {
                Ok(EXIT_OK)
            } else {
                let r = satisfies_closed_cap(&p, cli.tolerance).residual;
                eprintln!("not closed: gap_rel = {:e}, residual = [{:e}, {:e}]", report.gap_rel, r.re, r.im);
                Ok(EXIT_NOT_CLOSED)
            }
        }
        Command::Solve { input, index } => {
            cli.format_or(OutputFormat::Json, &[OutputFormat::Json])?;
            let bytes = read_input(input)?;
            let partial: PartialPolygonJson = serde_json::from_slice(&bytes).context("parsing polygon")?;
            let n = partial.vertices.len();
            let (fixed, free) = partial.split(*index)?;
            let v = solve_free_vertex(&fixed, free, n)?;
            let vertices = assemble(&fixed, free, v, n)?;
            let checked = Polygon::with_options(vertices.clone(), cli.polygon_options());
            let out = SolvedJson {
                index: free,
                vertex: format::point(v),
                polygon: PolygonJson { vertices: vertices.into_iter().map(format::point).collect() },
                valid: checked.is_ok(),
                invalid_reason: checked.as_ref().err().map(|e| e.to_string()),
            };
            cli.emit(&format::to_json(&out))?;
            match checked {
                Ok(_) => Ok(EXIT_OK),
                Err(e) => {
                    eprintln!("warning: completed vertex list is not a valid polygon: {e}");
                    Ok(EXIT_INVALID_RESULT)
                }
            }
        }
        Command::Project { input } => {
            cli.format_or(OutputFormat::Json, &[OutputFormat::Json])?;
            let p = cli.read_polygon(input)?;
            let proj = project_to_closed(&p);
            cli.emit(&format::to_json(&format::ProjectionJson::from(&proj)))?;
            match &proj.polygon {
                Ok(_) => Ok(EXIT_OK),
                Err(e) => {
                    eprintln!("warning: projected vertices are not a valid polygon: {e}");
                    Ok(EXIT_INVALID_RESULT)
                }
            }
        }
        Command::Classify { input } => {
            cli.format_or(OutputFormat::Json, &[OutputFormat::Json])?;
            let p = cli.read_polygon(input)?;
            let verdict = match p.len() {
                3 => classify_triangle(&p, cli.tolerance)?,
                4 => classify_quadrilateral(&p, cli.tolerance)?,
                n => return Err(anyhow!("classify handles triangles and quadrilaterals, got {n} vertices")),
            };
            cli.emit(&format::to_json(&VerdictJson::new(p.len(), &verdict)))?;
            Ok(EXIT_OK)
        }
        Command::Sweep { shape, n_list } => {
            let fmt = cli.format_or(OutputFormat::Csv, &[OutputFormat::Csv, OutputFormat::Json])?;
            let shape = parse_shape(shape, cli.polygon_options())?;
            let ns = parse_n_list(n_list)?;
            let series: SweepSeries = gap_sweep(&shape, &ns)?;
            let text = match fmt {
                OutputFormat::Json => format::to_json(&format::sweep_json(&series)),
                _ => {
                    let mut buf = Vec::new();
                    format::write_sweep_csv(&series, &mut buf)?;
                    String::from_utf8(buf).expect("CSV output is ASCII")
                }
            };
            cli.emit(&text)?;
            for row in series.rows.iter().filter(|r| !r.is_valid()) {
                eprintln!("warning: n = {}: {}", row.n, row.error.as_ref().expect("invalid row has an error"));
            }
            Ok(EXIT_OK)
        }
        Command::Render { input, render } => {
            cli.format_or(OutputFormat::Svg, &[OutputFormat::Svg])?;
            let spec = render.spec()?;
            let p = cli.read_polygon(input)?;
            let d = parse_defects(&cli.defects, p.len())?;
            let curve = construct_cap(&p, &d, true)?;
            cli.emit(&svg::render(&p, &curve, cli.tolerance, &spec))?;
            Ok(EXIT_OK)
        }
    }
}
