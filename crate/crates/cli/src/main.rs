use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cauchy_voronoi::divergences::DivergenceKind;
use cauchy_voronoi::hyperbolic::Model;
use cauchy_voronoi::voronoi::{cauchy_voronoi, delaunay_complex, Coordinates};
use cauchy_voronoi_cli::commands::{self, Quantity, Suite, VerifyOptions};
use cauchy_voronoi_cli::files::{self, DiagramFile};
use cauchy_voronoi_cli::render::{render_svg, render_transforms, Layers, RenderSpec};
use cauchy_voronoi_cli::CliError;

/// Voronoi diagrams and Delaunay complexes of Cauchy distributions.
#[derive(Parser)]
#[command(name = "cauchy-voronoi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random distinct sites.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = commands::DEFAULT_L_RANGE.0, allow_hyphen_values = true)]
        l_min: f64,
        #[arg(long, default_value_t = commands::DEFAULT_L_RANGE.1, allow_hyphen_values = true)]
        l_max: f64,
        #[arg(long, default_value_t = commands::DEFAULT_S_RANGE.0, allow_hyphen_values = true)]
        s_min: f64,
        #[arg(long, default_value_t = commands::DEFAULT_S_RANGE.1, allow_hyphen_values = true)]
        s_max: f64,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form divergences between two distributions.
    Divergence {
        /// `l,s`
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Comma-separated quantities, or `all`.
        #[arg(long, default_value = "all")]
        which: String,
        /// Add a quadrature column and fail on residuals above 1e-6.
        #[arg(long)]
        check: bool,
    },
    /// Build a Voronoi diagram and write it as JSON and/or SVG.
    Voronoi(DiagramArgs),
    /// Same as `voronoi` with the Delaunay complex computed and drawn.
    Delaunay(DiagramArgs),
    /// Run verification suites on the diagram of a site file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated suites, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid resolution per axis for the coincidence check.
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Negative control: move a generator into an empty circle first.
        #[arg(long)]
        perturb: bool,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Assign a sample to the nearest site.
    Classify {
        #[arg(long)]
        sites: PathBuf,
        /// Numbers, whitespace-separated or as a JSON array.
        #[arg(long)]
        samples: PathBuf,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Plot the divergence transforms.
    PlotTransforms {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
}

#[derive(Args)]
struct DiagramArgs {
    /// Site file (from `gen`).
    #[arg(long, required_unless_present = "diagram", conflicts_with = "diagram")]
    input: Option<PathBuf>,
    /// Re-render a previously written diagram file.
    #[arg(long)]
    diagram: Option<PathBuf>,
    #[arg(long, default_value = "fisher-rao")]
    kind: String,
    /// uhp, poincare or klein; defaults to klein (uhp for flat-reverse).
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Diagram JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    size: u32,
    #[arg(long, default_value_t = 0)]
    color_seed: u64,
    #[arg(long)]
    no_cells: bool,
    #[arg(long)]
    no_edges: bool,
    #[arg(long)]
    no_sites: bool,
    /// Draw the Delaunay complex.
    #[arg(long)]
    show_delaunay: bool,
    /// Draw the empty circles at Voronoi vertices.
    #[arg(long)]
    empty_circles: bool,
}

fn parse_model(s: &str) -> Result<Model, CliError> {
    s.parse().map_err(|e: cauchy_voronoi::Error| CliError::Input(format!("--model: {e}")))
}

fn diagram(args: DiagramArgs, with_delaunay: bool) -> Result<(), CliError> {
    let (d, seed) = match (&args.input, &args.diagram) {
        (_, Some(path)) => (files::read_diagram_file(path)?.to_diagram()?, None),
        (Some(path), None) => {
            let sites = files::read_site_file(path)?;
            let kind: DivergenceKind = args.kind.parse().map_err(|e| CliError::Input(format!("--kind: {e}")))?;
            (cauchy_voronoi(&sites.params()?, kind)?, sites.seed)
        }
        (None, None) => return Err(CliError::Input("one of --input or --diagram is required".into())),
    };
    let hyperbolic = d.coordinates == Coordinates::Klein;
    let complex = if with_delaunay && hyperbolic { Some(delaunay_complex(&d)?) } else { None };
    if with_delaunay && !hyperbolic {
        eprintln!("note: no Delaunay complex for {} diagrams", d.kind);
    }
    if let Some(out) = &args.out {
        files::write_atomic(out, &files::to_json(&DiagramFile::new(&d, complex.as_ref(), seed)))?;
    }
    if let Some(svg) = &args.svg {
        let model = match &args.model {
            Some(m) => parse_model(m)?,
            None if hyperbolic => Model::Klein,
            None => Model::Uhp,
        };
        let spec = RenderSpec {
            model,
            size: args.size,
            layers: Layers {
                cells: !args.no_cells,
                edges: !args.no_edges,
                sites: !args.no_sites,
                delaunay: hyperbolic && (args.show_delaunay || with_delaunay),
                empty_circles: args.empty_circles,
            },
            color_seed: args.color_seed,
        };
        files::write_atomic(svg, &render_svg(&d, &spec)?)?;
    }
    if args.out.is_none() && args.svg.is_none() {
        print!("{}", files::to_json(&DiagramFile::new(&d, complex.as_ref(), seed)));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { n, seed, l_min, l_max, s_min, s_max, out } => {
            let text = files::to_json(&commands::generate(n, seed, (l_min, l_max), (s_min, s_max))?);
            match out {
                Some(path) => files::write_atomic(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Divergence { a, b, which, check } => {
            let (a, b) = (commands::parse_param(&a)?, commands::parse_param(&b)?);
            let (table, ok) = commands::divergence_table(a, b, &Quantity::parse_list(&which)?, check)?;
            print!("{table}");
            if !ok {
                return Err(CliError::Verification(format!(
                    "a quadrature residual exceeds {:e}",
                    commands::CHECK_TOLERANCE
                )));
            }
        }
        Command::Voronoi(args) => diagram(args, false)?,
        Command::Delaunay(args) => diagram(args, true)?,
        Command::Verify { input, checks, trials, seed, grid, perturb, json } => {
            let generators = files::read_site_file(&input)?.params()?;
            let suites = Suite::parse_list(&checks)?;
            let report = commands::verify(&generators, &suites, VerifyOptions { trials, seed, grid, perturb })?;
            print!("{}", report.text());
            if let Some(path) = json {
                files::write_atomic(&path, &files::to_json(&report))?;
            }
            if !report.passed {
                let failed: Vec<_> = report.results.iter().filter(|r| !r.passed).map(|r| r.suite.as_str()).collect();
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
        Command::Classify { sites, samples, json } => {
            let sites = files::read_site_file(&sites)?;
            let samples = files::parse_samples(&files::read_text(&samples)?)?;
            let r = commands::classify(&sites, &samples)?;
            if json {
                print!("{}", files::to_json(&r));
            } else {
                let label = r.label.as_deref().map(|l| format!(" ({l})")).unwrap_or_default();
                println!(
                    "site {}{label}  estimate l = {:.6}, s = {:.6}  fisher-rao distance {:.6}",
                    r.index, r.estimate.0, r.estimate.1, r.distance
                );
            }
        }
        Command::PlotTransforms { out, samples } => {
            let (svg, witness) = render_transforms(samples)?;
            files::write_atomic(&out, &svg)?;
            let (rise, drop) = commands::monotonicity(&witness);
            let shape = if rise <= 4.0 * f64::EPSILON {
                "nonincreasing"
            } else if drop <= 4.0 * f64::EPSILON {
                "nondecreasing"
            } else {
                "not monotone"
            };
            println!("sqrt(t(u))/u on (0, 10]: {shape} (largest relative rise {rise:.3e}, drop {drop:.3e})");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cauchy-voronoi: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
