use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmann_core::complex::{cohomology_snf_oracle_with_capacity, cohomology_with_capacity};
use grassmann_core::verify::{verify_shape, VerifyOptions};
use grassmann_core::{BruhatGraph, GrassmannShape, DEFAULT_MAX_N, ORACLE_MAX_N};
use rayon::prelude::*;

use crate::doc::{
    Coefficients, Document, GraphPayload, GraphVariant, PolyPayload, Request, TablePayload,
    VerifyPayload,
};
use crate::error::CliError;
use crate::table::{self, Cache};

#[derive(Debug, Parser)]
#[command(
    name = "grassmann",
    version,
    about = "Integral (co)homology of real Grassmannians Gr(k,n) from checkered Young diagrams"
)]
pub struct Cli {
    /// Largest n accepted (default 16; SNF oracle default 10).
    #[arg(long, global = true, value_name = "N")]
    pub capacity_override: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology or homology table of Gr(k,n).
    Cohomology(CohomologyArgs),
    /// Weighted Bruhat graph as DOT or JSON.
    Graph(GraphArgs),
    /// p(q), p*(q), Poincaré polynomial, Euler characteristic, F_q point count.
    Poly(PolyArgs),
    /// Runs every cross-check on one shape or on all shapes up to --max-n.
    Verify(VerifyArgs),
    /// Writes one document per shape with n <= --max-n.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoefficientsArg {
    Constant,
    Twisted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TextFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Standard,
    Shifted,
    Plain,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    pub k: usize,
    pub n: usize,
    #[arg(long, value_enum, default_value = "constant")]
    pub coefficients: CoefficientsArg,
    /// Integral homology via Poincaré(–Verdier) duality.
    #[arg(long)]
    pub homology: bool,
    /// Confirm with the Smith-normal-form route (n <= 10 by default).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    pub k: usize,
    pub n: usize,
    #[arg(long, value_enum, default_value = "standard")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    pub k: usize,
    pub n: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(requires = "n", conflicts_with = "max_n")]
    pub k: Option<usize>,
    pub n: Option<usize>,
    #[arg(long, value_name = "N")]
    pub max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_name = "N")]
    pub max_n: usize,
    /// Output directory, or `-` for one JSON document per line on stdout.
    #[arg(long, default_value = "tables")]
    pub out: String,
    /// Defaults to `<out>/.cache`; no cache when streaming unless given.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

struct Limits {
    capacity: usize,
    oracle: usize,
}

impl Limits {
    fn new(capacity_override: Option<usize>) -> Self {
        Self {
            capacity: capacity_override.unwrap_or(DEFAULT_MAX_N),
            oracle: capacity_override.unwrap_or(ORACLE_MAX_N),
        }
    }

    fn shape(&self, k: usize, n: usize) -> Result<GrassmannShape, CliError> {
        let s = GrassmannShape::new(k, n)?;
        s.check_capacity(self.capacity)?;
        Ok(s)
    }

    fn max_n(&self, max_n: usize) -> Result<usize, CliError> {
        if max_n < 2 || max_n > self.capacity {
            return Err(CliError::Usage(format!(
                "--max-n must be in 2..={} (got {max_n})",
                self.capacity
            )));
        }
        Ok(max_n)
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                1
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let limits = Limits::new(cli.capacity_override);
    match cli.command {
        Command::Cohomology(a) => {
            let shape = limits.shape(a.k, a.n)?;
            let coefficients = match a.coefficients {
                CoefficientsArg::Constant => Coefficients::Constant,
                CoefficientsArg::Twisted => Coefficients::Twisted,
            };
            // H_j(L) = H^{top-j}(L ⊗ orientation sheaf); the sheaf is nontrivial iff n is odd
            let fill = if a.homology && shape.n() % 2 == 1 {
                coefficients.fill().other()
            } else {
                coefficients.fill()
            };
            let table = if a.oracle {
                cohomology_snf_oracle_with_capacity(shape, fill, limits.oracle)?
            } else {
                cohomology_with_capacity(shape, fill, limits.capacity)?
            };
            let mut payload = TablePayload::new(&table, Coefficients::of_fill(fill));
            if a.homology {
                payload = payload.reversed_as_homology(coefficients);
            }
            let request = Request::Cohomology {
                k: a.k,
                n: a.n,
                coefficients,
                homology: a.homology,
                oracle: a.oracle,
            };
            match a.format {
                TextFormat::Json => {
                    out.write_all(Document::new(request, payload).to_pretty().as_bytes())?
                }
                TextFormat::Text => out.write_all(payload.render_text().as_bytes())?,
            }
            Ok(0)
        }
        Command::Graph(a) => {
            let shape = limits.shape(a.k, a.n)?;
            let variant = match a.variant {
                VariantArg::Standard => GraphVariant::Standard,
                VariantArg::Shifted => GraphVariant::Shifted,
                VariantArg::Plain => GraphVariant::Plain,
            };
            let graph = BruhatGraph::build_with_capacity(shape, limits.capacity)?;
            let payload = GraphPayload::new(graph, variant)?;
            match a.format {
                GraphFormat::Json => {
                    let request = Request::Graph {
                        k: a.k,
                        n: a.n,
                        variant,
                    };
                    out.write_all(Document::new(request, payload).to_pretty().as_bytes())?
                }
                GraphFormat::Dot => out.write_all(payload.render_dot().as_bytes())?,
            }
            Ok(0)
        }
        Command::Poly(a) => {
            let shape = limits.shape(a.k, a.n)?;
            let payload = PolyPayload::new(shape)?;
            match a.format {
                TextFormat::Json => {
                    let request = Request::Poly { k: a.k, n: a.n };
                    out.write_all(Document::new(request, payload).to_pretty().as_bytes())?
                }
                TextFormat::Text => out.write_all(payload.render_text().as_bytes())?,
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let shapes: Vec<GrassmannShape> = match (a.k, a.n, a.max_n) {
                (Some(k), Some(n), None) => vec![limits.shape(k, n)?],
                (None, None, Some(m)) => GrassmannShape::all_up_to(limits.max_n(m)?).collect(),
                _ => {
                    return Err(CliError::Usage(
                        "verify takes either K N or --max-n N".into(),
                    ))
                }
            };
            let opts = VerifyOptions {
                oracle_max_n: limits.oracle,
                ..VerifyOptions::default()
            };
            let reports: Vec<_> = shapes.par_iter().map(|&s| verify_shape(s, opts)).collect();
            let passed = reports.iter().all(|r| r.passed());
            let payload = VerifyPayload {
                passed,
                shape_count: reports.len(),
                reports,
            };
            let request = Request::Verify {
                k: a.k,
                n: a.n,
                max_n: a.max_n,
            };
            match a.format {
                TextFormat::Json => {
                    out.write_all(Document::new(request, payload).to_pretty().as_bytes())?
                }
                TextFormat::Text => out.write_all(payload.render_text().as_bytes())?,
            }
            Ok(if passed { 0 } else { 2 })
        }
        Command::Table(a) => {
            let max_n = limits.max_n(a.max_n)?;
            let streaming = a.out == "-";
            let cache_dir = match (&a.cache_dir, streaming) {
                (Some(d), _) => Some(d.clone()),
                (None, false) => Some(PathBuf::from(&a.out).join(".cache")),
                (None, true) => None,
            };
            if !streaming {
                std::fs::create_dir_all(&a.out)
                    .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", a.out)))?;
            }
            let cache = cache_dir.map(Cache::open).transpose()?;
            let (docs, stats) = table::build_all(max_n, limits.capacity, cache.as_ref())?;
            for d in &docs {
                if streaming {
                    out.write_all(d.to_line().as_bytes())?;
                } else {
                    let path =
                        PathBuf::from(&a.out).join(table::document_file_name(d.payload.shape));
                    table::write_atomic(&path, d.to_pretty().as_bytes())?;
                }
            }
            writeln!(
                err,
                "{} documents, {} cache hits, {} computed",
                docs.len(),
                stats.hits,
                stats.misses
            )?;
            Ok(0)
        }
    }
}
