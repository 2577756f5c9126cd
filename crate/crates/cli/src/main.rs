use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nodal_sextic::pipeline::{
    parse_rational, run_construct, run_verify, FieldSpec, GMode, InputSource, Perturbation, RunConfig,
};
use nodal_sextic::report::{emit_report, ReportFormat, RunReport, Verdict};
use nodal_sextic::surface::PointTransform;

/// Sextic surfaces with 56 nodes from plane quartics.
///
/// Without --quartic, `construct` reproduces the Klein example: the reference
/// lift g, the sign change x1 -> -x1, and checks over GF(29) and GF(13^2).
#[derive(Parser)]
#[command(name = "nodal-sextic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sextic from a quartic and verify it over finite fields.
    Construct(Opts),
    /// Verify an explicitly given sextic over finite fields.
    Verify(Opts),
    /// Dimensions of ker(mu) and of the section basis only.
    Kernel(Opts),
    /// Group and orbit data for a sextic (default: the Klein sextic).
    Orbit(Opts),
    /// Build the sextic and its branch discriminant, without a census.
    Discriminant(Opts),
}

#[derive(Args)]
struct Opts {
    /// Plane quartic in z0, z1, z2, or a file containing it.
    #[arg(long)]
    quartic: Option<String>,
    /// Lift g(u, v) of bidegree (2,2), or `greedy`.
    #[arg(long)]
    g: Option<String>,
    /// `c1,...,c6[;lambda]`: gtilde -> lambda*gtilde + sum c_i * (i-th product of p_ij).
    #[arg(long, allow_hyphen_values = true)]
    perturb: Option<String>,
    /// 16 rationals (row-major, separated by commas or spaces): the surface becomes s(M x).
    #[arg(long, allow_hyphen_values = true)]
    transform: Option<String>,
    /// Sextic in x0..x3, or a file containing it (verify, orbit).
    #[arg(long)]
    surface: Option<String>,
    /// Verification field `p` or `p^k` (repeatable).
    #[arg(long = "prime")]
    primes: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum number of projective points scanned per field.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

const KLEIN_SEXTIC: &str = "x0^5*x2 + x0*x1^5 + x1*x2^5 - 5*x0^2*x1^2*x2^2 + (x0^3*x1 + x0*x2^3 + x1^3*x2)*x3^2 - x3^6";

/// Reads `arg` as a file when such a file exists, else as literal text.
fn text_or_file(arg: &str) -> Result<String, String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map(|s| s.trim().to_string()).map_err(|e| format!("{arg}: {e}"))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_transform(text: &str) -> Result<PointTransform, String> {
    let values: Vec<_> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect::<Result<_, _>>()?;
    if values.len() != 16 {
        return Err(format!("--transform needs 16 entries, got {}", values.len()));
    }
    let rows = values.chunks(4).map(<[_]>::to_vec).collect();
    PointTransform::new(rows).map_err(|e| e.to_string())
}

fn build_config(command: &Command, o: &Opts) -> Result<RunConfig, String> {
    let mut cfg = match command {
        Command::Verify(_) | Command::Orbit(_) => {
            let text = match &o.surface {
                Some(s) => text_or_file(s)?,
                None if matches!(command, Command::Orbit(_)) => KLEIN_SEXTIC.to_string(),
                None => return Err("verify needs --surface".into()),
            };
            RunConfig::for_surface(&text)
        }
        _ => match &o.quartic {
            None => RunConfig::klein_reference(),
            Some(q) => RunConfig::for_quartic(&text_or_file(q)?),
        },
    };
    if let InputSource::Quartic { g, perturb, .. } = &mut cfg.input {
        match o.g.as_deref() {
            Some("greedy") => *g = GMode::Greedy,
            Some(text) => *g = GMode::Explicit(text_or_file(text)?),
            None => {}
        }
        if let Some(p) = &o.perturb {
            *perturb = Some(p.parse::<Perturbation>()?);
        }
    }
    if let Some(t) = &o.transform {
        cfg.transform = Some(parse_transform(t)?);
    }
    if !o.primes.is_empty() {
        cfg.fields = o.primes.iter().map(|p| p.parse::<FieldSpec>()).collect::<Result<_, _>>()?;
    }
    if let Some(b) = o.budget {
        cfg.budget = b;
    }
    match command {
        Command::Kernel(_) => {
            cfg.stop_after_kernel = true;
            cfg.fields.clear();
        }
        Command::Discriminant(_) if o.primes.is_empty() => cfg.fields.clear(),
        _ => {}
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<RunReport, String> {
    let (Command::Construct(o)
    | Command::Verify(o)
    | Command::Kernel(o)
    | Command::Orbit(o)
    | Command::Discriminant(o)) = &cli.command;
    let cfg = build_config(&cli.command, o)?;
    let report = match cli.command {
        Command::Verify(_) | Command::Orbit(_) => run_verify(&cfg),
        _ => run_construct(&cfg),
    }
    .map_err(|e| e.to_string())?;
    let format = match o.format {
        Format::Json => ReportFormat::Json,
        Format::Text => ReportFormat::Text,
    };
    let text = emit_report(&report, format);
    match &o.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) if report.verdict == Verdict::Pass => ExitCode::SUCCESS,
        Ok(report) => {
            for c in report.failed_checks() {
                eprintln!("FAIL {}: {}", c.name, c.detail);
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
