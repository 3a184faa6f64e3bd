mod output;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polyspec::bessel::EvalConfig;
use polyspec::gridfile::GridFile;
use polyspec::spectral_ops::{
    apply_inverse, expand_sampled, AxisGrid, QuadGrid, DEFAULT_HOLOMORPHIC_EXPONENT_MAX,
};
use polyspec::spectrum::{self, Polydisc, QTuple, SpectrumOptions};
use polyspec::verify::{closed_form_eigs, fd_radial_eigs, FdBoundary, FdConfig, Suite, VerificationReport};
use polyspec::zeros::ZeroCache;
use polyspec::Error;

use output::*;

#[derive(Parser)]
#[command(name = "polyspec", version, about = "Spectra of the ∂̄-Neumann Laplacian on polydiscs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive zeros of J_m.
    Zeros(ZerosArgs),
    /// Eigenvalues of the Laplacian on (0,q)-forms up to a cutoff.
    Spectrum(SpectrumArgs),
    /// Bottom of the spectrum on (0,q)-forms.
    Bottom(BottomArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Independent numerical oracles.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
    /// Apply the inverse Laplacian to a sampled coefficient function.
    Inverse(InverseArgs),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Finite-difference radial eigenvalues.
    Fd(FdArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bc {
    Dirichlet,
    DbarNeumann,
}

impl Bc {
    fn boundary(self) -> FdBoundary {
        match self {
            Bc::Dirichlet => FdBoundary::Dirichlet,
            Bc::DbarNeumann => FdBoundary::DbarNeumann,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Bc::Dirichlet => "dirichlet",
            Bc::DbarNeumann => "dbar-neumann",
        }
    }
}

#[derive(Args)]
struct ZerosArgs {
    /// Bessel order m (sign is irrelevant).
    #[arg(long, allow_negative_numbers = true)]
    order: i32,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Target relative error of the Bessel evaluation.
    #[arg(long, default_value = "1e-12")]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Disc radii, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    radii: Vec<f64>,
    /// Form degree, 1 ≤ q ≤ n-1.
    #[arg(long)]
    q: usize,
    /// Eigenvalue cutoff.
    #[arg(long = "max")]
    max_lambda: f64,
    /// Relative tolerance for merging eigenvalues.
    #[arg(long, default_value = "1e-11")]
    group_tol: f64,
    /// Witness modes kept per point.
    #[arg(long, default_value_t = 8)]
    witnesses: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BottomArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    radii: Vec<f64>,
    #[arg(long)]
    q: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; repeat for several. All suites when omitted.
    #[arg(long = "suite", value_parser = parse_suite)]
    suites: Vec<Suite>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

#[derive(Args)]
struct FdArgs {
    /// Angular order m.
    #[arg(long, allow_negative_numbers = true)]
    order: i32,
    #[arg(long, value_enum)]
    bc: Bc,
    /// Number of radial cells (at least 64).
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    /// Number of eigenvalues (at most 10).
    #[arg(long, default_value_t = 3)]
    count: usize,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct InverseArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    radii: Vec<f64>,
    /// Tuple J, 1-based and comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    tuple: Vec<usize>,
    /// PSPC sampled-grid file.
    #[arg(long)]
    input: PathBuf,
    /// Expansion truncation.
    #[arg(long = "max")]
    max_lambda: f64,
    /// Largest holomorphic exponent kept in the basis.
    #[arg(long, default_value_t = DEFAULT_HOLOMORPHIC_EXPONENT_MAX)]
    p_max: u32,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum Failure {
    Lib(Error),
    Io(String),
    Verification(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, output) = match run(cli.command) {
        Ok(v) => v,
        Err(f) => return report(f),
    };
    let written = match output {
        Some(path) => File::create(&path).and_then(|f| {
            let mut w = BufWriter::new(f);
            w.write_all(text.as_bytes())?;
            w.flush()
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(Failure::Io(e.to_string())),
    }
}

fn report(f: Failure) -> ExitCode {
    match f {
        Failure::Lib(e) => {
            eprintln!("error: {e}");
            if e.is_domain_error() {
                ExitCode::from(3)
            } else {
                ExitCode::FAILURE
            }
        }
        Failure::Io(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        Failure::Verification(report) => {
            for line in report {
                eprintln!("FAILED {line}");
            }
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<(String, Option<PathBuf>), Failure> {
    let mut output = None;
    let text = match cmd {
        Command::Zeros(a) => zeros(a)?,
        Command::Spectrum(a) => spectrum(a)?,
        Command::Bottom(a) => bottom(a)?,
        Command::Verify(a) => verify(a)?,
        Command::Oracle {
            oracle: OracleCommand::Fd(a),
        } => fd(a)?,
        Command::Inverse(a) => {
            output = a.output.clone();
            inverse(a)?
        }
    };
    Ok((text, output))
}

fn finite(name: &str, x: f64) -> Result<(), Error> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("--{name} must be finite, got {x}")))
    }
}

fn zeros(a: ZerosArgs) -> CmdResult {
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Error::InvalidArgument(format!("--tol must lie in (0, 1), got {}", a.tol)).into());
    }
    let cache = ZeroCache::with_config(EvalConfig {
        target_rel_error: a.tol,
        ..EvalConfig::default()
    });
    let values = cache.first_zeros(a.order, a.count)?;
    Ok(match a.format {
        Format::Json => Record::new(
            "zeros",
            ZerosRequest {
                order: a.order,
                count: a.count,
                tol: Real(a.tol),
            },
            ZerosBody {
                zeros: values.iter().copied().map(Real).collect(),
            },
        )
        .to_json(),
        Format::Csv => indexed_csv("zero", &values),
        Format::Table => indexed_table("zero", &values),
    })
}

fn polydisc(radii: &[f64], q: usize) -> Result<Polydisc, Error> {
    let p = Polydisc::new(radii.to_vec())?;
    spectrum::check_degree(p.dim(), q)?;
    Ok(p)
}

fn spectrum(a: SpectrumArgs) -> CmdResult {
    finite("max", a.max_lambda)?;
    let p = polydisc(&a.radii, a.q)?;
    let cache = ZeroCache::new();
    let opts = SpectrumOptions {
        group_tol: a.group_tol,
        max_witnesses: a.witnesses,
    };
    let points = spectrum::assemble_spectrum(&p, a.q, a.max_lambda, &opts, &cache)?;
    Ok(match a.format {
        Format::Json => Record::new(
            "spectrum",
            SpectrumRequest {
                radii: a.radii.iter().copied().map(Real).collect(),
                q: a.q,
                max_lambda: Real(a.max_lambda),
                group_tol: Real(a.group_tol),
                witnesses: a.witnesses,
            },
            SpectrumBody {
                points: points.iter().map(PointOut::from).collect(),
            },
        )
        .to_json(),
        Format::Csv => spectrum_csv(&points),
        Format::Table => spectrum_table(&points),
    })
}

fn bottom(a: BottomArgs) -> CmdResult {
    let p = polydisc(&a.radii, a.q)?;
    let b = spectrum::bottom(&p, a.q, &ZeroCache::new())?;
    let tuple = b.tuple.one_based();
    let tuple_text: Vec<String> = tuple.iter().map(usize::to_string).collect();
    Ok(match a.format {
        Format::Json => Record::new(
            "bottom",
            BottomRequest {
                radii: a.radii.iter().copied().map(Real).collect(),
                q: a.q,
            },
            BottomBody {
                value: Real(b.value),
                tuple,
            },
        )
        .to_json(),
        Format::Csv => format!("value,tuple\n{},{}\n", Real(b.value).text(), tuple_text.join(";")),
        Format::Table => table(&[
            vec!["value".into(), "tuple".into()],
            vec![format!("{:.15}", b.value), tuple_text.join(",")],
        ]),
    })
}

fn verify(a: VerifyArgs) -> CmdResult {
    let mut suites = if a.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suites
    };
    suites.dedup();
    let report = VerificationReport::run(&suites, a.seed, &ZeroCache::new())?;
    let text = match a.format {
        ReportFormat::Json => Record::new(
            "verify",
            VerifyRequest {
                suites: suites.iter().map(|s| s.name()).collect(),
                seed: a.seed,
            },
            VerifyBody {
                passed: report.passed(),
                checks: report.checks.iter().map(CheckOut::from).collect(),
            },
        )
        .to_json(),
        ReportFormat::Text => report.to_text(),
    };
    if report.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Verification(
            report
                .failures()
                .map(|c| format!("{}/{}: {}", c.suite, c.name, c.detail))
                .collect(),
        ))
    }
}

fn fd(a: FdArgs) -> CmdResult {
    finite("radius", a.radius)?;
    let bc = a.bc.boundary();
    let cfg = FdConfig {
        grid_points: a.grid,
        radius: a.radius,
        angular_order: a.order,
        bc,
    };
    let values = fd_radial_eigs(&cfg, a.count)?;
    let exact = closed_form_eigs(a.order, bc, a.radius, a.count, &ZeroCache::new())?;
    Ok(match a.format {
        Format::Json => Record::new(
            "oracle-fd",
            FdRequest {
                order: a.order,
                bc: a.bc.tag(),
                radius: Real(a.radius),
                grid: a.grid,
                count: a.count,
            },
            FdBody::new(&values, &exact),
        )
        .to_json(),
        Format::Csv => {
            let mut out = String::from("index,eigenvalue,closed_form\n");
            for (i, (v, e)) in values.iter().zip(&exact).enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 1, Real(*v).text(), Real(*e).text()));
            }
            out
        }
        Format::Table => {
            let mut rows = vec![vec!["index".into(), "eigenvalue".into(), "closed_form".into()]];
            for (i, (v, e)) in values.iter().zip(&exact).enumerate() {
                rows.push(vec![(i + 1).to_string(), format!("{v:.12}"), format!("{e:.12}")]);
            }
            table(&rows)
        }
    })
}

fn inverse(a: InverseArgs) -> CmdResult {
    finite("max", a.max_lambda)?;
    let p = Polydisc::new(a.radii.clone())?;
    let tuple = QTuple::from_one_based(&a.tuple, p.dim())?;
    spectrum::check_degree(p.dim(), tuple.len())?;
    let file = File::open(&a.input)
        .map_err(|e| Failure::Io(format!("{}: {e}", a.input.display())))?;
    let grid_file = GridFile::read_from(BufReader::new(file))?;
    if grid_file.n as usize != p.dim() || grid_file.q as usize != tuple.len() {
        return Err(Error::InvalidArgument(format!(
            "grid file is for n = {}, q = {}; request has n = {}, q = {}",
            grid_file.n,
            grid_file.q,
            p.dim(),
            tuple.len()
        ))
        .into());
    }
    let axes = grid_file
        .axes
        .iter()
        .zip(p.radii())
        .map(|(&(r, t), &radius)| AxisGrid::new(radius, r as usize, t as usize))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = QuadGrid { axes };
    let cache = ZeroCache::new();
    let x = expand_sampled(&p, &tuple, a.max_lambda, a.p_max, &grid, &grid_file.samples, &cache)?;
    let y = apply_inverse(&x)?;
    Ok(match a.format {
        Format::Json => Record::new(
            "inverse",
            InverseRequest {
                radii: a.radii.iter().copied().map(Real).collect(),
                tuple: a.tuple.clone(),
                max_lambda: Real(a.max_lambda),
                p_max: a.p_max,
                input: a.input.display().to_string(),
            },
            InverseBody::from(&y),
        )
        .to_json(),
        Format::Csv => inverse_csv(&y),
        Format::Table => {
            let mut rows = vec![vec!["value".into(), "re".into(), "im".into()]];
            for t in &y.terms {
                rows.push(vec![
                    format!("{:.12}", t.mode.value()),
                    format!("{:.6e}", t.coefficient.re),
                    format!("{:.6e}", t.coefficient.im),
                ]);
            }
            table(&rows)
        }
    })
}
