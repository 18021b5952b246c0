use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kimura::driver::{self, Command, FieldSpec, RunConfig, Study};
use kimura::{KimuraError, Result};

#[derive(Parser)]
#[command(name = "kimura", version, about = "Spectral solvers for the Kimura diffusion operator on the simplex")]
struct Cli {
    /// Read the whole run configuration from a JSON file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Args, Default)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dmax: Option<usize>,
    /// Gauss points per cube direction.
    #[arg(long = "N", alias = "order")]
    order: Option<usize>,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Orthonormal basis of a weighted k-simplex, as CSV.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
        /// Weight exponents α_1..α_{k+1}, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<f64>>,
        /// Evaluation point y_1,..,y_k; repeatable.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Gauss quadrature on the weighted k-simplex, as CSV.
    Quad {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<f64>>,
    },
    /// Face eigenvalues and multiplicities, as CSV.
    Eigen {
        #[command(flatten)]
        common: Common,
    },
    /// Solve L_K u = f; writes the expansion of u as JSON.
    SolveRegular {
        #[command(flatten)]
        common: Common,
        /// Right-hand side, e.g. bubble, coordinate:1:2, exp:1,0,0, file:f.json.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Write the residual report (JSON) here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Exit with status 3 when an expansion is under-resolved.
        #[arg(long)]
        strict: bool,
    },
    /// Solve L_K u = f in the simplex with u = g on the boundary.
    SolveDirichlet {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, default_value = "constant:0")]
        g: String,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Exact identity suites; exit status 0 iff all pass.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
        /// Cases per randomized suite.
        #[arg(long)]
        cases: Option<usize>,
        /// Test hook: run the Shimakura suite against a wrong operator.
        #[arg(long)]
        perturb_operator: bool,
    },
    /// Convergence study, as CSV.
    Convergence {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "coefficients")]
        study: StudyArg,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Quadrature orders for the Dirichlet study, comma separated.
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<usize>>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum StudyArg {
    Coefficients,
    Dirichlet,
}

fn base(command: Command, common: Common) -> RunConfig {
    let mut cfg = RunConfig::new(command);
    cfg.n = common.n;
    cfg.dmax = common.dmax;
    cfg.order = common.order;
    cfg.out = common.out;
    cfg
}

fn parse_point(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| KimuraError::Format(format!("bad coordinate {v:?}"))))
        .collect()
}

fn to_config(sub: Sub) -> Result<RunConfig> {
    Ok(match sub {
        Sub::Basis { common, k, weights, at } => {
            let mut cfg = base(Command::Basis, common);
            cfg.k = k;
            cfg.weights = weights;
            cfg.points = at.iter().map(|s| parse_point(s)).collect::<Result<_>>()?;
            cfg
        }
        Sub::Quad { common, k, weights } => {
            let mut cfg = base(Command::Quad, common);
            cfg.k = k;
            cfg.weights = weights;
            cfg
        }
        Sub::Eigen { common } => base(Command::Eigen, common),
        Sub::SolveRegular { common, f, report, strict } => {
            let mut cfg = base(Command::SolveRegular, common);
            cfg.f = Some(FieldSpec::parse(&f)?);
            cfg.report = report;
            cfg.strict = strict;
            cfg
        }
        Sub::SolveDirichlet {
            common,
            f,
            g,
            epsilon,
            report,
            strict,
        } => {
            let mut cfg = base(Command::SolveDirichlet, common);
            cfg.f = Some(FieldSpec::parse(&f)?);
            cfg.g = Some(FieldSpec::parse(&g)?);
            cfg.epsilon = epsilon;
            cfg.report = report;
            cfg.strict = strict;
            cfg
        }
        Sub::Verify {
            common,
            seed,
            cases,
            perturb_operator,
        } => {
            let mut cfg = base(Command::Verify, common);
            cfg.seed = seed;
            cfg.cases = cases;
            cfg.perturb_operator = perturb_operator;
            cfg
        }
        Sub::Convergence {
            common,
            study,
            f,
            orders,
            epsilon,
        } => {
            let mut cfg = base(Command::Convergence, common);
            cfg.study = Some(match study {
                StudyArg::Coefficients => Study::Coefficients,
                StudyArg::Dirichlet => Study::Dirichlet,
            });
            cfg.f = f.as_deref().map(FieldSpec::parse).transpose()?;
            cfg.orders = orders;
            cfg.epsilon = epsilon;
            cfg
        }
    })
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("KIMURA_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| KimuraError::Contract(format!("KIMURA_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| KimuraError::Numeric(e.to_string()))
}

fn main_inner(cli: Cli) -> Result<driver::Outcome> {
    configure_threads()?;
    let cfg = match (cli.config, cli.command) {
        (Some(path), None) => RunConfig::from_json(&std::fs::read_to_string(path)?)?,
        (None, Some(sub)) => to_config(sub)?,
        (Some(_), Some(_)) => return Err(KimuraError::Contract("give either --config or a subcommand, not both".into())),
        (None, None) => return Err(KimuraError::Contract("no subcommand given; see --help".into())),
    };
    driver::run(&cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            for line in &out.stderr {
                eprintln!("{line}");
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(driver::exit_code(&e) as u8)
        }
    }
}
