use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qeis::fourier::{full_expansion, rank1_coefficient, rank2_coefficient};
use qeis::hermitian::{local_quadratic_data, FieldE, GlobalVector, Params};
use qeis::lift::{lift_coefficient, standard_l_factors, EigenformData};
use qeis::report::{int_value, local_json, outcome_json, poly_value, t_value, table_csv, table_json};
use qeis::siegel::{assemble_series_oracle, extract_q, q_poly, DEFAULT_BUDGET};
use qeis::verify::{run_suite, Suite};
use qeis::{Error, Result};

#[derive(Parser)]
#[command(name = "qeis", version, about = "Fourier coefficients of the quaternionic Heisenberg Eisenstein series on U(2,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Enumeration budget for the p-adic oracle and the expansion box
    #[arg(long, global = true, env = "QEIS_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Clone)]
struct Model {
    #[arg(long = "D")]
    d: u64,
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 3)]
    ell: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Local polynomial Q_{T,p}
    Local {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        p: u64,
        /// T as ax,ay,bx,by in the basis 1, omega
        #[arg(long = "T", allow_hyphen_values = true)]
        t: String,
        /// Also extract Q from the enumerated series and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Single Fourier coefficient a_T
    Coeff {
        #[command(flatten)]
        model: Model,
        #[arg(long = "T", allow_hyphen_values = true)]
        t: String,
    },
    /// Expansion table over all T with 0 <= <T,T> <= bound
    Expand {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Lift coefficient from Hecke eigenvalues
    Lift {
        #[command(flatten)]
        model: Model,
        #[arg(long = "T", allow_hyphen_values = true)]
        t: String,
        /// JSON file {"weight": w, "ap": {"2": -24, ...}}
        #[arg(long)]
        eigenvalues: PathBuf,
        /// Also print the standard L-function Euler factor at this prime
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run verification suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Primes for the oracle grid
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5])]
        p: Vec<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_t(s: &str) -> Result<GlobalVector> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Validation(format!("bad T {s:?}: {e}")))?;
    match parts[..] {
        [ax, ay, bx, by] => Ok(GlobalVector::from_coords([ax, ay, bx, by])),
        _ => Err(Error::Validation(format!("T needs four integers, got {s:?}"))),
    }
}

fn setup(model: &Model) -> Result<(FieldE, Params)> {
    Ok((FieldE::new(model.d)?, Params::new(model.n, model.ell)?))
}

fn emit(text: &str) {
    use std::io::Write;
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&(serde_json::to_string(v).expect("json") + "\n"));
}

fn cmd_local(model: &Model, p: u64, t: &str, oracle: bool, budget: u64) -> Result<i32> {
    let (f, params) = setup(model)?;
    let t = parse_t(t)?;
    let data = local_quadratic_data(&t, &f, p, &params)?;
    let q = q_poly(&data)?;
    let mut out = local_json(&data, &q);
    if oracle {
        let qo = extract_q(&assemble_series_oracle(&data, budget)?)?;
        let agree = qo == q;
        out["oracle"] = json!({"Q": poly_value(&qo), "agree": agree});
        print(&out);
        return Ok(if agree { 0 } else { 3 });
    }
    print(&out);
    Ok(0)
}

fn cmd_coeff(model: &Model, t: &str) -> Result<i32> {
    let (f, params) = setup(model)?;
    let t = parse_t(t)?;
    let c = if t.norm(&f) == 0.into() { rank1_coefficient(&t, &params, &f)? } else { rank2_coefficient(&t, &params, &f)? };
    let local: serde_json::Map<String, Value> = c.local_polys.iter().map(|(p, q)| (p.to_string(), poly_value(q))).collect();
    print(&json!({
        "T": t_value(&c.t),
        "norm": int_value(&c.norm),
        "rank": c.rank,
        "rational": c.rational.to_string(),
        "localQ": local,
        "beta_abs": c.whittaker.as_ref().map(|w| w.beta_abs),
    }));
    Ok(0)
}

fn cmd_expand(model: &Model, bound: u64, out: Option<&PathBuf>, format: Format, budget: u64) -> Result<i32> {
    let (f, params) = setup(model)?;
    let table = full_expansion(&params, &f, bound, budget)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&table_json(&table)).expect("json") + "\n",
        Format::Csv => table_csv(&table),
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))?,
        None => emit(&text),
    }
    Ok(0)
}

fn cmd_lift(model: &Model, t: &str, path: &PathBuf, p: Option<u64>) -> Result<i32> {
    let (f, params) = setup(model)?;
    let t = parse_t(t)?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    let h: EigenformData = serde_json::from_str(&text).map_err(|e| Error::Validation(format!("bad eigenvalue file: {e}")))?;
    let v = lift_coefficient(&t, &h, &params, &f)?;
    let mut out = json!({
        "T": t_value(&t),
        "exact": v.exact.to_string(),
        "numeric": [v.numeric.re, v.numeric.im],
    });
    if let Some(p) = p {
        let e = standard_l_factors(p, &h, &params, &f)?;
        out["euler_factor"] = json!({
            "p": p,
            "case": e.case.as_str(),
            "degree": e.degree(),
            "coefficients": e.poly().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        });
    }
    print(&out);
    Ok(0)
}

fn cmd_verify(suite: &str, primes: &[u64], budget: u64) -> Result<i32> {
    let suite: Suite = suite.parse()?;
    let checks = run_suite(suite, primes, budget)?;
    let pass = checks.iter().all(|c| c.pass);
    let first = checks.iter().find(|c| !c.pass).map(outcome_json);
    print(&json!({
        "pass": pass,
        "checks": checks.iter().map(outcome_json).collect::<Vec<_>>(),
        "first_failure": first,
    }));
    Ok(if pass { 0 } else { 3 })
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(Error::Validation("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::Resource(e.to_string()))?;
    }
    let budget = cli.budget;
    match &cli.command {
        Command::Local { model, p, t, oracle } => cmd_local(model, *p, t, *oracle, budget),
        Command::Coeff { model, t } => cmd_coeff(model, t),
        Command::Expand { model, bound, out, format } => cmd_expand(model, *bound, out.as_ref(), *format, budget),
        Command::Lift { model, t, eigenvalues, p } => cmd_lift(model, t, eigenvalues, *p),
        Command::Verify { suite, p } => cmd_verify(suite, p, budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
