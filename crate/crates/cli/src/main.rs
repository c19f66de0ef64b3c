use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use delta_core::delta::{check_complete_monotonicity, delta_deriv, delta_deriv_auto, delta_eval, EvalResult, Route};
use delta_core::quad::QuadConfig;
use delta_core::report::VerificationReport;
use delta_core::verify::run_suite;

#[derive(Parser, Debug)]
#[command(name = "delta")]
#[command(about = "Evaluate Δ(x) = ln Γ(x+1)/x and its derivatives, check identities, scan signs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate Δ or Δ⁽ᵐ⁾ at one point
    Eval {
        #[arg(long = "fn", value_enum)]
        func: Func,
        /// Derivative order (1..=12), only with --fn deriv
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// CLOSED, HURWITZ, LAPLACE, HYP, RECURRENCE, SERIES, ASYMPTOTIC or AUTO
        #[arg(long, default_value = "AUTO")]
        route: RouteArg,
        /// Relative tolerance handed to the quadrature routes
        #[arg(long)]
        rel_tol: Option<f64>,
    },
    /// Run a named identity suite and report every residual
    Verify {
        #[arg(long)]
        suite: String,
        /// Uniform tolerance replacing each check's default
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here; without it the report goes to stdout
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate values on a grid as CSV
    Table {
        #[arg(long = "fn", value_enum)]
        func: Func,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        count: usize,
        /// Geometric spacing (needs start > 0)
        #[arg(long)]
        log: bool,
        #[arg(long, value_delimiter = ',', default_value = "AUTO")]
        routes: Vec<RouteArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the alternating signs of Δ′, …, Δ⁽ᵐ⁾ on a linear grid
    Scan {
        #[arg(long)]
        m_max: u32,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Func {
    Delta,
    Deriv,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum RouteArg {
    Auto,
    Fixed(Route),
}

impl FromStr for RouteArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(RouteArg::Auto);
        }
        Route::from_str(s).map(RouteArg::Fixed).map_err(|e| e.to_string())
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn order(func: Func, m: Option<u32>) -> Result<u32, String> {
    match (func, m) {
        (Func::Delta, None) => Ok(0),
        (Func::Delta, Some(_)) => Err("--m only applies to --fn deriv".into()),
        (Func::Deriv, m) => Ok(m.unwrap_or(1)),
    }
}

fn evaluate(m: u32, x: f64, route: RouteArg, cfg: &QuadConfig) -> Result<EvalResult, String> {
    let r = match (m, route) {
        (0, RouteArg::Auto) => delta_eval(x),
        (0, RouteArg::Fixed(_)) => return Err("--route only applies to --fn deriv".into()),
        (_, RouteArg::Auto) => delta_deriv_auto(m, x, cfg),
        (_, RouteArg::Fixed(r)) => delta_deriv(m, x, r, cfg),
    };
    r.map_err(|e| e.to_string())
}

fn grid(start: f64, stop: f64, count: usize, log: bool) -> Result<Vec<f64>, String> {
    if count == 0 {
        return Err("--count must be at least 1".into());
    }
    if !start.is_finite() || !stop.is_finite() || !(start > -1.0) || !(stop > -1.0) {
        return Err(format!("grid must lie in (-1, inf), got [{start}, {stop}]"));
    }
    if log && !(start > 0.0 && stop > 0.0) {
        return Err(format!("log spacing needs start > 0 and stop > 0, got [{start}, {stop}]"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            let t = i as f64 / last;
            if i == count - 1 {
                stop
            } else if log {
                start * (stop / start).powf(t)
            } else {
                start + (stop - start) * t
            }
        })
        .collect())
}

fn emit_report(report: &VerificationReport, json: Option<&PathBuf>) -> Result<ExitCode, String> {
    match json {
        Some(path) => {
            fs::write(path, report.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{}\t{}\t{}", report.suite, report.n_pass, report.n_fail);
            for c in report.failures() {
                println!("FAIL\t{}\t{}\t{}", c.identity, c.point, num(c.residual));
            }
        }
        None => println!("{}", report.to_json()),
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eval {
            func,
            m,
            x,
            route,
            rel_tol,
        } => {
            let m = order(func, m)?;
            let cfg = rel_tol.map_or_else(QuadConfig::default, QuadConfig::with_rel_tol);
            let r = evaluate(m, x, route, &cfg)?;
            println!("{}\t{}\t{}\t{}", num(r.value), num(r.abs_err_est), r.route, r.n_evals);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, tol, json } => {
            let report = run_suite(&suite, tol).map_err(|e| e.to_string())?;
            emit_report(&report, json.as_ref())
        }
        Command::Table {
            func,
            m,
            start,
            stop,
            count,
            log,
            routes,
            out,
        } => {
            let m = order(func, m)?;
            let xs = grid(start, stop, count, log)?;
            let cfg = QuadConfig::default();
            let mut csv = String::from("x,route,value,abs_err_est\n");
            for &x in &xs {
                for &route in &routes {
                    let r = evaluate(m, x, route, &cfg)?;
                    let _ = writeln!(csv, "{},{},{},{}", num(x), r.route, num(r.value), num(r.abs_err_est));
                }
            }
            match out {
                Some(path) => fs::write(&path, csv).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            m_max,
            start,
            stop,
            count,
            json,
        } => {
            let xs = grid(start, stop, count, false)?;
            let report = check_complete_monotonicity(m_max, &xs, &QuadConfig::default()).map_err(|e| e.to_string())?;
            emit_report(&report, json.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
