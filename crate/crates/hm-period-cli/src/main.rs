//! Command-line front end: critical data, period limits, curvature
//! intervals, period evaluation, the closing-equation solver, profile
//! and embedding export, and the verification suite.
//!
//! Output is JSON (machine interface) or CSV (tabular data). All
//! numeric inputs are echoed back in the JSON envelope, and identical
//! invocations produce byte-identical output.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hm_period::{
    bracket_endpoints, critical_data, embed_slice, generate_profile, limits, period,
    run_verification, solve_period_equation, Error, Params, Profile,
};

mod output;
use output::{format_significant, Envelope, Inputs};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "hm-period",
    version,
    about = "Closed rotational hypersurfaces of constant m-th mean curvature in the unit sphere",
    after_help = "Exit status: 0 success, 1 failed verification, 2 domain or interval violation, \
                  3 convergence failure, 64 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// The problem instance (n, m, H_m).
#[derive(Args)]
struct InstanceArgs {
    /// Hypersurface dimension, n >= 2
    #[arg(long)]
    n: u32,
    /// Curvature order, 1 <= m <= n-1
    #[arg(long)]
    m: u32,
    /// Constant m-th mean curvature H_m > 0
    #[arg(long)]
    hm: f64,
}

impl InstanceArgs {
    fn params(&self) -> Result<Params, Error> {
        Params::new(self.n, self.m, self.hm)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for CSV values [default: 12, or HM_PERIOD_PRECISION]
    #[arg(long)]
    precision: Option<usize>,
    /// Seed echoed into the output; drives every randomized check
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl OutputArgs {
    /// Precision resolution order: flag, then HM_PERIOD_PRECISION, then 12.
    fn precision(&self) -> usize {
        self.precision
            .or_else(|| {
                std::env::var("HM_PERIOD_PRECISION")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(12)
            .clamp(2, 17)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Critical-point data of the potential: F0, v0, c0 and a
    Critical {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form period limits A (c -> infinity) and B (c -> c0+)
    Limits {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Curvature interval endpoints (h_low, h_high) for winding number k
    Bracket {
        /// Hypersurface dimension, n >= 2
        #[arg(long)]
        n: u32,
        /// Curvature order, 1 <= m <= n-1
        #[arg(long)]
        m: u32,
        /// Winding number, k >= 2
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the period P(H_m, n, C) at a given energy constant
    Period {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Energy constant C; must exceed c0
        #[arg(long)]
        c: f64,
        /// Quadrature refinement tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve the closing equation P = 2 pi / k for the energy constant
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Winding number, k >= 2
        #[arg(long)]
        k: u32,
        /// Tolerance on |P - 2 pi / k|
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate the closed profile curve (solves for c unless --c is given)
    Profile {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Winding number, k >= 2
        #[arg(long)]
        k: u32,
        /// Energy constant; skips the solver when provided
        #[arg(long)]
        c: Option<f64>,
        /// Tolerance for the solver step
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Sample panels per half oscillation
        #[arg(long, default_value_t = 256)]
        samples: u32,
        /// Append embedded coordinates x1..x{n+2} (the u = 0 slice)
        #[arg(long)]
        embed: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the identity and numerics verification suite
    Verify {
        /// Hypersurface dimension, n >= 2
        #[arg(long)]
        n: u32,
        /// Curvature order, 1 <= m <= n-1
        #[arg(long)]
        m: u32,
        /// Curvature of the instance the suite is anchored at
        #[arg(long, default_value_t = 1.0)]
        hm: f64,
        /// Number of random instances for the identity checks
        #[arg(long, default_value_t = 200)]
        samples: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(exit_code_for(&failure))
        }
    }
}

enum Failure {
    Lib(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Io(e) => write!(f, "i/o failure: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code_for(failure: &Failure) -> u8 {
    match failure {
        Failure::Lib(Error::Domain(_)) | Failure::Lib(Error::Bracket { .. }) => 2,
        Failure::Lib(Error::Convergence(_)) => 3,
        Failure::Lib(Error::Identity { .. }) => 1,
        Failure::Io(_) => 1,
    }
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            file.write_all(text.as_bytes())?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PeriodOut {
    c: f64,
    value: f64,
}

#[derive(Serialize)]
struct SolveOut {
    c_star: f64,
    p_achieved: f64,
    target: f64,
    iterations: u32,
    k: u32,
}

#[derive(Serialize)]
struct ProfileSampleOut {
    s: f64,
    g: f64,
    r: f64,
    lambda: f64,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct ProfileOut {
    c: f64,
    k: u32,
    t_half: f64,
    period_p: f64,
    closure_defect: f64,
    closure_warning: bool,
    samples: Vec<ProfileSampleOut>,
}

fn profile_rows(profile: &Profile, embed: bool) -> Vec<ProfileSampleOut> {
    let slice = embed.then(|| embed_slice(profile));
    profile
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| ProfileSampleOut {
            s: s.s,
            g: s.g,
            r: s.r,
            lambda: s.lambda,
            theta: s.theta,
            x: slice.as_ref().map(|points| points[i].clone()),
        })
        .collect()
}

fn profile_csv(rows: &[ProfileSampleOut], ambient_dim: usize, embed: bool, precision: usize) -> String {
    let mut text = String::from("s,g,r,lambda,theta");
    if embed {
        for i in 1..=ambient_dim {
            text.push_str(&format!(",x{i}"));
        }
    }
    text.push('\n');
    for row in rows {
        let mut fields = vec![
            format_significant(row.s, precision),
            format_significant(row.g, precision),
            format_significant(row.r, precision),
            format_significant(row.lambda, precision),
            format_significant(row.theta, precision),
        ];
        if let Some(x) = &row.x {
            fields.extend(x.iter().map(|xi| format_significant(*xi, precision)));
        }
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    text
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Critical { instance, output } => {
            let params = instance.params()?;
            let cd = critical_data(&params)?;
            let inputs = Inputs::new("critical", &output)
                .instance(instance.n, instance.m, instance.hm);
            let text = match output.format {
                Format::Json => Envelope::new(inputs, &cd).to_json(),
                Format::Csv => {
                    let p = output.precision();
                    format!(
                        "f0,v0,c0,a\n{},{},{},{}\n",
                        format_significant(cd.f0, p),
                        format_significant(cd.v0, p),
                        format_significant(cd.c0, p),
                        format_significant(cd.a, p)
                    )
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Limits { instance, output } => {
            let params = instance.params()?;
            let lim = limits(&params)?;
            let inputs = Inputs::new("limits", &output)
                .instance(instance.n, instance.m, instance.hm);
            let text = match output.format {
                Format::Json => Envelope::new(inputs, &lim).to_json(),
                Format::Csv => {
                    let p = output.precision();
                    format!(
                        "a_val,b_val\n{},{}\n",
                        format_significant(lim.a_val, p),
                        format_significant(lim.b_val, p)
                    )
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket { n, m, k, output } => {
            let bracket = bracket_endpoints(n, m, k)?;
            let inputs = Inputs::new("bracket", &output).nmk(n, m, k);
            let text = match output.format {
                Format::Json => Envelope::new(inputs, &bracket).to_json(),
                Format::Csv => {
                    let p = output.precision();
                    format!(
                        "k,h_low,h_high\n{},{},{}\n",
                        k,
                        format_significant(bracket.h_low, p),
                        format_significant(bracket.h_high, p)
                    )
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Period {
            instance,
            c,
            tol,
            output,
        } => {
            let params = instance.params()?;
            let result = period(&params, c, tol)?;
            let inputs = Inputs::new("period", &output)
                .instance(instance.n, instance.m, instance.hm)
                .c(c)
                .tol(tol);
            let text = match output.format {
                Format::Json => Envelope::new(inputs, &PeriodOut { c, value: result.value })
                    .err_estimate(result.err_estimate)
                    .nodes(result.nodes)
                    .to_json(),
                Format::Csv => {
                    let p = output.precision();
                    format!(
                        "c,value,err_estimate,nodes\n{},{},{},{}\n",
                        format_significant(c, p),
                        format_significant(result.value, p),
                        format_significant(result.err_estimate, p),
                        result.nodes
                    )
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            instance,
            k,
            tol,
            output,
        } => {
            let params = instance.params()?;
            let sol = solve_period_equation(&params, k, tol)?;
            let out = SolveOut {
                c_star: sol.c_star,
                p_achieved: sol.p_achieved,
                target: 2.0 * PI / f64::from(k),
                iterations: sol.iterations,
                k,
            };
            let inputs = Inputs::new("solve", &output)
                .instance(instance.n, instance.m, instance.hm)
                .k(k)
                .tol(tol);
            let text = match output.format {
                Format::Json => Envelope::new(inputs, &out).to_json(),
                Format::Csv => {
                    let p = output.precision();
                    format!(
                        "c_star,p_achieved,iterations,k\n{},{},{},{}\n",
                        format_significant(out.c_star, p),
                        format_significant(out.p_achieved, p),
                        out.iterations,
                        k
                    )
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Profile {
            instance,
            k,
            c,
            tol,
            samples,
            embed,
            output,
        } => {
            let params = instance.params()?;
            let c_used = match c {
                Some(c) => c,
                None => solve_period_equation(&params, k, tol)?.c_star,
            };
            let profile = generate_profile(&params, c_used, k, samples)?;
            let rows = profile_rows(&profile, embed);
            let inputs = Inputs::new("profile", &output)
                .instance(instance.n, instance.m, instance.hm)
                .k(k)
                .c_opt(c)
                .tol(tol)
                .samples(samples);
            let text = match output.format {
                Format::Json => {
                    let out = ProfileOut {
                        c: profile.c,
                        k: profile.k,
                        t_half: profile.t_half,
                        period_p: profile.period_p,
                        closure_defect: profile.closure_defect,
                        closure_warning: profile.closure_warning,
                        samples: rows,
                    };
                    Envelope::new(inputs, &out).to_json()
                }
                Format::Csv => profile_csv(
                    &rows,
                    params.n() as usize + 2,
                    embed,
                    output.precision(),
                ),
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n,
            m,
            hm,
            samples,
            output,
        } => {
            let params = Params::new(n, m, hm)?;
            let report = run_verification(&params, samples, output.seed)?;
            let inputs = Inputs::new("verify", &output)
                .instance(n, m, hm)
                .samples(samples);
            let text = match output.format {
                Format::Json => Envelope::new(inputs, &report).to_json(),
                Format::Csv => {
                    let mut t = String::from("check,max_residual,tolerance,pass\n");
                    for c in &report.checks {
                        t.push_str(&format!(
                            "{},{:e},{:e},{}\n",
                            c.name, c.max_residual, c.tolerance, c.pass
                        ));
                    }
                    t.push_str(&format!(
                        "overall,,,{}\n",
                        if report.pass { "true" } else { "false" }
                    ));
                    t
                }
            };
            emit(&output, text)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
