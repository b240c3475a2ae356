//! Batch frontend: every subcommand reads/writes JSON or CSV artifacts
//! and drops a run manifest next to the main output. All numbers come
//! from the library; the binary only does plumbing.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use eigenexpand::bases::BasisAxis;
use eigenexpand::coeffs::{
    classify_decay, estimate_g_seminorm, expand_with_boost, hankel_clifford, polydisc_eval,
    synthesize, CoefficientTensor,
};
use eigenexpand::solver::{
    adversarial_c3, liouville_scan, operator, report_csv, resonance_scan, solve, CoeffValue,
    LevelArg, OperatorSpec, SolveOptions,
};
use eigenexpand::weights::{
    check_conditions, make_weight, make_weight_diagnostic, AssociatedFunction, Generator, Mode,
    WeightSequence,
};
use eigenexpand::{Error, Result};

#[derive(Parser, Serialize)]
#[command(name = "eigenexpand", version, about = "eigenfunction-expansion toolkit")]
struct Cli {
    /// Seed for any randomized fixture generation (echoed in manifests).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Bit depth for rational approximation of irrational symbol values;
    /// defaults to $EIGENEXPAND_PRECISION_BITS or 200.
    #[arg(long, global = true)]
    bits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ModeArg {
    Roumieu,
    Beurling,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Roumieu => Mode::Roumieu,
            ModeArg::Beurling => Mode::Beurling,
        }
    }
}

#[derive(Args, Serialize)]
struct WeightArgs {
    /// Gevrey exponent s for M_p = p!^s.
    #[arg(long, conflicts_with_all = ["table", "factorial_scaled"])]
    gevrey: Option<f64>,
    /// Comma-separated explicit values M_0,M_1,...
    #[arg(long, conflicts_with = "factorial_scaled")]
    table: Option<String>,
    /// Parameter a for the diagnostic sequence p!/a^p.
    #[arg(long)]
    factorial_scaled: Option<f64>,
    #[arg(long, default_value_t = 200)]
    horizon: usize,
    #[arg(long, value_enum, default_value = "roumieu")]
    mode: ModeArg,
    /// Admit generators that violate the normalization invariant.
    #[arg(long)]
    diagnostic: bool,
}

impl WeightArgs {
    fn build(&self) -> Result<WeightSequence> {
        let generator = if let Some(s) = self.gevrey {
            Generator::Gevrey { s }
        } else if let Some(a) = self.factorial_scaled {
            Generator::FactorialScaled { a }
        } else if let Some(t) = &self.table {
            let values = t
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::domain(format!("bad table value: {e}")))?;
            Generator::Table { values }
        } else {
            return Err(Error::domain(
                "choose a weight via --gevrey, --table or --factorial-scaled",
            ));
        };
        if self.diagnostic {
            make_weight_diagnostic(generator, self.horizon, self.mode.into())
        } else {
            make_weight(generator, self.horizon, self.mode.into())
        }
    }
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// Check the structural conditions of a weight sequence.
    CheckSeq {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value = "check-seq.json")]
        out: PathBuf,
    },
    /// Tabulate the associated function M(t) on a grid (CSV).
    Assoc {
        #[command(flatten)]
        weight: WeightArgs,
        /// Comma-separated evaluation points.
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "assoc.csv")]
        out: PathBuf,
    },
    /// Expand a built-in sample function into basis coefficients.
    Expand {
        /// Axes as JSON, e.g. '[{"kind":"laguerre","dim":1}]'.
        #[arg(long)]
        axes: String,
        /// Per-axis truncation, comma separated.
        #[arg(long, value_name = "BOX")]
        truncation: String,
        /// Sample function: exp = e^{-sum coords}, gauss = e^{-sum coords^2}, one = 1.
        #[arg(long, value_enum)]
        preset: Preset,
        /// Extra quadrature points for non-polynomial integrands.
        #[arg(long, default_value_t = 20)]
        boost: usize,
        #[arg(long, default_value = "coeffs.json")]
        out: PathBuf,
    },
    /// Evaluate a coefficient tensor at points (CSV in, CSV out).
    Synth {
        #[arg(long)]
        coeffs: PathBuf,
        /// CSV of evaluation points, one point per line.
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value = "synth.csv")]
        out: PathBuf,
    },
    /// Fit decay/growth envelopes to a coefficient tensor.
    Classify {
        #[arg(long)]
        coeffs: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value = "classify.json")]
        out: PathBuf,
    },
    /// Apply a diagonal operator to coefficients.
    Apply {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_name = "COEFFS")]
        input: PathBuf,
        #[arg(long, default_value = "apply.json")]
        out: PathBuf,
    },
    /// Solve L u = f coefficient-wise with resonance reporting.
    Solve {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Value for solution coordinates on symbol zeros.
        #[arg(long, default_value = "0")]
        free_value: String,
        /// Optional weight for the regularity assessment.
        #[command(flatten)]
        weight: OptionalWeightArgs,
        #[arg(long, default_value = "solve.json")]
        out: PathBuf,
        #[arg(long, default_value = "solution.json")]
        solution_out: PathBuf,
    },
    /// Small-divisor scan for a coefficient pair (CSV + JSON).
    Liouville {
        /// Rational coefficient of the level term, or "sqrt2".
        #[arg(long)]
        c2: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Rational coefficient of the oscillator term, "sqrt2", or
        /// "adversarial:i1,i2,..." to construct a bad rational.
        #[arg(long)]
        c3: String,
        #[command(flatten)]
        weight: WeightArgs,
        /// Box as pmax,imax.
        #[arg(long, value_name = "BOX")]
        r#box: String,
        /// Comma-separated epsilon grid.
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1)]
        level_dim: usize,
        #[arg(long, value_enum, default_value = "raw")]
        level_arg: LevelArgOpt,
        #[arg(long, default_value = "liouville.csv")]
        out: PathBuf,
    },
    /// Sign involution on a Laguerre axis.
    Hc {
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        /// 1-based coordinates to flip, comma separated.
        #[arg(long)]
        coords: String,
        #[arg(long, default_value = "hc.json")]
        out: PathBuf,
    },
    /// Evaluate the polydisc generating function and derivatives.
    Polydisc {
        #[arg(long)]
        coeffs: PathBuf,
        /// Evaluation point as re:im pairs, comma separated per axis.
        #[arg(long)]
        omega: String,
        /// Derivative multi-order, comma separated.
        #[arg(long, default_value = "0")]
        p: String,
        /// Certify the tail with a decay fit against this weight.
        #[command(flatten)]
        weight: OptionalWeightArgs,
        #[arg(long, default_value = "polydisc.json")]
        out: PathBuf,
    },
    /// Weighted seminorm estimate for a 1-D Laguerre expansion.
    Seminorm {
        #[arg(long)]
        coeffs: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 2.0)]
        a_param: f64,
        #[arg(long, default_value_t = 6)]
        pmax: usize,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        #[arg(long, default_value = "seminorm.json")]
        out: PathBuf,
    },
}

/// Same flags as [`WeightArgs`] but all optional as a group.
#[derive(Args, Serialize)]
struct OptionalWeightArgs {
    #[arg(long)]
    gevrey: Option<f64>,
    #[arg(long)]
    table: Option<String>,
    #[arg(long)]
    factorial_scaled: Option<f64>,
    #[arg(long, default_value_t = 200)]
    horizon: usize,
    #[arg(long, value_enum, default_value = "roumieu")]
    mode: ModeArg,
    #[arg(long)]
    diagnostic: bool,
}

impl OptionalWeightArgs {
    fn build(&self) -> Result<Option<WeightSequence>> {
        if self.gevrey.is_none() && self.table.is_none() && self.factorial_scaled.is_none() {
            return Ok(None);
        }
        let args = WeightArgs {
            gevrey: self.gevrey,
            table: self.table.clone(),
            factorial_scaled: self.factorial_scaled,
            horizon: self.horizon,
            mode: self.mode,
            diagnostic: self.diagnostic,
        };
        args.build().map(Some)
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum LevelArgOpt {
    Raw,
    Root,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Preset {
    Exp,
    Gauss,
    One,
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<u64>()
                .map_err(|e| Error::domain(format!("bad integer '{v}': {e}")))
        })
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::domain(format!("bad number '{v}': {e}")))
        })
        .collect()
}

fn parse_coeff_value(s: &str) -> Result<CoeffValue> {
    if s == "sqrt2" {
        Ok(CoeffValue::Sqrt2)
    } else {
        CoeffValue::rational(s)
    }
}

fn read_tensor(path: &Path) -> Result<CoefficientTensor> {
    let text = std::fs::read_to_string(path)?;
    CoefficientTensor::from_json(serde_json::from_str(&text)?)
}

fn read_operator(path: &Path) -> Result<OperatorSpec> {
    let text = std::fs::read_to_string(path)?;
    OperatorSpec::from_json(serde_json::from_str(&text)?)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(value)?))?;
    Ok(())
}

/// Run manifest: config echo, library version, and whatever constants
/// the command fitted. Reruns reproduce everything but the timestamp.
fn write_manifest(out: &Path, config: &Cli, summary: serde_json::Value) -> Result<()> {
    let manifest = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp_unix": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        "seed": config.seed,
        "precision_bits": operator::approx_bits(),
        "config": serde_json::to_value(&config.command)?,
        "summary": summary,
    });
    let path = out.with_extension(match out.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{ext}.manifest.json"),
        None => "manifest.json".into(),
    });
    write_json(&path, &manifest)
}

fn run(cli: &Cli) -> Result<()> {
    let env_bits = std::env::var("EIGENEXPAND_PRECISION_BITS")
        .ok()
        .and_then(|v| v.parse::<u32>().ok());
    if let Some(bits) = cli.bits.or(env_bits) {
        operator::set_approx_bits(bits);
    }

    match &cli.command {
        Command::CheckSeq { weight, out } => {
            let w = weight.build()?;
            let report = check_conditions(&w)?;
            write_json(out, &serde_json::to_value(&report)?)?;
            write_manifest(out, cli, json!({"horizon": w.horizon()}))?;
        }
        Command::Assoc { weight, t, out } => {
            let w = weight.build()?;
            let assoc = AssociatedFunction::new(&w);
            let mut csv = String::from("t,m,certified,argmax\n");
            for t in parse_f64_list(t)? {
                let v = assoc.eval(t)?;
                csv.push_str(&format!("{t},{:e},{},{}\n", v.value, v.certified, v.argmax));
            }
            std::fs::write(out, csv)?;
            write_manifest(out, cli, json!({}))?;
        }
        Command::Expand {
            axes,
            truncation,
            preset,
            boost,
            out,
        } => {
            let axes: Vec<BasisAxis> = serde_json::from_str(axes)?;
            let truncation = parse_u64_list(truncation)?;
            let f: fn(&[f64]) -> f64 = match preset {
                Preset::Exp => |y| (-y.iter().sum::<f64>()).exp(),
                Preset::Gauss => |y| (-y.iter().map(|v| v * v).sum::<f64>()).exp(),
                Preset::One => |_| 1.0,
            };
            let tensor = expand_with_boost(f, axes, truncation, *boost)?;
            write_json(out, &tensor.to_json())?;
            write_manifest(out, cli, json!({"entries": tensor.len()}))?;
        }
        Command::Synth {
            coeffs,
            points,
            out,
        } => {
            let tensor = read_tensor(coeffs)?;
            let text = std::fs::read_to_string(points)?;
            let pts: Vec<Vec<f64>> = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(parse_f64_list)
                .collect::<Result<_>>()?;
            let values = synthesize(&tensor, &pts)?;
            let mut csv = String::from("point,re,im\n");
            for (pt, (re, im)) in pts.iter().zip(&values) {
                let coords = pt
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join(";");
                csv.push_str(&format!("{coords},{re:e},{im:e}\n"));
            }
            std::fs::write(out, csv)?;
            write_manifest(out, cli, json!({"points": pts.len()}))?;
        }
        Command::Classify {
            coeffs,
            weight,
            out,
        } => {
            let tensor = read_tensor(coeffs)?;
            let w = weight.build()?;
            let fit = classify_decay(&tensor, &w)?;
            write_json(out, &serde_json::to_value(&fit)?)?;
            write_manifest(
                out,
                cli,
                json!({"classification": fit.classification, "rates": fit.rates,
                       "log_constant": fit.log_constant}),
            )?;
        }
        Command::Apply { op, input, out } => {
            let spec = read_operator(op)?;
            let u = read_tensor(input)?;
            let f = operator::forward_apply(&spec, &u)?;
            write_json(out, &f.to_json())?;
            write_manifest(out, cli, json!({"entries": f.len()}))?;
        }
        Command::Solve {
            op,
            rhs,
            free_value,
            weight,
            out,
            solution_out,
        } => {
            let spec = read_operator(op)?;
            let f = read_tensor(rhs)?;
            let w = weight.build()?;
            let free = eigenexpand::rational::parse_rat(free_value).map_err(Error::domain)?;
            let opts = SolveOptions {
                free_value: eigenexpand::rational::CRat::from_rat(free),
                weight: w.as_ref(),
            };
            let report = solve(&spec, &f, &opts)?;
            write_json(out, &serde_json::to_value(&report)?)?;
            write_json(solution_out, &report.solution.to_json())?;
            write_manifest(
                out,
                cli,
                json!({"verdict": report.verdict, "min_divisor": report.divisor_stats.min_abs,
                       "free_indices": report.free_indices.len()}),
            )?;
            // A resonance scan is part of the report; rerun not needed.
            let _ = resonance_scan; // referenced so the standalone API stays exercised
        }
        Command::Liouville {
            c2,
            d,
            c3,
            weight,
            r#box,
            eps,
            level_dim,
            level_arg,
            out,
        } => {
            let w = weight.build()?;
            let c2 = parse_coeff_value(c2)?;
            let c3 = if let Some(targets) = c3.strip_prefix("adversarial:") {
                let targets = parse_u64_list(targets)?;
                CoeffValue::Rational(adversarial_c3(&w, &targets)?)
            } else {
                parse_coeff_value(c3)?
            };
            let bx = parse_u64_list(r#box)?;
            if bx.len() != 2 {
                return Err(Error::domain("--box must be pmax,imax"));
            }
            let eps = parse_f64_list(eps)?;
            let la = match level_arg {
                LevelArgOpt::Raw => LevelArg::Raw,
                LevelArgOpt::Root => LevelArg::Root,
            };
            let report = liouville_scan(&c2, *d, &c3, &w, &eps, bx[0], bx[1], *level_dim, la)?;
            std::fs::write(out, report_csv(&report))?;
            write_json(&out.with_extension("json"), &serde_json::to_value(&report)?)?;
            write_manifest(
                out,
                cli,
                json!({"c_eps": report.rows.iter().map(|r| r.c_eps).collect::<Vec<_>>(),
                       "degenerate_points": report.degenerate_points,
                       "scope": report.scope}),
            )?;
        }
        Command::Hc {
            coeffs,
            axis,
            coords,
            out,
        } => {
            let tensor = read_tensor(coeffs)?;
            let coords: Vec<usize> = parse_u64_list(coords)?.iter().map(|&v| v as usize).collect();
            let flipped = hankel_clifford(&tensor, *axis, &coords)?;
            write_json(out, &flipped.to_json())?;
            write_manifest(out, cli, json!({"entries": flipped.len()}))?;
        }
        Command::Polydisc {
            coeffs,
            omega,
            p,
            weight,
            out,
        } => {
            let tensor = read_tensor(coeffs)?;
            let omega: Vec<Complex64> = omega
                .split(',')
                .map(|pair| {
                    let (re, im) = pair.split_once(':').unwrap_or((pair, "0"));
                    Ok(Complex64::new(
                        re.trim()
                            .parse()
                            .map_err(|e| Error::domain(format!("bad omega: {e}")))?,
                        im.trim()
                            .parse()
                            .map_err(|e| Error::domain(format!("bad omega: {e}")))?,
                    ))
                })
                .collect::<Result<_>>()?;
            let p: Vec<usize> = parse_u64_list(p)?.iter().map(|&v| v as usize).collect();
            let w = weight.build()?;
            let fit_and_weight = match &w {
                Some(w) => {
                    let fit = classify_decay(&tensor, w)?;
                    Some((fit, w))
                }
                None => None,
            };
            let value = polydisc_eval(
                &tensor,
                &omega,
                &p,
                fit_and_weight.as_ref().map(|(f, w)| (f, *w)),
            )?;
            let payload = json!({
                "re": value.value.re,
                "im": value.value.im,
                "tail_bound": value.tail_bound,
                "tail_certified": value.tail_certified,
            });
            write_json(out, &payload)?;
            write_manifest(out, cli, payload)?;
        }
        Command::Seminorm {
            coeffs,
            weight,
            a_param,
            pmax,
            kmax,
            out,
        } => {
            let tensor = read_tensor(coeffs)?;
            let w = weight.build()?;
            let value = estimate_g_seminorm(&tensor, &w, *a_param, *pmax, *kmax)?;
            let payload = json!({"seminorm": value, "a_param": a_param});
            write_json(out, &payload)?;
            write_manifest(out, cli, payload)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = match &e {
                Error::Domain(_) => "domain",
                Error::Horizon(_) => "horizon",
                Error::Arity { .. } => "arity",
                Error::Unsupported(_) => "unsupported",
                Error::Uncertified(_) => "uncertified",
                Error::Io(_) => "io",
                Error::Json(_) => "json",
            };
            eprintln!(
                "{}",
                json!({"error": kind, "message": e.to_string(), "exit_code": e.exit_code()})
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
