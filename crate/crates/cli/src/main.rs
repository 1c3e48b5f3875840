use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use curvesing::ideal::{dual_direct, dual_values_symmetry};
use curvesing::io::{from_json, CurveInput, IdealInput, PlanInput};
use curvesing::logres::{analyze, AnalysisOptions, AnalysisReport, Verification};
use curvesing::poincare::{poincare_symmetry_check, PoincareSymmetry};
use curvesing::strata::{scan_strata, SampleOptions, StrataReport};
use curvesing::{Curve, Error, FractionalIdeal, Preset, Result, ValueSet};

#[derive(Parser)]
#[command(name = "curvesing", version, about = "Value sets, residues and Tjurina strata of curve singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, value sets of J, Ω¹ and R, and consistency checks.
    Analyze(Common),
    /// Value sets of an ideal and of its dual.
    Dual(IdealArgs),
    /// Poincaré polynomials of an ideal and its dual, with the symmetry verdict.
    Poincare(IdealArgs),
    /// Samples a deformation family and groups the fibers into strata.
    Strata(Common),
}

#[derive(Args)]
struct Common {
    /// Input JSON file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    output_format: Format,
    /// Starting truncation for lifted branches; raised automatically when too low.
    #[arg(long)]
    truncation: Option<i64>,
    #[arg(long, default_value = "cross-check")]
    verify: Verification,
    /// Seed for random sample plans.
    #[arg(long)]
    seed: Option<u64>,
    /// Degree cap of the local quotient computations.
    #[arg(long)]
    dmax: Option<u32>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    common: Common,
    /// Preset name or path to a JSON ideal; defaults to the input's `ideal`, then O_D.
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Output of `dual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct DualReport {
    ideal: ValueSet,
    dual: ValueSet,
    /// Whether the values of the directly computed dual agree; absent without verification.
    direct_agrees: Option<bool>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((stage, e)) => {
            eprintln!("error: {stage}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

type Staged<T> = std::result::Result<T, (&'static str, Error)>;

fn at<T>(stage: &'static str, r: Result<T>) -> Staged<T> {
    r.map_err(|e| (stage, e))
}

fn run(cli: Cli) -> Staged<String> {
    let common = match &cli.command {
        Command::Analyze(c) | Command::Strata(c) => c,
        Command::Dual(a) | Command::Poincare(a) => &a.common,
    };
    if let Some(n) = common.threads {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        at("threads", pool.map_err(|e| Error::InvalidInput(e.to_string())))?;
    }
    let text = at("input", read(&common.input))?;
    match &cli.command {
        Command::Analyze(c) => {
            let curve = at("input", load_curve(&text, c).map(|(curve, _)| curve))?;
            let report = at("analyze", analyze(&curve, AnalysisOptions { verification: c.verify, d_max: c.dmax }))?;
            Ok(emit(c.output_format, &report, analysis_markdown))
        }
        Command::Dual(a) => {
            let (_, ideal) = at("input", load_ideal(&text, a))?;
            let values = at("dual", ideal.values().cloned())?;
            let dual = at("dual", dual_values_symmetry(&ideal))?;
            let direct_agrees = match a.common.verify {
                Verification::None => None,
                _ => {
                    let d = at("dual", dual_direct(&ideal))?;
                    Some(at("dual", d.values())?.same_values(&dual))
                }
            };
            let report = DualReport { ideal: values, dual, direct_agrees };
            Ok(emit(a.common.output_format, &report, dual_markdown))
        }
        Command::Poincare(a) => {
            let (_, ideal) = at("input", load_ideal(&text, a))?;
            let report = at("poincare", poincare_symmetry_check(&ideal))?;
            Ok(emit(a.common.output_format, &report, poincare_markdown))
        }
        Command::Strata(c) => {
            let plan: PlanInput = at("input", from_json(&text))?;
            let (family, samples) = at("input", plan.build(c.seed))?;
            let opts = SampleOptions { truncation: c.truncation.or(plan.truncation), d_max: c.dmax };
            let report = at("strata", scan_strata(&family, &samples, opts))?;
            Ok(emit(c.output_format, &report, StrataReport::markdown))
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_curve(text: &str, c: &Common) -> Result<(Arc<Curve>, CurveInput)> {
    let input: CurveInput = from_json(text)?;
    Ok((input.build(c.truncation)?, input))
}

fn load_ideal(text: &str, a: &IdealArgs) -> Result<(Arc<Curve>, FractionalIdeal)> {
    let (curve, input) = load_curve(text, &a.common)?;
    let spec = match &a.ideal {
        None => input.ideal.clone().unwrap_or(IdealInput::Preset { preset: Preset::LocalRing }),
        Some(s) => match s.parse::<Preset>() {
            Ok(preset) => IdealInput::Preset { preset },
            Err(_) => from_json(&read(Path::new(s))?)?,
        },
    };
    let ideal = spec.build(&curve)?;
    Ok((curve, ideal))
}

fn emit<T: Serialize>(format: Format, report: &T, markdown: fn(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Markdown => markdown(report),
    }
}

fn analysis_markdown(r: &AnalysisReport) -> String {
    let opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
    let mut out = String::from("| invariant | value |\n|---|---|\n");
    let rows = [
        ("p", r.p.to_string()),
        ("γ", format!("{:?}", r.gamma)),
        ("δ", r.delta.to_string()),
        ("μ", r.mu.to_string()),
        ("τ", opt(r.tau)),
        ("τ (direct)", opt(r.tau_direct)),
        ("μ (direct)", opt(r.mu_direct)),
        ("multiplicities", format!("{:?}", r.multiplicities)),
        ("val(O_D)", r.semigroup.describe()),
        ("val(J)", r.val_j.describe()),
        ("val(Ω¹)", r.val_omega1.describe()),
        ("val(R)", r.val_r.describe()),
        ("dim R/O_D̃", r.dim_residues_over_normalization.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "| {k} | {v} |");
    }
    let negs: Vec<String> = r.negative_residues.iter().rev().map(|v| format_point(v)).collect();
    let _ = writeln!(out, "| negative values | {} |", negs.join(", "));
    if !r.zero_divisor_values.is_empty() {
        let zd: Vec<String> = r.zero_divisor_values.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "| zero-divisor values | {} |", zd.join(", "));
    }
    if r.gorenstein_caveat {
        out.push_str("\nResidues of a space curve rest on the Gorenstein symmetry of its semigroup.\n");
    }
    out.push_str("\n| check | passed | detail |\n|---|---|---|\n");
    for (name, c) in &r.checks {
        let _ = writeln!(out, "| {name} | {} | {} |", if c.passed { "yes" } else { "no" }, c.detail);
    }
    out
}

fn format_point(v: &[i64]) -> String {
    match v {
        [x] => x.to_string(),
        _ => format!("{v:?}"),
    }
}

fn dual_markdown(r: &DualReport) -> String {
    let verdict = match r.direct_agrees {
        None => "not checked",
        Some(true) => "agrees",
        Some(false) => "DISAGREES",
    };
    format!(
        "| | values |\n|---|---|\n| I | {} |\n| I^∨ | {} |\n\ndirect dual: {verdict}\n",
        r.ideal.describe(),
        r.dual.describe()
    )
}

fn poincare_markdown(r: &PoincareSymmetry) -> String {
    let yes = |b: bool| if b { "holds" } else { "FAILS" };
    let mut out = format!(
        "P_I = {}\nP_I^∨ = {}\nsign = {}\npolynomial identity: {}\nc identity: {}\n",
        r.ideal,
        r.dual,
        r.sign,
        yes(r.polynomial_identity),
        yes(r.c_identity)
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "first failure at {w:?}");
    }
    out
}
