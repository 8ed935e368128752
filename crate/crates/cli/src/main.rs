//! `haros`: build Haros graphs, sweep entropy atlases and run the
//! verification harness from the command line.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use log::{info, warn, LevelFilter};

use haros_core::analytics::{
    cf_geometric_mean, convergent_profile, entropy_curve, family_slope, khinchin_constant, reduced_h_exact,
    entropy_s, theoretical_dist, DistFamily, SlopeFamily,
};
use haros_core::cf::{cf_to_path, decimal_to_cf, evaluate};
use haros_core::oracle::{self, CheckReport, NobleParams};
use haros_core::sweep::DEFAULT_BUDGET;
use haros_core::{build, build_profile, build_rational, CfSpec, DegreeDistribution, FareyPath, HarosGraph, Rational};

use output::{csv_writer, float, sig17, sink};

#[derive(Parser, Debug)]
#[command(name = "haros", version, about = "Haros graphs of real numbers in [0,1]")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Work budget in graph nodes for sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: u128,

    /// Logging verbosity on standard error.
    #[arg(long, global = true, default_value = "warn")]
    log_level: LevelFilter,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one graph and print it as JSON.
    Graph(GraphArgs),
    /// Entropy atlas over the interior of a Farey sequence, as CSV.
    Entropy(EntropyArgs),
    /// Run oracle checks and print one report per check.
    Verify(VerifyArgs),
    /// Degree distribution of a convergent of an irrational, as CSV.
    Irrational(IrrationalArgs),
    /// Measured against predicted entropy slopes for each family, as CSV.
    Families(FamiliesArgs),
    /// Arithmetic, geometric and continued-fraction means over a Farey sequence, as CSV.
    Means(MeansArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["fraction", "path", "cf"])))]
struct GraphArgs {
    /// Reduced fraction `p/q` in [0,1].
    #[arg(value_parser = parse_rational)]
    fraction: Option<Rational>,
    /// Farey-tree path such as `LLRR`.
    #[arg(long, value_parser = parse_path)]
    path: Option<FareyPath>,
    /// Continued fraction such as `[2,2]`; periodic specs are truncated at `--depth`.
    #[arg(long, value_parser = parse_cf)]
    cf: Option<CfSpec>,
    /// Terms kept from a periodic `--cf`.
    #[arg(long, default_value_t = 20)]
    depth: usize,
    /// Include the exact degree distribution.
    #[arg(long)]
    dist: bool,
    /// Print only the collapsed degree sequence.
    #[arg(long)]
    collapsed: bool,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    /// Farey order N.
    #[arg(long)]
    order: u64,
    /// Add the reduced entropy H.
    #[arg(long)]
    reduced: bool,
    /// Add the arithmetic and geometric mean degree.
    #[arg(long)]
    means: bool,
    /// Keep every n-th row.
    #[arg(long)]
    thin: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckName {
    Theorem1,
    Holes,
    Conjecture1,
    Scaling,
    Derham,
    Families,
    Noble,
    Metallic,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Jsonl,
    Csv,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    check: CheckName,
    /// Largest denominator swept.
    #[arg(long)]
    max_q: Option<u64>,
    /// Largest degree compared (conjecture1, scaling).
    #[arg(long)]
    max_k: Option<u32>,
    /// Largest m in the scaling law.
    #[arg(long)]
    max_m: Option<u64>,
    /// Longest path enumerated (holes).
    #[arg(long)]
    max_len: Option<usize>,
    /// Convergent depth (noble, metallic).
    #[arg(long)]
    depth: Option<usize>,
    /// Members per family (families).
    #[arg(long)]
    count: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Jsonl)]
    format: ReportFormat,
    /// Include elapsed seconds in each report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("number").required(true).args(["cf", "decimal"])))]
struct IrrationalArgs {
    /// Continued fraction spec, e.g. `[2,4,(1)]`.
    #[arg(long, value_parser = parse_cf)]
    cf: Option<CfSpec>,
    /// Decimal in (0,1); expanded to at most `--depth` terms.
    #[arg(long)]
    decimal: Option<f64>,
    /// Number of continued fraction terms.
    #[arg(long, default_value_t = 40)]
    depth: usize,
}

#[derive(Args, Debug)]
struct FamiliesArgs {
    /// Members per family, from n = 2.
    #[arg(long, default_value_t = 30)]
    count: u64,
    /// Convergent depth for the noble families.
    #[arg(long, default_value_t = 80)]
    depth: usize,
}

#[derive(Args, Debug)]
struct MeansArgs {
    /// Farey order N.
    #[arg(long, default_value_t = 100)]
    order: u64,
    /// Print Khinchin's constant and exit.
    #[arg(long)]
    khinchin: bool,
}

fn parse_budget(s: &str) -> std::result::Result<u128, String> {
    let v: u128 = s.parse().map_err(|_| format!("`{s}` is not a positive integer"))?;
    if v == 0 {
        return Err("budget must be positive".into());
    }
    Ok(v)
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_path(s: &str) -> std::result::Result<FareyPath, String> {
    s.parse().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_cf(s: &str) -> std::result::Result<CfSpec, String> {
    s.parse().map_err(|e| format!("`{s}`: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new().filter_level(cli.log_level).init();
    match run(&cli) {
        Ok(code) => code,
        Err(e) if output::is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Graph(a) => cmd_graph(a, out)?,
        Command::Entropy(a) => cmd_entropy(a, cli.budget, out)?,
        Command::Verify(a) => return cmd_verify(a, cli.budget, out),
        Command::Irrational(a) => cmd_irrational(a, out)?,
        Command::Families(a) => cmd_families(a, out)?,
        Command::Means(a) => cmd_means(a, cli.budget, out)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_graph(a: &GraphArgs, out: Option<&std::path::Path>) -> Result<()> {
    let graph: HarosGraph = if let Some(x) = &a.fraction {
        build_rational(x)
    } else if let Some(path) = &a.path {
        build(path)
    } else if let Some(spec) = &a.cf {
        let cf = if spec.is_rational() { spec.truncate(usize::MAX)? } else { spec.truncate(a.depth)? };
        build(&cf_to_path(&cf))
    } else {
        unreachable!("clap enforces one input")
    };
    let mut w = sink(out)?;
    if a.collapsed {
        serde_json::to_writer(&mut w, &graph.collapse().degrees)?;
    } else {
        serde_json::to_writer(&mut w, &graph.dump(a.dist))?;
    }
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn cmd_entropy(a: &EntropyArgs, budget: u128, out: Option<&std::path::Path>) -> Result<()> {
    let rows = entropy_curve(a.order, a.thin, budget)?;
    info!("{} rows for F_{}", rows.len(), a.order);
    let mut w = csv_writer(out)?;
    let mut header = vec!["p", "q", "x", "S"];
    if a.reduced {
        header.push("H");
    }
    if a.means {
        header.extend(["k_mean", "k_geo"]);
    }
    w.write_record(&header)?;
    for r in &rows {
        let mut rec = vec![r.x.numer().to_string(), r.x.denom().to_string(), sig17(r.x_float), float(r.s)];
        if a.reduced {
            rec.push(float(r.h));
        }
        if a.means {
            rec.push(r.k_mean.to_string());
            rec.push(float(r.k_geo));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn run_check(a: &VerifyArgs, name: CheckName, budget: u128) -> Result<CheckReport> {
    let max_q = |d| a.max_q.unwrap_or(d);
    Ok(match name {
        CheckName::Theorem1 => oracle::check_theorem1(max_q(200), budget)?,
        CheckName::Holes => oracle::check_holes(a.max_len.unwrap_or(14), budget)?,
        CheckName::Conjecture1 => oracle::check_conjecture1(max_q(200), a.max_k.unwrap_or(20), budget)?,
        CheckName::Scaling => {
            oracle::check_scaling(max_q(100), 5..=a.max_k.unwrap_or(15), 1..=a.max_m.unwrap_or(3), budget)?
        }
        CheckName::Derham => oracle::check_derham(max_q(100), budget)?,
        CheckName::Families => oracle::check_families(a.count.unwrap_or(30))?,
        CheckName::Noble => {
            let mut params = NobleParams::default();
            if let Some(d) = a.depth {
                params.depth = d;
            }
            oracle::check_noble(&params)?
        }
        CheckName::Metallic => oracle::check_metallic(&[2, 3], a.depth.unwrap_or(40))?,
        CheckName::All => unreachable!("expanded by the caller"),
    })
}

fn cmd_verify(a: &VerifyArgs, budget: u128, out: Option<&std::path::Path>) -> Result<ExitCode> {
    let reports = if a.check == CheckName::All {
        oracle::run_all(budget)?
    } else {
        vec![run_check(a, a.check, budget)?]
    };
    match a.format {
        ReportFormat::Jsonl => {
            let mut w = sink(out)?;
            for r in &reports {
                writeln!(w, "{}", r.to_json_line(a.timings))?;
            }
            w.flush()?;
        }
        ReportFormat::Csv => {
            let mut w = csv_writer(out)?;
            w.write_record(["check", "instance", "status", "lhs", "rhs"])?;
            for r in &reports {
                let mut summary = format!("{} instances, {} failures", r.instances_tested, r.failure_count);
                if a.timings {
                    summary.push_str(&format!(", {:.3}s", r.elapsed));
                }
                w.write_record([r.check_id.as_str(), &summary, r.status(), "", ""])?;
                for f in &r.failures {
                    w.write_record([r.check_id.as_str(), &f.instance, "fail", &f.lhs, &f.rhs])?;
                }
            }
            w.flush()?;
        }
    }
    for r in &reports {
        info!("{}: {} ({} instances, {:.2}s)", r.check_id, r.status(), r.instances_tested, r.elapsed);
    }
    Ok(if reports.iter().all(CheckReport::passed) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_irrational(a: &IrrationalArgs, out: Option<&std::path::Path>) -> Result<()> {
    let (dist, family): (DegreeDistribution, Option<DistFamily>) = if let Some(spec) = &a.cf {
        if spec.is_rational() {
            bail!("{spec} is rational; use `graph --cf` instead");
        }
        (convergent_profile(spec, a.depth)?.distribution(), DistFamily::recognise(spec))
    } else if let Some(x) = a.decimal {
        let cf = decimal_to_cf(x, a.depth)?;
        warn!(
            "{x} approximated by a continued fraction of {} terms; the distribution is that of a rational",
            cf.terms().len()
        );
        (build_profile(cf_to_path(&cf).symbols().iter().copied()).distribution(), None)
    } else {
        unreachable!("clap enforces one input")
    };
    if let (Some(spec), Some(f)) = (&a.cf, family) {
        info!("{spec} recognised as {f} ≈ {}", evaluate(spec));
    }
    let mut w = csv_writer(out)?;
    w.write_record(["k", "count", "P", "ratio", "theory"])?;
    let mut prev = None;
    for k in 2..=dist.max_degree() {
        let count = dist.count(k);
        let p = dist.probability_f64(k);
        let ratio = match prev {
            Some(q) if q > 0.0 => float(p / q),
            _ => String::new(),
        };
        let theory = family.map(|f| float(theoretical_dist(f, k))).unwrap_or_default();
        w.write_record([k.to_string(), count.to_string(), dist.probability(k).to_string(), ratio, theory])?;
        prev = Some(p);
    }
    w.flush()?;
    Ok(())
}

fn cmd_families(a: &FamiliesArgs, out: Option<&std::path::Path>) -> Result<()> {
    let mut w = csv_writer(out)?;
    w.write_record(["family", "n", "x", "H_over_x", "slope", "abs_error"])?;
    for family in SlopeFamily::ALL {
        let slope = family_slope(family);
        let first = family.first_index();
        for n in first..first + a.count {
            let (x_text, measured) = if let Some(x) = family.rational_member(n) {
                let s = entropy_s(&build_rational(&x).degree_distribution());
                (x.to_string(), reduced_h_exact(&x, s) / x.to_f64())
            } else {
                let spec = family.noble_member(n).context("noble family member")?;
                (sig17(evaluate(&spec)), oracle::convergent_slope(&spec, a.depth)?)
            };
            w.write_record([
                family.name().to_string(),
                n.to_string(),
                x_text,
                float(measured),
                float(slope),
                float((measured - slope).abs()),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_means(a: &MeansArgs, budget: u128, out: Option<&std::path::Path>) -> Result<()> {
    if a.khinchin {
        let mut w = sink(out)?;
        writeln!(w, "{}", khinchin_constant())?;
        w.flush()?;
        return Ok(());
    }
    let rows = entropy_curve(a.order, None, budget)?;
    let mut w = csv_writer(out)?;
    w.write_record(["p", "q", "x", "k_mean", "k_geo", "cf_geo"])?;
    for r in &rows {
        w.write_record([
            r.x.numer().to_string(),
            r.x.denom().to_string(),
            sig17(r.x_float),
            r.k_mean.to_string(),
            float(r.k_geo),
            float(cf_geometric_mean(&r.x)?),
        ])?;
    }
    w.flush()?;
    Ok(())
}
