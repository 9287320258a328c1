use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use factorpoly::verify::{scan_conjecture1, BoundPolicy, FamilySpec, Generator, NamedKind, ScanReport};
use serde::Serialize;

use crate::config::{CliError, CliResult, Format, RunConfig};
use crate::input::read_file;
use crate::output::{csv_finish, csv_row, csv_writer, json_pretty, stdout_error, write_json_file};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    /// Every per-vertex pair f(v) ≤ g(v) ≤ deg(G, v).
    All,
    /// Constant f ≤ g, lowered to each degree.
    Constant,
    /// --per-graph random per-vertex pairs, seeded by --seed.
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Named {
    Cycles,
    Paths,
    Complete,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("family").required(true).args(["all_graphs", "random", "named", "family_file"])))]
pub struct ScanArgs {
    /// Every multigraph with n ≤ --max-n and m ≤ --max-m.
    #[arg(long, requires_all = ["max_n", "max_m"])]
    pub all_graphs: bool,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_m: Option<usize>,
    /// --count random multigraphs with --n vertices and --m edges, seeded by --seed.
    #[arg(long, requires_all = ["n", "m", "count"])]
    pub random: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Random graphs without loops or parallel edges.
    #[arg(long, requires = "random")]
    pub simple: bool,
    /// A named family up to --max-size vertices.
    #[arg(long, value_enum, requires = "max_size")]
    pub named: Option<Named>,
    #[arg(long)]
    pub max_size: Option<usize>,
    /// A JSON family description (generator and bound policy).
    #[arg(long = "family", value_name = "FILE")]
    pub family_file: Option<String>,
    #[arg(long, value_enum, default_value_t = Policy::All)]
    pub bounds: Policy,
    #[arg(long, default_value_t = 10)]
    pub per_graph: usize,
    /// Directory for scan.json and violations.json.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct Summary<'a> {
    family: &'a FamilySpec,
    graphs: usize,
    instances: usize,
    confirmed: usize,
    trivial: usize,
    falsified: usize,
    skipped: usize,
}

fn family(args: &ScanArgs, seed: u64) -> CliResult<FamilySpec> {
    if let Some(path) = &args.family_file {
        let text = read_file(path)?;
        return serde_json::from_str(&text)
            .map_err(|e| factorpoly::Error::Parse { line: e.line(), message: format!("{path}: {e}") }.into());
    }
    let generator = if args.all_graphs {
        Generator::AllMultigraphs { max_n: args.max_n.unwrap_or(0), max_m: args.max_m.unwrap_or(0) }
    } else if args.random {
        Generator::Random {
            n: args.n.unwrap_or(0),
            m: args.m.unwrap_or(0),
            count: args.count.unwrap_or(0),
            seed,
            simple: args.simple,
        }
    } else if let Some(named) = args.named {
        let named = match named {
            Named::Cycles => NamedKind::Cycles,
            Named::Paths => NamedKind::Paths,
            Named::Complete => NamedKind::Complete,
        };
        Generator::Named { named, max_size: args.max_size.unwrap_or(0) }
    } else {
        return Err(CliError::Usage("no family given".into()));
    };
    let bounds = match args.bounds {
        Policy::All => BoundPolicy::All,
        Policy::Constant => BoundPolicy::Constant,
        Policy::Sampled => BoundPolicy::Sampled { per_graph: args.per_graph, seed },
    };
    Ok(FamilySpec { generator, bounds })
}

/// Always exits 0 once the scan completes; violations go to violations.json.
pub fn run(args: &ScanArgs, cfg: &RunConfig) -> CliResult<u8> {
    let family = family(args, cfg.seed)?;
    let report: ScanReport = scan_conjecture1(&family, &cfg.harness())?;
    let summary = Summary {
        family: &family,
        graphs: report.graphs,
        instances: report.instances,
        confirmed: report.confirmed,
        trivial: report.trivial,
        falsified: report.falsified,
        skipped: report.skipped,
    };
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out.display().to_string(), e))?;
    write_json_file(&args.out.join("scan.json"), &summary)?;
    write_json_file(&args.out.join("violations.json"), &report.violations)?;

    let mut out = std::io::stdout().lock();
    match cfg.format_or(Format::Json) {
        Format::Json => json_pretty(&mut out, &summary)?,
        Format::Text => writeln!(
            out,
            "graphs {}  instances {}  confirmed {}  trivial {}  skipped {}  violations {}",
            report.graphs, report.instances, report.confirmed, report.trivial, report.skipped, report.falsified
        )
        .map_err(stdout_error)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(&mut w, &["graphs", "instances", "confirmed", "trivial", "skipped", "violations"])?;
            let row = [report.graphs, report.instances, report.confirmed, report.trivial, report.skipped, report.falsified]
                .map(|x| x.to_string());
            csv_row(&mut w, &row.each_ref().map(String::as_str))?;
            csv_finish(w)?;
        }
    }
    Ok(0)
}
