use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use factorpoly::fugacities::{interval_fugacities, thm26_fugacities, LemmaCase, Quadratic};
use factorpoly::verify::{
    check_cor19, check_cor20, check_heilmann_lieb, check_prop24, check_prop25, check_prop6, check_ruelle_bound,
    check_ruelle_fugacity, check_thm26, check_thm27, check_thm3, HarnessConfig, Prop25Part, TheoremCheck, TheoremId,
    Verdict,
};
use factorpoly::{DegreeBounds, FugacitySpec, Multigraph, Surd};

use crate::config::{CliError, CliResult, Format, RunConfig};
use crate::input::{load_graph, parse_fugacity};
use crate::output::{csv_finish, csv_row, csv_writer, json_line, round12, stdout_error, write_json_file};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// hl, thm3, thm4, thm5, prop6, cor19, cor20, prop24, prop25a, prop25b, thm26, thm27 or `all`.
    pub theorem: String,
    /// Graph file.
    pub graph: String,
    /// Lower degree bound for thm3, prop25a, prop25b and thm26 [default: 0].
    #[arg(long)]
    pub f: Option<usize>,
    /// Upper degree bound [default: f + 1 for thm3, f + 2 otherwise], lowered to each degree.
    #[arg(long)]
    pub g: Option<usize>,
    /// Fugacities for prop6, cor19, cor20 and prop24 (file, JSON or preset as in `count`).
    #[arg(long)]
    pub fugacity: Option<String>,
    /// Quadratic factor for thm26 and the default cor19/cor20/prop24 fugacities.
    #[arg(long, default_value = "sqrt3", value_parser = |s: &str| s.parse::<Quadratic>())]
    pub quad: Quadratic,
    /// Conclusion checked by prop24: a, b or c.
    #[arg(long, default_value = "a", value_parser = parse_case)]
    pub case: LemmaCase,
    /// Middle fugacity for thm5 [default: sqrt(2 - 2/Δ)].
    #[arg(long)]
    pub u1: Option<String>,
    /// Directory to receive report.json with every record.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_case(s: &str) -> Result<LemmaCase, String> {
    match s.to_ascii_lowercase().as_str() {
        "a" => Ok(LemmaCase::A),
        "b" => Ok(LemmaCase::B),
        "c" => Ok(LemmaCase::C),
        _ => Err(format!("unknown case {s:?}; expected a, b or c")),
    }
}

fn ids(name: &str) -> CliResult<Vec<TheoremId>> {
    if name == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    Ok(vec![name.parse::<TheoremId>().map_err(CliError::Usage)?])
}

struct Inputs<'a> {
    args: &'a VerifyArgs,
    graph: Multigraph,
    cfg: HarnessConfig,
}

impl Inputs<'_> {
    fn bounds(&self, default_width: usize) -> CliResult<DegreeBounds> {
        let f = self.args.f.unwrap_or(0);
        let g = self.args.g.unwrap_or(f + default_width);
        Ok(DegreeBounds::clamped(&self.graph, f, g)?)
    }

    /// The given fugacities, or per-vertex `fallback(deg)`.
    fn spec(&self, fallback: impl Fn(usize) -> factorpoly::Result<Vec<Surd>>) -> CliResult<FugacitySpec> {
        match &self.args.fugacity {
            Some(text) => Ok(parse_fugacity(text)?.resolve(&self.graph)?),
            None => Ok(FugacitySpec::per_vertex(&self.graph, |_, d| Ok((d, fallback(d)?)))?),
        }
    }

    fn quadratic_spec(&self) -> CliResult<FugacitySpec> {
        self.spec(|d| thm26_fugacities(0, d.min(2), d, self.args.quad))
    }

    fn run(&self, id: TheoremId) -> CliResult<TheoremCheck> {
        let (g, cfg) = (&self.graph, &self.cfg);
        let check = match id {
            TheoremId::Hl => check_heilmann_lieb(g, cfg)?,
            TheoremId::Thm3 => check_thm3(g, &self.bounds(1)?, cfg)?,
            TheoremId::Thm4 => check_ruelle_bound(g, cfg)?,
            TheoremId::Thm5 => {
                let u1 = match &self.args.u1 {
                    Some(t) => Some(t.parse::<Surd>().map_err(|e| CliError::Usage(format!("--u1: {e}")))?),
                    None => None,
                };
                check_ruelle_fugacity(g, u1, cfg)?
            }
            TheoremId::Prop6 => check_prop6(g, &self.spec(|d| interval_fugacities(0, d.min(1), d))?, cfg)?,
            TheoremId::Cor19 => check_cor19(g, &self.quadratic_spec()?, cfg)?,
            TheoremId::Cor20 => check_cor20(g, &self.quadratic_spec()?, cfg)?,
            TheoremId::Prop24 => check_prop24(g, &self.quadratic_spec()?, self.args.case, cfg)?,
            TheoremId::Prop25a => check_prop25(g, &self.bounds(2)?, Prop25Part::A, cfg)?,
            TheoremId::Prop25b => check_prop25(g, &self.bounds(2)?, Prop25Part::B, cfg)?,
            TheoremId::Thm26 => check_thm26(g, &self.bounds(2)?, self.args.quad, cfg)?,
            TheoremId::Thm27 => check_thm27(g, cfg)?,
        };
        Ok(check)
    }
}

fn status(v: &Verdict) -> (&'static str, String) {
    match v {
        Verdict::Confirmed => ("confirmed", String::new()),
        Verdict::Falsified { witness } => ("falsified", witness.detail.clone()),
        Verdict::Inapplicable { reason } => ("inapplicable", reason.clone()),
    }
}

fn margins_text(c: &TheoremCheck) -> String {
    c.margins.iter().map(|(k, v)| format!("{k}={}", round12(*v))).collect::<Vec<_>>().join(" ")
}

pub fn run(args: &VerifyArgs, cfg: &RunConfig) -> CliResult<u8> {
    let ids = ids(&args.theorem)?;
    let inputs = Inputs { args, graph: load_graph(&args.graph)?, cfg: cfg.harness() };
    let format = cfg.format_or(Format::Json);
    let mut out = std::io::stdout().lock();
    let mut csv = (format == Format::Csv).then(|| csv_writer(std::io::stdout()));
    if let Some(w) = csv.as_mut() {
        csv_row(w, &["theorem", "status", "detail", "margins"])?;
    }
    let mut records = Vec::with_capacity(ids.len());
    for id in ids {
        let check = inputs.run(id)?;
        let (word, detail) = status(&check.verdict);
        match format {
            Format::Json => json_line(&mut out, &check)?,
            Format::Text => {
                let mut line = format!("{:<8} {word}", id.as_str());
                for part in [detail, margins_text(&check)] {
                    if !part.is_empty() {
                        line += "  ";
                        line += &part;
                    }
                }
                writeln!(out, "{line}").map_err(stdout_error)?;
                out.flush().map_err(stdout_error)?;
            }
            Format::Csv => csv_row(csv.as_mut().expect("csv writer"), &[id.as_str(), word, &detail, &margins_text(&check)])?,
        }
        records.push(check);
    }
    if let Some(w) = csv {
        csv_finish(w)?;
    }
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(&dir.display().to_string(), e))?;
        write_json_file(&dir.join("report.json"), &records)?;
    }
    Ok(if records.iter().any(|c| c.verdict.is_falsified()) { 1 } else { 0 })
}
