use std::io::Write;

use clap::{Args, ValueEnum};
use factorpoly::enumeration::{brute_counts_with_cap, dp_counts_with};
use factorpoly::{CoeffSeq, Multigraph, Surd};
use serde::Serialize;

use crate::config::{CliResult, Format, RunConfig};
use crate::input::{load_graph, WeightArgs};
use crate::output::{csv_finish, csv_row, csv_writer, json_line, stdout_error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dp,
    Brute,
    /// Both, failing with exit code 4 if they disagree.
    Both,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Graph file: a `p <n> <m>` header then `e <u> <v> [lambda]` lines.
    pub graph: String,
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long, value_enum, default_value_t = Method::Dp)]
    pub method: Method,
}

#[derive(Serialize)]
struct CountRecord<'a> {
    graph: &'a str,
    method: Method,
    coefficients: &'a [Surd],
}

pub fn compute(graph: &Multigraph, weights: &WeightArgs, method: Method, cfg: &RunConfig) -> CliResult<CoeffSeq> {
    let spec = weights.resolve(graph)?;
    let counts = match method {
        Method::Dp => dp_counts_with(graph, &spec, &cfg.dp)?,
        Method::Brute => brute_counts_with_cap(graph, &spec, cfg.brute_cap)?,
        Method::Both => {
            let dp = dp_counts_with(graph, &spec, &cfg.dp)?;
            let brute = brute_counts_with_cap(graph, &spec, cfg.brute_cap)?;
            if dp != brute {
                let show = |c: &CoeffSeq| c.values().iter().map(Surd::to_string).collect();
                return Err(factorpoly::Error::Mismatch { dp: show(&dp), brute: show(&brute) }.into());
            }
            dp
        }
    };
    Ok(counts)
}

/// Coefficients up to the last nonzero one; `[0]` for the zero polynomial.
pub fn shown_coefficients(counts: &CoeffSeq) -> Vec<Surd> {
    let mut c = counts.trimmed();
    if c.is_empty() {
        c.push(Surd::from_int(0));
    }
    c
}

pub fn run(args: &CountArgs, cfg: &RunConfig) -> CliResult<u8> {
    let graph = load_graph(&args.graph)?;
    let coefficients = shown_coefficients(&compute(&graph, &args.weights, args.method, cfg)?);
    let mut out = std::io::stdout().lock();
    match cfg.format_or(Format::Text) {
        Format::Text => {
            let line: Vec<String> = coefficients.iter().map(Surd::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(stdout_error)?;
        }
        Format::Json => {
            json_line(&mut out, &CountRecord { graph: &args.graph, method: args.method, coefficients: &coefficients })?
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            csv_row(&mut w, &["j", "coefficient"])?;
            for (j, c) in coefficients.iter().enumerate() {
                csv_row(&mut w, &[&j.to_string(), &c.to_string()])?;
            }
            csv_finish(w)?;
        }
    }
    Ok(0)
}
