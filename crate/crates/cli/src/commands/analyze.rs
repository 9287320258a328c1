use std::io::Write;

use clap::Args;
use factorpoly::enumeration::{dp_counts_with, sample_nonvanishing, SampleWeights};
use factorpoly::inequalities::{all_checks, IneqReport};
use factorpoly::polynomials::{classify, nonvanishing_in, verdict_from_roots, Classification, Outcome};
use factorpoly::{Region, RegionVerdict, Surd, UniPoly};
use serde::Serialize;

use crate::config::{CliError, CliResult, Format, RunConfig};
use crate::input::{load_graph, parse_angle, parse_surds, WeightArgs};
use crate::output::{complex_text, csv_finish, csv_row, csv_writer, json_pretty, round12, stdout_error};

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Graph file whose count polynomial is analysed; omit when giving --coeffs.
    #[arg(required_unless_present = "coeffs")]
    pub graph: Option<String>,
    /// Comma-separated coefficients c0,c1,.. of the polynomial.
    #[arg(long, conflicts_with = "graph")]
    pub coeffs: Option<String>,
    #[command(flatten)]
    pub weights: WeightArgs,
    /// Sector {|arg z| < θ}, e.g. `pi`, `2pi/3`, `0.5`. Repeatable.
    #[arg(long, value_parser = parse_angle)]
    pub sector: Vec<f64>,
    /// Open disc {|z| < κ}. Repeatable.
    #[arg(long)]
    pub disc: Vec<f64>,
    /// Exterior {|z| > κ}. Repeatable.
    #[arg(long)]
    pub exterior: Vec<f64>,
    /// Random points per region at which to test the multivariate polynomial.
    #[arg(long, default_value_t = 0, requires = "graph")]
    pub samples: usize,
    /// Sample the edge product ∏(1 + λ z_u z_v) instead of the weighted sum.
    #[arg(long, requires = "graph")]
    pub product: bool,
}

#[derive(Serialize)]
struct Summary {
    real_rooted_nonpositive: bool,
    hurwitz_strict: bool,
    hurwitz_quasi: bool,
    /// `None` for a constant.
    max_real_part: Option<f64>,
    min_abs_arg: Option<f64>,
    min_modulus: Option<f64>,
    max_modulus: Option<f64>,
    /// `max | |z| − 1 |`.
    max_modulus_deviation: Option<f64>,
}

impl Summary {
    fn of(c: &Classification) -> Self {
        Summary {
            real_rooted_nonpositive: c.real_rooted_nonpositive,
            hurwitz_strict: c.hurwitz_strict,
            hurwitz_quasi: c.hurwitz_quasi,
            max_real_part: c.max_real_part.is_finite().then_some(c.max_real_part),
            min_abs_arg: c.min_abs_arg,
            min_modulus: c.min_modulus,
            max_modulus: c.max_modulus,
            max_modulus_deviation: c.roots.all_roots().map(|z| (z.norm() - 1.0).abs()).reduce(f64::max),
        }
    }
}

#[derive(Serialize)]
struct RegionRecord {
    region: Region,
    label: String,
    verdict: RegionVerdict,
}

#[derive(Serialize)]
struct AnalyzeReport {
    source: String,
    coefficients: Vec<Surd>,
    degree: Option<usize>,
    /// Every root, `[re, im]`, zeros at the origin last.
    roots: Vec<[f64; 2]>,
    residuals: Vec<f64>,
    classification: Option<Summary>,
    inequalities: Vec<IneqReport>,
    regions: Vec<RegionRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    samples: Vec<RegionRecord>,
}

fn regions(args: &AnalyzeArgs) -> CliResult<Vec<Region>> {
    let out: Vec<Region> = args
        .sector
        .iter()
        .map(|&t| Region::Sector(t))
        .chain(args.disc.iter().map(|&k| Region::Disc(k)))
        .chain(args.exterior.iter().map(|&k| Region::DiscExterior(k)))
        .collect();
    for r in &out {
        r.validate()?;
    }
    Ok(out)
}

pub fn run(args: &AnalyzeArgs, cfg: &RunConfig) -> CliResult<u8> {
    let regions = regions(args)?;
    let mut samples = Vec::new();
    let (source, poly) = match (&args.coeffs, &args.graph) {
        (Some(text), _) => {
            if args.weights.f.is_some() || args.weights.g.is_some() || args.weights.is_fugacity() {
                return Err(CliError::Usage("--coeffs takes no degree bounds or fugacities".into()));
            }
            ("coefficients".to_string(), UniPoly::new(parse_surds(text)?))
        }
        (None, Some(path)) => {
            let graph = load_graph(path)?;
            let spec = args.weights.resolve(&graph)?;
            if args.samples > 0 {
                for (i, region) in regions.iter().enumerate() {
                    let weights = if args.product { SampleWeights::Lambda } else { SampleWeights::Fugacity(&spec) };
                    let seed = cfg.seed.wrapping_add(i as u64);
                    let verdict = sample_nonvanishing(&graph, weights, region, args.samples, seed)?;
                    samples.push(RegionRecord { region: *region, label: region.to_string(), verdict });
                }
            }
            (path.clone(), dp_counts_with(&graph, &spec, &cfg.dp)?.poly())
        }
        (None, None) => unreachable!("clap requires a graph or --coeffs"),
    };

    let coefficients = poly.coeffs().to_vec();
    let mut report = AnalyzeReport {
        source,
        degree: poly.degree(),
        coefficients: if coefficients.is_empty() { vec![Surd::from_int(0)] } else { coefficients.clone() },
        roots: Vec::new(),
        residuals: Vec::new(),
        classification: None,
        inequalities: all_checks(&coefficients, cfg.max_minor_order)?,
        regions: Vec::new(),
        samples,
    };
    if poly.is_zero() {
        for region in &regions {
            let verdict = nonvanishing_in(&poly, region, &cfg.tol)?;
            report.regions.push(RegionRecord { region: *region, label: region.to_string(), verdict });
        }
    } else {
        let c = classify(&poly, &cfg.tol)?;
        report.roots = c.roots.all_roots().map(|z| [z.re, z.im]).collect();
        report.residuals = c.roots.residuals.clone();
        for region in &regions {
            let verdict = verdict_from_roots(&c.roots, region, &cfg.tol);
            report.regions.push(RegionRecord { region: *region, label: region.to_string(), verdict });
        }
        report.classification = Some(Summary::of(&c));
    }

    let mut out = std::io::stdout().lock();
    match cfg.format_or(Format::Text) {
        Format::Json => json_pretty(&mut out, &report)?,
        Format::Text => write_text(&mut out, &report).map_err(stdout_error)?,
        Format::Csv => write_csv(out, &report)?,
    }
    Ok(0)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), round12)
}

fn verdict_text(v: &RegionVerdict) -> String {
    let mut s = match v.outcome {
        Outcome::IdenticallyZero => "identically zero".to_string(),
        Outcome::Nonvanishing => "nonvanishing".to_string(),
        Outcome::Counterexample => "counterexample".to_string(),
    };
    if let Some(w) = v.witness {
        let what = if v.exhaustive { "root" } else { "value" };
        s += &format!(", {what} {}", complex_text(w.re, w.im));
    }
    if let Some(z) = &v.sample_point {
        let pts: Vec<String> = z.iter().map(|z| complex_text(z.re, z.im)).collect();
        s += &format!(" at z = ({})", pts.join(", "));
    }
    if v.on_boundary {
        s += ", root on the boundary";
    }
    if !v.exhaustive && v.outcome != Outcome::Counterexample {
        s += " (sampled)";
    }
    s
}

fn write_text(out: &mut impl Write, r: &AnalyzeReport) -> std::io::Result<()> {
    let coeffs: Vec<String> = r.coefficients.iter().map(Surd::to_string).collect();
    writeln!(out, "source: {}", r.source)?;
    writeln!(out, "coefficients: {}", coeffs.join(" "))?;
    writeln!(out, "roots ({}):", r.roots.len())?;
    for z in &r.roots {
        writeln!(out, "  {}", complex_text(z[0], z[1]))?;
    }
    if let Some(c) = &r.classification {
        let yes = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            out,
            "real-rooted nonpositive: {}  hurwitz strict: {}  hurwitz quasi: {}",
            yes(c.real_rooted_nonpositive),
            yes(c.hurwitz_strict),
            yes(c.hurwitz_quasi)
        )?;
        writeln!(
            out,
            "max real part: {}  min |arg|: {}  modulus: [{}, {}]  max ||z|-1|: {}",
            opt(c.max_real_part),
            opt(c.min_abs_arg),
            opt(c.min_modulus),
            opt(c.max_modulus),
            opt(c.max_modulus_deviation)
        )?;
    }
    writeln!(out, "inequalities:")?;
    for i in &r.inequalities {
        let order = i.max_order.map_or(String::new(), |k| format!(" (order <= {k})"));
        match &i.violation {
            None => writeln!(out, "  {}: holds{order}", i.name)?,
            Some(v) => writeln!(out, "  {}: fails at {}: {} vs {}{order}", i.name, v.j, v.lhs, v.rhs)?,
        }
    }
    for reg in &r.regions {
        writeln!(out, "{}: {}", reg.label, verdict_text(&reg.verdict))?;
    }
    for reg in &r.samples {
        writeln!(out, "{} multivariate: {}", reg.label, verdict_text(&reg.verdict))?;
    }
    Ok(())
}

fn write_csv(out: impl Write, r: &AnalyzeReport) -> CliResult<()> {
    let mut w = csv_writer(out);
    csv_row(&mut w, &["section", "key", "value", "value2"])?;
    for (j, c) in r.coefficients.iter().enumerate() {
        csv_row(&mut w, &["coefficient", &j.to_string(), &c.to_string()])?;
    }
    for (j, z) in r.roots.iter().enumerate() {
        csv_row(&mut w, &["root", &j.to_string(), &round12(z[0]), &round12(z[1])])?;
    }
    if let Some(c) = &r.classification {
        let flags = [
            ("real_rooted_nonpositive", c.real_rooted_nonpositive),
            ("hurwitz_strict", c.hurwitz_strict),
            ("hurwitz_quasi", c.hurwitz_quasi),
        ];
        for (k, b) in flags {
            csv_row(&mut w, &["classification", k, &b.to_string()])?;
        }
        let values = [
            ("max_real_part", c.max_real_part),
            ("min_abs_arg", c.min_abs_arg),
            ("min_modulus", c.min_modulus),
            ("max_modulus", c.max_modulus),
            ("max_modulus_deviation", c.max_modulus_deviation),
        ];
        for (k, x) in values {
            csv_row(&mut w, &["classification", k, &x.map_or(String::new(), round12)])?;
        }
    }
    for i in &r.inequalities {
        let at = i.violation.as_ref().map_or(String::new(), |v| v.j.to_string());
        csv_row(&mut w, &["inequality", &i.name, &i.holds.to_string(), &at])?;
    }
    for (section, list) in [("region", &r.regions), ("sample", &r.samples)] {
        for reg in list {
            let outcome = serde_json::to_value(reg.verdict.outcome).expect("outcome serialises");
            let witness = reg.verdict.witness.map_or(String::new(), |z| complex_text(z.re, z.im));
            csv_row(&mut w, &[section, &reg.label, outcome.as_str().unwrap_or_default(), &witness])?;
        }
    }
    csv_finish(w)
}
